# Copyright 2024 The dqvqe Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Circuits of the α-QPE unitary `U = R Π R† P R Π R† P`.

On `span{|ψ>, P|ψ>}` (`|ψ> = R|0>`), `U` is the product of the reflections
about `|ψ>^⊥` and `(P|ψ>)^⊥`. Its eigenphases `±φ` satisfy
`cos(φ / 2) = |<ψ|P|ψ>|`.

Only `Π` needs the QPE control: with the control off, the rest reduces to
`R R† P R R† P = I` (`P² = I`).
"""

from __future__ import annotations

from dqvqe.circuit import circuits
from dqvqe.circuit import gates as gates_lib
from dqvqe.hamiltonian import pauli as pauli_lib
from dqvqe.remap import qubit_map as qubit_map_lib
from dqvqe.remap import reflection
from dqvqe.remap import remapper
from dqvqe.utils import errors


def qpe_qubit(n: int) -> gates_lib.QubitId:
  """The QPE qubit of an `n`-qubit Ansatz (monolithic index `n`)."""
  return gates_lib.monolithic(n)


def _check(r: circuits.Circuit, p: pauli_lib.PauliString) -> int:
  n = r.num_qubits
  if p.num_qubits != n:
    raise errors.ValidationError(
        f'Pauli string {p} has {p.num_qubits} qubits, Ansatz has {n}.'
    )
  if not r.is_unitary:
    raise errors.ValidationError('The Ansatz must be unitary.')
  return n


def _pieces(
    r: circuits.Circuit, p: pauli_lib.PauliString, pi: circuits.Circuit
) -> list[circuits.Circuit]:
  """`U` in time order: P, R†, Π, R, P, R†, Π, R."""
  p_circuit = p.as_circuit()
  r_dag = circuits.dagger(r)
  return [p_circuit, r_dag, pi, r] * 2


def build_u(r: circuits.Circuit, p: pauli_lib.PauliString) -> circuits.Circuit:
  """Monolithic `U` for Ansatz `r` (bound or symbolic) and Pauli `p`."""
  n = _check(r, p)
  first, *rest = _pieces(r, p, reflection.build_reflection(n))
  return first.concat(*rest)


def build_controlled_pi(
    n: int, qmap: qubit_map_lib.QubitMap | None = None
) -> circuits.Circuit:
  """`Π` controlled by the QPE qubit `0:n`, remapped on `qmap` if given."""
  c_pi = circuits.lift_control(reflection.build_reflection(n), qpe_qubit(n))
  if qmap is None:
    return c_pi
  return remapper.distributed_remap(c_pi, qmap)


def build_controlled_u(
    r: circuits.Circuit, p: pauli_lib.PauliString
) -> circuits.Circuit:
  """Monolithic controlled-`U` on `n + 1` qubits (control `0:n`)."""
  n = _check(r, p)
  first, *rest = _pieces(r, p, build_controlled_pi(n))
  return first.replace(num_qubits=n + 1).concat(*rest)


def distribute_controlled_u(
    r: circuits.Circuit,
    p: pauli_lib.PauliString,
    qmap: qubit_map_lib.QubitMap,
) -> circuits.Circuit:
  """Controlled-`U` remapped piece by piece on the cluster of `qmap`."""
  n = _check(r, p)
  if qmap.num_data != n or qmap.qpe is None:
    raise errors.ValidationError(
        f'Qubit map must place {n} data qubits and a QPE qubit: {qmap}'
    )
  out = None
  next_register = 0
  for piece in _pieces(r, p, build_controlled_pi(n)):
    piece = piece.replace(num_qubits=n + 1)
    remapped = remapper.distributed_remap(
        piece, qmap, first_register=next_register
    )
    next_register = max(
        next_register, remapper.max_register_index(remapped) + 1
    )
    out = remapped if out is None else out.concat(remapped)
  return out
