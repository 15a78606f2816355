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

"""Pauli strings and Hamiltonians `H = sum_i a_i P_i`."""

from __future__ import annotations

from collections.abc import Iterator
import dataclasses
import math
import os

from dqvqe.circuit import circuits
from dqvqe.circuit import gates as gates_lib
from dqvqe.circuit import matrices
from dqvqe.utils import errors
from etils import epath
from etils import epy
from jaxtyping import Complex, Float
import numpy as np

# Dense matrices above this size are refused.
MAX_DENSE_QUBITS = 12

_PAULI_CHARS = frozenset('IXYZ')


@dataclasses.dataclass(frozen=True)
class PauliString:
  """Tensor product of single-qubit Paulis, `ops[0]` acting on qubit 0."""

  ops: str

  def __post_init__(self):
    object.__setattr__(self, 'ops', self.ops.upper())
    if not self.ops:
      raise errors.ValidationError('Empty Pauli string.')
    if bad := set(self.ops) - _PAULI_CHARS:
      raise errors.ValidationError(
          f'Invalid Pauli character(s) {sorted(bad)} in {self.ops!r}'
      )

  def __len__(self) -> int:
    return len(self.ops)

  def __str__(self) -> str:
    return self.ops

  @property
  def num_qubits(self) -> int:
    return len(self.ops)

  @property
  def is_identity(self) -> bool:
    return set(self.ops) == {'I'}

  @property
  def support(self) -> tuple[int, ...]:
    """Qubits with a non-identity factor."""
    return tuple(i for i, op in enumerate(self.ops) if op != 'I')

  def matrix(self) -> Complex[np.ndarray, 'd d']:
    _check_dense(self.num_qubits)
    return matrices.kron_all([matrices.PAULIS[op] for op in self.ops])

  def as_circuit(self) -> circuits.Circuit:
    """`P` as a single layer of single-qubit gates (identities omitted)."""
    return circuits.single_layer(
        (
            gates_lib.SingleQubit(op.lower(), gates_lib.monolithic(i))
            for i, op in enumerate(self.ops)
            if op != 'I'
        ),
        num_qubits=self.num_qubits,
    )

  def basis_change(self) -> circuits.Circuit:
    """Rotates every factor onto Z (`H` for X, `Z(pi/2)` then `H` for Y)."""
    gate_list = []
    for i, op in enumerate(self.ops):
      q = gates_lib.monolithic(i)
      if op == 'X':
        gate_list.append(gates_lib.h(q))
      elif op == 'Y':
        gate_list.append(gates_lib.phase(q, math.pi / 2))
        gate_list.append(gates_lib.h(q))
    return circuits.layerize(gate_list, num_qubits=self.num_qubits)

  def parities(self) -> Float[np.ndarray, 'd']:
    """Eigenvalue (+1/-1) of each basis state after `basis_change`."""
    n = self.num_qubits
    signs = np.ones(2**n)
    for i in self.support:
      bit = (np.arange(2**n) >> (n - 1 - i)) & 1
      signs = signs * (1 - 2 * bit)
    return signs


@dataclasses.dataclass(frozen=True)
class PauliTerm:
  coefficient: float
  pauli: PauliString


@dataclasses.dataclass(frozen=True)
class PauliHamiltonian:
  """Weighted sum of same-length Pauli strings, in file order."""

  terms: tuple[PauliTerm, ...]

  def __post_init__(self):
    object.__setattr__(self, 'terms', tuple(self.terms))
    if not self.terms:
      raise errors.ValidationError('A Hamiltonian needs at least one term.')
    lengths = {t.pauli.num_qubits for t in self.terms}
    if len(lengths) != 1:
      raise errors.ValidationError(
          f'Pauli strings have inconsistent lengths: {sorted(lengths)}'
      )
    for t in self.terms:
      if not math.isfinite(t.coefficient):
        raise errors.ValidationError(f'Non-finite coefficient in {t}')

  @classmethod
  def from_pairs(cls, pairs) -> PauliHamiltonian:
    return cls(tuple(PauliTerm(float(a), PauliString(s)) for a, s in pairs))

  def __len__(self) -> int:
    return len(self.terms)

  def __iter__(self) -> Iterator[PauliTerm]:
    return iter(self.terms)

  @property
  def num_qubits(self) -> int:
    return self.terms[0].pauli.num_qubits

  @property
  def coefficients(self) -> Float[np.ndarray, 'p']:
    return np.array([t.coefficient for t in self.terms])

  @property
  def paulis(self) -> tuple[PauliString, ...]:
    return tuple(t.pauli for t in self.terms)

  def matrix(self) -> Complex[np.ndarray, 'd d']:
    _check_dense(self.num_qubits)
    return sum(t.coefficient * t.pauli.matrix() for t in self.terms)


def parse_hamiltonian(text: str) -> PauliHamiltonian:
  """Parses `<coeff> <string>` lines (`#` comments allowed)."""
  pairs = []
  for lineno, line in enumerate(text.splitlines(), start=1):
    line = line.split('#', 1)[0].strip()
    if not line:
      continue
    try:
      coeff, ops = line.split()
      pairs.append(PauliTerm(float(coeff), PauliString(ops)))
    except ValueError as e:
      raise errors.ParseError(
          f'line {lineno}: expected `<coeff> <pauli string>`, got {line!r}:'
          f' {e}'
      ) from e
  try:
    return PauliHamiltonian(tuple(pairs))
  except errors.ValidationError as e:
    raise errors.ParseError(str(e)) from e


def read_hamiltonian(path: epath.PathLike) -> PauliHamiltonian:
  path = epath.Path(path)
  try:
    return parse_hamiltonian(path.read_text())
  except errors.ParseError as e:
    epy.reraise(e, prefix=f'{os.fspath(path)}: ')


def to_text(h: PauliHamiltonian) -> str:
  return ''.join(f'{t.coefficient!r} {t.pauli}\n' for t in h.terms)


def exact_ground_energy(h: PauliHamiltonian) -> float:
  """Smallest eigenvalue of the dense matrix of `h`."""
  return float(np.linalg.eigvalsh(h.matrix())[0])


def pauli_expectation(
    p: PauliString, state: Complex[np.ndarray, 'd']
) -> float:
  """`<psi|P|psi>`, applied factor by factor (no dense matrix)."""
  state = _as_state(state, p.num_qubits)
  return float(np.real(np.vdot(state, apply_pauli(p, state))))


def apply_pauli(
    p: PauliString, state: Complex[np.ndarray, 'd']
) -> Complex[np.ndarray, 'd']:
  """`P|psi>` as a flat vector."""
  out = _as_state(state, p.num_qubits).reshape((2,) * p.num_qubits)
  for i in p.support:
    out = np.moveaxis(
        np.tensordot(matrices.PAULIS[p.ops[i]], out, axes=([1], [i])), 0, i
    )
  return out.reshape(-1)


def expectation(h: PauliHamiltonian, state: Complex[np.ndarray, 'd']) -> float:
  """`sum_i a_i <psi|P_i|psi>`."""
  return float(
      sum(t.coefficient * pauli_expectation(t.pauli, state) for t in h.terms)
  )


def _as_state(state, num_qubits: int) -> np.ndarray:
  state = np.asarray(state, dtype=complex)
  if state.shape != (2**num_qubits,):
    raise errors.ValidationError(
        f'State of shape {state.shape} does not match {num_qubits} qubits.'
    )
  return state


def _check_dense(num_qubits: int) -> None:
  if num_qubits > MAX_DENSE_QUBITS:
    raise errors.ValidationError(
        f'Dense matrices are limited to {MAX_DENSE_QUBITS} qubits, got'
        f' {num_qubits}.'
    )
