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

"""Statevector simulator with mid-circuit measurement.

The state is a `(2,) * k` tensor, one axis per qubit, in the order of
`SimState.qubits`. Flattened vectors are big-endian: the first qubit is the
most significant bit (same as `PauliString.matrix`).
"""

from __future__ import annotations

import collections
from collections.abc import Iterable, Mapping, Sequence
from typing import Optional

from dqvqe.circuit import circuits
from dqvqe.circuit import gates as gates_lib
from dqvqe.circuit import matrices
from dqvqe.random import random as dq_random
from dqvqe.remap import qubit_map as qubit_map_lib
from dqvqe.utils import errors
from jaxtyping import Complex
import numpy as np

QubitId = gates_lib.QubitId

NORM_TOLERANCE = 1e-9
# Probability below which a forced measurement branch is impossible.
_IMPOSSIBLE = 1e-12


def apply_unitary(
    psi: np.ndarray,
    axis_of: Mapping[QubitId, int],
    gate: gates_lib.SingleQubit | gates_lib.Controlled,
) -> np.ndarray:
  """Applies `gate` to the tensor `psi` (extra trailing axes are batch axes)."""
  if isinstance(gate, gates_lib.Controlled):
    base, controls = gate.base, gate.controls
  else:
    base, controls = gate, ()
  m = matrices.single_qubit_matrix(base.name, base.params)
  target = axis_of[base.target]
  if not controls:
    return np.moveaxis(np.tensordot(m, psi, axes=([1], [target])), 0, target)
  index = [slice(None)] * psi.ndim
  for c in controls:
    index[axis_of[c]] = 1
  index = tuple(index)
  # Axis of the target once the control axes are sliced away.
  sub_target = target - sum(axis_of[c] < target for c in controls)
  psi = psi.copy()
  sub = psi[index]
  psi[index] = np.moveaxis(
      np.tensordot(m, sub, axes=([1], [sub_target])), 0, sub_target
  )
  return psi


class SimState:
  """Amplitudes, classical registers and the measurement randomness.

  Attributes:
    qubits: Qubit of each tensor axis.
    amplitudes: The `(2,) * len(qubits)` state tensor.
    registers: Classical bits written by measurements.
    rng: Source of measurement draws (unless `measurement_seed` is set).
    measurement_seed: If set, the draw of the k-th measurement into register
      `r` comes from `SeedSequence([seed, hash(r), k])`, independent of the
      execution order.
    forced: Register -> outcome. Forces measurement branches (for branch
      enumeration).
  """

  def __init__(
      self,
      qubits: Iterable[QubitId],
      *,
      rng: Optional[np.random.Generator] = None,
      measurement_seed: Optional[int] = None,
      forced: Optional[Mapping[str, int]] = None,
  ):
    self.qubits = tuple(qubits)
    if len(set(self.qubits)) != len(self.qubits):
      raise errors.ValidationError(f'Duplicate qubits in {self.qubits}')
    self.axis_of = {q: i for i, q in enumerate(self.qubits)}
    self.amplitudes = np.zeros((2,) * len(self.qubits), dtype=complex)
    self.amplitudes[(0,) * len(self.qubits)] = 1.0
    self.registers: dict[str, int] = {}
    self.rng = rng if rng is not None else np.random.default_rng(0)
    self.measurement_seed = measurement_seed
    self.forced = dict(forced or {})
    self._occurrences = collections.Counter()

  @classmethod
  def for_circuit(
      cls, c: circuits.Circuit, extra: Iterable[QubitId] = (), **kwargs
  ) -> SimState:
    """State over the qubits of `c` (plus `extra`), sorted."""
    return cls(sorted(set(c.qubits) | set(extra)), **kwargs)

  @property
  def num_qubits(self) -> int:
    return len(self.qubits)

  def set_basis_state(self, bits: Mapping[QubitId, int]) -> None:
    """Resets to the basis state with `bits` (missing qubits in |0>)."""
    self.amplitudes[...] = 0
    index = tuple(bits.get(q, 0) for q in self.qubits)
    self.amplitudes[index] = 1.0

  def set_state(self, state: Complex[np.ndarray, 'd']) -> None:
    state = np.asarray(state, dtype=complex)
    if state.size != 2**self.num_qubits:
      raise errors.ValidationError(
          f'State of size {state.size} does not match {self.num_qubits} qubits.'
      )
    self.amplitudes = state.reshape((2,) * self.num_qubits).copy()

  def vector(self, order: Optional[Sequence[QubitId]] = None) -> np.ndarray:
    """Flat amplitudes, with qubits ordered as `order` (default: `qubits`)."""
    if order is None:
      return self.amplitudes.reshape(-1).copy()
    axes = [self.axis_of[q] for q in order]
    if len(axes) != self.num_qubits:
      raise errors.ValidationError('`order` must list every qubit once.')
    return np.transpose(self.amplitudes, axes).reshape(-1).copy()

  def norm(self) -> float:
    return float(np.linalg.norm(self.amplitudes))

  def probability_one(self, q: QubitId) -> float:
    axis = self.axis_of[q]
    return float(np.sum(np.abs(np.take(self.amplitudes, 1, axis=axis)) ** 2))

  def restricted(
      self,
      keep: Sequence[QubitId],
      fixed: Optional[Mapping[QubitId, int]] = None,
  ) -> np.ndarray:
    """State of `keep`, given every other qubit sits in a basis state.

    Args:
      keep: Qubits to return, in order.
      fixed: Value of the other qubits (default 0).

    Returns:
      The flat state vector of `keep`.

    Raises:
      ValidationError: If the other qubits are not in that basis state.
    """
    fixed = dict(fixed or {})
    rest = [q for q in self.qubits if q not in set(keep)]
    psi = np.transpose(
        self.amplitudes,
        [self.axis_of[q] for q in keep] + [self.axis_of[q] for q in rest],
    )
    index = (Ellipsis,) + tuple(fixed.get(q, 0) for q in rest)
    out = psi[index].reshape(-1)
    weight = float(np.linalg.norm(out))
    if abs(weight - 1.0) > 1e-7:
      raise errors.ValidationError(
          f'Qubits {[str(q) for q in rest]} are not in the expected basis'
          f' state (weight {weight:.3g}).'
      )
    return out / weight

  def read(self, register: str) -> int:
    try:
      return self.registers[register]
    except KeyError:
      raise errors.ValidationError(
          f'Register {register!r} is read before being written.'
      ) from None

  def apply(self, gate: gates_lib.Gate) -> None:
    """Applies one gate."""
    match gate:
      case gates_lib.SingleQubit() | gates_lib.Controlled():
        self.amplitudes = apply_unitary(self.amplitudes, self.axis_of, gate)
      case gates_lib.Measure():
        self.registers[gate.dest] = self.measure(gate.target, gate.dest)
      case gates_lib.ClassicallyControlled():
        if self.read(gate.condition):
          self.amplitudes = apply_unitary(
              self.amplitudes, self.axis_of, gate.inner
          )
      case gates_lib.EntGen():
        self._entangle(gate.a, gate.b)
      case gates_lib.ClassicalComm():
        self.read(gate.register)  # Zero-time copy, registers are shared.
      case _:
        raise TypeError(f'Unsupported gate {gate!r}')

  def _entangle(self, a: QubitId, b: QubitId) -> None:
    for q in (a, b):
      if self.probability_one(q) > _IMPOSSIBLE:
        raise errors.ValidationError(
            f'EntGen needs {q} in |0>, got P(1)={self.probability_one(q):.3g}'
        )
    self.amplitudes = apply_unitary(
        self.amplitudes, self.axis_of, gates_lib.h(a)
    )
    self.amplitudes = apply_unitary(
        self.amplitudes, self.axis_of, gates_lib.cnot(a, b)
    )

  def _uniform(self, register: str) -> float:
    if self.measurement_seed is None:
      return float(self.rng.random())
    k = self._occurrences[register]
    self._occurrences[register] += 1
    seq = np.random.SeedSequence(
        [self.measurement_seed, dq_random.stable_hash(register), k]
    )
    return float(np.random.default_rng(seq).random())

  def measure(self, q: QubitId, register: str = '') -> int:
    """Z-basis measurement with collapse and renormalization."""
    p1 = self.probability_one(q)
    if register in self.forced:
      outcome = self.forced[register]
      if (p1 if outcome else 1 - p1) < _IMPOSSIBLE:
        raise errors.ValidationError(
            f'Forced outcome {outcome} of {register} has probability 0.'
        )
    else:
      outcome = int(self._uniform(register) < p1)
    axis = self.axis_of[q]
    index = [slice(None)] * self.num_qubits
    index[axis] = 1 - outcome
    self.amplitudes[tuple(index)] = 0
    self.amplitudes /= np.sqrt(p1 if outcome else 1 - p1)
    return outcome


def run_circuit(c: circuits.Circuit, state: SimState) -> SimState:
  """Runs `c` layer by layer on `state` (in place) and returns it."""
  for i, layer in enumerate(c.layers):
    for gate in layer:
      state.apply(gate)
    if abs(state.norm() - 1.0) > NORM_TOLERANCE:
      raise errors.ValidationError(
          f'State norm drifted to {state.norm()!r} after layer {i}.'
      )
  return state


def simulate(c: circuits.Circuit, **kwargs) -> SimState:
  """Runs `c` from |0..0> over its qubits (monolithic: `0:0..0:n-1`)."""
  extra = ()
  if c.cluster is None:
    extra = [gates_lib.monolithic(i) for i in range(c.num_qubits)]
  return run_circuit(c, SimState.for_circuit(c, extra, **kwargs))


def circuit_unitary(
    c: circuits.Circuit, qubits: Optional[Sequence[QubitId]] = None
) -> Complex[np.ndarray, 'd d']:
  """Dense matrix of unitary circuit `c` (big-endian over `qubits`)."""
  if not c.is_unitary:
    raise errors.ValidationError('circuit_unitary needs a unitary circuit.')
  if qubits is None:
    qubits = set(c.qubits)
    if c.cluster is None:
      qubits |= {gates_lib.monolithic(i) for i in range(c.num_qubits)}
    qubits = sorted(qubits)
  qubits = tuple(qubits)
  k = len(qubits)
  axis_of = {q: i for i, q in enumerate(qubits)}
  # Identity with a trailing batch axis: column j is basis state j.
  psi = np.eye(2**k, dtype=complex).reshape((2,) * k + (2**k,))
  for gate in c.gates():
    psi = apply_unitary(psi, axis_of, gate)
  return psi.reshape(2**k, 2**k)


def data_unitary(
    c: circuits.Circuit,
    qmap: qubit_map_lib.QubitMap,
    *,
    control: int = 1,
    seed: int = 0,
) -> Complex[np.ndarray, 'd d']:
  """Action of distributed `c` on the data qubits of `qmap`.

  Each column runs `c` on a data basis state with the QPE qubit in
  `|control>` and the comm qubits in |0>. Measurement branches are drawn with
  `seed`. The QPE and comm qubits must come back unchanged.

  Args:
    c: Distributed circuit (cat sessions allowed).
    qmap: Layout of the data, QPE and comm qubits.
    control: Value of the QPE qubit.
    seed: Measurement seed.

  Returns:
    The `2^n x 2^n` matrix, big-endian over `qmap.data`.
  """
  n = qmap.num_data
  qubits = sorted(set(qmap.all_qubits) | set(c.qubits))
  fixed = {qmap.qpe: control} if qmap.qpe is not None else {}
  columns = []
  for j in range(2**n):
    bits = {q: (j >> (n - 1 - i)) & 1 for i, q in enumerate(qmap.data)}
    state = SimState(qubits, measurement_seed=seed)
    state.set_basis_state(bits | fixed)
    run_circuit(c, state)
    columns.append(state.restricted(qmap.data, fixed))
  return np.stack(columns, axis=1)


def enumerate_branches(
    c: circuits.Circuit,
    initial: Mapping[QubitId, int],
    keep: Sequence[QubitId],
) -> list[tuple[dict[str, int], np.ndarray]]:
  """Runs every measurement branch of `c`.

  Args:
    c: Circuit whose measurements each write a distinct register.
    initial: Initial basis state.
    keep: Qubits to return (the others must end in |0>).

  Returns:
    `(outcomes, state of keep)` for every possible branch.
  """
  registers = [g.dest for g in c.gates() if isinstance(g, gates_lib.Measure)]
  out = []
  for outcomes in np.ndindex(*(2,) * len(registers)):
    forced = dict(zip(registers, (int(o) for o in outcomes)))
    state = SimState.for_circuit(c, extra=initial, forced=forced)
    state.set_basis_state(initial)
    try:
      run_circuit(c, state)
    except errors.ValidationError as e:
      if 'has probability 0' in str(e):
        continue
      raise
    out.append((forced, state.restricted(keep)))
  return out
