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

"""Sampling, sign/bound check and eigenvector collapse around RFPE."""

from __future__ import annotations

import dataclasses
import math

from dqvqe.circuit import gates as gates_lib
from dqvqe.hamiltonian import pauli as pauli_lib
from dqvqe.simulate import statevector
from dqvqe.utils import errors
from jaxtyping import Complex
import numpy as np

# Below this, `P|ψ>` is parallel to `|ψ>` and the 2D span degenerates.
_PARALLEL = 1e-9


def sample_expectation(
    state: Complex[np.ndarray, 'd'],
    pauli: pauli_lib.PauliString,
    shots: int,
    rng: np.random.Generator,
) -> float:
  """`<P>` estimated from `shots` measurements in the eigenbasis of `P`."""
  if shots < 1:
    raise ValueError(f'shots must be >= 1, got {shots}')
  n = pauli.num_qubits
  sim = statevector.SimState([gates_lib.monolithic(i) for i in range(n)])
  sim.set_state(state)
  statevector.run_circuit(pauli.basis_change(), sim)
  probs = np.abs(sim.vector()) ** 2
  counts = rng.multinomial(shots, probs / probs.sum())
  return float(counts @ pauli.parities() / shots)


def sampling_shots(epsilon: float) -> int:
  """`ceil(1 / ε²)`."""
  if epsilon <= 0:
    raise ValueError(f'epsilon must be > 0, got {epsilon}')
  return math.ceil(1 / epsilon**2)


@dataclasses.dataclass(frozen=True)
class StageOne:
  """Whether `|<P>|` is bounded away from 0 and 1, and its sign.

  Attributes:
    passed: `δ < |s| < 1 - δ` holds with the Hoeffding margin.
    sign: Sign of the sampled mean (`+1` for 0).
    estimate: The sampled mean `s`.
  """

  passed: bool
  sign: int
  estimate: float


def hoeffding_margin(shots: int, beta: float) -> float:
  """Two-sided margin of a mean of `shots` ±1 outcomes at confidence `1-β`."""
  return math.sqrt(2 * math.log(2 / beta) / shots)


def sign_and_bound(
    state: Complex[np.ndarray, 'd'],
    pauli: pauli_lib.PauliString,
    *,
    delta: float,
    shots: int,
    rng: np.random.Generator,
    beta: float = 0.01,
) -> StageOne:
  """Samples `<P>` and checks it is usable for phase estimation.

  Args:
    state: Prepared data state.
    pauli: The Pauli string.
    delta: Distance to keep from 0 and 1.
    shots: Number of measurements.
    rng: Randomness.
    beta: Failure probability of the margin.

  Returns:
    The check result.
  """
  if not 0 < beta < 1:
    raise errors.ValidationError(f'beta must be in (0, 1), got {beta}')
  s = sample_expectation(state, pauli, shots, rng)
  margin = hoeffding_margin(shots, beta)
  passed = abs(s) - margin > delta and abs(s) + margin < 1 - delta
  return StageOne(passed=passed, sign=1 if s >= 0 else -1, estimate=s)


@dataclasses.dataclass(frozen=True)
class Collapse:
  """Eigenvector of `U` picked by a measurement of `|ψ>`.

  Attributes:
    branch: `+1` for the `exp(+iφ)` eigenvector, `-1` for `exp(-iφ)`.
    state: The eigenvector (data register).
    phi: Exact eigenphase in `[0, π]`.
  """

  branch: int
  state: Complex[np.ndarray, 'd']
  phi: float


def collapse(
    state: Complex[np.ndarray, 'd'],
    u: Complex[np.ndarray, 'd d'],
    pauli: pauli_lib.PauliString,
    rng: np.random.Generator,
) -> Collapse:
  """Projects `|ψ>` onto an eigenvector of `U` inside `span{|ψ>, P|ψ>}`.

  The branch is drawn with the Born probabilities `|<w±|ψ>|²`.

  Args:
    state: `|ψ> = R|0>`.
    u: Data action of `U`.
    pauli: The Pauli string.
    rng: Randomness.

  Returns:
    The collapsed state.
  """
  psi = np.asarray(state, dtype=complex)
  p_psi = pauli_lib.apply_pauli(pauli, psi)
  overlap = np.vdot(psi, p_psi)
  ortho = p_psi - overlap * psi
  if np.linalg.norm(ortho) < _PARALLEL:
    raise errors.ValidationError(
        f'{pauli} leaves the state invariant, the eigenphase is 0.'
    )
  basis = np.stack([psi, ortho / np.linalg.norm(ortho)], axis=1)
  restricted = basis.conj().T @ u @ basis
  eigvals, eigvecs = np.linalg.eig(restricted)
  angles = np.angle(eigvals)
  plus = int(np.argmax(angles))
  order = [plus, 1 - plus]
  weights = np.abs(eigvecs[0, order]) ** 2  # <w|ψ> is the first coordinate.
  weights = weights / weights.sum()
  pick = 0 if rng.random() < weights[0] else 1
  vec = basis @ eigvecs[:, order[pick]]
  return Collapse(
      branch=1 if pick == 0 else -1,
      state=vec / np.linalg.norm(vec),
      phi=float(abs(angles[plus])),
  )
