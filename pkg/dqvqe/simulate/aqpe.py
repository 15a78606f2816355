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

"""Distributed α-QPE: one energy evaluation over a round schedule."""

from __future__ import annotations

from collections.abc import Sequence
from concurrent import futures
import dataclasses
import enum
import math
from typing import Any, Optional

from dqvqe import random as dq_random
from dqvqe.circuit import circuits
from dqvqe.hamiltonian import pauli as pauli_lib
from dqvqe.placement import allocation as alloc_lib
from dqvqe.random import streams
from dqvqe.remap import alpha_qpe
from dqvqe.remap import qubit_map as qubit_map_lib
from dqvqe.remap import remapper
from dqvqe.simulate import rfpe
from dqvqe.simulate import stages
from dqvqe.simulate import statevector
from dqvqe.utils import errors
from jaxtyping import Complex
import numpy as np


class Method(enum.StrEnum):
  AQPE = 'aqpe'
  SAMPLING = 'sampling'


@dataclasses.dataclass(frozen=True)
class EstimationResult:
  """Estimate of one `<P_i>`.

  Attributes:
    pauli_index: Index of the term.
    abs_expectation: `|<P_i>|` estimate, in `[0, 1]`.
    sign: Sign of `<P_i>`.
    method: Phase estimation, or the sampling fallback.
    iterations: RFPE circuit invocations.
    final_sigma: RFPE posterior standard deviation.
    unitary_applications: Sum of `M` over the RFPE iterations.
    shots: Measurements of the sign check and the fallback.
  """

  pauli_index: int
  abs_expectation: float
  sign: int
  method: Method
  iterations: int = 0
  final_sigma: float = 0.0
  unitary_applications: int = 0
  shots: int = 0

  @property
  def value(self) -> float:
    return self.sign * self.abs_expectation

  def to_json(self) -> dict[str, Any]:
    return {
        'pauliIndex': self.pauli_index,
        'absExpectation': self.abs_expectation,
        'sign': self.sign,
        'method': str(self.method),
        'iterations': self.iterations,
        'finalSigma': self.final_sigma,
        'unitaryApplications': self.unitary_applications,
        'shots': self.shots,
    }


@dataclasses.dataclass(frozen=True)
class AqpeOptions:
  """Estimator settings (see `configs/default.py`)."""

  rfpe: rfpe.RfpeParams = rfpe.RfpeParams()
  delta: float = 0.1
  shots: int = 2000
  beta: float = 0.01
  epsilon: float = 0.02
  max_workers: int = 4

  @classmethod
  def from_config(cls, cfg) -> AqpeOptions:
    return cls(
        rfpe=rfpe.RfpeParams.from_config(cfg.rfpe),
        delta=float(cfg.stage_one.delta),
        shots=int(cfg.stage_one.shots),
        beta=float(cfg.stage_one.beta),
        epsilon=float(cfg.sampling.epsilon),
        max_workers=int(cfg.max_workers),
    )


class AqpeProblem:
  """Distributed circuits of every Pauli term, laid out by a schedule.

  Pieces that do not depend on the Ansatz parameters (`P`, `c-Π`) are remapped
  and simulated once. `R` and `R†` are remapped symbolically and simulated per
  evaluation, once per qubit map.
  """

  def __init__(
      self,
      schedule: alloc_lib.Schedule,
      hamiltonian: pauli_lib.PauliHamiltonian,
      ansatz: circuits.Circuit,
  ):
    n = hamiltonian.num_qubits
    if ansatz.num_qubits != n or schedule.ansatz_size != n:
      raise errors.ValidationError(
          f'Ansatz ({ansatz.num_qubits} qubits), schedule'
          f' ({schedule.ansatz_size})'
          f' and Hamiltonian ({n}) sizes differ.'
      )
    if schedule.num_paulis != len(hamiltonian):
      raise errors.ValidationError(
          f'Schedule covers {schedule.num_paulis} Paulis, the Hamiltonian has'
          f' {len(hamiltonian)} terms.'
      )
    self.schedule = schedule
    self.hamiltonian = hamiltonian
    self.ansatz = ansatz
    self.num_params = ansatz.num_params

    self.qmaps: dict[int, qubit_map_lib.QubitMap] = {}
    for round_ in schedule.rounds:
      layout = qubit_map_lib.round_layout(round_, schedule.cluster)
      for a, qmap in zip(round_, layout):
        self.qmaps[a.pauli_index] = qmap

    r_dag = circuits.dagger(ansatz)
    self._r: dict[qubit_map_lib.QubitMap, circuits.Circuit] = {}
    self._r_dag: dict[qubit_map_lib.QubitMap, circuits.Circuit] = {}
    self._c_pi: dict[qubit_map_lib.QubitMap, np.ndarray] = {}
    for qmap in set(self.qmaps.values()):
      self._r[qmap] = remapper.distributed_remap(ansatz, qmap)
      self._r_dag[qmap] = remapper.distributed_remap(r_dag, qmap)
      self._c_pi[qmap] = statevector.data_unitary(
          alpha_qpe.build_controlled_pi(n, qmap), qmap
      )
    self._p = {
        i: statevector.data_unitary(
            remapper.distributed_remap(t.pauli.as_circuit(), self.qmaps[i]),
            self.qmaps[i],
        )
        for i, t in enumerate(hamiltonian.terms)
    }
    # Simulated `R` pieces, for the latest parameters only.
    self._cache: tuple[Optional[tuple[float, ...]], dict[Any, Any]] = (
        None,
        {},
    )

  @property
  def num_paulis(self) -> int:
    return len(self.hamiltonian)

  def c_u(self, pauli_index: int) -> circuits.Circuit:
    """The full distributed controlled-`U` of one term (symbolic)."""
    return alpha_qpe.distribute_controlled_u(
        self.ansatz,
        self.hamiltonian.terms[pauli_index].pauli,
        self.qmaps[pauli_index],
    )

  def _bind(self, c: circuits.Circuit, params: tuple[float, ...]):
    return c.bind(params) if self.num_params else c

  def _cached(self, what: str, qmap, params: tuple[float, ...], compute):
    cached_params, cache = self._cache
    if cached_params != params:
      cache = {}
      self._cache = (params, cache)
    key = (what, qmap)
    if key not in cache:
      cache[key] = compute(qmap, params)
    return cache[key]

  def _r_unitaries(
      self, qmap: qubit_map_lib.QubitMap, params: tuple[float, ...]
  ) -> tuple[np.ndarray, np.ndarray]:
    return (
        statevector.data_unitary(self._bind(self._r[qmap], params), qmap),
        statevector.data_unitary(self._bind(self._r_dag[qmap], params), qmap),
    )

  def _prepared(
      self, qmap: qubit_map_lib.QubitMap, params: tuple[float, ...]
  ) -> np.ndarray:
    prep = self._bind(self._r[qmap], params)
    state = statevector.SimState(
        sorted(set(qmap.all_qubits) | set(prep.qubits)), measurement_seed=0
    )
    statevector.run_circuit(prep, state)
    fixed = {qmap.qpe: 0} if qmap.qpe is not None else {}
    return state.restricted(qmap.data, fixed)

  def prepared_state(
      self, pauli_index: int, params: Sequence[float]
  ) -> Complex[np.ndarray, 'd']:
    """`R(λ)|0>` on the data qubits, run through the distributed `R`."""
    return self._cached(
        'prepared',
        self.qmaps[pauli_index],
        tuple(map(float, params)),
        self._prepared,
    )

  def unitary(
      self, pauli_index: int, params: Sequence[float]
  ) -> Complex[np.ndarray, 'd d']:
    """Data action of the distributed `U` (QPE control on)."""
    qmap = self.qmaps[pauli_index]
    r, r_dag = self._cached(
        'r', qmap, tuple(map(float, params)), self._r_unitaries
    )
    p, c_pi = self._p[pauli_index], self._c_pi[qmap]
    # Time order P, R†, Π, R, P, R†, Π, R.
    once = r @ c_pi @ r_dag @ p
    return once @ once


def estimate_pauli(
    problem: AqpeProblem,
    pauli_index: int,
    params: Sequence[float],
    options: AqpeOptions,
    rng: np.random.Generator,
) -> EstimationResult:
  """Sign check, then RFPE on the collapsed eigenvector (or sampling)."""
  pauli = problem.hamiltonian.terms[pauli_index].pauli
  psi = problem.prepared_state(pauli_index, params)
  check = stages.sign_and_bound(
      psi,
      pauli,
      delta=options.delta,
      shots=options.shots,
      rng=rng,
      beta=options.beta,
  )
  if not check.passed:
    shots = stages.sampling_shots(options.epsilon)
    s = stages.sample_expectation(psi, pauli, shots, rng)
    return EstimationResult(
        pauli_index=pauli_index,
        abs_expectation=min(1.0, abs(s)),
        sign=1 if s >= 0 else -1,
        method=Method.SAMPLING,
        shots=options.shots + shots,
    )

  u = problem.unitary(pauli_index, params)
  eigen = stages.collapse(psi, u, pauli, rng)
  if eigen.branch < 0:
    u = u.conj().T
  result = rfpe.rfpe_estimate(u, eigen.state, options.rfpe, rng)
  return EstimationResult(
      pauli_index=pauli_index,
      abs_expectation=min(1.0, abs(math.cos(result.phi / 2))),
      sign=check.sign,
      method=Method.AQPE,
      iterations=result.iterations,
      final_sigma=result.sigma,
      unitary_applications=result.unitary_applications,
      shots=options.shots,
  )


def distributed_aqpe(
    problem: AqpeProblem,
    params: Sequence[float],
    *,
    options: AqpeOptions = AqpeOptions(),
    key: dq_random.PRNGKey,
    step: int = 0,
) -> tuple[float, list[EstimationResult]]:
  """`sum_i a_i <P_i>` with every `<P_i>` estimated on its allocation.

  Rounds run one after the other. The Paulis of a round run in a thread pool,
  each with its own rng stream (`aqpe`, step, Pauli index).

  Args:
    problem: The distributed circuits.
    params: Ansatz parameters `λ`.
    options: Estimator settings.
    key: Root key.
    step: Evaluation index (folded in the rng streams).

  Returns:
    The energy and the per-Pauli results (sorted by Pauli index).
  """
  if len(params) < problem.num_params:
    raise errors.ValidationError(
        f'Ansatz has {problem.num_params} parameters, got {len(params)}.'
    )
  params = tuple(float(v) for v in params)
  results: dict[int, EstimationResult] = {}

  def run(pauli_index: int) -> EstimationResult:
    rng = streams.AQPE.make(key, step=step, key=pauli_index).np_rng()
    return estimate_pauli(problem, pauli_index, params, options, rng)

  with futures.ThreadPoolExecutor(max_workers=options.max_workers) as pool:
    for round_ in problem.schedule.rounds:
      indices = [a.pauli_index for a in round_]
      for i, result in zip(indices, pool.map(run, indices)):
        results[i] = result

  ordered = [results[i] for i in sorted(results)]
  values = np.array([r.value for r in ordered])
  energy = float(problem.hamiltonian.coefficients @ values)
  return energy, ordered
