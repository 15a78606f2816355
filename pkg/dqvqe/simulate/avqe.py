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

"""Distributed α-VQE driver."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses
from typing import Any, Optional

from dqvqe import placement
from dqvqe import random as dq_random
from dqvqe.circuit import circuits
from dqvqe.hamiltonian import pauli as pauli_lib
from dqvqe.placement import allocation as alloc_lib
from dqvqe.placement import cluster as cluster_lib
from dqvqe.simulate import aqpe
from dqvqe.simulate import optimizer
from dqvqe.utils.status_utils import status


@dataclasses.dataclass(frozen=True)
class AvqeResult:
  """Outcome of `distributed_avqe`.

  Attributes:
    energy: Lowest estimated energy.
    params: Parameters of that estimate.
    evaluations: Number of energy evaluations.
    estimates: Per-Pauli results of the best evaluation.
    schedule: The round schedule used.
  """

  energy: float
  params: tuple[float, ...]
  evaluations: int
  estimates: tuple[aqpe.EstimationResult, ...]
  schedule: alloc_lib.Schedule

  def to_json(self) -> dict[str, Any]:
    return {
        'energy': self.energy,
        'params': list(self.params),
        'evaluations': self.evaluations,
        'rounds': len(self.schedule),
        'circuitInvocations': sum(e.iterations for e in self.estimates),
        'unitaryApplications': sum(
            e.unitary_applications for e in self.estimates
        ),
        'estimates': [e.to_json() for e in self.estimates],
    }


def distributed_avqe(
    cluster: cluster_lib.ClusterSpec,
    hamiltonian: pauli_lib.PauliHamiltonian,
    ansatz: circuits.Circuit,
    *,
    seed: int = 0,
    solver: str = 'greedy',
    options: aqpe.AqpeOptions = aqpe.AqpeOptions(),
    optimizer_options: optimizer.OptimizerOptions = (
        optimizer.OptimizerOptions()
    ),
    init: Optional[Sequence[float]] = None,
) -> AvqeResult:
  """Minimizes the α-QPE energy estimate over the Ansatz parameters.

  Args:
    cluster: The cluster.
    hamiltonian: The Hamiltonian.
    ansatz: Symbolic Ansatz template `R(λ)`.
    seed: Master seed.
    solver: Placement solver (`greedy` or `cp`).
    options: Estimator settings.
    optimizer_options: Outer optimizer settings.
    init: Starting parameters (default zeros).

  Returns:
    The best energy and parameters.
  """
  schedule = placement.distribute(
      cluster, hamiltonian.num_qubits, len(hamiltonian), solver=solver
  )
  status.log(
      f'{len(hamiltonian)} Paulis in {len(schedule)} rounds on {cluster}.'
  )
  problem = aqpe.AqpeProblem(schedule, hamiltonian, ansatz)
  key = dq_random.PRNGKey(seed)

  x0 = list(init) if init is not None else [0.0] * problem.num_params
  if len(x0) != problem.num_params:
    raise ValueError(
        f'Expected {problem.num_params} initial parameters, got {len(x0)}'
    )

  step = 0
  best: Optional[tuple[float, tuple[float, ...], list[aqpe.EstimationResult]]]
  best = None

  def objective(params: Sequence[float]) -> float:
    nonlocal step, best
    energy, estimates = aqpe.distributed_aqpe(
        problem, params, options=options, key=key, step=step
    )
    status.log(
        f'Evaluation {step}: energy={energy:.6f}, params='
        f'{[round(v, 4) for v in params]}'
    )
    step += 1
    if best is None or energy < best[0]:
      best = (energy, tuple(float(v) for v in params), estimates)
    return energy

  if problem.num_params:
    optimizer.coordinate_descent(objective, x0, optimizer_options)
  else:
    objective(x0)

  energy, params, estimates = best
  return AvqeResult(
      energy=energy,
      params=params,
      evaluations=step,
      estimates=tuple(estimates),
      schedule=schedule,
  )
