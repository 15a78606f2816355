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

"""Weighted-runtime and capacity analyses.

Only orderings are meaningful: the gate and Pauli counts are asymptotic
scalings (`n⁴ log n` gates per Pauli, `n⁴` Paulis) with configurable
constants.
"""

from __future__ import annotations

from collections.abc import Iterable
import dataclasses
import enum
import math
from typing import Optional

from dqvqe.placement import allocation as alloc_lib
from dqvqe.placement import cluster as cluster_lib
from dqvqe.placement import greedy
from dqvqe.schedule import timing
from dqvqe.utils import errors
from dqvqe.utils import utils
import pandas as pd

GateClass = timing.GateClass


class Strategy(enum.StrEnum):
  PARALLEL = 'parallel'
  ONE_QPU = 'one_qpu'
  DISTRIBUTED = 'distributed'


@dataclasses.dataclass(frozen=True)
class RuntimeModel:
  """Constants of the gate-count model.

  Attributes:
    gate_scale: Gates per Pauli are `gate_scale * n⁴ * log n`.
    pauli_scale: Paulis are `ceil(pauli_scale * n⁴)`.
  """

  gate_scale: float = 1.0
  pauli_scale: float = 1.0

  @classmethod
  def from_config(cls, cfg) -> RuntimeModel:
    return cls(
        gate_scale=float(cfg.gate_scale), pauli_scale=float(cfg.pauli_scale)
    )

  def gate_quantity(self, n: int) -> float:
    return self.gate_scale * n**4 * math.log(n)

  def num_paulis(self, n: int) -> int:
    return math.ceil(self.pauli_scale * n**4)


def ansatz_cost(
    n: int,
    *,
    split: bool,
    times: timing.GateTimeTable,
    model: RuntimeModel,
) -> float:
  """Weighted time of one Ansatz run."""
  weights = [GateClass.CNOT, GateClass.SINGLE, GateClass.MEASURE]
  if split:
    weights += [GateClass.ENTGEN, GateClass.CLASSICAL]
  return model.gate_quantity(n) * sum(times.durations[w] for w in weights)


def round_time(
    round_: alloc_lib.Round,
    n: int,
    times: timing.GateTimeTable,
    model: RuntimeModel,
) -> float:
  """Load of the busiest QPU (its Ansatz copies run one after another)."""
  load: dict[int, float] = {}
  for a in round_:
    cost = ansatz_cost(n, split=a.is_split, times=times, model=model)
    for j in a.chain:
      load[j] = load.get(j, 0.0) + cost
  return max(load.values(), default=0.0)


def merge_time(num_qpus: int, times: timing.GateTimeTable) -> float:
  return times.durations[GateClass.MERGE] * num_qpus


def schedule_runtime(
    schedule: alloc_lib.Schedule,
    times: timing.GateTimeTable = timing.GateTimeTable(),
    model: RuntimeModel = RuntimeModel(),
) -> float:
  """Weighted time of `schedule`: its rounds one after another, then merging."""
  return sum(
      round_time(r, schedule.ansatz_size, times, model) for r in schedule
  ) + merge_time(schedule.cluster.num_qpus, times)


def _distributed(
    cluster: cluster_lib.ClusterSpec,
    n: int,
    p: int,
    times: timing.GateTimeTable,
    model: RuntimeModel,
) -> Optional[float]:
  # Greedy rounds on an empty cluster repeat: only the first and the last
  # (partial) one need computing.
  full = greedy.greedy_round(cluster, n, p)
  if not full:
    return None
  num_full, rest = divmod(p, len(full))
  total = num_full * round_time(full, n, times, model)
  if rest:
    total += round_time(greedy.greedy_round(cluster, n, rest), n, times, model)
  return total + merge_time(cluster.num_qpus, times)


def weighted_runtime(
    cluster: cluster_lib.ClusterSpec,
    n: int,
    times: timing.GateTimeTable = timing.GateTimeTable(),
    model: RuntimeModel = RuntimeModel(),
) -> dict[Strategy, Optional[float]]:
  """Weighted total time of each strategy (`None` when it cannot run).

  * parallel: one whole Ansatz per QPU per round (needs `n <= min(q) - 1`).
  * one_qpu: every Pauli, one after another, on a single large enough QPU.
  * distributed: greedy rounds on the cluster.

  Args:
    cluster: The cluster.
    n: Ansatz size (>= 2).
    times: Gate weights.
    model: Gate-count constants.

  Returns:
    Strategy -> total weighted time.
  """
  if n < 2:
    raise ValueError(f'Expected n >= 2, got {n}')
  p = model.num_paulis(n)
  whole = ansatz_cost(n, split=False, times=times, model=model)
  m = cluster.num_qpus

  parallel = None
  if n <= min(cluster.qpu_sizes) - 1:
    parallel = math.ceil(p / m) * whole + merge_time(m, times)
  return {
      Strategy.PARALLEL: parallel,
      Strategy.ONE_QPU: p * whole + merge_time(1, times),
      Strategy.DISTRIBUTED: _distributed(cluster, n, p, times, model),
  }


def runtime_table(
    cluster: cluster_lib.ClusterSpec,
    sizes: Iterable[int],
    times: timing.GateTimeTable = timing.GateTimeTable(),
    model: RuntimeModel = RuntimeModel(),
) -> pd.DataFrame:
  """`n,parallel,one_qpu,distributed` rows (absent strategies are empty)."""
  sizes = list(sizes)
  rows = []
  for _, n in utils.enum_iter(sizes, desc='runtime'):
    totals = weighted_runtime(cluster, n, times, model)
    rows.append({'n': n, **{str(s): totals[s] for s in Strategy}})
  return pd.DataFrame(rows, columns=['n', *(str(s) for s in Strategy)])


def max_ansatz_curve(qpu_size: int, max_qpus: int) -> pd.DataFrame:
  """Largest Ansatz on 1..`max_qpus` QPUs of `qpu_size` qubits."""
  if qpu_size <= 2:
    raise errors.ValidationError(
        f'QPUs need more than 2 qubits to be chained, got {qpu_size}'
    )
  if max_qpus < 1:
    raise ValueError(f'Expected max_qpus >= 1, got {max_qpus}')
  rows = [
      {
          'qpus': m,
          'max_ansatz_size': alloc_lib.max_ansatz_size(
              cluster_lib.ClusterSpec((qpu_size,) * m)
          ),
      }
      for m in range(1, max_qpus + 1)
  ]
  return pd.DataFrame(rows, columns=['qpus', 'max_ansatz_size'])
