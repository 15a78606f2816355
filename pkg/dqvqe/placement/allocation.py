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

"""Ansatz allocations and round schedules."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
import dataclasses
import json
from typing import Any

from dqvqe.placement import cluster as cluster_lib
from dqvqe.utils import errors

# Communication qubits reserved on each QPU of a split Ansatz.
COMM_QUBITS_PER_QPU = 2


@dataclasses.dataclass(frozen=True)
class AnsatzAllocation:
  """Where one Ansatz copy (estimating one Pauli string) lives.

  Attributes:
    pauli_index: Index of the Pauli term (0-based, Hamiltonian file order).
    per_qpu: Data qubits on each QPU (length = number of QPUs).
    chain: QPUs used, in chain order. The first one holds the QPE qubit.
      Consecutive QPUs are linked by a comm pair.
  """

  pauli_index: int
  per_qpu: tuple[int, ...]
  chain: tuple[int, ...]

  def __post_init__(self):
    object.__setattr__(self, 'per_qpu', tuple(self.per_qpu))
    object.__setattr__(self, 'chain', tuple(self.chain))

  @property
  def qpe_qpu(self) -> int:
    return self.chain[0]

  @property
  def size(self) -> int:
    return sum(self.per_qpu)

  @property
  def is_split(self) -> bool:
    return len(self.chain) > 1

  @property
  def comm_pairs(self) -> tuple[tuple[int, int], ...]:
    return tuple(zip(self.chain, self.chain[1:]))

  def usage(self, qpu: int) -> int:
    """Qubits taken on `qpu`: data, QPE and comm qubits."""
    used = self.per_qpu[qpu]
    if qpu == self.qpe_qpu:
      used += 1
    if self.is_split and qpu in self.chain:
      used += COMM_QUBITS_PER_QPU
    return used

  def to_json(self) -> dict[str, Any]:
    return {
        'pauliIndex': self.pauli_index,
        'perQpu': list(self.per_qpu),
        'qpeQpu': self.qpe_qpu,
        'commPairs': [list(p) for p in self.comm_pairs],
    }

  @classmethod
  def from_json(cls, value: dict[str, Any]) -> AnsatzAllocation:
    pairs = [tuple(p) for p in value['commPairs']]
    chain = [int(value['qpeQpu'])]
    for a, b in pairs:
      if a != chain[-1]:
        raise errors.ParseError(f'commPairs do not form a chain: {pairs}')
      chain.append(b)
    return cls(
        pauli_index=int(value['pauliIndex']),
        per_qpu=tuple(int(x) for x in value['perQpu']),
        chain=tuple(chain),
    )


Round = tuple[AnsatzAllocation, ...]


@dataclasses.dataclass(frozen=True)
class Schedule:
  """Rounds of Ansatz allocations.

  Attributes:
    cluster: The cluster.
    ansatz_size: Data qubits per Ansatz.
    rounds: Allocations of each round. All allocations of a round run in
      parallel.
  """

  cluster: cluster_lib.ClusterSpec
  ansatz_size: int
  rounds: tuple[Round, ...] = ()

  def __post_init__(self):
    object.__setattr__(self, 'rounds', tuple(tuple(r) for r in self.rounds))

  def __len__(self) -> int:
    return len(self.rounds)

  def __iter__(self) -> Iterator[Round]:
    return iter(self.rounds)

  @property
  def num_paulis(self) -> int:
    return sum(len(r) for r in self.rounds)

  @property
  def round_sizes(self) -> tuple[int, ...]:
    return tuple(len(r) for r in self.rounds)

  def allocations(self) -> Iterator[AnsatzAllocation]:
    for r in self.rounds:
      yield from r

  def to_json(self) -> dict[str, Any]:
    return {
        'cluster': list(self.cluster.qpu_sizes),
        'ansatzSize': self.ansatz_size,
        'rounds': [[a.to_json() for a in r] for r in self.rounds],
    }

  @classmethod
  def from_json(cls, value: dict[str, Any]) -> Schedule:
    return cls(
        cluster=cluster_lib.ClusterSpec(tuple(value['cluster'])),
        ansatz_size=int(value['ansatzSize']),
        rounds=tuple(
            tuple(AnsatzAllocation.from_json(a) for a in r)
            for r in value['rounds']
        ),
    )


def schedule_to_json(schedule: Schedule) -> str:
  return json.dumps(schedule.to_json(), indent=2)


def schedule_from_json(text: str) -> Schedule:
  try:
    return Schedule.from_json(json.loads(text))
  except (KeyError, TypeError, ValueError) as e:
    raise errors.ParseError(f'Invalid schedule json: {e!r}') from e


def round_usage(
    round_: Sequence[AnsatzAllocation], cluster: cluster_lib.ClusterSpec
) -> tuple[int, ...]:
  """Qubits used on each QPU during one round."""
  return tuple(
      sum(a.usage(j) for a in round_) for j in range(cluster.num_qpus)
  )


def idle_qubits(
    round_: Sequence[AnsatzAllocation], cluster: cluster_lib.ClusterSpec
) -> int:
  """Qubits left unused by a round."""
  return cluster.total_qubits - sum(round_usage(round_, cluster))


def split_capacity(sizes: Sequence[int]) -> list[int]:
  """Data qubits each QPU of a `len(sizes)`-way chain can hold.

  A single QPU reserves the QPE qubit (`q - 1`). A split reserves QPE + 2 comm
  qubits on the first QPU (`q - 3`) and 2 comm qubits on the others (`q - 2`).

  Args:
    sizes: Available qubits of the chain QPUs, in chain order.

  Returns:
    The per-QPU data capacity.
  """
  if len(sizes) == 1:
    return [sizes[0] - 1]
  return [sizes[0] - 3] + [q - 2 for q in sizes[1:]]


def fitting_prefix(sorted_sizes: Sequence[int], n: int) -> int | None:
  """Length of the shortest prefix that can hold an `n`-qubit Ansatz.

  The first QPU of a split must hold at least one data qubit (it hosts the QPE
  qubit, which has to sit next to Ansatz qubits).

  Args:
    sorted_sizes: Available qubits, non-increasing.
    n: Ansatz size.

  Returns:
    The prefix length, or `None` if the Ansatz does not fit.
  """
  for j in range(1, len(sorted_sizes) + 1):
    caps = split_capacity(sorted_sizes[:j])
    if j > 1 and caps[0] < 1:
      continue
    if sum(caps) >= n:
      return j
  return None


def does_not_fit(sorted_sizes: Sequence[int], n: int) -> bool:
  """Whether an `n`-qubit Ansatz cannot fit the available capacities."""
  return fitting_prefix(sorted_sizes, n) is None


def chain_fill(caps: Sequence[int], n: int) -> list[int]:
  """Fills the chain in order, each QPU taking as much as it can."""
  out = []
  remaining = n
  for cap in caps:
    t = max(0, min(remaining, cap))
    out.append(t)
    remaining -= t
  return out


def max_ansatz_size(cluster: cluster_lib.ClusterSpec) -> int:
  """Largest Ansatz that fits the whole (empty) cluster.

  `q - 1` for a single QPU, `sum(q) - 2 * m - 1` for `m >= 2` QPUs.

  Args:
    cluster: The cluster.

  Returns:
    The maximum Ansatz size.
  """
  if cluster.num_qpus == 1:
    return cluster.qpu_sizes[0] - 1
  if any(q <= 2 for q in cluster.qpu_sizes):
    raise errors.ValidationError(
        f'Every QPU of a multi-QPU cluster needs > 2 qubits, got {cluster}'
    )
  return cluster.total_qubits - 2 * cluster.num_qpus - 1
