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

"""Exact constraint-programming distribution.

Variables per Ansatz `i` and QPUs `j, k`:

* `x_ij`: data qubits of Ansatz `i` on QPU `j`
* `y_ij`: 1 if the QPE qubit of Ansatz `i` is on QPU `j`
* `z_ijk` in {0, 2}: comm qubits linking QPUs `j` and `k` for Ansatz `i`

Constraints:

1. One QPE qubit per Ansatz.
2. `z_ijk == z_ikj`.
3. `sum_j x_ij + y_ij == n + 1`.
4. `sum_i x_ij + y_ij + max_k z_ijk <= q_j`.
5. The Ansatz is whole on one QPU with no `z`, or `#QPUs used - 1` equals the
   number of linked pairs.
6. The QPE qubit sits on a QPU holding data qubits of the same Ansatz.

Objective: maximize `sum x`, then minimize `sum z`.

Every copy satisfying 3 has `sum x = n`, so the first objective is fixed once
`m` copies are placed. The search then minimizes `sum z = 4 * (k - 1)` summed
over copies split over `k` QPUs.

A copy is described by a pattern: the data qubits per QPU and the QPE QPU,
linked as a chain. Only the per-QPU usage of a pattern matters to the other
copies, so patterns with the same usage are merged. The search picks a
non-decreasing sequence of pattern indices (copies are interchangeable) and
memoizes the optimal remaining cost of each `(start, copies left, capacities)`
state. The returned solution is the lexicographically least optimal sequence.
"""

from __future__ import annotations

from collections.abc import Iterator
import dataclasses
import functools
import itertools
import math

from dqvqe.placement import allocation as alloc_lib
from dqvqe.placement import cluster as cluster_lib
from dqvqe.utils import errors
from dqvqe.utils.status_utils import status


@dataclasses.dataclass(frozen=True)
class _Pattern:
  per_qpu: tuple[int, ...]
  chain: tuple[int, ...]
  usage: tuple[int, ...]

  @property
  def cost(self) -> int:
    return 2 * alloc_lib.COMM_QUBITS_PER_QPU * (len(self.chain) - 1)


@dataclasses.dataclass(frozen=True)
class CpSolution:
  """Result of `cp_distribute`.

  Attributes:
    feasible: Whether `m` copies fit.
    allocations: The copies (pauli indices `0..m-1`, reassigned by the
      caller). Empty when infeasible.
    sum_x: First objective.
    sum_z: Second objective.
  """

  feasible: bool
  allocations: tuple[alloc_lib.AnsatzAllocation, ...] = ()
  sum_x: int = 0
  sum_z: int = 0


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
  """Ordered ways to write `total` as `parts` positive integers."""
  for cuts in itertools.combinations(range(1, total), parts - 1):
    bounds = (0,) + cuts + (total,)
    yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _patterns(cluster: cluster_lib.ClusterSpec, n: int) -> list[_Pattern]:
  """All single-copy patterns that fit the empty cluster, one per usage."""
  m = cluster.num_qpus
  by_usage: dict[tuple[int, ...], _Pattern] = {}
  for k in range(1, min(m, n) + 1):
    comm = alloc_lib.COMM_QUBITS_PER_QPU if k > 1 else 0
    for subset in itertools.combinations(range(m), k):
      for parts in _compositions(n, k):
        for qpe_pos in range(k):
          usage = [0] * m
          per_qpu = [0] * m
          for j, x in zip(subset, parts):
            per_qpu[j] = x
            usage[j] = x + comm
          qpe = subset[qpe_pos]
          usage[qpe] += 1
          if any(u > q for u, q in zip(usage, cluster.qpu_sizes)):
            continue
          chain = (qpe,) + tuple(j for j in subset if j != qpe)
          usage = tuple(usage)
          if usage not in by_usage:
            by_usage[usage] = _Pattern(tuple(per_qpu), chain, usage)
  return sorted(by_usage.values(), key=lambda p: (p.cost, p.usage))


def cp_distribute(
    cluster: cluster_lib.ClusterSpec, n: int, m: int
) -> CpSolution:
  """Places `m` copies of an `n`-qubit Ansatz, minimizing comm qubits.

  Args:
    cluster: The cluster.
    n: Ansatz size (>= 1).
    m: Number of copies (>= 1).

  Returns:
    The optimal solution, or `CpSolution(feasible=False)`.
  """
  if n < 1 or m < 1:
    raise ValueError(f'Expected n >= 1 and m >= 1, got n={n}, m={m}')
  if m * (n + 1) > cluster.total_qubits:
    return CpSolution(feasible=False)
  patterns = _patterns(cluster, n)

  @functools.cache
  def best_cost(start: int, left: int, capacity: tuple[int, ...]) -> float:
    if left == 0:
      return 0
    if left * (n + 1) > sum(capacity):
      return math.inf
    best = math.inf
    for i in range(start, len(patterns)):
      pattern = patterns[i]
      if pattern.cost * left >= best:
        break  # Patterns are sorted by cost.
      if any(u > c for u, c in zip(pattern.usage, capacity)):
        continue
      rest = tuple(c - u for c, u in zip(capacity, pattern.usage))
      best = min(best, pattern.cost + best_cost(i, left - 1, rest))
    return best

  total = best_cost(0, m, cluster.qpu_sizes)
  if math.isinf(total):
    return CpSolution(feasible=False)

  # Lexicographically least sequence achieving the optimum.
  chosen = []
  start, capacity, cost_left = 0, cluster.qpu_sizes, total
  for left in range(m, 0, -1):
    for i in range(start, len(patterns)):
      pattern = patterns[i]
      if any(u > c for u, c in zip(pattern.usage, capacity)):
        continue
      rest = tuple(c - u for c, u in zip(capacity, pattern.usage))
      if pattern.cost + best_cost(i, left - 1, rest) == cost_left:
        chosen.append(pattern)
        start, capacity = i, rest
        cost_left -= pattern.cost
        break

  allocations = tuple(
      alloc_lib.AnsatzAllocation(
          pauli_index=i, per_qpu=p.per_qpu, chain=p.chain
      )
      for i, p in enumerate(chosen)
  )
  return CpSolution(
      feasible=True,
      allocations=allocations,
      sum_x=sum(a.size for a in allocations),
      sum_z=int(total),
  )


def max_copies(cluster: cluster_lib.ClusterSpec, n: int, limit: int) -> int:
  """Largest feasible `m <= limit` (binary search, feasibility is monotone)."""
  lo, hi = 0, min(limit, cluster.total_qubits // (n + 1))
  while lo < hi:
    mid = (lo + hi + 1) // 2
    if cp_distribute(cluster, n, mid).feasible:
      lo = mid
    else:
      hi = mid - 1
  return lo


def cp_schedule(
    cluster: cluster_lib.ClusterSpec, n: int, p: int
) -> alloc_lib.Schedule:
  """Schedule built by running `cp_distribute` once per round.

  Each round places the largest feasible number of copies.

  Args:
    cluster: The cluster.
    n: Ansatz size.
    p: Number of Pauli strings.

  Returns:
    The schedule.

  Raises:
    InfeasibleError: If a single Ansatz cannot be placed.
  """
  if n < 1 or p < 0:
    raise ValueError(f'Expected n >= 1 and p >= 0, got n={n}, p={p}')
  rounds = []
  placed = 0
  m = None
  while placed < p:
    remaining = p - placed
    if m is None or m > remaining:
      # The empty cluster is the same every round: only the last round can
      # hold fewer copies.
      m = max_copies(cluster, n, remaining)
    if m == 0:
      raise errors.InfeasibleError(
          f'An Ansatz of {n} qubits does not fit the cluster {cluster}: the'
          ' problem cannot be solved.'
      )
    solution = cp_distribute(cluster, n, m)
    round_ = tuple(
        dataclasses.replace(a, pauli_index=placed + i)
        for i, a in enumerate(solution.allocations)
    )
    placed += len(round_)
    rounds.append(round_)
    status.log(
        f'CP round {len(rounds)}: {len(round_)} Ansatz copies, sum(z)='
        f'{solution.sum_z}, {alloc_lib.idle_qubits(round_, cluster)} idle'
        ' qubits.'
    )
  return alloc_lib.Schedule(cluster=cluster, ansatz_size=n, rounds=rounds)
