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

"""Greedy Ansatz distribution."""

from __future__ import annotations

from dqvqe.placement import allocation as alloc_lib
from dqvqe.placement import cluster as cluster_lib
from dqvqe.utils import errors
from dqvqe.utils.status_utils import status


def greedy_round(
    cluster: cluster_lib.ClusterSpec,
    n: int,
    p: int,
    *,
    first_pauli: int = 0,
) -> alloc_lib.Round:
  """Fills one round with as many Ansatz copies as fit (at most `p`).

  QPUs are visited by non-increasing remaining capacity (ties: lower index
  first). An Ansatz goes whole onto the largest QPU when it fits, otherwise it
  is split over the shortest prefix that can hold it. The round closes at the
  first Ansatz that does not fit: capacities only shrink, so no later copy
  would fit either.

  Args:
    cluster: The cluster.
    n: Ansatz size.
    p: Ansatz copies still to place.
    first_pauli: Pauli index of the first copy placed.

  Returns:
    The allocations of the round (possibly empty).
  """
  capacity = list(cluster.qpu_sizes)
  allocations = []
  for i in range(p):
    order = sorted(
        (j for j in range(cluster.num_qpus) if capacity[j] > 0),
        key=lambda j: (-capacity[j], j),
    )
    sizes = [capacity[j] for j in order]
    k = alloc_lib.fitting_prefix(sizes, n)
    if k is None:
      break
    chain = tuple(order[:k])
    fill = alloc_lib.chain_fill(alloc_lib.split_capacity(sizes[:k]), n)
    per_qpu = [0] * cluster.num_qpus
    for j, t in zip(chain, fill):
      per_qpu[j] = t
    a = alloc_lib.AnsatzAllocation(
        pauli_index=first_pauli + i, per_qpu=tuple(per_qpu), chain=chain
    )
    for j in chain:
      capacity[j] -= a.usage(j)
    allocations.append(a)
  return tuple(allocations)


def greedy_distribute(
    cluster: cluster_lib.ClusterSpec, n: int, p: int
) -> alloc_lib.Schedule:
  """Greedy Ansatz distribution over rounds.

  Ansatz copies deferred from one round are placed in the next, until all `p`
  Pauli strings are covered.

  Args:
    cluster: The cluster.
    n: Ansatz size (>= 1).
    p: Number of Pauli strings (>= 0).

  Returns:
    The schedule.

  Raises:
    InfeasibleError: If a single Ansatz does not fit the empty cluster.
  """
  if n < 1 or p < 0:
    raise ValueError(f'Expected n >= 1 and p >= 0, got n={n}, p={p}')
  rounds = []
  placed = 0
  while placed < p:
    round_ = greedy_round(cluster, n, p - placed, first_pauli=placed)
    if not round_:
      raise errors.InfeasibleError(
          f'An Ansatz of {n} qubits does not fit the cluster {cluster}: the'
          ' problem cannot be solved.'
      )
    placed += len(round_)
    rounds.append(round_)
    status.log(
        f'Greedy round {len(rounds)}: {len(round_)} Ansatz copies,'
        f' {alloc_lib.idle_qubits(round_, cluster)} idle qubits,'
        f' {p - placed} deferred.'
    )
  return alloc_lib.Schedule(cluster=cluster, ansatz_size=n, rounds=rounds)
