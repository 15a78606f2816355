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

"""Tests."""

import dataclasses
import itertools

from dqvqe import placement
from dqvqe.placement import allocation
from dqvqe.placement import cp
from dqvqe.utils import errors
from etils import epath
import pytest

ClusterSpec = placement.ClusterSpec


@pytest.mark.parametrize(
    'sizes, n, expected',
    [
        ([10], 9, False),
        ([3], 3, True),
        ([6, 6, 6], 11, False),
        ([6, 6, 6], 12, True),
        ([], 1, True),
        # A split whose first QPU cannot hold a data qubit next to the QPE one.
        ([3, 3, 3, 3, 3], 3, True),
    ],
)
def test_does_not_fit(sizes, n, expected):
  assert placement.does_not_fit(sizes, n) is expected


@pytest.mark.parametrize(
    'sizes, expected',
    [
        ([10], 9),
        ([10, 10], 15),
        ([150] * 15, 2219),
        ([100], 99),
        ([50, 50], 95),
        ([10] * 15, 119),
    ],
)
def test_max_ansatz_size(sizes, expected):
  assert placement.max_ansatz_size(ClusterSpec(sizes)) == expected


def test_max_ansatz_size_small_qpu():
  with pytest.raises(errors.ValidationError):
    placement.max_ansatz_size(ClusterSpec([10, 2]))


def test_cluster_parse():
  assert ClusterSpec.parse('9,9,9\n').qpu_sizes == (9, 9, 9)
  assert ClusterSpec.from_arg('3').qpu_sizes == (3,)
  path = epath.resource_path('dqvqe') / 'testdata' / 'cluster_9x3.txt'
  assert ClusterSpec.from_arg(str(path)) == ClusterSpec((9, 9, 9))
  with pytest.raises(errors.ParseError):
    ClusterSpec.parse('9,x')
  with pytest.raises(errors.ParseError):
    ClusterSpec.parse('9,0')


def test_greedy_h2():
  cluster = ClusterSpec((9, 9, 9))
  schedule = placement.greedy_distribute(cluster, 4, 15)
  assert schedule.round_sizes == (4, 4, 4, 3)
  assert not placement.validate_schedule(schedule, 15)

  first = schedule.rounds[0]
  assert [a.chain for a in first] == [(0,), (1,), (2,), (0, 1, 2)]
  assert first[3].per_qpu == (1, 2, 1)
  assert placement.idle_qubits(first, cluster) == 1
  assert [a.pauli_index for a in schedule.allocations()] == list(range(15))


def test_greedy_parallel():
  schedule = placement.greedy_distribute(ClusterSpec([10] * 5), 9, 5)
  assert schedule.round_sizes == (5,)
  assert all(not a.is_split for a in schedule.allocations())


def test_greedy_split_11_on_6x3():
  schedule = placement.greedy_distribute(ClusterSpec((6, 6, 6)), 11, 2)
  assert schedule.round_sizes == (1, 1)
  (a,) = schedule.rounds[0]
  assert a.per_qpu == (3, 4, 4)
  assert a.comm_pairs == ((0, 1), (1, 2))
  assert placement.round_usage(schedule.rounds[0], schedule.cluster) == (
      6,
      6,
      6,
  )


def test_greedy_infeasible():
  with pytest.raises(errors.InfeasibleError, match='cannot be solved'):
    placement.greedy_distribute(ClusterSpec((3,)), 5, 1)


def test_greedy_empty():
  schedule = placement.greedy_distribute(ClusterSpec((3,)), 5, 0)
  assert not schedule.rounds


def test_cp_single():
  solution = placement.cp_distribute(ClusterSpec((5,)), 4, 1)
  assert solution.feasible
  (a,) = solution.allocations
  assert a.per_qpu == (4,)
  assert a.qpe_qpu == 0
  assert not a.comm_pairs
  assert solution.sum_z == 0


def test_cp_h2_round():
  solution = placement.cp_distribute(ClusterSpec((9, 9, 9)), 4, 4)
  assert solution.feasible
  assert solution.sum_x == 16
  assert solution.sum_z == 8
  whole = [a for a in solution.allocations if not a.is_split]
  split = [a for a in solution.allocations if a.is_split]
  assert len(whole) == 3
  assert len(split) == 1
  assert len(split[0].chain) == 3
  assert placement.idle_qubits(solution.allocations, ClusterSpec((9,) * 3)) == 1


def test_cp_deterministic():
  a = placement.cp_distribute(ClusterSpec((9, 9, 9)), 4, 4)
  b = placement.cp_distribute(ClusterSpec((9, 9, 9)), 4, 4)
  assert a == b


def test_cp_split_11_on_6x3():
  solution = placement.cp_distribute(ClusterSpec((6, 6, 6)), 11, 1)
  assert solution.feasible
  assert solution.sum_z == 8


def test_cp_infeasible():
  assert not placement.cp_distribute(ClusterSpec((9, 9, 9)), 4, 5).feasible
  assert not placement.cp_distribute(ClusterSpec((3,)), 5, 1).feasible


@pytest.mark.parametrize(
    'sizes, n, p, rounds',
    [
        ((9, 9, 9), 4, 15, (4, 4, 4, 3)),
        ((10,), 9, 3, (1, 1, 1)),
        ((10,), 9, 0, ()),
        ((10,) * 5, 9, 5, (5,)),
    ],
)
def test_cp_schedule(sizes, n, p, rounds):
  schedule = placement.cp_schedule(ClusterSpec(sizes), n, p)
  assert schedule.round_sizes == rounds
  assert not placement.validate_schedule(schedule, p)


def test_cp_schedule_infeasible():
  with pytest.raises(errors.InfeasibleError):
    placement.cp_schedule(ClusterSpec((3,)), 5, 1)


@pytest.mark.parametrize(
    'sizes, n, p',
    [
        ((9, 9, 9), 4, 15),
        ((6, 6, 6), 11, 3),
        ((10,) * 5, 9, 12),
        ((7, 5, 4), 5, 6),
        ((12,), 3, 7),
    ],
)
def test_greedy_never_tighter_than_cp(sizes, n, p):
  cluster = ClusterSpec(sizes)
  greedy = placement.greedy_distribute(cluster, n, p)
  exact = placement.cp_schedule(cluster, n, p)
  assert not placement.validate_schedule(greedy, p)
  assert len(greedy) >= len(exact)


def _brute_force(sizes, n, m):
  """Minimum sum(z) over all placements of `m` copies (None if infeasible)."""
  options = []
  for x in itertools.product(*(range(min(n, q) + 1) for q in sizes)):
    if sum(x) != n:
      continue
    used = [j for j, v in enumerate(x) if v]
    comm = 2 if len(used) > 1 else 0
    for qpe in used:
      usage = tuple(
          v + (1 if j == qpe else 0) + (comm if v else 0)
          for j, v in enumerate(x)
      )
      options.append((usage, 4 * (len(used) - 1)))
  best = None
  for combo in itertools.combinations_with_replacement(options, m):
    total = [sum(u[j] for u, _ in combo) for j in range(len(sizes))]
    if all(t <= q for t, q in zip(total, sizes)):
      cost = sum(c for _, c in combo)
      best = cost if best is None else min(best, cost)
  return best


@pytest.mark.parametrize(
    'sizes',
    [(12,), (6, 6), (4, 4, 4), (5, 3, 4), (3, 3, 3, 3), (7, 5)],
)
def test_cp_matches_brute_force(sizes):
  cluster = ClusterSpec(sizes)
  for n in range(1, 6):
    for m in range(1, 4):
      expected = _brute_force(sizes, n, m)
      solution = placement.cp_distribute(cluster, n, m)
      assert solution.feasible == (expected is not None), (n, m)
      if expected is not None:
        assert solution.sum_z == expected, (n, m)
        assert solution.sum_x == n * m
        schedule = placement.Schedule(cluster, n, (solution.allocations,))
        assert not placement.validate_schedule(schedule)


def test_cp_monotone():
  cluster = ClusterSpec((5, 4, 4))
  for n in range(1, 6):
    feasible = [cp.cp_distribute(cluster, n, m).feasible for m in range(1, 5)]
    assert feasible == sorted(feasible, reverse=True)


def test_validate_detects_violations():
  cluster = ClusterSpec((5, 5))
  ok = allocation.AnsatzAllocation(0, (4, 0), (0,))
  assert not placement.validate_schedule(placement.Schedule(cluster, 4, [[ok]]))

  over = placement.Schedule(cluster, 4, [[ok, dataclasses.replace(ok)]])
  assert any('uses 10 qubits' in v for v in placement.validate_schedule(over))

  qpe_alone = allocation.AnsatzAllocation(0, (0, 4), (0,))
  violations = placement.validate_schedule(
      placement.Schedule(cluster, 4, [[qpe_alone]])
  )
  assert any('QPE qubit' in v for v in violations)

  short = allocation.AnsatzAllocation(0, (3, 0), (0,))
  violations = placement.validate_schedule(
      placement.Schedule(cluster, 4, [[short]]), p=2
  )
  assert any('covers 3' in v for v in violations)
  assert any('pauli 1 appears 0' in v for v in violations)


def test_schedule_json_round_trip():
  schedule = placement.greedy_distribute(ClusterSpec((9, 9, 9)), 4, 15)
  text = placement.schedule_to_json(schedule)
  assert placement.schedule_from_json(text) == schedule
  assert '"commPairs"' in text
  with pytest.raises(errors.ParseError):
    placement.schedule_from_json('{"cluster": [3]}')


def test_split_capacity():
  assert allocation.split_capacity([10]) == [9]
  assert allocation.split_capacity([6, 6, 6]) == [3, 4, 4]
  assert allocation.chain_fill([3, 4, 4], 11) == [3, 4, 4]
  assert allocation.chain_fill([1, 2, 2], 4) == [1, 2, 1]
  assert allocation.chain_fill([5], 2) == [2]
