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

"""Schedule validator shared by both solvers."""

from __future__ import annotations

import collections

from dqvqe.placement import allocation as alloc_lib


def validate_schedule(
    schedule: alloc_lib.Schedule, p: int | None = None
) -> list[str]:
  """Checks the placement constraints and the Pauli coverage.

  Args:
    schedule: The schedule to check.
    p: Expected number of Pauli strings (defaults to the number of
      allocations).

  Returns:
    Human readable violations. Empty when the schedule is valid.
  """
  cluster = schedule.cluster
  n = schedule.ansatz_size
  m = cluster.num_qpus
  violations = []
  for r, round_ in enumerate(schedule.rounds, start=1):
    for a in round_:
      where = f'round {r}, pauli {a.pauli_index}'
      if len(a.per_qpu) != m:
        violations.append(f'{where}: perQpu has {len(a.per_qpu)} entries.')
        continue
      if any(x < 0 for x in a.per_qpu):
        violations.append(f'{where}: negative qubit count {a.per_qpu}.')
      if sum(a.per_qpu) != n:
        violations.append(
            f'{where}: covers {sum(a.per_qpu)} data qubits, expected {n}.'
        )
      if len(set(a.chain)) != len(a.chain) or any(
          not 0 <= j < m for j in a.chain
      ):
        violations.append(f'{where}: invalid chain {a.chain}.')
        continue
      used = {j for j, x in enumerate(a.per_qpu) if x}
      if a.per_qpu[a.qpe_qpu] == 0:
        violations.append(
            f'{where}: QPE qubit on QPU {a.qpe_qpu} without Ansatz qubits.'
        )
      if used != set(a.chain):
        violations.append(
            f'{where}: QPUs with data {sorted(used)} differ from the chain'
            f' {a.chain}.'
        )
      if len(a.comm_pairs) != len(used) - 1:
        violations.append(
            f'{where}: {len(used)} QPUs need {len(used) - 1} comm pairs, got'
            f' {len(a.comm_pairs)}.'
        )
    for j, (u, q) in enumerate(
        zip(alloc_lib.round_usage(round_, cluster), cluster.qpu_sizes)
    ):
      if u > q:
        violations.append(f'round {r}: QPU {j} uses {u} qubits of {q}.')

  counts = collections.Counter(a.pauli_index for a in schedule.allocations())
  expected = schedule.num_paulis if p is None else p
  for i in range(expected):
    if counts[i] != 1:
      violations.append(f'pauli {i} appears {counts[i]} times.')
  for i in sorted(set(counts) - set(range(expected))):
    violations.append(f'unexpected pauli index {i}.')
  return violations
