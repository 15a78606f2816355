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

"""Checks of the per-QPU schedules.

1. Every send has a receive on the peer QPU at the same timestamp.
2. Commands never overlap on a qubit.
3. All qubits of a two-qubit command are free when it starts.
"""

from __future__ import annotations

import collections
from collections.abc import Mapping
import dataclasses
import enum

from dqvqe.schedule import commands as commands_lib
from dqvqe.schedule import scheduler

_EPS = 1e-9


class Constraint(enum.IntEnum):
  PAIRED = 1
  NO_OVERLAP = 2
  FREE_AT_START = 3


@dataclasses.dataclass(frozen=True)
class Violation:
  constraint: Constraint
  qpu: int
  message: str

  def __str__(self) -> str:
    return f'[{self.constraint.name}] QPU {self.qpu}: {self.message}'


def _pair_violations(
    per_qpu: Mapping[int, scheduler.QpuSchedule],
) -> list[Violation]:
  """Matches sends and receives by (kind, endpoints, gate) in time order."""
  sends = collections.defaultdict(list)
  receives = collections.defaultdict(list)
  for j, schedule in per_qpu.items():
    for c in schedule:
      if c.is_send:
        sends[(c.kind, j, c.peer, c.gate)].append(c)
      elif c.is_receive:
        receives[(c.kind.partner, c.peer, j, c.gate)].append(c)

  out = []
  for key in sorted(set(sends) | set(receives), key=str):
    kind, src, dst, gate = key
    ss = sorted(sends.get(key, ()), key=lambda c: c.time)
    rs = sorted(receives.get(key, ()), key=lambda c: c.time)
    if len(ss) != len(rs):
      out.append(
          Violation(
              Constraint.PAIRED,
              src,
              f'{len(ss)} {kind} to QPU {dst} for {len(rs)} receives'
              f' (`{gate}`)',
          )
      )
    for s, r in zip(ss, rs):
      if abs(s.time - r.time) > _EPS:
        out.append(
            Violation(
                Constraint.PAIRED,
                src,
                f'{s}@{s.time:g} received as {r}@{r.time:g} on QPU {dst}',
            )
        )
  return out


def _qubit_violations(
    qpu: int, schedule: scheduler.QpuSchedule
) -> list[Violation]:
  out = []
  by_qubit = collections.defaultdict(list)
  for c in schedule:
    for q in c.qubits:
      by_qubit[q].append(c)

  for q, cs in sorted(by_qubit.items()):
    cs = sorted(cs, key=lambda c: c.time)
    for a, b in zip(cs, cs[1:]):
      if a.end > b.time + _EPS:
        out.append(
            Violation(
                Constraint.NO_OVERLAP,
                qpu,
                f'{a}@{a.time:g} and {b}@{b.time:g} overlap on {q}',
            )
        )

  for c in schedule:
    if c.kind != commands_lib.CommandKind.TWO_QUBIT:
      continue
    for q in c.qubits:
      busy = [
          o
          for o in by_qubit[q]
          if o is not c and o.time <= c.time + _EPS and c.time < o.end - _EPS
      ]
      for o in busy:
        out.append(
            Violation(
                Constraint.FREE_AT_START,
                qpu,
                f'{c}@{c.time:g} starts while {o}@{o.time:g} holds {q}',
            )
        )
  return out


def validate_schedule(
    per_qpu: Mapping[int, scheduler.QpuSchedule],
) -> list[Violation]:
  """Returns every violated constraint (empty list if the schedule is valid)."""
  out = _pair_violations(per_qpu)
  for j, schedule in sorted(per_qpu.items()):
    out.extend(_qubit_violations(j, schedule))
  return out
