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

"""Timed commands of the per-QPU schedules."""

from __future__ import annotations

import dataclasses
import enum
import re
from typing import Any

from dqvqe.circuit import gates as gates_lib
from dqvqe.utils import errors

QubitId = gates_lib.QubitId


class CommandKind(enum.StrEnum):
  """Commands a QPU executes."""

  TWO_QUBIT = 'TWO_QUBIT'
  SINGLE = 'SINGLE'
  GEN_ENT = 'GEN_ENT'
  SEND_ENT = 'SEND_ENT'
  REC_ENT = 'REC_ENT'
  CLASSICAL = 'CLASSICAL'
  SEND_CLA = 'SEND_CLA'
  REC_CLA = 'REC_CLA'

  @classmethod
  def parse(cls, name: str) -> CommandKind:
    """Accepts `CONTROL` as an alias of `TWO_QUBIT`."""
    name = name.strip().upper()
    if name == 'CONTROL':
      return cls.TWO_QUBIT
    try:
      return cls(name)
    except ValueError:
      raise errors.ParseError(f'Unknown command {name!r}') from None

  @property
  def partner(self) -> CommandKind | None:
    """The other half of a send/receive pair."""
    return _PARTNERS.get(self)


_PARTNERS = {
    CommandKind.SEND_ENT: CommandKind.REC_ENT,
    CommandKind.REC_ENT: CommandKind.SEND_ENT,
    CommandKind.SEND_CLA: CommandKind.REC_CLA,
    CommandKind.REC_CLA: CommandKind.SEND_CLA,
}


@dataclasses.dataclass(frozen=True)
class TimedCommand:
  """One command of a QPU schedule.

  Attributes:
    kind: The command.
    args: Arguments (`SEND_ENT[1,4]` has args `('1', '4')`).
    qpus: QPUs involved in the command.
    time: Start time.
    duration: Duration.
    qubits: Qubits of this QPU the command occupies.
    gate: Text of the circuit gate the command comes from.
  """

  kind: CommandKind
  args: tuple[str, ...]
  qpus: tuple[int, ...]
  time: float
  duration: float
  qubits: tuple[QubitId, ...] = ()
  gate: str = ''

  def __post_init__(self):
    object.__setattr__(self, 'kind', CommandKind(self.kind))
    object.__setattr__(self, 'args', tuple(str(a) for a in self.args))
    object.__setattr__(self, 'qpus', tuple(int(j) for j in self.qpus))
    object.__setattr__(self, 'qubits', tuple(self.qubits))
    if self.time < 0 or self.duration <= 0:
      raise errors.ValidationError(
          f'Invalid time={self.time} / duration={self.duration} for {self}'
      )

  @property
  def end(self) -> float:
    return self.time + self.duration

  @property
  def is_send(self) -> bool:
    return self.kind in (CommandKind.SEND_ENT, CommandKind.SEND_CLA)

  @property
  def is_receive(self) -> bool:
    return self.kind in (CommandKind.REC_ENT, CommandKind.REC_CLA)

  @property
  def peer(self) -> int | None:
    """QPU at the other end of a send/receive."""
    return int(self.args[0]) if self.kind.partner else None

  def __str__(self) -> str:
    return f'{self.kind}[{",".join(self.args)}]'

  def to_json(self) -> dict[str, Any]:
    return {
        'kind': str(self.kind),
        'args': list(self.args),
        'qpus': list(self.qpus),
        'time': self.time,
        'duration': self.duration,
        'qubits': [str(q) for q in self.qubits],
        'gate': self.gate,
    }

  @classmethod
  def from_json(cls, value: dict[str, Any]) -> TimedCommand:
    return cls(
        kind=CommandKind.parse(value['kind']),
        args=tuple(value['args']),
        qpus=tuple(value['qpus']),
        time=float(value['time']),
        duration=float(value['duration']),
        qubits=tuple(QubitId.parse(q) for q in value.get('qubits', ())),
        gate=value.get('gate', ''),
    )


_COMMAND = re.compile(r'([A-Za-z_]+)\[(.*)\]')


def parse_command(text: str) -> tuple[CommandKind, tuple[str, ...]]:
  """Parses `KIND[arg,...]` (e.g. `SEND_ENT[1,4]`)."""
  m = _COMMAND.fullmatch(text.strip())
  if not m:
    raise errors.ParseError(f'Expected `KIND[args]`, got {text!r}')
  kind, args = m.groups()
  args = tuple(a.strip() for a in args.split(',')) if args.strip() else ()
  return CommandKind.parse(kind), args
