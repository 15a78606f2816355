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

"""Gate durations.

File format:

```
unit: weight
cnot=5
single=1
qpu2.cnot=7   # Override for QPU 2
```

Missing classes keep their default.
"""

from __future__ import annotations

from collections.abc import Iterable
import dataclasses
import enum
import os
import re

from dqvqe.circuit import gates as gates_lib
from dqvqe.utils import errors
from etils import epath
from etils import epy
import immutabledict


class GateClass(epy.StrEnum):
  """Duration classes."""

  CNOT = enum.auto()
  SINGLE = enum.auto()
  MEASURE = enum.auto()
  ENTGEN = enum.auto()
  CLASSICAL = enum.auto()
  MERGE = enum.auto()


class Unit(epy.StrEnum):
  WEIGHT = enum.auto()
  NS = enum.auto()


DEFAULT_DURATIONS = immutabledict.immutabledict({
    GateClass.CNOT: 5.0,
    GateClass.SINGLE: 1.0,
    GateClass.MEASURE: 2.0,
    GateClass.ENTGEN: 8.0,
    GateClass.CLASSICAL: 2.0,
    GateClass.MERGE: 3.0,
})


def gate_class(gate: gates_lib.Gate) -> GateClass:
  """Duration class of `gate` (control-control gates count as a CNOT)."""
  match gate:
    case gates_lib.Controlled():
      return GateClass.CNOT
    case gates_lib.SingleQubit() | gates_lib.ClassicallyControlled():
      return GateClass.SINGLE
    case gates_lib.Measure():
      return GateClass.MEASURE
    case gates_lib.EntGen():
      return GateClass.ENTGEN
    case gates_lib.ClassicalComm():
      return GateClass.CLASSICAL
    case _:
      raise errors.ValidationError(f'No duration class for `{gate}`')


@dataclasses.dataclass(frozen=True)
class GateTimeTable:
  """Duration of each gate class, optionally per QPU.

  Attributes:
    durations: Class -> duration.
    unit: Unit of every duration.
    overrides: `(qpu, class)` -> duration.
  """

  durations: immutabledict.immutabledict[GateClass, float] = DEFAULT_DURATIONS
  unit: Unit = Unit.WEIGHT
  overrides: immutabledict.immutabledict[tuple[int, GateClass], float] = (
      dataclasses.field(default_factory=immutabledict.immutabledict)
  )

  def __post_init__(self):
    durations = {GateClass(k): float(v) for k, v in self.durations.items()}
    missing = set(GateClass) - set(durations)
    if missing:
      raise errors.ValidationError(
          f'Missing durations for {sorted(str(m) for m in missing)}'
      )
    overrides = {
        (int(j), GateClass(k)): float(v) for (j, k), v in self.overrides.items()
    }
    for key, value in (*durations.items(), *overrides.items()):
      if not value > 0:
        raise errors.ValidationError(
            f'Durations must be > 0, got {key}={value}'
        )
    object.__setattr__(
        self, 'durations', immutabledict.immutabledict(durations)
    )
    object.__setattr__(
        self, 'overrides', immutabledict.immutabledict(overrides)
    )
    object.__setattr__(self, 'unit', Unit(self.unit))

  def duration(self, cls: GateClass, qpus: Iterable[int] = ()) -> float:
    """Duration of `cls`, the slowest over `qpus`."""
    return max(
        (self.overrides.get((j, cls), self.durations[cls]) for j in qpus),
        default=self.durations[cls],
    )

  def gate_duration(self, gate: gates_lib.Gate) -> float:
    return self.duration(gate_class(gate), gate.qpus)


_LINE = re.compile(r'(?:qpu(\d+)\.)?([a-z]+)\s*=\s*(\S+)')


def parse_time_table(text: str) -> GateTimeTable:
  """Parses the `unit:` header and the `class=duration` lines."""
  unit = None
  durations = dict(DEFAULT_DURATIONS)
  overrides = {}
  for lineno, line in enumerate(text.splitlines(), start=1):
    line = line.split('#', 1)[0].strip()
    if not line:
      continue
    try:
      if line.startswith('unit:'):
        if unit is not None:
          raise ValueError('duplicate unit header')
        unit = Unit(line.removeprefix('unit:').strip())
        continue
      if unit is None:
        raise ValueError('expected a `unit: weight|ns` header first')
      m = _LINE.fullmatch(line)
      if not m:
        raise ValueError('expected `[qpu<k>.]<class>=<duration>`')
      qpu, cls, value = m.groups()
      cls = GateClass(cls)
      if qpu is None:
        durations[cls] = float(value)
      else:
        overrides[(int(qpu), cls)] = float(value)
    except ValueError as e:
      raise errors.ParseError(f'line {lineno}: {e} (got {line!r})') from None
  if unit is None:
    raise errors.ParseError('Missing `unit: weight|ns` header.')
  return GateTimeTable(
      durations=immutabledict.immutabledict(durations),
      unit=unit,
      overrides=immutabledict.immutabledict(overrides),
  )


def read_time_table(path: epath.PathLike) -> GateTimeTable:
  path = epath.Path(path)
  try:
    return parse_time_table(path.read_text())
  except errors.ParseError as e:
    epy.reraise(e, prefix=f'{os.fspath(path)}: ')


def to_text(table: GateTimeTable) -> str:
  lines = [f'unit: {table.unit}']
  lines += [f'{cls}={table.durations[cls]!r}' for cls in GateClass]
  lines += [
      f'qpu{j}.{cls}={v!r}' for (j, cls), v in sorted(table.overrides.items())
  ]
  return '\n'.join(lines) + '\n'
