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

"""CSV and JSON forms of the per-QPU schedules."""

from __future__ import annotations

from collections.abc import Mapping
import json
import os
from typing import Any

from dqvqe.schedule import commands as commands_lib
from dqvqe.schedule import scheduler
from dqvqe.schedule import timing
from dqvqe.utils import errors
from etils import epath
from etils import epy
import pandas as pd

CSV_COLUMNS = ('qpu', 'command', 'args', 'qpus', 'time', 'duration', 'gate')


def to_dataframe(per_qpu: Mapping[int, scheduler.QpuSchedule]) -> pd.DataFrame:
  """One row per command: `qpu,command,args,qpus,time,duration,gate`."""
  rows = [
      {
          'qpu': j,
          'command': str(c.kind),
          'args': ','.join(c.args),
          'qpus': ' '.join(str(q) for q in c.qpus),
          'time': c.time,
          'duration': c.duration,
          'gate': c.gate,
      }
      for j, schedule in sorted(per_qpu.items())
      for c in schedule
  ]
  return pd.DataFrame(rows, columns=list(CSV_COLUMNS))


def to_csv(per_qpu: Mapping[int, scheduler.QpuSchedule]) -> str:
  return to_dataframe(per_qpu).to_csv(index=False)


def to_json(
    per_qpu: Mapping[int, scheduler.QpuSchedule],
    times: timing.GateTimeTable | None = None,
) -> dict[str, Any]:
  out: dict[str, Any] = {
      'makespan': max((s.makespan for s in per_qpu.values()), default=0.0),
      'qpus': {str(j): s.to_json() for j, s in sorted(per_qpu.items())},
  }
  if times is not None:
    out['unit'] = str(times.unit)
  return out


def from_json(value: Mapping[str, Any]) -> dict[int, scheduler.QpuSchedule]:
  """Inverse of `to_json`."""
  try:
    return {
        int(j): scheduler.QpuSchedule(
            int(j),
            tuple(commands_lib.TimedCommand.from_json(c) for c in commands),
        )
        for j, commands in value['qpus'].items()
    }
  except (KeyError, TypeError, ValueError) as e:
    if isinstance(e, errors.ParseError):
      raise
    raise errors.ParseError(f'Invalid schedule: {e!r}') from e


def read_schedules(path: epath.PathLike) -> dict[int, scheduler.QpuSchedule]:
  path = epath.Path(path)
  try:
    return from_json(json.loads(path.read_text()))
  except json.JSONDecodeError as e:
    raise errors.ParseError(f'{os.fspath(path)}: {e}') from e
  except errors.ParseError as e:
    epy.reraise(e, prefix=f'{os.fspath(path)}: ')
