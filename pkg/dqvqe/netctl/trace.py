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

"""Execution trace of the control-plane simulation."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
import dataclasses
import json
from typing import Any

import immutabledict


@dataclasses.dataclass(frozen=True)
class TraceEvent:
  """Something a node did at a given (global) time."""

  time: float
  node: str
  event: str
  detail: Mapping[str, Any] = immutabledict.immutabledict()

  def __post_init__(self):
    object.__setattr__(
        self, 'detail', immutabledict.immutabledict(self.detail)
    )

  def to_json(self) -> dict[str, Any]:
    return {
        'time': self.time,
        'node': self.node,
        'event': self.event,
        'detail': dict(self.detail),
    }


class Trace:
  """Append-only list of events."""

  def __init__(self):
    self.events: list[TraceEvent] = []

  def log(self, time: float, node: str, event: str, **detail: Any) -> None:
    self.events.append(TraceEvent(float(time), node, event, detail))

  def __len__(self) -> int:
    return len(self.events)

  def __iter__(self) -> Iterator[TraceEvent]:
    return iter(self.events)


def to_jsonl(events: Iterable[TraceEvent]) -> str:
  """One JSON object per line."""
  return ''.join(
      json.dumps(e.to_json(), sort_keys=True) + '\n' for e in events
  )
