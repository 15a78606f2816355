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

"""Drifting node clocks, corrected by time-reference beacons."""

from __future__ import annotations

import bisect
from collections.abc import Iterable, Mapping
import dataclasses
import math
from typing import Optional

from dqvqe.utils import errors
import immutabledict


@dataclasses.dataclass(frozen=True)
class ClockModel:
  """Clock error of every node.

  Nodes not listed run on the reference time.

  Attributes:
    offsets: Node -> initial offset from the reference time.
    drifts: Node -> drift rate (time units gained per time unit).
    beacon_period: Period of the time-reference broadcasts (`None`: no
      beacons).
    beacon_latency: Transit time of a beacon.
    compensated_latency: Latency the nodes add to a beacon reading.
    skew_bound: Largest inter-node skew a vendor accepts.
  """

  offsets: Mapping[str, float] = immutabledict.immutabledict()
  drifts: Mapping[str, float] = immutabledict.immutabledict()
  beacon_period: Optional[float] = None
  beacon_latency: float = 0.0
  compensated_latency: float = 0.0
  skew_bound: float = math.inf

  def __post_init__(self):
    for name in ('offsets', 'drifts'):
      value = {str(k): float(v) for k, v in getattr(self, name).items()}
      object.__setattr__(self, name, immutabledict.immutabledict(value))
    if self.beacon_period is not None and self.beacon_period <= 0:
      raise errors.ValidationError(
          f'Beacon period must be > 0, got {self.beacon_period}'
      )
    if self.beacon_latency < 0 or self.compensated_latency < 0:
      raise errors.ValidationError('Beacon latencies must be >= 0.')

  @property
  def nodes(self) -> tuple[str, ...]:
    return tuple(sorted(set(self.offsets) | set(self.drifts)))

  def make_clock(self, node: str) -> NodeClock:
    return NodeClock(self.offsets.get(node, 0.0), self.drifts.get(node, 0.0))


class NodeClock:
  """Local time `t + e(t)`, where the error `e` grows with the drift.

  Each correction starts a new segment with its own error.
  """

  def __init__(self, offset: float = 0.0, drift: float = 0.0):
    if drift <= -1:
      raise errors.ValidationError(f'Drift must be > -1, got {drift}')
    self.drift = drift
    self._since = [0.0]
    self._errors = [offset]

  def _segment(self, t: float, *, before: bool = False) -> int:
    if before:
      return max(bisect.bisect_left(self._since, t) - 1, 0)
    return max(bisect.bisect_right(self._since, t) - 1, 0)

  def error_at(self, t: float, *, before: bool = False) -> float:
    """Clock error at `t` (`before`: just before a correction at `t`)."""
    i = self._segment(t, before=before)
    return self._errors[i] + self.drift * (t - self._since[i])

  def local(self, t: float) -> float:
    return t + self.error_at(t)

  def global_at(self, local_time: float, now: float) -> float:
    """Time at which the clock reads `local_time` (not before `now`)."""
    i = self._segment(now)
    since, e0 = self._since[i], self._errors[i]
    t = (local_time - e0 + self.drift * since) / (1 + self.drift)
    return max(t, now)

  def correct(self, now: float, reading: float) -> None:
    """Sets the clock so it reads `reading` at `now`."""
    self._since.append(now)
    self._errors.append(reading - now)

  @property
  def corrections(self) -> tuple[float, ...]:
    return tuple(self._since[1:])


def max_skew(clocks: Iterable[NodeClock], start: float, end: float) -> float:
  """Largest spread of the clock errors over `[start, end]`.

  The errors are linear between corrections, so the extremes sit at the
  window bounds and on both sides of each correction.
  """
  clocks = list(clocks)
  if len(clocks) < 2 or end < start:
    return 0.0
  points = {start, end}
  for c in clocks:
    points.update(t for t in c.corrections if start <= t <= end)
  out = 0.0
  for t in sorted(points):
    sides = [False] if t == start else [False, True]
    for before in sides:
      e = [c.error_at(t, before=before) for c in clocks]
      out = max(out, max(e) - min(e))
  return out
