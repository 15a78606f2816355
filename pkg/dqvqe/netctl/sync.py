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

"""Clock synchronization run."""

from __future__ import annotations

from collections.abc import Sequence
from typing import Optional

from dqvqe.netctl import bus as bus_lib
from dqvqe.netctl import clock as clock_lib
from dqvqe.netctl import nodes as nodes_lib


class _Follower(nodes_lib.Node):
  """A node that only tracks the beacons."""

  role = nodes_lib.NodeRole.QUANTUM_GATES

  def run(self):
    yield self.halted


def clock_sync(
    model: clock_lib.ClockModel,
    duration: float,
    *,
    nodes: Optional[Sequence[str]] = None,
) -> float:
  """Largest skew between the clocks of `nodes` over a run of `duration`.

  A time reference broadcasts its clock every beacon period, starting at 0.
  The skew is measured from the first correction on (from 0 without
  beacons).

  Args:
    model: Clock errors and beacon settings.
    duration: Length of the run.
    nodes: Nodes to compare (default: those listed in `model`).

  Returns:
    The maximal spread of the clock errors.
  """
  if duration < 0:
    raise ValueError(f'Expected duration >= 0, got {duration}')
  nodes = list(model.nodes if nodes is None else nodes)
  network = bus_lib.Network(clock_model=model)
  followers = [_Follower(network, name=n) for n in nodes]
  trn = nodes_lib.TimeRefNode(network, targets=nodes)
  trn.start()
  for f in followers:
    f.start()
  if duration > 0:
    network.env.run(until=duration)

  start = 0.0
  if model.beacon_period is not None:
    start = min(model.beacon_latency, duration)
  return clock_lib.max_skew(
      [network.clock(n) for n in nodes], start, duration
  )
