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

"""Entry point of the control-plane simulation."""

from __future__ import annotations

from dqvqe.netctl import centralized
from dqvqe.netctl import decentralized
from dqvqe.netctl import execution
from dqvqe.netctl import scenario as scenario_lib


def run_control_plane(
    schedules: execution.Schedules, scenario: scenario_lib.Scenario
) -> execution.ExecutionResult:
  """Runs `schedules` under the topology of `scenario`."""
  match scenario.topology:
    case scenario_lib.Topology.CENTRALIZED:
      return centralized.run_centralized(schedules, scenario)
    case scenario_lib.Topology.DECENTRALIZED:
      return decentralized.run_decentralized(schedules, scenario)
    case _:
      raise ValueError(f'Unknown topology {scenario.topology!r}')
