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

"""Ansatz placement across QPUs."""

# pylint: disable=g-importing-member

from dqvqe.placement.allocation import AnsatzAllocation
from dqvqe.placement.allocation import does_not_fit
from dqvqe.placement.allocation import idle_qubits
from dqvqe.placement.allocation import max_ansatz_size
from dqvqe.placement.allocation import round_usage
from dqvqe.placement.allocation import Schedule
from dqvqe.placement.allocation import schedule_from_json
from dqvqe.placement.allocation import schedule_to_json
from dqvqe.placement.cluster import ClusterSpec
from dqvqe.placement.cp import cp_distribute
from dqvqe.placement.cp import cp_schedule
from dqvqe.placement.cp import CpSolution
from dqvqe.placement.greedy import greedy_distribute
from dqvqe.placement.validation import validate_schedule


def distribute(cluster, n: int, p: int, *, solver: str = 'greedy') -> Schedule:
  """Runs the `greedy` or `cp` solver."""
  match solver:
    case 'greedy':
      return greedy_distribute(cluster, n, p)
    case 'cp':
      return cp_schedule(cluster, n, p)
    case _:
      raise ValueError(f'Unknown solver {solver!r}, expected greedy|cp')
