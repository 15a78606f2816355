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

"""Simulated control plane executing per-QPU schedules."""

# pylint: disable=g-importing-member

from dqvqe.netctl.bus import Latency
from dqvqe.netctl.bus import Network
from dqvqe.netctl.centralized import run_centralized
from dqvqe.netctl.clock import ClockModel
from dqvqe.netctl.clock import max_skew
from dqvqe.netctl.clock import NodeClock
from dqvqe.netctl.decentralized import command_class
from dqvqe.netctl.decentralized import run_decentralized
from dqvqe.netctl.execution import ExecutionResult
from dqvqe.netctl.execution import measurement_seed
from dqvqe.netctl.execution import Status
from dqvqe.netctl.messages import Message
from dqvqe.netctl.nodes import node_name
from dqvqe.netctl.nodes import NodeRole
from dqvqe.netctl.runner import run_control_plane
from dqvqe.netctl.scenario import Faults
from dqvqe.netctl.scenario import read_scenario
from dqvqe.netctl.scenario import Scenario
from dqvqe.netctl.scenario import Topology
from dqvqe.netctl.scenario import ValidationConfig
from dqvqe.netctl.scenario import VendorConfig
from dqvqe.netctl.sync import clock_sync
from dqvqe.netctl.trace import to_jsonl
from dqvqe.netctl.trace import TraceEvent
from dqvqe.netctl.validation import entanglement_validation
from dqvqe.netctl.validation import ValidationResult
