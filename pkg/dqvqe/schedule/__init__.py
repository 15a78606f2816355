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

"""Per-QPU gate execution schedules and runtime analyses."""

# pylint: disable=g-importing-member

from dqvqe.schedule.analysis import max_ansatz_curve
from dqvqe.schedule.analysis import runtime_table
from dqvqe.schedule.analysis import RuntimeModel
from dqvqe.schedule.analysis import schedule_runtime
from dqvqe.schedule.analysis import Strategy
from dqvqe.schedule.analysis import weighted_runtime
from dqvqe.schedule.commands import CommandKind
from dqvqe.schedule.commands import parse_command
from dqvqe.schedule.commands import TimedCommand
from dqvqe.schedule.formats import read_schedules
from dqvqe.schedule.formats import to_csv
from dqvqe.schedule.formats import to_dataframe
from dqvqe.schedule.formats import from_json as schedules_from_json
from dqvqe.schedule.formats import to_json as schedules_to_json
from dqvqe.schedule.scheduler import build_global_schedule
from dqvqe.schedule.scheduler import GlobalSchedule
from dqvqe.schedule.scheduler import QpuSchedule
from dqvqe.schedule.scheduler import schedule_circuit
from dqvqe.schedule.scheduler import ScheduledGate
from dqvqe.schedule.scheduler import split_per_qpu
from dqvqe.schedule.timing import GateClass
from dqvqe.schedule.timing import GateTimeTable
from dqvqe.schedule.timing import parse_time_table
from dqvqe.schedule.timing import read_time_table
from dqvqe.schedule.timing import Unit
from dqvqe.schedule.validation import Constraint
from dqvqe.schedule.validation import validate_schedule
from dqvqe.schedule.validation import Violation
