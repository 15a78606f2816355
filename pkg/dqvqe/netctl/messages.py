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

"""Payloads exchanged on the control-plane bus."""

from __future__ import annotations

from collections.abc import Mapping
import dataclasses
from typing import Any, ClassVar

from dqvqe.schedule import scheduler
import immutabledict


@dataclasses.dataclass(frozen=True)
class Payload:
  # Sends of untraced payloads (clock beacons) are left out of the trace.
  TRACED: ClassVar[bool] = True

  @property
  def kind(self) -> str:
    return type(self).__name__


@dataclasses.dataclass(frozen=True)
class InstructionSet(Payload):
  """The part of the schedule a node executes."""

  schedule: scheduler.QpuSchedule


@dataclasses.dataclass(frozen=True)
class Ack(Payload):
  detail: str = ''


@dataclasses.dataclass(frozen=True)
class Nack(Payload):
  reason: str


@dataclasses.dataclass(frozen=True)
class Abort(Payload):
  reason: str


@dataclasses.dataclass(frozen=True)
class StartTime(Payload):
  """Execution start, in the clock of the receiver's orchestrator."""

  time: float


@dataclasses.dataclass(frozen=True)
class Start(Payload):
  pass


@dataclasses.dataclass(frozen=True)
class ClockBeacon(Payload):
  TRACED: ClassVar[bool] = False

  time: float


@dataclasses.dataclass(frozen=True)
class MeasurementResults(Payload):
  qpu: int
  registers: Mapping[str, int]

  def __post_init__(self):
    object.__setattr__(
        self, 'registers', immutabledict.immutabledict(self.registers)
    )


@dataclasses.dataclass(frozen=True)
class ClassicalBits(Payload):
  """A register value travelling QGN -> CCN -> CCN -> QGN."""

  register: str
  value: int
  src_qpu: int
  dst_qpu: int


@dataclasses.dataclass(frozen=True)
class EntReady(Payload):
  """Half of a distributed entangled pair is in place (`gate` text)."""

  gate: str


@dataclasses.dataclass(frozen=True)
class EntValidationMsg(Payload):
  """A step of the entanglement validation exchange.

  Attributes:
    stage: `bits`, `positions`, `ack` or `nack`.
    values: Measured bits or positions, depending on `stage`.
  """

  stage: str
  values: tuple[int, ...] = ()


@dataclasses.dataclass(frozen=True)
class ContractMsg(Payload):
  """User <-> vendor negotiation step.

  Attributes:
    stage: `query`, `gate_times`, `contract`, `handshake` or
      `start_ack`.
    body: Stage-dependent content.
  """

  stage: str
  body: Mapping[str, Any] = immutabledict.immutabledict()

  def __post_init__(self):
    object.__setattr__(self, 'body', immutabledict.immutabledict(self.body))


@dataclasses.dataclass(frozen=True)
class Message:
  """A payload in flight."""

  src: str
  dst: str
  payload: Payload
  seq: int
  sent_at: float
