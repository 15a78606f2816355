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

"""Shared pieces of the centralized and decentralized runs."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
import dataclasses
import enum
from typing import Any, Optional

from dqvqe.netctl import bus as bus_lib
from dqvqe.netctl import medium as medium_lib
from dqvqe.netctl import nodes as nodes_lib
from dqvqe.netctl import scenario as scenario_lib
from dqvqe.netctl import trace as trace_lib
from dqvqe.random import random as dq_random
from dqvqe.random import streams
from dqvqe.schedule import scheduler
from dqvqe.simulate import statevector
from dqvqe.utils import errors
from etils import epy
import immutabledict
import simpy

Schedules = Mapping[int, scheduler.QpuSchedule]


class Status(epy.StrEnum):
  COMPLETED = enum.auto()
  ABORTED = enum.auto()
  # The run hit the simulation horizon.
  STALLED = enum.auto()


@dataclasses.dataclass(frozen=True)
class ExecutionResult:
  """Outcome of a control-plane run.

  Attributes:
    status: How the run ended.
    reason: Why it was aborted.
    registers: Measurement results gathered by the orchestrator.
    trace: All events, in time order.
    state: The final quantum state.
    measurement_seed: Seed of the keyed measurement draws. Running the
      circuit with the same seed gives the same outcomes.
    start_time: Agreed start time (`None` if execution never started).
  """

  status: Status
  reason: str
  registers: Mapping[str, int]
  trace: tuple[trace_lib.TraceEvent, ...]
  state: statevector.SimState = dataclasses.field(compare=False, repr=False)
  measurement_seed: int
  start_time: Optional[float] = None

  def __post_init__(self):
    object.__setattr__(
        self,
        'registers',
        immutabledict.immutabledict(sorted(self.registers.items())),
    )

  @property
  def completed(self) -> bool:
    return self.status == Status.COMPLETED

  def events(self, event: str) -> list[trace_lib.TraceEvent]:
    return [e for e in self.trace if e.event == event]

  def to_json(self) -> dict[str, Any]:
    return {
        'status': str(self.status),
        'reason': self.reason,
        'registers': dict(self.registers),
        'startTime': self.start_time,
        'events': len(self.trace),
    }


def measurement_seed(seed: int) -> int:
  return streams.MEASUREMENTS.make(dq_random.PRNGKey(seed)).as_seed()


def quantum_state(schedules: Schedules, seed: int) -> statevector.SimState:
  """|0..0> over every qubit the schedules touch, with keyed measurements."""
  qubits = {q for s in schedules.values() for c in s for q in c.qubits}
  return statevector.SimState(
      sorted(qubits), measurement_seed=measurement_seed(seed)
  )


def quantum_medium(
    network: bus_lib.Network, schedules: Schedules, seed: int
) -> medium_lib.QuantumMedium:
  """The shared state, with a slot for every operation of the plan."""
  return medium_lib.QuantumMedium.for_schedules(
      network.env,
      quantum_state(schedules, seed),
      schedules,
      lambda j: nodes_lib.node_name(nodes_lib.NodeRole.QUANTUM_GATES, j),
  )


def makespan(schedules: Schedules) -> float:
  return max((s.makespan for s in schedules.values()), default=0.0)


def check_schedules(schedules: Schedules) -> dict[int, scheduler.QpuSchedule]:
  if not schedules:
    raise errors.ValidationError('Nothing to execute: no QPU schedules.')
  for j, s in schedules.items():
    if s.qpu != j:
      raise errors.ValidationError(f'Schedule of QPU {s.qpu} keyed as {j}')
  return dict(sorted(schedules.items()))


def make_network(scenario: scenario_lib.Scenario) -> bus_lib.Network:
  return bus_lib.Network(
      latency=scenario.latency,
      clock_model=scenario.clock,
      drop_messages=scenario.faults.drop_messages,
  )


def start_nodes(
    nodes: Iterable[nodes_lib.Node], failed: Iterable[str]
) -> dict[str, simpy.Process]:
  """Starts the nodes that did not fail and returns their main processes."""
  failed = set(failed)
  out = {}
  for node in nodes:
    if node.name in failed:
      node.fail()
      continue
    out[node.name] = node.start()
  return out
