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

"""Layer-based gate execution schedule.

A first pass gives every gate of a layer the end time of the previous layer.
A second pass splits the result into one command list per QPU, where the
entanglement and classical steps become send/receive pairs at identical
timestamps.
"""

from __future__ import annotations

from collections.abc import Iterator
import dataclasses
from typing import Any

from dqvqe.circuit import circuits
from dqvqe.circuit import gates as gates_lib
from dqvqe.schedule import commands as commands_lib
from dqvqe.schedule import timing

CommandKind = commands_lib.CommandKind
TimedCommand = commands_lib.TimedCommand


@dataclasses.dataclass(frozen=True)
class ScheduledGate:
  """A gate of the global schedule."""

  gate: gates_lib.Gate
  qpus: tuple[int, ...]
  time: float
  duration: float
  layer: int


@dataclasses.dataclass(frozen=True)
class GlobalSchedule:
  """All gates with their start times.

  Attributes:
    entries: Gates, in layer order.
    makespan: End time of the last layer.
  """

  entries: tuple[ScheduledGate, ...]
  makespan: float

  def __len__(self) -> int:
    return len(self.entries)

  def __iter__(self) -> Iterator[ScheduledGate]:
    return iter(self.entries)


@dataclasses.dataclass(frozen=True)
class QpuSchedule:
  """Commands of one QPU, ordered by time."""

  qpu: int
  commands: tuple[TimedCommand, ...] = ()

  def __post_init__(self):
    object.__setattr__(
        self,
        'commands',
        tuple(sorted(self.commands, key=lambda c: (c.time, c.kind, c.args))),
    )

  def __len__(self) -> int:
    return len(self.commands)

  def __iter__(self) -> Iterator[TimedCommand]:
    return iter(self.commands)

  @property
  def makespan(self) -> float:
    return max((c.end for c in self.commands), default=0.0)

  def to_json(self) -> list[dict[str, Any]]:
    return [c.to_json() for c in self.commands]


def build_global_schedule(
    c: circuits.Circuit, times: timing.GateTimeTable = timing.GateTimeTable()
) -> GlobalSchedule:
  """Starts every gate of layer `i` when the slowest gate of layer `i-1` ends.

  Args:
    c: Layered circuit.
    times: Gate durations.

  Returns:
    The global schedule.
  """
  entries = []
  layer_end = 0.0
  for i, layer in enumerate(c.layers):
    durations = [times.gate_duration(g) for g in layer]
    entries.extend(
        ScheduledGate(gate=g, qpus=g.qpus, time=layer_end, duration=d, layer=i)
        for g, d in zip(layer, durations)
    )
    layer_end += max(durations, default=0.0)
  return GlobalSchedule(entries=tuple(entries), makespan=layer_end)


def _local(qubits, qpu: int) -> tuple[gates_lib.QubitId, ...]:
  return tuple(q for q in qubits if q.qpu == qpu)


def commands_of(entry: ScheduledGate) -> dict[int, TimedCommand]:
  """The command each involved QPU executes for `entry`."""
  g = entry.gate

  def make(kind, args, qpu, qubits=None) -> TimedCommand:
    return TimedCommand(
        kind=kind,
        args=tuple(str(a) for a in args),
        qpus=entry.qpus,
        time=entry.time,
        duration=entry.duration,
        qubits=_local(g.qubits, qpu) if qubits is None else qubits,
        gate=str(g),
    )

  match g:
    case gates_lib.EntGen() if g.a.qpu != g.b.qpu:
      return {
          g.a.qpu: make(CommandKind.SEND_ENT, (g.b.qpu, g.a.local), g.a.qpu),
          g.b.qpu: make(CommandKind.REC_ENT, (g.a.qpu, g.b.local), g.b.qpu),
      }
    case gates_lib.EntGen():
      return {g.a.qpu: make(CommandKind.GEN_ENT, (g.a, g.b), g.a.qpu)}
    case gates_lib.ClassicalComm() if g.src != g.dst:
      return {
          g.src: make(CommandKind.SEND_CLA, (g.dst, g.register), g.src, ()),
          g.dst: make(CommandKind.REC_CLA, (g.src, g.register), g.dst, ()),
      }
    case gates_lib.ClassicalComm():
      return {g.src: make(CommandKind.CLASSICAL, (g.register,), g.src, ())}
    case gates_lib.Controlled():
      return {
          j: make(CommandKind.TWO_QUBIT, (g.base.name, *g.qubits), j)
          for j in entry.qpus
      }
    case gates_lib.SingleQubit():
      args = (g.name, g.target)
    case gates_lib.Measure():
      args = ('measure', g.target)
    case gates_lib.ClassicallyControlled():
      args = (g.inner.name, g.target)
    case _:
      raise TypeError(f'Cannot schedule {g!r}')
  return {g.target.qpu: make(CommandKind.SINGLE, args, g.target.qpu)}


def split_per_qpu(
    schedule: GlobalSchedule, *, num_qpus: int | None = None
) -> dict[int, QpuSchedule]:
  """Splits the global schedule into the command list of each QPU.

  Args:
    schedule: Output of `build_global_schedule`.
    num_qpus: If set, QPUs without commands get an empty schedule.

  Returns:
    QPU -> its schedule. A command goes only to the QPUs it involves.
  """
  per_qpu: dict[int, list[TimedCommand]] = {}
  if num_qpus is not None:
    per_qpu = {j: [] for j in range(num_qpus)}
  for entry in schedule:
    for j, command in commands_of(entry).items():
      per_qpu.setdefault(j, []).append(command)
  return {j: QpuSchedule(j, tuple(cs)) for j, cs in sorted(per_qpu.items())}


def schedule_circuit(
    c: circuits.Circuit, times: timing.GateTimeTable = timing.GateTimeTable()
) -> dict[int, QpuSchedule]:
  """`split_per_qpu(build_global_schedule(c, times))`."""
  num_qpus = c.cluster.num_qpus if c.cluster is not None else 1
  return split_per_qpu(build_global_schedule(c, times), num_qpus=num_qpus)
