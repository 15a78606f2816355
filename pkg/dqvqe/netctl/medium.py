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

"""Quantum state shared by the QGNs.

Operations reach the state in schedule order, whatever the network delays:
each one holds a slot keyed by `(scheduled time, lowest local qubit)` and is
applied only once every earlier slot was committed or withdrawn. Inside a
layer the key follows the gate order of the layered circuit, so measurements
of entangled qubits draw their outcomes as a direct run of the circuit does.
"""

from __future__ import annotations

import bisect
from collections.abc import Callable, Iterable, Mapping
from typing import Optional

from dqvqe.circuit import gates as gates_lib
from dqvqe.schedule import commands as commands_lib
from dqvqe.schedule import scheduler
from dqvqe.simulate import statevector
from dqvqe.utils import errors
import simpy

CommandKind = commands_lib.CommandKind
Slot = tuple[float, gates_lib.QubitId]


def slot_of(command: commands_lib.TimedCommand, qpu: int) -> Optional[Slot]:
  """Slot of a command that changes the quantum state (`None` otherwise)."""
  match command.kind:
    case CommandKind.SINGLE | CommandKind.GEN_ENT | CommandKind.SEND_ENT:
      pass
    case CommandKind.TWO_QUBIT if qpu == min(command.qpus):
      pass
    case _:
      return None
  if not command.qubits:
    return None
  return (command.time, min(command.qubits))


class QuantumMedium:
  """The physics every QGN acts on.

  Attributes:
    env: The discrete-event environment.
    state: The quantum state.
  """

  def __init__(self, env: simpy.Environment, state: statevector.SimState):
    self.env = env
    self.state = state
    self._pending: list[Slot] = []
    self._owner: dict[Slot, str] = {}
    self._turns: dict[Slot, simpy.Event] = {}

  @classmethod
  def for_schedules(
      cls,
      env: simpy.Environment,
      state: statevector.SimState,
      schedules: Mapping[int, scheduler.QpuSchedule],
      owner_of: Callable[[int], str],
  ) -> QuantumMedium:
    """Reserves the slots of every schedule, owned by `owner_of(qpu)`."""
    medium = cls(env, state)
    for j, schedule in schedules.items():
      medium.reserve(
          owner_of(j), filter(None, (slot_of(c, j) for c in schedule))
      )
    return medium

  def reserve(self, owner: str, slots: Iterable[Slot]) -> None:
    for slot in slots:
      if slot in self._owner:
        raise errors.ValidationError(
            f'{owner} and {self._owner[slot]} both act on {slot[1]} at'
            f' {slot[0]:g}'
        )
      self._owner[slot] = owner
      bisect.insort(self._pending, slot)

  @property
  def pending(self) -> int:
    return len(self._pending)

  def owner(self, slot: Slot) -> Optional[str]:
    return self._owner.get(slot)

  def turn(self, slot: Slot) -> simpy.Event:
    """Event triggered once every earlier slot is done."""
    if slot not in self._owner:
      raise errors.ValidationError(f'No reserved slot {slot}')
    event = self._turns.setdefault(slot, self.env.event())
    self._wake()
    return event

  def commit(self, slot: Slot) -> None:
    self._remove(slot)
    self._wake()

  def withdraw(self, owner: str) -> None:
    """Drops the slots `owner` will never use (it halted or failed)."""
    for slot in [s for s, o in self._owner.items() if o == owner]:
      self._remove(slot)
    self._wake()

  def _remove(self, slot: Slot) -> None:
    del self._owner[slot]
    self._pending.pop(bisect.bisect_left(self._pending, slot))
    self._turns.pop(slot, None)

  def _wake(self) -> None:
    if not self._pending:
      return
    event = self._turns.get(self._pending[0])
    if event is not None and not event.triggered:
      event.succeed()
