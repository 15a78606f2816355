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

"""Nodes of the control plane.

* Controller: hands out the instruction sets and collects the results.
* Classical communication node (CCN): relays classical bits between QPUs.
* Quantum gates node (QGN): runs the commands of its QPU at their time.
* Time reference node (TRN): broadcasts the system time.

All nodes react to `Abort` by halting. A halted node executes nothing more.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
import enum
from typing import Any, ClassVar, Optional

from dqvqe.circuit import gates as gates_lib
from dqvqe.circuit import text_format
from dqvqe.netctl import bus as bus_lib
from dqvqe.netctl import medium as medium_lib
from dqvqe.netctl import messages
from dqvqe.schedule import commands as commands_lib
from dqvqe.schedule import scheduler
from dqvqe.utils import errors
import simpy

CommandKind = commands_lib.CommandKind
Match = Callable[[messages.Message], bool]


class NodeRole(enum.StrEnum):
  CONTROLLER = 'controller'
  CLASSICAL_COMM = 'ccn'
  QUANTUM_GATES = 'qgn'
  TIME_REF = 'trn'
  USER = 'user'


def node_name(role: NodeRole, qpu: Optional[int] = None) -> str:
  return str(role) if qpu is None else f'{role}{qpu}'


def sent_by(src: str, *types: type[messages.Payload]) -> Match:
  return lambda m: m.src == src and isinstance(m.payload, types)


_EPS = 1e-9

_SIDE_CHANNEL = (messages.Abort, messages.ClockBeacon)


class Node:
  """Actor on the bus.

  Attributes:
    network: The network the node is attached to.
    qpu: Owning QPU (`None` for shared nodes).
    name: Unique node name (e.g. `qgn0`).
    timeout: How long the node waits for an expected message.
  """

  role: ClassVar[NodeRole]

  def __init__(
      self,
      network: bus_lib.Network,
      qpu: Optional[int] = None,
      *,
      timeout: float = float('inf'),
      name: Optional[str] = None,
  ):
    self.network = network
    self.env = network.env
    self.qpu = qpu
    self.name = name or node_name(self.role, qpu)
    self.timeout = timeout
    self.mailbox = network.add_node(self.name)
    self.clock = network.clock(self.name)
    self.halted = self.env.event()

  def __repr__(self) -> str:
    return f'{type(self).__name__}({self.name})'

  def start(self) -> simpy.Process:
    """Starts the node and returns its main process."""
    self.env.process(self._watch_abort())
    if self.network.clock_model.beacon_period is not None:
      self.env.process(self._follow_beacons())
    return self.env.process(self.run())

  def run(self):
    raise NotImplementedError

  @property
  def is_halted(self) -> bool:
    return self.halted.triggered

  def log(self, event: str, **detail: Any) -> None:
    self.network.log(self.name, event, **detail)

  def send(self, dst: str, payload: messages.Payload, **kwargs) -> int:
    return self.network.send(self.name, dst, payload, **kwargs)

  def receive(self, match: Match, timeout: Optional[float] = None):
    """Waits for a message accepted by `match`.

    Args:
      match: Filter on the messages.
      timeout: Longest wait (default: `self.timeout`).

    Returns:
      The message, or `None` on timeout or halt.
    """
    timeout = self.timeout if timeout is None else timeout
    get = self.mailbox.get(
        lambda m: not isinstance(m.payload, _SIDE_CHANNEL) and match(m)
    )
    events = [get, self.halted]
    if timeout != float('inf'):
      events.append(self.env.timeout(max(timeout, 0.0)))
    yield self.env.any_of(events)
    if get.triggered:
      return get.value
    get.cancel()
    return None

  def sleep_until_local(self, local_time: float):
    """Waits until the node clock reads `local_time` (or the node halts).

    The wake-up time follows the clock corrections made while waiting.
    """
    period = self.network.clock_model.beacon_period
    while not self.is_halted:
      now = self.network.now
      wait = self.clock.global_at(local_time, now) - now
      if wait <= _EPS:
        return
      if period is not None:
        wait = min(wait, period)
      yield self.env.any_of([self.env.timeout(wait), self.halted])

  def halt(self, reason: str) -> None:
    if not self.is_halted:
      self.log('halt', reason=reason)
      self.halted.succeed(reason)

  def fail(self) -> None:
    """Marks the node as crashed before the run: it never starts."""
    self.log('failed')

  def on_abort(self, reason: str) -> None:
    self.halt(reason)

  def _watch_abort(self):
    msg = yield self.mailbox.get(
        lambda m: isinstance(m.payload, messages.Abort)
    )
    self.on_abort(msg.payload.reason)

  def _follow_beacons(self):
    model = self.network.clock_model
    while True:
      msg = yield self.mailbox.get(
          lambda m: isinstance(m.payload, messages.ClockBeacon)
      )
      reading = msg.payload.time + model.compensated_latency
      self.clock.correct(self.network.now, reading)


class TimeRefNode(Node):
  """Broadcasts its clock reading every beacon period."""

  role = NodeRole.TIME_REF

  def __init__(self, network, qpu=None, *, targets: Iterable[str] = ()):
    super().__init__(network, qpu)
    self.targets = tuple(targets)

  def start(self) -> simpy.Process:
    # The reference clock is never corrected.
    self.env.process(self._watch_abort())
    return self.env.process(self.run())

  def run(self):
    model = self.network.clock_model
    if model.beacon_period is None:
      return
    while not self.is_halted:
      reading = self.clock.local(self.network.now)
      for t in self.targets:
        self.send(
            t, messages.ClockBeacon(reading), latency=model.beacon_latency
        )
      yield self.env.any_of(
          [self.env.timeout(model.beacon_period), self.halted]
      )


class ClassicalCommNode(Node):
  """Relays `ClassicalBits` between its QGN and the peer CCNs."""

  role = NodeRole.CLASSICAL_COMM

  def __init__(self, network, qpu: int, *, controller: str):
    super().__init__(network, qpu)
    self.controller = controller
    self.qgn = node_name(NodeRole.QUANTUM_GATES, qpu)

  def run(self):
    msg = yield from self.receive(
        sent_by(self.controller, messages.InstructionSet), float('inf')
    )
    if msg is None:
      return
    self.send(self.controller, messages.Ack())
    while True:
      msg = yield from self.receive(
          lambda m: isinstance(m.payload, messages.ClassicalBits),
          float('inf'),
      )
      if msg is None:
        return
      bits = msg.payload
      if msg.src == self.qgn:
        dst = node_name(NodeRole.CLASSICAL_COMM, bits.dst_qpu)
      else:
        dst = self.qgn
      self.log('relay', register=bits.register, to=dst)
      self.send(dst, bits)


def classical_subset(schedule: scheduler.QpuSchedule) -> scheduler.QpuSchedule:
  """Commands a CCN takes part in."""
  kinds = (CommandKind.SEND_CLA, CommandKind.REC_CLA)
  return scheduler.QpuSchedule(
      schedule.qpu, tuple(c for c in schedule if c.kind in kinds)
  )


class QuantumGatesNode(Node):
  """Executes the commands of one QPU on the shared quantum medium.

  Two-qubit commands that span QPUs are applied once, by the lowest QPU. The
  sender of a distributed pair creates it and tells the receiver. Commands
  sharing a start time are independent: the ones acting on the state run
  first, each when the medium gives it its turn.

  Attributes:
    medium: The quantum state all QGNs act on.
    registers: Classical bits known to this QPU.
  """

  role = NodeRole.QUANTUM_GATES

  def __init__(
      self,
      network,
      qpu: int,
      *,
      controller: str,
      medium: medium_lib.QuantumMedium,
      timeout: float = float('inf'),
  ):
    super().__init__(network, qpu, timeout=timeout)
    self.controller = controller
    self.medium = medium
    self.state = medium.state
    self.registers: dict[str, int] = {}
    self.ccn = node_name(NodeRole.CLASSICAL_COMM, qpu)

  def halt(self, reason: str) -> None:
    super().halt(reason)
    self.medium.withdraw(self.name)

  def fail(self) -> None:
    super().fail()
    self.medium.withdraw(self.name)

  def _order(self, commands: Sequence[commands_lib.TimedCommand]):
    def key(i):
      slot = medium_lib.slot_of(commands[i], self.qpu)
      if slot is None:
        return (commands[i].time, 1, i)
      return (commands[i].time, 0, slot[1])

    return sorted(range(len(commands)), key=key)

  def run(self):
    msg = yield from self.receive(
        sent_by(self.controller, messages.InstructionSet), float('inf')
    )
    if msg is None:
      return
    commands = msg.payload.schedule.commands
    try:
      gates = [text_format.parse_gate(c.gate) for c in commands]
    except errors.ParseError as e:
      self._fail(f'Invalid instruction set: {e}')
      return
    for c in commands:
      slot = medium_lib.slot_of(c, self.qpu)
      if slot is not None and self.medium.owner(slot) != self.name:
        self._fail(f'Invalid instruction set: {c} is not in the plan')
        return
    self.send(self.controller, messages.Ack())

    msg = yield from self.receive(
        sent_by(self.controller, messages.StartTime), float('inf')
    )
    if msg is None:
      return
    start = msg.payload.time
    self.log('start', time=start)
    for i in self._order(commands):
      command, gate = commands[i], gates[i]
      yield from self.sleep_until_local(start + command.time)
      slot = medium_lib.slot_of(command, self.qpu)
      if slot is not None and not self.is_halted:
        yield self.env.any_of([self.medium.turn(slot), self.halted])
      if self.is_halted:
        return
      self.log('exec', command=str(command), gate=command.gate)
      try:
        error = yield from self._execute(command, gate)
      except errors.ValidationError as e:
        error = f'{command}: {e}'
      if slot is not None:
        self.medium.commit(slot)
      if error:
        self._fail(error)
        return
    self.log('done', registers=dict(sorted(self.registers.items())))
    self.send(
        self.controller, messages.MeasurementResults(self.qpu, self.registers)
    )

  def _fail(self, reason: str) -> None:
    self.log('nack', reason=reason)
    self.send(self.controller, messages.Nack(reason))
    self.halt(reason)

  def _execute(
      self, command: commands_lib.TimedCommand, gate: gates_lib.Gate
  ):
    """Runs one command. Returns an error message on failure."""
    peer = command.peer
    match command.kind:
      case CommandKind.SINGLE:
        return self._apply_local(gate)
      case CommandKind.TWO_QUBIT:
        if self.qpu == min(command.qpus):
          self.state.apply(gate)
      case CommandKind.GEN_ENT:
        self.state.apply(gate)
      case CommandKind.SEND_ENT:
        self.state.apply(gate)
        self.send(
            node_name(NodeRole.QUANTUM_GATES, peer),
            messages.EntReady(command.gate),
        )
      case CommandKind.REC_ENT:
        src = node_name(NodeRole.QUANTUM_GATES, peer)
        msg = yield from self.receive(
            lambda m: m.src == src
            and isinstance(m.payload, messages.EntReady)
            and m.payload.gate == command.gate
        )
        if msg is None:
          return self._missed(command)
      case CommandKind.CLASSICAL:
        pass
      case CommandKind.SEND_CLA:
        register = command.args[1]
        if register not in self.registers:
          return f'{command}: register {register} was never measured here'
        self.send(
            self.ccn,
            messages.ClassicalBits(
                register, self.registers[register], self.qpu, peer
            ),
        )
      case CommandKind.REC_CLA:
        register = command.args[1]
        msg = yield from self.receive(
            lambda m: m.src == self.ccn
            and isinstance(m.payload, messages.ClassicalBits)
            and m.payload.register == register
            and m.payload.src_qpu == peer
        )
        if msg is None:
          return self._missed(command)
        self.registers[register] = msg.payload.value
    return None

  def _missed(self, command: commands_lib.TimedCommand) -> str:
    if self.is_halted:
      return ''
    return f'{command} timed out after {self.timeout:g}'

  def _apply_local(self, gate: gates_lib.Gate) -> Optional[str]:
    match gate:
      case gates_lib.Measure():
        self.registers[gate.dest] = self.state.measure(gate.target, gate.dest)
      case gates_lib.ClassicallyControlled():
        if gate.condition not in self.registers:
          return f'register {gate.condition} is not known on QPU {self.qpu}'
        if self.registers[gate.condition]:
          self.state.apply(gate.inner)
      case _:
        self.state.apply(gate)
    return None


class Orchestrator(Node):
  """Node that hands out work and waits for every answer."""

  def collect(
      self,
      nodes: Sequence[str],
      types: tuple[type[messages.Payload], ...],
      timeout: Optional[float] = None,
  ):
    """Waits for one `types` message from each of `nodes`.

    A `Nack` from any of them ends the wait.

    Returns:
      `(node -> payload, error)`, with `error` set on Nack, timeout or halt.
    """
    timeout = self.timeout if timeout is None else timeout
    deadline = self.network.now + timeout
    pending = set(nodes)
    out = {}
    while pending:
      msg = yield from self.receive(
          lambda m: m.src in pending
          and isinstance(m.payload, (*types, messages.Nack)),
          deadline - self.network.now,
      )
      if msg is None:
        if self.is_halted:
          return out, 'halted'
        return out, f'timed out waiting for {", ".join(sorted(pending))}'
      if isinstance(msg.payload, messages.Nack):
        return out, f'{msg.src}: {msg.payload.reason}'
      out[msg.src] = msg.payload
      pending.discard(msg.src)
    return out, None

  def broadcast_abort(self, reason: str, nodes: Iterable[str]) -> None:
    self.log('abort', reason=reason)
    for n in nodes:
      self.send(n, messages.Abort(reason))
    self.halt(reason)
