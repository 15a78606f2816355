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

"""Decentralized control: every QPU belongs to a vendor with its own stack.

The user negotiates a contract with each vendor before anything runs:

1. The user asks every vendor for its gate times.
2. The user sends each vendor its schedule and the user system time.
3. Each vendor checks capacity, gate times and availability, shakes hands
   with its classical peers, validates the entanglement with its quantum
   peers and checks the clock skew. It then answers with the latest start
   time it accepts (in user time), or a Nack.
4. On any Nack or missing answer the user broadcasts Abort. Otherwise it
   picks the earliest of the latest start times, collects the vendors'
   acknowledgements and broadcasts Start.
5. Each vendor runs its QPU and returns the results to the user. A vendor
   still without Start half a start margin (or two hops) before the start
   time sends a Nack to the user and Abort to the other vendors.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import math
from typing import Any, Optional

from dqvqe.netctl import execution
from dqvqe.netctl import messages
from dqvqe.netctl import nodes as nodes_lib
from dqvqe.netctl import scenario as scenario_lib
from dqvqe.netctl import sync
from dqvqe.netctl import validation
from dqvqe.random import streams
from dqvqe.schedule import commands as commands_lib
from dqvqe.schedule import scheduler
from dqvqe.schedule import timing
from dqvqe.utils.status_utils import status

CommandKind = commands_lib.CommandKind
GateClass = timing.GateClass
NodeRole = nodes_lib.NodeRole
Status = execution.Status

_EPS = 1e-9

_GATE_CLASS = {
    CommandKind.TWO_QUBIT: GateClass.CNOT,
    CommandKind.GEN_ENT: GateClass.ENTGEN,
    CommandKind.SEND_ENT: GateClass.ENTGEN,
    CommandKind.REC_ENT: GateClass.ENTGEN,
    CommandKind.CLASSICAL: GateClass.CLASSICAL,
    CommandKind.SEND_CLA: GateClass.CLASSICAL,
    CommandKind.REC_CLA: GateClass.CLASSICAL,
}


def command_class(command: commands_lib.TimedCommand) -> GateClass:
  """Duration class of a command."""
  if command.kind == CommandKind.SINGLE:
    if command.args and command.args[0] == 'measure':
      return GateClass.MEASURE
    return GateClass.SINGLE
  return _GATE_CLASS[command.kind]


def _peers(schedule: scheduler.QpuSchedule, *kinds: CommandKind) -> list[int]:
  return sorted({c.peer for c in schedule if c.kind in kinds})


def _controller(qpu: int) -> str:
  return nodes_lib.node_name(NodeRole.CONTROLLER, qpu)


class _PairSource:
  """Shared Bell pairs of each vendor pair, measured once."""

  def __init__(self, seed: int, config: scenario_lib.ValidationConfig):
    self.seed = seed
    self.config = config
    self._pairs = {}

  def bits(self, qpu: int, peer: int) -> tuple[int, ...]:
    key = (min(qpu, peer), max(qpu, peer))
    if key not in self._pairs:
      self._pairs[key] = validation.generate_pairs(
          self.config.pairs,
          streams.NETWORK.np_rng(self.seed, key=f'pairs/{key[0]}-{key[1]}'),
          flip_probability=self.config.flip_probability,
      )
    return self._pairs[key][int(qpu > peer)]


class VendorController(nodes_lib.Orchestrator):
  """Controller of one vendor: negotiates with the user, then runs its QPU."""

  role = NodeRole.CONTROLLER

  def __init__(
      self,
      network,
      qpu: int,
      *,
      offer: scenario_lib.VendorConfig,
      scenario: scenario_lib.Scenario,
      pairs: _PairSource,
      qgn_names: Sequence[str],
      vendors: Sequence[str],
  ):
    super().__init__(network, qpu, timeout=scenario.timeout)
    self.offer = offer
    self.scenario = scenario
    self.pairs = pairs
    self.qgn_names = tuple(qgn_names)
    self.peers = tuple(v for v in vendors if v != self.name)
    self.user = nodes_lib.node_name(NodeRole.USER)
    self.qgn = nodes_lib.node_name(NodeRole.QUANTUM_GATES, qpu)
    self.ccn = nodes_lib.node_name(NodeRole.CLASSICAL_COMM, qpu)
    self.trn = nodes_lib.node_name(NodeRole.TIME_REF, qpu)

  def on_abort(self, reason: str) -> None:
    for n in (self.qgn, self.ccn, self.trn):
      self.send(n, messages.Abort(reason))
    self.halt(reason)

  def _from_user(self, *types, timeout: float = float('inf')):
    msg = yield from self.receive(
        nodes_lib.sent_by(self.user, *types), timeout
    )
    return msg

  def run(self):
    msg = yield from self._from_user(messages.ContractMsg)
    if msg is None:
      return
    durations = self.offer.durations
    self.send(
        self.user,
        messages.ContractMsg(
            'gate_times',
            {
                'durations': {
                    str(c): durations.duration(c, (self.qpu,))
                    for c in GateClass
                }
            },
        ),
    )

    msg = yield from self._from_user(messages.ContractMsg)
    if msg is None:
      return
    schedule: scheduler.QpuSchedule = msg.payload.body['schedule']
    user_time = msg.payload.body['user_time']
    user_offset = self.clock.local(self.network.now) - user_time
    error = self.check(schedule, msg.payload.body['earliest_start'])
    if not error:
      error = yield from self._peer_checks(schedule)
    if not error:
      error = yield from self._distribute(schedule)
    if error:
      self._reject(error)
      return

    latest = self.offer.available_until - schedule.makespan
    self.send(
        self.user, messages.ContractMsg('accept', {'latest_start': latest})
    )
    msg = yield from self._from_user(messages.StartTime)
    if msg is None:
      return
    start = msg.payload.time + user_offset
    self.send(self.user, messages.ContractMsg('start_ack'))
    msg = yield from self._from_user(
        messages.Start, timeout=self._start_wait(start)
    )
    if msg is None:
      if not self.is_halted:
        self._call_off(f'no start signal before {start:g}')
      return

    self.log('start', time=start)
    self.send(self.qgn, messages.StartTime(start))
    wait = start - self.clock.local(self.network.now) + schedule.makespan
    results, error = yield from self.collect(
        [self.qgn], (messages.MeasurementResults,), wait + self.timeout
    )
    if error:
      self._reject(error)
      return
    self.send(self.user, results[self.qgn])

  def check(
      self, schedule: scheduler.QpuSchedule, earliest_start: float
  ) -> Optional[str]:
    """Local contract checks (capacity, gate times, availability)."""
    if self.qpu in self.scenario.faults.reject_vendors:
      return 'contract rejected by the vendor'
    if schedule.qpu != self.qpu:
      return f'got the schedule of QPU {schedule.qpu}'
    qubits = {q for c in schedule for q in c.qubits}
    if self.offer.capacity is not None and len(qubits) > self.offer.capacity:
      return (
          f'needs {len(qubits)} qubits, the vendor offers'
          f' {self.offer.capacity}'
      )
    for c in schedule:
      required = self.offer.durations.duration(command_class(c), (self.qpu,))
      if c.duration + _EPS < required:
        return (
            f'{c} is scheduled for {c.duration:g}, the vendor needs'
            f' {required:g}'
        )
    if earliest_start + schedule.makespan > self.offer.available_until + _EPS:
      return (
          f'cannot finish by {self.offer.available_until:g} when starting at'
          f' {earliest_start:g}'
      )
    return None

  def _peer_checks(self, schedule: scheduler.QpuSchedule):
    """Handshakes, entanglement validation and clock skew."""
    for peer in _peers(schedule, CommandKind.SEND_CLA, CommandKind.REC_CLA):
      name = _controller(peer)
      self.send(name, messages.ContractMsg('handshake'))
      msg = yield from self.receive(
          lambda m, name=name: m.src == name
          and isinstance(m.payload, messages.ContractMsg)
          and m.payload.stage == 'handshake'
      )
      if msg is None:
        return f'no handshake from {name}'
      self.log('handshake', peer=name)

    config = self.scenario.validation
    flips = self.scenario.faults.flip_validation_bits
    for peer in _peers(schedule, CommandKind.SEND_ENT, CommandKind.REC_ENT):
      name = _controller(peer)
      ok, reason = yield from validation.validation_exchange(
          self,
          name,
          self.pairs.bits(self.qpu, peer),
          config.checks,
          streams.NETWORK.np_rng(
              self.scenario.seed, key=f'validation/{self.name}/{name}'
          ),
          corrupt=int(self.qpu > peer and (peer, self.qpu) in flips),
      )
      if not ok:
        return f'entanglement validation with {name} failed: {reason}'

    skew = sync.clock_sync(
        self.scenario.clock,
        self.scenario.start_margin + schedule.makespan,
        nodes=self.qgn_names,
    )
    self.log('clock_sync', skew=skew)
    if skew > self.scenario.clock.skew_bound:
      return (
          f'clock skew {skew:g} exceeds {self.scenario.clock.skew_bound:g}'
      )
    return None

  def _distribute(self, schedule: scheduler.QpuSchedule):
    self.send(self.qgn, messages.InstructionSet(schedule))
    self.send(
        self.ccn, messages.InstructionSet(nodes_lib.classical_subset(schedule))
    )
    _, error = yield from self.collect([self.qgn, self.ccn], (messages.Ack,))
    return error

  def _start_wait(self, start: float) -> float:
    """How long to wait for the user's Start, leaving the peers time to stop."""
    latency = self.scenario.latency.max
    guard = max(2 * latency, self.scenario.start_margin / 2)
    return max(
        start - guard - self.clock.local(self.network.now),
        2 * latency + _EPS,
    )

  def _call_off(self, reason: str) -> None:
    """Stops this vendor and its peers before anyone starts alone."""
    self.log('nack', reason=reason)
    self.send(self.user, messages.Nack(reason))
    for name in self.peers:
      self.send(name, messages.Abort(reason))
    self.on_abort(reason)

  def _reject(self, reason: str) -> None:
    if self.is_halted:
      return
    self.log('nack', reason=reason)
    self.send(self.user, messages.Nack(reason))


class User(nodes_lib.Orchestrator):
  """Holds the plan and drives the contract creation."""

  role = NodeRole.USER

  def __init__(
      self,
      network,
      schedules: execution.Schedules,
      *,
      timeout: float,
      start_margin: float,
  ):
    super().__init__(network, timeout=timeout)
    self.schedules = schedules
    self.start_margin = start_margin
    self.vendors = [_controller(j) for j in schedules]
    self.status = Status.STALLED
    self.reason = ''
    self.registers: dict[str, int] = {}
    self.start_time = None
    self.gate_times: dict[str, Mapping[str, Any]] = {}

  def _ask(self, stage: str, payload_of=None, types=(messages.ContractMsg,)):
    """Sends a message to every vendor and collects their answers."""
    for j, name in zip(self.schedules, self.vendors):
      payload = payload_of(j) if payload_of else messages.ContractMsg(stage)
      self.send(name, payload)
    answers, error = yield from self.collect(self.vendors, types)
    if error:
      self._abort(error)
      return None
    return answers

  def run(self):
    answers = yield from self._ask('query')
    if answers is None:
      return
    for name, a in answers.items():
      self.gate_times[name] = a.body.get('durations', {})

    now = self.clock.local(self.network.now)
    answers = yield from self._ask(
        'contract',
        lambda j: messages.ContractMsg(
            'contract',
            {
                'schedule': self.schedules[j],
                'user_time': now,
                'earliest_start': now + self.start_margin,
            },
        ),
    )
    if answers is None:
      return
    latest = min(a.body['latest_start'] for a in answers.values())
    earliest = self.clock.local(self.network.now) + self.start_margin
    if latest < earliest:
      self._abort(f'no common start time (latest {latest:g})')
      return
    start = latest if math.isfinite(latest) else earliest

    answers = yield from self._ask(
        'start_time', lambda _: messages.StartTime(start)
    )
    if answers is None:
      return
    self.start_time = start
    self.log('start', time=start)
    for name in self.vendors:
      self.send(name, messages.Start())

    wait = (
        start
        - self.clock.local(self.network.now)
        + execution.makespan(self.schedules)
    )
    results, error = yield from self.collect(
        self.vendors, (messages.MeasurementResults,), wait + self.timeout
    )
    if error:
      self._abort(error)
      return
    for r in results.values():
      self.registers.update(r.registers)
    self.status = Status.COMPLETED
    self.log('complete', registers=dict(sorted(self.registers.items())))

  def _abort(self, reason: str) -> None:
    self.status = Status.ABORTED
    self.reason = reason
    self.broadcast_abort(reason, self.vendors)


def run_decentralized(
    schedules: execution.Schedules,
    scenario: scenario_lib.Scenario = scenario_lib.Scenario(
        topology=scenario_lib.Topology.DECENTRALIZED
    ),
) -> execution.ExecutionResult:
  """Negotiates a contract with every vendor, then executes the plan.

  Args:
    schedules: The user plan: QPU (one vendor each) -> its schedule.
    scenario: Vendor offers, latencies, clocks and faults.

  Returns:
    The run outcome and its trace.
  """
  schedules = execution.check_schedules(schedules)
  network = execution.make_network(scenario)
  medium = execution.quantum_medium(network, schedules, scenario.seed)
  state = medium.state
  pairs = _PairSource(scenario.seed, scenario.validation)

  user = User(
      network,
      schedules,
      timeout=scenario.timeout,
      start_margin=scenario.start_margin,
  )
  qgn_names = [
      nodes_lib.node_name(NodeRole.QUANTUM_GATES, j) for j in schedules
  ]
  vendors = [_controller(j) for j in schedules]
  controllers, workers = [], []
  for j in schedules:
    controller = _controller(j)
    controllers.append(
        VendorController(
            network,
            j,
            offer=scenario.vendor(j),
            scenario=scenario,
            pairs=pairs,
            qgn_names=qgn_names,
            vendors=vendors,
        )
    )
    qgn = nodes_lib.QuantumGatesNode(
        network,
        j,
        controller=controller,
        medium=medium,
        timeout=scenario.timeout,
    )
    ccn = nodes_lib.ClassicalCommNode(network, j, controller=controller)
    trn = nodes_lib.TimeRefNode(
        network, j, targets=[controller, qgn.name, ccn.name]
    )
    workers += [qgn, ccn, trn]

  failed = set(scenario.faults.fail_nodes)
  for j in scenario.faults.unreachable_vendors:
    failed.update(
        nodes_lib.node_name(role, j)
        for role in (
            NodeRole.CONTROLLER,
            NodeRole.QUANTUM_GATES,
            NodeRole.CLASSICAL_COMM,
            NodeRole.TIME_REF,
        )
    )
  processes = execution.start_nodes([user, *controllers, *workers], failed)
  mains = {user.name, *(c.name for c in controllers), *qgn_names}
  network.run(
      [p for name, p in processes.items() if name in mains],
      scenario.horizon(execution.makespan(schedules)),
      drain=scenario.drain,
  )
  status.log(
      f'Decentralized run {user.status} after {len(network.trace)} events'
      f' ({len(schedules)} vendors).'
  )
  return execution.ExecutionResult(
      status=user.status,
      reason=user.reason,
      registers=user.registers,
      trace=tuple(network.trace),
      state=state,
      measurement_seed=state.measurement_seed,
      start_time=user.start_time,
  )
