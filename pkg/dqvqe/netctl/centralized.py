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

"""Centralized control: one controller and one time reference for all QPUs."""

from __future__ import annotations

from collections.abc import Sequence

from dqvqe.netctl import execution
from dqvqe.netctl import messages
from dqvqe.netctl import nodes as nodes_lib
from dqvqe.netctl import scenario as scenario_lib
from dqvqe.utils.status_utils import status

NodeRole = nodes_lib.NodeRole
Status = execution.Status


class CentralController(nodes_lib.Orchestrator):
  """Distributes the instruction sets, starts the QPUs, gathers results."""

  role = NodeRole.CONTROLLER

  def __init__(
      self,
      network,
      schedules: execution.Schedules,
      *,
      others: Sequence[str],
      timeout: float,
      start_margin: float,
  ):
    super().__init__(network, timeout=timeout)
    self.schedules = schedules
    self.others = tuple(others)
    self.start_margin = start_margin
    self.status = Status.STALLED
    self.reason = ''
    self.registers: dict[str, int] = {}
    self.start_time = None

  def run(self):
    qgns, ccns = [], []
    for j, schedule in self.schedules.items():
      qgn = nodes_lib.node_name(NodeRole.QUANTUM_GATES, j)
      ccn = nodes_lib.node_name(NodeRole.CLASSICAL_COMM, j)
      self.send(qgn, messages.InstructionSet(schedule))
      self.send(
          ccn, messages.InstructionSet(nodes_lib.classical_subset(schedule))
      )
      qgns.append(qgn)
      ccns.append(ccn)
    _, error = yield from self.collect(qgns + ccns, (messages.Ack,))
    if error:
      self._abort(error)
      return

    self.start_time = self.clock.local(self.network.now) + self.start_margin
    self.log('start', time=self.start_time)
    for qgn in qgns:
      self.send(qgn, messages.StartTime(self.start_time))

    wait = self.start_margin + execution.makespan(self.schedules)
    results, error = yield from self.collect(
        qgns, (messages.MeasurementResults,), wait + self.timeout
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
    self.broadcast_abort(reason, self.others)


def run_centralized(
    schedules: execution.Schedules,
    scenario: scenario_lib.Scenario = scenario_lib.Scenario(),
) -> execution.ExecutionResult:
  """Executes validated per-QPU schedules under a central controller.

  Args:
    schedules: QPU -> its schedule.
    scenario: Latencies, clocks and faults.

  Returns:
    The run outcome and its trace.
  """
  schedules = execution.check_schedules(schedules)
  network = execution.make_network(scenario)
  medium = execution.quantum_medium(network, schedules, scenario.seed)
  state = medium.state
  controller_name = nodes_lib.node_name(NodeRole.CONTROLLER)

  qgns = [
      nodes_lib.QuantumGatesNode(
          network,
          j,
          controller=controller_name,
          medium=medium,
          timeout=scenario.timeout,
      )
      for j in schedules
  ]
  ccns = [
      nodes_lib.ClassicalCommNode(network, j, controller=controller_name)
      for j in schedules
  ]
  workers = [n.name for n in qgns + ccns]
  trn = nodes_lib.TimeRefNode(network, targets=[controller_name, *workers])
  controller = CentralController(
      network,
      schedules,
      others=[*workers, trn.name],
      timeout=scenario.timeout,
      start_margin=scenario.start_margin,
  )
  processes = execution.start_nodes(
      [controller, *qgns, *ccns, trn], scenario.faults.fail_nodes
  )
  # CCNs and the TRN serve until halted: the run ends with the QGNs.
  mains = [controller.name, *(n.name for n in qgns)]
  network.run(
      [p for name, p in processes.items() if name in mains],
      scenario.horizon(execution.makespan(schedules)),
      drain=scenario.drain,
  )
  status.log(
      f'Centralized run {controller.status} after {len(network.trace)}'
      f' events ({len(schedules)} QPUs).'
  )
  return execution.ExecutionResult(
      status=controller.status,
      reason=controller.reason,
      registers=controller.registers,
      trace=tuple(network.trace),
      state=state,
      measurement_seed=state.measurement_seed,
      start_time=controller.start_time,
  )
