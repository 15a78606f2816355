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

"""Tests."""

from dqvqe import circuit as circuit_lib
from dqvqe import netctl
from dqvqe import schedule
from dqvqe import simulate
import numpy as np
import pytest

DECENTRALIZED = netctl.Topology.DECENTRALIZED

# Two vendors sharing one pair and one classical bit.
_PLAN = (
    'qubits 0\ncluster 3,3\nentgen 0:1 1:1\n---\nh 0:0\n---\n'
    'measure 0:0 -> c0\n---\nccomm 0 -> 1 c0\n---\nif c0 x 1:0\n'
)


def _run(**kwargs):
  c = circuit_lib.parse_circuit(_PLAN)
  scenario = netctl.Scenario(topology=DECENTRALIZED, **kwargs)
  return c, netctl.run_decentralized(schedule.schedule_circuit(c), scenario)


def test_two_vendors_complete():
  c, result = _run(seed=2)
  assert result.completed, result.reason
  direct = simulate.simulate(c, measurement_seed=result.measurement_seed)
  assert dict(result.registers) == dict(direct.registers)
  np.testing.assert_allclose(result.state.vector(), direct.vector(), atol=1e-9)

  assert {e.node for e in result.events('handshake')} == {
      'controller0',
      'controller1',
  }
  checks = result.events('validation')
  assert len(checks) == 2
  assert all(e.detail['ack'] for e in checks)
  assert len(result.events('clock_sync')) == 2

  (start,) = [e for e in result.events('start') if e.node == 'user']
  assert start.detail['time'] == result.start_time == 10.0
  assert min(e.time for e in result.events('exec')) == 10.0


def test_latest_start_follows_availability():
  _, result = _run(vendors={0: netctl.VendorConfig(available_until=100.0)})
  assert result.completed, result.reason
  # QPU 0 is busy for 13.
  assert result.start_time == 87.0


def test_unused_slow_gate_is_accepted():
  plan = schedule.schedule_circuit(circuit_lib.parse_circuit(_PLAN))
  slow = schedule.parse_time_table('unit: weight\ncnot=7\n')
  result = netctl.run_decentralized(
      plan,
      netctl.Scenario(
          topology=DECENTRALIZED,
          vendors={1: netctl.VendorConfig(durations=slow)},
      ),
  )
  # No CNOT in the plan, so the slower CNOT is fine.
  assert result.completed, result.reason


@pytest.mark.parametrize(
    'kwargs, match',
    [
        (dict(vendors={1: netctl.VendorConfig(capacity=1)}), 'qubits'),
        (
            dict(vendors={0: netctl.VendorConfig(available_until=12.0)}),
            'cannot finish',
        ),
        (
            dict(
                vendors={
                    1: netctl.VendorConfig(
                        durations=schedule.parse_time_table(
                            'unit: weight\nentgen=20\n'
                        )
                    )
                }
            ),
            'vendor needs 20',
        ),
        (dict(faults=netctl.Faults(reject_vendors=[1])), 'rejected'),
        (
            dict(faults=netctl.Faults(flip_validation_bits=[(0, 1)])),
            'entanglement validation',
        ),
        (
            dict(
                clock=netctl.ClockModel(offsets={'qgn1': 1e-3}, skew_bound=1e-4)
            ),
            'clock skew',
        ),
        (dict(faults=netctl.Faults(unreachable_vendors=[1])), 'timed out'),
    ],
)
def test_faults_abort_before_execution(kwargs, match):
  _, result = _run(**kwargs)
  assert result.status == netctl.Status.ABORTED
  assert match in result.reason
  assert result.start_time is None
  assert not result.events('exec')
  assert not result.registers


def test_unreachable_vendor_waits_for_timeout():
  _, result = _run(faults=netctl.Faults(unreachable_vendors=[1]), timeout=7.0)
  (abort,) = result.events('abort')
  assert abort.node == 'user'
  assert abort.time == 7.0
  assert 'controller1' in result.reason


def test_dropped_start_stops_every_vendor():
  _, clean = _run()
  (seq,) = [
      e.detail['seq']
      for e in clean.events('send')
      if e.detail['msg'] == 'Start' and e.detail['to'] == 'controller1'
  ]
  _, result = _run(faults=netctl.Faults(drop_messages=[seq]))
  assert result.status == netctl.Status.ABORTED
  assert result.reason.startswith('controller1: no start signal')
  assert [e.detail['seq'] for e in result.events('drop')] == [seq]
  assert not result.events('exec')
  assert not result.registers
  # Half the start margin before the start time.
  (nack,) = [e for e in result.events('nack') if e.node == 'controller1']
  assert nack.time == pytest.approx(5.0)
  halted = {e.node for e in result.events('halt')}
  assert halted >= {'controller0', 'qgn0', 'controller1', 'qgn1'}


def test_abort_reaches_every_vendor_node():
  _, result = _run(faults=netctl.Faults(reject_vendors=[0]))
  halted = {e.node for e in result.events('halt')}
  assert halted >= {
      'user',
      'controller0',
      'controller1',
      'qgn0',
      'qgn1',
      'ccn0',
      'ccn1',
      'trn0',
      'trn1',
  }


def test_command_class():
  per_qpu = schedule.schedule_circuit(circuit_lib.parse_circuit(_PLAN))
  classes = [str(netctl.command_class(c)) for c in per_qpu[0]]
  assert classes == ['entgen', 'single', 'measure', 'classical']
