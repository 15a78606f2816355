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

import json
import math

from dqvqe import netctl
from dqvqe.schedule import timing
from dqvqe.utils import errors
import pytest

_SCENARIO = {
    'topology': 'decentralized',
    'seed': 7,
    'latency': {'default': 0.5, 'links': {'ccn0-ccn1': 2.0}},
    'timeout': 20,
    'start_margin': 5,
    'clock': {'offsets': {'qgn1': 0.1}, 'beacon_period': 2.0},
    'vendors': {
        '1': {'capacity': 4, 'available_until': 80, 'durations': {'cnot': 7}}
    },
    'validation': {'pairs': 50, 'checks': 10},
    'faults': {'drop_messages': [3], 'flip_validation_bits': [[1, 0]]},
}


def test_from_json():
  scenario = netctl.Scenario.from_json(_SCENARIO)
  assert scenario.topology == netctl.Topology.DECENTRALIZED
  assert scenario.seed == 7
  assert scenario.latency.between('ccn1', 'ccn0') == 2.0
  assert scenario.latency.between('qgn0', 'qgn1') == 0.5
  assert scenario.clock.offsets == {'qgn1': 0.1}
  assert scenario.vendor(1).capacity == 4
  assert scenario.vendor(1).available_until == 80.0
  assert scenario.vendor(1).durations.duration(timing.GateClass.CNOT) == 7
  assert scenario.vendor(0) == netctl.VendorConfig()
  assert math.isinf(scenario.vendor(0).available_until)
  assert scenario.validation.pairs == 50
  assert scenario.faults.drop_messages == {3}
  assert scenario.faults.flip_validation_bits == {(0, 1)}


def test_defaults():
  scenario = netctl.Scenario.from_json({})
  assert scenario == netctl.Scenario()
  assert scenario.topology == netctl.Topology.CENTRALIZED


@pytest.mark.parametrize(
    'value',
    [
        {'topolgy': 'centralized'},
        {'topology': 'mesh'},
        {'timeout': 0},
        {'latency': {'default': -1}},
        {'latency': {'links': {'ab': 1}}},
        {'validation': {'pairs': 10, 'checks': 10}},
        {'clock': {'beacon_period': -1}},
        {'vendors': {'x': {}}},
        {'faults': {'drop': [1]}},
    ],
)
def test_invalid(value):
  with pytest.raises(errors.ParseError):
    netctl.Scenario.from_json(value)


def test_read_scenario(tmp_path):
  path = tmp_path / 'scenario.json'
  path.write_text(json.dumps(_SCENARIO))
  assert netctl.read_scenario(path).seed == 7

  path.write_text('{"seed": ')
  with pytest.raises(errors.ParseError, match='scenario.json'):
    netctl.read_scenario(path)
  path.write_text('{"timeout": -2}')
  with pytest.raises(errors.ParseError, match='scenario.json'):
    netctl.read_scenario(path)
