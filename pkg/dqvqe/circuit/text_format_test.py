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

from dqvqe.circuit import gates
from dqvqe.circuit import text_format
from dqvqe.utils import errors
from etils import epath
import pytest

Q = gates.QubitId


def test_parse_gates():
  c = text_format.parse_circuit("""
      # A comment
      qubits 2
      h 0:0  # trailing comment
      cx 0:0 0:1
      rz 0:1 0.3
      measure 0:1 -> c0
      if c0 x 0:0
  """)
  assert c.num_qubits == 2
  assert [str(g) for g in c.gates()] == [
      'h 0:0',
      'cx 0:0 0:1',
      'rz 0:1 0.3',
      'measure 0:1 -> c0',
      'if c0 x 0:0',
  ]


@pytest.mark.parametrize(
    'line, expected',
    [
        ('x 0:3', gates.x(Q(0, 3))),
        ('cx 0:0 1:0', gates.cnot(Q(0, 0), Q(1, 0))),
        (
            'ccx 0:0 0:1 2:0',
            gates.controlled(gates.x(Q(2, 0)), Q(0, 0), Q(0, 1)),
        ),
        (
            'cphase 0:0 0:1 -0.5',
            gates.Controlled(gates.phase(Q(0, 1), -0.5), Q(0, 0)),
        ),
        ('ry 0:0 $2', gates.SingleQubit('ry', Q(0, 0), (gates.Param(2),))),
        ('ry 0:0 -$2', gates.SingleQubit('ry', Q(0, 0), (-gates.Param(2),))),
        (
            'ry 0:0 0.5*$1',
            gates.SingleQubit('ry', Q(0, 0), (gates.Param(1, 0.5),)),
        ),
        ('r 0:0 0.1 0.2 0.3', gates.SingleQubit('r', Q(0, 0), (0.1, 0.2, 0.3))),
        ('entgen 0:4 1:4', gates.EntGen(Q(0, 4), Q(1, 4))),
        ('ccomm 0 -> 1 c3', gates.ClassicalComm(0, 1, 'c3')),
        ('if c3 z 1:2', gates.ClassicallyControlled(gates.z(Q(1, 2)), 'c3')),
    ],
)
def test_parse_gate(line, expected):
  gate = text_format.parse_gate(line)
  assert gate == expected
  assert text_format.parse_gate(str(gate)) == gate


@pytest.mark.parametrize(
    'text, match',
    [
        ('h 0:0', 'header'),
        ('qubits 1\nfoo 0:0', 'Could not parse'),
        ('qubits 2\ncx 0:0', 'expects 2 qubit'),
        ('qubits 1\nrz 0:0', 'expects 1 parameter'),
        ('qubits 2\ncx 0:0 0:0', 'collides'),
        ('', 'header'),
    ],
)
def test_parse_errors(text, match):
  with pytest.raises(errors.ParseError, match=match):
    text_format.parse_circuit(text)


def test_parse_error_line_number():
  with pytest.raises(errors.ParseError, match='line 3'):
    text_format.parse_circuit('qubits 1\nh 0:0\nbad\n')


def test_explicit_layers_round_trip():
  text = """
      qubits 2
      cluster 3,3
      entgen 0:2 1:2
      ---
      cx 0:0 0:2
      ---
      h 1:0
  """
  c = text_format.parse_circuit(text)
  # ASAP would have moved `h 1:0` to the first layer.
  assert len(c) == 3
  assert c.cluster.qpu_sizes == (3, 3)
  assert text_format.parse_circuit(text_format.to_text(c)) == c


def test_fixture():
  path = epath.resource_path('dqvqe') / 'testdata' / 'shared_control3.txt'
  c = text_format.read_circuit(path)
  assert c.num_qubits == 3
  assert sum(1 for g in c.gates() if isinstance(g, gates.Controlled)) == 2
