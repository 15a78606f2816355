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

import math

from dqvqe import circuit as circuit_lib
from dqvqe import placement
from dqvqe import simulate
from dqvqe.utils import errors
import numpy as np
import pytest

QubitId = circuit_lib.QubitId


def _q(text):
  return QubitId.parse(text)


def test_hadamard():
  state = simulate.simulate(circuit_lib.parse_circuit('qubits 1\nh 0:0\n'))
  np.testing.assert_allclose(state.vector(), [1 / math.sqrt(2)] * 2)


def test_big_endian_order():
  state = simulate.simulate(circuit_lib.parse_circuit('qubits 2\nx 0:1\n'))
  np.testing.assert_allclose(state.vector(), [0, 1, 0, 0])
  np.testing.assert_allclose(state.vector([_q('0:1'), _q('0:0')]), [0, 0, 1, 0])


def test_measurement_reproducible():
  c = circuit_lib.parse_circuit('qubits 1\nh 0:0\nmeasure 0:0 -> c0\n')
  run = lambda s: simulate.simulate(c, measurement_seed=s).registers['c0']
  bits = [run(s) for s in range(40)]
  again = [run(s) for s in range(40)]
  assert bits == again
  assert set(bits) == {0, 1}


def test_keyed_measurement_is_order_free():
  a = circuit_lib.parse_circuit(
      'qubits 2\nh 0:0\nh 0:1\n---\nmeasure 0:0 -> c0\n---\nmeasure 0:1 -> c1\n'
  )
  b = circuit_lib.parse_circuit(
      'qubits 2\nh 0:0\nh 0:1\n---\nmeasure 0:1 -> c1\n---\nmeasure 0:0 -> c0\n'
  )
  for seed in range(10):
    ra = simulate.simulate(a, measurement_seed=seed).registers
    rb = simulate.simulate(b, measurement_seed=seed).registers
    assert ra == rb


def test_measurement_collapses():
  c = circuit_lib.parse_circuit(
      'qubits 2\nh 0:0\ncx 0:0 0:1\nmeasure 0:0 -> c0\n'
  )
  state = simulate.simulate(c, measurement_seed=3)
  bit = state.registers['c0']
  expected = np.zeros(4)
  expected[3 * bit] = 1
  np.testing.assert_allclose(state.vector(), expected, atol=1e-12)


def test_classical_control():
  c = circuit_lib.parse_circuit(
      'qubits 2\nx 0:0\nmeasure 0:0 -> c0\nif c0 x 0:1\n'
  )
  np.testing.assert_allclose(simulate.simulate(c).vector(), [0, 0, 0, 1])


def test_unknown_register():
  c = circuit_lib.parse_circuit('qubits 1\nif c5 x 0:0\n')
  with pytest.raises(errors.ValidationError, match='c5'):
    simulate.simulate(c)


def test_entgen():
  cluster = placement.ClusterSpec((1, 1))
  c = circuit_lib.parse_circuit('qubits 0\nentgen 0:0 1:0\n', cluster=cluster)
  np.testing.assert_allclose(
      simulate.simulate(c).vector(), np.array([1, 0, 0, 1]) / math.sqrt(2)
  )

  c = circuit_lib.parse_circuit(
      'qubits 0\nx 0:0\nentgen 0:0 1:0\n', cluster=cluster
  )
  with pytest.raises(errors.ValidationError, match='EntGen'):
    simulate.simulate(c)


def test_forced_impossible_branch():
  c = circuit_lib.parse_circuit('qubits 1\nmeasure 0:0 -> c0\n')
  with pytest.raises(errors.ValidationError, match='probability 0'):
    simulate.simulate(c, forced={'c0': 1})


_CAT_CNOT = """\
qubits 2
cluster 3,3
entgen 0:1 1:1
---
cx 0:0 0:1
---
measure 0:1 -> c0
---
ccomm 0 -> 1 c0
if c0 x 0:1
---
if c0 x 1:1
---
cx 1:1 1:0
---
h 1:1
---
measure 1:1 -> c1
---
if c1 x 1:1
ccomm 1 -> 0 c1
---
if c1 z 0:0
"""


@pytest.mark.parametrize('a, b', [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_cat_protocol_branches(a, b):
  c = circuit_lib.parse_circuit(_CAT_CNOT)
  data = [_q('0:0'), _q('1:0')]
  branches = simulate.enumerate_branches(
      c, initial={data[0]: a, data[1]: b}, keep=data
  )
  assert len(branches) == 4
  expected = np.zeros(4)
  expected[2 * a + (a ^ b)] = 1
  for _, state in branches:
    np.testing.assert_allclose(state, expected, atol=1e-12)


def test_textbook_qpe():
  # Eigenphase 1/4 of U = phase(-pi/2) on |1>, read on two counting qubits.
  c = circuit_lib.parse_circuit(f"""
qubits 3
x 0:2
h 0:0
h 0:1
cphase 0:0 0:2 {-math.pi!r}
cphase 0:1 0:2 {-math.pi / 2!r}
h 0:0
cphase 0:0 0:1 {math.pi / 2!r}
h 0:1
measure 0:0 -> c0
measure 0:1 -> c1
""")
  for seed in range(5):
    registers = simulate.simulate(c, measurement_seed=seed).registers
    assert registers == {'c0': 1, 'c1': 0}


_RANDOM = """\
qubits 3
ry 0:0 0.3
rx 0:1 1.1
h 0:2
cx 0:0 0:1
crz 0:1 0:2 0.7
r 0:0 0.1 0.2 0.3
ccx 0:2 0:1 0:0
phase 0:1 0.4
"""


def test_dagger_inverts():
  c = circuit_lib.parse_circuit(_RANDOM)
  u = simulate.circuit_unitary(c)
  u_dag = simulate.circuit_unitary(circuit_lib.dagger(c))
  np.testing.assert_allclose(u_dag @ u, np.eye(8), atol=1e-12)
  np.testing.assert_allclose(u.conj().T, u_dag, atol=1e-12)


def test_lift_control_blocks():
  c = circuit_lib.parse_circuit(_RANDOM)
  lifted = circuit_lib.lift_control(c, _q('0:3'))
  blocks = simulate.circuit_unitary(lifted).reshape(8, 2, 8, 2)
  np.testing.assert_allclose(blocks[:, 0, :, 0], np.eye(8), atol=1e-12)
  np.testing.assert_allclose(
      blocks[:, 1, :, 1], simulate.circuit_unitary(c), atol=1e-12
  )


def test_unitary_matches_simulation():
  c = circuit_lib.parse_circuit(_RANDOM)
  np.testing.assert_allclose(
      simulate.circuit_unitary(c)[:, 0], simulate.simulate(c).vector()
  )


def test_restricted_rejects_entangled_rest():
  c = circuit_lib.parse_circuit('qubits 2\nh 0:0\ncx 0:0 0:1\n')
  state = simulate.simulate(c)
  with pytest.raises(errors.ValidationError, match='expected basis'):
    state.restricted([_q('0:0')])
