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

from dqvqe.circuit import circuits
from dqvqe.circuit import gates
from dqvqe.placement import cluster as cluster_lib
from dqvqe.utils import errors
from hypothesis import given
from hypothesis import strategies as st
import pytest

q = gates.monolithic


def test_layerize_disjoint():
  c = circuits.layerize([gates.h(q(0)), gates.h(q(1))], num_qubits=2)
  assert len(c) == 1
  assert c.layers[0] == (gates.h(q(0)), gates.h(q(1)))


def test_layerize_chain():
  c = circuits.layerize(
      [gates.h(q(0)), gates.cnot(q(0), q(1)), gates.h(q(1))], num_qubits=2
  )
  assert c.layers == (
      (gates.h(q(0)),),
      (gates.cnot(q(0), q(1)),),
      (gates.h(q(1)),),
  )


def test_layerize_empty():
  c = circuits.layerize([], num_qubits=3)
  assert len(c) == 0  # pylint: disable=g-explicit-length-test
  assert not c.num_params


def test_layerize_register_dependency():
  # `ccomm` touches no qubit but must wait for the measurement.
  c = circuits.layerize(
      [
          gates.Measure(q(0), 'c0'),
          gates.ClassicalComm(0, 1, 'c0'),
          gates.ClassicallyControlled(gates.x(q(1)), 'c0'),
      ],
      num_qubits=2,
  )
  assert len(c) == 3


def test_layerize_out_of_range():
  with pytest.raises(errors.ValidationError, match='out of range'):
    circuits.layerize([gates.h(q(3))], num_qubits=2)

  with pytest.raises(errors.ValidationError, match='out of range'):
    circuits.layerize([gates.h(gates.QubitId(1, 0))], num_qubits=2)


def test_cluster_range():
  cluster = cluster_lib.ClusterSpec((2, 3))
  c = circuits.layerize(
      [gates.cnot(gates.QubitId(0, 1), gates.QubitId(1, 2))],
      num_qubits=4,
      cluster=cluster,
  )
  assert c.qubits == (gates.QubitId(0, 1), gates.QubitId(1, 2))
  with pytest.raises(errors.ValidationError):
    circuits.layerize(
        [gates.h(gates.QubitId(0, 2))], num_qubits=4, cluster=cluster
    )


def test_layer_conflict():
  with pytest.raises(errors.ValidationError, match='more than one gate'):
    circuits.Circuit(
        ((gates.h(q(0)), gates.cnot(q(0), q(1))),), num_qubits=2
    )


def test_layer_sorted():
  c = circuits.Circuit(((gates.x(q(2)), gates.h(q(0))),), num_qubits=3)
  assert c.layers[0] == (gates.h(q(0)), gates.x(q(2)))


def test_dagger():
  c = circuits.Circuit(((gates.h(q(0)),),), num_qubits=1)
  assert circuits.dagger(c) == c

  rz = gates.SingleQubit('rz', q(0), (0.3,))
  c = circuits.Circuit(((rz,), (gates.x(q(0)),)), num_qubits=1)
  assert circuits.dagger(c).layers == (
      (gates.x(q(0)),),
      (gates.SingleQubit('rz', q(0), (-0.3,)),),
  )


def test_dagger_rotation_and_params():
  r = gates.SingleQubit('r', q(0), (0.1, 0.2, gates.Param(0)))
  c = circuits.dagger(circuits.Circuit(((r,),), num_qubits=1))
  assert c.layers[0][0].params == (-gates.Param(0), -0.2, -0.1)


def test_dagger_non_unitary():
  c = circuits.Circuit(((gates.Measure(q(0), 'c0'),),), num_qubits=1)
  with pytest.raises(errors.ValidationError, match='non-unitary'):
    circuits.dagger(c)


def test_lift_control():
  c = circuits.Circuit(((gates.x(q(1)),),), num_qubits=2)
  assert circuits.lift_control(c, q(0)).layers == ((gates.cnot(q(0), q(1)),),)


def test_lift_control_cc():
  c = circuits.Circuit(((gates.cnot(q(1), q(2)),),), num_qubits=3)
  (gate,) = circuits.lift_control(c, q(0)).gates()
  assert gate.controls == (q(0), q(1))
  assert gate.target == q(2)
  assert str(gate) == 'ccx 0:0 0:1 0:2'


def test_lift_control_relayers():
  # Both gates now share the control.
  c = circuits.Circuit(((gates.x(q(1)), gates.x(q(2))),), num_qubits=3)
  assert len(circuits.lift_control(c, q(0))) == 2


def test_lift_control_collision():
  c = circuits.Circuit(((gates.x(q(1)),),), num_qubits=2)
  with pytest.raises(errors.ValidationError, match='already used'):
    circuits.lift_control(c, q(1))


def test_bind():
  c = circuits.layerize(
      [
          gates.SingleQubit('ry', q(0), (gates.Param(0),)),
          gates.SingleQubit('rz', q(1), (-gates.Param(1),)),
      ],
      num_qubits=2,
  )
  assert c.num_params == 2
  bound = c.bind([0.5, 0.25])
  assert [g.params for g in bound.gates()] == [(0.5,), (-0.25,)]
  with pytest.raises(errors.ValidationError):
    c.bind([0.5])


def test_concat():
  a = circuits.Circuit(((gates.h(q(0)),),), num_qubits=1)
  b = circuits.Circuit(((gates.x(q(1)),),), num_qubits=2)
  c = a.concat(b, a)
  assert len(c) == 3
  assert c.num_qubits == 2


_GATE_STRATEGY = st.one_of(
    st.builds(
        lambda n, i: gates.SingleQubit(n, q(i)),
        st.sampled_from(['x', 'h', 'z', 'y']),
        st.integers(0, 3),
    ),
    st.builds(
        lambda i, j: gates.cnot(q(i), q((i + j) % 4)),
        st.integers(0, 3),
        st.integers(1, 3),
    ),
)


@given(st.lists(_GATE_STRATEGY, max_size=20))
def test_layerize_idempotent(gate_list):
  c = circuits.layerize(gate_list, num_qubits=4)
  assert circuits.layerize(list(c.gates()), num_qubits=4) == c
  assert sorted(map(str, c.gates())) == sorted(map(str, gate_list))
