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

import collections
import math

from dqvqe import circuit as circuit_lib
from dqvqe import hamiltonian
from dqvqe import placement
from dqvqe import remap
from dqvqe import simulate
from dqvqe.utils import errors
from etils import epath
import hypothesis
from hypothesis import strategies as st
import numpy as np
import pytest

QubitId = circuit_lib.QubitId
ClusterSpec = placement.ClusterSpec

_TESTDATA = epath.resource_path('dqvqe') / 'testdata'


def _q(text):
  return QubitId.parse(text)


def _two_qpu_map(n0, n1, *, qpe=False):
  """`n0` data qubits on QPU 0, `n1` on QPU 1, 2 comm qubits on each."""
  data = [QubitId(0, i) for i in range(n0)] + [QubitId(1, i) for i in range(n1)]
  extra = 1 if qpe else 0
  return remap.QubitMap(
      cluster=ClusterSpec((n0 + extra + 2, n1 + 2)),
      data=data,
      qpe=QubitId(0, n0) if qpe else None,
      comm={
          0: (QubitId(0, n0 + extra), QubitId(0, n0 + extra + 1)),
          1: (QubitId(1, n1), QubitId(1, n1 + 1)),
      },
  )


def _gate_counts(c):
  return collections.Counter(type(g).__name__ for g in c.gates())


def _data_state(c, qmap, *, seed=0):
  state = simulate.SimState(
      sorted(set(qmap.all_qubits) | set(c.qubits)), measurement_seed=seed
  )
  simulate.run_circuit(c, state)
  return state.restricted(qmap.data)


def test_local_cnot_unchanged():
  c = circuit_lib.parse_circuit('qubits 2\ncx 0:0 0:1\n')
  qmap = remap.single_qpu_map(2, with_qpe=False)
  out = remap.distributed_remap(c, qmap)
  assert out == c.map_qubits(qmap, cluster=qmap.cluster)
  assert remap.count_entgen(out) == 0


def test_single_cross_qpu_cnot():
  c = circuit_lib.parse_circuit('qubits 2\ncx 0:0 0:1\n')
  qmap = _two_qpu_map(1, 1)
  out = remap.distributed_remap(c, qmap)

  counts = _gate_counts(out)
  assert counts['EntGen'] == 1
  assert counts['Measure'] == 2
  assert counts['ClassicalComm'] == 2
  assert counts['ClassicallyControlled'] == 4
  assert counts['Controlled'] == 2  # cx c e1, cx e2 t
  assert counts['SingleQubit'] == 1  # h e2

  # Every measurement branch implements the CNOT on |10>.
  branches = simulate.enumerate_branches(
      out, initial={_q('0:0'): 1}, keep=qmap.data
  )
  assert len(branches) == 4
  for _, state in branches:
    np.testing.assert_allclose(state, [0, 0, 0, 1], atol=1e-12)


def test_remap_text_output():
  c = circuit_lib.parse_circuit('qubits 2\ncx 0:0 0:1\n')
  text = circuit_lib.to_text(remap.distributed_remap(c, _two_qpu_map(1, 1)))
  assert 'entgen 0:1 1:1' in text
  assert 'ccomm 0 -> 1 c0' in text
  assert 'ccomm 1 -> 0 c1' in text
  assert 'if c1 z 0:0' in text


def test_shared_control_single_session():
  c = circuit_lib.read_circuit(_TESTDATA / 'shared_control3.txt')
  qmap = remap.QubitMap(
      cluster=ClusterSpec((3, 4)),
      data=[_q('0:0'), _q('1:0'), _q('1:1')],
      comm={0: (_q('0:1'), _q('0:2')), 1: (_q('1:2'), _q('1:3'))},
  )
  out = remap.distributed_remap(c, qmap)
  # Both CNOTs share the control and the remote QPU: one cat session.
  assert remap.count_entgen(out) == 1
  assert _gate_counts(out)['Measure'] == 2

  params = np.linspace(0.3, 1.8, c.num_params)
  expected = simulate.simulate(c.bind(params)).vector()
  np.testing.assert_allclose(
      _data_state(out.bind(params), qmap), expected, atol=1e-10
  )


def test_no_fold_across_control_gate():
  c = circuit_lib.parse_circuit(
      'qubits 3\ncx 0:0 0:1\nh 0:0\ncx 0:0 0:2\n'
  )
  out = remap.distributed_remap(c, _two_qpu_map(1, 2))
  assert remap.count_entgen(out) == 2


def test_control_control_gate():
  c = circuit_lib.parse_circuit(
      'qubits 3\nh 0:0\nh 0:1\nccx 0:0 0:1 0:2\n'
  )
  # Both controls on QPU 0, target on QPU 1: two sessions in one block.
  qmap = _two_qpu_map(2, 1)
  out = remap.distributed_remap(c, qmap)
  assert remap.count_entgen(out) == 2
  expected = simulate.simulate(c).vector()
  np.testing.assert_allclose(_data_state(out, qmap), expected, atol=1e-10)


def test_registers_continue_after_existing():
  c = circuit_lib.parse_circuit(
      'qubits 2\nmeasure 0:1 -> c7\ncx 0:0 0:1\n'
  )
  out = remap.distributed_remap(c, _two_qpu_map(1, 1))
  registers = {
      g.dest for g in out.gates() if isinstance(g, circuit_lib.Measure)
  }
  assert registers == {'c7', 'c8', 'c9'}


def test_missing_comm_qubits():
  c = circuit_lib.parse_circuit('qubits 2\ncx 0:0 0:1\n')
  qmap = remap.QubitMap(
      cluster=ClusterSpec((1, 1)), data=[_q('0:0'), _q('1:0')]
  )
  with pytest.raises(errors.ValidationError, match='comm qubits'):
    remap.distributed_remap(c, qmap)


def _abstract(layers):
  return circuit_lib.Circuit(
      tuple(tuple(l) for l in layers),
      num_qubits=3,
      cluster=ClusterSpec((1, 2)),
  )


def test_get_series_c_gates():
  a, x, y = _q('0:0'), _q('1:0'), _q('1:1')
  c = _abstract([
      [circuit_lib.cnot(a, x)],
      [circuit_lib.cnot(a, y)],
      [circuit_lib.h(a)],
  ])
  assert remap.get_series_c_gates(c, 0, 1, a) == [circuit_lib.cnot(a, y)]
  assert remap.get_series_c_gates(c, 2, 1, a) == []

  c = _abstract([
      [circuit_lib.cnot(a, x)],
      [circuit_lib.h(a)],
      [circuit_lib.cnot(a, y)],
  ])
  assert remap.get_series_c_gates(c, 0, 1, a) == []


def test_get_series_c_gates_dirty_target():
  a, x, y = _q('0:0'), _q('1:0'), _q('1:1')
  c = _abstract([
      [circuit_lib.cnot(a, x)],
      [circuit_lib.h(y)],
      [circuit_lib.cnot(a, y)],
  ])
  # `y` was touched by another gate in between: not movable.
  assert remap.get_series_c_gates(c, 0, 1, a) == []


@pytest.mark.parametrize('n', [1, 2, 3, 4, 5])
def test_reflection_matrix(n):
  u = simulate.circuit_unitary(remap.build_reflection(n))
  expected = np.eye(2**n)
  expected[0, 0] = -1
  np.testing.assert_allclose(u, expected, atol=1e-10)


@pytest.mark.parametrize('n', [2, 3, 4, 6])
def test_reflection_ladder(n):
  gates = list(remap.build_reflection(n).gates())
  target = circuit_lib.monolithic(n - 1)
  rotations = [
      g
      for g in gates
      if isinstance(g, circuit_lib.Controlled) and g.target == target
  ]
  cnots = [
      g
      for g in gates
      if isinstance(g, circuit_lib.Controlled) and g.target != target
  ]
  assert len(rotations) == 2 ** (n - 1) - 1
  assert len(cnots) == 2 ** (n - 1) - 2
  assert all(g.base.name == 'r' for g in rotations)
  assert all(g.base.name == 'x' for g in cnots)
  angle = math.pi * 2.0 ** (2 - n)
  assert [g.params for g in rotations[:3]] == [
      (0.0, 0.0, angle),
      (0.0, 0.0, -angle),
      (0.0, 0.0, angle),
  ][: len(rotations)]


@pytest.mark.parametrize('n', [0, 17])
def test_reflection_size(n):
  with pytest.raises(errors.ValidationError, match='Reflection size'):
    remap.build_reflection(n)


def test_build_u_trivial():
  r = circuit_lib.parse_circuit('qubits 1\n')
  u = simulate.circuit_unitary(remap.build_u(r, hamiltonian.PauliString('Z')))
  pi = np.diag([-1.0, 1.0])
  z = np.diag([1.0, -1.0])
  np.testing.assert_allclose(u, pi @ z @ pi @ z, atol=1e-12)

  r = circuit_lib.parse_circuit('qubits 2\n')
  u = simulate.circuit_unitary(remap.build_u(r, hamiltonian.PauliString('II')))
  np.testing.assert_allclose(u, np.eye(4), atol=1e-12)


def test_build_u_length_mismatch():
  r = circuit_lib.parse_circuit('qubits 2\n')
  with pytest.raises(errors.ValidationError):
    remap.build_u(r, hamiltonian.PauliString('Z'))


_R2 = """\
qubits 2
ry 0:0 0.7
rz 0:1 -0.4
ry 0:1 1.3
cx 0:0 0:1
rx 0:0 0.9
"""


@pytest.mark.parametrize('ops', ['XZ', 'ZI', 'YY'])
def test_build_u_eigenphase(ops):
  r = circuit_lib.parse_circuit(_R2)
  p = hamiltonian.PauliString(ops)
  u = simulate.circuit_unitary(remap.build_u(r, p))
  psi = simulate.circuit_unitary(r)[:, 0]
  expected = abs(hamiltonian.pauli_expectation(p, psi))

  p_psi = hamiltonian.apply_pauli(p, psi)
  ortho = p_psi - np.vdot(psi, p_psi) * psi
  basis = np.stack([psi, ortho / np.linalg.norm(ortho)], axis=1)
  eigvals = np.linalg.eigvals(basis.conj().T @ u @ basis)
  phis = np.abs(np.angle(eigvals))
  np.testing.assert_allclose(np.cos(phis / 2), [expected] * 2, atol=1e-9)
  np.testing.assert_allclose(np.abs(eigvals), 1.0, atol=1e-9)


def test_controlled_u_blocks():
  r = circuit_lib.parse_circuit(_R2)
  p = hamiltonian.PauliString('XZ')
  cu = simulate.circuit_unitary(remap.build_controlled_u(r, p))
  # QPE qubit `0:2` is the last (least significant) axis.
  blocks = cu.reshape(4, 2, 4, 2)
  u = simulate.circuit_unitary(remap.build_u(r, p))
  np.testing.assert_allclose(blocks[:, 0, :, 0], np.eye(4), atol=1e-10)
  np.testing.assert_allclose(blocks[:, 1, :, 1], u, atol=1e-10)
  np.testing.assert_allclose(blocks[:, 0, :, 1], 0, atol=1e-10)


def test_distributed_controlled_pi():
  n = 4
  allocation = placement.AnsatzAllocation(0, (2, 2), (0, 1))
  (qmap,) = remap.round_layout([allocation], ClusterSpec((5, 4)))
  c_pi = remap.build_controlled_pi(n, qmap)
  assert remap.count_entgen(c_pi) > 0

  expected = np.eye(2**n)
  expected[0, 0] = -1
  np.testing.assert_allclose(
      simulate.data_unitary(c_pi, qmap, control=1), expected, atol=1e-10
  )
  np.testing.assert_allclose(
      simulate.data_unitary(c_pi, qmap, control=0), np.eye(2**n), atol=1e-10
  )


def test_controlled_pi_single_qpu_is_lifted_reflection():
  qmap = remap.single_qpu_map(3)
  lifted = remap.build_controlled_pi(3)
  assert remap.build_controlled_pi(3, qmap) == lifted.map_qubits(
      qmap, cluster=qmap.cluster
  )


def test_distribute_controlled_u():
  r = circuit_lib.parse_circuit(_R2)
  p = hamiltonian.PauliString('YZ')
  allocation = placement.AnsatzAllocation(0, (1, 1), (0, 1))
  (qmap,) = remap.round_layout([allocation], ClusterSpec((4, 3)))
  cu = remap.distribute_controlled_u(r, p, qmap)

  registers = [g.dest for g in cu.gates() if isinstance(g, circuit_lib.Measure)]
  assert len(registers) == len(set(registers))
  np.testing.assert_allclose(
      simulate.data_unitary(cu, qmap),
      simulate.circuit_unitary(remap.build_u(r, p)),
      atol=1e-9,
  )


def test_round_layout_h2():
  cluster = ClusterSpec((9, 9, 9))
  schedule = placement.greedy_distribute(cluster, 4, 15)
  maps = remap.round_layout(schedule.rounds[0], cluster)
  assert [str(q) for q in maps[0].data] == ['0:0', '0:1', '0:2', '0:3']
  assert str(maps[0].qpe) == '0:4'
  assert not maps[0].comm

  split = maps[3]
  assert [str(q) for q in split.data] == ['0:5', '1:5', '1:6', '2:5']
  assert str(split.qpe) == '0:6'
  assert {k: [str(q) for q in v] for k, v in split.comm.items()} == {
      0: ['0:7', '0:8'],
      1: ['1:7', '1:8'],
      2: ['2:6', '2:7'],
  }
  used = {q for m in maps for q in m.all_qubits}
  assert len(used) == sum(len(m.all_qubits) for m in maps)


def test_qubit_map_json():
  qmap = _two_qpu_map(2, 1, qpe=True)
  text = remap.map_to_json(qmap)
  assert remap.map_from_json(text) == qmap
  assert '"qpe": "0:2"' in text
  with pytest.raises(errors.ParseError):
    remap.map_from_json('{"data": []}')


def test_qubit_map_rejects_overlap():
  with pytest.raises(errors.ValidationError, match='assigned twice'):
    remap.QubitMap(
        cluster=ClusterSpec((3,)),
        data=[_q('0:0'), _q('0:1')],
        comm={0: (_q('0:1'), _q('0:2'))},
    )


_ONE_QUBIT = ['h', 'x', 'rx', 'ry', 'rz']
_TWO_QUBIT = ['cx', 'cz', 'crz', 'cry']


@st.composite
def _random_case(draw):
  n = draw(st.integers(2, 4))
  num_qpus = draw(st.integers(2, 3))
  owner = draw(
      st.lists(st.integers(0, num_qpus - 1), min_size=n, max_size=n)
  )
  counts = collections.Counter(owner)
  seen = collections.Counter()
  data = []
  for j in owner:
    data.append(QubitId(j, seen[j]))
    seen[j] += 1
  qmap = remap.QubitMap(
      cluster=ClusterSpec(tuple(counts[j] + 2 for j in range(num_qpus))),
      data=data,
      comm={
          j: (QubitId(j, counts[j]), QubitId(j, counts[j] + 1))
          for j in range(num_qpus)
      },
  )

  lines = [f'qubits {n}']
  for _ in range(draw(st.integers(1, 12))):
    kinds = ['one', 'two', 'three'] if n >= 3 else ['one', 'two']
    kind = draw(st.sampled_from(kinds))
    qubits = draw(st.permutations(range(n)))
    angle = draw(st.floats(-math.pi, math.pi))
    if kind == 'one':
      name = draw(st.sampled_from(_ONE_QUBIT))
      args = [f'0:{qubits[0]}']
    elif kind == 'two':
      name = draw(st.sampled_from(_TWO_QUBIT))
      args = [f'0:{qubits[0]}', f'0:{qubits[1]}']
    else:
      name = 'ccx'
      args = [f'0:{q}' for q in qubits[:3]]
    if name in ('rx', 'ry', 'rz', 'crz', 'cry'):
      args.append(repr(angle))
    lines.append(' '.join([name, *args]))
  return circuit_lib.parse_circuit('\n'.join(lines)), qmap


@hypothesis.settings(max_examples=200, deadline=None)
@hypothesis.given(_random_case(), st.integers(0, 2**16))
def test_remap_equivalence(case, seed):
  c, qmap = case
  # Start from a non-trivial product state.
  n = c.num_qubits
  lines = [f'qubits {n}'] + [f'ry 0:{i} {0.4 + 0.3 * i}' for i in range(n)]
  c = circuit_lib.parse_circuit('\n'.join(lines)).concat(c)
  expected = simulate.simulate(c).vector()
  out = remap.distributed_remap(c, qmap)
  np.testing.assert_allclose(
      _data_state(out, qmap, seed=seed), expected, atol=1e-10
  )
