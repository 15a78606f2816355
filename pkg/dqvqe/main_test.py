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
import os

from absl import flags
from dqvqe import main
from dqvqe.utils import utils
from etils import epath
import pytest

_TESTDATA = epath.resource_path('dqvqe') / 'testdata'

_SPLIT_CLASSICAL = (
    'qubits 0\ncluster 2,2\nx 0:0\n---\nmeasure 0:0 -> c0\n---\n'
    'ccomm 0 -> 1 c0\n---\nif c0 x 1:0\n'
)


def _cli(*args: str) -> int:
  try:
    argv = main._flags_parser(['dqvqe', *args])
    return main.main(argv)
  finally:
    flags.FLAGS.unparse_flags()


def test_capacity(capsys):
  assert _cli('analyze', 'capacity', '--qpu_size=10', '--max_qpus=15') == 0
  lines = capsys.readouterr().out.splitlines()
  assert lines[0] == 'qpus,max_ansatz_size'
  assert lines[1] == '1,9'
  assert lines[-1] == '15,119'


def test_runtime(capsys):
  code = _cli(
      'analyze',
      'runtime',
      '--cluster=10,10,10,10,10',
      '--min_size=8',
      '--max_size=11',
      '--cfg.runtime.pauli_scale=0.01',
  )
  assert code == 0
  lines = capsys.readouterr().out.splitlines()
  assert lines[0] == 'n,parallel,one_qpu,distributed'
  assert len(lines) == 5
  # No parallel strategy once n > 9.
  assert lines[-1].startswith('11,,')


def test_distribute_writes_manifest(tmp_path):
  cluster = os.fspath(_TESTDATA / 'cluster_9x3.txt')
  code = _cli(
      'distribute',
      f'--cluster={cluster}',
      '--ansatz-size=4',
      '--paulis=15',
      '--solver=greedy',
      f'--output={tmp_path}',
  )
  assert code == 0
  text = (tmp_path / 'rounds.json').read_text()
  rounds = json.loads(text)['rounds']
  assert [len(r) for r in rounds] == [4, 4, 4, 3]

  manifest = json.loads((tmp_path / 'manifest.json').read_text())
  assert manifest['subcommand'] == 'distribute'
  assert manifest['inputs'] == {'cluster': cluster}
  assert manifest['inputDigests'] == {
      cluster: utils.sha256_hex((_TESTDATA / 'cluster_9x3.txt').read_bytes())
  }
  assert manifest['outputs'] == {'rounds.json': utils.sha256_hex(text)}
  assert manifest['config']['cfg']['solver'] == 'greedy'
  assert manifest['config']['flags']['ansatz_size'] == 4


def test_infeasible_cluster(capsys):
  code = _cli('distribute', '--cluster=3', '--ansatz-size=5', '--paulis=1')
  assert code == 1
  assert 'does not fit' in capsys.readouterr().err


@pytest.mark.parametrize(
    'args',
    [
        (),
        ('teleport',),
        ('analyze',),
        ('analyze', 'fidelity'),
        ('distribute', '--ansatz_size=4'),
        ('distribute', '--cluster=9,9,9', '--paulis=2', '--ansatz_size=4',
         '--format=csv'),
    ],
)
def test_usage_errors(args, capsys):
  assert _cli(*args) == 2
  assert 'usage: dqvqe' in capsys.readouterr().err


def test_unknown_flag(capsys):
  with pytest.raises(SystemExit) as e:
    _cli('distribute', '--clustr=9,9,9')
  assert e.value.code == 2
  assert 'usage: dqvqe' in capsys.readouterr().err


def test_missing_file(tmp_path):
  assert _cli('schedule', f'--circuit={tmp_path / "missing.txt"}') == 2


def test_parse_error(tmp_path):
  path = tmp_path / 'bad.txt'
  path.write_text('qubits 2\nfrobnicate 0:0\n')
  assert _cli('schedule', f'--circuit={path}') == 2


def test_schedule_then_netsim(tmp_path):
  circuit = tmp_path / 'split.txt'
  circuit.write_text(_SPLIT_CLASSICAL)
  out = tmp_path / 'schedule'
  assert _cli('schedule', f'--circuit={circuit}', f'--output={out}') == 0
  per_qpu = json.loads((out / 'schedule.json').read_text())
  assert sorted(per_qpu['qpus']) == ['0', '1']

  scenario = tmp_path / 'scenario.json'
  scenario.write_text(json.dumps({'latency': {'default': 0.5}}))
  traces = []
  for i in range(2):
    run = tmp_path / f'run{i}'
    code = _cli(
        'netsim',
        f'--schedule={out / "schedule.json"}',
        f'--scenario={scenario}',
        '--seed=3',
        f'--output={run}',
    )
    assert code == 0
    result = json.loads((run / 'result.json').read_text())
    assert result['status'] == 'completed'
    assert result['registers'] == {'c0': 1}
    traces.append((run / 'trace.jsonl').read_text())
    manifest = json.loads((run / 'manifest.json').read_text())
    assert manifest['seed'] == 3
  assert traces[0] == traces[1]
  events = [json.loads(l) for l in traces[0].splitlines()]
  assert {'relay', 'exec', 'complete'} <= {e['event'] for e in events}


def test_schedule_csv(tmp_path, capsys):
  circuit = tmp_path / 'split.txt'
  circuit.write_text(_SPLIT_CLASSICAL)
  assert _cli('schedule', f'--circuit={circuit}', '--format=csv') == 0
  lines = capsys.readouterr().out.splitlines()
  assert lines[0] == 'qpu,command,args,qpus,time,duration,gate'
  assert len(lines) == 1 + 5


def test_vqe(tmp_path):
  h = tmp_path / 'h.txt'
  h.write_text('1.0 ZZ\n-0.5 ZI\n')
  ansatz = tmp_path / 'ansatz.txt'
  ansatz.write_text('qubits 2\n')
  code = _cli(
      'vqe',
      '--cluster=3',
      f'--hamiltonian={h}',
      f'--ansatz={ansatz}',
      '--alpha=0',
      '--cfg.rfpe.sample_count=500',
      '--cfg.rfpe.max_iters=400',
      '--seed=0',
      f'--output={tmp_path / "out"}',
  )
  assert code == 0
  result = json.loads((tmp_path / 'out' / 'result.json').read_text())
  assert result['evaluations'] == 1
  assert result['energy'] == pytest.approx(0.5, abs=0.05)
  manifest = json.loads((tmp_path / 'out' / 'manifest.json').read_text())
  assert manifest['config']['cfg']['rfpe']['alpha'] == 0.0
  assert manifest['config']['cfg']['rfpe']['sample_count'] == 500
