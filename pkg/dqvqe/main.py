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

r"""Command-line entry point of the distributed α-VQE pipeline.

Usage:

```sh
dqvqe distribute --cluster=9,9,9 --ansatz_size=4 --paulis=15 --solver=cp
dqvqe remap --circuit=shared_control3.txt --map=map.json --params=0.1,0.2
dqvqe schedule --circuit=distributed.txt --times=times.txt --format=csv
dqvqe vqe --cluster=cluster.txt --hamiltonian=h2.txt --ansatz=hea.txt --seed=1
dqvqe netsim --schedule=schedule.json --scenario=scenario.json --seed=1
dqvqe analyze runtime --cluster=10,10,10,10,10 --min_size=8 --max_size=40
dqvqe analyze capacity --qpu_size=10 --max_qpus=15
```

Flags are also accepted with dashes (`--ansatz-size`). With `--output`, the
primary output and a `manifest.json` go to that directory. Otherwise the
output is printed.

Exit codes: 0 on success, 1 on invalid or infeasible input, 2 on unreadable
input or bad usage.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
import dataclasses
import json
import os
import sys
from typing import Any, Optional

from absl import app
from absl import flags
from dqvqe import circuit as circuit_lib
from dqvqe import hamiltonian as hamiltonian_lib
from dqvqe import netctl
from dqvqe import placement
from dqvqe import remap
from dqvqe import schedule as schedule_lib
from dqvqe import simulate
from dqvqe.utils import errors
from dqvqe.utils import manifest as manifest_lib
from dqvqe.utils.status_utils import status
from etils import epath
from ml_collections import config_flags

_SUBCOMMANDS = (
    'distribute',
    'remap',
    'schedule',
    'vqe',
    'netsim',
    'analyze',
)
_ANALYSES = ('runtime', 'capacity')

_CFG = config_flags.DEFINE_config_file(
    'cfg',
    os.fspath(epath.resource_path('dqvqe') / 'configs' / 'default.py'),
    'Pipeline settings (`dqvqe/configs/default.py` layout).',
    lock_config=False,
)
_CLUSTER = flags.DEFINE_string(
    'cluster', None, 'Cluster file, or inline QPU sizes (`9,9,9`).'
)
_ANSATZ_SIZE = flags.DEFINE_integer('ansatz_size', None, 'Ansatz qubits.')
_PAULIS = flags.DEFINE_integer('paulis', None, 'Number of Pauli terms.')
_SOLVER = flags.DEFINE_enum(
    'solver', None, ['greedy', 'cp'], 'Placement solver (overrides cfg).'
)
_CIRCUIT = flags.DEFINE_string('circuit', None, 'Circuit file.')
_MAP = flags.DEFINE_string('map', None, 'Qubit map JSON file.')
_PARAMS = flags.DEFINE_list(
    'params', None, 'Values bound to the symbolic circuit parameters.'
)
_TIMES = flags.DEFINE_string('times', None, 'Gate time table file.')
_HAMILTONIAN = flags.DEFINE_string('hamiltonian', None, 'Hamiltonian file.')
_ANSATZ = flags.DEFINE_string('ansatz', None, 'Ansatz template file.')
_ALPHA = flags.DEFINE_float('alpha', None, 'RFPE alpha (overrides cfg).')
_SCHEDULE = flags.DEFINE_string(
    'schedule', None, 'Per-QPU schedule JSON (`schedule --format=json`).'
)
_SCENARIO = flags.DEFINE_string(
    'scenario', None, 'Control-plane scenario JSON.'
)
_QPU_SIZE = flags.DEFINE_integer('qpu_size', None, 'Qubits per QPU.')
_MAX_QPUS = flags.DEFINE_integer('max_qpus', None, 'Largest QPU count.')
_MIN_SIZE = flags.DEFINE_integer('min_size', 2, 'Smallest Ansatz size.')
_MAX_SIZE = flags.DEFINE_integer('max_size', None, 'Largest Ansatz size.')
_SEED = flags.DEFINE_integer('seed', None, 'Master seed (default 0).')
_OUTPUT = flags.DEFINE_string('output', None, 'Output directory.')
_FORMAT = flags.DEFINE_enum(
    'format', None, ['json', 'csv'], 'Output format, where both exist.'
)

_FLAGS = (
    _CLUSTER,
    _ANSATZ_SIZE,
    _PAULIS,
    _SOLVER,
    _CIRCUIT,
    _MAP,
    _PARAMS,
    _TIMES,
    _HAMILTONIAN,
    _ANSATZ,
    _ALPHA,
    _SCHEDULE,
    _SCENARIO,
    _QPU_SIZE,
    _MAX_QPUS,
    _MIN_SIZE,
    _MAX_SIZE,
    _SEED,
    _OUTPUT,
    _FORMAT,
)
_PATH_FLAGS = (
    _CLUSTER,
    _CIRCUIT,
    _MAP,
    _TIMES,
    _HAMILTONIAN,
    _ANSATZ,
    _SCHEDULE,
    _SCENARIO,
)

_USAGE = (
    'usage: dqvqe {distribute,remap,schedule,vqe,netsim,analyze'
    ' {runtime,capacity}} [--flags]\n'
    'See `dqvqe --helpfull` for the flags.'
)


@dataclasses.dataclass
class _Result:
  """Outputs of a subcommand: file name -> content. The first is primary."""

  outputs: dict[str, str]
  seed: Optional[int] = None


def _required(holder: flags.FlagHolder) -> Any:
  if holder.value is None:
    raise app.UsageError(f'--{holder.name} is required.')
  return holder.value


def _format(*allowed: str) -> str:
  fmt = _FORMAT.value or allowed[0]
  if fmt not in allowed:
    raise app.UsageError(f'--format={fmt} is not available here.')
  return fmt


def _seed() -> int:
  if _SEED.value is None:
    status.warn('No --seed given, using 0.')
    return 0
  return _SEED.value


def _times() -> schedule_lib.GateTimeTable:
  if _TIMES.value is None:
    return schedule_lib.GateTimeTable()
  return schedule_lib.read_time_table(_TIMES.value)


def _circuit() -> circuit_lib.Circuit:
  c = circuit_lib.read_circuit(_required(_CIRCUIT))
  if _PARAMS.value:
    c = c.bind([float(v) for v in _PARAMS.value])
  return c


def _distribute(cfg) -> _Result:
  _format('json')
  cluster = placement.ClusterSpec.from_arg(_required(_CLUSTER))
  rounds = placement.distribute(
      cluster, _required(_ANSATZ_SIZE), _required(_PAULIS), solver=cfg.solver
  )
  return _Result({'rounds.json': placement.schedule_to_json(rounds) + '\n'})


def _remap(cfg) -> _Result:
  del cfg
  qmap = remap.read_map(_required(_MAP))
  c = remap.distributed_remap(_circuit(), qmap)
  return _Result({'circuit.txt': circuit_lib.to_text(c)})


def _checked_schedules(c: circuit_lib.Circuit, times):
  per_qpu = schedule_lib.schedule_circuit(c, times)
  if violations := schedule_lib.validate_schedule(per_qpu):
    raise errors.ValidationError(
        'Invalid schedule:\n' + '\n'.join(str(v) for v in violations)
    )
  return per_qpu


def _schedule(cfg) -> _Result:
  del cfg
  fmt = _format('json', 'csv')
  times = _times()
  per_qpu = _checked_schedules(_circuit(), times)
  if fmt == 'csv':
    return _Result({'schedule.csv': schedule_lib.to_csv(per_qpu)})
  payload = schedule_lib.schedules_to_json(per_qpu, times)
  return _Result({'schedule.json': json.dumps(payload, indent=2) + '\n'})


def _vqe(cfg) -> _Result:
  _format('json')
  seed = _seed()
  result = simulate.distributed_avqe(
      placement.ClusterSpec.from_arg(_required(_CLUSTER)),
      hamiltonian_lib.read_hamiltonian(_required(_HAMILTONIAN)),
      circuit_lib.read_circuit(_required(_ANSATZ)),
      seed=seed,
      solver=cfg.solver,
      options=simulate.AqpeOptions.from_config(cfg),
      optimizer_options=simulate.OptimizerOptions.from_config(cfg.optimizer),
  )
  return _Result(
      {'result.json': json.dumps(result.to_json(), indent=2) + '\n'}, seed
  )


def _netsim(cfg) -> _Result:
  del cfg
  if _SCHEDULE.value is not None:
    per_qpu = schedule_lib.read_schedules(_SCHEDULE.value)
    if violations := schedule_lib.validate_schedule(per_qpu):
      raise errors.ValidationError(
          'Invalid schedule:\n' + '\n'.join(str(v) for v in violations)
      )
  elif _CIRCUIT.value is not None:
    per_qpu = _checked_schedules(_circuit(), _times())
  else:
    raise app.UsageError('--schedule or --circuit is required.')

  scenario = netctl.Scenario()
  if _SCENARIO.value is not None:
    scenario = netctl.read_scenario(_SCENARIO.value)
  if _SEED.value is None:
    status.warn(f'No --seed given, using the scenario seed {scenario.seed}.')
  else:
    scenario = dataclasses.replace(scenario, seed=_SEED.value)

  result = netctl.run_control_plane(per_qpu, scenario)
  status.log(f'Control plane {result.status}: {result.reason or "ok"}')
  return _Result(
      {
          'trace.jsonl': netctl.to_jsonl(result.trace),
          'result.json': json.dumps(result.to_json(), indent=2) + '\n',
      },
      scenario.seed,
  )


def _analyze(cfg, analysis: str) -> _Result:
  fmt = _format('csv', 'json')
  match analysis:
    case 'runtime':
      cluster = placement.ClusterSpec.from_arg(_required(_CLUSTER))
      df = schedule_lib.runtime_table(
          cluster,
          range(_MIN_SIZE.value, _required(_MAX_SIZE) + 1),
          _times(),
          schedule_lib.RuntimeModel.from_config(cfg.runtime),
      )
    case 'capacity':
      df = schedule_lib.max_ansatz_curve(
          _required(_QPU_SIZE), _required(_MAX_QPUS)
      )
    case _:
      raise app.UsageError(
          f'Unknown analysis {analysis!r}, expected one of {_ANALYSES}'
      )
  if fmt == 'json':
    return _Result({f'{analysis}.json': df.to_json(orient='records') + '\n'})
  return _Result({f'{analysis}.csv': df.to_csv(index=False)})


_COMMANDS: dict[str, Callable[..., _Result]] = {
    'distribute': _distribute,
    'remap': _remap,
    'schedule': _schedule,
    'vqe': _vqe,
    'netsim': _netsim,
}


def _resolved_config():
  cfg = _CFG.value.copy_and_resolve_references()
  if _SOLVER.value is not None:
    cfg.solver = _SOLVER.value
  if _ALPHA.value is not None:
    cfg.rfpe.alpha = _ALPHA.value
  return cfg


def _emit(subcommand: str, result: _Result, cfg) -> None:
  manifest = manifest_lib.RunManifest.create(
      subcommand,
      inputs={h.name: h.value for h in _PATH_FLAGS},
      config={
          'cfg': cfg.to_dict(),
          'flags': {h.name: h.value for h in _FLAGS if h.present},
      },
      seed=result.seed,
  ).with_outputs(result.outputs)

  if _OUTPUT.value is None:
    primary = next(iter(result.outputs.values()))
    sys.stdout.write(primary)
    sys.stdout.flush()
    status.log(f'Manifest:\n{manifest.dumps()}')
    return

  out_dir = epath.Path(_OUTPUT.value)
  out_dir.mkdir(parents=True, exist_ok=True)
  for name, content in result.outputs.items():
    (out_dir / name).write_text(content)
  (out_dir / 'manifest.json').write_text(manifest.dumps())
  status.log(
      f'Wrote {", ".join(result.outputs)} and manifest.json to'
      f' {os.fspath(out_dir)}'
  )


def _dispatch(args: Sequence[str]) -> None:
  if not args or args[0] not in _SUBCOMMANDS:
    raise app.UsageError(
        f'Expected a subcommand among {_SUBCOMMANDS}, got {list(args)}'
    )
  subcommand, *rest = args
  expected = 1 if subcommand == 'analyze' else 0
  if len(rest) != expected:
    raise app.UsageError(f'Unexpected arguments {rest} for {subcommand}')

  cfg = _resolved_config()
  status.log(f'Running `{" ".join(args)}`.')
  if subcommand == 'analyze':
    result = _analyze(cfg, rest[0])
  else:
    result = _COMMANDS[subcommand](cfg)
  _emit(' '.join(args), result, cfg)


def main(argv: Sequence[str]) -> int:
  """Runs the subcommand named by the positional arguments of `argv`."""
  try:
    _dispatch(argv[1:])
  except app.UsageError as e:
    print(f'{e}\n{_USAGE}', file=sys.stderr)
    return 2
  except (errors.ParseError, OSError) as e:
    print(f'error: {e}', file=sys.stderr)
    return 2
  except ValueError as e:
    print(f'error: {e}', file=sys.stderr)
    return 1
  return 0


def _normalize(arg: str) -> str:
  """`--ansatz-size=4` -> `--ansatz_size=4`."""
  if not arg.startswith('--'):
    return arg
  name, sep, value = arg[2:].partition('=')
  return f'--{name.replace("-", "_")}{sep}{value}'


def _flags_parser(argv: list[str]) -> list[str]:
  """Parses the flags. Bad flags print the usage and exit with 2."""
  try:
    return flags.FLAGS([_normalize(a) for a in argv])
  except flags.Error as e:
    print(f'{e}\n{_USAGE}', file=sys.stderr)
    sys.exit(2)


def run() -> None:
  app.run(main, flags_parser=_flags_parser)


if __name__ == '__main__':
  run()
