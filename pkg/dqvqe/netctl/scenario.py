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

"""Scenario files of the control-plane simulation.

```json
{
  "topology": "centralized",
  "seed": 0,
  "latency": {"default": 0.5, "links": {"ccn0-ccn1": 2.0}},
  "timeout": 50,
  "start_margin": 10,
  "clock": {"offsets": {"qgn1": 0.1}, "drifts": {}, "beacon_period": null},
  "vendors": {"0": {"capacity": 6, "available_until": 1000}},
  "validation": {"pairs": 100, "checks": 20, "flip_probability": 0.0},
  "faults": {"drop_messages": [3], "fail_nodes": ["ccn1"]}
}
```

Every field is optional.
"""

from __future__ import annotations

from collections.abc import Mapping
import dataclasses
import enum
import json
import math
import os
from typing import Any, Optional

from dqvqe.netctl import bus as bus_lib
from dqvqe.netctl import clock as clock_lib
from dqvqe.schedule import timing
from dqvqe.utils import errors
from etils import epath
from etils import epy
import immutabledict


class Topology(epy.StrEnum):
  CENTRALIZED = enum.auto()
  DECENTRALIZED = enum.auto()


@dataclasses.dataclass(frozen=True)
class VendorConfig:
  """What a QPU vendor offers.

  Attributes:
    capacity: Qubits the vendor can run (`None`: unlimited).
    available_until: Latest end of execution, in user time.
    durations: Gate durations the vendor reports.
  """

  capacity: Optional[int] = None
  available_until: float = math.inf
  durations: timing.GateTimeTable = timing.GateTimeTable()


@dataclasses.dataclass(frozen=True)
class ValidationConfig:
  """Entanglement validation size: `pairs` shared, `checks` disclosed."""

  pairs: int = 100
  checks: int = 20
  flip_probability: float = 0.0

  def __post_init__(self):
    if not 1 <= self.checks < self.pairs:
      raise errors.ValidationError(
          f'Expected 1 <= checks < pairs, got {self.checks}, {self.pairs}'
      )
    if not 0 <= self.flip_probability <= 1:
      raise errors.ValidationError(
          f'flip_probability must be in [0, 1], got {self.flip_probability}'
      )


def _frozen(values, convert=lambda v: v) -> frozenset[Any]:
  return frozenset(convert(v) for v in values)


@dataclasses.dataclass(frozen=True)
class Faults:
  """Injected faults.

  Attributes:
    drop_messages: Sequence numbers of the messages lost in transit.
    fail_nodes: Nodes that never start.
    flip_validation_bits: Vendor pairs `(i, j)`, `i < j`, where a disclosed
      validation bit of `j` reads flipped.
    reject_vendors: Vendors that turn the contract down.
    unreachable_vendors: Vendors whose controller never answers.
  """

  drop_messages: frozenset[int] = frozenset()
  fail_nodes: frozenset[str] = frozenset()
  flip_validation_bits: frozenset[tuple[int, int]] = frozenset()
  reject_vendors: frozenset[int] = frozenset()
  unreachable_vendors: frozenset[int] = frozenset()

  def __post_init__(self):
    object.__setattr__(self, 'drop_messages', _frozen(self.drop_messages, int))
    object.__setattr__(self, 'fail_nodes', _frozen(self.fail_nodes, str))
    object.__setattr__(
        self,
        'flip_validation_bits',
        _frozen(
            self.flip_validation_bits, lambda p: tuple(sorted(map(int, p)))
        ),
    )
    object.__setattr__(
        self, 'reject_vendors', _frozen(self.reject_vendors, int)
    )
    object.__setattr__(
        self, 'unreachable_vendors', _frozen(self.unreachable_vendors, int)
    )


@dataclasses.dataclass(frozen=True)
class Scenario:
  """Settings of one control-plane simulation.

  Attributes:
    topology: Centralized or decentralized control.
    seed: Master seed (measurements, validation).
    latency: Link latencies.
    timeout: Longest wait for an expected message.
    start_margin: Delay between the start decision and the start time.
    clock: Clock errors and beacons.
    vendors: QPU -> vendor offer (decentralized only).
    validation: Entanglement validation size.
    faults: Injected faults.
  """

  topology: Topology = Topology.CENTRALIZED
  seed: int = 0
  latency: bus_lib.Latency = bus_lib.Latency()
  timeout: float = 50.0
  start_margin: float = 10.0
  clock: clock_lib.ClockModel = clock_lib.ClockModel()
  vendors: Mapping[int, VendorConfig] = immutabledict.immutabledict()
  validation: ValidationConfig = ValidationConfig()
  faults: Faults = Faults()

  def __post_init__(self):
    object.__setattr__(self, 'topology', Topology(self.topology))
    object.__setattr__(
        self,
        'vendors',
        immutabledict.immutabledict(
            {int(k): v for k, v in self.vendors.items()}
        ),
    )
    if self.timeout <= 0 or self.start_margin < 0:
      raise errors.ValidationError(
          'Expected timeout > 0 and start_margin >= 0, got'
          f' {self.timeout}, {self.start_margin}'
      )

  def vendor(self, qpu: int) -> VendorConfig:
    return self.vendors.get(qpu, VendorConfig())

  def horizon(self, makespan: float) -> float:
    """Simulated time after which a run counts as stalled."""
    return (
        2 * (self.start_margin + makespan)
        + 20 * (self.timeout + self.latency.max)
        + self.clock.beacon_latency
    )

  @property
  def drain(self) -> float:
    """Time left after a run for the messages in flight."""
    return self.latency.max + self.clock.beacon_latency + 1.0

  @classmethod
  def from_json(cls, value: Mapping[str, Any]) -> Scenario:
    """Builds a scenario from its JSON form."""
    try:
      return _from_json(dict(value))
    except errors.ParseError:
      raise
    except (KeyError, TypeError, ValueError) as e:
      raise errors.ParseError(f'Invalid scenario: {e}') from e


def _from_json(value: dict[str, Any]) -> Scenario:
  known = {f.name for f in dataclasses.fields(Scenario)}
  if unknown := sorted(set(value) - known):
    raise errors.ParseError(f'Unknown scenario fields {unknown}')
  kwargs: dict[str, Any] = {}
  for name in ('topology', 'seed', 'timeout', 'start_margin'):
    if name in value:
      kwargs[name] = value[name]
  if 'seed' in kwargs:
    kwargs['seed'] = int(kwargs['seed'])
  for name in ('timeout', 'start_margin'):
    if name in kwargs:
      kwargs[name] = float(kwargs[name])
  if 'latency' in value:
    kwargs['latency'] = bus_lib.Latency(**value['latency'])
  if 'clock' in value:
    kwargs['clock'] = clock_lib.ClockModel(**value['clock'])
  if 'validation' in value:
    kwargs['validation'] = ValidationConfig(**value['validation'])
  if 'faults' in value:
    kwargs['faults'] = Faults(**value['faults'])
  if 'vendors' in value:
    kwargs['vendors'] = {
        int(k): _vendor_from_json(v) for k, v in value['vendors'].items()
    }
  return Scenario(**kwargs)


def _vendor_from_json(value: Mapping[str, Any]) -> VendorConfig:
  value = dict(value)
  if 'available_until' in value:
    value['available_until'] = float(value['available_until'])
  if 'durations' in value:
    value['durations'] = timing.parse_time_table(
        'unit: weight\n'
        + ''.join(f'{k}={v}\n' for k, v in value['durations'].items())
    )
  return VendorConfig(**value)


def read_scenario(path: epath.PathLike) -> Scenario:
  path = epath.Path(path)
  try:
    return Scenario.from_json(json.loads(path.read_text()))
  except json.JSONDecodeError as e:
    raise errors.ParseError(f'{os.fspath(path)}: {e}') from e
  except errors.ParseError as e:
    epy.reraise(e, prefix=f'{os.fspath(path)}: ')
