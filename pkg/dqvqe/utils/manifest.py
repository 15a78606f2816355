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

"""Run manifest written next to every CLI output."""

from __future__ import annotations

from collections.abc import Mapping
import dataclasses
import json
import os
from typing import Any, Optional

import dqvqe
from dqvqe.utils import utils
from etils import epath
import immutabledict


@dataclasses.dataclass(frozen=True)
class RunManifest:
  """What produced a set of outputs.

  Attributes:
    subcommand: CLI subcommand (e.g. `analyze capacity`).
    inputs: Flag name -> input path.
    input_digests: Input path -> sha256 of its content.
    config: Resolved config and flag values.
    seed: Master seed.
    version: `dqvqe.__version__`.
    outputs: Output name -> sha256 of its content.
  """

  subcommand: str
  inputs: Mapping[str, str] = immutabledict.immutabledict()
  input_digests: Mapping[str, str] = immutabledict.immutabledict()
  config: Mapping[str, Any] = immutabledict.immutabledict()
  seed: Optional[int] = None
  version: str = dqvqe.__version__
  outputs: Mapping[str, str] = immutabledict.immutabledict()

  def __post_init__(self):
    for name in ('inputs', 'input_digests', 'outputs'):
      value = dict(sorted(getattr(self, name).items()))
      object.__setattr__(self, name, immutabledict.immutabledict(value))

  @classmethod
  def create(
      cls,
      subcommand: str,
      *,
      inputs: Mapping[str, Optional[str]],
      config: Mapping[str, Any],
      seed: Optional[int],
  ) -> RunManifest:
    """Hashes the given input files (inline values are kept as is)."""
    inputs = {k: v for k, v in inputs.items() if v}
    digests = {}
    for path in inputs.values():
      p = epath.Path(path)
      if p.is_file():
        digests[os.fspath(p)] = utils.sha256_hex(p.read_bytes())
    return cls(
        subcommand=subcommand,
        inputs=inputs,
        input_digests=digests,
        config=config,
        seed=seed,
    )

  def with_outputs(self, outputs: Mapping[str, str | bytes]) -> RunManifest:
    """Adds the digests of `name -> content` outputs."""
    digests = dict(self.outputs)
    digests.update({k: utils.sha256_hex(v) for k, v in outputs.items()})
    return dataclasses.replace(self, outputs=digests)

  def to_json(self) -> dict[str, Any]:
    return {
        'subcommand': self.subcommand,
        'inputs': dict(self.inputs),
        'inputDigests': dict(self.input_digests),
        'config': _plain(self.config),
        'seed': self.seed,
        'version': self.version,
        'outputs': dict(self.outputs),
    }

  def dumps(self) -> str:
    return json.dumps(self.to_json(), indent=2, sort_keys=True) + '\n'


def _plain(value):
  match value:
    case Mapping():
      return {str(k): _plain(v) for k, v in value.items()}
    case list() | tuple():
      return [_plain(v) for v in value]
    case _:
      return value
