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

"""Cluster of QPUs."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses
import os

from dqvqe.utils import errors
from etils import epath
from etils import epy


@dataclasses.dataclass(frozen=True)
class ClusterSpec:
  """Qubit count of each QPU.

  Attributes:
    qpu_sizes: `[q_1, ..., q_m]`, each >= 1.
  """

  qpu_sizes: tuple[int, ...]

  def __post_init__(self):
    object.__setattr__(self, 'qpu_sizes', tuple(int(q) for q in self.qpu_sizes))
    if not self.qpu_sizes:
      raise errors.ValidationError('A cluster needs at least one QPU.')
    if any(q < 1 for q in self.qpu_sizes):
      raise errors.ValidationError(
          f'QPU sizes must be positive, got {self.qpu_sizes}'
      )

  @property
  def num_qpus(self) -> int:
    return len(self.qpu_sizes)

  @property
  def total_qubits(self) -> int:
    return sum(self.qpu_sizes)

  def __len__(self) -> int:
    return self.num_qpus

  def __str__(self) -> str:
    return ','.join(str(q) for q in self.qpu_sizes)

  @classmethod
  def uniform(cls, qpu_size: int, num_qpus: int) -> ClusterSpec:
    return cls((qpu_size,) * num_qpus)

  @classmethod
  def parse(cls, text: str) -> ClusterSpec:
    """Parses `9,9,9` (a single line, comments allowed)."""
    lines = [l.split('#', 1)[0].strip() for l in text.splitlines()]
    lines = [l for l in lines if l]
    if len(lines) != 1:
      raise errors.ParseError(
          'Cluster must be a single line of comma-separated sizes, got'
          f' {text!r}'
      )
    try:
      sizes = [int(s) for s in lines[0].split(',')]
    except ValueError as e:
      raise errors.ParseError(f'Invalid cluster {lines[0]!r}: {e}') from e
    try:
      return cls(tuple(sizes))
    except errors.ValidationError as e:
      raise errors.ParseError(str(e)) from e

  @classmethod
  def from_arg(cls, value: str | Sequence[int]) -> ClusterSpec:
    """Accepts a path to a cluster file, an inline `9,9,9` or a list."""
    if not isinstance(value, str):
      return cls(tuple(value))
    path = epath.Path(value)
    if path.exists():
      try:
        return cls.parse(path.read_text())
      except errors.ParseError as e:
        epy.reraise(e, prefix=f'{os.fspath(path)}: ')
    return cls.parse(value)
