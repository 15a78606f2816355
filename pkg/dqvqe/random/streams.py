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

"""Seed streams."""

from __future__ import annotations

import dataclasses

import numpy as np
from dqvqe.random import random as dq_random


@dataclasses.dataclass(frozen=True, eq=True)
class SeedStream:
  """Info on one named seed stream.

  Every randomized task (one Pauli estimate, one measurement record, one
  validation run,...) draws from its own generator, derived from the master
  seed. Results then do not depend on thread count or completion order.

  Attributes:
    name: Stream name
    per_step: Whether the rng is different at each step (e.g. each optimizer
      evaluation)
  """

  name: str

  _: dataclasses.KW_ONLY

  per_step: bool = True

  def make(
      self,
      rng: dq_random.PRNGKey,
      *,
      step: int | None = None,
      key: int | str | None = None,
  ) -> dq_random.PRNGKey:
    """Create the `rng` from the global root rng.

    Arguments:
      rng: The root rng
      step: Current step
      key: Additional value (e.g. the Pauli index) to fold in

    Returns:
      The new rng
    """
    rng = rng.fold_in(self.name)
    if self.per_step:
      self._assert_is_not_none(step, 'step')
      rng = rng.fold_in(step)
    if key is not None:
      rng = rng.fold_in(key)
    return rng

  def np_rng(
      self,
      seed: int,
      *,
      step: int | None = None,
      key: int | str | None = None,
  ) -> np.random.Generator:
    """Shortcut for `make(PRNGKey(seed), ...).np_rng()`."""
    return self.make(dq_random.PRNGKey(seed), step=step, key=key).np_rng()

  def _assert_is_not_none(self, val, name: str) -> None:
    if val is None:
      raise ValueError(
          f'Missing kwargs `{name}` to generate rng stream: {self}'
      )


AQPE = SeedStream('aqpe')
MEASUREMENTS = SeedStream('measurements', per_step=False)
NETWORK = SeedStream('network', per_step=False)
