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

"""Small wrapper around `jax.random` used to derive reproducible seeds."""

from __future__ import annotations

from collections.abc import Iterator
import functools
import hashlib

import jax
import jax.numpy as jnp
import jax.random
import numpy as np


class PRNGKey:
  """Small wrapper around `jax.random` key arrays to reduce boilerplate.

  The simulator itself runs on `np.random.Generator`. Keys are only used to
  derive independent, order-free seeds from the master seed:

  * `fold_in` supports `str` (`key.fold_in('aqpe')`)
  * `as_seed()` returns an `int` to pass to `np.random.default_rng`

  Usage:

  ```python
  key = dq.random.PRNGKey(0)
  rng = key.fold_in('aqpe').fold_in(pauli_index).np_rng()
  ```
  """

  rng: jax.Array

  def __init__(self, seed_or_rng: int | jax.Array | PRNGKey = 0):
    if isinstance(seed_or_rng, PRNGKey):
      self.rng = seed_or_rng.rng
    elif isinstance(seed_or_rng, jax.Array) and seed_or_rng.shape:
      self.rng = seed_or_rng
    else:  # `int` or scalar array, normalize
      self.rng = jax.random.PRNGKey(int(seed_or_rng))

  def __iter__(self) -> Iterator[PRNGKey]:
    return (PRNGKey(k) for k in iter(self.rng))

  def __getitem__(self, slice_) -> PRNGKey:
    return PRNGKey(self.rng[slice_])

  def split(self, n: int = 2) -> PRNGKey:
    """Returns `n` new keys (stacked)."""
    return PRNGKey(jax.random.split(self.rng, n))

  def fold_in(self, data: int | str) -> PRNGKey:
    """Folds in delta into the random state."""
    if isinstance(data, str):
      data = _hash(data)
    return PRNGKey(jax.random.fold_in(self.rng, data))

  def next(self) -> PRNGKey:
    """Returns the next rng key (alias for `key.split(1)[0]`)."""
    return self.split(1)[0]

  def __repr__(self):
    return f'{type(self).__name__}({self.rng!r})'

  def __array__(self, dtype=None, copy=None) -> np.ndarray:
    """Support np.array conversion `np.asarray(key)`."""
    assert dtype is None
    assert copy is None
    return np.asarray(self.rng)

  def as_seed(self) -> int:
    """Returns a `seed` integer (alias of `int(rng.bits())`).

    Note this is non-reversible (the returned seed is not the one passed to
    construct the rng).

    Returns:
      An integer seed.
    """
    return int(jax.random.bits(self.rng, dtype=jnp.uint32))

  def np_rng(self) -> np.random.Generator:
    """Returns a numpy generator seeded from this key."""
    return np.random.default_rng(self.as_seed())


@functools.lru_cache(maxsize=1_000)
def _hash(data: str) -> int:
  """Deterministic hash."""
  data = hashlib.sha1(data.encode('utf-8')).digest()
  data = int.from_bytes(data[:4], byteorder='big')  # Truncate to uint32
  return data


def stable_hash(data: str) -> int:
  """Process independent uint32 hash of a string (unlike `hash()`)."""
  return _hash(data)
