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

from dqvqe import random
import numpy as np
import pytest


def test_base():
  key = random.PRNGKey(0)
  np.testing.assert_array_equal(key, random.PRNGKey(0))
  assert isinstance(key.as_seed(), int)
  assert key.as_seed() == random.PRNGKey(0).as_seed()
  assert key.as_seed() != random.PRNGKey(1).as_seed()


def test_getitem():
  key = random.PRNGKey(0).split(3)
  assert isinstance(key, random.PRNGKey)
  assert isinstance(key[0], random.PRNGKey)
  assert len(list(key)) == 3
  assert isinstance(key.next(), random.PRNGKey)


def test_foldin():
  key = random.PRNGKey(0)
  key0 = key.fold_in('aqpe')
  key1 = key.fold_in('aqpe')

  assert isinstance(key0, random.PRNGKey)
  np.testing.assert_array_equal(key0, key1)
  assert key0.as_seed() != key.fold_in('network').as_seed()


def test_np_rng_is_reproducible():
  a = random.PRNGKey(3).fold_in(7).np_rng().random(4)
  b = random.PRNGKey(3).fold_in(7).np_rng().random(4)
  np.testing.assert_array_equal(a, b)


def test_stable_hash():
  assert random.stable_hash('c0') == random.stable_hash('c0')
  assert random.stable_hash('c0') != random.stable_hash('c1')
  assert 0 <= random.stable_hash('c0') < 2**32


def test_stream_order_free():
  stream = random.SeedStream('aqpe')
  key = random.PRNGKey(0)
  first = [stream.make(key, step=0, key=i).as_seed() for i in range(3)]
  rev = [stream.make(key, step=0, key=i).as_seed() for i in reversed(range(3))]
  assert first == rev[::-1]
  assert len(set(first)) == 3
  assert stream.make(key, step=1, key=0).as_seed() != first[0]


def test_stream_missing_step():
  with pytest.raises(ValueError, match='Missing kwargs `step`'):
    random.SeedStream('aqpe').make(random.PRNGKey(0))


def test_stream_without_step():
  stream = random.SeedStream('network', per_step=False)
  a = stream.np_rng(5, key='pairs/0-1').integers(0, 2, size=8)
  b = stream.np_rng(5, key='pairs/0-1').integers(0, 2, size=8)
  np.testing.assert_array_equal(a, b)
