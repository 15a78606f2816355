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

from dqvqe.utils import utils


def test_sha256_hex():
  assert utils.sha256_hex('abc') == utils.sha256_hex(b'abc')
  assert utils.sha256_hex('') == (
      'e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855'
  )


def test_enum_iter():
  out = list(utils.enum_iter(['a', 'b', 'c'], init_step=1))
  assert out == [(1, 'a'), (2, 'b'), (3, 'c')]


def test_enum_iter_generator():
  out = list(utils.enum_iter(iter('ab'), desc='letters'))
  assert out == [(0, 'a'), (1, 'b')]
