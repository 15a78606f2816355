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

"""dqvqe API."""

# Do NOT add anything here !!
# Importing a single sub-module should not trigger an import of the whole
# codebase (jax, simpy,...).
# Instead, the public API is exposed in `dq.py`

# When changing this, also update the CHANGELOG.md
__version__ = '0.3.0'


def __getattr__(name: str):  # pylint: disable=invalid-name
  """Catches `import dqvqe as dq` errors."""
  del name
  raise AttributeError(
      'Please always use "from dqvqe import dq", '
      'never "import dqvqe as dq".'
  )
