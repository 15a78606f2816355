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

"""Error types.

The cli maps them to exit codes: `ParseError` -> 2, the others -> 1.
"""


class ParseError(ValueError):
  """Malformed input file (circuit, hamiltonian, cluster, map,...)."""


class ValidationError(ValueError):
  """An invariant of a value was violated."""


class InfeasibleError(ValueError):
  """The placement problem cannot be solved."""
