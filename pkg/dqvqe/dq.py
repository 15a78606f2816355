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

"""dqvqe public API.

```python
from dqvqe import dq

cluster = dq.placement.ClusterSpec((9, 9, 9))
schedule = dq.placement.greedy_distribute(cluster, n=4, p=15)
```
"""

# pylint: disable=unused-import,g-importing-member,g-import-not-at-top

from etils import epy as _epy

# Namespaces
with _epy.lazy_api_imports(globals()):
  from dqvqe import circuit
  from dqvqe import hamiltonian
  from dqvqe import netctl
  from dqvqe import placement
  from dqvqe import random
  from dqvqe import remap
  from dqvqe import schedule
  from dqvqe import simulate
  from dqvqe.utils import errors
  from dqvqe.utils.status_utils import status
