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

"""Status utils is a small library to reduce logging boilerplate.

```python
from dqvqe.utils.status_utils import status


status.log("Round 1: 4 allocations.")
status.warn("No --seed given, using 0.")
```
"""

import functools
import warnings

from absl import logging
from etils import epy


class _Status:
  """Reduce boilerplate for common operations."""

  @functools.cached_property
  def in_notebook(self) -> bool:
    return epy.is_notebook()

  def log(self, msg: str, *, stacklevel: int = 1) -> None:
    """Print a message.

    * On Colab: Use `print`
    * Otherwise: Use `logging.info`

    Args:
      msg: the message to print.
      stacklevel: If wrapping this function, indicate the number of frame to
        skip so logging display the correct caller site.
    """
    if self.in_notebook:
      print(msg, flush=True)
    else:
      logging.info(msg, stacklevel=1 + stacklevel)

  def debug(self, msg: str, *, stacklevel: int = 1) -> None:
    """Like `log` but at debug level (never printed in notebooks)."""
    logging.debug(msg, stacklevel=1 + stacklevel)

  def warn(
      self,
      msg: str,
      category: type[Warning] | None = None,
      *,
      stacklevel: int = 1,
  ) -> None:
    """Print a warning."""
    warnings.warn(msg, category, stacklevel=1 + stacklevel)
    logging.warning(msg)
    if self.in_notebook:
      category = category or Warning
      print(f"{category.__name__}: {msg}")


status = _Status()
