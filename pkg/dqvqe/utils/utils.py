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

"""Various utils."""

from collections.abc import Iterable, Iterator
import hashlib
from typing import TypeVar

from tqdm import auto as tqdm

_T = TypeVar('_T')


def sha256_hex(data: str | bytes) -> str:
  """Hex digest used for the run manifest."""
  if isinstance(data, str):
    data = data.encode('utf-8')
  return hashlib.sha256(data).hexdigest()


def enum_iter(
    iter: Iterable[_T],  # pylint: disable=redefined-builtin
    *,
    init_step: int = 0,
    desc: str | None = None,
    **tqdm_kwargs,
) -> Iterator[tuple[int, _T]]:
  """`enumerate` with a tqdm progress bar.

  Bars are only shown for long loops (optimizer sweeps, runtime tables) and
  stay silent when stderr is not a terminal.

  Args:
    iter: The iterable
    init_step: Index of the first element yielded.
    desc: tqdm description
    **tqdm_kwargs: Arguments forwarded to TQDM.

  Yields:
    step_id
    elem
  """
  try:
    total = len(iter)  # pytype: disable=wrong-arg-types
  except TypeError:
    total = None
  tqdm_kwargs.setdefault('disable', None)
  yield from enumerate(
      tqdm.tqdm(iter, total=total, desc=desc, **tqdm_kwargs), start=init_step
  )
