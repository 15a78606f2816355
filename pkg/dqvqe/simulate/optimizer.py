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

"""Coordinate descent with golden-section line searches."""

from __future__ import annotations

from collections.abc import Callable, Sequence
import dataclasses
import math

from dqvqe.utils import utils

_INV_PHI = (math.sqrt(5) - 1) / 2


@dataclasses.dataclass(frozen=True)
class OptimizerOptions:
  """Outer optimizer settings.

  Attributes:
    sweeps: Passes over all coordinates.
    lower: Lower bound of every parameter.
    upper: Upper bound of every parameter.
    tol: Bracket width at which a line search stops.
    max_line_evals: Evaluation cap of one line search.
  """

  sweeps: int = 3
  lower: float = -math.pi
  upper: float = math.pi
  tol: float = 1e-2
  max_line_evals: int = 40

  def __post_init__(self):
    if self.lower >= self.upper or self.tol <= 0 or self.sweeps < 0:
      raise ValueError(f'Invalid optimizer options: {self}')

  @classmethod
  def from_config(cls, cfg) -> OptimizerOptions:
    return cls(
        sweeps=int(cfg.sweeps),
        lower=float(cfg.lower),
        upper=float(cfg.upper),
        tol=float(cfg.tol),
        max_line_evals=int(cfg.max_line_evals),
    )


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    tol: float,
    max_evals: int = 40,
) -> tuple[float, float]:
  """Minimizes `f` on `[lo, hi]`, returning the best `(x, f(x))` seen."""
  a, b = lo, hi
  c = b - _INV_PHI * (b - a)
  d = a + _INV_PHI * (b - a)
  fc, fd = f(c), f(d)
  best = min((fc, c), (fd, d))
  evals = 2
  while b - a > tol and evals < max_evals:
    if fc < fd:
      b, d, fd = d, c, fc
      c = b - _INV_PHI * (b - a)
      fc = f(c)
      best = min(best, (fc, c))
    else:
      a, c, fc = c, d, fd
      d = a + _INV_PHI * (b - a)
      fd = f(d)
      best = min(best, (fd, d))
    evals += 1
  return best[1], best[0]


def coordinate_descent(
    f: Callable[[Sequence[float]], float],
    x0: Sequence[float],
    options: OptimizerOptions = OptimizerOptions(),
) -> tuple[list[float], float]:
  """Minimizes `f` one coordinate at a time.

  Args:
    f: Objective.
    x0: Starting point.
    options: Optimizer settings.

  Returns:
    The best point and its value.
  """
  x = list(x0)
  best_x, best_f = list(x), f(x)
  for _, _ in utils.enum_iter(range(options.sweeps), desc='sweeps'):
    for i in range(len(x)):

      def along(v: float, i=i) -> float:
        return f(x[:i] + [v] + x[i + 1 :])

      v, fv = golden_section(
          along,
          options.lower,
          options.upper,
          tol=options.tol,
          max_evals=options.max_line_evals,
      )
      if fv < best_f:
        x[i] = v
        best_x, best_f = list(x), fv
  return best_x, best_f
