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

import math

from dqvqe.simulate import optimizer
import pytest


def test_golden_section_parabola():
  x, fx = optimizer.golden_section(
      lambda v: (v - 0.7) ** 2, -math.pi, math.pi, tol=1e-4, max_evals=100
  )
  assert x == pytest.approx(0.7, abs=1e-3)
  assert fx == pytest.approx(0.0, abs=1e-6)


def test_golden_section_respects_eval_cap():
  calls = []

  def f(v):
    calls.append(v)
    return math.cos(v)

  optimizer.golden_section(f, -math.pi, math.pi, tol=1e-9, max_evals=12)
  assert len(calls) == 12


def test_golden_section_minimum_at_boundary():
  x, fx = optimizer.golden_section(
      math.cos, -math.pi, math.pi, tol=1e-2, max_evals=60
  )
  assert abs(x) == pytest.approx(math.pi, abs=0.02)
  assert fx == pytest.approx(-1.0, abs=1e-3)


def test_coordinate_descent():
  f = lambda v: (v[0] - 0.5) ** 2 + (v[1] + 1.0) ** 2 + 0.5 * v[0] * v[1]
  x, fx = optimizer.coordinate_descent(
      f, [0.0, 0.0], optimizer.OptimizerOptions(sweeps=8, tol=1e-5)
  )
  # Stationary point of the quadratic.
  assert x[0] == pytest.approx(0.8, abs=1e-2)
  assert x[1] == pytest.approx(-1.2, abs=1e-2)
  assert fx == pytest.approx(f(x))


def test_coordinate_descent_never_worse():
  f = lambda v: math.cos(3 * v[0]) + 0.1 * v[0] ** 2
  x, fx = optimizer.coordinate_descent(f, [0.0], optimizer.OptimizerOptions())
  assert fx <= f([0.0])
  assert fx == f(x)


def test_invalid_options():
  with pytest.raises(ValueError):
    optimizer.OptimizerOptions(lower=1.0, upper=0.0)
