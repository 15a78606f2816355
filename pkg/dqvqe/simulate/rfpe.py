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

"""Rejection filtering phase estimation.

One iteration runs the circuit

```
QPE: |+> --*-----Z(Mθ)--H--measure E
ψ:   ------U^M--------------------
```

with `Z(a) = diag(1, exp(-ia))`, then updates a normal prior on the
eigenphase `φ` by rejection sampling with the likelihood
`P(E=0 | φ) = cos²(M(φ - θ) / 2)`.

`M = ceil(1 / σ^α)` and `θ = μ - σ`. `α = 0` keeps `M = 1` (plain
sampling), `α = 1` grows the circuit depth as `1 / σ`.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable

from dqvqe.utils import errors
from jaxtyping import Complex, Float
import numpy as np

SIGMA_FLOOR = 1e-6
MIN_ACCEPTED = 5


@dataclasses.dataclass(frozen=True)
class RfpeParams:
  """RFPE settings.

  Attributes:
    alpha: Circuit depth exponent, in `[0, 1]`.
    mu: Prior mean of `φ` (radians).
    sigma: Prior standard deviation.
    sample_count: Prior draws per rejection step.
    max_iters: Iteration cap.
    sigma_target: Stop once `σ <= sigma_target`.
  """

  alpha: float = 1.0
  mu: float = math.pi / 2
  sigma: float = math.pi / 4
  sample_count: int = 2000
  max_iters: int = 500
  sigma_target: float = 1e-3

  def __post_init__(self):
    if not 0.0 <= self.alpha <= 1.0:
      raise errors.ValidationError(f'alpha must be in [0, 1], got {self.alpha}')
    if self.sigma <= 0 or self.sigma_target <= 0:
      raise errors.ValidationError(
          f'sigma and sigma_target must be > 0, got {self.sigma},'
          f' {self.sigma_target}'
      )
    if self.sample_count < MIN_ACCEPTED or self.max_iters < 0:
      raise errors.ValidationError(
          f'Invalid sample_count={self.sample_count} or'
          f' max_iters={self.max_iters}'
      )

  @classmethod
  def from_config(cls, cfg) -> RfpeParams:
    return cls(
        alpha=float(cfg.alpha),
        mu=float(cfg.mu),
        sigma=float(cfg.sigma),
        sample_count=int(cfg.sample_count),
        max_iters=int(cfg.max_iters),
        sigma_target=float(cfg.sigma_target),
    )


@dataclasses.dataclass(frozen=True)
class RfpeResult:
  """Posterior after the last iteration.

  Attributes:
    phi: Posterior mean.
    sigma: Posterior standard deviation.
    iterations: Circuit invocations.
    unitary_applications: Sum of `M` over the iterations.
  """

  phi: float
  sigma: float
  iterations: int
  unitary_applications: int


def rfpe_outcome_probability(phi, m: int, theta: float):
  """`P(E=0) = cos²(M(φ - θ) / 2)` (broadcasts over `phi`)."""
  return np.cos(m * (np.asarray(phi) - theta) / 2) ** 2


def circuit_outcome_probability(
    u: Complex[np.ndarray, 'd d'],
    psi: Complex[np.ndarray, 'd'],
    m: int,
    theta: float,
) -> float:
  """`P(E=0) = |ψ + exp(-iMθ) U^M ψ|² / 4` for any data state `ψ`."""
  u_m_psi = np.linalg.matrix_power(u, m) @ psi
  amp = psi + np.exp(-1j * m * theta) * u_m_psi
  return float(np.clip(np.vdot(amp, amp).real / 4, 0.0, 1.0))


def number_of_repetitions(sigma: float, alpha: float) -> int:
  return max(1, math.ceil(1 / max(sigma, SIGMA_FLOOR) ** alpha))


def rfpe_loop(
    outcome_probability: Callable[[int, float], float],
    params: RfpeParams,
    rng: np.random.Generator,
) -> RfpeResult:
  """Runs RFPE against `outcome_probability(M, θ) = P(E=0)`."""
  mu, sigma = params.mu, params.sigma
  iterations = applications = 0
  while sigma > params.sigma_target and iterations < params.max_iters:
    m = number_of_repetitions(sigma, params.alpha)
    theta = mu - sigma
    e = 0 if rng.random() < outcome_probability(m, theta) else 1
    iterations += 1
    applications += m

    accepted = _rejection_step(mu, sigma, m, theta, e, params, rng)
    if accepted is None:
      sigma = min(2 * sigma, 2 * math.pi)
      continue
    mu = float(np.mean(accepted))
    sigma = max(float(np.std(accepted)), SIGMA_FLOOR)
  return RfpeResult(
      phi=mu,
      sigma=sigma,
      iterations=iterations,
      unitary_applications=applications,
  )


def _rejection_step(
    mu: float,
    sigma: float,
    m: int,
    theta: float,
    e: int,
    params: RfpeParams,
    rng: np.random.Generator,
) -> Float[np.ndarray, 'k'] | None:
  """Accepted prior draws, retried once with twice the draws."""
  count = params.sample_count
  for _ in range(2):
    phis = rng.normal(mu, sigma, count)
    likelihood = rfpe_outcome_probability(phis, m, theta)
    if e:
      likelihood = 1 - likelihood
    accepted = phis[rng.random(count) < likelihood]
    if len(accepted) >= MIN_ACCEPTED:
      return accepted
    count *= 2
  return None


def rfpe_estimate(
    u: Complex[np.ndarray, 'd d'],
    psi: Complex[np.ndarray, 'd'],
    params: RfpeParams,
    rng: np.random.Generator,
) -> RfpeResult:
  """Estimates the eigenphase of data unitary `u` seen from state `psi`."""
  u = np.asarray(u, dtype=complex)
  psi = np.asarray(psi, dtype=complex)
  if u.shape != (psi.size, psi.size):
    raise errors.ValidationError(
        f'Unitary of shape {u.shape} does not act on a state of size'
        f' {psi.size}.'
    )
  return rfpe_loop(
      lambda m, theta: circuit_outcome_probability(u, psi, m, theta),
      params,
      rng,
  )
