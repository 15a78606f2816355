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

r"""Default settings of the α-VQE pipeline.

Usage:

```sh
dqvqe vqe --cluster=9,9,9 --hamiltonian=h2.txt --ansatz=ansatz_hea4.txt \
    --cfg=dqvqe/configs/default.py --cfg.rfpe.sample_count=4000
```
"""

import math

from ml_collections import config_dict


def get_config() -> config_dict.ConfigDict:
  """Returns the default config."""
  cfg = config_dict.ConfigDict()

  cfg.solver = 'greedy'
  # Pauli terms estimated concurrently within a round.
  cfg.max_workers = 4

  cfg.rfpe = config_dict.ConfigDict()
  cfg.rfpe.alpha = 1.0
  cfg.rfpe.mu = math.pi / 2
  cfg.rfpe.sigma = math.pi / 4
  cfg.rfpe.sample_count = 2000
  cfg.rfpe.max_iters = 500
  cfg.rfpe.sigma_target = 1e-3

  cfg.stage_one = config_dict.ConfigDict()
  cfg.stage_one.delta = 0.1
  cfg.stage_one.shots = 2000
  cfg.stage_one.beta = 0.01

  cfg.sampling = config_dict.ConfigDict()
  cfg.sampling.epsilon = 0.02

  cfg.optimizer = config_dict.ConfigDict()
  cfg.optimizer.sweeps = 3
  cfg.optimizer.lower = -math.pi
  cfg.optimizer.upper = math.pi
  cfg.optimizer.tol = 1e-2
  cfg.optimizer.max_line_evals = 40

  cfg.runtime = config_dict.ConfigDict()
  cfg.runtime.gate_scale = 1.0
  cfg.runtime.pauli_scale = 1.0

  return cfg
