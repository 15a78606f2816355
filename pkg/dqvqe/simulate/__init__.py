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

"""Statevector simulation, α-QPE and the α-VQE driver."""

# pylint: disable=g-importing-member

from dqvqe.simulate.aqpe import AqpeOptions
from dqvqe.simulate.aqpe import AqpeProblem
from dqvqe.simulate.aqpe import distributed_aqpe
from dqvqe.simulate.aqpe import estimate_pauli
from dqvqe.simulate.aqpe import EstimationResult
from dqvqe.simulate.aqpe import Method
from dqvqe.simulate.avqe import AvqeResult
from dqvqe.simulate.avqe import distributed_avqe
from dqvqe.simulate.optimizer import coordinate_descent
from dqvqe.simulate.optimizer import golden_section
from dqvqe.simulate.optimizer import OptimizerOptions
from dqvqe.simulate.rfpe import circuit_outcome_probability
from dqvqe.simulate.rfpe import rfpe_estimate
from dqvqe.simulate.rfpe import rfpe_outcome_probability
from dqvqe.simulate.rfpe import RfpeParams
from dqvqe.simulate.rfpe import RfpeResult
from dqvqe.simulate.stages import collapse
from dqvqe.simulate.stages import sample_expectation
from dqvqe.simulate.stages import sign_and_bound
from dqvqe.simulate.statevector import circuit_unitary
from dqvqe.simulate.statevector import data_unitary
from dqvqe.simulate.statevector import enumerate_branches
from dqvqe.simulate.statevector import run_circuit
from dqvqe.simulate.statevector import SimState
from dqvqe.simulate.statevector import simulate
