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

"""Pauli-string Hamiltonians."""

# pylint: disable=g-importing-member

from dqvqe.hamiltonian.pauli import apply_pauli
from dqvqe.hamiltonian.pauli import exact_ground_energy
from dqvqe.hamiltonian.pauli import expectation
from dqvqe.hamiltonian.pauli import parse_hamiltonian
from dqvqe.hamiltonian.pauli import pauli_expectation
from dqvqe.hamiltonian.pauli import PauliHamiltonian
from dqvqe.hamiltonian.pauli import PauliString
from dqvqe.hamiltonian.pauli import PauliTerm
from dqvqe.hamiltonian.pauli import read_hamiltonian
from dqvqe.hamiltonian.pauli import to_text
