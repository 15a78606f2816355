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

"""Circuit IR."""

# pylint: disable=g-importing-member

from dqvqe.circuit import matrices
from dqvqe.circuit.circuits import Circuit
from dqvqe.circuit.circuits import dagger
from dqvqe.circuit.circuits import layerize
from dqvqe.circuit.circuits import lift_control
from dqvqe.circuit.circuits import single_layer
from dqvqe.circuit.gates import ClassicalComm
from dqvqe.circuit.gates import ClassicallyControlled
from dqvqe.circuit.gates import cnot
from dqvqe.circuit.gates import controlled
from dqvqe.circuit.gates import Controlled
from dqvqe.circuit.gates import EntGen
from dqvqe.circuit.gates import Gate
from dqvqe.circuit.gates import GateName
from dqvqe.circuit.gates import h
from dqvqe.circuit.gates import Measure
from dqvqe.circuit.gates import monolithic
from dqvqe.circuit.gates import Param
from dqvqe.circuit.gates import phase
from dqvqe.circuit.gates import QubitId
from dqvqe.circuit.gates import SingleQubit
from dqvqe.circuit.gates import x
from dqvqe.circuit.gates import z
from dqvqe.circuit.text_format import parse_circuit
from dqvqe.circuit.text_format import parse_gate
from dqvqe.circuit.text_format import read_circuit
from dqvqe.circuit.text_format import to_text
