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

"""Monolithic to distributed circuit rewriting."""

# pylint: disable=g-importing-member

from dqvqe.remap.alpha_qpe import build_controlled_pi
from dqvqe.remap.alpha_qpe import build_controlled_u
from dqvqe.remap.alpha_qpe import build_u
from dqvqe.remap.alpha_qpe import distribute_controlled_u
from dqvqe.remap.alpha_qpe import qpe_qubit
from dqvqe.remap.qubit_map import map_from_json
from dqvqe.remap.qubit_map import map_to_json
from dqvqe.remap.qubit_map import QubitMap
from dqvqe.remap.qubit_map import read_map
from dqvqe.remap.qubit_map import round_layout
from dqvqe.remap.qubit_map import single_qpu_map
from dqvqe.remap.reflection import build_reflection
from dqvqe.remap.remapper import count_entgen
from dqvqe.remap.remapper import distributed_remap
from dqvqe.remap.remapper import get_series_c_gates
from dqvqe.remap.remapper import is_remote
