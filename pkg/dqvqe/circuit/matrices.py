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

"""Gate matrices.

Conventions:

* `Rz(t) = diag(exp(-it/2), exp(it/2))` (same for Rx, Ry around their axis)
* `Z(angle) = diag(1, exp(-i angle))`
* `R(l1, l2, l3) = Rz(l3) @ Ry(l2) @ Rz(l1)` (Rz(l1) applied first)
"""

from __future__ import annotations

from collections.abc import Sequence

from dqvqe.circuit import gates as gates_lib
from jaxtyping import Complex
import numpy as np

Matrix2 = Complex[np.ndarray, '2 2']

_SQRT2_INV = 1 / np.sqrt(2)

I = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV

PAULIS = {'I': I, 'X': X, 'Y': Y, 'Z': Z}


def rx(t: float) -> Matrix2:
  c, s = np.cos(t / 2), np.sin(t / 2)
  return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(t: float) -> Matrix2:
  c, s = np.cos(t / 2), np.sin(t / 2)
  return np.array([[c, -s], [s, c]], dtype=complex)


def rz(t: float) -> Matrix2:
  return np.array([[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]])


def phase(angle: float) -> Matrix2:
  return np.array([[1, 0], [0, np.exp(-1j * angle)]])


def rotation(l1: float, l2: float, l3: float) -> Matrix2:
  return rz(l3) @ ry(l2) @ rz(l1)


def single_qubit_matrix(
    name: gates_lib.GateName, params: Sequence[float] = ()
) -> Matrix2:
  """Returns the 2x2 matrix of a bound single qubit gate."""
  if any(isinstance(p, gates_lib.Param) for p in params):
    raise ValueError(f'Unbound parameters for {name}: {params}. Call `bind`.')
  match gates_lib.GateName(name):
    case gates_lib.GateName.X:
      return X
    case gates_lib.GateName.Y:
      return Y
    case gates_lib.GateName.Z:
      return Z
    case gates_lib.GateName.H:
      return H
    case gates_lib.GateName.RX:
      return rx(*params)
    case gates_lib.GateName.RY:
      return ry(*params)
    case gates_lib.GateName.RZ:
      return rz(*params)
    case gates_lib.GateName.PHASE:
      return phase(*params)
    case gates_lib.GateName.R:
      return rotation(*params)
    case _:
      raise ValueError(f'Unknown gate {name!r}')


def kron_all(matrices: Sequence[np.ndarray]) -> np.ndarray:
  """`m0 ⊗ m1 ⊗ ...` (qubit 0 is the most significant)."""
  out = np.eye(1, dtype=complex)
  for m in matrices:
    out = np.kron(out, m)
  return out
