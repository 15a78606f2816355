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

"""Reflection `I - 2|0..0><0..0|` from native gates."""

from __future__ import annotations

import math

from dqvqe.circuit import circuits
from dqvqe.circuit import gates as gates_lib
from dqvqe.utils import errors

# Above this, the 2^(n-1) - 1 rotations of the ladder get impractical.
MAX_REFLECTION_QUBITS = 16


def _gray_code(k: int) -> list[int]:
  """Non-zero codes of the `k`-bit Gray code, in order."""
  return [i ^ (i >> 1) for i in range(1, 2**k)]


def build_reflection(n: int) -> circuits.Circuit:
  """Builds `Π = I - 2|0^n><0^n|` on monolithic qubits `0..n-1`.

  After flipping every qubit, `Π` is a Z on the last qubit controlled by the
  first `k = n - 1`. That multi-controlled Z is a ladder over the Gray code of
  the controls: a CNOT chain keeps the parity of the current code in its
  leading control, which drives `R(0, 0, ±π/2^(k-1))` on the target (the sign
  alternates with the code weight) next to a `phase` on itself. The rotation
  and the phase make a controlled `diag(1, exp(±iπ/2^(k-1)))`, and the ladder
  adds up to `diag(1, -1)` exactly when every control is set. The chain ends
  on a single bit, so the controls come back untouched and the circuit has no
  global phase.

  Args:
    n: Number of qubits.

  Returns:
    The reflection circuit.
  """
  if not 1 <= n <= MAX_REFLECTION_QUBITS:
    raise errors.ValidationError(
        f'Reflection size must be in [1, {MAX_REFLECTION_QUBITS}], got {n}'
    )
  q = [gates_lib.monolithic(i) for i in range(n)]
  *controls, target = q
  k = len(controls)
  seq: list[gates_lib.Gate] = [gates_lib.x(qi) for qi in q]
  if not k:
    seq.append(gates_lib.z(target))
  else:
    theta = math.pi * 2.0 ** (1 - k)
    # Bit `b` of a code is control `k - 1 - b`; the leading bit holds parity.
    held = [1 << (k - 1 - i) for i in range(k)]
    for code in _gray_code(k):
      lead = k - code.bit_length()
      for b in range(k):
        if (held[lead] ^ code) >> b & 1 and k - 1 - b != lead:
          seq.append(gates_lib.cnot(controls[k - 1 - b], controls[lead]))
          held[lead] ^= 1 << b
      angle = theta if code.bit_count() % 2 else -theta
      rotation = gates_lib.SingleQubit(
          gates_lib.GateName.R, target, (0.0, 0.0, angle)
      )
      seq.append(gates_lib.controlled(rotation, controls[lead]))
      # phase(a) = diag(1, exp(-i a)).
      seq.append(gates_lib.phase(controls[lead], -angle / 2))
  seq.extend(gates_lib.x(qi) for qi in q)
  return circuits.layerize(seq, num_qubits=n)
