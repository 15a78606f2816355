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

"""Rewrites a monolithic circuit for a cluster with cat-entanglement.

Every controlled gate whose control `c` sits on another QPU than its target
opens a session with a pair of comm qubits (`e1` next to `c`, `e2` next to the
target):

```
entgen e1 e2
cx c e1
measure e1 -> r1
ccomm S -> T r1 ; if r1 x e1
if r1 x e2                     # e2 now mirrors c
<body, controlled by e2>
h e2
measure e2 -> r2
if r2 x e2 ; ccomm T -> S r2
if r2 z c
```

The body holds the gate plus the later gates with the same control and a
target on the same QPU that can be moved up without crossing any other gate
touching their qubits. Both comm qubits end in |0> so the next session can
reuse them.

Sessions of the same layer run side by side, in blocks that use at most the
comm qubits reserved on each QPU.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
import dataclasses
import re

from dqvqe.circuit import circuits
from dqvqe.circuit import gates as gates_lib
from dqvqe.remap import qubit_map as qubit_map_lib
from dqvqe.utils import errors
from dqvqe.utils.status_utils import status

Gate = gates_lib.Gate
QubitId = gates_lib.QubitId

_REGISTER = re.compile(r'c(\d+)')


def max_register_index(c: circuits.Circuit) -> int:
  """Highest `c<k>` register index used by `c` (-1 if none)."""
  indices = [-1]
  for g in c.gates():
    for r in (*g.registers_read, *g.registers_written):
      if m := _REGISTER.fullmatch(r):
        indices.append(int(m.group(1)))
  return max(indices)


def is_remote(gate: Gate) -> bool:
  """Whether `gate` is controlled from another QPU than its target's."""
  return isinstance(gate, gates_lib.Controlled) and any(
      c.qpu != gate.target.qpu for c in gate.controls
  )


def _series_scan(
    layers: Sequence[Sequence[Gate]],
    after_layer: int,
    remote_qpu: int,
    control: QubitId,
    dirty: Iterable[QubitId] = (),
) -> list[tuple[int, Gate]]:
  """Gates after `after_layer` that can share the session of `control`."""
  dirty = set(dirty)
  found = []
  for l in range(after_layer + 1, len(layers)):
    for gate in layers[l]:
      touches_control = control in gate.qubits
      foldable = (
          isinstance(gate, gates_lib.Controlled)
          and isinstance(gate.inner, gates_lib.SingleQubit)
          and gate.control == control
          and gate.target.qpu == remote_qpu
          and gate.target not in dirty
      )
      if foldable:
        found.append((l, gate))
      elif touches_control:
        return found
      else:
        dirty.update(gate.qubits)
  return found


def get_series_c_gates(
    c: circuits.Circuit,
    after_layer: int,
    remote_qpu: int,
    control: QubitId,
) -> list[Gate]:
  """Later single-control gates sharing `control` with a target on `remote_qpu`.

  The scan stops at the first other gate touching `control`. A gate is skipped
  (and its target blocked) when an earlier unmatched gate touches its target.

  Args:
    c: Circuit, addressed on the cluster.
    after_layer: Index of the layer holding the session's first gate.
    remote_qpu: QPU of the targets.
    control: The shared control.

  Returns:
    The gates, in layer order.
  """
  others = [
      q
      for g in c.layers[after_layer]
      if control not in g.qubits
      for q in g.qubits
  ]
  scan = _series_scan(c.layers, after_layer, remote_qpu, control, others)
  return [g for _, g in scan]


@dataclasses.dataclass
class _Session:
  control: QubitId
  target_qpu: int
  e1: QubitId
  e2: QubitId
  r1: str
  r2: str
  folded: list[Gate] = dataclasses.field(default_factory=list)

  @property
  def source_qpu(self) -> int:
    return self.control.qpu


@dataclasses.dataclass
class _Block:
  """Sessions sharing the same stage layers."""

  pool: dict[int, list[QubitId]]
  gates: list[Gate] = dataclasses.field(default_factory=list)
  sessions: list[_Session] = dataclasses.field(default_factory=list)

  def can_take(self, gate: gates_lib.Controlled) -> bool:
    needed: dict[int, int] = {}
    for c in gate.controls:
      if c.qpu != gate.target.qpu:
        needed[c.qpu] = needed.get(c.qpu, 0) + 1
        needed[gate.target.qpu] = needed.get(gate.target.qpu, 0) + 1
    return all(len(self.pool.get(j, ())) >= k for j, k in needed.items())


class _Remapper:
  """Mutable state of one `distributed_remap` call."""

  def __init__(
      self,
      c: circuits.Circuit,
      qmap: qubit_map_lib.QubitMap,
      first_register: int,
  ):
    self.qmap = qmap
    self.layers = [[g.map_qubits(qmap) for g in layer] for layer in c.layers]
    self.out: list[list[Gate]] = []
    self.next_register = first_register
    self.num_sessions = 0

  def register(self) -> str:
    name = f'c{self.next_register}'
    self.next_register += 1
    return name

  def new_block(self) -> _Block:
    return _Block(pool={j: list(qs) for j, qs in self.qmap.comm.items()})

  def run(self) -> None:
    for l in range(len(self.layers)):
      layer = self.layers[l]
      if not layer:
        continue  # Everything was folded into earlier sessions.
      local = [g for g in layer if not is_remote(g)]
      block = self.new_block()
      for gate in (g for g in layer if is_remote(g)):
        if not block.can_take(gate):
          if block.sessions:
            self.flush(block, l, local)
            local = []
            block = self.new_block()
          if not block.can_take(gate):
            raise errors.ValidationError(
                f'Not enough comm qubits for `{gate}`: reserved'
                f' {dict(self.qmap.comm)}'
            )
        self.open_sessions(block, gate)
      if block.sessions:
        self.flush(block, l, local)
      elif local:
        self.out.append(local)

  def open_sessions(self, block: _Block, gate: gates_lib.Controlled) -> None:
    block.gates.append(gate)
    for c in gate.controls:
      if c.qpu == gate.target.qpu:
        continue
      block.sessions.append(
          _Session(
              control=c,
              target_qpu=gate.target.qpu,
              e1=block.pool[c.qpu].pop(0),
              e2=block.pool[gate.target.qpu].pop(0),
              r1=self.register(),
              r2=self.register(),
          )
      )

  def fold(self, block: _Block, l: int) -> None:
    """Moves later gates into the single-control sessions of `block`."""
    folded = []
    for s, gate in zip(_single_control_sessions(block), block.gates):
      if s is None:
        continue
      others = [q for g in self.layers[l] if g is not gate for q in g.qubits]
      found = _series_scan(self.layers, l, s.target_qpu, s.control, others)
      s.folded = [g for _, g in found]
      folded.extend(found)
    for l2, g in folded:
      self.layers[l2].remove(g)

  def flush(self, block: _Block, l: int, local: list[Gate]) -> None:
    self.fold(block, l)
    sessions = block.sessions
    self.num_sessions += len(sessions)

    pre = []
    used = {q for g in self.out[-1] for q in g.qubits} if self.out else set()
    for s in sessions:
      pair = gates_lib.EntGen(s.e1, s.e2)
      if self.out and s.e1 not in used and s.e2 not in used:
        self.out[-1].append(pair)
      else:
        pre.append(pair)
    if pre:
      self.out.append(pre)

    def cc(gate: gates_lib.SingleQubit, reg: str) -> Gate:
      return gates_lib.ClassicallyControlled(gate, reg)

    self.out.append(local + [gates_lib.cnot(s.control, s.e1) for s in sessions])
    self.out.append([gates_lib.Measure(s.e1, s.r1) for s in sessions])
    self.out.append(
        [
            g
            for s in sessions
            for g in (
                gates_lib.ClassicalComm(s.source_qpu, s.target_qpu, s.r1),
                cc(gates_lib.x(s.e1), s.r1),
            )
        ]
    )
    self.out.append([cc(gates_lib.x(s.e2), s.r1) for s in sessions])

    # Body: the block gates, then the folded ones.
    mirror = {(s.control, s.target_qpu): s.e2 for s in sessions}
    self.out.append([_through_mirror(g, mirror) for g in block.gates])
    depth = max(len(s.folded) for s in sessions)
    for k in range(depth):
      self.out.append(
          [
              _through_mirror(s.folded[k], mirror)
              for s in sessions
              if k < len(s.folded)
          ]
      )

    self.out.append([gates_lib.h(s.e2) for s in sessions])
    self.out.append([gates_lib.Measure(s.e2, s.r2) for s in sessions])
    self.out.append(
        [
            g
            for s in sessions
            for g in (
                cc(gates_lib.x(s.e2), s.r2),
                gates_lib.ClassicalComm(s.target_qpu, s.source_qpu, s.r2),
            )
        ]
    )
    self.out.append([cc(gates_lib.z(s.control), s.r2) for s in sessions])


def _single_control_sessions(block: _Block) -> list[_Session | None]:
  """Session of each block gate when it has a single control (else None)."""
  out = []
  sessions = iter(block.sessions)
  for gate in block.gates:
    remote = [c for c in gate.controls if c.qpu != gate.target.qpu]
    mine = [next(sessions) for _ in remote]
    out.append(mine[0] if len(gate.controls) == 1 else None)
  return out


def _through_mirror(
    gate: gates_lib.Controlled, mirror: dict[tuple[QubitId, int], QubitId]
) -> Gate:
  controls = tuple(
      mirror.get((c, gate.target.qpu), c) for c in gate.controls
  )
  return gate.with_controls(controls)


def distributed_remap(
    c: circuits.Circuit,
    qmap: qubit_map_lib.QubitMap,
    *,
    first_register: int | None = None,
) -> circuits.Circuit:
  """Rewrites monolithic `c` on the cluster of `qmap`.

  Local gates are relabelled. Controlled gates across QPUs are replaced by
  cat-entanglement sessions (see module docstring).

  Args:
    c: Monolithic circuit (qubit `0:n` is the QPE qubit).
    qmap: Layout of the qubits.
    first_register: Index of the first new register. Defaults to one past the
      highest register of `c`.

  Returns:
    The distributed circuit.
  """
  if c.cluster is not None:
    raise errors.ValidationError('Expected a monolithic circuit.')
  if first_register is None:
    first_register = max_register_index(c) + 1
  remapper = _Remapper(c, qmap, first_register)
  remapper.run()
  status.debug(
      f'Remapped {len(c)} layers into {len(remapper.out)} layers with'
      f' {remapper.num_sessions} cat sessions.'
  )
  return circuits.Circuit(
      tuple(tuple(layer) for layer in remapper.out if layer),
      num_qubits=c.num_qubits,
      cluster=qmap.cluster,
  )


def count_entgen(c: circuits.Circuit) -> int:
  return sum(isinstance(g, gates_lib.EntGen) for g in c.gates())
