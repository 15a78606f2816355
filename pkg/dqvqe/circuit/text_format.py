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

"""Line-oriented circuit text format.

```
# Comment
qubits 3
h 0:0
cx 0:0 1:0
rz 1:1 0.3
ry 0:1 $0
measure 0:1 -> c0
if c0 x 1:1
entgen 0:4 1:4
ccomm 0 -> 1 c0
```

Gates are layered ASAP in file order. A file containing `---` lines uses
explicit layers instead (the gates between two `---` form one layer). This is
what `to_text` emits, so distributed circuits keep their exact layering.
"""

from __future__ import annotations

import dataclasses
import functools
import os
from typing import Any, Optional

from dqvqe.circuit import circuits
from dqvqe.circuit import gates as gates_lib
from dqvqe.placement import cluster as cluster_lib
from dqvqe.utils import errors
from etils import epath
from etils import epy
import lark

_LAYER_BREAK = '---'


@dataclasses.dataclass(frozen=True)
class _Header:
  num_qubits: int


class _LayerBreak:
  pass


@dataclasses.dataclass(frozen=True)
class _ClusterDecl:
  sizes: tuple[int, ...]


def parse_circuit(
    text: str,
    *,
    cluster: Optional[cluster_lib.ClusterSpec] = None,
) -> circuits.Circuit:
  """Parses the circuit text format.

  Args:
    text: File content.
    cluster: If given, qubits are range-checked against it (distributed
      circuit). Otherwise the circuit must be monolithic.

  Returns:
    The layered circuit.

  Raises:
    ParseError: On malformed lines or a missing `qubits` header.
  """
  num_qubits = None
  declared_cluster = None
  layers: list[list[gates_lib.Gate]] = [[]]
  explicit = False
  for lineno, line in enumerate(text.splitlines(), start=1):
    line = line.split('#', 1)[0].strip()
    if not line:
      continue
    try:
      item = parse_line(line)
      if num_qubits is None and not isinstance(item, _Header):
        raise errors.ParseError('Missing `qubits <n>` header.')
      if isinstance(item, _Header):
        if num_qubits is not None:
          raise errors.ParseError('Duplicate `qubits` header.')
        num_qubits = item.num_qubits
      elif isinstance(item, _ClusterDecl):
        declared_cluster = cluster_lib.ClusterSpec(item.sizes)
      elif isinstance(item, _LayerBreak):
        explicit = True
        layers.append([])
      else:
        layers[-1].append(item)
    except errors.ParseError as e:
      epy.reraise(e, prefix=f'line {lineno}: ')
  if num_qubits is None:
    raise errors.ParseError('Empty circuit file: missing `qubits <n>` header.')
  cluster = cluster or declared_cluster

  if explicit:
    layers = [l for l in layers if l]
    return circuits.Circuit(
        tuple(tuple(l) for l in layers), num_qubits=num_qubits, cluster=cluster
    )
  return circuits.layerize(layers[0], num_qubits=num_qubits, cluster=cluster)


def read_circuit(
    path: epath.PathLike,
    *,
    cluster: Optional[cluster_lib.ClusterSpec] = None,
) -> circuits.Circuit:
  """Reads a circuit file."""
  path = epath.Path(path)
  try:
    return parse_circuit(path.read_text(), cluster=cluster)
  except errors.ParseError as e:
    epy.reraise(e, prefix=f'{os.fspath(path)}: ')


def to_text(c: circuits.Circuit, *, layered: bool = True) -> str:
  """Serializes `c`. Inverse of `parse_circuit`."""
  lines = [f'qubits {c.num_qubits}']
  if c.cluster is not None:
    lines.append(f'cluster {c.cluster}')
  for i, layer in enumerate(c.layers):
    if layered and i:
      lines.append(_LAYER_BREAK)
    lines.extend(str(g) for g in layer)
  return '\n'.join(lines) + '\n'


def parse_line(line: str) -> Any:
  """Parses a single (comment-free) line."""
  try:
    tree = _circuit_parser().parse(line)
    return _LineTransformer().transform(tree)
  except lark.exceptions.VisitError as e:
    raise errors.ParseError(f'Invalid gate {line!r}: {e.orig_exc}') from e
  except lark.exceptions.LarkError as e:
    raise errors.ParseError(f'Could not parse {line!r}: {e}') from e


def parse_gate(line: str) -> gates_lib.Gate:
  """Parses a single gate (e.g. `cx 0:0 1:0`)."""
  gate = parse_line(line)
  if not isinstance(gate, gates_lib.Gate):
    raise errors.ParseError(f'Expected a gate, got {line!r}')
  return gate


@functools.cache
def _circuit_parser() -> lark.Lark:
  grammar_path = epath.resource_path('dqvqe.circuit') / 'circuit_grammar.lark'
  return lark.Lark(
      grammar=grammar_path.read_text(),
      parser='lalr',
  )


class _LineTransformer(lark.Transformer):
  """Transforms a Lark parse-tree into a gate (or header)."""

  @staticmethod
  def header(args: list[Any]) -> _Header:
    return _Header(int(args[0]))

  @staticmethod
  def cluster_decl(args: list[int]) -> _ClusterDecl:
    return _ClusterDecl(tuple(args))

  @staticmethod
  def layer_break(_) -> _LayerBreak:
    return _LayerBreak()

  @staticmethod
  def QUBIT(args: str) -> gates_lib.QubitId:
    return gates_lib.QubitId.parse(str(args))

  @staticmethod
  def REGISTER(args: str) -> str:
    return str(args)

  @staticmethod
  def INT(args: str) -> int:
    return int(args)

  @staticmethod
  def number(args: list[str]) -> float:
    return float(args[0])

  @staticmethod
  def symbol(args: list[int]) -> gates_lib.Param:
    return gates_lib.Param(args[0])

  @staticmethod
  def negated_symbol(args: list[int]) -> gates_lib.Param:
    return -gates_lib.Param(args[0])

  @staticmethod
  def scaled_symbol(args: list[Any]) -> gates_lib.Param:
    scale, index = args
    return gates_lib.Param(index, float(scale))

  @staticmethod
  def measure(args: list[Any]) -> gates_lib.Measure:
    return gates_lib.Measure(*args)

  @staticmethod
  def entgen(args: list[Any]) -> gates_lib.EntGen:
    return gates_lib.EntGen(*args)

  @staticmethod
  def ccomm(args: list[Any]) -> gates_lib.ClassicalComm:
    return gates_lib.ClassicalComm(*args)

  @staticmethod
  def conditional(args: list[Any]) -> gates_lib.ClassicallyControlled:
    register, gate = args
    if not isinstance(gate, gates_lib.SingleQubit):
      raise errors.ParseError(
          f'Only single-qubit gates can be classically controlled: {gate}'
      )
    return gates_lib.ClassicallyControlled(gate, register)

  @staticmethod
  def gate(args: list[Any]) -> gates_lib.Gate:
    name, *rest = args
    name = str(name)
    qubits = [a for a in rest if isinstance(a, gates_lib.QubitId)]
    params = tuple(a for a in rest if not isinstance(a, gates_lib.QubitId))
    base_name = name.lstrip('c')
    num_controls = len(name) - len(base_name)
    if len(qubits) != num_controls + 1:
      raise errors.ParseError(
          f'`{name}` expects {num_controls + 1} qubit(s), got {len(qubits)}'
      )
    *controls, target = qubits
    base = gates_lib.SingleQubit(base_name, target, params)
    return gates_lib.controlled(base, *controls)
