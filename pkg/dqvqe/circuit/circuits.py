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

"""Layered circuit."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
import dataclasses
import functools
from typing import Optional

from dqvqe.circuit import gates as gates_lib
from dqvqe.placement import cluster as cluster_lib
from dqvqe.utils import errors

Gate = gates_lib.Gate
QubitId = gates_lib.QubitId
Layer = tuple[Gate, ...]


@dataclasses.dataclass(frozen=True)
class Circuit:
  """Ordered list of layers, each an unordered set of gates.

  Layers are stored canonically sorted (lowest `(qpu, local)` touched first),
  so two circuits with the same gate sets per layer compare equal and iterate
  in the same order.

  Attributes:
    layers: The layers.
    num_qubits: Number of data qubits.
    cluster: If set, qubits are checked against the cluster sizes. Otherwise
      the circuit is monolithic: every qubit is `0:k` with `k < num_qubits`.
  """

  layers: tuple[Layer, ...] = ()
  num_qubits: int = 0
  cluster: Optional[cluster_lib.ClusterSpec] = None

  def __post_init__(self):
    layers = tuple(
        tuple(sorted(layer, key=lambda g: g.sort_key)) for layer in self.layers
    )
    object.__setattr__(self, 'layers', layers)
    for i, layer in enumerate(layers):
      _check_layer(layer, index=i)
      for gate in layer:
        for q in gate.qubits:
          self._check_qubit(q, gate)

  def _check_qubit(self, q: QubitId, gate: Gate) -> None:
    if self.cluster is None:
      ok = q.qpu == 0 and q.local < self.num_qubits
    else:
      ok = (
          q.qpu < self.cluster.num_qpus
          and q.local < self.cluster.qpu_sizes[q.qpu]
      )
    if not ok:
      raise errors.ValidationError(
          f'Qubit {q} of `{gate}` is out of range (num_qubits='
          f'{self.num_qubits}, cluster={self.cluster})'
      )

  @classmethod
  def from_gates(
      cls,
      gates: Iterable[Gate],
      num_qubits: int,
      cluster: Optional[cluster_lib.ClusterSpec] = None,
  ) -> Circuit:
    return layerize(gates, num_qubits=num_qubits, cluster=cluster)

  def __len__(self) -> int:
    return len(self.layers)

  def __iter__(self) -> Iterator[Layer]:
    return iter(self.layers)

  def gates(self) -> Iterator[Gate]:
    """Flat gate sequence (layer by layer)."""
    for layer in self.layers:
      yield from layer

  @functools.cached_property
  def qubits(self) -> tuple[QubitId, ...]:
    """Sorted qubits referenced by the circuit."""
    return tuple(sorted({q for g in self.gates() for q in g.qubits}))

  @functools.cached_property
  def num_params(self) -> int:
    """Number of symbolic parameters (`1 + max index`)."""
    indices = [
        p.index
        for g in self.gates()
        for p in g.params
        if isinstance(p, gates_lib.Param)
    ]
    return max(indices) + 1 if indices else 0

  @property
  def is_unitary(self) -> bool:
    return all(g.is_unitary for g in self.gates())

  def replace(self, **kwargs) -> Circuit:
    return dataclasses.replace(self, **kwargs)

  def bind(self, values: Sequence[float]) -> Circuit:
    """Substitutes symbolic parameters `$k` with `values[k]`."""
    if len(values) < self.num_params:
      raise errors.ValidationError(
          f'Circuit has {self.num_params} parameters, got {len(values)} values.'
      )
    return self.replace(
        layers=tuple(tuple(g.bind(values) for g in l) for l in self.layers)
    )

  def concat(self, *others: Circuit) -> Circuit:
    """Appends the layers of `others` after `self`."""
    layers = list(self.layers)
    num_qubits = self.num_qubits
    for other in others:
      layers.extend(other.layers)
      num_qubits = max(num_qubits, other.num_qubits)
    cluster = self.cluster or next((o.cluster for o in others), None)
    return Circuit(tuple(layers), num_qubits=num_qubits, cluster=cluster)

  def map_qubits(
      self,
      fn,
      *,
      cluster: Optional[cluster_lib.ClusterSpec] = None,
  ) -> Circuit:
    """Relabels every qubit with `fn` (layer structure is kept)."""
    return Circuit(
        tuple(tuple(g.map_qubits(fn) for g in l) for l in self.layers),
        num_qubits=self.num_qubits,
        cluster=cluster,
    )

  def __str__(self) -> str:
    from dqvqe.circuit import text_format  # pylint: disable=g-import-not-at-top

    return text_format.to_text(self)


def _check_layer(layer: Layer, *, index: int) -> None:
  seen = set()
  for gate in layer:
    for q in gate.qubits:
      if q in seen:
        raise errors.ValidationError(
            f'Qubit {q} appears in more than one gate of layer {index}: '
            f'{[str(g) for g in layer]}'
        )
      seen.add(q)


def layerize(
    gates: Iterable[Gate],
    *,
    num_qubits: int,
    cluster: Optional[cluster_lib.ClusterSpec] = None,
) -> Circuit:
  """Greedy ASAP layering.

  Each gate goes in the earliest layer after every previous gate touching one
  of its qubits or classical registers.

  Args:
    gates: Flat gate sequence.
    num_qubits: Number of data qubits.
    cluster: Optional cluster to check qubit ranges against.

  Returns:
    The layered circuit.
  """
  last_layer: dict[QubitId | str, int] = {}
  layers: list[list[Gate]] = []
  for gate in gates:
    deps = [*gate.qubits, *gate.registers_read, *gate.registers_written]
    index = 1 + max((last_layer.get(d, -1) for d in deps), default=-1)
    if index == len(layers):
      layers.append([])
    layers[index].append(gate)
    for d in deps:
      last_layer[d] = index
  return Circuit(
      tuple(tuple(l) for l in layers), num_qubits=num_qubits, cluster=cluster
  )


def dagger(c: Circuit) -> Circuit:
  """Inverse circuit: layers reversed, every gate replaced by its adjoint."""
  for gate in c.gates():
    if not gate.is_unitary:
      raise errors.ValidationError(
          f'Cannot invert non-unitary gate `{gate}`.'
      )
  return c.replace(
      layers=tuple(
          tuple(g.adjoint() for g in layer) for layer in reversed(c.layers)
      )
  )


def lift_control(c: Circuit, ctl: QubitId) -> Circuit:
  """Adds `ctl` as an extra control to every gate of `c`.

  `X` becomes `CNOT`, `CNOT` becomes a control-control `X`,... The result is
  re-layered since `ctl` now appears in every gate.

  Args:
    c: Unitary circuit.
    ctl: New control, not used by `c`.

  Returns:
    The controlled circuit.
  """
  if ctl in c.qubits:
    raise errors.ValidationError(
        f'Control {ctl} is already used by the circuit.'
    )
  lifted = []
  for gate in c.gates():
    if not gate.is_unitary:
      raise errors.ValidationError(f'Cannot control non-unitary gate `{gate}`.')
    lifted.append(gates_lib.Controlled(gate, ctl))
  num_qubits = c.num_qubits
  if c.cluster is None:
    num_qubits = max(num_qubits, ctl.local + 1)
  return layerize(lifted, num_qubits=num_qubits, cluster=c.cluster)


def single_layer(
    gates: Iterable[Gate],
    *,
    num_qubits: int,
    cluster: Optional[cluster_lib.ClusterSpec] = None,
) -> Circuit:
  """Circuit made of one layer (empty circuit if `gates` is empty)."""
  gates = tuple(gates)
  layers = (gates,) if gates else ()
  return Circuit(layers, num_qubits=num_qubits, cluster=cluster)
