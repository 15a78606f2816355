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

"""Monolithic to cluster qubit layout."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import dataclasses
import json
import os
from typing import Any, Optional

from dqvqe.circuit import gates as gates_lib
from dqvqe.placement import allocation as alloc_lib
from dqvqe.placement import cluster as cluster_lib
from dqvqe.utils import errors
from etils import epath
from etils import epy
import immutabledict

QubitId = gates_lib.QubitId


@dataclasses.dataclass(frozen=True)
class QubitMap:
  """Where the qubits of a monolithic circuit live on the cluster.

  Monolithic qubit `0:i` maps to `data[i]`. The QPE qubit, when present, is
  monolithic qubit `0:n` (`n = len(data)`).

  Attributes:
    cluster: The cluster.
    data: Location of each data qubit.
    qpe: Location of the QPE qubit.
    comm: Reserved entanglement qubits of each QPU.
  """

  cluster: cluster_lib.ClusterSpec
  data: tuple[QubitId, ...]
  qpe: Optional[QubitId] = None
  comm: Mapping[int, tuple[QubitId, ...]] = dataclasses.field(
      default_factory=immutabledict.immutabledict
  )

  def __post_init__(self):
    object.__setattr__(self, 'data', tuple(self.data))
    object.__setattr__(
        self,
        'comm',
        immutabledict.immutabledict(
            {int(k): tuple(v) for k, v in sorted(self.comm.items())}
        ),
    )
    seen = set()
    for q in self.all_qubits:
      if q in seen:
        raise errors.ValidationError(f'Qubit {q} is assigned twice in {self}')
      seen.add(q)
      if (
          q.qpu >= self.cluster.num_qpus
          or q.local >= self.cluster.qpu_sizes[q.qpu]
      ):
        raise errors.ValidationError(
            f'Qubit {q} is outside the cluster {self.cluster}'
        )
    for qpu, qubits in self.comm.items():
      if any(q.qpu != qpu for q in qubits):
        raise errors.ValidationError(
            f'Comm qubits {qubits} must live on QPU {qpu}'
        )

  @property
  def num_data(self) -> int:
    return len(self.data)

  @property
  def all_qubits(self) -> tuple[QubitId, ...]:
    qpe = (self.qpe,) if self.qpe is not None else ()
    comm = tuple(q for qs in self.comm.values() for q in qs)
    return self.data + qpe + comm

  @property
  def comm_qubits(self) -> tuple[QubitId, ...]:
    return tuple(q for qs in self.comm.values() for q in qs)

  @property
  def qpus(self) -> tuple[int, ...]:
    """QPUs holding data or QPE qubits."""
    qpe = (self.qpe,) if self.qpe is not None else ()
    return tuple(sorted({q.qpu for q in self.data + qpe}))

  def __call__(self, q: QubitId) -> QubitId:
    """Physical location of monolithic qubit `q`."""
    if q.qpu != 0:
      raise errors.ValidationError(f'Expected a monolithic qubit, got {q}')
    if q.local < self.num_data:
      return self.data[q.local]
    if q.local == self.num_data and self.qpe is not None:
      return self.qpe
    raise errors.ValidationError(
        f'Qubit {q} is not covered by the map ({self.num_data} data qubits,'
        f' qpe={self.qpe})'
    )

  def to_json(self) -> dict[str, Any]:
    return {
        'cluster': list(self.cluster.qpu_sizes),
        'data': [str(q) for q in self.data],
        'qpe': str(self.qpe) if self.qpe is not None else None,
        'comm': {str(k): [str(q) for q in v] for k, v in self.comm.items()},
    }

  @classmethod
  def from_json(cls, value: dict[str, Any]) -> QubitMap:
    qpe = value.get('qpe')
    return cls(
        cluster=cluster_lib.ClusterSpec(tuple(value['cluster'])),
        data=tuple(QubitId.parse(q) for q in value['data']),
        qpe=QubitId.parse(qpe) if qpe is not None else None,
        comm={
            int(k): tuple(QubitId.parse(q) for q in v)
            for k, v in value.get('comm', {}).items()
        },
    )


def map_to_json(qmap: QubitMap) -> str:
  return json.dumps(qmap.to_json(), indent=2)


def map_from_json(text: str) -> QubitMap:
  try:
    return QubitMap.from_json(json.loads(text))
  except (KeyError, TypeError, json.JSONDecodeError) as e:
    raise errors.ParseError(f'Invalid qubit map json: {e!r}') from e


def read_map(path: epath.PathLike) -> QubitMap:
  path = epath.Path(path)
  try:
    return map_from_json(path.read_text())
  except errors.ParseError as e:
    epy.reraise(e, prefix=f'{os.fspath(path)}: ')


def round_layout(
    round_: Sequence[alloc_lib.AnsatzAllocation],
    cluster: cluster_lib.ClusterSpec,
) -> list[QubitMap]:
  """One `QubitMap` per allocation of a round.

  Each allocation takes, on every QPU of its chain, the next free local
  indices: its data qubits (chain order), then the QPE qubit on the first QPU,
  then 2 comm qubits per QPU when split.

  Args:
    round_: The allocations of one round.
    cluster: The cluster.

  Returns:
    The maps, index-aligned with `round_`.
  """
  offsets = [0] * cluster.num_qpus
  maps = []

  def take(qpu: int, count: int) -> list[QubitId]:
    qubits = [QubitId(qpu, offsets[qpu] + i) for i in range(count)]
    offsets[qpu] += count
    return qubits

  for a in round_:
    data = []
    for j in a.chain:
      data.extend(take(j, a.per_qpu[j]))
    (qpe,) = take(a.qpe_qpu, 1)
    comm = {}
    if a.is_split:
      for j in a.chain:
        comm[j] = tuple(take(j, alloc_lib.COMM_QUBITS_PER_QPU))
    maps.append(QubitMap(cluster=cluster, data=data, qpe=qpe, comm=comm))
  return maps


def single_qpu_map(n: int, *, with_qpe: bool = True) -> QubitMap:
  """Everything on one QPU of `n + 1` qubits (no comm qubits)."""
  cluster = cluster_lib.ClusterSpec((n + int(with_qpe),))
  return QubitMap(
      cluster=cluster,
      data=[QubitId(0, i) for i in range(n)],
      qpe=QubitId(0, n) if with_qpe else None,
  )
