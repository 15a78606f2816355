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

"""Gate types of the circuit IR.

Qubits are addressed as `QubitId(qpu, local)`. A monolithic circuit uses
`qpu=0` throughout.

The gate set is closed:

* `SingleQubit`: X, Y, Z, H, Rx, Ry, Rz, R(l1, l2, l3), Z(angle) (`phase`)
* `Controlled`: any gate with one more control. Control-control gates are
  `Controlled(Controlled(...))`.
* `Measure`, `ClassicallyControlled`: mid-circuit measurement and feed-forward
* `EntGen`, `ClassicalComm`: the two non-local primitives
"""

from __future__ import annotations

import abc
import dataclasses
import enum
from typing import Any, ClassVar, Union

from dqvqe.utils import errors


@dataclasses.dataclass(frozen=True, order=True)
class QubitId:
  """Cluster-addressed qubit.

  Attributes:
    qpu: QPU index (0-based).
    local: Qubit index within that QPU (0-based).
  """

  qpu: int
  local: int

  def __post_init__(self):
    if self.qpu < 0 or self.local < 0:
      raise errors.ValidationError(f'Negative qubit id: {self!r}')

  def __str__(self) -> str:
    return f'{self.qpu}:{self.local}'

  @classmethod
  def parse(cls, text: str) -> QubitId:
    qpu, _, local = text.partition(':')
    try:
      return cls(int(qpu), int(local))
    except ValueError as e:
      raise errors.ParseError(
          f'Invalid qubit {text!r}, expected `<qpu>:<local>`'
      ) from e


def monolithic(index: int) -> QubitId:
  """Qubit `index` of a monolithic (single QPU) circuit."""
  return QubitId(0, index)


@dataclasses.dataclass(frozen=True, order=True)
class Param:
  """Symbolic parameter `scale * λ[index]` (written `$index`)."""

  index: int
  scale: float = 1.0

  def __neg__(self) -> Param:
    return Param(self.index, -self.scale)

  def bind(self, values) -> float:
    return self.scale * float(values[self.index])

  def __str__(self) -> str:
    if self.scale == 1.0:
      return f'${self.index}'
    elif self.scale == -1.0:
      return f'-${self.index}'
    return f'{self.scale!r}*${self.index}'


Angle = Union[float, Param]


class GateName(enum.StrEnum):
  """Single-qubit gate names."""

  X = 'x'
  Y = 'y'
  Z = 'z'
  H = 'h'
  RX = 'rx'
  RY = 'ry'
  RZ = 'rz'
  R = 'r'
  PHASE = 'phase'  # Z(angle) = diag(1, exp(-i angle))

  @property
  def num_params(self) -> int:
    return _NUM_PARAMS.get(self, 0)

  @property
  def is_self_adjoint(self) -> bool:
    return self.num_params == 0


_NUM_PARAMS = {
    GateName.RX: 1,
    GateName.RY: 1,
    GateName.RZ: 1,
    GateName.PHASE: 1,
    GateName.R: 3,
}


class Gate(abc.ABC):
  """Base class of all gates."""

  is_unitary: ClassVar[bool] = True

  @property
  @abc.abstractmethod
  def qubits(self) -> tuple[QubitId, ...]:
    """Qubits touched by the gate."""

  @property
  def registers_read(self) -> tuple[str, ...]:
    return ()

  @property
  def registers_written(self) -> tuple[str, ...]:
    return ()

  @property
  def qpus(self) -> tuple[int, ...]:
    """Sorted QPUs involved in the gate."""
    return tuple(sorted({q.qpu for q in self.qubits}))

  @property
  def sort_key(self) -> tuple[Any, ...]:
    """Deterministic order inside a layer: lowest qubit touched first."""
    return (min(self.qubits), type(self).__name__, repr(self))

  def adjoint(self) -> Gate:
    raise errors.ValidationError(f'{self} is not unitary, it has no adjoint.')

  def map_qubits(self, fn) -> Gate:
    """Returns the gate with every qubit replaced by `fn(qubit)`."""
    raise NotImplementedError

  def bind(self, values) -> Gate:
    """Substitutes symbolic parameters."""
    return self

  @property
  def params(self) -> tuple[Angle, ...]:
    return ()


@dataclasses.dataclass(frozen=True)
class SingleQubit(Gate):
  """Single qubit gate."""

  name: GateName
  target: QubitId
  params: tuple[Angle, ...] = ()

  def __post_init__(self):
    object.__setattr__(self, 'name', GateName(self.name))
    object.__setattr__(self, 'params', tuple(self.params))
    if len(self.params) != self.name.num_params:
      raise errors.ValidationError(
          f'Gate {self.name} expects {self.name.num_params} parameter(s), got'
          f' {self.params}'
      )

  @property
  def qubits(self) -> tuple[QubitId, ...]:
    return (self.target,)

  def adjoint(self) -> SingleQubit:
    if self.name.is_self_adjoint:
      return self
    if self.name == GateName.R:
      l1, l2, l3 = self.params
      return SingleQubit(self.name, self.target, (-l3, -l2, -l1))
    return SingleQubit(self.name, self.target, tuple(-p for p in self.params))

  def map_qubits(self, fn) -> SingleQubit:
    return dataclasses.replace(self, target=fn(self.target))

  def bind(self, values) -> SingleQubit:
    params = tuple(
        p.bind(values) if isinstance(p, Param) else p for p in self.params
    )
    return dataclasses.replace(self, params=params)

  def __str__(self) -> str:
    return _format(str(self.name), self.qubits, self.params)


@dataclasses.dataclass(frozen=True)
class Controlled(Gate):
  """`inner` controlled by one more qubit.

  Attributes:
    inner: Controlled gate (`SingleQubit` or `Controlled` for CC gates).
    control: The added control.
  """

  inner: SingleQubit | Controlled
  control: QubitId

  def __post_init__(self):
    if self.control in self.inner.qubits:
      raise errors.ValidationError(
          f'Control {self.control} collides with the gate qubits: {self}'
      )

  @property
  def target(self) -> QubitId:
    return self.inner.target

  @property
  def controls(self) -> tuple[QubitId, ...]:
    """All controls, outermost first."""
    if isinstance(self.inner, Controlled):
      return (self.control,) + self.inner.controls
    return (self.control,)

  @property
  def base(self) -> SingleQubit:
    """The innermost single-qubit gate."""
    if isinstance(self.inner, Controlled):
      return self.inner.base
    return self.inner

  @property
  def qubits(self) -> tuple[QubitId, ...]:
    return self.controls + (self.target,)

  @property
  def params(self) -> tuple[Angle, ...]:
    return self.base.params

  def adjoint(self) -> Controlled:
    return Controlled(self.inner.adjoint(), self.control)

  def map_qubits(self, fn) -> Controlled:
    return Controlled(self.inner.map_qubits(fn), fn(self.control))

  def bind(self, values) -> Controlled:
    return Controlled(self.inner.bind(values), self.control)

  def with_controls(self, controls: tuple[QubitId, ...]) -> Controlled:
    """Same base gate, new controls (outermost first)."""
    return controlled(self.base, *controls)

  def __str__(self) -> str:
    name = 'c' * len(self.controls) + str(self.base.name)
    return _format(name, self.qubits, self.params)


def controlled(gate: SingleQubit | Controlled, *controls: QubitId) -> Gate:
  """Adds `controls` (outermost first) to `gate`."""
  for control in reversed(controls):
    gate = Controlled(gate, control)
  return gate


@dataclasses.dataclass(frozen=True)
class Measure(Gate):
  """Z-basis measurement of `target` into classical register `dest`."""

  is_unitary: ClassVar[bool] = False

  target: QubitId
  dest: str

  @property
  def qubits(self) -> tuple[QubitId, ...]:
    return (self.target,)

  @property
  def registers_written(self) -> tuple[str, ...]:
    return (self.dest,)

  def map_qubits(self, fn) -> Measure:
    return dataclasses.replace(self, target=fn(self.target))

  def __str__(self) -> str:
    return f'measure {self.target} -> {self.dest}'


@dataclasses.dataclass(frozen=True)
class ClassicallyControlled(Gate):
  """`inner` applied iff register `condition` holds 1."""

  is_unitary: ClassVar[bool] = False

  inner: SingleQubit
  condition: str

  @property
  def target(self) -> QubitId:
    return self.inner.target

  @property
  def qubits(self) -> tuple[QubitId, ...]:
    return (self.inner.target,)

  @property
  def registers_read(self) -> tuple[str, ...]:
    return (self.condition,)

  def map_qubits(self, fn) -> ClassicallyControlled:
    return dataclasses.replace(self, inner=self.inner.map_qubits(fn))

  def __str__(self) -> str:
    return f'if {self.condition} {self.inner}'


@dataclasses.dataclass(frozen=True)
class EntGen(Gate):
  """Generates the Bell pair (|00> + |11>) / sqrt(2) on `a` and `b`."""

  is_unitary: ClassVar[bool] = False

  a: QubitId
  b: QubitId

  def __post_init__(self):
    if self.a == self.b:
      raise errors.ValidationError(f'EntGen on a single qubit: {self.a}')

  @property
  def qubits(self) -> tuple[QubitId, ...]:
    return (self.a, self.b)

  def map_qubits(self, fn) -> EntGen:
    return EntGen(fn(self.a), fn(self.b))

  def __str__(self) -> str:
    return f'entgen {self.a} {self.b}'


@dataclasses.dataclass(frozen=True)
class ClassicalComm(Gate):
  """Sends classical register `register` from `src` QPU to `dst` QPU."""

  is_unitary: ClassVar[bool] = False

  src: int
  dst: int
  register: str

  @property
  def qubits(self) -> tuple[QubitId, ...]:
    return ()

  @property
  def qpus(self) -> tuple[int, ...]:
    return tuple(sorted({self.src, self.dst}))

  @property
  def registers_read(self) -> tuple[str, ...]:
    return (self.register,)

  @property
  def sort_key(self) -> tuple[Any, ...]:
    return (QubitId(self.src, 0), type(self).__name__, repr(self))

  def map_qubits(self, fn) -> ClassicalComm:
    return self

  def __str__(self) -> str:
    return f'ccomm {self.src} -> {self.dst} {self.register}'


def _format(name: str, qubits, params) -> str:
  parts = [name, *(str(q) for q in qubits)]
  parts.extend(p if isinstance(p, Param) else repr(float(p)) for p in params)
  return ' '.join(str(p) for p in parts)


# Shortcuts used across the codebase.


def x(q: QubitId) -> SingleQubit:
  return SingleQubit(GateName.X, q)


def h(q: QubitId) -> SingleQubit:
  return SingleQubit(GateName.H, q)


def z(q: QubitId) -> SingleQubit:
  return SingleQubit(GateName.Z, q)


def phase(q: QubitId, angle: Angle) -> SingleQubit:
  return SingleQubit(GateName.PHASE, q, (angle,))


def cnot(control: QubitId, target: QubitId) -> Controlled:
  return Controlled(x(target), control)
