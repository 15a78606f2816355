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

"""Entanglement validation between two parties.

Both parties share `n` pairs and measure their halves in the Z basis. Each
sends `t` of its bits without saying which, then the positions, and checks
the other's bits against its own. A party acks only if both checks pass.
"""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses

from dqvqe.circuit import gates as gates_lib
from dqvqe.netctl import bus as bus_lib
from dqvqe.netctl import messages
from dqvqe.netctl import nodes as nodes_lib
from dqvqe.netctl import trace as trace_lib
from dqvqe.random import streams
from dqvqe.simulate import statevector
import numpy as np

QubitId = gates_lib.QubitId


@dataclasses.dataclass(frozen=True)
class ValidationResult:
  """Outcome of `entanglement_validation`.

  Attributes:
    acks: Verdict of each party.
    reasons: Why a party did not ack (empty if it did).
    trace: Messages and verdicts.
  """

  acks: tuple[bool, bool]
  reasons: tuple[str, str]
  trace: tuple[trace_lib.TraceEvent, ...] = ()

  @property
  def ack(self) -> bool:
    return all(self.acks)


def generate_pairs(
    n: int, rng: np.random.Generator, *, flip_probability: float = 0.0
) -> tuple[tuple[int, ...], tuple[int, ...]]:
  """Measured halves of `n` simulated Bell pairs.

  Args:
    n: Number of pairs.
    rng: Source of the measurement draws and of the noise.
    flip_probability: Chance that the second half of a pair reads flipped.

  Returns:
    The bits of each side.
  """
  a, b = QubitId(0, 0), QubitId(1, 0)
  bits_a, bits_b = [], []
  for _ in range(n):
    state = statevector.SimState([a, b], rng=rng)
    state.apply(gates_lib.EntGen(a, b))
    bits_a.append(state.measure(a))
    bits_b.append(state.measure(b) ^ int(rng.random() < flip_probability))
  return tuple(bits_a), tuple(bits_b)


def _stage(peer: str, *stages: str) -> nodes_lib.Match:
  return lambda m: (
      m.src == peer
      and isinstance(m.payload, messages.EntValidationMsg)
      and m.payload.stage in stages
  )


def validation_exchange(
    node: nodes_lib.Node,
    peer: str,
    bits: Sequence[int],
    checks: int,
    rng: np.random.Generator,
    *,
    corrupt: int = 0,
):
  """One party's side of the validation (a simpy process body).

  Args:
    node: The party.
    peer: Node name of the other party.
    bits: Measured halves of the shared pairs.
    checks: Number of bits disclosed.
    rng: Picks the disclosed positions.
    corrupt: Number of disclosed bits read flipped (fault injection).

  Returns:
    `(ack, reason)`.
  """
  bits = list(bits)
  positions = tuple(
      sorted(int(p) for p in rng.choice(len(bits), size=checks, replace=False))
  )
  for p in positions[:corrupt]:
    bits[p] ^= 1

  node.send(
      peer,
      messages.EntValidationMsg('bits', tuple(bits[p] for p in positions)),
  )
  theirs = yield from node.receive(_stage(peer, 'bits'))
  if theirs is None:
    return _done(node, peer, False, f'bits from {peer} not received')
  node.send(peer, messages.EntValidationMsg('positions', positions))
  where = yield from node.receive(_stage(peer, 'positions'))
  if where is None:
    return _done(node, peer, False, f'positions from {peer} not received')

  values, their_positions = theirs.payload.values, where.payload.values
  ok = len(values) == len(their_positions) == checks and all(
      bits[p] == v for p, v in zip(their_positions, values)
  )
  node.send(peer, messages.EntValidationMsg('ack' if ok else 'nack'))
  verdict = yield from node.receive(_stage(peer, 'ack', 'nack'))
  if verdict is None:
    return _done(node, peer, False, f'verdict from {peer} not received')
  if not ok:
    return _done(node, peer, False, f'bits disagree with {peer}')
  if verdict.payload.stage != 'ack':
    return _done(node, peer, False, f'{peer} found disagreeing bits')
  return _done(node, peer, True, '')


def _done(node, peer: str, ack: bool, reason: str) -> tuple[bool, str]:
  node.log('validation', peer=peer, ack=ack, reason=reason)
  return ack, reason


class _Party(nodes_lib.Node):
  role = nodes_lib.NodeRole.CONTROLLER

  def __init__(self, network, qpu, *, peer, bits, checks, rng, corrupt, **kw):
    super().__init__(network, qpu, **kw)
    self.args = (peer, bits, checks, rng)
    self.corrupt = corrupt
    self.result = (False, 'did not finish')

  def run(self):
    self.result = yield from validation_exchange(
        self, *self.args, corrupt=self.corrupt
    )


def entanglement_validation(
    n: int,
    t: int,
    *,
    seed: int = 0,
    flip_probability: float = 0.0,
    corrupt: int = 0,
    drop_messages: Sequence[int] = (),
    latency: float = 0.0,
    timeout: float = 10.0,
) -> ValidationResult:
  """Runs the validation between two parties on a private bus.

  Args:
    n: Shared pairs.
    t: Disclosed bits per party (`1 <= t < n`).
    seed: Master seed.
    flip_probability: Noise on the second party's halves.
    corrupt: Disclosed bits of the second party read flipped.
    drop_messages: Sequence numbers of lost messages.
    latency: Link latency.
    timeout: Wait for each expected message.

  Returns:
    The verdicts.
  """
  if not 1 <= t < n:
    raise ValueError(f'Expected 1 <= t < n, got n={n}, t={t}')
  network = bus_lib.Network(
      latency=bus_lib.Latency(default=latency), drop_messages=drop_messages
  )
  bits = generate_pairs(
      n,
      streams.NETWORK.np_rng(seed, key='pairs/0-1'),
      flip_probability=flip_probability,
  )
  role = nodes_lib.NodeRole.CONTROLLER
  names = [nodes_lib.node_name(role, i) for i in (0, 1)]
  parties = [
      _Party(
          network,
          i,
          peer=names[1 - i],
          bits=bits[i],
          checks=t,
          rng=streams.NETWORK.np_rng(seed, key=f'validation/{names[i]}'),
          corrupt=corrupt if i else 0,
          timeout=timeout,
      )
      for i in (0, 1)
  ]
  network.run([p.start() for p in parties], horizon=10 * (timeout + latency))
  return ValidationResult(
      acks=(parties[0].result[0], parties[1].result[0]),
      reasons=(parties[0].result[1], parties[1].result[1]),
      trace=tuple(network.trace),
  )
