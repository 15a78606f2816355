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

"""In-process message bus on a discrete-event clock.

Every node owns a mailbox. A message lands in the mailbox of its receiver
after the latency of the link. Same-time deliveries keep the send order, so
delivery is ordered by (time, sequence number).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
import dataclasses
import itertools
from typing import Any, Optional

from dqvqe.netctl import clock as clock_lib
from dqvqe.netctl import messages
from dqvqe.netctl import trace as trace_lib
from dqvqe.utils import errors
import immutabledict
import simpy


@dataclasses.dataclass(frozen=True)
class Latency:
  """Link latencies.

  Attributes:
    default: Latency of the links not listed.
    links: `'a-b'` -> latency between nodes `a` and `b` (both ways).
  """

  default: float = 0.0
  links: Mapping[str, float] = immutabledict.immutabledict()

  def __post_init__(self):
    links = {str(k): float(v) for k, v in self.links.items()}
    object.__setattr__(self, 'links', immutabledict.immutabledict(links))
    if self.default < 0 or any(v < 0 for v in links.values()):
      raise errors.ValidationError('Latencies must be >= 0.')
    for k in links:
      if k.count('-') != 1:
        raise errors.ValidationError(f'Links are written `a-b`, got {k!r}')

  def between(self, a: str, b: str) -> float:
    return self.links.get(f'{a}-{b}', self.links.get(f'{b}-{a}', self.default))

  @property
  def max(self) -> float:
    return max([self.default, *self.links.values()])


class Network:
  """Mailboxes, clocks and the trace of one simulation.

  Attributes:
    env: The discrete-event environment.
    trace: Events logged so far.
    latency: Link latencies.
    clock_model: Clock error of the nodes.
    drop_messages: Sequence numbers of the messages lost in transit.
  """

  def __init__(
      self,
      *,
      latency: Latency = Latency(),
      clock_model: clock_lib.ClockModel = clock_lib.ClockModel(),
      drop_messages: Iterable[int] = (),
  ):
    self.env = simpy.Environment()
    self.trace = trace_lib.Trace()
    self.latency = latency
    self.clock_model = clock_model
    self.drop_messages = frozenset(drop_messages)
    self._mailboxes: dict[str, simpy.FilterStore] = {}
    self._clocks: dict[str, clock_lib.NodeClock] = {}
    self._seq = itertools.count()

  @property
  def now(self) -> float:
    return float(self.env.now)

  @property
  def nodes(self) -> tuple[str, ...]:
    return tuple(self._mailboxes)

  def add_node(self, name: str) -> simpy.FilterStore:
    if name in self._mailboxes:
      raise errors.ValidationError(f'Duplicate node {name!r}')
    self._mailboxes[name] = simpy.FilterStore(self.env)
    self._clocks[name] = self.clock_model.make_clock(name)
    return self._mailboxes[name]

  def clock(self, name: str) -> clock_lib.NodeClock:
    return self._clocks[name]

  def log(self, node: str, event: str, **detail: Any) -> None:
    self.trace.log(self.now, node, event, **detail)

  def send(
      self,
      src: str,
      dst: str,
      payload: messages.Payload,
      *,
      latency: Optional[float] = None,
  ) -> int:
    """Queues `payload` for delivery and returns its sequence number."""
    if dst not in self._mailboxes:
      raise errors.ValidationError(f'Unknown node {dst!r}')
    seq = next(self._seq)
    if payload.TRACED:
      self.log(src, 'send', to=dst, msg=payload.kind, seq=seq)
    if seq in self.drop_messages:
      self.log(src, 'drop', to=dst, msg=payload.kind, seq=seq)
      return seq
    if latency is None:
      latency = self.latency.between(src, dst)
    message = messages.Message(
        src=src, dst=dst, payload=payload, seq=seq, sent_at=self.now
    )
    self.env.process(self._deliver(latency, message))
    return seq

  def _deliver(self, delay: float, message: messages.Message):
    yield self.env.timeout(delay)
    yield self._mailboxes[message.dst].put(message)

  def run(
      self,
      processes: Iterable[simpy.Process],
      horizon: float,
      *,
      drain: float = 0.0,
  ) -> bool:
    """Runs until all `processes` end (True) or `horizon` passes (False).

    Once the processes are done, the simulation goes on for `drain` to
    deliver the messages still in flight.
    """
    done = self.env.all_of(list(processes))
    self.env.run(until=self.env.any_of([done, self.env.timeout(horizon)]))
    if done.triggered and drain > 0:
      self.env.run(until=self.now + drain)
    return done.triggered
