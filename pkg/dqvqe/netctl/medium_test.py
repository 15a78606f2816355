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

"""Tests."""

from dqvqe import circuit as circuit_lib
from dqvqe.netctl import medium as medium_lib
from dqvqe.schedule import commands as commands_lib
from dqvqe.simulate import statevector
from dqvqe.utils import errors
import pytest
import simpy

CommandKind = commands_lib.CommandKind
QubitId = circuit_lib.QubitId


def _command(kind, time, *qubits, qpus=(0,)):
  return commands_lib.TimedCommand(
      kind, ('x',), qpus, time, 1.0, qubits=qubits
  )


def _medium():
  env = simpy.Environment()
  state = statevector.SimState([QubitId(0, 0), QubitId(1, 0)])
  medium = medium_lib.QuantumMedium(env, state)
  medium.reserve('qgn0', [(0.0, QubitId(0, 0)), (2.0, QubitId(0, 0))])
  medium.reserve('qgn1', [(1.0, QubitId(1, 0))])
  return env, medium


@pytest.mark.parametrize(
    'command, qpu, slot',
    [
        (_command(CommandKind.SINGLE, 3.0, QubitId(0, 1)), 0, 3.0),
        (_command(CommandKind.GEN_ENT, 1.0, QubitId(0, 2)), 0, 1.0),
        (
            _command(
                CommandKind.TWO_QUBIT,
                2.0,
                QubitId(0, 1),
                QubitId(0, 0),
                qpus=(0, 1),
            ),
            0,
            2.0,
        ),
        (
            _command(CommandKind.TWO_QUBIT, 2.0, QubitId(1, 0), qpus=(0, 1)),
            1,
            None,
        ),
        (_command(CommandKind.REC_ENT, 1.0, QubitId(1, 2)), 0, None),
        (_command(CommandKind.CLASSICAL, 1.0), 0, None),
    ],
)
def test_slot_of(command, qpu, slot):
  got = medium_lib.slot_of(command, qpu)
  if slot is None:
    assert got is None
  else:
    assert got == (slot, min(command.qubits))


def test_turns_follow_slot_order():
  env, medium = _medium()
  done = []

  def act(slot, delay):
    yield env.timeout(delay)
    yield medium.turn(slot)
    done.append((env.now, slot[0]))
    medium.commit(slot)

  env.process(act((2.0, QubitId(0, 0)), 0.0))
  env.process(act((1.0, QubitId(1, 0)), 5.0))
  env.process(act((0.0, QubitId(0, 0)), 1.0))
  env.run()
  assert done == [(1.0, 0.0), (5.0, 1.0), (5.0, 2.0)]
  assert medium.pending == 0


def test_withdraw_releases_later_slots():
  env, medium = _medium()
  done = []

  def act(slot):
    yield medium.turn(slot)
    done.append(slot[0])
    medium.commit(slot)

  env.process(act((2.0, QubitId(0, 0))))
  env.run()
  assert not done
  medium.withdraw('qgn1')
  medium.commit((0.0, QubitId(0, 0)))
  env.run()
  assert done == [2.0]
  assert medium.owner((1.0, QubitId(1, 0))) is None


def test_duplicate_slot():
  _, medium = _medium()
  with pytest.raises(errors.ValidationError, match='both act on'):
    medium.reserve('qgn1', [(0.0, QubitId(0, 0))])


def test_unknown_slot():
  _, medium = _medium()
  with pytest.raises(errors.ValidationError):
    medium.turn((7.0, QubitId(0, 0)))
