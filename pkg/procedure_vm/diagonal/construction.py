#    Copyright 2025 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.
"""Machines generated by the diagonal constructions."""

from __future__ import annotations

import string
import typing as tp

from procedure_vm import constants as c
from procedure_vm.actions import deciders
from procedure_vm.encoding import quoting
from procedure_vm.machine import models
from procedure_vm.machine import transform

DIGITS = string.digits
THERMOMETER_ALPHABET = frozenset(DIGITS + "." + c.ERROR_RESULT)


class ProgramBuilder:
    """Accumulates instructions of a generated machine.

    Routines take an entry state and return the state they leave the
    machine in, so they can be chained.
    """

    def __init__(self, alphabet: tp.Iterable[str]) -> None:
        self.alphabet = frozenset(alphabet) | {c.BLANK}
        self.instructions: tp.List[models.Instruction] = []
        self._next_state = c.INITIAL_STATE + 1

    def fresh(self) -> int:
        state = self._next_state
        self._next_state += 1
        return state

    def add(self, instruction: models.Instruction) -> None:
        self.instructions.append(instruction)

    def on_any(
        self,
        state: int,
        factory: tp.Callable[[str], models.Instruction],
        symbols: tp.Iterable[str] | None = None,
    ) -> None:
        """Dispatch the same way from ``state`` whatever the head reads."""
        for symbol in sorted(self.alphabet if symbols is None else symbols):
            self.add(factory(symbol))

    def print_word(self, entry: int, word: str) -> int:
        """Print ``word`` rightwards from a blank cell, head on its end."""
        state = entry
        for i, ch in enumerate(word):
            printed = self.fresh()
            self.add(models.Print(state, c.BLANK, ch, printed))
            state = printed
            if i < len(word) - 1:
                state = self.fresh()
                self.add(models.MoveRight(printed, ch, state))
        return state

    def erase(self, entry: int) -> int:
        """Blank cells rightwards up to the first blank one."""
        cleared, done = self.fresh(), self.fresh()
        self.on_any(
            entry,
            lambda s: models.Print(entry, s, c.BLANK, cleared),
            self.alphabet - {c.BLANK},
        )
        self.add(models.MoveRight(cleared, c.BLANK, entry))
        self.add(models.Print(entry, c.BLANK, c.BLANK, done))
        return done

    def build(
        self, name: str, actions: tp.Iterable[str] = ()
    ) -> models.Machine:
        used = {i.action_id for i in self.instructions if i.action_id}
        return models.Machine(
            name=name,
            alphabet=self.alphabet,
            instructions=tuple(self.instructions),
            actions=frozenset(actions) | used,
        )


def _digit_search(
    builder: ProgramBuilder,
    entry: int,
    pos: int,
    lo: int,
    hi: int,
    leaf: tp.Callable[[int, int], None],
    fail: int,
) -> None:
    """Find digit ``pos`` of the sample in lo..hi by halving comparisons."""
    if lo == hi:
        leaf(entry, lo)
        return

    mid = (lo + hi + 1) // 2
    upper, lower = builder.fresh(), builder.fresh()
    builder.add(
        models.ReadAct(
            entry, c.BLANK, f"digit_{pos}_ge_{mid}", upper, lower, fail
        )
    )
    _digit_search(builder, upper, pos, mid, hi, leaf, fail)
    _digit_search(builder, lower, pos, lo, mid - 1, leaf, fail)


def make_thermometer_reader(
    decimals: int = c.THERMO_DECIMALS,
) -> models.Machine:
    """Sample the thermometer and print its reading digit by digit.

    The integer digits come first, then a dot and ``decimals`` digits when
    asked for. Any CannotPerform ends in printing ``ERR``.
    """
    if not 0 <= decimals <= c.THERMO_DECIMALS:
        raise ValueError(f"Decimals must be in 0..{c.THERMO_DECIMALS}")

    builder = ProgramBuilder(THERMOMETER_ALPHABET)
    fail = builder.fresh()
    builder.print_word(fail, c.ERROR_RESULT)

    root = builder.fresh()
    builder.add(
        models.Act(c.INITIAL_STATE, c.BLANK, c.ACT_SAMPLE, root, fail)
    )

    positions = c.THERMO_INTEGER_DIGITS + decimals
    for pos in range(positions):
        printed = builder.fresh()

        def leaf(state: int, digit: int, printed: int = printed) -> None:
            builder.add(models.Print(state, c.BLANK, str(digit), printed))

        _digit_search(builder, root, pos, 0, 9, leaf, fail)
        if pos == positions - 1:
            break

        root = builder.fresh()
        if pos == c.THERMO_INTEGER_DIGITS - 1:
            dot, dotted = builder.fresh(), builder.fresh()
            builder.on_any(
                printed, lambda d: models.MoveRight(printed, d, dot), DIGITS
            )
            builder.add(models.Print(dot, c.BLANK, ".", dotted))
            builder.add(models.MoveRight(dotted, ".", root))
        else:
            builder.on_any(
                printed, lambda d: models.MoveRight(printed, d, root), DIGITS
            )

    name = "thermometer-reader" if decimals else "reference-thermometer"
    return builder.build(name)


def make_reference_thermometer() -> models.Machine:
    """Reference procedure: the integer degrees, truncated toward zero."""
    return make_thermometer_reader(decimals=0)


def _decider_dispatch(
    builder: ProgramBuilder, reading: str
) -> tp.Tuple[int, int, int]:
    yes, no, fail = builder.fresh(), builder.fresh(), builder.fresh()
    builder.on_any(
        c.INITIAL_STATE,
        lambda s: models.ReadAct(c.INITIAL_STATE, s, reading, yes, no, fail),
    )
    return yes, no, fail


def make_green(
    candidate: deciders.AbstractVerifier, red: models.Machine
) -> models.Machine:
    """Invert the verdict of ``candidate`` about the procedure on the tape.

    Yes: the tentative procedure is not run, NOTEMP is printed. No: the
    tape is cleared and ``red`` measures the temperature. CannotPerform:
    the tape is cleared and ERR is printed.
    """
    alphabet = (
        set(c.QUOTE_ALPHABET)
        | set(red.alphabet)
        | set(c.NO_TEMPERATURE)
        | set(c.ERROR_RESULT)
    )
    builder = ProgramBuilder(alphabet)
    yes, no, fail = _decider_dispatch(builder, c.READ_BLUE_SAYS_YES)

    builder.print_word(builder.erase(yes), c.NO_TEMPERATURE)
    builder.print_word(builder.erase(fail), c.ERROR_RESULT)
    hook = builder.erase(no)

    host = builder.build(f"green[{candidate.id}]")
    return transform.inline_subroutine(host, hook, red)


def self_apply(green: models.Machine) -> tp.Tuple[models.Machine, str]:
    """Bake the quote of ``green`` in front of it.

    The verdict the construction refutes is the one about ``green`` on its
    own quote, which the deciders read as the self-pair.
    """
    core = quoting.quote(green)
    machine = transform.bake_input(green, core).with_name(f"G[{green.name}]")
    return machine, quoting.quote(machine)


def make_halting_core(
    candidate: deciders.AbstractHaltingDecider,
) -> models.Machine:
    """Loop if ``candidate`` says the procedure on the tape halts.

    Otherwise clear the tape, print 0 and halt.
    """
    alphabet = (
        set(c.QUOTE_ALPHABET)
        | set(c.HALTING_NO_RESULT)
        | set(c.ERROR_RESULT)
    )
    builder = ProgramBuilder(alphabet)
    loop, stop, fail = _decider_dispatch(builder, c.READ_H_SAYS_HALT)

    back = builder.fresh()
    builder.on_any(loop, lambda s: models.MoveRight(loop, s, back))
    builder.on_any(back, lambda s: models.MoveLeft(back, s, loop))

    builder.print_word(builder.erase(stop), c.HALTING_NO_RESULT)
    builder.print_word(builder.erase(fail), c.ERROR_RESULT)
    return builder.build(f"D-core[{candidate.id}]")


def make_halting_diagonal(
    candidate: deciders.AbstractHaltingDecider,
) -> tp.Tuple[models.Machine, str]:
    core = make_halting_core(candidate)
    machine = transform.bake_input(core, quoting.quote(core))
    machine = machine.with_name(f"D[{candidate.id}]")
    return machine, quoting.quote(machine)
