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
from __future__ import annotations

import collections
import typing as tp

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.machine import models
from procedure_vm.machine import validation


def _require_valid(machine: models.Machine) -> None:
    report = validation.validate_machine(machine)
    if not report.is_valid:
        raise exceptions.InvalidMachineError(report)


def canonical(machine: models.Machine) -> models.Machine:
    """Renumber states in first-use order.

    States are numbered breadth first from q0, visiting the instructions
    of a state in symbol order and their targets in operand order. States
    not reachable from q0 follow, rooted in their original numeric order.
    """
    by_state = collections.defaultdict(list)
    for instruction in machine.instructions:
        by_state[instruction.state].append(instruction)

    order: tp.Dict[int, int] = {}
    queue: tp.Deque[int] = collections.deque()

    def visit(state: int) -> None:
        if state not in order:
            order[state] = len(order)
            queue.append(state)

    for root in [c.INITIAL_STATE] + sorted(machine.states):
        visit(root)
        while queue:
            state = queue.popleft()
            for instruction in by_state[state]:
                for target in instruction.targets:
                    visit(target)

    return models.Machine(
        name=machine.name,
        alphabet=machine.alphabet,
        instructions=tuple(i.relabel(order) for i in machine.instructions),
        actions=machine.actions,
    )


def inline_subroutine(
    host: models.Machine, hook: int, sub: models.Machine
) -> models.Machine:
    """Continue as ``sub`` from its q0 whenever ``host`` reaches ``hook``.

    Sub states are renamed to fresh ids above every host state, with the
    sub initial state mapped onto ``hook``.
    """
    _require_valid(host)
    _require_valid(sub)

    foreign = sorted(sub.alphabet - host.alphabet)
    if foreign:
        raise exceptions.CompositionError(
            f"Symbols {foreign} of {sub.name} are not in the alphabet of "
            f"{host.name}"
        )

    entry_symbols = {
        i.symbol for i in sub.instructions if i.state == c.INITIAL_STATE
    }
    clashes = [
        i for i in host.instructions
        if i.state == hook and i.symbol in entry_symbols
    ]
    if clashes:
        raise exceptions.CompositionError(
            f"{host.name} already dispatches from "
            f"{models.state_name(hook)} on "
            f"{sorted(i.symbol for i in clashes)}"
        )

    offset = max(host.states | {hook}) + 1
    mapping = {
        s: hook if s == c.INITIAL_STATE else offset + s - 1
        for s in sub.states
    }
    combined = models.Machine(
        name=host.name,
        alphabet=host.alphabet,
        instructions=host.instructions
        + tuple(i.relabel(mapping) for i in sub.instructions),
        actions=host.actions | sub.actions,
    )

    report = validation.validate_machine(combined)
    if not report.is_valid:
        raise exceptions.CompositionError(
            f"Inlining {sub.name} into {host.name} is not deterministic: "
            + "; ".join(str(v) for v in report.errors)
        )

    return combined


def bake_overhead(symbols: str) -> int:
    """Steps the printing prefix of ``bake_input`` takes."""
    n = len(symbols)
    return 0 if n == 0 else 3 * n - 2


def bake_input(machine: models.Machine, symbols: str) -> models.Machine:
    """Build an argument-free machine behaving as ``machine`` on ``symbols``.

    The result first prints ``symbols`` on cells 0..len-1 of an empty tape,
    walks back to cell 0 and then continues as ``machine`` from its q0.
    """
    _require_valid(machine)
    foreign = sorted(set(symbols) - machine.alphabet)
    if foreign:
        raise exceptions.InvalidInputError(
            f"Input symbols {foreign} are not in the alphabet of "
            f"{machine.name}"
        )

    instructions: tp.List[models.Instruction] = []
    state = c.INITIAL_STATE
    fresh = iter(range(1, 3 * len(symbols) + 1))

    # Print rightwards, every cell is blank before it is printed
    for i, symbol in enumerate(symbols):
        printed = next(fresh)
        instructions.append(models.Print(state, c.BLANK, symbol, printed))
        state = printed
        if i < len(symbols) - 1:
            state = next(fresh)
            instructions.append(models.MoveRight(printed, symbol, state))

    # Walk back to cell 0, the symbol of every cell is known
    for index in range(len(symbols) - 1, 0, -1):
        left = next(fresh)
        instructions.append(models.MoveLeft(state, symbols[index], left))
        state = left

    prefix = models.Machine(
        name=machine.name,
        alphabet=machine.alphabet,
        instructions=tuple(instructions),
    )
    return inline_subroutine(prefix, state, machine)
