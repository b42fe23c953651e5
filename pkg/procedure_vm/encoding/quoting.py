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
"""Quoting of machines as strings over a 16 symbol alphabet.

Layout of a quote::

    <alphabet>:<actions>:<instructions>=

The alphabet is the sorted list of symbol code points separated by ``,``.
Actions are the sorted action names, each spelled as code points separated
by ``.``, names separated by ``,``. Instructions of the canonical machine
are separated by ``;``, their fields by ``|``::

    state|symbol|tag|operands...

Symbols are indexes into the sorted alphabet, actions indexes into the
sorted action list. Tags: 0 print, 1 right, 2 left, 3 oracle, 4 action,
5 reading action. Every number is a canonical decimal and ``=`` occurs
only at the end, so the code is self-delimiting.
"""

from __future__ import annotations

import re
import typing as tp

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.machine import models
from procedure_vm.machine import transform
from procedure_vm.machine import validation

_DECIMAL = re.compile(r"0|[1-9][0-9]*")
_MAX_CODEPOINT = 0x10FFFF
# bound on every decimal field of a quote
_MAX_DIGITS = 12

# tag -> (instruction type, number of operand fields)
_TAGS: tp.Dict[int, tp.Tuple[tp.Type[models.Instruction], int]] = {
    0: (models.Print, 2),
    1: (models.MoveRight, 1),
    2: (models.MoveLeft, 1),
    3: (models.OracleBranch, 2),
    4: (models.Act, 3),
    5: (models.ReadAct, 4),
}
_TAG_OF = {cls: tag for tag, (cls, _) in _TAGS.items()}


def _encode_instruction(
    instruction: models.Instruction,
    symbols: tp.Dict[str, int],
    actions: tp.Dict[str, int],
) -> str:
    fields = [instruction.state, symbols[instruction.symbol]]
    fields.append(_TAG_OF[type(instruction)])
    if isinstance(instruction, models.Print):
        fields.append(symbols[instruction.write])
    elif instruction.action_id is not None:
        fields.append(actions[instruction.action_id])
    fields.extend(instruction.targets)
    return c.QUOTE_FIELD_SEP.join(str(f) for f in fields)


def quote(machine: models.Machine) -> str:
    """Return the canonical quote of a valid machine."""
    report = validation.validate_machine(machine)
    if not report.is_valid:
        raise exceptions.InvalidMachineError(report)

    machine = transform.canonical(machine)
    alphabet = sorted(machine.alphabet)
    actions = sorted(machine.actions)
    symbol_index = {s: i for i, s in enumerate(alphabet)}
    action_index = {a: i for i, a in enumerate(actions)}

    instructions = sorted(
        machine.instructions, key=lambda i: (i.state, symbol_index[i.symbol])
    )
    sections = (
        c.QUOTE_LIST_SEP.join(str(ord(s)) for s in alphabet),
        c.QUOTE_LIST_SEP.join(
            c.QUOTE_CHAR_SEP.join(str(ord(ch)) for ch in name)
            for name in actions
        ),
        c.QUOTE_INSTRUCTION_SEP.join(
            _encode_instruction(i, symbol_index, action_index)
            for i in instructions
        ),
    )
    return c.QUOTE_SECTION_SEP.join(sections) + c.QUOTE_TERMINATOR


def _number(text: str) -> int:
    if len(text) > _MAX_DIGITS:
        raise exceptions.DecodeError(
            f"Number '{text[:_MAX_DIGITS]}...' exceeds {_MAX_DIGITS} digits"
        )
    if not _DECIMAL.fullmatch(text):
        raise exceptions.DecodeError(f"Malformed number '{text}'")
    return int(text)


def _char(text: str) -> str:
    codepoint = _number(text)
    if codepoint > _MAX_CODEPOINT:
        raise exceptions.DecodeError(f"Code point {codepoint} out of range")
    return chr(codepoint)


def _items(section: str, sep: str) -> tp.List[str]:
    return section.split(sep) if section else []


def _pick(items: tp.Sequence[str], index: int, what: str) -> str:
    if index >= len(items):
        raise exceptions.DecodeError(f"Undeclared {what} index {index}")
    return items[index]


def _decode_instruction(
    text: str, alphabet: tp.Sequence[str], actions: tp.Sequence[str]
) -> models.Instruction:
    fields = [_number(f) for f in text.split(c.QUOTE_FIELD_SEP)]
    if len(fields) < 3 or fields[2] not in _TAGS:
        raise exceptions.DecodeError(f"Malformed instruction '{text}'")

    state, symbol_idx, tag = fields[:3]
    cls, arity = _TAGS[tag]
    operands = fields[3:]
    if len(operands) != arity:
        raise exceptions.DecodeError(
            f"Instruction '{text}' needs {arity} operands"
        )

    symbol = _pick(alphabet, symbol_idx, "symbol")
    if cls is models.Print:
        write = _pick(alphabet, operands[0], "symbol")
        return models.Print(state, symbol, write, operands[1])
    if cls is models.Act:
        action = _pick(actions, operands[0], "action")
        return models.Act(state, symbol, action, *operands[1:])
    if cls is models.ReadAct:
        reading = _pick(actions, operands[0], "action")
        return models.ReadAct(state, symbol, reading, *operands[1:])
    return cls(state, symbol, *operands)


def unquote(text: str) -> models.Machine:
    """Decode a quote back to its canonical machine.

    The whole string must be consumed and must be exactly the quote of the
    decoded machine, anything else raises DecodeError.
    """
    if not text:
        raise exceptions.DecodeError("Empty quote")

    foreign = sorted(set(text) - set(c.QUOTE_ALPHABET))
    if foreign:
        raise exceptions.DecodeError(f"Symbols {foreign} outside the quote")
    if text.find(c.QUOTE_TERMINATOR) != len(text) - 1:
        raise exceptions.DecodeError("Quote must end at its only terminator")

    sections = text[:-1].split(c.QUOTE_SECTION_SEP)
    if len(sections) != 3:
        raise exceptions.DecodeError(
            f"Expected 3 sections, got {len(sections)}"
        )

    alphabet_text, actions_text, instructions_text = sections
    alphabet = [_char(s) for s in _items(alphabet_text, c.QUOTE_LIST_SEP)]
    actions = [
        "".join(_char(ch) for ch in name.split(c.QUOTE_CHAR_SEP))
        for name in _items(actions_text, c.QUOTE_LIST_SEP)
    ]
    instructions = [
        _decode_instruction(i, alphabet, actions)
        for i in _items(instructions_text, c.QUOTE_INSTRUCTION_SEP)
    ]

    try:
        machine = models.Machine(
            name=c.ANONYMOUS_MACHINE,
            alphabet=frozenset(alphabet),
            instructions=tuple(instructions),
            actions=frozenset(actions),
        )
    except ValueError as e:
        raise exceptions.DecodeError(str(e)) from e

    report = validation.validate_machine(machine)
    if not report.is_valid:
        raise exceptions.DecodeError(
            "Quoted machine is invalid: "
            + "; ".join(str(v) for v in report.errors)
        )

    if quote(machine) != text:
        raise exceptions.DecodeError("Quote is not in canonical form")

    return transform.canonical(machine)
