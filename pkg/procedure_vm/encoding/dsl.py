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
"""Text format of machines.

One instruction per line::

    q0 _ h q1               print
    q1 h R q2               move right (L for left)
    q0 _ ? q1 q2            oracle branch
    q0 _ !roll q1 q2        action
    q0 _ ?hot q1 q2 q3      reading action

Header lines ``name:``, ``alphabet:`` and ``actions:`` are optional, the
alphabet and the actions are inferred from the instructions when missing.
A symbol may be quoted as ``'c'``, the symbols ``R L ? ! ' #`` must be
quoted when printed. ``#`` starts a comment at the start of a token.
"""

from __future__ import annotations

import typing as tp

import lark

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.machine import models
from procedure_vm.machine import transform
from procedure_vm.machine import validation

RESERVED_SYMBOLS = frozenset("RL?!'#")

# Lines are parsed one at a time, tokens end at whitespace.
GRAMMAR = r"""
start: statement?

?statement: instruction
          | NAME_KEY ":" MACHINE_NAME          -> name_header
          | ALPHABET_KEY ":" symbol*           -> alphabet_header
          | ACTIONS_KEY ":" ACTION_NAME*       -> actions_header

?instruction: STATE symbol symbol STATE                 -> print_op
            | STATE symbol MOVE STATE                   -> move_op
            | STATE symbol _ORACLE STATE STATE          -> oracle_op
            | STATE symbol ACTION STATE STATE           -> act_op
            | STATE symbol READING STATE STATE STATE    -> read_op

?symbol: SYMBOL | QUOTED

NAME_KEY: "name"
ALPHABET_KEY: "alphabet"
ACTIONS_KEY: "actions"

STATE: /q[0-9]+(?!\S)/
MOVE.2: /[RL](?!\S)/
_ORACLE.2: /\?(?!\S)/
ACTION.2: /![A-Za-z_][A-Za-z0-9_]*(?!\S)/
READING.2: /\?[A-Za-z_][A-Za-z0-9_]*(?!\S)/
SYMBOL: /[^\s'#](?!\S)/
QUOTED: /'[^\n]'(?!\S)/
ACTION_NAME: /[A-Za-z_][A-Za-z0-9_]*(?!\S)/
MACHINE_NAME: /[^\s#'][^\s]*/

COMMENT: /#[^\n]*/
WS: /\s+/
%ignore COMMENT
%ignore WS
"""

_PARSER = lark.Lark(GRAMMAR, parser="lalr")


class Header(tp.NamedTuple):
    key: str
    value: tp.Any
    column: int


def _symbol(token: lark.Token) -> str:
    return token[1] if token.type == "QUOTED" else str(token)


@lark.v_args(inline=True)
class LineTransformer(lark.Transformer):
    """Turns the tree of one line into an instruction or a header."""

    def __init__(self, lineno: int) -> None:
        super().__init__()
        self._lineno = lineno

    def STATE(self, token: lark.Token) -> int:
        return int(token[1:])

    def ACTION(self, token: lark.Token) -> str:
        return str(token[1:])

    def READING(self, token: lark.Token) -> str:
        return str(token[1:])

    def ACTION_NAME(self, token: lark.Token) -> str:
        return str(token)

    def start(self, statement=None):
        return statement

    def name_header(self, key: lark.Token, name: lark.Token) -> Header:
        return Header(str(key), str(name), key.column)

    def alphabet_header(self, key: lark.Token, *symbols) -> Header:
        return Header(str(key), {_symbol(s) for s in symbols}, key.column)

    def actions_header(self, key: lark.Token, *names: str) -> Header:
        return Header(str(key), set(names), key.column)

    def print_op(self, state, read, write, next_state) -> models.Print:
        if write.type == "SYMBOL" and write in RESERVED_SYMBOLS:
            raise exceptions.DslSyntaxError(
                f"Reserved symbol '{write}' must be quoted",
                self._lineno,
                write.column,
            )
        return models.Print(state, _symbol(read), _symbol(write), next_state)

    def move_op(self, state, read, move, next_state) -> models.Instruction:
        cls = models.MoveRight if move == "R" else models.MoveLeft
        return cls(state, _symbol(read), next_state)

    def oracle_op(self, state, read, yes, no) -> models.OracleBranch:
        return models.OracleBranch(state, _symbol(read), yes, no)

    def act_op(self, state, read, action, ok, fail) -> models.Act:
        return models.Act(state, _symbol(read), action, ok, fail)

    def read_op(self, state, read, reading, *targets) -> models.ReadAct:
        return models.ReadAct(state, _symbol(read), reading, *targets)


def _syntax_error(
    exc: lark.exceptions.UnexpectedInput, line: str, lineno: int
) -> exceptions.DslSyntaxError:
    column = exc.column
    if not isinstance(column, int) or column < 1:
        column = max(len(line.rstrip()), 1)

    if (
        isinstance(exc, lark.exceptions.UnexpectedToken)
        and exc.token.type == "$END"
    ):
        message = "Incomplete instruction"
    else:
        rest = line[column - 1 :].split(maxsplit=1)
        message = f"Unexpected '{rest[0]}'" if rest else "Unexpected input"
    return exceptions.DslSyntaxError(message, lineno, column)


def parse_line(
    line: str, lineno: int = 1
) -> models.Instruction | Header | None:
    """Parse one line, None for blank and comment lines."""
    try:
        tree = _PARSER.parse(line)
    except lark.exceptions.UnexpectedInput as e:
        raise _syntax_error(e, line, lineno) from None

    try:
        return LineTransformer(lineno).transform(tree)
    except lark.exceptions.VisitError as e:
        raise e.orig_exc from None


def parse_dsl(
    text: str, validate: bool = True, name: str | None = None
) -> models.Machine:
    """Parse machine source text.

    With ``validate`` the machine is checked and InvalidMachineError is
    raised for violations, otherwise the machine is returned as written.
    """
    headers: tp.Dict[str, tp.Any] = {}
    instructions: tp.List[models.Instruction] = []

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue

        parsed = parse_line(line, lineno)
        if isinstance(parsed, Header):
            if parsed.key in headers:
                raise exceptions.DslSyntaxError(
                    f"Duplicate '{parsed.key}' header", lineno, parsed.column
                )
            headers[parsed.key] = parsed.value
        elif parsed is not None:
            instructions.append(parsed)

    used_symbols = {s for i in instructions for s in i.symbols}
    used_actions = {
        i.action_id for i in instructions if i.action_id is not None
    }
    machine = models.Machine(
        name=headers.get("name", name or c.ANONYMOUS_MACHINE),
        alphabet=frozenset(headers.get("alphabet", used_symbols)),
        instructions=tuple(instructions),
        actions=frozenset(headers.get("actions", used_actions)),
    )

    if validate:
        report = validation.validate_machine(machine)
        if not report.is_valid:
            raise exceptions.InvalidMachineError(report)

    return machine


def render_symbol(symbol: str) -> str:
    if symbol in RESERVED_SYMBOLS or symbol.isspace():
        return f"'{symbol}'"
    return symbol


def render_dsl(machine: models.Machine) -> str:
    """Canonical text: renumbered states, instructions sorted by key."""
    machine = transform.canonical(machine)
    alphabet = " ".join(render_symbol(s) for s in sorted(machine.alphabet))
    lines = [
        f"name: {machine.name}",
        f"alphabet: {alphabet}",
        " ".join(["actions:"] + sorted(machine.actions)),
    ]

    for instruction in machine.instructions:
        fields = [
            models.state_name(instruction.state),
            render_symbol(instruction.symbol),
        ]
        if isinstance(instruction, models.Print):
            fields += [
                render_symbol(instruction.write),
                models.state_name(instruction.next_state),
            ]
        else:
            fields += list(instruction.operands())
        lines.append(" ".join(fields))

    return "\n".join(lines) + "\n"
