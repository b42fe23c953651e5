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

import dataclasses
import functools
import typing as tp

from procedure_vm import constants as c


DispatchKey = tp.Tuple[int, str]


def state_name(state: int) -> str:
    return f"q{state}"


@dataclasses.dataclass(frozen=True)
class Instruction:
    """Base of the six instruction variants.

    Every variant is dispatched by the pair (state, symbol): the state the
    machine is in and the symbol under the head.
    """

    TARGET_FIELDS: tp.ClassVar[tp.Tuple[str, ...]] = ()

    state: int
    symbol: str

    @property
    def key(self) -> DispatchKey:
        return (self.state, self.symbol)

    @property
    def targets(self) -> tp.Tuple[int, ...]:
        return tuple(getattr(self, f) for f in self.TARGET_FIELDS)

    @property
    def symbols(self) -> tp.Tuple[str, ...]:
        """Symbols used as operands."""
        return (self.symbol,)

    @property
    def action_id(self) -> str | None:
        return None

    def relabel(self, mapping: tp.Mapping[int, int]) -> Instruction:
        """Return the same instruction with every state renamed."""
        renamed = {f: mapping[getattr(self, f)] for f in self.TARGET_FIELDS}
        return dataclasses.replace(self, state=mapping[self.state], **renamed)

    def operands(self) -> tp.Tuple[str, ...]:
        """Operands after the dispatch key, states rendered as q<id>."""
        raise NotImplementedError

    def __str__(self) -> str:
        head = f"{state_name(self.state)} {self.symbol}"
        return " ".join((head,) + self.operands())


@dataclasses.dataclass(frozen=True)
class Print(Instruction):
    TARGET_FIELDS: tp.ClassVar[tp.Tuple[str, ...]] = ("next_state",)

    write: str
    next_state: int

    @property
    def symbols(self) -> tp.Tuple[str, ...]:
        return (self.symbol, self.write)

    def operands(self) -> tp.Tuple[str, ...]:
        return (self.write, state_name(self.next_state))


@dataclasses.dataclass(frozen=True)
class MoveRight(Instruction):
    TARGET_FIELDS: tp.ClassVar[tp.Tuple[str, ...]] = ("next_state",)

    next_state: int

    def operands(self) -> tp.Tuple[str, ...]:
        return ("R", state_name(self.next_state))


@dataclasses.dataclass(frozen=True)
class MoveLeft(Instruction):
    TARGET_FIELDS: tp.ClassVar[tp.Tuple[str, ...]] = ("next_state",)

    next_state: int

    def operands(self) -> tp.Tuple[str, ...]:
        return ("L", state_name(self.next_state))


@dataclasses.dataclass(frozen=True)
class OracleBranch(Instruction):
    TARGET_FIELDS: tp.ClassVar[tp.Tuple[str, ...]] = ("yes_state", "no_state")

    yes_state: int
    no_state: int

    def operands(self) -> tp.Tuple[str, ...]:
        return ("?", state_name(self.yes_state), state_name(self.no_state))


@dataclasses.dataclass(frozen=True)
class Act(Instruction):
    TARGET_FIELDS: tp.ClassVar[tp.Tuple[str, ...]] = ("ok_state", "fail_state")

    action: str
    ok_state: int
    fail_state: int

    @property
    def action_id(self) -> str | None:
        return self.action

    def operands(self) -> tp.Tuple[str, ...]:
        return (
            f"!{self.action}",
            state_name(self.ok_state),
            state_name(self.fail_state),
        )


@dataclasses.dataclass(frozen=True)
class ReadAct(Instruction):
    TARGET_FIELDS: tp.ClassVar[tp.Tuple[str, ...]] = (
        "true_state",
        "false_state",
        "fail_state",
    )

    reading: str
    true_state: int
    false_state: int
    fail_state: int

    @property
    def action_id(self) -> str | None:
        return self.reading

    def operands(self) -> tp.Tuple[str, ...]:
        return (
            f"?{self.reading}",
            state_name(self.true_state),
            state_name(self.false_state),
            state_name(self.fail_state),
        )


def _instruction_order(instruction: Instruction) -> tp.Tuple[tp.Any, ...]:
    return (
        instruction.state,
        instruction.symbol,
        type(instruction).__name__,
        str(instruction),
    )


@dataclasses.dataclass(frozen=True)
class Machine:
    """A measurement procedure: a named set of instructions.

    Instructions are kept as a sorted tuple of distinct items so two
    machines with the same instruction set compare equal. The name is
    metadata and takes no part in comparison. The blank symbol always
    belongs to the alphabet.
    """

    name: str = dataclasses.field(compare=False)
    alphabet: tp.FrozenSet[str] = frozenset()
    instructions: tp.Tuple[Instruction, ...] = ()
    actions: tp.FrozenSet[str] = frozenset()

    def __post_init__(self) -> None:
        alphabet = frozenset(self.alphabet) | {c.BLANK}
        bad = sorted(s for s in alphabet if len(s) != 1)
        if bad:
            raise ValueError(f"Symbols must be single characters: {bad}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "actions", frozenset(self.actions))
        object.__setattr__(
            self,
            "instructions",
            tuple(sorted(set(self.instructions), key=_instruction_order)),
        )

    @functools.cached_property
    def dispatch(self) -> tp.Dict[DispatchKey, Instruction]:
        return {i.key: i for i in self.instructions}

    @property
    def states(self) -> tp.FrozenSet[int]:
        """All states mentioned by the machine, the initial one included."""
        states = {c.INITIAL_STATE}
        for i in self.instructions:
            states.add(i.state)
            states.update(i.targets)
        return frozenset(states)

    @property
    def used_symbols(self) -> tp.FrozenSet[str]:
        return frozenset(s for i in self.instructions for s in i.symbols)

    @property
    def used_actions(self) -> tp.FrozenSet[str]:
        return frozenset(
            i.action_id for i in self.instructions if i.action_id is not None
        )

    @property
    def is_provider_free(self) -> bool:
        return not self.used_actions

    def with_name(self, name: str) -> Machine:
        return dataclasses.replace(self, name=name)

    def __str__(self) -> str:
        return f"<Machine {self.name} instructions={len(self.instructions)}>"

    @classmethod
    def empty(
        cls, name: str = "empty", alphabet: tp.Iterable[str] = ()
    ) -> Machine:
        return cls(name=name, alphabet=frozenset(alphabet))


class Tape:
    """Unbounded tape; only non-blank cells are stored."""

    def __init__(self, cells: tp.Mapping[int, str] | None = None) -> None:
        self._cells: tp.Dict[int, str] = {
            i: s for i, s in (cells or {}).items() if s != c.BLANK
        }

    @classmethod
    def from_input(cls, symbols: str) -> Tape:
        return cls(dict(enumerate(symbols)))

    @property
    def cells(self) -> tp.Dict[int, str]:
        return dict(self._cells)

    def read(self, index: int) -> str:
        return self._cells.get(index, c.BLANK)

    def write(self, index: int, symbol: str) -> None:
        if symbol == c.BLANK:
            self._cells.pop(index, None)
        else:
            self._cells[index] = symbol

    def non_blank_count(self) -> int:
        return len(self._cells)

    def span(self) -> str:
        """Symbols from the leftmost to the rightmost non-blank cell."""
        if not self._cells:
            return ""
        lo, hi = min(self._cells), max(self._cells)
        return "".join(self.read(i) for i in range(lo, hi + 1))

    def copy(self) -> Tape:
        return Tape(self._cells)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tape):
            return NotImplemented
        return self._cells == other._cells

    def __repr__(self) -> str:
        return f"Tape({self._cells!r})"


@dataclasses.dataclass
class Configuration:
    tape: Tape
    head: int = 0
    state: int = c.INITIAL_STATE
    steps: int = 0

    @classmethod
    def initial(cls, symbols: str = "") -> Configuration:
        return cls(tape=Tape.from_input(symbols))

    def summary(self) -> str:
        return (
            f"{state_name(self.state)} head={self.head} "
            f"read={self.tape.read(self.head)}"
        )


class TraceEntry(tp.NamedTuple):
    step: int
    state: int
    head: int
    symbol: str
    instruction: str
    response: str | None = None

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return self._asdict()


@dataclasses.dataclass
class RunOutcome:
    status: c.RunStatus
    steps: int
    result: str | None = None
    error: str | None = None
    trace: tp.List[TraceEntry] | None = None

    @property
    def halted(self) -> bool:
        return self.status == c.RunStatus.HALTED

    def to_dict(self, with_trace: bool = False) -> tp.Dict[str, tp.Any]:
        data = {
            "status": self.status.value,
            "steps": self.steps,
            "result": self.result,
            "error": self.error,
        }
        if with_trace and self.trace is not None:
            data["trace"] = [e.to_dict() for e in self.trace]
        return data
