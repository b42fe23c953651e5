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
import dataclasses
import enum
import typing as tp

from procedure_vm import constants as c
from procedure_vm.machine import models


class ViolationKind(str, enum.Enum):
    DUPLICATE_KEY = "duplicate dispatch key"
    FOREIGN_SYMBOL = "symbol outside alphabet"
    UNDECLARED_ACTION = "undeclared action"
    UNREACHABLE_STATE = "unreachable state"

    @property
    def is_error(self) -> bool:
        return self != ViolationKind.UNREACHABLE_STATE


class Violation(tp.NamedTuple):
    kind: ViolationKind
    detail: str

    def __str__(self) -> str:
        return f"{self.kind.value} {self.detail}"


@dataclasses.dataclass
class ValidationReport:
    machine_name: str
    violations: tp.List[Violation] = dataclasses.field(default_factory=list)

    @property
    def errors(self) -> tp.List[Violation]:
        return [v for v in self.violations if v.kind.is_error]

    @property
    def is_valid(self) -> bool:
        return not self.errors

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return {
            "machine": self.machine_name,
            "valid": self.is_valid,
            "violations": [
                {"kind": v.kind.value, "detail": v.detail}
                for v in self.violations
            ],
        }


def _reachable_states(machine: models.Machine) -> tp.Set[int]:
    edges = collections.defaultdict(set)
    for i in machine.instructions:
        edges[i.state].update(i.targets)

    seen = {c.INITIAL_STATE}
    queue = collections.deque(seen)
    while queue:
        state = queue.popleft()
        for target in edges[state] - seen:
            seen.add(target)
            queue.append(target)
    return seen


def validate_machine(machine: models.Machine) -> ValidationReport:
    """Check determinism, alphabet and vocabulary of a machine.

    Unreachable states are reported too, but they don't make the machine
    invalid.
    """
    report = ValidationReport(machine_name=machine.name)

    by_key = collections.Counter(i.key for i in machine.instructions)
    for (state, symbol), count in sorted(by_key.items()):
        if count > 1:
            report.violations.append(
                Violation(
                    ViolationKind.DUPLICATE_KEY,
                    f"({models.state_name(state)},{symbol})",
                )
            )

    for instruction in machine.instructions:
        foreign = [s for s in instruction.symbols if s not in machine.alphabet]
        for symbol in foreign:
            report.violations.append(
                Violation(
                    ViolationKind.FOREIGN_SYMBOL,
                    f"'{symbol}' in '{instruction}'",
                )
            )

        action_id = instruction.action_id
        if action_id is not None and action_id not in machine.actions:
            report.violations.append(
                Violation(
                    ViolationKind.UNDECLARED_ACTION,
                    f"'{action_id}' in '{instruction}'",
                )
            )

    reachable = _reachable_states(machine)
    sources = {i.state for i in machine.instructions}
    for state in sorted(sources - reachable):
        report.violations.append(
            Violation(
                ViolationKind.UNREACHABLE_STATE, models.state_name(state)
            )
        )

    return report
