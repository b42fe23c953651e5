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

import typing as tp

if tp.TYPE_CHECKING:
    from procedure_vm.machine.validation import ValidationReport


class InvalidMachineError(ValueError):
    """The machine violates determinism, its alphabet or its vocabulary."""

    def __init__(self, report: "ValidationReport") -> None:
        self.report = report
        details = "; ".join(str(v) for v in report.errors)
        super().__init__(f"Invalid machine {report.machine_name}: {details}")


class InvalidInputError(ValueError):
    pass


class CompositionError(ValueError):
    pass


class DslSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")


class DecodeError(ValueError):
    pass


class NotNumericError(ValueError):
    pass


class ExecutionError(RuntimeError):
    """Misconfiguration detected while a machine is running.

    Unlike CannotPerform this is not a branch of the procedure.
    """


class CandidateTimeoutError(RuntimeError):
    """A candidate decider did not answer within its declared budget."""
