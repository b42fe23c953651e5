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

import abc
import typing as tp

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.actions import base as actions
from procedure_vm.logger import AbstractLogger, DummyLogger
from procedure_vm.machine import models
from procedure_vm.machine import validation


class AbstractOracle(abc.ABC):
    """Predicate over the non-blank tape content used by OracleBranch."""

    @abc.abstractmethod
    def accepts(self, tape_content: str) -> bool:
        """Return True to take the yes branch."""


class SetOracle(AbstractOracle):
    """Oracle answering membership in a fixed set of strings."""

    def __init__(self, members: tp.Iterable[str]) -> None:
        self._members = frozenset(members)

    def accepts(self, tape_content: str) -> bool:
        return tape_content in self._members


class StepResult(tp.NamedTuple):
    halted: bool
    instruction: models.Instruction | None = None
    response: actions.ActionResponse | None = None


_Handler = tp.Callable[
    [
        tp.Any,
        models.Configuration,
        tp.Optional[actions.ProviderSet],
        tp.Optional[AbstractOracle],
    ],
    tp.Tuple[int, tp.Optional[actions.ActionResponse]],
]


def _print(instruction, config, providers, oracle):
    config.tape.write(config.head, instruction.write)
    return instruction.next_state, None


def _move_right(instruction, config, providers, oracle):
    config.head += 1
    return instruction.next_state, None


def _move_left(instruction, config, providers, oracle):
    config.head -= 1
    return instruction.next_state, None


def _oracle(instruction, config, providers, oracle):
    if oracle is None:
        raise exceptions.ExecutionError(
            f"Oracle instruction '{instruction}' without an oracle"
        )
    if oracle.accepts(config.tape.span()):
        return instruction.yes_state, None
    return instruction.no_state, None


def _require(providers, instruction) -> actions.ProviderSet:
    if providers is None:
        raise exceptions.ExecutionError(
            f"Instruction '{instruction}' needs experimental possibilities"
        )
    return providers


def _act(instruction, config, providers, oracle):
    providers = _require(providers, instruction)
    obs = providers.observe(config.tape.span())
    response = providers.perform(instruction.action, obs)
    if response == actions.ActionResponse.PERFORMED:
        return instruction.ok_state, response
    if response == actions.ActionResponse.CANNOT_PERFORM:
        return instruction.fail_state, response
    raise exceptions.ExecutionError(
        f"Action '{instruction.action}' answered {response.value}"
    )


def _read_act(instruction, config, providers, oracle):
    providers = _require(providers, instruction)
    obs = providers.observe(config.tape.span())
    response = providers.verify(instruction.reading, obs)
    if response == actions.ActionResponse.TRUE:
        return instruction.true_state, response
    if response == actions.ActionResponse.FALSE:
        return instruction.false_state, response
    if response == actions.ActionResponse.CANNOT_PERFORM:
        return instruction.fail_state, response
    raise exceptions.ExecutionError(
        f"Reading action '{instruction.reading}' answered {response.value}"
    )


_HANDLERS: tp.Dict[tp.Type[models.Instruction], _Handler] = {
    models.Print: _print,
    models.MoveRight: _move_right,
    models.MoveLeft: _move_left,
    models.OracleBranch: _oracle,
    models.Act: _act,
    models.ReadAct: _read_act,
}


def result_of(tape: models.Tape) -> str:
    """The result of a run: the non-blank span left on the tape."""
    return tape.span()


def step(
    config: models.Configuration,
    machine: models.Machine,
    providers: actions.ProviderSet | None = None,
    oracle: AbstractOracle | None = None,
) -> StepResult:
    """Apply the instruction matching the configuration, in place.

    A configuration without a matching instruction halts and is left
    untouched.
    """
    symbol = config.tape.read(config.head)
    instruction = machine.dispatch.get((config.state, symbol))
    if instruction is None:
        return StepResult(halted=True)

    handler = _HANDLERS[type(instruction)]
    next_state, response = handler(instruction, config, providers, oracle)
    config.state = next_state
    config.steps += 1
    return StepResult(False, instruction, response)


def check_runnable(machine: models.Machine, symbols: str) -> None:
    report = validation.validate_machine(machine)
    if not report.is_valid:
        raise exceptions.InvalidMachineError(report)

    foreign = sorted(set(symbols) - machine.alphabet)
    if foreign:
        raise exceptions.InvalidInputError(
            f"Input symbols {foreign} are not in the alphabet of "
            f"{machine.name}"
        )


def run(
    machine: models.Machine,
    symbols: str = "",
    providers: actions.ProviderSet | None = None,
    budget: int = c.DEF_BUDGET,
    trace_level: c.TraceLevel = "none",
    oracle: AbstractOracle | None = None,
    logger: AbstractLogger | None = None,
) -> models.RunOutcome:
    """Run a machine from q0 with the input written on cells 0..len-1.

    The run stops when no instruction matches (halted), after ``budget``
    steps (budget exhausted) or on a misconfiguration (execution error).
    """
    if budget <= 0:
        raise ValueError(f"Budget must be positive, got {budget}")
    check_runnable(machine, symbols)

    logger = logger or DummyLogger()
    config = models.Configuration.initial(symbols)
    trace = [] if trace_level == "steps" else None

    while True:
        state, head = config.state, config.head
        symbol = config.tape.read(head)
        if config.steps >= budget:
            if (state, symbol) not in machine.dispatch:
                break
            logger.debug(f"{machine.name}: budget {budget} exhausted")
            return models.RunOutcome(
                status=c.RunStatus.BUDGET_EXHAUSTED,
                steps=config.steps,
                trace=trace,
            )

        try:
            result = step(config, machine, providers, oracle)
        except exceptions.ExecutionError as e:
            logger.error(f"{machine.name}: {e}")
            return models.RunOutcome(
                status=c.RunStatus.EXECUTION_ERROR,
                steps=config.steps,
                error=str(e),
                trace=trace,
            )

        if result.halted:
            break

        if trace is not None:
            response = result.response
            trace.append(
                models.TraceEntry(
                    step=config.steps - 1,
                    state=state,
                    head=head,
                    symbol=symbol,
                    instruction=str(result.instruction),
                    response=response.value if response else None,
                )
            )

    logger.debug(f"{machine.name}: halted after {config.steps} steps")
    return models.RunOutcome(
        status=c.RunStatus.HALTED,
        steps=config.steps,
        result=result_of(config.tape),
        trace=trace,
    )
