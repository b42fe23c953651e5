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
from procedure_vm import exceptions
from procedure_vm import utils
from procedure_vm.actions import base
from procedure_vm.actions import deciders
from procedure_vm.actions import worlds
from procedure_vm.diagonal import construction
from procedure_vm.encoding import quoting
from procedure_vm.logger import AbstractLogger, DummyLogger
from procedure_vm.machine import executor
from procedure_vm.machine import models
from procedure_vm.machine import transform

_BRANCHES = {
    base.ActionResponse.TRUE.value: c.Branch.YES,
    base.ActionResponse.FALSE.value: c.Branch.NO,
    base.ActionResponse.CANNOT_PERFORM.value: c.Branch.CANNOT_PERFORM,
}


@functools.lru_cache(maxsize=32)
def reference_output(params: worlds.ThermometerParams) -> str | None:
    """What the reference procedure prints in a world, None on failure."""
    outcome = executor.run(
        construction.make_reference_thermometer(), "", params.providers()
    )
    if not outcome.halted or not outcome.result.isdigit():
        return None
    return outcome.result


def measures_temperature(
    outcome: models.RunOutcome, params: worlds.ThermometerParams
) -> bool:
    """Halted with the result the reference procedure gives in the world."""
    if not outcome.halted:
        return False
    expected = reference_output(params)
    return expected is not None and outcome.result == expected


def branch_taken(
    machine: models.Machine,
    trace: tp.Sequence[models.TraceEntry] | None,
    reading: str,
) -> c.Branch:
    """Branch of the first ``reading`` the run performed."""
    for entry in trace or ():
        instruction = machine.dispatch[(entry.state, entry.symbol)]
        if (
            isinstance(instruction, models.ReadAct)
            and instruction.reading == reading
        ):
            return _BRANCHES[entry.response]
    return c.Branch.NOT_REACHED


@dataclasses.dataclass
class RefutationReport:
    candidate_id: str
    quote: str
    diagonal_digest: str
    diagonal_length: int
    verdict: str | None
    actual_behavior: c.Behavior
    contradiction: bool
    budget: int
    world: tp.Dict[str, tp.Any]
    branch: c.Branch = c.Branch.NOT_REACHED
    status: c.RunStatus | None = None
    result: str | None = None
    steps: int | None = None
    transcript: tp.List[str] = dataclasses.field(default_factory=list)

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        data = dataclasses.asdict(self)
        data["actual_behavior"] = self.actual_behavior.value
        data["branch"] = self.branch.value
        data["status"] = self.status.value if self.status else None
        return data


class ProbeResult(tp.NamedTuple):
    outcome: models.RunOutcome
    branch: c.Branch


def _outcome_line(outcome: models.RunOutcome) -> str:
    return (
        f"outcome: {outcome.status.value}, result '{outcome.result}', "
        f"{outcome.steps} steps"
    )


def _green_transcript(
    branch: c.Branch, outcome: models.RunOutcome
) -> tp.List[str]:
    if branch == c.Branch.YES:
        return [
            "green: blue says yes, the tentative procedure is turned off",
            f"green: printed '{outcome.result}' and halted",
        ]
    if branch == c.Branch.NO:
        return [
            "green: blue says no, the reference procedure takes over",
            f"red: measured the temperature, printed '{outcome.result}'",
        ]
    if branch == c.Branch.CANNOT_PERFORM:
        return [
            "green: blue cannot perform, the tape is not a procedure",
            f"green: printed '{outcome.result}' and halted",
        ]
    return ["green: blue was never asked"]


def _timeout_report(
    candidate: deciders.AbstractDecider,
    core_quote: str,
    diagonal_quote: str,
    budget: int,
    world: tp.Dict[str, tp.Any],
    role: str,
) -> RefutationReport:
    return RefutationReport(
        candidate_id=candidate.id,
        quote=core_quote,
        diagonal_digest=utils.digest(diagonal_quote),
        diagonal_length=len(diagonal_quote),
        verdict=None,
        actual_behavior=c.Behavior.UNDETERMINED,
        # no answer within budget: the candidate is not effective
        contradiction=True,
        budget=budget,
        world=world,
        transcript=[
            f"{role}: {candidate.id} gave no answer within "
            f"{candidate.budget} steps, it is not effective"
        ],
    )


def refute_verifier(
    candidate: deciders.AbstractVerifier,
    params: worlds.ThermometerParams | None = None,
    budget: int = c.DEF_BUDGET,
    logger: AbstractLogger | None = None,
) -> RefutationReport:
    """Confront ``candidate`` with the green machine fed its own quote.

    The verdict is asked about green on its own quote, the behavior is
    observed by running the baked machine G on an empty tape.
    """
    params = params or worlds.ThermometerParams()
    logger = logger or DummyLogger()

    green = construction.make_green(
        candidate, construction.make_reference_thermometer()
    )
    machine, machine_quote = construction.self_apply(green)
    core = quoting.quote(green)
    world = params.to_dict()

    try:
        verdict = candidate.decide(core, core)
    except exceptions.CandidateTimeoutError:
        logger.warn(f"Candidate {candidate.id} timed out")
        return _timeout_report(
            candidate, core, machine_quote, budget, world, "blue"
        )

    providers = params.providers(deciders.make_verifier_provider(candidate))
    outcome = executor.run(
        machine, "", providers, budget, trace_level="steps", logger=logger
    )

    if not outcome.halted:
        behavior = c.Behavior.NON_EFFECTIVE
    elif measures_temperature(outcome, params):
        behavior = c.Behavior.MEASURED_TEMPERATURE
    else:
        behavior = c.Behavior.DID_NOT_MEASURE

    measured = behavior == c.Behavior.MEASURED_TEMPERATURE
    contradiction = (verdict == candidate.YES and not measured) or (
        verdict == candidate.NO and measured
    )
    branch = branch_taken(machine, outcome.trace, c.READ_BLUE_SAYS_YES)

    transcript = [
        f"blue: {candidate.id} answers '{verdict}' about green on its "
        "own quote",
        f"green: wrote its own quote, {len(core)} symbols, in "
        f"{transform.bake_overhead(core)} steps",
        *_green_transcript(branch, outcome),
        _outcome_line(outcome),
        f"verdict '{verdict}' vs {behavior.value}: "
        + ("contradiction" if contradiction else "no contradiction"),
    ]
    logger.info(f"Refuting {candidate.id}: {transcript[-1]}")

    return RefutationReport(
        candidate_id=candidate.id,
        quote=core,
        diagonal_digest=utils.digest(machine_quote),
        diagonal_length=len(machine_quote),
        verdict=verdict,
        actual_behavior=behavior,
        contradiction=contradiction,
        budget=budget,
        world=world,
        branch=branch,
        status=outcome.status,
        result=outcome.result,
        steps=outcome.steps,
        transcript=transcript,
    )


def probe_green(
    candidate: deciders.AbstractVerifier,
    tape: str,
    params: worlds.ThermometerParams | None = None,
    budget: int = c.DEF_BUDGET,
) -> ProbeResult:
    """Run green itself on an arbitrary tape.

    Green clears its tape up to the first blank cell, so the tape must be
    a single word: a tape holding the blank symbol is rejected with
    InvalidInputError.
    """
    if c.BLANK in tape:
        raise exceptions.InvalidInputError(
            f"Green reads its tape as one word, '{c.BLANK}' cannot occur "
            f"in it: {tape!r}"
        )
    params = params or worlds.ThermometerParams()
    green = construction.make_green(
        candidate, construction.make_reference_thermometer()
    )
    providers = params.providers(deciders.make_verifier_provider(candidate))
    outcome = executor.run(green, tape, providers, budget, trace_level="steps")
    return ProbeResult(
        outcome, branch_taken(green, outcome.trace, c.READ_BLUE_SAYS_YES)
    )


def refute_halting_decider(
    candidate: deciders.AbstractHaltingDecider,
    budget: int | None = None,
    logger: AbstractLogger | None = None,
) -> RefutationReport:
    """Confront ``candidate`` with the machine doing the opposite of it.

    ``budget`` defaults to ten times the budget of the candidate.
    """
    logger = logger or DummyLogger()
    budget = budget or 10 * candidate.budget

    core = quoting.quote(construction.make_halting_core(candidate))
    machine, machine_quote = construction.make_halting_diagonal(candidate)
    world = {"type": "halting", "reading": c.READ_H_SAYS_HALT}

    try:
        verdict = candidate.decide(core, core)
    except exceptions.CandidateTimeoutError:
        logger.warn(f"Candidate {candidate.id} timed out")
        return _timeout_report(
            candidate, core, machine_quote, budget, world, "h"
        )

    providers = base.ProviderSet(
        [deciders.make_halting_provider(candidate)]
    )
    outcome = executor.run(
        machine, "", providers, budget, trace_level="steps", logger=logger
    )

    if outcome.halted:
        behavior = c.Behavior.HALTED
    elif outcome.status == c.RunStatus.BUDGET_EXHAUSTED:
        behavior = c.Behavior.BUDGET_EXHAUSTED
    else:
        behavior = c.Behavior.UNDETERMINED

    contradiction = (verdict == candidate.YES) != outcome.halted
    branch = branch_taken(machine, outcome.trace, c.READ_H_SAYS_HALT)

    transcript = [
        f"h: {candidate.id} answers '{verdict}' about D on its own quote",
        f"D: asked h, branch {branch.value}",
        _outcome_line(outcome),
        f"verdict '{verdict}' vs {behavior.value} within {budget} steps: "
        + ("contradiction" if contradiction else "no contradiction"),
    ]
    logger.info(f"Refuting {candidate.id}: {transcript[-1]}")

    return RefutationReport(
        candidate_id=candidate.id,
        quote=core,
        diagonal_digest=utils.digest(machine_quote),
        diagonal_length=len(machine_quote),
        verdict=verdict,
        actual_behavior=behavior,
        contradiction=contradiction,
        budget=budget,
        world=world,
        branch=branch,
        status=outcome.status,
        result=outcome.result,
        steps=outcome.steps,
        transcript=transcript,
    )
