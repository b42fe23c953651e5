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
"""Built-in candidate deciders."""

from __future__ import annotations

import re
import typing as tp

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.actions import base
from procedure_vm.actions import deciders
from procedure_vm.actions import worlds
from procedure_vm.diagonal import refutation
from procedure_vm.encoding import quoting
from procedure_vm.machine import executor
from procedure_vm.machine import models

_SIMULATION = re.compile(r"(sim|bounded-sim):([1-9][0-9]*)")


class ConstVerifier(deciders.AbstractVerifier):
    def __init__(self, answer: str) -> None:
        name = "yes" if answer == self.YES else "no"
        super().__init__(f"const-{name}", c.DEF_CANDIDATE_BUDGET)
        self._answer = answer

    def decide(self, quoted: str, argument: str) -> str:
        return self._answer


class ConstHalting(deciders.AbstractHaltingDecider):
    def __init__(self, answer: str) -> None:
        super().__init__(f"const-{answer}", c.DEF_CANDIDATE_BUDGET)
        self._answer = answer

    def decide(self, quoted: str, argument: str) -> str:
        return self._answer


class StepMeter:
    """Steps one answer of a candidate may spend, nested runs included."""

    def __init__(self, allowance: int) -> None:
        self.allowance = allowance
        self.used = 0
        self.exhausted = False

    @property
    def remaining(self) -> int:
        return max(self.allowance - self.used, 0)

    def charge(self, steps: int) -> None:
        self.used += steps
        if self.used > self.allowance:
            self.exhausted = True


class _Simulation:
    """Bounded run of a quoted machine in a sandbox world.

    The sandbox serves the reading of the construction under test with a
    nested candidate of the same kind, one level deeper. At ``max_depth``
    that reading answers CannotPerform.

    Every run of one answer, nested ones included, is charged to a shared
    StepMeter of ``budget * max_depth`` steps. An answer that overdraws it
    raises CandidateTimeoutError.
    """

    READING: tp.ClassVar[str]

    def __init__(
        self,
        budget: int,
        params: worlds.ThermometerParams,
        depth: int = 0,
        max_depth: int = c.DEF_SIMULATION_DEPTH,
        meter: StepMeter | None = None,
    ) -> None:
        self._params = params
        self._depth = depth
        self._max_depth = max_depth
        self._sim_budget = budget
        self._meter = meter

    def nested(self, meter: StepMeter) -> base.AbstractProvider:
        if self._depth + 1 >= self._max_depth:
            return base.UnavailableProvider(reading_ids=(self.READING,))
        inner = type(self)(
            self._sim_budget,
            self._params,
            self._depth + 1,
            self._max_depth,
            meter=meter,
        )
        return deciders.DeciderProvider(self.READING, inner)

    def simulate(self, quoted: str, argument: str) -> models.RunOutcome | None:
        """Run the quoted machine, None if it can't start on ``argument``."""
        machine = quoting.unquote(quoted)
        meter = self._meter or StepMeter(self._sim_budget * self._max_depth)
        budget = min(self._sim_budget, meter.remaining)
        if budget == 0:
            meter.exhausted = True
            raise exceptions.CandidateTimeoutError(
                f"{self.id} spent its {meter.allowance} steps"
            )

        providers = self._params.providers(self.nested(meter))
        try:
            outcome = executor.run(machine, argument, providers, budget)
        except exceptions.InvalidInputError:
            return None

        meter.charge(outcome.steps)
        cut = (
            budget < self._sim_budget
            and outcome.status == c.RunStatus.BUDGET_EXHAUSTED
        )
        if cut or (self._meter is None and meter.exhausted):
            meter.exhausted = True
            raise exceptions.CandidateTimeoutError(
                f"{self.id} spent {meter.used} of {meter.allowance} steps"
            )
        return outcome


class SimulatingVerifier(_Simulation, deciders.AbstractVerifier):
    """Says "1" iff the bounded run measures the temperature."""

    READING = c.READ_BLUE_SAYS_YES

    def __init__(
        self,
        budget: int,
        params: worlds.ThermometerParams,
        depth: int = 0,
        max_depth: int = c.DEF_SIMULATION_DEPTH,
        meter: StepMeter | None = None,
    ) -> None:
        deciders.AbstractVerifier.__init__(self, f"sim:{budget}", budget)
        _Simulation.__init__(self, budget, params, depth, max_depth, meter)

    def decide(self, quoted: str, argument: str) -> str:
        outcome = self.simulate(quoted, argument)
        if outcome is not None and refutation.measures_temperature(
            outcome, self._params
        ):
            return self.YES
        return self.NO


class BoundedSimHalting(_Simulation, deciders.AbstractHaltingDecider):
    """Says "H" iff the bounded run halts."""

    READING = c.READ_H_SAYS_HALT

    def __init__(
        self,
        budget: int,
        params: worlds.ThermometerParams,
        depth: int = 0,
        max_depth: int = c.DEF_SIMULATION_DEPTH,
        meter: StepMeter | None = None,
    ) -> None:
        deciders.AbstractHaltingDecider.__init__(
            self, f"bounded-sim:{budget}", budget
        )
        _Simulation.__init__(self, budget, params, depth, max_depth, meter)

    def decide(self, quoted: str, argument: str) -> str:
        outcome = self.simulate(quoted, argument)
        if outcome is not None and outcome.halted:
            return self.YES
        return self.NO


def parse_verifier(
    candidate_id: str, params: worlds.ThermometerParams | None = None
) -> deciders.AbstractVerifier:
    """Candidate verifier from ``const-yes``, ``const-no`` or ``sim:N``."""
    params = params or worlds.ThermometerParams()
    if candidate_id == "const-yes":
        return ConstVerifier(c.VERIFIER_YES)
    if candidate_id == "const-no":
        return ConstVerifier(c.VERIFIER_NO)

    match = _SIMULATION.fullmatch(candidate_id)
    if match and match.group(1) == "sim":
        return SimulatingVerifier(int(match.group(2)), params)

    raise ValueError(f"Unknown candidate verifier '{candidate_id}'")


def parse_halting_decider(
    candidate_id: str, params: worlds.ThermometerParams | None = None
) -> deciders.AbstractHaltingDecider:
    """Candidate from ``const-H``, ``const-N`` or ``[bounded-]sim:N``."""
    params = params or worlds.ThermometerParams()
    if candidate_id == "const-H":
        return ConstHalting(c.HALTING_YES)
    if candidate_id == "const-N":
        return ConstHalting(c.HALTING_NO)

    match = _SIMULATION.fullmatch(candidate_id)
    if match:
        return BoundedSimHalting(int(match.group(2)), params)

    raise ValueError(f"Unknown candidate halting decider '{candidate_id}'")
