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
import decimal
import multiprocessing as mp
import re
import typing as tp

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.actions import base as actions
from procedure_vm.logger import AbstractLogger, DummyLogger
from procedure_vm.machine import executor
from procedure_vm.machine import models

MAX_SIGNIFICANT_FIGURES = 5
NON_EFFECTIVE = "non-effective within budget"

_FIXED_POINT = re.compile(r"[0-9]+(\.[0-9]+)?")


class Trial(tp.NamedTuple):
    seed: int
    outcome: models.RunOutcome

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return {"seed": self.seed, **self.outcome.to_dict()}


@dataclasses.dataclass
class TrialSet:
    machine: models.Machine
    input: str
    budget: int
    trials: tp.List[Trial] = dataclasses.field(default_factory=list)

    @property
    def results(self) -> tp.List[str | None]:
        return [t.outcome.result for t in self.trials]

    @property
    def all_halted(self) -> bool:
        return all(t.outcome.halted for t in self.trials)

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return {
            "machine": self.machine.name,
            "input": self.input,
            "budget": self.budget,
            "trials": [t.to_dict() for t in self.trials],
        }


@dataclasses.dataclass(frozen=True)
class Verdict:
    """Repeatability verdict, truthy when repeatable."""

    repeatable: bool
    distinct: tp.Tuple[str, ...] = ()
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.repeatable

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return dataclasses.asdict(self) | {"distinct": list(self.distinct)}


def _run_trial(
    machine: models.Machine,
    symbols: str,
    world_factory: actions.WorldFactory,
    seed: int,
    budget: int,
) -> models.RunOutcome:
    try:
        providers = world_factory(seed)
        return executor.run(machine, symbols, providers, budget)
    except Exception as e:
        return models.RunOutcome(
            status=c.RunStatus.EXECUTION_ERROR, steps=0, error=str(e)
        )


def run_trials(
    machine: models.Machine,
    symbols: str,
    world_factory: actions.WorldFactory,
    seeds: tp.Sequence[int],
    budget: int = c.DEF_BUDGET,
    workers: int = 1,
    logger: AbstractLogger | None = None,
) -> TrialSet:
    """Run ``machine`` once per seed, each time in a fresh world.

    Errors of a trial end up in its outcome. With several ``workers`` the
    trials run in a process pool, the order of ``seeds`` is kept.
    """
    if budget <= 0:
        raise ValueError(f"Budget must be positive, got {budget}")
    executor.check_runnable(machine, symbols)
    logger = logger or DummyLogger()

    args = [(machine, symbols, world_factory, s, budget) for s in seeds]
    if workers > 1 and len(args) > 1:
        with mp.Pool(min(workers, len(args))) as pool:
            outcomes = pool.starmap(_run_trial, args)
    else:
        outcomes = [_run_trial(*a) for a in args]

    trial_set = TrialSet(machine, symbols, budget)
    for seed, outcome in zip(seeds, outcomes):
        if outcome.status == c.RunStatus.EXECUTION_ERROR:
            logger.warn(f"Trial with seed {seed} failed: {outcome.error}")
        trial_set.trials.append(Trial(seed, outcome))

    logger.info(f"Ran {len(trial_set.trials)} trials of {machine.name}")
    return trial_set


def _verdict(results: tp.Iterable[str]) -> Verdict:
    distinct = tuple(sorted(set(results)))
    return Verdict(repeatable=len(distinct) <= 1, distinct=distinct)


def is_repeatable(trial_set: TrialSet) -> Verdict:
    """Repeatable iff every trial halted with the very same result."""
    if not trial_set.all_halted:
        return Verdict(repeatable=False, reason=NON_EFFECTIVE)
    return _verdict(trial_set.results)


def truncate_significant(result: str, n: int) -> str:
    """Round a fixed-point result half-up to ``n`` significant figures."""
    if not 1 <= n <= MAX_SIGNIFICANT_FIGURES:
        raise ValueError(
            f"Significant figures must be in 1..{MAX_SIGNIFICANT_FIGURES}"
        )
    if _FIXED_POINT.fullmatch(result) is None:
        raise exceptions.NotNumericError(
            f"not a numeric quantity value: '{result}'"
        )

    value = decimal.Decimal(result)
    if value.is_zero():
        return "0"

    quantum = decimal.Decimal(1).scaleb(value.adjusted() - n + 1)
    rounded = value.quantize(quantum, rounding=decimal.ROUND_HALF_UP)
    return format(rounded, "f")


def repeatable_after_truncation(trial_set: TrialSet, n: int) -> Verdict:
    if not trial_set.all_halted:
        return Verdict(repeatable=False, reason=NON_EFFECTIVE)
    return _verdict(truncate_significant(r, n) for r in trial_set.results)
