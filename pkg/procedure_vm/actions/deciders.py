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
from procedure_vm.actions import base
from procedure_vm.encoding import quoting
from procedure_vm.machine import models


class AbstractDecider(abc.ABC):
    """Host-level decider about quoted machines.

    A decider must be repeatable: the answer is a pure function of the
    quoted machine and its argument. Deciders that can't answer within
    their budget raise CandidateTimeoutError.
    """

    YES: tp.ClassVar[str]
    NO: tp.ClassVar[str]

    def __init__(self, decider_id: str, budget: int) -> None:
        self._id = decider_id
        self._budget = budget

    @property
    def id(self) -> str:
        return self._id

    @property
    def budget(self) -> int:
        return self._budget

    @abc.abstractmethod
    def decide(self, quoted: str, argument: str) -> str:
        """Answer YES or NO about the machine ``quoted`` on ``argument``."""

    def __str__(self) -> str:
        return self._id


class AbstractVerifier(AbstractDecider):
    """Answers "1" if the machine measures temperature on the argument."""

    YES = c.VERIFIER_YES
    NO = c.VERIFIER_NO


class AbstractHaltingDecider(AbstractDecider):
    """Answers "H" if the machine halts on the argument."""

    YES = c.HALTING_YES
    NO = c.HALTING_NO


def split_tape(tape_content: str) -> tp.Tuple[str, str]:
    """Split tape content into a quoted machine and its argument.

    The quote ends at its terminator, whatever follows is the argument. A
    quote alone stands for the pair of the quote with itself.
    """
    end = tape_content.find(c.QUOTE_TERMINATOR)
    if end < 0:
        raise exceptions.DecodeError("No quoted machine on the tape")
    quoted = tape_content[: end + 1]
    argument = tape_content[end + 1 :]
    return quoted, argument or quoted


class DeciderProvider(base.AbstractProvider):
    """Serves a decider as a reading action over the tape content."""

    def __init__(self, reading_id: str, decider: AbstractDecider) -> None:
        super().__init__()
        self._reading_id = reading_id
        self._decider = decider

    @property
    def decider(self) -> AbstractDecider:
        return self._decider

    @property
    def reading_ids(self) -> tp.FrozenSet[str]:
        return frozenset((self._reading_id,))

    def decode(self, tape_content: str) -> tp.Tuple[models.Machine, str, str]:
        """Decode the pair on the tape, DecodeError if it isn't one."""
        if c.BLANK in tape_content:
            raise exceptions.DecodeError("Blank inside the tape content")
        quoted, argument = split_tape(tape_content)
        return quoting.unquote(quoted), quoted, argument

    def verify(
        self, reading_id: str, obs: base.Observation
    ) -> base.ActionResponse:
        if reading_id != self._reading_id:
            return super().verify(reading_id, obs)

        try:
            _, quoted, argument = self.decode(obs.tape_content)
            answer = self._decider.decide(quoted, argument)
        except (exceptions.DecodeError, exceptions.CandidateTimeoutError):
            return base.ActionResponse.CANNOT_PERFORM

        if answer == self._decider.YES:
            return base.ActionResponse.TRUE
        if answer == self._decider.NO:
            return base.ActionResponse.FALSE
        raise exceptions.ExecutionError(
            f"Decider {self._decider} answered '{answer}'"
        )

    def __str__(self) -> str:
        return f"Decider({self._decider})"


def make_verifier_provider(candidate: AbstractVerifier) -> DeciderProvider:
    return DeciderProvider(c.READ_BLUE_SAYS_YES, candidate)


def make_halting_provider(
    candidate: AbstractHaltingDecider,
) -> DeciderProvider:
    return DeciderProvider(c.READ_H_SAYS_HALT, candidate)
