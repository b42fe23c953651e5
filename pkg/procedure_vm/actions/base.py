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
import dataclasses
import enum
import typing as tp

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm import utils


class ActionResponse(str, enum.Enum):
    PERFORMED = "performed"
    TRUE = "true"
    FALSE = "false"
    CANNOT_PERFORM = "cannot_perform"


class Observation(tp.NamedTuple):
    """Read-only view a provider gets of the running machine."""

    tape_content: str
    invocation_index: int = 0


class AbstractProvider(abc.ABC):
    """Abstract experimental possibility.

    A provider serves a set of actions and reading actions of a simulated
    world. Subclasses declaring a ``WORLD_TYPE`` are registered and can be
    built from a world configuration entry.
    """

    WORLD_TYPE: tp.ClassVar[str | None] = None
    providers_store: tp.ClassVar[tp.List[tp.Type["AbstractProvider"]]] = []

    def __init_subclass__(cls, **kwargs) -> None:
        super().__init_subclass__(**kwargs)
        if cls.WORLD_TYPE is not None:
            cls.providers_store.append(cls)

    @property
    def action_ids(self) -> tp.FrozenSet[str]:
        """Actions performed by the provider."""
        return frozenset()

    @property
    def reading_ids(self) -> tp.FrozenSet[str]:
        """Reading actions answered by the provider."""
        return frozenset()

    def perform(self, action_id: str, obs: Observation) -> ActionResponse:
        """Perform an action, Performed or CannotPerform."""
        raise exceptions.ExecutionError(
            f"{self} does not perform '{action_id}'"
        )

    def verify(self, reading_id: str, obs: Observation) -> ActionResponse:
        """Verify a binary statement, True, False or CannotPerform."""
        raise exceptions.ExecutionError(
            f"{self} does not answer '{reading_id}'"
        )

    @classmethod
    def from_config(
        cls, world_config: tp.Dict[str, tp.Any], seed: int
    ) -> "AbstractProvider":
        """Create a provider from a world configuration entry."""
        if world_config.get("type") != cls.WORLD_TYPE:
            raise ValueError(f"Not a {cls.WORLD_TYPE} world: {world_config}")
        params = {k: v for k, v in world_config.items() if k != "type"}
        return cls(seed=seed, **params)

    @classmethod
    def find_provider(
        cls, world_config: tp.Dict[str, tp.Any], seed: int
    ) -> "AbstractProvider":
        """Probe all registered worlds to find the right one."""
        for provider in cls.providers_store:
            if provider.WORLD_TYPE == world_config.get("type"):
                return provider.from_config(world_config, seed)

        # Worlds shipped by other packages
        world_type = str(world_config.get("type"))
        provider = utils.load_from_entry_point(
            c.WORLDS_ENTRY_POINT_GROUP, world_type
        )
        return provider.from_config(world_config, seed)


class UnavailableProvider(AbstractProvider):
    """Registered ids that always answer CannotPerform."""

    def __init__(
        self,
        action_ids: tp.Iterable[str] = (),
        reading_ids: tp.Iterable[str] = (),
    ) -> None:
        self._action_ids = frozenset(action_ids)
        self._reading_ids = frozenset(reading_ids)

    @property
    def action_ids(self) -> tp.FrozenSet[str]:
        return self._action_ids

    @property
    def reading_ids(self) -> tp.FrozenSet[str]:
        return self._reading_ids

    def perform(self, action_id: str, obs: Observation) -> ActionResponse:
        return ActionResponse.CANNOT_PERFORM

    def verify(self, reading_id: str, obs: Observation) -> ActionResponse:
        return ActionResponse.CANNOT_PERFORM

    def __str__(self) -> str:
        return "Unavailable"


class ProviderSet:
    """Experimental possibilities available to one run.

    Maps every action and reading id to the provider serving it. A set is
    owned by a single run and must not be shared between concurrent runs.
    """

    def __init__(
        self,
        providers: tp.Iterable[AbstractProvider] = (),
        world_seed: int = c.DEF_SEED,
    ) -> None:
        self._world_seed = world_seed
        self._invocations = 0
        self._actions: tp.Dict[str, AbstractProvider] = {}
        self._readings: tp.Dict[str, AbstractProvider] = {}

        for provider in providers:
            for registry, ids in (
                (self._actions, provider.action_ids),
                (self._readings, provider.reading_ids),
            ):
                for id_ in ids:
                    if id_ in registry:
                        raise ValueError(
                            f"'{id_}' is served by both {registry[id_]} "
                            f"and {provider}"
                        )
                    registry[id_] = provider

    @property
    def world_seed(self) -> int:
        return self._world_seed

    @property
    def invocations(self) -> int:
        return self._invocations

    @property
    def registered(self) -> tp.FrozenSet[str]:
        return frozenset(self._actions) | frozenset(self._readings)

    def observe(self, tape_content: str) -> Observation:
        return Observation(tape_content, self._invocations)

    def perform(self, action_id: str, obs: Observation) -> ActionResponse:
        provider = self._actions.get(action_id)
        if provider is None:
            raise exceptions.ExecutionError(
                f"No provider for action '{action_id}'"
            )
        self._invocations += 1
        return provider.perform(action_id, obs)

    def verify(self, reading_id: str, obs: Observation) -> ActionResponse:
        provider = self._readings.get(reading_id)
        if provider is None:
            raise exceptions.ExecutionError(
                f"No provider for reading action '{reading_id}'"
            )
        self._invocations += 1
        return provider.verify(reading_id, obs)


@dataclasses.dataclass(frozen=True)
class WorldFactory:
    """Builds a fresh ProviderSet per seed from world configuration."""

    WORLDS_KEY: tp.ClassVar[str] = "worlds"

    worlds: tp.Tuple[tp.Dict[str, tp.Any], ...] = ()

    def __call__(self, seed: int) -> ProviderSet:
        providers = [
            AbstractProvider.find_provider(dict(world), seed)
            for world in self.worlds
        ]
        return ProviderSet(providers, world_seed=seed)

    def world(self, world_type: str) -> tp.Dict[str, tp.Any] | None:
        for world in self.worlds:
            if world.get("type") == world_type:
                return dict(world)
        return None

    @classmethod
    def from_config(cls, config: tp.Dict[str, tp.Any] | None) -> WorldFactory:
        """Create a factory from a parsed world configuration file."""
        if not config:
            return cls()

        worlds = config.get(cls.WORLDS_KEY)
        if not isinstance(worlds, list):
            raise ValueError(
                f"World configuration needs a '{cls.WORLDS_KEY}' list"
            )

        for world in worlds:
            if not isinstance(world, dict) or "type" not in world:
                raise ValueError(f"World entry without a type: {world}")

        factory = cls(tuple(dict(w) for w in worlds))
        # Fail on unknown types or bad parameters before any run
        factory(c.DEF_SEED)
        return factory
