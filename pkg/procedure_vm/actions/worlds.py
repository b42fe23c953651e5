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
"""Simulated worlds.

Stochastic worlds draw from ``random.Random(seed)``, the Mersenne Twister
(MT19937) generator of the standard library; Gaussian noise uses its
``gauss`` method. Two worlds built with the same seed answer the same
sequence of calls identically.
"""

from __future__ import annotations

import dataclasses
import random
import re
import typing as tp

from procedure_vm import constants as c
from procedure_vm.actions import base

DICE_FACES = 6
_THERMO_RENDERING = re.compile(r"[0-9]{2}\.[0-9]{3}")


def _reading_answer(statement: bool) -> base.ActionResponse:
    if statement:
        return base.ActionResponse.TRUE
    return base.ActionResponse.FALSE


class DiceWorld(base.AbstractProvider):
    """A die: ``roll`` and the readings ``shows_<k>``, ``shows_ge_<k>``."""

    WORLD_TYPE = "dice"

    def __init__(self, seed: int = c.DEF_SEED) -> None:
        super().__init__()
        self._rng = random.Random(seed)
        self._face: int | None = None
        self._readings: tp.Dict[str, tp.Callable[[int], bool]] = {}
        for k in range(1, DICE_FACES + 1):
            self._readings[f"shows_{k}"] = lambda f, k=k: f == k
            self._readings[f"shows_ge_{k}"] = lambda f, k=k: f >= k

    @property
    def action_ids(self) -> tp.FrozenSet[str]:
        return frozenset((c.ACT_ROLL,))

    @property
    def reading_ids(self) -> tp.FrozenSet[str]:
        return frozenset(self._readings)

    @property
    def face(self) -> int | None:
        return self._face

    def perform(
        self, action_id: str, obs: base.Observation
    ) -> base.ActionResponse:
        if action_id != c.ACT_ROLL:
            return super().perform(action_id, obs)
        self._face = self._rng.randint(1, DICE_FACES)
        return base.ActionResponse.PERFORMED

    def verify(
        self, reading_id: str, obs: base.Observation
    ) -> base.ActionResponse:
        if reading_id not in self._readings:
            return super().verify(reading_id, obs)
        # Nothing is showing before the first roll
        if self._face is None:
            return base.ActionResponse.CANNOT_PERFORM
        return _reading_answer(self._readings[reading_id](self._face))

    def __str__(self) -> str:
        return "Dice"


class ThermometerWorld(base.AbstractProvider):
    """A noisy thermometer rendering its samples as ``DD.ddd``.

    ``sample`` draws ``true_temp + gauss(0, noise_sigma)``. The readings
    ``digit_<pos>_ge_<d>`` compare digit ``pos`` of the last sample, the
    dot not counted, with ``d``. Named aliases like ``tens_digit_ge_<d>``
    are served too.
    """

    WORLD_TYPE = "thermometer"

    def __init__(
        self,
        true_temp: float,
        noise_sigma: float = 0.0,
        seed: int = c.DEF_SEED,
        available: bool = True,
    ) -> None:
        super().__init__()
        if not 0 <= true_temp < 100:
            raise ValueError(
                f"True temperature {true_temp} can't be rendered as DD.ddd"
            )
        if noise_sigma < 0:
            raise ValueError(f"Noise sigma must be >= 0, got {noise_sigma}")

        self._true_temp = float(true_temp)
        self._noise_sigma = float(noise_sigma)
        self._available = available
        self._rng = random.Random(seed)
        self._rendering: str | None = None

        self._readings: tp.Dict[str, tp.Tuple[int, int]] = {}
        for pos, alias in enumerate(c.THERMO_DIGIT_NAMES):
            for d in range(10):
                self._readings[f"digit_{pos}_ge_{d}"] = (pos, d)
                self._readings[f"{alias}_digit_ge_{d}"] = (pos, d)

    @property
    def action_ids(self) -> tp.FrozenSet[str]:
        return frozenset((c.ACT_SAMPLE,))

    @property
    def reading_ids(self) -> tp.FrozenSet[str]:
        return frozenset(self._readings)

    @property
    def rendering(self) -> str | None:
        """The last sample as ``DD.ddd``, None without a valid sample."""
        return self._rendering

    @staticmethod
    def render(value: float) -> str | None:
        rendering = f"{value:06.3f}"
        if _THERMO_RENDERING.fullmatch(rendering) is None:
            return None
        return rendering

    def perform(
        self, action_id: str, obs: base.Observation
    ) -> base.ActionResponse:
        if action_id != c.ACT_SAMPLE:
            return super().perform(action_id, obs)
        if not self._available:
            return base.ActionResponse.CANNOT_PERFORM

        value = self._true_temp + self._rng.gauss(0.0, self._noise_sigma)
        self._rendering = self.render(value)
        # A saturated instrument shows nothing
        if self._rendering is None:
            return base.ActionResponse.CANNOT_PERFORM
        return base.ActionResponse.PERFORMED

    def verify(
        self, reading_id: str, obs: base.Observation
    ) -> base.ActionResponse:
        if reading_id not in self._readings:
            return super().verify(reading_id, obs)
        if self._rendering is None:
            return base.ActionResponse.CANNOT_PERFORM

        pos, d = self._readings[reading_id]
        digits = self._rendering.replace(".", "")
        return _reading_answer(int(digits[pos]) >= d)

    def __str__(self) -> str:
        return f"Thermometer({self._true_temp}, sigma={self._noise_sigma})"


class VoltageSupplyWorld(base.AbstractProvider):
    """Stub voltage supply, unavailable when the supply is removed."""

    WORLD_TYPE = "voltage_supply"

    def __init__(self, available: bool = True, seed: int = c.DEF_SEED) -> None:
        super().__init__()
        self._available = available
        self._voltage: int | None = None

    @property
    def action_ids(self) -> tp.FrozenSet[str]:
        return frozenset((c.ACT_SET_VOLTAGE,))

    @property
    def reading_ids(self) -> tp.FrozenSet[str]:
        return frozenset((c.READ_VOLTAGE,))

    def perform(
        self, action_id: str, obs: base.Observation
    ) -> base.ActionResponse:
        if action_id != c.ACT_SET_VOLTAGE:
            return super().perform(action_id, obs)
        if not self._available:
            return base.ActionResponse.CANNOT_PERFORM
        self._voltage = 10
        return base.ActionResponse.PERFORMED

    def verify(
        self, reading_id: str, obs: base.Observation
    ) -> base.ActionResponse:
        if reading_id != c.READ_VOLTAGE:
            return super().verify(reading_id, obs)
        if not self._available:
            return base.ActionResponse.CANNOT_PERFORM
        return _reading_answer(self._voltage == 10)

    def __str__(self) -> str:
        return "VoltageSupply" if self._available else "VoltageSupply(removed)"


def make_dice_world(seed: int = c.DEF_SEED) -> DiceWorld:
    return DiceWorld(seed=seed)


def make_thermometer_world(
    true_temp: float, noise_sigma: float = 0.0, seed: int = c.DEF_SEED
) -> ThermometerWorld:
    return ThermometerWorld(true_temp, noise_sigma, seed)


def make_voltage_supply(available: bool = True) -> VoltageSupplyWorld:
    return VoltageSupplyWorld(available=available)


@dataclasses.dataclass(frozen=True)
class ThermometerParams:
    """Parameters of the thermometer world a diagonal run happens in."""

    true_temp: float = 23.7
    noise_sigma: float = 0.0
    seed: int = c.DEF_SEED
    available: bool = True

    def world(self) -> ThermometerWorld:
        return ThermometerWorld(
            self.true_temp, self.noise_sigma, self.seed, self.available
        )

    def providers(self, *extra: base.AbstractProvider) -> base.ProviderSet:
        """A fresh provider set with the thermometer and ``extra``."""
        return base.ProviderSet((self.world(),) + extra, world_seed=self.seed)

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        params = dataclasses.asdict(self)
        return {"type": ThermometerWorld.WORLD_TYPE, **params}

    @classmethod
    def from_factory(
        cls, factory: base.WorldFactory, seed: int = c.DEF_SEED
    ) -> ThermometerParams:
        """Take the thermometer entry of a world configuration."""
        world = factory.world(ThermometerWorld.WORLD_TYPE)
        if world is None:
            return cls(seed=seed)

        params = {k: v for k, v in world.items() if k != "type"}
        unknown = set(params) - {"true_temp", "noise_sigma", "available"}
        if unknown:
            raise ValueError(f"Unknown thermometer parameters {unknown}")
        return cls(seed=seed, **params)
