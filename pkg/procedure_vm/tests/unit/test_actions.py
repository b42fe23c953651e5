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
import collections

import pytest

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.actions import base
from procedure_vm.actions import deciders
from procedure_vm.actions import worlds
from procedure_vm.diagonal import candidates

HELLO_QUOTE = "95,104,105::0|0|0|1|1;1|1|1|2;2|0|0|2|3="
OBS = base.Observation("")


class _SlowVerifier(deciders.AbstractVerifier):
    def __init__(self) -> None:
        super().__init__("slow", 1)

    def decide(self, quoted: str, argument: str) -> str:
        raise exceptions.CandidateTimeoutError("too slow")


class _ConfusedVerifier(deciders.AbstractVerifier):
    def __init__(self) -> None:
        super().__init__("confused", 1)

    def decide(self, quoted: str, argument: str) -> str:
        return "maybe"


class TestDiceWorld:

    def test_nothing_shows_before_a_roll(self) -> None:
        dice = worlds.make_dice_world()

        assert dice.verify("shows_1", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )
        assert dice.face is None

    def test_readings_follow_the_face(self) -> None:
        dice = worlds.make_dice_world(seed=3)

        assert dice.perform("roll", OBS) == base.ActionResponse.PERFORMED
        face = dice.face
        for k in range(1, 7):
            shows = dice.verify(f"shows_{k}", OBS)
            shows_ge = dice.verify(f"shows_ge_{k}", OBS)
            assert (shows == base.ActionResponse.TRUE) == (face == k)
            assert (shows_ge == base.ActionResponse.TRUE) == (face >= k)

    def test_roughly_uniform(self) -> None:
        dice = worlds.make_dice_world(seed=42)
        counts = collections.Counter()
        for _ in range(6000):
            dice.perform("roll", OBS)
            counts[dice.face] += 1
            shows = [
                dice.verify(f"shows_{k}", OBS) for k in range(1, 7)
            ]
            assert shows.count(base.ActionResponse.TRUE) == 1

        assert sorted(counts) == [1, 2, 3, 4, 5, 6]
        assert all(800 <= n <= 1200 for n in counts.values())

    def test_same_seed_same_faces(self) -> None:
        first, second = worlds.make_dice_world(9), worlds.make_dice_world(9)
        faces = []
        for dice in (first, second):
            rolls = []
            for _ in range(1000):
                dice.perform("roll", OBS)
                rolls.append(dice.face)
            faces.append(rolls)

        assert faces[0] == faces[1]

    def test_unknown_action(self) -> None:
        with pytest.raises(exceptions.ExecutionError):
            worlds.make_dice_world().perform("sample", OBS)


class TestThermometerWorld:

    def test_exact_rendering(self) -> None:
        thermometer = worlds.make_thermometer_world(23.7)

        assert thermometer.perform("sample", OBS) == (
            base.ActionResponse.PERFORMED
        )
        assert thermometer.rendering == "23.700"

    @pytest.mark.parametrize(
        "reading, answer",
        [
            ("digit_0_ge_2", base.ActionResponse.TRUE),
            ("digit_0_ge_3", base.ActionResponse.FALSE),
            ("units_digit_ge_3", base.ActionResponse.TRUE),
            ("units_digit_ge_4", base.ActionResponse.FALSE),
            ("tenths_digit_ge_7", base.ActionResponse.TRUE),
            ("digit_4_ge_0", base.ActionResponse.TRUE),
            ("thousandths_digit_ge_1", base.ActionResponse.FALSE),
        ],
    )
    def test_digit_readings(self, reading, answer) -> None:
        thermometer = worlds.make_thermometer_world(23.7)
        thermometer.perform("sample", OBS)

        assert thermometer.verify(reading, OBS) == answer

    def test_reading_before_sample(self) -> None:
        thermometer = worlds.make_thermometer_world(23.7)

        assert thermometer.verify("digit_0_ge_1", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )

    def test_saturated(self) -> None:
        thermometer = worlds.make_thermometer_world(99.9999)

        assert thermometer.perform("sample", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )
        assert thermometer.rendering is None

    def test_removed(self) -> None:
        thermometer = worlds.ThermometerParams(available=False).world()

        assert thermometer.perform("sample", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )

    @pytest.mark.parametrize(
        "value, rendering",
        [(5.2, "05.200"), (23.7, "23.700"), (-0.5, None), (100.0, None)],
    )
    def test_render(self, value, rendering) -> None:
        assert worlds.ThermometerWorld.render(value) == rendering

    @pytest.mark.parametrize(
        "true_temp, sigma", [(-1.0, 0.0), (100.0, 0.0), (20.0, -0.1)]
    )
    def test_bad_parameters(self, true_temp, sigma) -> None:
        with pytest.raises(ValueError):
            worlds.ThermometerWorld(true_temp, sigma)

    def test_same_seed_same_samples(self) -> None:
        renderings = []
        for _ in range(2):
            thermometer = worlds.make_thermometer_world(23.7, 0.05, seed=11)
            samples = []
            for _ in range(1000):
                thermometer.perform("sample", OBS)
                samples.append(thermometer.rendering)
            renderings.append(samples)

        assert renderings[0] == renderings[1]

    def test_noise_varies_with_seed(self) -> None:
        renderings = set()
        for seed in range(1, 21):
            thermometer = worlds.make_thermometer_world(23.7, 0.05, seed)
            thermometer.perform("sample", OBS)
            renderings.add(thermometer.rendering)

        assert len(renderings) >= 2


class TestVoltageSupplyWorld:

    def test_set_and_read(self) -> None:
        supply = worlds.make_voltage_supply()

        assert supply.verify("voltage_is_10", OBS) == (
            base.ActionResponse.FALSE
        )
        assert supply.perform("set_voltage_10", OBS) == (
            base.ActionResponse.PERFORMED
        )
        assert supply.verify("voltage_is_10", OBS) == base.ActionResponse.TRUE

    def test_removed(self) -> None:
        supply = worlds.make_voltage_supply(available=False)

        assert supply.perform("set_voltage_10", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )
        assert supply.verify("voltage_is_10", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )


class TestProviderSet:

    def test_routes_and_counts(self) -> None:
        providers = base.ProviderSet(
            [worlds.make_dice_world(), worlds.make_voltage_supply()]
        )

        providers.perform("roll", providers.observe(""))
        providers.perform("set_voltage_10", providers.observe(""))
        obs = providers.observe("x")

        assert obs == base.Observation("x", 2)
        assert {"roll", "shows_ge_3", "voltage_is_10"} <= providers.registered

    def test_conflicting_ids(self) -> None:
        with pytest.raises(ValueError):
            base.ProviderSet(
                [worlds.make_dice_world(), worlds.make_dice_world()]
            )

    def test_unknown_ids(self) -> None:
        providers = base.ProviderSet()

        with pytest.raises(exceptions.ExecutionError):
            providers.perform("roll", OBS)
        with pytest.raises(exceptions.ExecutionError):
            providers.verify("shows_1", OBS)

    def test_unavailable_provider(self) -> None:
        providers = base.ProviderSet(
            [base.UnavailableProvider(["roll"], ["hot"])]
        )

        assert providers.perform("roll", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )
        assert providers.verify("hot", OBS) == (
            base.ActionResponse.CANNOT_PERFORM
        )


class TestWorldFactory:

    def test_builds_fresh_worlds_per_seed(self) -> None:
        factory = base.WorldFactory.from_config(
            {"worlds": [{"type": "dice"}, {"type": "voltage_supply"}]}
        )

        providers = factory(5)

        assert providers.world_seed == 5
        assert "set_voltage_10" in providers.registered
        assert factory(5) is not providers

    def test_empty_config(self) -> None:
        assert base.WorldFactory.from_config(None)(0).registered == set()

    @pytest.mark.parametrize(
        "config",
        [
            {"other": []},
            {"worlds": {"type": "dice"}},
            {"worlds": [{"seed": 1}]},
            {"worlds": [{"type": "thermometer", "true_temp": 140}]},
        ],
    )
    def test_bad_config(self, config) -> None:
        with pytest.raises(ValueError):
            base.WorldFactory.from_config(config)

    def test_unknown_world_type(self) -> None:
        with pytest.raises(RuntimeError):
            base.WorldFactory.from_config({"worlds": [{"type": "sundial"}]})

    def test_unknown_parameter(self) -> None:
        with pytest.raises(TypeError):
            base.WorldFactory.from_config(
                {"worlds": [{"type": "dice", "faces": 20}]}
            )

    def test_find_provider(self) -> None:
        provider = base.AbstractProvider.find_provider(
            {"type": "thermometer", "true_temp": 21.5}, seed=1
        )

        assert isinstance(provider, worlds.ThermometerWorld)

    def test_thermometer_params(self) -> None:
        factory = base.WorldFactory.from_config(
            {"worlds": [{"type": "thermometer", "true_temp": 5.2}]}
        )

        params = worlds.ThermometerParams.from_factory(factory, seed=4)

        assert params == worlds.ThermometerParams(true_temp=5.2, seed=4)
        assert params.to_dict()["type"] == "thermometer"


class TestDeciderProvider:

    def _verify(self, decider, content: str) -> base.ActionResponse:
        provider = deciders.make_verifier_provider(decider)
        return provider.verify(
            c.READ_BLUE_SAYS_YES, base.Observation(content)
        )

    def test_constant_answers(self) -> None:
        yes = candidates.ConstVerifier(c.VERIFIER_YES)
        no = candidates.ConstVerifier(c.VERIFIER_NO)

        assert self._verify(yes, HELLO_QUOTE) == base.ActionResponse.TRUE
        assert self._verify(no, HELLO_QUOTE) == base.ActionResponse.FALSE

    @pytest.mark.parametrize(
        "content", ["", "hello", "95::", "95::0|0|0|0|2=", "95::=_"]
    )
    def test_undecodable_tape(self, content) -> None:
        yes = candidates.ConstVerifier(c.VERIFIER_YES)

        assert self._verify(yes, content) == (
            base.ActionResponse.CANNOT_PERFORM
        )

    def test_timeout(self) -> None:
        assert self._verify(_SlowVerifier(), HELLO_QUOTE) == (
            base.ActionResponse.CANNOT_PERFORM
        )

    def test_bad_answer(self) -> None:
        with pytest.raises(exceptions.ExecutionError):
            self._verify(_ConfusedVerifier(), HELLO_QUOTE)

    def test_decode_pair(self, hello) -> None:
        provider = deciders.make_verifier_provider(
            candidates.ConstVerifier(c.VERIFIER_YES)
        )

        machine, quoted, argument = provider.decode(HELLO_QUOTE + "hi")

        assert machine == hello
        assert quoted == HELLO_QUOTE
        assert argument == "hi"


class TestSplitTape:

    def test_pair(self) -> None:
        assert deciders.split_tape("95::=abc") == ("95::=", "abc")

    def test_self_pair(self) -> None:
        assert deciders.split_tape("95::=") == ("95::=", "95::=")

    def test_no_quote(self) -> None:
        with pytest.raises(exceptions.DecodeError):
            deciders.split_tape("abc")
