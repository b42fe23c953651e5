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
import json
import typing as tp

import pytest
from click.testing import CliRunner

from procedure_vm import library
from procedure_vm.actions import base
from procedure_vm.actions import worlds
from procedure_vm.encoding import dsl
from procedure_vm.machine import models


@pytest.fixture
def hello() -> models.Machine:
    return dsl.parse_dsl(library.HELLO)


@pytest.fixture
def loop_machine() -> models.Machine:
    return dsl.parse_dsl(library.LOOP)


@pytest.fixture
def dice_machine() -> models.Machine:
    return dsl.parse_dsl(library.DICE)


@pytest.fixture
def thermo_params() -> worlds.ThermometerParams:
    return worlds.ThermometerParams(true_temp=23.7, noise_sigma=0.0)


@pytest.fixture
def dice_factory() -> base.WorldFactory:
    return base.WorldFactory.from_config({"worlds": [{"type": "dice"}]})


@pytest.fixture
def noisy_factory() -> base.WorldFactory:
    return base.WorldFactory.from_config(
        {
            "worlds": [
                {"type": "thermometer", "true_temp": 23.7, "noise_sigma": 0.05}
            ]
        }
    )


@pytest.fixture
def write_file(tmp_path) -> tp.Callable[[str, str], str]:
    def factory(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return factory


@pytest.fixture
def world_file(write_file) -> tp.Callable[..., str]:
    def factory(name: str, *worlds: tp.Dict[str, tp.Any]) -> str:
        return write_file(name, json.dumps({"worlds": list(worlds)}))

    return factory


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
