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
"""Built-in machines, addressable as ``builtin:<name>``."""

from __future__ import annotations

import typing as tp

from procedure_vm import constants as c
from procedure_vm.diagonal import construction
from procedure_vm.encoding import dsl
from procedure_vm.machine import models

HELLO = """\
name: hello
q0 _ h q1
q1 h R q2
q2 _ i q3
"""

LOOP = """\
name: loop
q0 _ R q0
"""

# Roll once and print the face, ERR if the die can't be rolled
DICE = """\
name: dice
alphabet: _ 1 2 3 4 5 6 E 'R'
q0 _ !roll q1 q20
q1 _ ?shows_ge_4 q2 q3 q20
q2 _ ?shows_ge_6 q4 q5 q20
q5 _ ?shows_ge_5 q6 q7 q20
q3 _ ?shows_ge_3 q8 q9 q20
q9 _ ?shows_ge_2 q10 q11 q20
q4 _ 6 q12
q6 _ 5 q12
q7 _ 4 q12
q8 _ 3 q12
q10 _ 2 q12
q11 _ 1 q12
q20 _ E q21
q21 E R q22
q22 _ 'R' q23
q23 'R' R q24
q24 _ 'R' q25
"""

BUILTINS: tp.Dict[str, tp.Callable[[], models.Machine]] = {
    "hello": lambda: dsl.parse_dsl(HELLO),
    "loop": lambda: dsl.parse_dsl(LOOP),
    "dice": lambda: dsl.parse_dsl(DICE),
    "reference-thermometer": construction.make_reference_thermometer,
    "thermometer-reader": construction.make_thermometer_reader,
}


def is_builtin(source: str) -> bool:
    return source.startswith(c.BUILTIN_PREFIX)


def load_builtin(source: str) -> models.Machine:
    """Machine for ``builtin:<name>``, KeyError for unknown names."""
    name = source[len(c.BUILTIN_PREFIX) :]
    if name not in BUILTINS:
        raise KeyError(
            f"Unknown builtin machine '{name}', "
            f"choose from {', '.join(sorted(BUILTINS))}"
        )
    return BUILTINS[name]()
