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
import pytest
from hypothesis import given, settings, strategies as st

from procedure_vm import constants as c
from procedure_vm import exceptions
from procedure_vm.encoding import dsl
from procedure_vm.encoding import quoting
from procedure_vm.machine import models
from procedure_vm.machine import transform
from procedure_vm.tests.unit import strategies

HELLO_QUOTE = "95,104,105::0|0|0|1|1;1|1|1|2;2|0|0|2|3="


class TestQuote:

    def test_empty_machine(self) -> None:
        assert quoting.quote(models.Machine.empty()) == "95::="

    def test_hello(self, hello) -> None:
        assert quoting.quote(hello) == HELLO_QUOTE

    def test_actions(self) -> None:
        machine = dsl.parse_dsl("q0 _ !ab q1 q2\n")

        assert quoting.quote(machine) == "95:97.98:0|0|4|0|1|2="

    def test_reading_action(self) -> None:
        machine = dsl.parse_dsl("q0 _ ?a q1 q2 q3\n")

        assert quoting.quote(machine) == "95:97:0|0|5|0|1|2|3="

    def test_independent_of_numbering_and_name(self, hello) -> None:
        renumbered = dsl.parse_dsl(
            "name: other\nq0 _ h q7\nq7 h R q3\nq3 _ i q9\n"
        )

        assert quoting.quote(renumbered) == quoting.quote(hello)

    def test_uses_quote_alphabet(self, dice_machine) -> None:
        assert set(quoting.quote(dice_machine)) <= set(c.QUOTE_ALPHABET)

    def test_invalid_machine(self) -> None:
        machine = dsl.parse_dsl("q0 _ a q1\nq0 _ b q2\n", validate=False)

        with pytest.raises(exceptions.InvalidMachineError):
            quoting.quote(machine)


class TestUnquote:

    def test_hello(self, hello) -> None:
        machine = quoting.unquote(HELLO_QUOTE)

        assert machine == hello
        assert machine.name == "anonymous"

    def test_empty_machine(self) -> None:
        assert quoting.unquote("95::=") == models.Machine.empty()

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "95::",
            "95::==",
            "95:=:",
            "95:=",
            "95:::=",
            "95::0|0|0|0|1a=",
            "095::=",
            "95::0|0|9|1=",
            "95::0|0|0|5|1=",
            "95::0|0|1=",
            "95::0|0|1|1|1=",
            "95:97.:0|0|4|0|1|2=",
            "95::0|0|1|1;0|0|2|1=",
            "95::0|0|0|0|1;;1|0|0|0|1=",
            "104,95::=",
            "95,95::=",
            "95::0|0|0|0|2=",
            "1114112::=",
            HELLO_QUOTE + "0",
            "1" * 5000 + "::=",
            "95::0|0|0|0|" + "1" * 13 + "=",
        ],
    )
    def test_rejects(self, text) -> None:
        with pytest.raises(exceptions.DecodeError):
            quoting.unquote(text)

    def test_non_canonical_numbering(self) -> None:
        with pytest.raises(exceptions.DecodeError):
            quoting.unquote("95,104::0|0|0|1|5=")


class TestProperties:

    @settings(max_examples=1000, deadline=None)
    @given(machine=strategies.machines())
    def test_round_trip(self, machine) -> None:
        text = quoting.quote(machine)

        assert quoting.unquote(text) == transform.canonical(machine)
        assert quoting.quote(quoting.unquote(text)) == text

    @settings(max_examples=500, deadline=None)
    @given(machine=strategies.machines())
    def test_quote_of_canonical_is_equal(self, machine) -> None:
        assert quoting.quote(transform.canonical(machine)) == quoting.quote(
            machine
        )

    @settings(max_examples=500, deadline=None)
    @given(machine=strategies.machines(), data=st.data())
    def test_mutations_never_decode_elsewhere(self, machine, data) -> None:
        text = quoting.quote(machine)
        index = data.draw(st.integers(min_value=0, max_value=len(text) - 1))
        symbol = data.draw(st.sampled_from(c.QUOTE_ALPHABET))
        mutated = text[:index] + symbol + text[index + 1 :]

        try:
            decoded = quoting.unquote(mutated)
        except exceptions.DecodeError:
            return
        assert quoting.quote(decoded) == mutated
