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

import pytest

from procedure_vm import library
from procedure_vm.cmd import cli

HELLO_QUOTE = "95,104,105::0|0|0|1|1;1|1|1|2;2|0|0|2|3="
DUPLICATE = "name: duplicate\nq0 _ a q1\nq0 _ b q2\n"


def _json(result) -> dict:
    return json.loads(result.stdout)


class TestValidate:

    def test_valid(self, runner, write_file) -> None:
        path = write_file("hello.tm", library.HELLO)

        result = runner.invoke(cli.main, ["validate", path])

        assert result.exit_code == 0
        assert "Machine is valid" in result.output

    def test_duplicate_key(self, runner, write_file) -> None:
        path = write_file("duplicate.tm", DUPLICATE)

        result = runner.invoke(cli.main, ["validate", "-f", "json", path])

        assert result.exit_code == 1
        data = _json(result)
        assert data["validation"]["valid"] is False
        assert data["validation"]["violations"][0]["detail"] == "(q0,_)"
        assert data["machine_digest"].startswith("sha256:")
        assert data["seed"] == 0
        assert data["budget"] == 100000

    def test_syntax_error(self, runner, write_file) -> None:
        path = write_file("bad.tm", "q0 _ a q1\nq0 _ hh q1\n")

        result = runner.invoke(cli.main, ["validate", path])

        assert result.exit_code == 2
        assert "2:6:" in result.output

    def test_missing_file(self, runner) -> None:
        result = runner.invoke(cli.main, ["validate", "/nonexistent.tm"])

        assert result.exit_code == 2


class TestRun:

    def test_hello(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["run", "-f", "json", "builtin:hello"]
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["outcome"] == {
            "status": "halted",
            "steps": 3,
            "result": "hi",
            "error": None,
        }
        assert data["machine"] == "hello"
        assert "tool_version" in data

    def test_name_from_file(self, runner, write_file) -> None:
        path = write_file("printer.tm", "q0 _ a q1\n")

        result = runner.invoke(cli.main, ["run", "-f", "json", path])

        assert _json(result)["machine"] == "printer"

    def test_budget(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["run", "-f", "json", "-b", "7", "builtin:loop"]
        )

        assert result.exit_code == 0
        outcome = _json(result)["outcome"]
        assert outcome["status"] == "budget_exhausted"
        assert outcome["steps"] == 7

    def test_input(self, runner, write_file) -> None:
        path = write_file("empty.tm", "alphabet: 1 0 k m\n")

        result = runner.invoke(
            cli.main, ["run", "-f", "json", "-i", "10km", path]
        )

        assert _json(result)["outcome"]["result"] == "10km"

    def test_foreign_input(self, runner) -> None:
        result = runner.invoke(cli.main, ["run", "-i", "x", "builtin:hello"])

        assert result.exit_code == 1

    def test_trace(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["run", "--trace", "-f", "json", "builtin:hello"]
        )

        trace = _json(result)["outcome"]["trace"]
        assert [e["instruction"] for e in trace][0] == "q0 _ h q1"

    def test_human_trace(self, runner) -> None:
        result = runner.invoke(cli.main, ["run", "--trace", "builtin:hello"])

        assert result.exit_code == 0
        assert "q1 h R q2" in result.output
        assert "halted" in result.output

    def test_execution_error(self, runner) -> None:
        result = runner.invoke(cli.main, ["run", "builtin:dice"])

        assert result.exit_code == 1

    def test_world(self, runner, world_file) -> None:
        world = world_file("dice.json", {"type": "dice"})

        result = runner.invoke(
            cli.main,
            ["run", "-f", "json", "-w", world, "-s", "3", "builtin:dice"],
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["outcome"]["result"] in list("123456")
        assert data["world_digest"].startswith("sha256:")
        assert data["seed"] == 3

    def test_yaml_world(self, runner, write_file) -> None:
        world = write_file(
            "voltage.yaml",
            "worlds:\n  - type: voltage_supply\n    available: false\n",
        )
        machine = write_file(
            "voltage.tm", "q0 _ !set_voltage_10 q1 q2\nq1 _ y q3\nq2 _ x q3\n"
        )

        result = runner.invoke(
            cli.main, ["run", "-f", "json", "-w", world, machine]
        )

        assert _json(result)["outcome"]["result"] == "x"

    @pytest.mark.parametrize(
        "content",
        [
            '{"worlds": [{"type": "sundial"}]}',
            '{"worlds": [{"type": "dice", "faces": 8}]}',
            '{"worlds": 1}',
            "[1, 2]",
        ],
    )
    def test_bad_world(self, runner, write_file, content) -> None:
        world = write_file("world.json", content)

        result = runner.invoke(
            cli.main, ["run", "-w", world, "builtin:hello"]
        )

        assert result.exit_code == 2

    def test_unknown_builtin(self, runner) -> None:
        result = runner.invoke(cli.main, ["run", "builtin:nothing"])

        assert result.exit_code == 2


class TestQuoting:

    def test_quote(self, runner) -> None:
        result = runner.invoke(cli.main, ["quote", "builtin:hello"])

        assert result.exit_code == 0
        assert result.output == HELLO_QUOTE + "\n"

    def test_unquote(self, runner) -> None:
        result = runner.invoke(cli.main, ["unquote", HELLO_QUOTE])

        assert result.exit_code == 0
        assert result.output == (
            "name: anonymous\n"
            "alphabet: _ h i\n"
            "actions:\n"
            "q0 _ h q1\n"
            "q1 h R q2\n"
            "q2 _ i q3\n"
        )

    def test_unquote_garbage(self, runner) -> None:
        result = runner.invoke(cli.main, ["unquote", "95::0|0|0|0|2="])

        assert result.exit_code == 1

    def test_unquote_long_number(self, runner) -> None:
        result = runner.invoke(cli.main, ["unquote", "1" * 5000 + "::="])

        assert result.exit_code == 1
        assert "exceeds 12 digits" in result.output

    def test_quote_invalid(self, runner, write_file) -> None:
        path = write_file("duplicate.tm", DUPLICATE)

        result = runner.invoke(cli.main, ["quote", path])

        assert result.exit_code == 1


class TestTrials:

    def test_hello(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["trials", "-f", "json", "-n", "5", "builtin:hello"]
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["seeds"] == [0, 1, 2, 3, 4]
        assert data["repeatable"]["repeatable"] is True
        assert data["repeatable_truncated"] is None

    def test_noisy_thermometer(self, runner, world_file) -> None:
        world = world_file(
            "noisy.json",
            {"type": "thermometer", "true_temp": 23.7, "noise_sigma": 0.05},
        )

        result = runner.invoke(
            cli.main,
            [
                "trials",
                "-f",
                "json",
                "-w",
                world,
                "--seeds",
                "1-100",
                "--sigfigs",
                "2",
                "builtin:thermometer-reader",
            ],
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["repeatable"]["repeatable"] is False
        assert data["repeatable_truncated"] == {
            "repeatable": True,
            "distinct": ["24"],
            "reason": None,
        }

    def test_not_numeric(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["trials", "--sigfigs", "2", "builtin:hello"]
        )

        assert result.exit_code == 1
        assert "not a numeric quantity value: 'hi'" in result.output

    def test_bad_seeds(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["trials", "--seeds", "5-1", "builtin:hello"]
        )

        assert result.exit_code == 2

    def test_human(self, runner, world_file) -> None:
        world = world_file("dice.json", {"type": "dice"})

        result = runner.invoke(
            cli.main, ["trials", "-w", world, "-n", "20", "builtin:dice"]
        )

        assert result.exit_code == 0
        assert "Repeatability" in result.output


class TestRefute:

    @pytest.mark.parametrize("candidate", ["const-yes", "const-no"])
    def test_contradiction(self, runner, candidate) -> None:
        result = runner.invoke(
            cli.main, ["refute", "-f", "json", "-c", candidate]
        )

        assert result.exit_code == 0
        report = _json(result)["report"]
        assert report["contradiction"] is True
        assert report["candidate_id"] == candidate

    def test_byte_identical(self, runner) -> None:
        first = runner.invoke(cli.main, ["refute", "-f", "json"])
        second = runner.invoke(cli.main, ["refute", "-f", "json"])

        assert first.stdout == second.stdout

    def test_human_transcript(self, runner) -> None:
        result = runner.invoke(cli.main, ["refute", "-c", "const-no"])

        assert result.exit_code == 0
        assert "red: measured the temperature" in result.output

    def test_no_contradiction(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["refute", "-c", "const-no", "-b", "50"]
        )

        assert result.exit_code == 1

    def test_unknown_candidate(self, runner) -> None:
        result = runner.invoke(cli.main, ["refute", "-c", "oracle"])

        assert result.exit_code == 2

    def test_probe(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["refute", "-f", "json", "--probe", "12.5"]
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["branch"] == "cannot_perform"
        assert data["outcome"]["result"] == "ERR"

    def test_tape_with_blanks(self, runner) -> None:
        result = runner.invoke(cli.main, ["refute", "--probe", "12_3456"])

        assert result.exit_code == 1
        assert "cannot occur" in result.output

    def test_removed_thermometer(self, runner, world_file) -> None:
        world = world_file(
            "removed.json",
            {"type": "thermometer", "true_temp": 23.7, "available": False},
        )

        result = runner.invoke(
            cli.main,
            [
                "refute",
                "-f",
                "json",
                "-c",
                "const-no",
                "-w",
                world,
                "--probe",
                HELLO_QUOTE,
            ],
        )

        assert _json(result)["outcome"]["result"] == "ERR"


class TestDemoHalting:

    @pytest.mark.parametrize("candidate", ["const-H", "const-N"])
    def test_contradiction(self, runner, candidate) -> None:
        result = runner.invoke(
            cli.main, ["demo-halting", "-f", "json", "-c", candidate]
        )

        assert result.exit_code == 0
        data = _json(result)
        assert data["seed"] == 0
        assert data["budget"] == 10000
        assert data["report"]["contradiction"] is True

    def test_small_budget(self, runner) -> None:
        result = runner.invoke(
            cli.main, ["demo-halting", "-c", "const-N", "-b", "10"]
        )

        assert result.exit_code == 1

    def test_unknown_candidate(self, runner) -> None:
        result = runner.invoke(cli.main, ["demo-halting", "-c", "maybe"])

        assert result.exit_code == 2
