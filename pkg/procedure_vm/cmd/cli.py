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

import json
import os
import typing as tp

import click
import prettytable

import procedure_vm.constants as c
from procedure_vm import exceptions
from procedure_vm import library
from procedure_vm import repeatability
from procedure_vm import utils
from procedure_vm.actions import base as actions
from procedure_vm.actions import worlds
from procedure_vm.diagonal import candidates
from procedure_vm.diagonal import refutation
from procedure_vm.encoding import dsl
from procedure_vm.encoding import quoting
from procedure_vm.logger import AbstractLogger, ClickLogger, DummyLogger
from procedure_vm.machine import executor
from procedure_vm.machine import models
from procedure_vm.machine import validation


class DomainFailure(click.ClickException):
    """Negative domain answer: invalid machine, bad quote, no refutation."""

    exit_code = 1


class UsageFailure(click.ClickException):
    """Unreadable or malformed input files."""

    exit_code = 2


ROLE_COLORS = ("blue", "green", "red")


class LoadedMachine(tp.NamedTuple):
    machine: models.Machine
    digest: str


def _load_machine(source: str, validate: bool = True) -> LoadedMachine:
    """Load a machine file or a ``builtin:<name>`` machine."""
    if library.is_builtin(source):
        try:
            machine = library.load_builtin(source)
        except KeyError as e:
            raise UsageFailure(e.args[0])
        return LoadedMachine(machine, utils.digest(dsl.render_dsl(machine)))

    if not os.path.isfile(source):
        raise UsageFailure(f"Machine file {source} not found")

    try:
        text = utils.read_text(source)
        machine = dsl.parse_dsl(
            text,
            validate=validate,
            name=os.path.splitext(os.path.basename(source))[0],
        )
    except (OSError, UnicodeDecodeError) as e:
        raise UsageFailure(f"Unable to read {source}: {e}")
    except exceptions.DslSyntaxError as e:
        raise UsageFailure(f"{source}:{e}")
    except exceptions.InvalidMachineError as e:
        raise DomainFailure(str(e))

    return LoadedMachine(machine, utils.digest(text))


def _load_worlds(
    path: str | None,
) -> tp.Tuple[actions.WorldFactory, str | None]:
    try:
        config = utils.load_world_config(path)
        factory = actions.WorldFactory.from_config(config)
    except (OSError, ValueError, TypeError, RuntimeError) as e:
        raise UsageFailure(f"Invalid world configuration: {e}")

    digest = utils.digest(utils.read_text(path)) if path else None
    return factory, digest


def _logger(output_format: c.OutputFormat, verbose: bool) -> AbstractLogger:
    if output_format == "json":
        return DummyLogger()
    return ClickLogger(verbose=verbose)


def _echo_json(report: tp.Dict[str, tp.Any]) -> None:
    report = {"tool_version": utils.tool_version(), **report}
    click.echo(json.dumps(report, indent=2, sort_keys=True))


def _echo_fields(
    title: str, fields: tp.Sequence[tp.Tuple[str, tp.Any]]
) -> None:
    table = prettytable.PrettyTable()
    table.field_names = ["Field", "Value"]
    table.align = "l"
    for name, value in fields:
        table.add_row([name, "" if value is None else value])

    click.echo(f"{title}:")
    click.echo(table)


def _echo_trace(trace: tp.Sequence[models.TraceEntry]) -> None:
    table = prettytable.PrettyTable()
    table.field_names = [
        "Step",
        "State",
        "Head",
        "Read",
        "Instruction",
        "Response",
    ]
    for entry in trace:
        table.add_row(
            [
                entry.step,
                models.state_name(entry.state),
                entry.head,
                entry.symbol,
                entry.instruction,
                entry.response or "",
            ]
        )
    click.echo(table)


def _echo_transcript(transcript: tp.Sequence[str]) -> None:
    for line in transcript:
        role = line.split(":", 1)[0]
        click.secho(line, fg=role if role in ROLE_COLORS else None)


def _thermometer_params(
    factory: actions.WorldFactory, seed: int
) -> worlds.ThermometerParams:
    try:
        return worlds.ThermometerParams.from_factory(factory, seed)
    except (ValueError, TypeError) as e:
        raise UsageFailure(f"Invalid thermometer world: {e}")


output_format_option = click.option(
    "-f",
    "--format",
    "output_format",
    default="human",
    type=click.Choice([s for s in tp.get_args(c.OutputFormat)]),
    show_default=True,
    help="Report format",
)
budget_option = click.option(
    "-b",
    "--budget",
    default=c.DEF_BUDGET,
    type=click.IntRange(min=1),
    show_default=True,
    help="Maximum number of steps of a run",
)
seed_option = click.option(
    "-s",
    "--seed",
    default=c.DEF_SEED,
    type=int,
    show_default=True,
    help="Seed of the simulated worlds",
)
world_option = click.option(
    "-w",
    "--world",
    default=None,
    type=click.Path(),
    help="World configuration file, JSON or YAML",
)
input_option = click.option(
    "-i",
    "--input",
    "symbols",
    default="",
    help="Symbols written on the tape before the run",
)
verbose_option = click.option(
    "-v",
    "--verbose",
    is_flag=True,
    help="Log every run event",
)


@click.group(invoke_without_command=True)
def main() -> None:
    pass


@main.command("validate", help="Validate a machine")
@output_format_option
@click.argument("machine_file")
def validate_cmd(output_format: c.OutputFormat, machine_file: str) -> None:
    loaded = _load_machine(machine_file, validate=False)
    report = validation.validate_machine(loaded.machine)

    if output_format == "json":
        _echo_json(
            {
                "machine_digest": loaded.digest,
                "seed": c.DEF_SEED,
                "budget": c.DEF_BUDGET,
                "validation": report.to_dict(),
            }
        )
    else:
        table = prettytable.PrettyTable()
        table.field_names = ["Kind", "Detail", "Error"]
        for violation in report.violations:
            table.add_row(
                [
                    violation.kind.value,
                    violation.detail,
                    violation.kind.is_error,
                ]
            )
        click.echo(f"Machine {report.machine_name}:")
        click.echo(table)

    if not report.is_valid:
        raise DomainFailure(
            f"Machine {report.machine_name} has {len(report.errors)} "
            "violation(s)"
        )
    if output_format == "human":
        click.secho("Machine is valid", fg="green")


@main.command("run", help="Run a machine")
@input_option
@world_option
@seed_option
@budget_option
@click.option(
    "-t",
    "--trace",
    is_flag=True,
    help="Record and print every step",
)
@output_format_option
@verbose_option
@click.argument("machine_file")
def run_cmd(
    symbols: str,
    world: str | None,
    seed: int,
    budget: int,
    trace: bool,
    output_format: c.OutputFormat,
    verbose: bool,
    machine_file: str,
) -> None:
    loaded = _load_machine(machine_file)
    factory, world_digest = _load_worlds(world)
    logger = _logger(output_format, verbose)

    try:
        outcome = executor.run(
            loaded.machine,
            symbols,
            factory(seed),
            budget,
            trace_level="steps" if trace else "none",
            logger=logger,
        )
    except exceptions.InvalidInputError as e:
        raise DomainFailure(str(e))

    if output_format == "json":
        _echo_json(
            {
                "machine": loaded.machine.name,
                "machine_digest": loaded.digest,
                "input": symbols,
                "input_digest": utils.digest(symbols),
                "world_digest": world_digest,
                "seed": seed,
                "budget": budget,
                "outcome": outcome.to_dict(with_trace=trace),
            }
        )
    else:
        if trace and outcome.trace:
            _echo_trace(outcome.trace)
        _echo_fields(
            f"Run of {loaded.machine.name}",
            [
                ("status", outcome.status.value),
                ("result", outcome.result),
                ("steps", outcome.steps),
                ("error", outcome.error),
                ("seed", seed),
                ("budget", budget),
            ],
        )

    if outcome.status == c.RunStatus.EXECUTION_ERROR:
        raise DomainFailure(f"Execution error: {outcome.error}")


@main.command("quote", help="Print the quote of a machine")
@click.argument("machine_file")
def quote_cmd(machine_file: str) -> None:
    loaded = _load_machine(machine_file)
    click.echo(quoting.quote(loaded.machine))


@main.command("unquote", help="Print the canonical text of a quote")
@click.argument("quoted")
def unquote_cmd(quoted: str) -> None:
    try:
        machine = quoting.unquote(quoted.strip())
    except exceptions.DecodeError as e:
        raise DomainFailure(f"Unable to decode: {e}")
    click.echo(dsl.render_dsl(machine), nl=False)


@main.command("trials", help="Run a machine over many seeds")
@input_option
@world_option
@seed_option
@budget_option
@click.option(
    "-n",
    "--trials",
    default=c.DEF_TRIALS,
    type=click.IntRange(min=1),
    show_default=True,
    help="Number of seeds, counting from --seed",
)
@click.option(
    "--seeds",
    default=None,
    help="Explicit seeds like '1,2,7' or '1-100', overrides --trials",
)
@click.option(
    "--sigfigs",
    default=None,
    type=click.IntRange(1, repeatability.MAX_SIGNIFICANT_FIGURES),
    help="Also judge repeatability after truncating the results",
)
@click.option(
    "--workers",
    default=1,
    type=click.IntRange(min=1),
    show_default=True,
    help="Worker processes running the trials",
)
@output_format_option
@verbose_option
@click.argument("machine_file")
def trials_cmd(
    symbols: str,
    world: str | None,
    seed: int,
    budget: int,
    trials: int,
    seeds: str | None,
    sigfigs: int | None,
    workers: int,
    output_format: c.OutputFormat,
    verbose: bool,
    machine_file: str,
) -> None:
    loaded = _load_machine(machine_file)
    factory, world_digest = _load_worlds(world)
    logger = _logger(output_format, verbose)

    try:
        seed_list = (
            utils.parse_seeds(seeds)
            if seeds
            else list(range(seed, seed + trials))
        )
    except ValueError as e:
        raise click.UsageError(str(e))

    try:
        trial_set = repeatability.run_trials(
            loaded.machine,
            symbols,
            factory,
            seed_list,
            budget,
            workers=workers,
            logger=logger,
        )
    except exceptions.InvalidInputError as e:
        raise DomainFailure(str(e))

    verdict = repeatability.is_repeatable(trial_set)
    truncated = None
    if sigfigs is not None:
        try:
            truncated = repeatability.repeatable_after_truncation(
                trial_set, sigfigs
            )
        except exceptions.NotNumericError as e:
            raise DomainFailure(str(e))

    if output_format == "json":
        _echo_json(
            {
                "machine_digest": loaded.digest,
                "input_digest": utils.digest(symbols),
                "world_digest": world_digest,
                "seeds": seed_list,
                "sigfigs": sigfigs,
                "trial_set": trial_set.to_dict(),
                "repeatable": verdict.to_dict(),
                "repeatable_truncated": (
                    truncated.to_dict() if truncated is not None else None
                ),
            }
        )
        return

    table = prettytable.PrettyTable()
    table.field_names = ["Seed", "Status", "Result", "Steps"]
    for trial in trial_set.trials:
        outcome = trial.outcome
        table.add_row(
            [trial.seed, outcome.status.value, outcome.result, outcome.steps]
        )
    click.echo(f"Trials of {loaded.machine.name}, budget {budget}:")
    click.echo(table)

    fields = [("repeatable", verdict.repeatable)]
    if verdict.reason:
        fields.append(("reason", verdict.reason))
    if truncated is not None:
        fields.append((f"repeatable at {sigfigs} figures", bool(truncated)))
    _echo_fields("Repeatability", fields)


def _echo_report(
    report: refutation.RefutationReport,
    output_format: c.OutputFormat,
    extra: tp.Dict[str, tp.Any],
) -> None:
    if output_format == "json":
        _echo_json({**extra, "report": report.to_dict()})
    else:
        _echo_transcript(report.transcript)
        _echo_fields(
            f"Refutation of {report.candidate_id}",
            [
                ("verdict", report.verdict),
                ("actual behavior", report.actual_behavior.value),
                ("branch", report.branch.value),
                ("result", report.result),
                ("steps", report.steps),
                ("budget", report.budget),
                ("quote length", len(report.quote)),
                ("diagonal quote", report.diagonal_digest),
                ("contradiction", report.contradiction),
            ],
        )

    if not report.contradiction:
        raise DomainFailure(f"No contradiction for {report.candidate_id}")


@main.command(
    "refute", help="Refute a candidate temperature measurement verifier"
)
@click.option(
    "-c",
    "--candidate",
    default="const-yes",
    show_default=True,
    help="Candidate verifier: const-yes, const-no or sim:<budget>",
)
@world_option
@seed_option
@budget_option
@click.option(
    "--probe",
    default=None,
    help="Run green on this tape instead of refuting",
)
@output_format_option
@verbose_option
def refute_cmd(
    candidate: str,
    world: str | None,
    seed: int,
    budget: int,
    probe: str | None,
    output_format: c.OutputFormat,
    verbose: bool,
) -> None:
    factory, world_digest = _load_worlds(world)
    params = _thermometer_params(factory, seed)
    logger = _logger(output_format, verbose)

    try:
        verifier = candidates.parse_verifier(candidate, params)
    except ValueError as e:
        raise click.UsageError(str(e))

    extra = {
        "candidate": candidate,
        "world_digest": world_digest,
        "seed": seed,
        "budget": budget,
    }

    if probe is not None:
        try:
            probe_result = refutation.probe_green(
                verifier, probe, params, budget
            )
        except exceptions.InvalidInputError as e:
            raise DomainFailure(str(e))

        outcome = probe_result.outcome
        if output_format == "json":
            _echo_json(
                {
                    **extra,
                    "probe_digest": utils.digest(probe),
                    "branch": probe_result.branch.value,
                    "outcome": outcome.to_dict(),
                }
            )
        else:
            _echo_fields(
                f"Green of {verifier.id} on the probe",
                [
                    ("branch", probe_result.branch.value),
                    ("status", outcome.status.value),
                    ("result", outcome.result),
                    ("steps", outcome.steps),
                ],
            )
        return

    report = refutation.refute_verifier(verifier, params, budget, logger)
    _echo_report(report, output_format, extra)


@main.command(
    "demo-halting", help="Refute a candidate halting decider"
)
@click.option(
    "-c",
    "--candidate",
    default="const-H",
    show_default=True,
    help="Candidate decider: const-H, const-N or [bounded-]sim:<budget>",
)
@click.option(
    "-b",
    "--budget",
    default=None,
    type=click.IntRange(min=1),
    help="Steps of the diagonal run, ten times the candidate budget "
    "by default",
)
@output_format_option
@verbose_option
def demo_halting_cmd(
    candidate: str,
    budget: int | None,
    output_format: c.OutputFormat,
    verbose: bool,
) -> None:
    logger = _logger(output_format, verbose)
    try:
        decider = candidates.parse_halting_decider(candidate)
    except ValueError as e:
        raise click.UsageError(str(e))

    report = refutation.refute_halting_decider(decider, budget, logger)
    _echo_report(
        report,
        output_format,
        {
            "candidate": candidate,
            "seed": c.DEF_SEED,
            "budget": report.budget,
        },
    )
