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
import abc
import click


class AbstractLogger(abc.ABC):
    """Abstract logger for progress of runs, trials and refutations."""

    @abc.abstractmethod
    def error(self, msg: str) -> None:
        """Log an error message."""

    @abc.abstractmethod
    def warn(self, msg: str) -> None:
        """Log a warning message."""

    @abc.abstractmethod
    def info(self, msg: str) -> None:
        """Log an information message."""

    def important(self, msg: str) -> None:
        """Log an important message, a verdict for instance."""
        self.info(msg)

    def debug(self, msg: str) -> None:
        """Log a per-step message. Silent unless the logger is verbose."""


class ClickLogger(AbstractLogger):
    """Logger based on Click.

    Messages go to stderr so that reports written to stdout stay clean.
    """

    def __init__(self, verbose: bool = False) -> None:
        self._verbose = verbose

    def error(self, msg: str) -> None:
        click.secho(msg, fg="red", err=True)

    def warn(self, msg: str) -> None:
        click.secho(msg, fg="yellow", err=True)

    def info(self, msg: str) -> None:
        click.echo(msg, err=True)

    def important(self, msg: str) -> None:
        click.secho(msg, fg="green", err=True)

    def debug(self, msg: str) -> None:
        if self._verbose:
            click.secho(msg, dim=True, err=True)


class DummyLogger(AbstractLogger):
    """Dummy logger."""

    def error(self, msg: str) -> None:
        pass

    def warn(self, msg: str) -> None:
        pass

    def info(self, msg: str) -> None:
        pass
