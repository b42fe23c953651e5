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

import os
import hashlib
import typing as tp
from importlib import metadata

import yaml

import procedure_vm.constants as c


def load_from_entry_point(group: str, name: str) -> tp.Any:
    """Load class from entry points."""
    for ep in metadata.entry_points(group=group):
        if ep.name == name:
            return ep.load()

    raise RuntimeError(f"No class '{name}' found in entry points {group}")


def load_world_config(path: str | None) -> tp.Dict[str, tp.Any] | None:
    """Load a world configuration file, JSON or YAML."""
    if path is None:
        return None

    if not os.path.isfile(path):
        raise FileNotFoundError(f"World configuration {path} not found")

    with open(path, "r", encoding="utf-8") as f:
        config = yaml.safe_load(f)

    if config is not None and not isinstance(config, dict):
        raise ValueError(f"Invalid world configuration in {path}")

    return config


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def tool_version() -> str:
    try:
        return metadata.version(c.DIST_NAME)
    except metadata.PackageNotFoundError:
        return "0.0.0+source"


def parse_seeds(spec: str) -> tp.List[int]:
    """Parse a seed list like "1,2,7" or an inclusive range like "1-100"."""
    seeds: tp.List[int] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue

        if "-" in part[1:]:
            start, end = part.split("-", 1)
            lo, hi = int(start), int(end)
            if hi < lo:
                raise ValueError(f"Empty seed range {part}")
            seeds.extend(range(lo, hi + 1))
        else:
            seeds.append(int(part))

    if not seeds:
        raise ValueError(f"No seeds in '{spec}'")
    if len(set(seeds)) != len(seeds):
        raise ValueError(f"Duplicate seeds in '{spec}'")

    return seeds
