#!/usr/bin/env python3
"""
Configuration of the command line tools: defaults, TOML configuration file
and command line overrides, in increasing order of precedence.

:authors: routexplain contributors
:license: Apache License 2.0
:version: 0.1.0
:status: Alpha

..

    Copyright 2026 routexplain contributors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
"""

from __future__ import absolute_import

import copy
import logging
import os
from typing import Any, Dict, Optional  # pylint:disable=W0611

try:
    # Python 3.11+
    import tomllib  # type: ignore
except ImportError:
    import tomli as tomllib  # type: ignore

from .constants import (
    CONFIG_ENV,
    DEFAULT_C0,
    DEFAULT_GAMMA,
    DEFAULT_HOP_RADIUS,
    DEFAULT_MULTIPLIER,
    DEFAULT_OFF_FACTOR,
    DEFAULT_REJECTION_BUDGET,
    DEFAULT_TAU_SCALE,
    INFINITE_TOKEN,
    ExplainMethod,
    Pliability,
    ScenarioKind,
    TauOption,
)

# ------------------------------------------------------------------------------

__all__ = ("DEFAULTS", "load_config", "resolve_config")

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.config")

# Accepted types of keys without a default value, or with several types
_TYPES = {
    ("scenario", "multiplier"): (int, str),
    ("explain", "beta"): (int, float),
    ("explain", "max_iters"): (int,),
    ("eval", "workers"): (int,),
}

DEFAULTS = {
    "explain": {
        "tau": TauOption.ONE.value,
        "c0": DEFAULT_C0,
        "scale": DEFAULT_TAU_SCALE,
        "beta": None,
        "max_iters": None,
        "debug_checks": False,
    },
    "scenario": {
        "kind": ScenarioKind.CLOSURE.value,
        "k": 1,
        "hop_radius": DEFAULT_HOP_RADIUS,
        "multiplier": DEFAULT_MULTIPLIER,
        "off_factor": DEFAULT_OFF_FACTOR,
        "gamma": list(DEFAULT_GAMMA),
        "pliability": Pliability.FEW.value,
        "count": 100,
        "seed": 0,
        "min_m": 1000,
        "max_m": 3000,
        "rejection_budget": DEFAULT_REJECTION_BUDGET,
    },
    "eval": {
        "methods": [method.value for method in ExplainMethod],
        "workers": None,
    },
}  # type: Dict[str, Dict[str, Any]]

# Values restricted to an enumeration
_CHOICES = {
    ("explain", "tau"): TauOption,
    ("scenario", "kind"): ScenarioKind,
    ("scenario", "pliability"): Pliability,
}

# ------------------------------------------------------------------------------


def _check_value(section, key, value):
    # type: (str, str, Any) -> None
    """
    Checks the type of a configuration value

    :raise ValueError: Invalid value
    """
    name = "{0}.{1}".format(section, key)
    accepted = _TYPES.get((section, key)) or (type(DEFAULTS[section][key]),)

    if isinstance(value, bool) and bool not in accepted:
        raise ValueError("Invalid value for {0}: {1!r}".format(name, value))
    if not isinstance(value, accepted):
        raise ValueError("Invalid value for {0}: {1!r}".format(name, value))

    choices = _CHOICES.get((section, key))
    if choices is not None:
        try:
            choices(value)
        except ValueError:
            raise ValueError(
                "Invalid value for {0}: {1!r} (expected one of {2})".format(
                    name, value, ", ".join(c.value for c in choices)
                )
            )

    if key == "multiplier" and isinstance(value, str):
        if value != INFINITE_TOKEN:
            raise ValueError(
                "{0} must be an integer or {1!r}".format(name, INFINITE_TOKEN)
            )
    elif key == "methods":
        for method in value:
            ExplainMethod(method)
    elif key == "gamma" and (
        len(value) != 2 or not all(isinstance(v, int) for v in value)
    ):
        raise ValueError("{0} must be a [numerator, denominator]".format(name))


def _merge(config, values, origin):
    # type: (Dict[str, Dict[str, Any]], Dict[str, Any], str) -> None
    """
    Merges checked values into a configuration

    :raise ValueError: Unknown section or key, or invalid value
    """
    for section, entries in values.items():
        if section not in DEFAULTS:
            raise ValueError(
                "Unknown configuration section in {0}: {1}".format(
                    origin, section
                )
            )
        if not isinstance(entries, dict):
            raise ValueError(
                "Section {0} of {1} is not a table".format(section, origin)
            )

        for key, value in entries.items():
            if key not in DEFAULTS[section]:
                raise ValueError(
                    "Unknown configuration key in {0}: {1}.{2}".format(
                        origin, section, key
                    )
                )
            if value is None:
                continue

            _check_value(section, key, value)
            config[section][key] = value


def load_config(path):
    # type: (str) -> Dict[str, Any]
    """
    Reads a TOML configuration file

    :param path: Path to the file
    :return: The raw content of the file
    :raise ValueError: Invalid TOML
    """
    with open(path, "rb") as fd:
        try:
            return tomllib.load(fd)
        except tomllib.TOMLDecodeError as ex:
            raise ValueError("Invalid configuration {0}: {1}".format(path, ex))


def resolve_config(overrides=None, path=None):
    # type: (Optional[Dict[str, Dict[str, Any]]], Optional[str]) -> Dict[str, Dict[str, Any]]
    """
    Computes the configuration: defaults, updated by the configuration file,
    updated by the given overrides. None values in overrides are ignored.

    :param overrides: Values from the command line, by section
    :param path: Configuration file (default: from the environment)
    :return: The resolved configuration
    :raise ValueError: Invalid configuration
    """
    config = copy.deepcopy(DEFAULTS)
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None

    if path:
        _log.debug("Reading configuration from %s", path)
        _merge(config, load_config(path), path)

    if overrides:
        _merge(config, overrides, "command line")
    return config
