#!/usr/bin/env python3
"""
Definition of the constants used across the explanation pipeline

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

import enum
import functools

# ------------------------------------------------------------------------------

__all__ = (
    "INFINITE",
    "TauOption",
    "ResidualOrigin",
    "ScenarioKind",
    "Pliability",
    "ExplainMethod",
    "InvalidReason",
    "ExitCode",
    "GraphSection",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# ------------------------------------------------------------------------------


@functools.total_ordering
class _Infinite(object):  # pylint:disable=R0205
    """
    Distinguished weight greater than every integer.

    Absorbing under addition. Multiplying by zero gives zero, so that
    ``tau * (u - ell)`` stays defined on zero-valued simplicity weights.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(_Infinite, cls).__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())

    def __hash__(self):
        return hash("routexplain.INFINITE")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("INFINITE - INFINITE is undefined")
        return self

    def __mul__(self, other):
        if other == 0:
            return 0
        if other < 0:
            raise ArithmeticError("Negative multiple of INFINITE")
        return self

    __rmul__ = __mul__


INFINITE = _Infinite()

# Token used for INFINITE in every text format
INFINITE_TOKEN = "inf"

# ------------------------------------------------------------------------------


class TauOption(enum.Enum):
    """
    Ways to build the simplicity weights
    """

    # tau = 1 on pliable arcs
    ONE = "one"

    # tau ~ S / (u - ell), rounded
    INVERSE_GAP = "inverse-gap"

    # tau = 1 + floor(C0 * ell / u)
    SCALE_INVARIANT = "scale-invariant"

    # tau = 1 + floor(C0 / (u - ell))
    OFFSET_INVERSE_GAP = "offset-inverse-gap"


class ResidualOrigin(enum.IntEnum):
    """
    Where a residual arc comes from
    """

    # Copy of an original arc
    FORWARD = 0

    # Reversal of an arc carrying positive flow
    REVERSE_FLOW = 1

    # Reversal of a path arc with non-positive flow
    REVERSE_PATH = 2


class ScenarioKind(enum.Enum):
    """
    Kinds of generated scenarios
    """

    CLOSURE = "closure"
    INCIDENT = "incident"


class Pliability(enum.Enum):
    """
    Upper-bound policy of closure scenarios
    """

    # Only closures and off-path arcs are pliable
    FEW = "few"

    # Every arc untouched by a closure is pliable
    ALL = "all"


class ExplainMethod(enum.Enum):
    """
    Explanation methods compared by the harness
    """

    SVE = "SVE"
    PBE = "PBE"


class InvalidReason(enum.Enum):
    """
    Reasons for a scenario to be invalid
    """

    UNREACHABLE = "UNREACHABLE"
    DISJOINTNESS = "DISJOINTNESS"
    EMPTY_WINDOW = "EMPTY_WINDOW"
    NOT_U_SHORTEST = "NOT_U_SHORTEST"


class ExitCode(enum.IntEnum):
    """
    Exit codes of the command line interface
    """

    OK = 0
    FAILURE = 1
    PARSE_ERROR = 2
    PRECONDITION = 3
    VERIFICATION = 4


class GraphSection(enum.Enum):
    """
    Sections of the graph TSV format
    """

    NODES = "#nodes"
    ARCS = "#arcs"
    GEOMETRY = "#geometry"


# ------------------------------------------------------------------------------
# Defaults

DEFAULT_C0 = 10
DEFAULT_TAU_SCALE = 1000
DEFAULT_HOP_RADIUS = 5
DEFAULT_MULTIPLIER = 10000
DEFAULT_OFF_FACTOR = 2
DEFAULT_GAMMA = (11, 10)
DEFAULT_MIN_HOPS = 5
DEFAULT_REJECTION_BUDGET = 1000

# Oracle guards
MAX_ORACLE_PLIABLE = 20
MAX_ORACLE_VERTICES = 12

# Environment variables
CONFIG_ENV = "ROUTEXPLAIN_CONFIG"
