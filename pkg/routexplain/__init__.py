#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Provides simple valid explanations of traffic-aware shortest paths: the
smallest set of slowed-down road segments that makes a route the fastest one.

routexplain computes them with a primal-dual cycle-canceling solver, compares
them with a penalty-based baseline, and evaluates both on generated closure
and incident scenarios.

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

from . import (  # noqa: 401
    api,
    beans,
    constants,
    exceptions,
    graph,
    model,
    oracle,
    pbe,
    scenarios,
    solver,
)
from .constants import INFINITE  # noqa: 401
from .graph import load_graph, load_weights, read_graph  # noqa: 401
from .model import make_instance  # noqa: 401
from .pbe import compute_pbe  # noqa: 401
from .solver import solve_sve  # noqa: 401

# ------------------------------------------------------------------------------

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"
