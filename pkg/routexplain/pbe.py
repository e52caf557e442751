#!/usr/bin/env python3
"""
Penalty-based explanations: the baseline raising every arc of the current
shortest path, outside of the explained path, to its upper weight until the
explained path is a shortest path.

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

import logging
from typing import List  # pylint:disable=W0611

from .api import IExplainer
from .beans import (  # pylint:disable=W0611
    Explanation,
    ExplanationInstance,
    VerificationReport,
)
from .constants import ExplainMethod
from .exceptions import ExplainError
from .graph import Path, WeightVector, path_weight, shortest_path
from .model import check_u_shortest, make_explanation
from .oracle import verify_explanation

# ------------------------------------------------------------------------------

__all__ = ("PbeTrace", "run_pbe", "compute_pbe", "PbeExplainer")

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.pbe")

# ------------------------------------------------------------------------------


class PbeTrace(object):  # pylint:disable=R0205
    """
    Result of the penalty loop, with the sequence of computed paths
    """

    def __init__(self, explanation, paths, iterations):
        # type: (Explanation, List[Path], int) -> None
        self.explanation = explanation
        self.paths = paths
        self.iterations = iterations

    def __repr__(self):
        return "<PbeTrace {0} iteration(s), {1}>".format(
            self.iterations, self.explanation
        )


def run_pbe(inst):
    # type: (ExplanationInstance) -> PbeTrace
    """
    Runs the penalty loop

    :param inst: The explanation instance
    :return: The explanation and the computed shortest paths
    :raise PreconditionError: No valid explanation exists
    """
    check_u_shortest(inst)

    graph = inst.graph
    values = list(inst.ell)
    weights = WeightVector(graph, values)
    target_length = path_weight(inst.path, weights)

    current, length = shortest_path(graph, weights, inst.source, inst.target)
    paths = [current]
    iterations = 0
    while length < target_length:
        iterations += 1
        if iterations > graph.num_arcs:
            raise ExplainError(
                "Penalty loop didn't stop after {0} iterations".format(
                    graph.num_arcs
                )
            )

        for index in current.arcs:
            if index not in inst.path_arcs:
                values[index] = inst.upper[index]

        weights = WeightVector(graph, values)
        current, length = shortest_path(
            graph, weights, inst.source, inst.target
        )
        paths.append(current)
        _log.debug(
            "Iteration %d: shortest length %s, target %s",
            iterations,
            length,
            target_length,
        )

    explanation = make_explanation(
        weights, inst, ExplainMethod.PBE, iterations
    )
    return PbeTrace(explanation, paths, iterations)


def compute_pbe(inst):
    # type: (ExplanationInstance) -> Explanation
    """
    Computes the penalty-based explanation of the path of the instance

    :raise PreconditionError: No valid explanation exists
    """
    return run_pbe(inst).explanation


class PbeExplainer(IExplainer):
    """
    Penalty-based explanations
    """

    method = ExplainMethod.PBE

    def explain(self, inst):
        # type: (ExplanationInstance) -> Explanation
        return compute_pbe(inst)

    def verify(self, inst, expl):
        # type: (ExplanationInstance, Explanation) -> VerificationReport
        return verify_explanation(inst, expl)
