#!/usr/bin/env python3
"""
Cut formulation of simple valid explanations: simplicity weights, validity
and sufficiency checks, valuation, support and the duality gap shared with
the flow solver.

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

from typing import Any, FrozenSet, Optional, Sequence  # noqa: F401

from .beans import (
    Explanation,
    ExplanationInstance,
    FlowSolution,
    TauVector,
)
from .constants import (
    DEFAULT_C0,
    DEFAULT_TAU_SCALE,
    INFINITE,
    ExplainMethod,
    TauOption,
)
from .exceptions import PreconditionError, UnreachableError
from .graph import Path, RoadGraph, WeightVector, path_weight, shortest_path

# ------------------------------------------------------------------------------

__all__ = (
    "make_tau",
    "make_instance",
    "check_validity",
    "check_sufficiency",
    "valuation",
    "support",
    "make_explanation",
    "lp1_objective",
    "lp2_objective",
    "duality_gap",
    "check_u_shortest",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# ------------------------------------------------------------------------------


def _round_half_up(numerator, denominator):
    # type: (int, int) -> int
    """
    Rounds a positive fraction to the nearest integer, halves going up
    """
    return (2 * numerator + denominator) // (2 * denominator)


def make_tau(
    graph,
    ell,
    upper,
    option=TauOption.ONE,
    c0=DEFAULT_C0,
    scale=DEFAULT_TAU_SCALE,
):
    # type: (RoadGraph, WeightVector, WeightVector, TauOption, int, int) -> TauVector
    """
    Builds the simplicity weights. Non-pliable arcs always get 0.

    * ONE: 1 on pliable arcs
    * INVERSE_GAP: max(1, round(S / (u - ell))), 0 on infinite uppers
    * SCALE_INVARIANT: 1 + floor(C0 * ell / u), 1 on infinite uppers
    * OFFSET_INVERSE_GAP: 1 + floor(C0 / (u - ell)), 1 on infinite uppers

    :param graph: The road graph
    :param ell: Lower weights
    :param upper: Upper weights
    :param option: Construction rule
    :param c0: C0 constant of the scale-invariant rules
    :param scale: S constant of the inverse-gap rule
    :raise PreconditionError: Invalid constant
    """
    option = TauOption(option)
    if option in (TauOption.SCALE_INVARIANT, TauOption.OFFSET_INVERSE_GAP):
        if c0 < 1:
            raise PreconditionError(
                "C0 must be at least 1, got {0}".format(c0)
            )
    elif option == TauOption.INVERSE_GAP and scale < 1:
        raise PreconditionError("S must be at least 1, got {0}".format(scale))

    values = []
    for index in range(graph.num_arcs):
        lower = ell[index]
        high = upper[index]
        if not lower < high:
            values.append(0)
        elif option == TauOption.ONE:
            values.append(1)
        elif option == TauOption.INVERSE_GAP:
            if high is INFINITE:
                values.append(0)
            else:
                values.append(max(1, _round_half_up(scale, high - lower)))
        elif option == TauOption.SCALE_INVARIANT:
            if high is INFINITE:
                values.append(1)
            else:
                values.append(1 + (c0 * lower) // high)
        elif high is INFINITE:
            values.append(1)
        else:
            values.append(1 + c0 // (high - lower))

    if option == TauOption.ONE:
        return TauVector(values, option)
    if option == TauOption.INVERSE_GAP:
        return TauVector(values, option, scale=scale)
    return TauVector(values, option, c0=c0)


def make_instance(
    graph,
    ell,
    upper,
    path,
    option=TauOption.ONE,
    c0=DEFAULT_C0,
    scale=DEFAULT_TAU_SCALE,
):
    # type: (RoadGraph, WeightVector, WeightVector, Path, TauOption, int, int) -> ExplanationInstance
    """
    Builds an explanation instance, computing its simplicity weights

    :raise PreconditionError: Inconsistent inputs
    """
    tau = make_tau(graph, ell, upper, option, c0, scale)
    return ExplanationInstance(graph, ell, upper, path, tau)


# ------------------------------------------------------------------------------


def check_validity(weights, inst):
    # type: (WeightVector, ExplanationInstance) -> bool
    """
    Checks that ell <= w <= u on every arc
    """
    if len(weights) != inst.graph.num_arcs:
        return False

    for index, value in enumerate(weights):
        if value < inst.ell[index] or inst.upper[index] < value:
            return False
    return True


def check_sufficiency(weights, inst):
    # type: (WeightVector, ExplanationInstance) -> bool
    """
    Checks that the path of the instance is a shortest path under w

    :raise UnreachableError: The destination can't be reached under w
    """
    _, total = shortest_path(inst.graph, weights, inst.source, inst.target)
    return path_weight(inst.path, weights) == total


def check_u_shortest(inst):
    # type: (ExplanationInstance) -> None
    """
    Checks that the path of the instance is a shortest path under its upper
    weights, i.e. that a valid explanation exists

    :raise PreconditionError: Not a shortest path
    """
    try:
        if check_sufficiency(inst.upper, inst):
            return
    except UnreachableError:
        pass
    raise PreconditionError(
        "The path is not a shortest path under the upper weights"
    )


def valuation(weights, inst):
    # type: (WeightVector, ExplanationInstance) -> Any
    """
    Sum of tau(e) * (w_e - ell(e)) over the pliable arcs
    """
    total = 0
    for index in range(inst.graph.num_arcs):
        tau = inst.tau[index]
        if tau and inst.is_pliable(index):
            total = total + (weights[index] - inst.ell[index]) * tau
    return total


def support(weights, inst):
    # type: (WeightVector, ExplanationInstance) -> FrozenSet[int]
    """
    Arcs whose weight is raised above the lower weight
    """
    return frozenset(
        index
        for index, value in enumerate(weights)
        if inst.ell[index] < value
    )


def make_explanation(
    weights, inst, method=ExplainMethod.SVE, iterations=0
):
    # type: (WeightVector, ExplanationInstance, ExplainMethod, int) -> Explanation
    """
    Wraps weights into an explanation, computing valuation and support
    """
    return Explanation(
        weights,
        valuation(weights, inst),
        support(weights, inst),
        inst.tau,
        method,
        iterations,
    )


lp1_objective = valuation


def lp2_objective(solution, inst):
    # type: (FlowSolution, ExplanationInstance) -> int
    """
    Objective of the flow formulation: sum of ell(e)(a_e - tau(e)) - u(e)b_e
    """
    total = 0
    for index in range(inst.graph.num_arcs):
        total += inst.ell[index] * (solution.over[index] - inst.tau[index])
        under = solution.under[index]
        if under:
            total -= inst.upper[index] * under
    return total


def duality_gap(weights, potentials, solution, inst):
    # type: (WeightVector, Sequence[int], FlowSolution, ExplanationInstance) -> Any
    """
    Evaluates the duality gap between a cut solution (w, d) and a flow
    solution (f, a, b), term by term:

    * w_e (tau(e) - (a_e - b_e + f_e))
    * (w_e - ell(e)) a_e
    * (u(e) - w_e) b_e
    * (w_e - d_v + d_u) f_e, for each arc e = (u, v)
    * d_v (sum of f over in-arcs of v - sum of f over out-arcs of v)

    Feasibility isn't required. Terms with a zero coefficient are skipped,
    so that infinite weights only show up where they matter.

    :param weights: w, per arc
    :param potentials: d, per vertex
    :param solution: The flow solution
    :param inst: The explanation instance
    :return: The gap, nonnegative when both solutions are feasible
    """
    graph = inst.graph
    gap = 0
    balance = [0] * graph.num_vertices
    for arc in graph.arcs:
        index = arc.index
        value = weights[index]
        flow = solution.flow[index]
        over = solution.over[index]
        under = solution.under[index]

        slack = inst.tau[index] - (over - under + flow)
        if slack:
            gap = gap + value * slack
        if over:
            gap = gap + (value - inst.ell[index]) * over
        if under:
            gap = gap + (inst.upper[index] - value) * under
        if flow:
            gap = gap + (
                value - potentials[arc.dst] + potentials[arc.src]
            ) * flow
            balance[arc.dst] += flow
            balance[arc.src] -= flow

    for vertex, excess in enumerate(balance):
        if excess:
            gap = gap + potentials[vertex] * excess
    return gap
