#!/usr/bin/env python3
"""
Ground truth for small instances: exhaustive path enumeration, brute-force
search of the smallest explanation, and an untrusting verifier of solver
outputs.

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

import itertools
import logging
from typing import (  # pylint:disable=W0611
    Any,
    FrozenSet,
    List,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx

from .beans import (
    Certificate,
    CheckResult,
    Explanation,
    ExplanationInstance,
    FlowSolution,
    VerificationReport,
)
from .constants import INFINITE, MAX_ORACLE_PLIABLE, MAX_ORACLE_VERTICES
from .exceptions import GuardError, UnreachableError
from .graph import Path, RoadGraph, WeightVector, path_weight
from .model import check_sufficiency

# ------------------------------------------------------------------------------

__all__ = (
    "enumerate_paths",
    "brute_force_mip",
    "verify_explanation",
    "verify_certificate",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.oracle")

# Default maximum number of enumerated paths
DEFAULT_PATH_LIMIT = 100000

# ------------------------------------------------------------------------------


def enumerate_paths(graph, weights, source, target, limit=DEFAULT_PATH_LIMIT):
    # type: (RoadGraph, WeightVector, int, int, int) -> List[Tuple[Path, Any]]
    """
    Lists all simple paths between two vertices, sorted by weight, then by
    number of arcs, then by arc positions

    :param graph: A graph with at most 12 vertices
    :param weights: Arc weights
    :param source: Origin vertex
    :param target: Destination vertex
    :param limit: Maximum number of paths
    :return: A list of (path, weight) tuples
    :raise GuardError: Graph too large or too many paths
    """
    if graph.num_vertices > MAX_ORACLE_VERTICES:
        raise GuardError(
            "Path enumeration is limited to {0} vertices, got {1}".format(
                MAX_ORACLE_VERTICES, graph.num_vertices
            )
        )

    if source == target:
        return [(Path(graph, (), source), 0)]

    result = []  # type: List[Tuple[Path, Any]]
    for edges in nx.all_simple_edge_paths(graph.to_networkx(), source, target):
        if len(result) >= limit:
            raise GuardError("More than {0} paths".format(limit))

        path = Path(graph, [key for _, _, key in edges], source)
        result.append((path, path_weight(path, weights)))

    result.sort(key=lambda item: (item[1], len(item[0]), item[0].arcs))
    return result


def _raise_cost(inst, arcs):
    """
    Valuation of raising the given arcs to their upper weight
    """
    cost = 0
    for index in arcs:
        cost = cost + (inst.upper[index] - inst.ell[index]) * inst.tau[index]
    return cost


def brute_force_mip(inst, max_support=None):
    # type: (ExplanationInstance, Optional[int]) -> Optional[Tuple[FrozenSet[int], Any]]
    """
    Finds the cheapest set of pliable arcs to raise to their upper weight
    so that the path becomes a shortest path

    :param inst: An instance with at most 20 pliable arcs
    :param max_support: Maximum size of the searched sets (None: no limit)
    :return: The best (arc set, valuation), or None if no set works
    :raise GuardError: Too many pliable arcs
    """
    pliable = inst.pliable_arcs()
    if len(pliable) > MAX_ORACLE_PLIABLE:
        raise GuardError(
            "Brute force is limited to {0} pliable arcs, got {1}".format(
                MAX_ORACLE_PLIABLE, len(pliable)
            )
        )

    largest = len(pliable)
    if max_support is not None:
        largest = min(largest, max_support)

    best = None  # type: Optional[Tuple[FrozenSet[int], Any]]
    for size in range(largest + 1):
        for subset in itertools.combinations(pliable, size):
            cost = _raise_cost(inst, subset)
            if best is not None and not cost < best[1]:
                continue

            weights = inst.ell.replace({a: inst.upper[a] for a in subset})
            try:
                sufficient = check_sufficiency(weights, inst)
            except UnreachableError:
                sufficient = False

            if sufficient:
                best = (frozenset(subset), cost)

    _log.debug("Brute force result: %s", best)
    return best


# ------------------------------------------------------------------------------


def _networkx_distance(graph, weights, source, target):
    # type: (RoadGraph, WeightVector, int, int) -> Optional[Any]
    """
    Shortest distance computed by networkx, None if unreachable
    """

    def arc_weight(_, __, parallel):
        finite = [
            weights[key] for key in parallel if weights[key] is not INFINITE
        ]
        return min(finite) if finite else None

    try:
        return nx.dijkstra_path_length(
            graph.to_networkx(), source, target, weight=arc_weight
        )
    except nx.NetworkXNoPath:
        return None


def _weight_checks(inst, expl):
    # type: (ExplanationInstance, Explanation) -> List[CheckResult]
    """
    Checks of the explanation weights alone
    """
    graph = inst.graph
    weights = expl.weights
    checks = []

    checks.append(
        CheckResult(
            "lp1.validity",
            (
                arc.arc_id
                for arc in graph.arcs
                if weights[arc.index] < inst.ell[arc.index]
                or inst.upper[arc.index] < weights[arc.index]
            ),
        )
    )

    path_length = path_weight(inst.path, weights)
    best = _networkx_distance(graph, weights, inst.source, inst.target)
    detail = None
    if best is None:
        detail = "destination unreachable"
    elif best != path_length:
        detail = "path weight {0}, shortest distance {1}".format(
            path_length, best
        )
    checks.append(CheckResult("lp1.sufficiency", detail=detail))

    raised = frozenset(
        arc.index
        for arc in graph.arcs
        if inst.ell[arc.index] < weights[arc.index]
    )
    checks.append(
        CheckResult(
            "support",
            (graph.arc(i).arc_id for i in sorted(raised ^ expl.support)),
        )
    )

    primal = 0
    for arc in graph.arcs:
        index = arc.index
        if inst.tau[index] and inst.ell[index] < inst.upper[index]:
            primal = primal + (weights[index] - inst.ell[index]) * inst.tau[
                index
            ]
    detail = None
    if primal != expl.valuation:
        detail = "valuation {0}, recomputed {1}".format(expl.valuation, primal)
    checks.append(CheckResult("lp1.valuation", detail=detail))
    return checks


def verify_explanation(inst, expl):
    # type: (ExplanationInstance, Explanation) -> VerificationReport
    """
    Checks an explanation without certificate: validity, sufficiency,
    support and valuation
    """
    checks = _weight_checks(inst, expl)
    return VerificationReport(checks, primal=expl.valuation)


def verify_certificate(inst, expl, cert, sol):
    # type: (ExplanationInstance, Explanation, Certificate, FlowSolution) -> VerificationReport
    """
    Checks a solver output without trusting it: feasibility of both
    formulations constraint by constraint, objectives and duality gap

    :param inst: The explanation instance
    :param expl: The explanation
    :param cert: Its certificate
    :param sol: The flow solution
    :return: The report, PASS iff everything is feasible and the gap is 0
    """
    graph = inst.graph
    weights = expl.weights
    potentials = cert.potentials
    checks = _weight_checks(inst, expl)

    checks.append(
        CheckResult(
            "certificate.weights",
            (
                arc.arc_id
                for arc in graph.arcs
                if weights[arc.index] != cert.weights[arc.index]
            ),
        )
    )

    def difference(arc):
        return potentials[arc.dst] - potentials[arc.src]

    checks.append(
        CheckResult(
            "lp1.potentials",
            (
                arc.arc_id
                for arc in graph.arcs
                if weights[arc.index] < difference(arc)
            ),
        )
    )
    checks.append(
        CheckResult(
            "lp1.path",
            (
                graph.arc(index).arc_id
                for index in inst.path.arcs
                if weights[index] != difference(graph.arc(index))
            ),
        )
    )

    balance_errors = []
    sign_errors = []
    complementarity_errors = []
    excess = [0] * graph.num_vertices
    for arc in graph.arcs:
        index = arc.index
        flow = sol.flow[index]
        over = sol.over[index]
        under = sol.under[index]
        if over - under + flow != inst.tau[index]:
            balance_errors.append(arc.arc_id)
        if over < 0 or under < 0 or (flow < 0 and index not in inst.path_arcs):
            sign_errors.append(arc.arc_id)
        if over > 0 and under > 0:
            complementarity_errors.append(arc.arc_id)
        excess[arc.dst] += flow
        excess[arc.src] -= flow

    checks.append(CheckResult("lp2.balance", balance_errors))
    checks.append(CheckResult("lp2.signs", sign_errors))
    checks.append(
        CheckResult(
            "lp2.conservation",
            (graph.vertex_id(v) for v, value in enumerate(excess) if value),
        )
    )
    checks.append(CheckResult("lp2.complementarity", complementarity_errors))

    # Objectives and gap, term by term
    primal = 0
    dual = 0
    gap = 0
    for arc in graph.arcs:
        index = arc.index
        value = weights[index]
        lower = inst.ell[index]
        tau = inst.tau[index]
        flow = sol.flow[index]
        over = sol.over[index]
        under = sol.under[index]

        if tau and lower < inst.upper[index]:
            primal = primal + (value - lower) * tau
        dual += lower * (over - tau)
        if under:
            dual = dual - inst.upper[index] * under

        terms = (
            (value, tau - (over - under + flow)),
            (value - lower, over),
            (inst.upper[index] - value if under else 0, under),
            (value - difference(arc), flow),
        )
        for factor, coefficient in terms:
            if coefficient:
                gap = gap + factor * coefficient

    for vertex, value in enumerate(excess):
        if value:
            gap += potentials[vertex] * value

    detail = None
    if gap != 0:
        detail = "duality gap {0}".format(gap)
    elif primal != dual:
        detail = "objectives differ: {0} / {1}".format(primal, dual)
    checks.append(CheckResult("gap", detail=detail))

    report = VerificationReport(checks, gap, primal, dual)
    if not report.passed:
        _log.error(
            "Verification failed: %s",
            ", ".join(check.name for check in report.failures()),
        )
    return report
