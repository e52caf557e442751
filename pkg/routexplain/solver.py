#!/usr/bin/env python3
"""
Primal-dual solver of the cut formulation.

Starting from the trivial flow solution, positive cycles of the residual
graph are canceled until none remains. Potentials computed on the final
residual graph give the weights of a simple valid explanation, whose
duality gap with the flow solution is zero.

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

import collections
import logging
import os
from fractions import Fraction
from typing import (  # pylint:disable=W0611
    IO,
    Any,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .api import IExplainer
from .beans import (
    Certificate,
    Explanation,
    ExplanationInstance,
    FlowSolution,
    ResidualArc,
    ResidualCycle,
    ResidualGraph,
    TauVector,
    VerificationReport,
)
from .constants import INFINITE, ExplainMethod, ResidualOrigin
from .exceptions import (
    CertificateError,
    ComplementarityError,
    DegeneracyError,
    IterationLimitError,
    NegativeCycleError,
    PreconditionError,
    UnboundedError,
)
from .graph import Path, WeightVector, distances, path_weight
from .model import (
    check_sufficiency,
    check_u_shortest,
    check_validity,
    duality_gap,
    lp2_objective,
    make_explanation,
)
from .oracle import verify_certificate, verify_explanation
from .utils import log_debug

# ------------------------------------------------------------------------------

__all__ = (
    "init_flow",
    "build_residual",
    "find_positive_cycle",
    "cycle_flow",
    "make_nondegenerate",
    "apply_modify",
    "cut_certificate",
    "objective_bound",
    "restrict_instance",
    "solve_sve",
    "SveExplainer",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.solver")

# Default iteration cap, as a multiple of the objective bound
ITERATION_FACTOR = 4

# ------------------------------------------------------------------------------


def flow_slacks(tau, flow):
    # type: (int, int) -> Tuple[int, int]
    """
    Computes (a, b) from the flow of an arc so that a - b + f = tau with
    a = 0 or b = 0
    """
    if flow <= tau:
        return tau - flow, 0
    return 0, flow - tau


def init_flow(inst):
    # type: (ExplanationInstance) -> FlowSolution
    """
    Trivial flow solution: f = 0, a = tau, b = 0 (objective 0)
    """
    nb_arcs = inst.graph.num_arcs
    return FlowSolution([0] * nb_arcs, inst.tau, [0] * nb_arcs)


def check_flow(inst, solution):
    # type: (ExplanationInstance, FlowSolution) -> None
    """
    Checks the constraints of the flow formulation

    :raise ComplementarityError: Both a and b positive on an arc
    :raise PreconditionError: Another constraint is violated
    """
    graph = inst.graph
    balance = [0] * graph.num_vertices
    for arc in graph.arcs:
        index = arc.index
        flow = solution.flow[index]
        over = solution.over[index]
        under = solution.under[index]
        if over > 0 and under > 0:
            raise ComplementarityError(arc.arc_id)
        if over < 0 or under < 0:
            raise PreconditionError(
                "Negative slack on arc {0}".format(arc.arc_id)
            )
        if over - under + flow != inst.tau[index]:
            raise PreconditionError(
                "Unbalanced slacks on arc {0}".format(arc.arc_id)
            )
        if flow < 0 and index not in inst.path_arcs:
            raise PreconditionError(
                "Negative flow on arc {0}, off the path".format(arc.arc_id)
            )
        balance[arc.dst] += flow
        balance[arc.src] -= flow

    for vertex, excess in enumerate(balance):
        if excess:
            raise PreconditionError(
                "Flow not conserved at {0}".format(graph.vertex_id(vertex))
            )


def build_residual(inst, solution):
    # type: (ExplanationInstance, FlowSolution) -> ResidualGraph
    """
    Builds the residual graph around a flow solution. Each original arc
    gives its own residual arcs:

    * FORWARD: (-ell, tau - f) if f < tau, else (-u, uncapped)
    * REVERSE_FLOW, if f > 0: (ell, f) if f <= tau, else (u, f - tau)
    * REVERSE_PATH, for path arcs with f <= 0: (ell, uncapped)

    A FORWARD arc that would weigh minus infinity is left out.

    :param inst: The explanation instance
    :param solution: A flow solution
    :return: The residual graph, its constant being the objective value of
             the solution
    :raise ComplementarityError: Both a and b positive on an arc
    :raise PreconditionError: The slacks don't match the flow
    """
    graph = inst.graph
    residuals = []  # type: List[ResidualArc]
    constant = 0

    def add(origin, index, tail, head, weight, capacity):
        residuals.append(
            ResidualArc(
                len(residuals), origin, index, tail, head, weight, capacity
            )
        )

    for arc in graph.arcs:
        index = arc.index
        lower = inst.ell[index]
        upper = inst.upper[index]
        tau = inst.tau[index]
        flow = solution.flow[index]

        if solution.over[index] > 0 and solution.under[index] > 0:
            raise ComplementarityError(arc.arc_id)
        if solution.over[index] - solution.under[index] + flow != tau:
            raise PreconditionError(
                "Unbalanced slacks on arc {0}".format(arc.arc_id)
            )

        if flow < tau:
            add(
                ResidualOrigin.FORWARD,
                index,
                arc.src,
                arc.dst,
                -lower,
                tau - flow,
            )
            constant -= lower * flow
        elif upper is INFINITE:
            if flow > tau:
                raise PreconditionError(
                    "Unbounded objective on arc {0}".format(arc.arc_id)
                )
            constant -= lower * tau
        else:
            add(ResidualOrigin.FORWARD, index, arc.src, arc.dst, -upper, 0)
            constant -= lower * tau + upper * (flow - tau)

        if flow > 0:
            if flow <= tau:
                add(
                    ResidualOrigin.REVERSE_FLOW,
                    index,
                    arc.dst,
                    arc.src,
                    lower,
                    flow,
                )
            else:
                add(
                    ResidualOrigin.REVERSE_FLOW,
                    index,
                    arc.dst,
                    arc.src,
                    upper,
                    flow - tau,
                )
        elif index in inst.path_arcs:
            add(ResidualOrigin.REVERSE_PATH, index, arc.dst, arc.src, lower, 0)

    return ResidualGraph(graph.num_vertices, residuals, constant)


def dump_residual(residual, graph, fd):
    # type: (ResidualGraph, Any, IO[str]) -> None
    """
    Writes the residual graph as TSV: origin, tail, head, arc, weight,
    capacity (``-`` when uncapped)
    """
    fd.write("#residual\tW={0}\n".format(residual.constant))
    for arc in residual.arcs:
        fd.write(
            "{0}\t{1}\t{2}\t{3}\t{4}\t{5}\n".format(
                arc.origin.name,
                graph.vertex_id(arc.tail),
                graph.vertex_id(arc.head),
                graph.arc(arc.arc).arc_id,
                arc.weight,
                arc.capacity if arc.capped else "-",
            )
        )


# ------------------------------------------------------------------------------


def _parent_cycle(arcs, parents):
    # type: (Sequence[ResidualArc], List[Optional[int]]) -> Optional[List[int]]
    """
    Looks for a cycle in the parent graph of a label-correcting search

    :return: Residual arcs of the cycle, in travel order, or None
    """
    stamps = [0] * len(parents)
    for start in range(len(parents)):
        if stamps[start]:
            continue

        vertex = start  # type: Optional[int]
        while vertex is not None and not stamps[vertex]:
            stamps[vertex] = start + 1
            parent = parents[vertex]
            vertex = None if parent is None else arcs[parent].tail

        if vertex is not None and stamps[vertex] == start + 1:
            cycle = []
            current = vertex
            while True:
                parent = parents[current]
                cycle.append(parent)
                current = arcs[parent].tail
                if current == vertex:
                    break
            cycle.reverse()
            return cycle

    return None


def _label_correcting(residual, initial=None):
    # type: (ResidualGraph, Optional[List[int]]) -> Tuple[List[int], Optional[List[int]]]
    """
    Shortest distances under the weights -weight from a virtual source
    linked to every vertex by zero-weight arcs.

    The parent graph is checked for cycles every |V| relaxations: any cycle
    there is negative, whatever the initial labels.

    :param residual: The residual graph
    :param initial: Starting labels, e.g. those of the previous iteration
                    (default: all 0)
    :return: The distances and None, or a negative cycle
    """
    nb_vertices = residual.num_vertices
    arcs = residual.arcs
    if initial is None or len(initial) != nb_vertices:
        dist = [0] * nb_vertices
    else:
        dist = list(initial)
    parents = [None] * nb_vertices  # type: List[Optional[int]]
    queue = collections.deque(range(nb_vertices))
    queued = [True] * nb_vertices
    relaxations = 0

    while queue:
        vertex = queue.popleft()
        queued[vertex] = False
        base = dist[vertex]
        for index in residual.out_arcs[vertex]:
            arc = arcs[index]
            candidate = base - arc.weight
            if candidate < dist[arc.head]:
                dist[arc.head] = candidate
                parents[arc.head] = index
                relaxations += 1
                if relaxations % nb_vertices == 0:
                    cycle = _parent_cycle(arcs, parents)
                    if cycle is not None:
                        return dist, cycle

                if not queued[arc.head]:
                    queued[arc.head] = True
                    queue.append(arc.head)

    return dist, None


def find_positive_cycle(residual):
    # type: (ResidualGraph) -> Optional[ResidualCycle]
    """
    Finds a simple cycle of positive residual weight

    :param residual: The residual graph
    :return: The cycle, or None if there is none. A cycle without capped
             arcs is returned with its ``unbounded`` flag set.
    """
    return _search_cycle(residual)[1]


def _search_cycle(residual, initial=None):
    # type: (ResidualGraph, Optional[List[int]]) -> Tuple[List[int], Optional[ResidualCycle]]
    """
    Cycle search starting from the given labels

    :return: The labels reached and the positive cycle, if any
    """
    labels, cycle = _label_correcting(residual, initial)
    if cycle is None:
        return labels, None

    arcs = residual.arcs
    weight = sum(arcs[index].weight for index in cycle)
    if weight <= 0:
        raise CertificateError(
            "Cycle search returned a non-positive cycle ({0})".format(weight)
        )

    capacities = [
        arcs[index].capacity for index in cycle if arcs[index].capped
    ]
    bottleneck = min(capacities) if capacities else None
    return labels, ResidualCycle(cycle, weight, bottleneck)


def cycle_flow(residual, cycle, amount):
    # type: (ResidualGraph, ResidualCycle, int) -> List[int]
    """
    Residual flow pushing the given amount around a cycle
    """
    flow = [0] * len(residual.arcs)
    for index in cycle.arcs:
        flow[index] += amount
    return flow


def _check_residual_flow(residual, flow):
    # type: (ResidualGraph, Sequence[int]) -> None
    """
    Checks that a residual flow is feasible

    :raise PreconditionError: Infeasible flow
    """
    if len(flow) != len(residual.arcs):
        raise PreconditionError(
            "Expected {0} residual flow values, got {1}".format(
                len(residual.arcs), len(flow)
            )
        )

    balance = [0] * residual.num_vertices
    for arc, amount in zip(residual.arcs, flow):
        if amount < 0:
            raise PreconditionError(
                "Negative residual flow on arc {0}".format(arc.index)
            )
        if arc.capped and amount > arc.capacity:
            raise PreconditionError(
                "Residual flow above capacity on arc {0}".format(arc.index)
            )
        balance[arc.head] += amount
        balance[arc.tail] -= amount

    if any(balance):
        raise PreconditionError("Residual flow is not a circulation")


def make_nondegenerate(residual, flow):
    # type: (ResidualGraph, Sequence[int]) -> List[int]
    """
    Cancels the flow going both ways along the same arc: the smaller of
    both amounts is removed from the FORWARD and the reverse residual arcs.
    The objective doesn't decrease.

    :param residual: The residual graph
    :param flow: A feasible residual flow
    :return: The nondegenerate flow
    :raise PreconditionError: Infeasible flow
    """
    _check_residual_flow(residual, flow)
    result = list(flow)
    for arc, forward in residual.forward.items():
        reverse = residual.reverse.get(arc)
        if reverse is None:
            continue

        common = min(result[forward], result[reverse])
        if common:
            result[forward] -= common
            result[reverse] -= common
    return result


def apply_modify(inst, solution, residual, flow):
    # type: (ExplanationInstance, FlowSolution, ResidualGraph, Sequence[int]) -> FlowSolution
    """
    Applies a nondegenerate residual flow to a flow solution. Slacks are
    recomputed from the new flow.

    :param inst: The explanation instance
    :param solution: The solution the residual graph was built from
    :param residual: The residual graph
    :param flow: A feasible, nondegenerate residual flow
    :return: The new flow solution
    :raise DegeneracyError: Flow in both directions of an arc
    """
    new_flow = list(solution.flow)
    for arc in inst.graph.arcs:
        index = arc.index
        forward = residual.forward.get(index)
        reverse = residual.reverse.get(index)
        pushed = flow[forward] if forward is not None else 0
        pulled = flow[reverse] if reverse is not None else 0
        if pushed and pulled:
            raise DegeneracyError(
                "Residual flow in both directions of arc {0}".format(
                    arc.arc_id
                )
            )

        new_flow[index] += pushed - pulled
        if new_flow[index] < 0 and index not in inst.path_arcs:
            raise DegeneracyError(
                "Negative flow on arc {0}, off the path".format(arc.arc_id)
            )

    over = []
    under = []
    for index, value in enumerate(new_flow):
        a, b = flow_slacks(inst.tau[index], value)
        over.append(a)
        under.append(b)
    return FlowSolution(new_flow, over, under)


# ------------------------------------------------------------------------------


def cut_certificate(inst, solution, residual=None):
    # type: (ExplanationInstance, FlowSolution, Optional[ResidualGraph]) -> Certificate
    """
    Extracts the cut solution matching an optimal flow solution.

    Potentials are distances on the residual graph. Path arcs and arcs with
    flow take the potential difference as weight; other arcs take the
    largest of their lower weight and the potential difference.

    :param inst: The explanation instance
    :param solution: A flow solution without positive residual cycle
    :param residual: Its residual graph, if already built
    :return: The certificate, with a zero gap
    :raise NegativeCycleError: The residual graph has a positive cycle
    :raise CertificateError: The certificate fails its own checks
    """
    if residual is None:
        residual = build_residual(inst, solution)

    dist, cycle = _label_correcting(residual)
    if cycle is not None:
        raise NegativeCycleError(
            "Residual graph still has a positive cycle: {0}".format(cycle)
        )

    offset = dist[inst.source]
    potentials = [value - offset for value in dist]

    values = []
    for arc in inst.graph.arcs:
        index = arc.index
        difference = potentials[arc.dst] - potentials[arc.src]
        if index in inst.path_arcs or solution.flow[index] != 0:
            values.append(difference)
        else:
            values.append(max(inst.ell[index], difference))

    try:
        weights = WeightVector(inst.graph, values)
    except ValueError as ex:
        raise CertificateError("Invalid certificate weights: {0}".format(ex))

    gap = duality_gap(weights, potentials, solution, inst)
    if gap != 0:
        raise CertificateError("Nonzero duality gap: {0}".format(gap))
    if not check_validity(weights, inst):
        raise CertificateError("Certificate weights are not valid")
    if not check_sufficiency(weights, inst):
        raise CertificateError("Certificate weights are not sufficient")

    return Certificate(weights, potentials, gap)


def objective_bound(inst):
    # type: (ExplanationInstance) -> int
    """
    Upper bound of the optimal valuation: raising every pliable arc to its
    upper weight, capped to the upper length of the path on infinite arcs
    """
    path_upper = path_weight(inst.path, inst.upper)
    bound = 0
    for index in range(inst.graph.num_arcs):
        tau = inst.tau[index]
        if not tau or not inst.is_pliable(index):
            continue

        lower = inst.ell[index]
        upper = inst.upper[index]
        if upper is INFINITE:
            bound += tau * max(0, path_upper - lower)
        else:
            bound += tau * (upper - lower)
    return bound


# ------------------------------------------------------------------------------


def restrict_instance(inst, beta):
    # type: (ExplanationInstance, Union[int, float, str, Fraction]) -> Tuple[ExplanationInstance, List[int]]
    """
    Keeps the vertices v with dist(s, v) + dist(v, t) <= beta * u(P), using
    lower weights. Paths through dropped vertices are longer than P under any
    valid weights, so the optimum doesn't change.

    :param inst: The explanation instance
    :param beta: Ellipse factor, at least 1
    :return: The restricted instance and, for each of its arcs, the position
             of the matching arc in the original graph
    :raise PreconditionError: beta below 1
    """
    factor = Fraction(str(beta)) if isinstance(beta, float) else Fraction(beta)
    if factor < 1:
        raise PreconditionError("Ellipse factor must be at least 1")

    graph = inst.graph
    limit = factor * path_weight(inst.path, inst.upper)
    from_source = distances(graph, inst.ell, inst.source)
    to_target = distances(graph, inst.ell, inst.target, reverse=True)

    kept = [
        vertex
        for vertex in range(graph.num_vertices)
        if from_source[vertex] is not None
        and to_target[vertex] is not None
        and from_source[vertex] + to_target[vertex] <= limit
    ]
    subgraph, arc_map = graph.subgraph(kept)
    renumber = {old: new for new, old in enumerate(arc_map)}

    source = subgraph.vertex(graph.vertex_id(inst.source))
    path = Path(subgraph, [renumber[a] for a in inst.path.arcs], source)
    tau = TauVector(
        [inst.tau[a] for a in arc_map],
        inst.tau.option,
        inst.tau.c0,
        inst.tau.scale,
    )
    restricted = ExplanationInstance(
        subgraph,
        WeightVector(subgraph, [inst.ell[a] for a in arc_map]),
        WeightVector(subgraph, [inst.upper[a] for a in arc_map]),
        path,
        tau,
    )

    _log.debug(
        "Ellipse filter kept %d/%d vertices and %d/%d arcs",
        subgraph.num_vertices,
        graph.num_vertices,
        subgraph.num_arcs,
        graph.num_arcs,
    )
    return restricted, arc_map


def _solve(inst, max_iters, trace_dir, debug_checks):
    # type: (ExplanationInstance, Optional[int], Optional[str], bool) -> Tuple[Explanation, FlowSolution, Certificate]
    """
    Cycle-canceling loop and certificate extraction
    """
    if max_iters is None:
        max_iters = ITERATION_FACTOR * objective_bound(inst)
    debug_checks = debug_checks or _log.isEnabledFor(logging.DEBUG)

    if trace_dir:
        os.makedirs(trace_dir, exist_ok=True)

    solution = init_flow(inst)
    iterations = 0
    labels = None  # type: Optional[List[int]]
    while True:
        residual = build_residual(inst, solution)
        if trace_dir:
            trace_file = os.path.join(
                trace_dir, "residual_{0}.tsv".format(iterations)
            )
            with open(trace_file, "w", encoding="utf-8") as fd:
                dump_residual(residual, inst.graph, fd)

        # Warm start from the labels of the previous search
        labels, cycle = _search_cycle(residual, labels)
        if cycle is None:
            break
        if cycle.unbounded:
            raise UnboundedError(
                "Uncapped positive cycle of weight {0}".format(cycle.weight)
            )
        if iterations >= max_iters:
            raise IterationLimitError(
                iterations, objective_bound(inst) - residual.constant
            )

        flow = make_nondegenerate(
            residual, cycle_flow(residual, cycle, cycle.bottleneck)
        )
        solution = apply_modify(inst, solution, residual, flow)
        iterations += 1

        if debug_checks:
            check_flow(inst, solution)
            expected = residual.constant + sum(
                arc.weight * amount
                for arc, amount in zip(residual.arcs, flow)
                if amount
            )
            if lp2_objective(solution, inst) != expected:
                raise CertificateError(
                    "Objective mismatch after iteration {0}".format(iterations)
                )

        log_debug(
            "Iteration {0}: cycle of {1} arcs, weight {2}, bottleneck {3}, "
            "objective {4}".format(
                iterations,
                len(cycle.arcs),
                cycle.weight,
                cycle.bottleneck,
                residual.constant + cycle.weight * cycle.bottleneck,
            ),
            1,
        )

    certificate = cut_certificate(inst, solution, residual)
    explanation = make_explanation(
        certificate.weights, inst, ExplainMethod.SVE, iterations
    )
    if explanation.valuation != lp2_objective(solution, inst):
        raise CertificateError(
            "Valuation {0} differs from the flow objective {1}".format(
                explanation.valuation, lp2_objective(solution, inst)
            )
        )

    explanation.solution = solution
    explanation.certificate = certificate
    return explanation, solution, certificate


def solve_sve(
    inst, max_iters=None, beta=None, trace_dir=None, debug_checks=False
):
    # type: (ExplanationInstance, Optional[int], Any, Optional[str], bool) -> Tuple[Explanation, FlowSolution, Certificate]
    """
    Computes a simple valid explanation of the path of the instance

    :param inst: The explanation instance
    :param max_iters: Maximum number of cycle cancellations (default: 4
                      times the objective bound)
    :param beta: Ellipse factor of the subgraph filter (None to disable)
    :param trace_dir: Folder where residual graphs are dumped
    :param debug_checks: Check the flow constraints after each iteration
    :return: The explanation, the optimal flow solution and the certificate.
             With the ellipse filter, the flow solution and the certificate
             belong to the restricted instance.
    :raise PreconditionError: The path isn't a shortest path under u
    :raise UnboundedError: The flow formulation is unbounded
    :raise IterationLimitError: Too many iterations
    :raise CertificateError: Internal error
    """
    check_u_shortest(inst)

    if beta is None:
        explanation, solution, certificate = _solve(
            inst, max_iters, trace_dir, debug_checks
        )
    else:
        restricted, arc_map = restrict_instance(inst, beta)
        partial, solution, certificate = _solve(
            restricted, max_iters, trace_dir, debug_checks
        )

        values = list(inst.ell)
        for new, old in enumerate(arc_map):
            values[old] = partial.weights[new]
        weights = WeightVector(inst.graph, values)
        if not check_validity(weights, inst) or not check_sufficiency(
            weights, inst
        ):
            raise CertificateError("Lifted explanation is not valid")

        explanation = make_explanation(
            weights, inst, ExplainMethod.SVE, partial.iterations
        )
        explanation.solution = solution
        explanation.certificate = certificate

    _log.info(
        "SVE found after %d iteration(s): valuation %s, %d arc(s)",
        explanation.iterations,
        explanation.valuation,
        len(explanation.support),
    )
    return explanation, solution, certificate


class SveExplainer(IExplainer):
    """
    Simple valid explanations, through the primal-dual solver
    """

    method = ExplainMethod.SVE

    def __init__(
        self, max_iters=None, beta=None, trace_dir=None, debug_checks=False
    ):
        # type: (Optional[int], Any, Optional[str], bool) -> None
        self.max_iters = max_iters
        self.beta = beta
        self.trace_dir = trace_dir
        self.debug_checks = debug_checks

    def explain(self, inst):
        # type: (ExplanationInstance) -> Explanation
        """
        Solves the instance
        """
        explanation, _, _ = solve_sve(
            inst, self.max_iters, self.beta, self.trace_dir, self.debug_checks
        )
        return explanation

    def verify(self, inst, expl):
        # type: (ExplanationInstance, Explanation) -> VerificationReport
        """
        Verifies the certificate of the explanation. With the ellipse filter,
        only the explanation itself is verified.
        """
        if self.beta is not None or expl.certificate is None:
            return verify_explanation(inst, expl)
        return verify_certificate(inst, expl, expl.certificate, expl.solution)
