#!/usr/bin/env python3
"""
Definition of the beans handled by the explanation pipeline

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

from typing import (  # pylint:disable=W0611
    Any,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
)

from .constants import (
    INFINITE,
    ExplainMethod,
    InvalidReason,
    ResidualOrigin,
    ScenarioKind,
    TauOption,
)
from .exceptions import PreconditionError
from .graph import Path, RoadGraph, WeightVector
from .utils import json_weight

# ------------------------------------------------------------------------------

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# ------------------------------------------------------------------------------


class TauVector(object):  # pylint:disable=R0205
    """
    Per-arc simplicity weights, with the option used to build them
    """

    def __init__(self, values, option=TauOption.ONE, c0=None, scale=None):
        # type: (Iterable[int], TauOption, Optional[int], Optional[int]) -> None
        self.values = tuple(values)  # type: Tuple[int, ...]
        self.option = option  # type: TauOption
        self.c0 = c0  # type: Optional[int]
        self.scale = scale  # type: Optional[int]

        for value in self.values:
            if not isinstance(value, int) or value < 0:
                raise ValueError(
                    "Invalid simplicity weight: {0!r}".format(value)
                )

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return self.values[index]

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return "TauVector({0}, {1})".format(
            self.option.value, list(self.values)
        )

    def metadata(self):
        # type: () -> Dict[str, Any]
        """
        Description of the option, for JSON outputs
        """
        data = {"option": self.option.value}  # type: Dict[str, Any]
        if self.c0 is not None:
            data["c0"] = self.c0
        if self.scale is not None:
            data["scale"] = self.scale
        return data


class ExplanationInstance(object):  # pylint:disable=R0205
    """
    Inputs of the cut formulation: lower and upper weights, the path to
    explain and the simplicity weights
    """

    def __init__(self, graph, ell, upper, path, tau):
        # type: (RoadGraph, WeightVector, WeightVector, Path, TauVector) -> None
        """
        :raise PreconditionError: Inconsistent inputs
        """
        self.graph = graph
        self.ell = ell
        self.upper = upper
        self.path = path
        self.tau = tau
        self.path_arcs = frozenset(path.arcs)  # type: FrozenSet[int]
        self.validate()

    def __repr__(self):
        return "<ExplanationInstance {0}: {1} arcs on path>".format(
            self.graph, len(self.path)
        )

    def validate(self):
        """
        Checks the instance

        :raise PreconditionError: Invalid instance
        """
        nb_arcs = self.graph.num_arcs
        for name, vector in (
            ("lower weights", self.ell),
            ("upper weights", self.upper),
            ("simplicity weights", self.tau),
        ):
            if len(vector) != nb_arcs:
                raise PreconditionError(
                    "Expected {0} {1}, got {2}".format(
                        nb_arcs, name, len(vector)
                    )
                )

        for arc in self.graph.arcs:
            lower = self.ell[arc.index]
            if lower is INFINITE:
                raise PreconditionError(
                    "Infinite lower weight on arc {0}".format(arc.arc_id)
                )
            if self.upper[arc.index] < lower:
                raise PreconditionError(
                    "Upper weight below lower weight on arc {0}".format(
                        arc.arc_id
                    )
                )
            if not self.is_pliable(arc.index) and self.tau[arc.index] != 0:
                raise PreconditionError(
                    "Non-pliable arc {0} has a nonzero simplicity "
                    "weight".format(arc.arc_id)
                )

        for index in self.path.arcs:
            if index >= nb_arcs:
                raise PreconditionError("Path arc out of the graph")

    @property
    def source(self):
        # type: () -> int
        """
        Origin of the path
        """
        return self.path.source

    @property
    def target(self):
        # type: () -> int
        """
        Destination of the path
        """
        return self.path.target

    def is_pliable(self, index):
        # type: (int) -> bool
        """
        An arc is pliable if its upper weight is above its lower one
        """
        return self.ell[index] < self.upper[index]

    def pliable_arcs(self):
        # type: () -> List[int]
        """
        Positions of all pliable arcs
        """
        return [
            i for i in range(self.graph.num_arcs) if self.is_pliable(i)
        ]

    def with_tau(self, tau):
        # type: (TauVector) -> ExplanationInstance
        """
        Returns the same instance with other simplicity weights
        """
        return ExplanationInstance(
            self.graph, self.ell, self.upper, self.path, tau
        )


class Explanation(object):  # pylint:disable=R0205
    """
    A valid explanation: weights, their valuation and support
    """

    def __init__(
        self,
        weights,
        valuation,
        support,
        tau=None,
        method=ExplainMethod.SVE,
        iterations=0,
        solution=None,
        certificate=None,
    ):
        # type: (WeightVector, Any, Iterable[int], Optional[TauVector], ExplainMethod, int, Optional[FlowSolution], Optional[Certificate]) -> None
        self.weights = weights
        self.valuation = valuation
        self.support = frozenset(support)  # type: FrozenSet[int]
        self.tau = tau
        self.method = method
        self.iterations = iterations

        # Flow solution and certificate backing an SVE
        self.solution = solution
        self.certificate = certificate

    def __repr__(self):
        return "<Explanation {0}: valuation={1}, support={2}>".format(
            self.method.value, self.valuation, sorted(self.support)
        )

    @property
    def nontrivial(self):
        # type: () -> bool
        """
        True if at least one arc is raised
        """
        return bool(self.support)

    def support_ids(self, graph):
        # type: (RoadGraph) -> List[str]
        """
        Identifiers of the arcs of the support, in graph order
        """
        return [graph.arc(i).arc_id for i in sorted(self.support)]

    def to_json(self, graph):
        # type: (RoadGraph) -> Dict[str, Any]
        """
        Converts the explanation to a JSON-compatible dictionary
        """
        data = {
            "method": self.method.value,
            "support": self.support_ids(graph),
            "weights": {
                graph.arc(i).arc_id: json_weight(self.weights[i])
                for i in sorted(self.support)
            },
            "valuation": json_weight(self.valuation),
            "nontrivial": self.nontrivial,
            "iterations": self.iterations,
        }  # type: Dict[str, Any]
        if self.tau is not None:
            data["tau"] = self.tau.metadata()
        return data


# ------------------------------------------------------------------------------


class FlowSolution(object):  # pylint:disable=R0205
    """
    Solution of the flow formulation: circulation and slack splits
    """

    __slots__ = ("flow", "over", "under")

    def __init__(self, flow, over, under):
        # type: (Iterable[int], Iterable[int], Iterable[int]) -> None
        """
        :param flow: f, per arc
        :param over: a, per arc
        :param under: b, per arc
        """
        self.flow = tuple(flow)  # type: Tuple[int, ...]
        self.over = tuple(over)  # type: Tuple[int, ...]
        self.under = tuple(under)  # type: Tuple[int, ...]

    def __repr__(self):
        return "FlowSolution(f={0}, a={1}, b={2})".format(
            list(self.flow), list(self.over), list(self.under)
        )

    def __eq__(self, other):
        if not isinstance(other, FlowSolution):
            return NotImplemented
        return (self.flow, self.over, self.under) == (
            other.flow,
            other.over,
            other.under,
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.flow, self.over, self.under))

    def to_json(self, graph):
        # type: (RoadGraph) -> Dict[str, Dict[str, int]]
        """
        Sparse JSON form: only nonzero entries
        """
        data = {"f": {}, "a": {}, "b": {}}  # type: Dict[str, Dict[str, int]]
        for key, values in (
            ("f", self.flow),
            ("a", self.over),
            ("b", self.under),
        ):
            for index, value in enumerate(values):
                if value:
                    data[key][graph.arc(index).arc_id] = value
        return data


class ResidualArc(object):  # pylint:disable=R0205
    """
    An arc of the residual graph
    """

    __slots__ = (
        "index",
        "origin",
        "arc",
        "tail",
        "head",
        "weight",
        "capacity",
    )

    def __init__(self, index, origin, arc, tail, head, weight, capacity):
        # type: (int, ResidualOrigin, int, int, int, int, int) -> None
        """
        :param index: Position in the residual graph
        :param origin: Kind of residual arc
        :param arc: Position of the original arc
        :param tail: Start vertex
        :param head: End vertex
        :param weight: Residual weight
        :param capacity: Residual capacity, 0 for uncapped arcs
        """
        self.index = index
        self.origin = origin
        self.arc = arc
        self.tail = tail
        self.head = head
        self.weight = weight
        self.capacity = capacity

    def __repr__(self):
        return "<ResidualArc {0} {1} of {2}: {3}->{4} w={5} c={6}>".format(
            self.index,
            self.origin.name,
            self.arc,
            self.tail,
            self.head,
            self.weight,
            self.capacity if self.capped else "-",
        )

    @property
    def capped(self):
        # type: () -> bool
        """
        Only arcs with a positive capacity constrain augmentations
        """
        return self.capacity > 0


class ResidualGraph(object):  # pylint:disable=R0205
    """
    Residual flow formulation around a flow solution
    """

    def __init__(self, num_vertices, arcs, constant):
        # type: (int, Sequence[ResidualArc], int) -> None
        """
        :param num_vertices: Number of vertices (same as the road graph)
        :param arcs: Residual arcs, with matching indices
        :param constant: Objective value of the solution it was built from
        """
        self.num_vertices = num_vertices
        self.arcs = tuple(arcs)
        self.constant = constant

        out_arcs = [[] for _ in range(num_vertices)]  # type: List[List[int]]
        self.forward = {}  # type: Dict[int, int]
        self.reverse = {}  # type: Dict[int, int]
        for residual in self.arcs:
            out_arcs[residual.tail].append(residual.index)
            if residual.origin == ResidualOrigin.FORWARD:
                self.forward[residual.arc] = residual.index
            else:
                self.reverse[residual.arc] = residual.index

        self.out_arcs = tuple(tuple(a) for a in out_arcs)

    def __repr__(self):
        return "<ResidualGraph {0} arcs, W={1}>".format(
            len(self.arcs), self.constant
        )

    def partition(self, origin):
        # type: (ResidualOrigin) -> List[int]
        """
        Residual arcs of the given origin
        """
        return [r.index for r in self.arcs if r.origin == origin]


class ResidualCycle(object):  # pylint:disable=R0205
    """
    A positive cycle of the residual graph
    """

    def __init__(self, arcs, weight, bottleneck):
        # type: (Sequence[int], int, Optional[int]) -> None
        """
        :param arcs: Residual arc positions, in travel order
        :param weight: Sum of the residual weights
        :param bottleneck: Smallest capacity of the capped arcs, None if the
                           cycle has no capped arc
        """
        self.arcs = tuple(arcs)
        self.weight = weight
        self.bottleneck = bottleneck

    def __repr__(self):
        return "<ResidualCycle {0} weight={1} bottleneck={2}>".format(
            list(self.arcs), self.weight, self.bottleneck
        )

    @property
    def unbounded(self):
        # type: () -> bool
        """
        True if the cycle can carry an unlimited amount of flow
        """
        return self.bottleneck is None


class Certificate(object):  # pylint:disable=R0205
    """
    Cut solution extracted from an optimal flow: weights and potentials
    """

    def __init__(self, weights, potentials, gap):
        # type: (WeightVector, Sequence[int], int) -> None
        self.weights = weights
        self.potentials = tuple(potentials)
        self.gap = gap

    def __repr__(self):
        return "<Certificate gap={0}>".format(self.gap)

    def to_json(self, graph):
        # type: (RoadGraph) -> Dict[str, Any]
        """
        Converts the certificate to a JSON-compatible dictionary
        """
        return {
            "gap": self.gap,
            "potentials": {
                graph.vertex_id(v): d for v, d in enumerate(self.potentials)
            },
        }


# ------------------------------------------------------------------------------


class CheckResult(object):  # pylint:disable=R0205
    """
    Outcome of one named verification check
    """

    def __init__(self, name, offenders=(), detail=None):
        # type: (str, Iterable[str], Optional[str]) -> None
        self.name = name
        self.offenders = list(offenders)  # type: List[str]
        self.detail = detail

    @property
    def passed(self):
        # type: () -> bool
        """
        A check passes when nothing offends it
        """
        return not self.offenders and self.detail is None

    def __repr__(self):
        return "<Check {0}: {1}>".format(
            self.name, "PASS" if self.passed else "FAIL"
        )

    def to_json(self):
        # type: () -> Dict[str, Any]
        """
        JSON form of the check
        """
        data = {
            "name": self.name,
            "passed": self.passed,
            "offenders": self.offenders,
        }  # type: Dict[str, Any]
        if self.detail is not None:
            data["detail"] = self.detail
        return data


class VerificationReport(object):  # pylint:disable=R0205
    """
    Result of an independent verification
    """

    def __init__(self, checks, gap=None, primal=None, dual=None):
        # type: (Sequence[CheckResult], Any, Any, Any) -> None
        self.checks = list(checks)
        self.gap = gap
        self.primal = primal
        self.dual = dual

    @property
    def passed(self):
        # type: () -> bool
        """
        PASS iff every check passed
        """
        return all(check.passed for check in self.checks)

    def failures(self):
        # type: () -> List[CheckResult]
        """
        The failed checks
        """
        return [check for check in self.checks if not check.passed]

    def check(self, name):
        # type: (str) -> CheckResult
        """
        Returns the check with the given name

        :raise KeyError: Unknown check
        """
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __repr__(self):
        return "<VerificationReport {0}>".format(
            "PASS" if self.passed else "FAIL"
        )

    def to_json(self):
        # type: () -> Dict[str, Any]
        """
        JSON form of the report
        """
        return {
            "passed": self.passed,
            "gap": json_weight(self.gap) if self.gap is not None else None,
            "primal_objective": json_weight(self.primal)
            if self.primal is not None
            else None,
            "dual_objective": self.dual,
            "checks": [check.to_json() for check in self.checks],
        }


# ------------------------------------------------------------------------------


class Scenario(object):  # pylint:disable=R0205,R0902
    """
    A generated explanation problem with its provenance
    """

    def __init__(
        self,
        scenario_id,
        kind,
        graph,
        ell,
        upper,
        source,
        target,
        k,
        paths=(),
        closed_sets=(),
        penalized=(),
        reason=None,
        params=None,
        seed=None,
    ):
        # type: (str, ScenarioKind, RoadGraph, WeightVector, Optional[WeightVector], int, int, int, Sequence[Path], Sequence[Sequence[int]], Iterable[int], Optional[InvalidReason], Optional[Dict[str, Any]], Optional[int]) -> None
        self.scenario_id = scenario_id
        self.kind = kind
        self.graph = graph
        self.ell = ell
        self.upper = upper
        self.source = source
        self.target = target
        self.k = k
        self.paths = list(paths)  # type: List[Path]
        self.closed_sets = [list(c) for c in closed_sets]  # type: List[List[int]]
        self.penalized = frozenset(penalized)  # type: FrozenSet[int]
        self.reason = reason
        self.params = dict(params or {})  # type: Dict[str, Any]
        self.seed = seed

    def __repr__(self):
        return "<Scenario {0} {1} k={2} {3}>".format(
            self.scenario_id,
            self.kind.value,
            self.k,
            "valid" if self.valid else self.reason.value,
        )

    @property
    def valid(self):
        # type: () -> bool
        """
        True if no invalidity reason was recorded
        """
        return self.reason is None

    @property
    def path(self):
        # type: () -> Optional[Path]
        """
        The path to explain: the last computed path
        """
        if len(self.paths) == self.k + 1:
            return self.paths[self.k]
        return None

    @property
    def closed(self):
        # type: () -> FrozenSet[int]
        """
        Union of the closed sets applied to the graph (the extra validity
        round excluded)
        """
        result = set()  # type: set
        for closed_set in self.closed_sets[: self.k]:
            result.update(closed_set)
        return frozenset(result)

    @property
    def isolated_closures(self):
        # type: () -> Optional[bool]
        """
        True if no applied closed set meets the final path or a path
        computed before the one it was taken from. Under that condition, the
        penalty loop restricted to closed arcs recomputes a prefix of the
        scenario paths.

        :return: The flag, None for incident or incomplete scenarios
        """
        if self.kind != ScenarioKind.CLOSURE or self.path is None:
            return None

        final = frozenset(self.path.arcs)
        for position, closed_set in enumerate(self.closed_sets[: self.k]):
            closed_set = frozenset(closed_set)
            if closed_set & final:
                return False
            # closed_sets[i] is taken from paths[i]
            for earlier in self.paths[:position]:
                if closed_set.intersection(earlier.arcs):
                    return False
        return True

    @property
    def target_set(self):
        # type: () -> FrozenSet[int]
        """
        Ground truth of the scenario: closed arcs or penalized arcs
        """
        if self.kind == ScenarioKind.CLOSURE:
            return self.closed
        return self.penalized
