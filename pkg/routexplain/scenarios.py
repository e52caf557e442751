#!/usr/bin/env python3
"""
Generation of closure and incident scenarios, query pair sampling and the
scenario JSON format

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

import glob
import hashlib
import io
import json
import logging
import os
from typing import (  # pylint:disable=W0611
    IO,
    Any,
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np

from .beans import ExplanationInstance, Scenario
from .constants import (
    DEFAULT_C0,
    DEFAULT_GAMMA,
    DEFAULT_HOP_RADIUS,
    DEFAULT_MIN_HOPS,
    DEFAULT_MULTIPLIER,
    DEFAULT_OFF_FACTOR,
    DEFAULT_REJECTION_BUDGET,
    DEFAULT_TAU_SCALE,
    INFINITE,
    InvalidReason,
    Pliability,
    ScenarioKind,
    TauOption,
)
from .exceptions import (
    EmptyWindowError,
    GraphFormatError,
    PreconditionError,
    SamplingExhaustedError,
    UnreachableError,
)
from .graph import (
    Path,
    RoadGraph,
    WeightVector,
    dump_graph,
    hop_window,
    path_weight,
    shortest_path,
)
from .model import make_instance
from .utils import from_json_weight, json_weight

# ------------------------------------------------------------------------------

__all__ = (
    "default_hop_filter",
    "select_closure_arc",
    "gen_closure_scenario",
    "gen_incident_scenario",
    "sample_query_pairs",
    "scenario_instance",
    "graph_digest",
    "scenario_to_json",
    "scenario_from_json",
    "dump_scenario",
    "load_scenario",
    "write_scenarios",
    "read_scenarios",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.scenarios")

# Mean Earth radius, in meters
EARTH_RADIUS_M = 6371008.8

# Version of the scenario JSON format
SCENARIO_FORMAT = 1

# ------------------------------------------------------------------------------


def default_hop_filter(length):
    # type: (int) -> int
    """
    Minimum number of hops between a closure and the path ends
    """
    return max(DEFAULT_MIN_HOPS, length // 10)


def select_closure_arc(path, graph, hop_filter=default_hop_filter):
    # type: (Path, RoadGraph, Callable[[int], int]) -> int
    """
    Picks the most important arc of a path, far enough from its ends:
    lowest road type, then longest, then most lanes, then first in the graph

    :param path: A nonempty path
    :param graph: The road graph
    :param hop_filter: Minimum number of hops to both ends, given the number
                       of arcs of the path
    :return: The position of the arc in the path
    :raise EmptyWindowError: No arc is far enough from the ends
    """
    length = len(path)
    margin = hop_filter(length)
    candidates = [
        position
        for position in range(length)
        if position >= margin and length - 1 - position >= margin
    ]
    if not candidates:
        raise EmptyWindowError(
            "No arc at {0} hops from the ends of a {1}-arc path".format(
                margin, length
            )
        )

    def importance(position):
        arc = graph.arc(path.arcs[position])
        return (arc.road_type, -arc.length_m, -arc.lanes, arc.index)

    return min(candidates, key=importance)


def _upper_weights(graph, ell, raised, keep, off_factor):
    # type: (RoadGraph, WeightVector, Sequence[Any], Any, int) -> WeightVector
    """
    Upper weights: raised weights on kept arcs, off_factor * ell elsewhere
    """
    return WeightVector(
        graph,
        [
            raised[index] if keep(index) else off_factor * ell[index]
            for index in range(graph.num_arcs)
        ],
    )


def gen_closure_scenario(
    graph,
    ell,
    source,
    target,
    k,
    hop_radius=DEFAULT_HOP_RADIUS,
    multiplier=DEFAULT_MULTIPLIER,
    off_factor=DEFAULT_OFF_FACTOR,
    pliability=Pliability.FEW,
    hop_filter=default_hop_filter,
    scenario_id="closure",
    seed=None,
):
    # type: (RoadGraph, WeightVector, int, int, int, int, Optional[int], int, Pliability, Callable[[int], int], str, Optional[int]) -> Scenario
    """
    Builds a closure scenario: k times, the window around the most important
    arc of the current shortest path is closed and the route recomputed.
    One extra window is computed on the last path for the disjointness
    check.

    :param graph: The road graph
    :param ell: Free-flow weights
    :param source: Origin vertex
    :param target: Destination vertex
    :param k: Number of closures
    :param hop_radius: Radius of the closed windows, in hops
    :param multiplier: Factor applied to closed arcs, None to delete them
    :param off_factor: Upper weight factor of the untouched arcs
    :param pliability: FEW: only closures and arcs off the computed paths
                       are pliable; ALL: every untouched arc is pliable
    :param hop_filter: Minimum distance of the closures to the path ends
    :param scenario_id: Identifier of the scenario
    :param seed: Seed of the query sampling, kept as provenance
    :return: The scenario, flagged invalid if needed
    :raise PreconditionError: Invalid parameters
    """
    if source == target:
        raise PreconditionError("Origin and destination must differ")
    if k < 0:
        raise PreconditionError("Negative number of closures")
    pliability = Pliability(pliability)

    params = {
        "k": k,
        "hop_radius": hop_radius,
        "multiplier": json_weight(
            INFINITE if multiplier is None else multiplier
        ),
        "off_factor": off_factor,
        "pliability": pliability.value,
    }

    raised = list(ell)
    paths = []  # type: List[Path]
    closed_sets = []  # type: List[List[int]]

    def make(reason, upper=None):
        if reason is not None:
            _log.warning(
                "Scenario %s is invalid: %s", scenario_id, reason.value
            )
        return Scenario(
            scenario_id,
            ScenarioKind.CLOSURE,
            graph,
            ell,
            upper,
            source,
            target,
            k,
            paths,
            closed_sets,
            reason=reason,
            params=params,
            seed=seed,
        )

    try:
        current, _ = shortest_path(graph, ell, source, target)
    except UnreachableError:
        return make(InvalidReason.UNREACHABLE)
    paths.append(current)

    for round_index in range(k + 1):
        try:
            center = select_closure_arc(current, graph, hop_filter)
        except EmptyWindowError:
            return make(InvalidReason.EMPTY_WINDOW)

        window = hop_window(current, center, hop_radius)
        closed_sets.append(window)
        if round_index == k:
            break

        for index in window:
            if multiplier is None:
                raised[index] = INFINITE
            else:
                raised[index] = raised[index] * multiplier

        try:
            current, _ = shortest_path(
                graph, WeightVector(graph, raised), source, target
            )
        except UnreachableError:
            return make(InvalidReason.UNREACHABLE)
        paths.append(current)

    if pliability == Pliability.FEW:
        on_paths = set()
        for path in paths:
            on_paths.update(path.arcs)
        upper = _upper_weights(
            graph, ell, raised, on_paths.__contains__, off_factor
        )
    else:
        upper = _upper_weights(
            graph,
            ell,
            raised,
            lambda index: raised[index] != ell[index],
            off_factor,
        )

    seen = set()  # type: set
    for closed_set in closed_sets:
        if seen.intersection(closed_set):
            return make(InvalidReason.DISJOINTNESS, upper)
        seen.update(closed_set)

    final = paths[-1]
    try:
        _, best = shortest_path(graph, upper, source, target)
        if path_weight(final, upper) != best:
            return make(InvalidReason.NOT_U_SHORTEST, upper)
    except UnreachableError:
        return make(InvalidReason.NOT_U_SHORTEST, upper)

    return make(None, upper)


def _scale_up(value, numerator, denominator):
    # type: (int, int, int) -> int
    """
    ceil(value * numerator / denominator), in integers
    """
    return (value * numerator + denominator - 1) // denominator


def gen_incident_scenario(
    graph,
    ell,
    source,
    target,
    k,
    gamma=DEFAULT_GAMMA,
    off_factor=DEFAULT_OFF_FACTOR,
    scenario_id="incident",
    seed=None,
):
    # type: (RoadGraph, WeightVector, int, int, int, Tuple[int, int], int, str, Optional[int]) -> Scenario
    """
    Builds an incident scenario: k times, the weights along the current
    shortest path are multiplied by gamma (rounded up) and the route is
    recomputed

    :param graph: The road graph
    :param ell: Free-flow weights
    :param source: Origin vertex
    :param target: Destination vertex
    :param k: Number of incidents
    :param gamma: Penalty factor, as (numerator, denominator)
    :param off_factor: Upper weight factor of the arcs off the paths
    :param scenario_id: Identifier of the scenario
    :param seed: Seed of the query sampling, kept as provenance
    :return: The scenario, flagged invalid if unreachable
    :raise PreconditionError: Invalid parameters
    """
    numerator, denominator = gamma
    if source == target:
        raise PreconditionError("Origin and destination must differ")
    if not numerator > denominator >= 1:
        raise PreconditionError(
            "Invalid penalty factor {0}/{1}".format(numerator, denominator)
        )
    if k < 0:
        raise PreconditionError("Negative number of incidents")

    params = {
        "k": k,
        "gamma": [numerator, denominator],
        "off_factor": off_factor,
    }

    penalized = list(ell)
    paths = []  # type: List[Path]
    try:
        current, _ = shortest_path(graph, ell, source, target)
        paths.append(current)
        for _ in range(k):
            for index in current.arcs:
                penalized[index] = _scale_up(
                    penalized[index], numerator, denominator
                )
            current, _ = shortest_path(
                graph, WeightVector(graph, penalized), source, target
            )
            paths.append(current)
    except UnreachableError:
        _log.warning("Scenario %s is invalid: unreachable", scenario_id)
        return Scenario(
            scenario_id,
            ScenarioKind.INCIDENT,
            graph,
            ell,
            None,
            source,
            target,
            k,
            reason=InvalidReason.UNREACHABLE,
            params=params,
            seed=seed,
        )

    on_paths = set()  # type: set
    for path in paths:
        on_paths.update(path.arcs)
    upper = _upper_weights(
        graph, ell, penalized, on_paths.__contains__, off_factor
    )

    penalized_set = set()  # type: set
    for path in paths[:k]:
        penalized_set.update(path.arcs)

    return Scenario(
        scenario_id,
        ScenarioKind.INCIDENT,
        graph,
        ell,
        upper,
        source,
        target,
        k,
        paths,
        penalized=penalized_set,
        params=params,
        seed=seed,
    )


# ------------------------------------------------------------------------------


def _haversine(lon1, lat1, lon2, lat2):
    """
    Great-circle distances in meters, between arrays of degrees
    """
    lon1, lat1, lon2, lat2 = (np.radians(x) for x in (lon1, lat1, lon2, lat2))
    half = (
        np.sin((lat2 - lat1) / 2.0) ** 2
        + np.cos(lat1) * np.cos(lat2) * np.sin((lon2 - lon1) / 2.0) ** 2
    )
    return 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(half))


def sample_query_pairs(
    graph,
    min_dist_m,
    max_dist_m,
    n,
    seed,
    rejection_budget=DEFAULT_REJECTION_BUDGET,
):
    # type: (RoadGraph, float, float, int, int, int) -> List[Tuple[int, int]]
    """
    Draws query pairs uniformly, keeping those whose crow-flight distance
    lies in the given band

    :param graph: A graph with vertex coordinates
    :param min_dist_m: Minimum distance, in meters
    :param max_dist_m: Maximum distance, in meters
    :param n: Number of pairs
    :param seed: Seed of the random generator
    :param rejection_budget: Number of draws allowed per requested pair
    :return: The (origin, destination) pairs
    :raise PreconditionError: Missing coordinates
    :raise SamplingExhaustedError: Too many rejected draws
    """
    if not graph.has_coordinates or graph.num_vertices < 2:
        raise PreconditionError("Sampling requires vertex coordinates")

    coordinates = np.array(
        [graph.coordinates(v) for v in range(graph.num_vertices)],
        dtype=float,
    )
    rng = np.random.default_rng(seed)
    budget = rejection_budget * max(n, 1)
    batch_size = max(64, 4 * n)

    pairs = []  # type: List[Tuple[int, int]]
    draws = 0
    while len(pairs) < n:
        if draws >= budget:
            raise SamplingExhaustedError(
                "Only {0}/{1} pairs found in {2} draws".format(
                    len(pairs), n, draws
                )
            )

        size = min(batch_size, budget - draws)
        sources = rng.integers(0, graph.num_vertices, size=size)
        targets = rng.integers(0, graph.num_vertices, size=size)
        draws += size

        dist = _haversine(
            coordinates[sources, 0],
            coordinates[sources, 1],
            coordinates[targets, 0],
            coordinates[targets, 1],
        )
        accepted = (
            (sources != targets) & (dist >= min_dist_m) & (dist <= max_dist_m)
        )
        for source, target in zip(sources[accepted], targets[accepted]):
            pairs.append((int(source), int(target)))
            if len(pairs) == n:
                break

    return pairs


def scenario_instance(
    scenario, option=TauOption.ONE, c0=DEFAULT_C0, scale=DEFAULT_TAU_SCALE
):
    # type: (Scenario, TauOption, int, int) -> ExplanationInstance
    """
    Builds the explanation instance of a valid scenario

    :raise PreconditionError: Invalid scenario
    """
    if not scenario.valid:
        raise PreconditionError(
            "Scenario {0} is invalid: {1}".format(
                scenario.scenario_id, scenario.reason.value
            )
        )
    return make_instance(
        scenario.graph,
        scenario.ell,
        scenario.upper,
        scenario.path,
        option,
        c0,
        scale,
    )


# ------------------------------------------------------------------------------


def graph_digest(graph):
    # type: (RoadGraph) -> str
    """
    SHA-256 of the TSV form of the graph
    """
    buffer = io.StringIO()
    dump_graph(graph, buffer)
    return hashlib.sha256(buffer.getvalue().encode("utf-8")).hexdigest()


def _sparse(graph, values, reference):
    """
    Entries that differ from the reference, by arc identifier
    """
    return {
        graph.arc(i).arc_id: json_weight(value)
        for i, (value, ref) in enumerate(zip(values, reference))
        if value != ref
    }


def scenario_to_json(scenario, digest=None):
    # type: (Scenario, Optional[str]) -> Dict[str, Any]
    """
    Converts a scenario to a JSON-compatible dictionary. Weights are stored
    as differences: lower weights against the free-flow times of the graph,
    upper weights against off_factor times the lower weights.
    """
    graph = scenario.graph
    off_factor = scenario.params.get("off_factor", DEFAULT_OFF_FACTOR)
    data = {
        "format": SCENARIO_FORMAT,
        "scenario_id": scenario.scenario_id,
        "kind": scenario.kind.value,
        "k": scenario.k,
        "source": graph.vertex_id(scenario.source),
        "target": graph.vertex_id(scenario.target),
        "graph_digest": digest or graph_digest(graph),
        "params": scenario.params,
        "seed": scenario.seed,
        "valid": scenario.valid,
        "reason": None if scenario.valid else scenario.reason.value,
        "ell": _sparse(graph, scenario.ell, graph.free_flow()),
        "upper": None,
        "paths": [path.arc_ids(graph) for path in scenario.paths],
        "closed_sets": [
            [graph.arc(i).arc_id for i in closed]
            for closed in scenario.closed_sets
        ],
        "penalized": [graph.arc(i).arc_id for i in sorted(scenario.penalized)],
    }  # type: Dict[str, Any]

    if scenario.upper is not None:
        data["upper"] = _sparse(
            graph, scenario.upper, [off_factor * v for v in scenario.ell]
        )
    return data


def scenario_from_json(data, graph, digest=None):
    # type: (Dict[str, Any], RoadGraph, Optional[str]) -> Scenario
    """
    Rebuilds a scenario from its JSON form

    :param data: The JSON form
    :param graph: The graph the scenario was built on
    :param digest: Digest of the graph, if already computed
    :raise GraphFormatError: Invalid content or another graph
    """
    try:
        if data["format"] != SCENARIO_FORMAT:
            raise GraphFormatError(
                "Unsupported scenario format {0}".format(data["format"])
            )
        if data["graph_digest"] != (digest or graph_digest(graph)):
            raise GraphFormatError(
                "Scenario {0} was built on another graph".format(
                    data["scenario_id"]
                )
            )

        ell = WeightVector.from_mapping(
            graph,
            {key: from_json_weight(v) for key, v in data["ell"].items()},
            graph.free_flow(),
        )

        upper = None
        off_factor = data["params"].get("off_factor", DEFAULT_OFF_FACTOR)
        if data["upper"] is not None:
            upper = WeightVector.from_mapping(
                graph,
                {key: from_json_weight(v) for key, v in data["upper"].items()},
                WeightVector(graph, [off_factor * v for v in ell]),
            )

        source = graph.vertex(data["source"])
        paths = [
            Path.from_arc_ids(graph, arc_ids, source)
            for arc_ids in data["paths"]
        ]
        closed_sets = [
            [graph.arc_by_id(a).index for a in closed]
            for closed in data["closed_sets"]
        ]
        penalized = [graph.arc_by_id(a).index for a in data["penalized"]]
        reason = data["reason"]

        return Scenario(
            data["scenario_id"],
            ScenarioKind(data["kind"]),
            graph,
            ell,
            upper,
            source,
            graph.vertex(data["target"]),
            data["k"],
            paths,
            closed_sets,
            penalized,
            None if reason is None else InvalidReason(reason),
            data["params"],
            data["seed"],
        )
    except (KeyError, TypeError, ValueError) as ex:
        if isinstance(ex, GraphFormatError):
            raise
        raise GraphFormatError("Invalid scenario: {0!r}".format(ex))


def dump_scenario(scenario, fd, digest=None):
    # type: (Scenario, IO[str], Optional[str]) -> None
    """
    Writes a scenario as JSON (sorted keys, stable output)
    """
    json.dump(scenario_to_json(scenario, digest), fd, indent=2, sort_keys=True)
    fd.write("\n")


def load_scenario(fd, graph, digest=None):
    # type: (IO[str], RoadGraph, Optional[str]) -> Scenario
    """
    Reads a scenario written by dump_scenario

    :raise GraphFormatError: Invalid content
    """
    try:
        data = json.load(fd)
    except ValueError as ex:
        raise GraphFormatError("Invalid scenario JSON: {0}".format(ex))
    return scenario_from_json(data, graph, digest)


def write_scenarios(scenarios, folder):
    # type: (Sequence[Scenario], str) -> List[str]
    """
    Writes each scenario to ``<folder>/<scenario_id>.json``

    :return: The written files
    """
    os.makedirs(folder, exist_ok=True)
    written = []
    digests = {}  # type: Dict[int, str]
    for scenario in scenarios:
        key = id(scenario.graph)
        if key not in digests:
            digests[key] = graph_digest(scenario.graph)

        filename = os.path.join(folder, scenario.scenario_id + ".json")
        with open(filename, "w", encoding="utf-8", newline="\n") as fd:
            dump_scenario(scenario, fd, digests[key])
        written.append(filename)
    return written


def read_scenarios(folder, graph):
    # type: (str, RoadGraph) -> List[Scenario]
    """
    Reads all the scenario files of a folder, sorted by file name
    """
    scenarios = []
    digest = graph_digest(graph)
    for filename in sorted(glob.glob(os.path.join(folder, "*.json"))):
        with open(filename, "r", encoding="utf-8") as fd:
            scenarios.append(load_scenario(fd, graph, digest))
    return scenarios
