#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Fixtures shared by the routexplain tests

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

# Standard library
import os
import sys

# Prepare Python path to import routexplain
sys.path.insert(
    0, os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
)

from routexplain.constants import TauOption
from routexplain.graph import (
    GraphBuilder,
    Path,
    load_path,
    load_weights,
    read_graph,
    shortest_path,
)
from routexplain.model import make_instance

# ------------------------------------------------------------------------------

# Documentation strings format
__docformat__ = "restructuredtext en"

# Folder of the fixture files
DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# Run the acceptance-scale suites
FULL_SUITE = bool(os.getenv("ROUTEXPLAIN_FULL_SUITE"))

# ------------------------------------------------------------------------------


def data_path(filename):
    """
    Returns the path to a fixture file
    """
    found_file = os.path.join(DATA_DIR, filename)
    if not os.path.exists(found_file):
        raise IOError("File not found: {0}".format(filename))
    return found_file


def read_file(filename):
    """
    Reads the content of a fixture file in binary mode
    """
    with open(data_path(filename), "rb") as fd:
        return fd.read()


def suite_size(reduced, full):
    """
    Number of cases of a property suite
    """
    return full if FULL_SUITE else reduced


def read_weights(filename, graph, default=None):
    """
    Reads a weight fixture
    """
    with open(data_path(filename), "rb") as fd:
        return load_weights(fd, graph, default)


def example_graph():
    """
    Three vertices s, v, t: a direct arc e (s -> t), three parallel arcs
    e1, e2, e3 (s -> v) and f (v -> t)
    """
    return read_graph(data_path("example_k3.tsv"))


def example_instance(option=TauOption.ONE):
    """
    Explaining the direct arc e of the parallel-arc example: lower weights
    100/49/49, upper weights 100/51/51
    """
    graph = example_graph()
    ell = graph.free_flow()
    upper = read_weights("example_k3_upper.tsv", graph)
    with open(data_path("example_k3_path.tsv"), "rb") as fd:
        path = load_path(fd, graph)
    return make_instance(graph, ell, upper, path, option)


def two_bridges_instance(option=TauOption.ONE):
    """
    Crossing a lake: heavy traffic on the north bridge explains the detour
    over the south bridge
    """
    graph = read_graph(data_path("two_bridges.tsv"))
    ell = graph.free_flow()
    upper = read_weights("two_bridges_upper.tsv", graph, ell)
    path, _ = shortest_path(
        graph, upper, graph.vertex("home"), graph.vertex("work")
    )
    return make_instance(graph, ell, upper, path, option)


def arc_indices(graph, *arc_ids):
    """
    Positions of the given arcs
    """
    return frozenset(graph.arc_by_id(arc_id).index for arc_id in arc_ids)


def path_of(graph, *arc_ids):
    """
    Builds a path from arc identifiers
    """
    return Path.from_arc_ids(graph, arc_ids)


def two_routes(route_a, route_b):
    """
    Two vertex-disjoint routes from s to t, given as lists of arc times.
    Arcs of the first route are named a0, a1, ..., those of the second one
    b0, b1, ...
    """
    builder = GraphBuilder()
    builder.add_vertex("s", 0.0, 0.0)
    builder.add_vertex("t", 0.01, 0.0)
    for prefix, times in (("a", route_a), ("b", route_b)):
        previous = "s"
        for position, time_ms in enumerate(times):
            if position == len(times) - 1:
                current = "t"
            else:
                current = "{0}_{1}".format(prefix, position)
                builder.add_vertex(current, 0.001 * position, 0.001)
            builder.add_arc(
                "{0}{1}".format(prefix, position),
                previous,
                current,
                time_ms,
                5,
                1,
                100,
            )
            previous = current
    return builder.build()


def route_arcs(graph, prefix):
    """
    Positions of the arcs of a route built by two_routes
    """
    return frozenset(
        arc.index for arc in graph.arcs if arc.arc_id.startswith(prefix)
    )


def chain(road_types, lengths=None):
    """
    A single route without coordinates, with the given road types, returned
    with its path
    """
    builder = GraphBuilder()
    builder.add_vertex("n0")
    for position, road_type in enumerate(road_types):
        builder.add_vertex("n{0}".format(position + 1))
        builder.add_arc(
            "c{0}".format(position),
            "n{0}".format(position),
            "n{0}".format(position + 1),
            10,
            road_type,
            1,
            lengths[position] if lengths else 100,
        )
    graph = builder.build()
    return graph, Path(graph, range(graph.num_arcs), 0)
