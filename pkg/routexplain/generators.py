#!/usr/bin/env python3
"""
Seeded synthetic inputs: grid road networks, random digraphs and random
explanation instances

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

import math
from typing import Iterable, Optional, Tuple  # noqa: F401

import numpy as np

from .beans import ExplanationInstance  # pylint:disable=W0611
from .constants import DEFAULT_C0, DEFAULT_TAU_SCALE, INFINITE, TauOption
from .exceptions import PreconditionError, UnreachableError
from .graph import GraphBuilder, RoadGraph, WeightVector, shortest_path
from .model import make_instance

# ------------------------------------------------------------------------------

__all__ = ("grid_graph", "random_digraph", "random_upper", "random_instance")

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# Meters per degree of latitude
METERS_PER_DEGREE = 111320.0

# Origin of the synthetic coordinates
GRID_ORIGIN = (-122.33, 47.6)

# (road type, lanes, speed in km/h)
ARTERIAL = (1, 3, 60)
RESIDENTIAL = (5, 1, 30)

# ------------------------------------------------------------------------------


def _travel_time_ms(length_m, speed_kmh):
    # type: (int, int) -> int
    """
    Free-flow time of a segment, at least 1 ms
    """
    return max(1, (length_m * 3600) // speed_kmh)


def grid_graph(width, height, spacing_m=100, arterial_rows=(), seed=0):
    # type: (int, int, int, Iterable[int], int) -> RoadGraph
    """
    Builds a grid network with arcs between 4-neighbors in both directions.
    Horizontal arcs of the arterial rows are faster and wider.

    Vertices are named ``v<row>_<column>``, arcs ``a<position>``.

    :param width: Number of columns
    :param height: Number of rows
    :param spacing_m: Distance between neighbors, in meters
    :param arterial_rows: Indices of the arterial rows
    :param seed: Seed of the length jitter
    :return: The grid graph
    """
    if width < 1 or height < 1 or spacing_m < 1:
        raise PreconditionError("Invalid grid dimensions")

    rng = np.random.default_rng(seed)
    arterials = frozenset(arterial_rows)
    lon0, lat0 = GRID_ORIGIN
    lon_step = spacing_m / (METERS_PER_DEGREE * math.cos(math.radians(lat0)))
    lat_step = spacing_m / METERS_PER_DEGREE
    jitter = spacing_m // 10

    builder = GraphBuilder()
    for row in range(height):
        for column in range(width):
            builder.add_vertex(
                "v{0}_{1}".format(row, column),
                lon0 + column * lon_step,
                lat0 + row * lat_step,
            )

    index = 0
    for row in range(height):
        for column in range(width):
            for to_row, to_column in (
                (row, column + 1),
                (row, column - 1),
                (row + 1, column),
                (row - 1, column),
            ):
                if not (0 <= to_row < height and 0 <= to_column < width):
                    continue

                if row == to_row and row in arterials:
                    road_type, lanes, speed = ARTERIAL
                else:
                    road_type, lanes, speed = RESIDENTIAL

                length = spacing_m + int(rng.integers(-jitter, jitter + 1))
                builder.add_arc(
                    "a{0}".format(index),
                    "v{0}_{1}".format(row, column),
                    "v{0}_{1}".format(to_row, to_column),
                    _travel_time_ms(length, speed),
                    road_type,
                    lanes,
                    length,
                )
                index += 1

    return builder.build()


def random_digraph(nb_vertices, nb_arcs, seed, max_weight=100):
    # type: (int, int, int, int) -> RoadGraph
    """
    Builds a random strongly connected multigraph: a random Hamiltonian
    cycle plus random arcs (parallel arcs allowed, no loops)

    :param nb_vertices: Number of vertices (at least 2)
    :param nb_arcs: Total number of arcs (at least nb_vertices)
    :param seed: Seed of the generator
    :param max_weight: Largest free-flow time
    :return: The graph, with random coordinates
    """
    if nb_vertices < 2 or nb_arcs < nb_vertices:
        raise PreconditionError("Not enough vertices or arcs")

    rng = np.random.default_rng(seed)
    lon0, lat0 = GRID_ORIGIN
    builder = GraphBuilder()
    for vertex in range(nb_vertices):
        builder.add_vertex(
            "n{0}".format(vertex),
            lon0 + float(rng.uniform(0.0, 0.05)),
            lat0 + float(rng.uniform(0.0, 0.05)),
        )

    order = rng.permutation(nb_vertices)
    pairs = [
        (int(order[i]), int(order[(i + 1) % nb_vertices]))
        for i in range(nb_vertices)
    ]
    while len(pairs) < nb_arcs:
        src, dst = (int(x) for x in rng.integers(0, nb_vertices, size=2))
        if src != dst:
            pairs.append((src, dst))

    for index, (src, dst) in enumerate(pairs):
        builder.add_arc(
            "a{0}".format(index),
            "n{0}".format(src),
            "n{0}".format(dst),
            int(rng.integers(1, max_weight + 1)),
            int(rng.integers(0, 6)),
            int(rng.integers(1, 4)),
            int(rng.integers(10, 1000)),
        )
    return builder.build()


def random_upper(graph, ell, rng, fixed_ratio=0.2, infinite_ratio=0.05):
    # type: (RoadGraph, WeightVector, np.random.Generator, float, float) -> WeightVector
    """
    Draws upper weights: a share of non-pliable arcs, a share of infinite
    ones, and random finite slack on the others
    """
    values = []
    for index in range(graph.num_arcs):
        lower = ell[index]
        draw = float(rng.random())
        if draw < fixed_ratio:
            values.append(lower)
        elif draw < fixed_ratio + infinite_ratio:
            values.append(INFINITE)
        else:
            values.append(lower + int(rng.integers(1, 2 * lower + 2)))
    return WeightVector(graph, values)


def random_instance(
    graph,
    seed,
    option=TauOption.ONE,
    c0=DEFAULT_C0,
    scale=DEFAULT_TAU_SCALE,
    attempts=100,
):
    # type: (RoadGraph, int, TauOption, int, int, int) -> ExplanationInstance
    """
    Draws an explanation instance: free-flow lower weights, random upper
    weights, random query, and the shortest path under the upper weights

    :raise PreconditionError: No reachable query found
    """
    rng = np.random.default_rng(seed)
    ell = graph.free_flow()
    upper = random_upper(graph, ell, rng)
    for _ in range(attempts):
        source, target = (
            int(x) for x in rng.integers(0, graph.num_vertices, size=2)
        )
        if source == target:
            continue

        try:
            path, _ = shortest_path(graph, upper, source, target)
        except UnreachableError:
            continue
        return make_instance(graph, ell, upper, path, option, c0, scale)

    raise PreconditionError("No reachable query found")
