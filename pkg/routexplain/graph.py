#!/usr/bin/env python3
"""
Road network representation: directed multigraph, weight vectors, paths and
the label-setting shortest path search used by every other module.

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

import gzip
import heapq
import io
import logging
from typing import (  # pylint:disable=W0611
    IO,
    Any,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import networkx as nx

from .constants import INFINITE, GraphSection
from .exceptions import GraphFormatError, PreconditionError, UnreachableError
from .stream import TsvSectionReader
from .utils import format_weight, text_data_fd

# ------------------------------------------------------------------------------

__all__ = (
    "Arc",
    "RoadGraph",
    "GraphBuilder",
    "WeightVector",
    "Path",
    "load_graph",
    "loads_graph",
    "read_graph",
    "dump_graph",
    "load_weights",
    "dump_weights",
    "load_path",
    "shortest_path",
    "distances",
    "path_weight",
    "hop_window",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.graph")

# ------------------------------------------------------------------------------


class Arc(object):  # pylint:disable=R0205
    """
    A road segment transition
    """

    __slots__ = (
        "index",
        "arc_id",
        "src",
        "dst",
        "free_flow_ms",
        "road_type",
        "lanes",
        "length_m",
        "geometry",
    )

    def __init__(
        self,
        index,
        arc_id,
        src,
        dst,
        free_flow_ms,
        road_type=0,
        lanes=1,
        length_m=0,
        geometry=None,
    ):
        # type: (int, str, int, int, int, int, int, int, Optional[Tuple[Tuple[float, float], ...]]) -> None
        self.index = index
        self.arc_id = arc_id
        self.src = src
        self.dst = dst
        self.free_flow_ms = free_flow_ms
        self.road_type = road_type
        self.lanes = lanes
        self.length_m = length_m
        self.geometry = geometry

    def __repr__(self):
        return "<Arc {0} #{1}: {2}->{3} ({4} ms)>".format(
            self.arc_id, self.index, self.src, self.dst, self.free_flow_ms
        )


class RoadGraph(object):  # pylint:disable=R0205
    """
    Immutable directed multigraph. Vertices and arcs are addressed by their
    position; their textual identifiers are kept for input/output.
    """

    def __init__(self, vertex_ids, coordinates, arcs):
        # type: (Sequence[str], Sequence[Optional[Tuple[float, float]]], Sequence[Arc]) -> None
        """
        :param vertex_ids: Vertex identifiers, in order
        :param coordinates: (lon, lat) of each vertex, or None
        :param arcs: Arcs, with ``index`` matching their position
        """
        self.__vertex_ids = tuple(vertex_ids)
        self.__coordinates = tuple(coordinates)
        self.__arcs = tuple(arcs)

        self.__vertex_index = {
            vid: idx for idx, vid in enumerate(self.__vertex_ids)
        }
        self.__arc_index = {arc.arc_id: arc.index for arc in self.__arcs}

        out_arcs = [[] for _ in self.__vertex_ids]  # type: List[List[int]]
        in_arcs = [[] for _ in self.__vertex_ids]  # type: List[List[int]]
        for arc in self.__arcs:
            out_arcs[arc.src].append(arc.index)
            in_arcs[arc.dst].append(arc.index)

        self.__out = tuple(tuple(a) for a in out_arcs)
        self.__in = tuple(tuple(a) for a in in_arcs)
        self.check()

    def __repr__(self):
        return "<RoadGraph |V|={0} |E|={1}>".format(
            self.num_vertices, self.num_arcs
        )

    def check(self):
        """
        Checks the consistency of the arc list and the adjacency indices

        :raise ValueError: Inconsistent graph
        """
        if len(self.__vertex_index) != len(self.__vertex_ids):
            raise ValueError("Duplicate vertex identifier")
        if len(self.__arc_index) != len(self.__arcs):
            raise ValueError("Duplicate arc identifier")
        if len(self.__coordinates) != len(self.__vertex_ids):
            raise ValueError("Coordinates don't match the vertices")

        nb_vertices = len(self.__vertex_ids)
        for position, arc in enumerate(self.__arcs):
            if arc.index != position:
                raise ValueError("Arc {0} out of place".format(arc.arc_id))
            if not (0 <= arc.src < nb_vertices and 0 <= arc.dst < nb_vertices):
                raise ValueError("Dangling arc {0}".format(arc.arc_id))
            if arc.free_flow_ms < 0:
                raise ValueError("Negative time on arc {0}".format(arc.arc_id))

        # Round trip: each arc appears once in each index, at its endpoints
        seen_out = sorted(a for arcs in self.__out for a in arcs)
        seen_in = sorted(a for arcs in self.__in for a in arcs)
        expected = list(range(len(self.__arcs)))
        if seen_out != expected or seen_in != expected:
            raise ValueError("Adjacency indices don't match the arc list")

        for vertex, arcs in enumerate(self.__out):
            if any(self.__arcs[a].src != vertex for a in arcs):
                raise ValueError("Out-arc index broken at {0}".format(vertex))
        for vertex, arcs in enumerate(self.__in):
            if any(self.__arcs[a].dst != vertex for a in arcs):
                raise ValueError("In-arc index broken at {0}".format(vertex))

    @property
    def num_vertices(self):
        # type: () -> int
        """
        Number of vertices
        """
        return len(self.__vertex_ids)

    @property
    def num_arcs(self):
        # type: () -> int
        """
        Number of arcs
        """
        return len(self.__arcs)

    @property
    def arcs(self):
        # type: () -> Tuple[Arc, ...]
        """
        All arcs, in input order
        """
        return self.__arcs

    @property
    def vertex_ids(self):
        # type: () -> Tuple[str, ...]
        """
        All vertex identifiers, in input order
        """
        return self.__vertex_ids

    def arc(self, index):
        # type: (int) -> Arc
        """
        Returns the arc at the given position
        """
        return self.__arcs[index]

    def arc_by_id(self, arc_id):
        # type: (str) -> Arc
        """
        Returns the arc with the given identifier

        :raise KeyError: Unknown arc
        """
        return self.__arcs[self.__arc_index[arc_id]]

    def has_arc_id(self, arc_id):
        # type: (str) -> bool
        """
        Checks if the given arc identifier exists
        """
        return arc_id in self.__arc_index

    def vertex(self, vertex_id):
        # type: (str) -> int
        """
        Returns the position of a vertex from its identifier

        :raise KeyError: Unknown vertex
        """
        return self.__vertex_index[vertex_id]

    def has_vertex(self, vertex_id):
        # type: (str) -> bool
        """
        Checks if the given vertex identifier exists
        """
        return vertex_id in self.__vertex_index

    def vertex_id(self, vertex):
        # type: (int) -> str
        """
        Returns the identifier of the vertex at the given position
        """
        return self.__vertex_ids[vertex]

    def coordinates(self, vertex):
        # type: (int) -> Optional[Tuple[float, float]]
        """
        Returns the (lon, lat) of a vertex, if known
        """
        return self.__coordinates[vertex]

    @property
    def has_coordinates(self):
        # type: () -> bool
        """
        True if every vertex has coordinates
        """
        return all(c is not None for c in self.__coordinates)

    def out_arcs(self, vertex):
        # type: (int) -> Tuple[int, ...]
        """
        Arcs leaving the given vertex, in input order
        """
        return self.__out[vertex]

    def in_arcs(self, vertex):
        # type: (int) -> Tuple[int, ...]
        """
        Arcs entering the given vertex, in input order
        """
        return self.__in[vertex]

    def free_flow(self):
        # type: () -> WeightVector
        """
        Free-flow times of all arcs as a weight vector
        """
        return WeightVector(self, [arc.free_flow_ms for arc in self.__arcs])

    def subgraph(self, vertices):
        # type: (Iterable[int]) -> Tuple[RoadGraph, List[int]]
        """
        Builds the subgraph induced by the given vertices

        :param vertices: Positions of the kept vertices
        :return: The subgraph and, for each of its arcs, the position of the
                 matching arc in this graph
        """
        kept = sorted(set(vertices))
        renumber = {old: new for new, old in enumerate(kept)}

        arcs = []  # type: List[Arc]
        arc_map = []  # type: List[int]
        for arc in self.__arcs:
            if arc.src in renumber and arc.dst in renumber:
                arcs.append(
                    Arc(
                        len(arcs),
                        arc.arc_id,
                        renumber[arc.src],
                        renumber[arc.dst],
                        arc.free_flow_ms,
                        arc.road_type,
                        arc.lanes,
                        arc.length_m,
                        arc.geometry,
                    )
                )
                arc_map.append(arc.index)

        graph = RoadGraph(
            [self.__vertex_ids[v] for v in kept],
            [self.__coordinates[v] for v in kept],
            arcs,
        )
        return graph, arc_map

    def to_networkx(self):
        # type: () -> nx.MultiDiGraph
        """
        Converts the graph to a networkx multigraph. Arc positions are used
        as edge keys.
        """
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        for arc in self.__arcs:
            graph.add_edge(arc.src, arc.dst, key=arc.index)
        return graph


class GraphBuilder(object):  # pylint:disable=R0205
    """
    Incremental construction of a RoadGraph
    """

    def __init__(self):
        self.__vertex_ids = []  # type: List[str]
        self.__coordinates = []  # type: List[Optional[Tuple[float, float]]]
        self.__vertex_index = {}  # type: Dict[str, int]
        self.__arcs = []  # type: List[Arc]
        self.__arc_ids = set()  # type: set

    def add_vertex(self, vertex_id, lon=None, lat=None):
        # type: (str, Optional[float], Optional[float]) -> int
        """
        Adds a vertex

        :raise ValueError: Duplicate identifier
        """
        if vertex_id in self.__vertex_index:
            raise ValueError("Duplicate vertex {0!r}".format(vertex_id))

        index = len(self.__vertex_ids)
        self.__vertex_ids.append(vertex_id)
        self.__coordinates.append(
            None if lon is None or lat is None else (lon, lat)
        )
        self.__vertex_index[vertex_id] = index
        return index

    def has_vertex(self, vertex_id):
        # type: (str) -> bool
        """
        Checks if a vertex was already added
        """
        return vertex_id in self.__vertex_index

    def add_arc(
        self,
        arc_id,
        src,
        dst,
        free_flow_ms,
        road_type=0,
        lanes=1,
        length_m=0,
        geometry=None,
    ):
        # type: (str, str, str, int, int, int, int, Optional[Sequence[Tuple[float, float]]]) -> int
        """
        Adds an arc between two known vertices

        :raise KeyError: Unknown vertex
        :raise ValueError: Duplicate arc identifier or negative time
        """
        if arc_id in self.__arc_ids:
            raise ValueError("Duplicate arc {0!r}".format(arc_id))
        if free_flow_ms < 0:
            raise ValueError("Negative free-flow time on {0!r}".format(arc_id))

        for vertex_id in (src, dst):
            if vertex_id not in self.__vertex_index:
                raise KeyError("Unknown vertex {0!r}".format(vertex_id))

        index = len(self.__arcs)
        self.__arcs.append(
            Arc(
                index,
                arc_id,
                self.__vertex_index[src],
                self.__vertex_index[dst],
                free_flow_ms,
                road_type,
                lanes,
                length_m,
                None if geometry is None else tuple(geometry),
            )
        )
        self.__arc_ids.add(arc_id)
        return index

    def set_geometry(self, arc_id, geometry):
        # type: (str, Sequence[Tuple[float, float]]) -> None
        """
        Sets the polyline of an existing arc

        :raise KeyError: Unknown arc
        """
        for arc in self.__arcs:
            if arc.arc_id == arc_id:
                arc.geometry = tuple(geometry)
                return
        raise KeyError("Unknown arc {0!r}".format(arc_id))

    def build(self):
        # type: () -> RoadGraph
        """
        Returns the immutable graph
        """
        return RoadGraph(self.__vertex_ids, self.__coordinates, self.__arcs)


# ------------------------------------------------------------------------------


class WeightVector(object):  # pylint:disable=R0205
    """
    Immutable per-arc weights: nonnegative integers or INFINITE
    """

    __slots__ = ("__values",)

    def __init__(self, graph, values):
        # type: (Union[RoadGraph, int], Iterable[Any]) -> None
        """
        :param graph: The graph (or its number of arcs)
        :param values: One value per arc
        :raise ValueError: Invalid value or size
        """
        self.__values = tuple(values)
        size = graph if isinstance(graph, int) else graph.num_arcs
        if len(self.__values) != size:
            raise ValueError(
                "Expected {0} weights, got {1}".format(
                    size, len(self.__values)
                )
            )

        for value in self.__values:
            if value is INFINITE:
                continue
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(
                    "Weights must be integers: {0!r}".format(value)
                )
            if value < 0:
                raise ValueError(
                    "Weights must be nonnegative: {0}".format(value)
                )

    @classmethod
    def from_mapping(cls, graph, mapping, default):
        # type: (RoadGraph, Mapping[str, Any], WeightVector) -> WeightVector
        """
        Builds a vector from arc identifiers, completed by a default vector

        :raise KeyError: Unknown arc identifier
        """
        values = list(default)
        for arc_id, value in mapping.items():
            values[graph.arc_by_id(arc_id).index] = value
        return cls(graph, values)

    def __len__(self):
        return len(self.__values)

    def __getitem__(self, index):
        return self.__values[index]

    def __iter__(self):
        return iter(self.__values)

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.__values == other.__values

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.__values)

    def __repr__(self):
        return "WeightVector({0})".format(list(self.__values))

    def replace(self, updates):
        # type: (Mapping[int, Any]) -> WeightVector
        """
        Returns a copy with some entries changed

        :param updates: Arc position -> new value
        """
        values = list(self.__values)
        for index, value in updates.items():
            values[index] = value
        return WeightVector(len(values), values)

    def is_finite(self, index):
        # type: (int) -> bool
        """
        True if the weight of the given arc isn't INFINITE
        """
        return self.__values[index] is not INFINITE


class Path(object):  # pylint:disable=R0205
    """
    A simple directed path, as a list of arc positions
    """

    __slots__ = ("__arcs", "__source", "__target", "__vertices")

    def __init__(self, graph, arcs, source=None, target=None):
        # type: (RoadGraph, Iterable[int], Optional[int], Optional[int]) -> None
        """
        :param graph: The graph the arcs belong to
        :param arcs: Arc positions, in travel order
        :param source: Origin vertex (required for empty paths)
        :param target: Destination vertex (deduced if omitted)
        :raise PreconditionError: Invalid path
        """
        self.__arcs = tuple(arcs)
        if not self.__arcs:
            if source is None:
                raise PreconditionError("An empty path needs an origin")
            if target is not None and target != source:
                raise PreconditionError("An empty path must end at its origin")
            self.__source = source
            self.__target = source
            self.__vertices = (source,)
            return

        first = graph.arc(self.__arcs[0])
        last = graph.arc(self.__arcs[-1])
        if source is not None and source != first.src:
            raise PreconditionError("Path doesn't start at its origin")
        if target is not None and target != last.dst:
            raise PreconditionError("Path doesn't end at its destination")

        vertices = [first.src]
        for previous, current in zip(self.__arcs, self.__arcs[1:]):
            if graph.arc(previous).dst != graph.arc(current).src:
                raise PreconditionError(
                    "Arcs {0} and {1} are not incident".format(
                        graph.arc(previous).arc_id, graph.arc(current).arc_id
                    )
                )
        vertices.extend(graph.arc(a).dst for a in self.__arcs)
        if len(set(vertices)) != len(vertices):
            raise PreconditionError("Path is not simple")

        self.__source = first.src
        self.__target = last.dst
        self.__vertices = tuple(vertices)

    @classmethod
    def from_arc_ids(cls, graph, arc_ids, source=None):
        # type: (RoadGraph, Iterable[str], Optional[int]) -> Path
        """
        Builds a path from arc identifiers

        :raise KeyError: Unknown arc
        """
        return cls(graph, [graph.arc_by_id(a).index for a in arc_ids], source)

    @property
    def arcs(self):
        # type: () -> Tuple[int, ...]
        """
        Arc positions, in travel order
        """
        return self.__arcs

    @property
    def source(self):
        # type: () -> int
        """
        Origin vertex
        """
        return self.__source

    @property
    def target(self):
        # type: () -> int
        """
        Destination vertex
        """
        return self.__target

    @property
    def vertices(self):
        # type: () -> Tuple[int, ...]
        """
        Visited vertices, origin and destination included
        """
        return self.__vertices

    def __len__(self):
        return len(self.__arcs)

    def __iter__(self):
        return iter(self.__arcs)

    def __contains__(self, arc):
        return arc in self.__arcs

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return (self.__arcs, self.__source) == (other.__arcs, other.__source)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.__arcs, self.__source))

    def __repr__(self):
        return "Path({0}, {1}->{2})".format(
            list(self.__arcs), self.__source, self.__target
        )

    def arc_ids(self, graph):
        # type: (RoadGraph) -> List[str]
        """
        Identifiers of the arcs of the path
        """
        return [graph.arc(a).arc_id for a in self.__arcs]


# ------------------------------------------------------------------------------


def _text_stream(fd):
    # type: (IO[Any]) -> Tuple[IO[str], bool]
    """
    Returns a text stream over the input, and whether it was wrapped
    """
    if isinstance(fd, io.TextIOBase):
        return fd, False
    return text_data_fd(fd), True


def _read_rows(fd, sections, default_section=None):
    """
    Iterates over the rows of a sectioned TSV input (text or binary)

    :raise GraphFormatError: Malformed or non UTF-8 input
    """
    text, wrapped = _text_stream(fd)
    try:
        for row in TsvSectionReader(text, sections, default_section):
            yield row
    except UnicodeDecodeError as ex:
        raise GraphFormatError(
            "Invalid UTF-8 content: {0}".format(ex.reason),
            section=default_section,
        )
    finally:
        if wrapped:
            # Don't close the caller's stream, only the gzip layer
            raw = text.detach()
            if isinstance(raw, gzip.GzipFile):
                raw.close()


def _parse_polyline(row, column):
    """
    Parses a ``lon1,lat1;lon2,lat2`` polyline
    """
    points = []
    for chunk in row.read_str(column).split(";"):
        try:
            lon, lat = chunk.split(",")
            points.append((float(lon), float(lat)))
        except ValueError:
            raise row.fail("Invalid point {0!r}".format(chunk), column)
    return points


def load_graph(fd):
    # type: (IO[Any]) -> RoadGraph
    """
    Reads a road graph in the TSV format (GZipped input is accepted)

    :param fd: Input stream (binary or text)
    :return: The parsed graph, arcs in input order
    :raise GraphFormatError: Malformed input
    """
    builder = GraphBuilder()
    pending_arcs = []
    geometries = []
    sections = [s.value for s in GraphSection]

    for row in _read_rows(fd, sections):
        if row.section == GraphSection.NODES.value:
            row.expect(3)
            vertex_id = row.read_str(0)
            if builder.has_vertex(vertex_id):
                raise row.fail("Duplicate node {0!r}".format(vertex_id), 0)
            builder.add_vertex(vertex_id, row.read_float(1), row.read_float(2))
        elif row.section == GraphSection.ARCS.value:
            row.expect(7)
            pending_arcs.append(
                (
                    row,
                    row.read_str(0),
                    row.read_str(1),
                    row.read_str(2),
                    row.read_int(3),
                    row.read_int(4),
                    row.read_int(5),
                    row.read_int(6),
                )
            )
        else:
            row.expect(2)
            geometries.append((row, row.read_str(0), _parse_polyline(row, 1)))

    # Arcs are added once all nodes are known
    arc_ids = set()
    for pending in pending_arcs:
        row, arc_id, src, dst, time_ms, road_type, lanes, length = pending
        if arc_id in arc_ids:
            raise row.fail("Duplicate arc {0!r}".format(arc_id), 0)
        for column, vertex_id in ((1, src), (2, dst)):
            if not builder.has_vertex(vertex_id):
                raise row.fail("Unknown node {0!r}".format(vertex_id), column)

        builder.add_arc(arc_id, src, dst, time_ms, road_type, lanes, length)
        arc_ids.add(arc_id)

    for row, arc_id, points in geometries:
        if arc_id not in arc_ids:
            raise row.fail("Geometry of unknown arc {0!r}".format(arc_id), 0)
        builder.set_geometry(arc_id, points)

    graph = builder.build()
    _log.debug("Loaded %s", graph)
    return graph


def loads_graph(data):
    # type: (bytes) -> RoadGraph
    """
    Reads a road graph from bytes
    """
    return load_graph(io.BytesIO(data))


def read_graph(path):
    # type: (str) -> RoadGraph
    """
    Reads a road graph from a file
    """
    with open(path, "rb") as fd:
        return load_graph(fd)


def dump_graph(graph, fd):
    # type: (RoadGraph, IO[str]) -> None
    """
    Writes a road graph in the TSV format

    :param graph: The graph to write
    :param fd: Output text stream
    """
    fd.write(GraphSection.NODES.value + "\n")
    for vertex, vertex_id in enumerate(graph.vertex_ids):
        lon, lat = graph.coordinates(vertex) or (0.0, 0.0)
        fd.write("{0}\t{1:.7f}\t{2:.7f}\n".format(vertex_id, lon, lat))

    fd.write(GraphSection.ARCS.value + "\n")
    for arc in graph.arcs:
        fd.write(
            "\t".join(
                str(x)
                for x in (
                    arc.arc_id,
                    graph.vertex_id(arc.src),
                    graph.vertex_id(arc.dst),
                    arc.free_flow_ms,
                    arc.road_type,
                    arc.lanes,
                    arc.length_m,
                )
            )
            + "\n"
        )

    with_geometry = [arc for arc in graph.arcs if arc.geometry]
    if with_geometry:
        fd.write(GraphSection.GEOMETRY.value + "\n")
        for arc in with_geometry:
            fd.write(
                "{0}\t{1}\n".format(
                    arc.arc_id,
                    ";".join(
                        "{0:.7f},{1:.7f}".format(lon, lat)
                        for lon, lat in arc.geometry
                    ),
                )
            )


def load_weights(fd, graph, default=None):
    # type: (IO[Any], RoadGraph, Optional[WeightVector]) -> WeightVector
    """
    Reads a weight file: ``arc_id  value_ms`` rows, ``inf`` for INFINITE

    :param fd: Input stream (binary or text)
    :param graph: The graph the weights apply to
    :param default: Weights of the arcs absent from the file; every arc must
                    be listed if None
    :raise GraphFormatError: Malformed or incomplete input
    """
    values = [None] * graph.num_arcs  # type: List[Any]
    if default is not None:
        values = list(default)

    seen = set()
    for row in _read_rows(fd, (), default_section="weights"):
        row.expect(2)
        arc_id = row.read_str(0)
        if not graph.has_arc_id(arc_id):
            raise row.fail("Unknown arc {0!r}".format(arc_id), 0)
        if arc_id in seen:
            raise row.fail("Duplicate arc {0!r}".format(arc_id), 0)
        seen.add(arc_id)
        values[graph.arc_by_id(arc_id).index] = row.read_weight(1)

    missing = [graph.arc(i).arc_id for i, v in enumerate(values) if v is None]
    if missing:
        raise GraphFormatError(
            "Missing weights for arcs: {0}".format(", ".join(missing[:10]))
        )
    return WeightVector(graph, values)


def dump_weights(graph, weights, fd):
    # type: (RoadGraph, WeightVector, IO[str]) -> None
    """
    Writes a weight file
    """
    for arc in graph.arcs:
        fd.write(
            "{0}\t{1}\n".format(
                arc.arc_id, format_weight(weights[arc.index])
            )
        )


def load_path(fd, graph, source=None):
    # type: (IO[Any], RoadGraph, Optional[int]) -> Path
    """
    Reads a path file: one arc identifier per line

    :raise GraphFormatError: Unknown arc
    :raise PreconditionError: Arcs don't form a simple path
    """
    arcs = []
    for row in _read_rows(fd, (), default_section="path"):
        row.expect(1)
        arc_id = row.read_str(0)
        if not graph.has_arc_id(arc_id):
            raise row.fail("Unknown arc {0!r}".format(arc_id), 0)
        arcs.append(graph.arc_by_id(arc_id).index)
    return Path(graph, arcs, source)


# ------------------------------------------------------------------------------


def _label_setting(graph, weights, source, target=None, reverse=False):
    # type: (RoadGraph, WeightVector, int, Optional[int], bool) -> Tuple[List[Optional[Tuple[int, int]]], List[bool]]
    """
    Label-setting search keyed by (distance, hop count). INFINITE arcs are
    skipped.

    :return: Labels and settled flags of all vertices
    """
    labels = [None] * graph.num_vertices  # type: List[Optional[Tuple[int, int]]]
    settled = [False] * graph.num_vertices
    adjacency = graph.in_arcs if reverse else graph.out_arcs
    arcs = graph.arcs

    labels[source] = (0, 0)
    heap = [(0, 0, source)]
    while heap:
        dist, hops, vertex = heapq.heappop(heap)
        if settled[vertex]:
            continue
        settled[vertex] = True
        if vertex == target:
            break

        for index in adjacency(vertex):
            weight = weights[index]
            if weight is INFINITE:
                continue

            arc = arcs[index]
            other = arc.src if reverse else arc.dst
            if settled[other]:
                continue

            label = (dist + weight, hops + 1)
            current = labels[other]
            if current is None or label < current:
                labels[other] = label
                heapq.heappush(heap, (label[0], label[1], other))

    return labels, settled


def shortest_path(graph, weights, source, target):
    # type: (RoadGraph, WeightVector, int, int) -> Tuple[Path, int]
    """
    Computes the shortest path between two vertices.

    Ties are broken by hop count, then by the smallest sequence of arc
    positions: arcs are compared by their input order in the graph file,
    not by identifier.

    :param graph: The graph
    :param weights: Nonnegative weights, INFINITE arcs being absent
    :param source: Origin vertex
    :param target: Destination vertex
    :return: The path and its total weight
    :raise UnreachableError: No finite-weight path
    """
    if source == target:
        return Path(graph, (), source), 0

    labels, settled = _label_setting(graph, weights, source, target)
    if not settled[target]:
        raise UnreachableError(
            graph.vertex_id(source), graph.vertex_id(target)
        )

    def tight(index):
        arc = graph.arc(index)
        weight = weights[index]
        if weight is INFINITE or not settled[arc.src]:
            return False
        head = labels[arc.dst]
        tail = labels[arc.src]
        return head == (tail[0] + weight, tail[1] + 1)

    # Vertices from which the target is reachable along tight arcs
    on_tight_path = {target}
    stack = [target]
    while stack:
        vertex = stack.pop()
        for index in graph.in_arcs(vertex):
            tail = graph.arc(index).src
            if tail not in on_tight_path and tight(index):
                on_tight_path.add(tail)
                stack.append(tail)

    # Greedy walk: the smallest tight arc staying on a tight path
    arcs = []
    vertex = source
    while vertex != target:
        for index in graph.out_arcs(vertex):
            head = graph.arc(index).dst
            if head in on_tight_path and tight(index):
                arcs.append(index)
                vertex = head
                break
        else:
            raise AssertionError("Lost the tight path at {0}".format(vertex))

    return Path(graph, arcs, source), labels[target][0]


def distances(graph, weights, source, reverse=False):
    # type: (RoadGraph, WeightVector, int, bool) -> List[Optional[int]]
    """
    Computes the distance from (or, if reverse, to) a vertex to all others

    :return: Distances, None for unreachable vertices
    """
    labels, _ = _label_setting(graph, weights, source, reverse=reverse)
    return [None if label is None else label[0] for label in labels]


def path_weight(path, weights):
    # type: (Path, WeightVector) -> Any
    """
    Sums the weights along a path (INFINITE if any arc is)
    """
    total = 0
    for index in path.arcs:
        total = total + weights[index]
    return total


def hop_window(path, center, radius):
    # type: (Path, int, int) -> List[int]
    """
    Arcs of the path at most ``radius`` hops away from the given position

    :param path: A path
    :param center: Position of the center arc in the path
    :param radius: Maximum number of hops
    :return: Arc positions in the graph, in travel order
    :raise ValueError: Position out of range or negative radius
    """
    if not 0 <= center < len(path):
        raise ValueError(
            "Position {0} out of a {1}-arc path".format(center, len(path))
        )
    if radius < 0:
        raise ValueError("Negative radius: {0}".format(radius))

    start = max(0, center - radius)
    end = min(len(path) - 1, center + radius)
    return list(path.arcs[start : end + 1])
