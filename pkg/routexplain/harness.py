#!/usr/bin/env python3
"""
Evaluation harness: runs an explanation method over scenario datasets and
computes the containment, precision and size-ratio metrics.

Also renders explanations as GeoJSON documents.

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

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import (  # pylint:disable=W0611
    IO,
    Any,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
)

import numpy as np

from .api import IExplainer
from .beans import Explanation, Scenario  # pylint:disable=W0611
from .constants import (
    DEFAULT_C0,
    DEFAULT_TAU_SCALE,
    ExplainMethod,
    ScenarioKind,
    TauOption,
)
from .exceptions import ExplainError, PreconditionError
from .graph import Path, RoadGraph, WeightVector, path_weight
from .pbe import PbeExplainer
from .scenarios import (
    graph_digest,
    scenario_from_json,
    scenario_instance,
    scenario_to_json,
)
from .solver import SveExplainer
from .utils import json_weight

# ------------------------------------------------------------------------------

__all__ = (
    "EvalRow",
    "EvalResult",
    "make_explainer",
    "evaluate_scenario",
    "run_closure_eval",
    "run_incident_eval",
    "closure_summary",
    "incident_summary",
    "nearest_rank",
    "write_rows_csv",
    "write_summary",
    "export_geojson",
    "scenario_geojson",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.harness")

# Value of metrics computed over no scenario
NOT_AVAILABLE = "N/A"

# Per-process state of the evaluation workers
_WORKER_STATE = {}  # type: Dict[str, Any]

# ------------------------------------------------------------------------------


class EvalRow(object):  # pylint:disable=R0205,R0902
    """
    Evaluation of one method on one scenario
    """

    FIELDS = (
        "scenario_id",
        "kind",
        "method",
        "valid",
        "reason",
        "support_size",
        "target_size",
        "valuation",
        "contained",
        "isolated",
        "precision",
        "ratio",
        "verified",
        "error",
    )

    def __init__(self, scenario_id, kind, method):
        # type: (str, ScenarioKind, ExplainMethod) -> None
        self.scenario_id = scenario_id
        self.kind = kind
        self.method = method
        self.valid = True
        self.reason = None  # type: Optional[str]
        self.support_size = None  # type: Optional[int]
        self.target_size = None  # type: Optional[int]
        self.valuation = None  # type: Any
        self.contained = None  # type: Optional[bool]
        self.isolated = None  # type: Optional[bool]
        self.precision = None  # type: Optional[float]
        self.ratio = None  # type: Optional[float]
        self.verified = None  # type: Optional[bool]
        self.error = None  # type: Optional[str]

    def __repr__(self):
        return "<EvalRow {0} {1}: {2}>".format(
            self.scenario_id,
            self.method.value,
            self.error or self.reason or "ok",
        )

    @property
    def succeeded(self):
        # type: () -> bool
        """
        True if the scenario was valid and explained without error
        """
        return self.valid and self.error is None

    def to_csv(self):
        # type: () -> Dict[str, str]
        """
        Converts the row to CSV cells
        """

        def cell(value):
            if value is None:
                return ""
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return "{0:.6f}".format(value)
            return str(value)

        values = {
            "scenario_id": self.scenario_id,
            "kind": self.kind.value,
            "method": self.method.value,
            "valid": self.valid,
            "reason": self.reason,
            "support_size": self.support_size,
            "target_size": self.target_size,
            "valuation": None
            if self.valuation is None
            else json_weight(self.valuation),
            "contained": self.contained,
            "isolated": self.isolated,
            "precision": self.precision,
            "ratio": self.ratio,
            "verified": self.verified,
            "error": self.error,
        }
        return {key: cell(value) for key, value in values.items()}


class EvalResult(object):  # pylint:disable=R0205
    """
    Rows of an evaluation run, sorted by scenario identifier, and their
    summary
    """

    def __init__(self, kind, method, rows, summary):
        # type: (ScenarioKind, ExplainMethod, List[EvalRow], Dict[str, Any]) -> None
        self.kind = kind
        self.method = method
        self.rows = rows
        self.summary = summary

    def __repr__(self):
        return "<EvalResult {0}/{1}: {2} row(s)>".format(
            self.kind.value, self.method.value, len(self.rows)
        )

    @property
    def verification_failures(self):
        # type: () -> List[EvalRow]
        """
        Rows whose verifier report failed
        """
        return [row for row in self.rows if row.verified is False]


# ------------------------------------------------------------------------------


def make_explainer(method, beta=None, max_iters=None):
    # type: (ExplainMethod, Any, Optional[int]) -> IExplainer
    """
    Returns the explainer implementing the given method
    """
    if method == ExplainMethod.SVE:
        return SveExplainer(max_iters=max_iters, beta=beta)
    if method == ExplainMethod.PBE:
        return PbeExplainer()
    raise ValueError("Unknown method: {0}".format(method))


def evaluate_scenario(
    scenario,
    method,
    option=TauOption.ONE,
    c0=DEFAULT_C0,
    scale=DEFAULT_TAU_SCALE,
    beta=None,
):
    # type: (Scenario, ExplainMethod, TauOption, int, int, Any) -> EvalRow
    """
    Explains a scenario and computes its metrics. Failures are recorded in
    the row, never raised.

    :param scenario: A scenario
    :param method: The explanation method
    :param option: The simplicity weights option
    :param c0: Constant of the simplicity weights
    :param scale: Scale of the inverse-gap simplicity weights
    :param beta: Ellipse factor of the SVE subgraph filter
    :return: The evaluation row
    """
    row = EvalRow(scenario.scenario_id, scenario.kind, method)
    if not scenario.valid:
        row.valid = False
        row.reason = scenario.reason.value
        return row

    target = scenario.target_set
    row.target_size = len(target)
    row.isolated = scenario.isolated_closures
    try:
        inst = scenario_instance(scenario, option, c0, scale)
        explainer = make_explainer(method, beta)
        expl = explainer.explain(inst)
        report = explainer.verify(inst, expl)
    except ExplainError as ex:
        row.error = "{0}: {1}".format(type(ex).__name__, ex)
        _log.warning("Scenario %s failed: %s", scenario.scenario_id, row.error)
        return row

    support = expl.support
    row.support_size = len(support)
    row.valuation = expl.valuation
    row.verified = None if report is None else report.passed
    row.contained = support <= target
    row.precision = (
        len(support & target) / len(support) if support else 1.0
    )
    row.ratio = len(support) / len(target) if target else None
    return row


def _init_worker(graph, digest):
    # type: (RoadGraph, str) -> None
    """
    Keeps the shared graph in the worker process
    """
    _WORKER_STATE["graph"] = graph
    _WORKER_STATE["digest"] = digest


def _evaluate_task(task):
    # type: (Dict[str, Any]) -> EvalRow
    """
    Evaluates a scenario sent in its JSON form
    """
    graph = _WORKER_STATE["graph"]
    scenario = scenario_from_json(
        task["scenario"], graph, _WORKER_STATE["digest"]
    )
    return evaluate_scenario(
        scenario,
        ExplainMethod(task["method"]),
        TauOption(task["option"]),
        task["c0"],
        task["scale"],
        task["beta"],
    )


def _evaluate_all(scenarios, kind, method, option, c0, scale, beta, workers):
    # type: (Sequence[Scenario], ScenarioKind, ExplainMethod, TauOption, int, int, Any, int) -> List[EvalRow]
    """
    Evaluates the scenarios, in parallel if requested, and sorts the rows by
    scenario identifier
    """
    for scenario in scenarios:
        if scenario.kind != kind:
            raise PreconditionError(
                "Scenario {0} is not a {1} scenario".format(
                    scenario.scenario_id, kind.value
                )
            )

    graphs = {id(scenario.graph) for scenario in scenarios}
    if workers <= 1 or len(scenarios) < 2 or len(graphs) > 1:
        rows = [
            evaluate_scenario(s, method, option, c0, scale, beta)
            for s in scenarios
        ]
    else:
        graph = scenarios[0].graph
        digest = graph_digest(graph)
        tasks = [
            {
                "scenario": scenario_to_json(scenario, digest),
                "method": method.value,
                "option": option.value,
                "c0": c0,
                "scale": scale,
                "beta": beta,
            }
            for scenario in scenarios
        ]
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(graph, digest),
        ) as executor:
            rows = list(executor.map(_evaluate_task, tasks))

    rows.sort(key=lambda row: row.scenario_id)
    return rows


# ------------------------------------------------------------------------------


def nearest_rank(values, percent):
    # type: (Sequence[float], float) -> Any
    """
    Nearest-rank percentile of the given values, N/A if there are none
    """
    if len(values) == 0:
        return NOT_AVAILABLE
    return float(
        np.percentile(np.asarray(values), percent, method="inverted_cdf")
    )


def _percent(count, total):
    # type: (int, int) -> Any
    """
    Percentage, N/A over an empty set
    """
    if not total:
        return NOT_AVAILABLE
    return round(100.0 * count / total, 3)


def _common_summary(rows):
    # type: (Sequence[EvalRow]) -> Dict[str, Any]
    """
    Counts shared by all summaries
    """
    valid = [row for row in rows if row.valid]
    return {
        "scenarios": len(rows),
        "valid": len(valid),
        "valid_pct": _percent(len(valid), len(rows)),
        "invalid": [
            {"scenario_id": row.scenario_id, "reason": row.reason}
            for row in rows
            if not row.valid
        ],
        "errors": [
            {"scenario_id": row.scenario_id, "error": row.error}
            for row in valid
            if row.error is not None
        ],
        "verification_failures": [
            row.scenario_id for row in rows if row.verified is False
        ],
    }


def closure_summary(rows):
    # type: (Sequence[EvalRow]) -> Dict[str, Any]
    """
    Share of valid closure scenarios whose explanation only raises closed
    arcs. Failed explanations count as not contained.

    The same share is given over the scenarios whose closed sets avoid the
    earlier paths (``isolated``).
    """
    summary = _common_summary(rows)
    explained = [row for row in rows if row.succeeded]
    isolated = [row for row in rows if row.valid and row.isolated]
    summary["explained"] = len(explained)
    summary["containment_pct"] = _percent(
        sum(1 for row in explained if row.contained), summary["valid"]
    )
    summary["isolated"] = len(isolated)
    summary["isolated_containment_pct"] = _percent(
        sum(1 for row in isolated if row.succeeded and row.contained),
        len(isolated),
    )
    return summary


def incident_summary(rows):
    # type: (Sequence[EvalRow]) -> Dict[str, Any]
    """
    Minimum precision and percentiles of the size ratio over the valid
    incident scenarios
    """
    summary = _common_summary(rows)
    explained = [row for row in rows if row.succeeded]
    precisions = [row.precision for row in explained]
    ratios = [row.ratio for row in explained if row.ratio is not None]

    summary["explained"] = len(explained)
    summary["precision"] = {
        "min": min(precisions) if precisions else NOT_AVAILABLE
    }
    summary["ratio"] = {
        "50%": nearest_rank(ratios, 50),
        "90%": nearest_rank(ratios, 90),
        "max": max(ratios) if ratios else NOT_AVAILABLE,
    }
    return summary


def run_closure_eval(
    scenarios,
    method,
    option=TauOption.ONE,
    c0=DEFAULT_C0,
    scale=DEFAULT_TAU_SCALE,
    beta=None,
    workers=1,
):
    # type: (Sequence[Scenario], ExplainMethod, TauOption, int, int, Any, int) -> EvalResult
    """
    Evaluates a method on closure scenarios: an explanation is contained if
    its support is a subset of the closed arcs

    :param scenarios: Closure scenarios
    :param method: The explanation method
    :param option: The simplicity weights option
    :param c0: Constant of the simplicity weights
    :param scale: Scale of the inverse-gap simplicity weights
    :param beta: Ellipse factor of the SVE subgraph filter
    :param workers: Number of worker processes
    :return: Rows and summary
    :raise PreconditionError: Not a closure scenario
    """
    rows = _evaluate_all(
        scenarios,
        ScenarioKind.CLOSURE,
        method,
        option,
        c0,
        scale,
        beta,
        workers,
    )
    summary = closure_summary(rows)
    _log.info(
        "Closure evaluation of %s: %s valid, containment %s%%",
        method.value,
        summary["valid"],
        summary["containment_pct"],
    )
    return EvalResult(ScenarioKind.CLOSURE, method, rows, summary)


def run_incident_eval(
    scenarios,
    method,
    option=TauOption.ONE,
    c0=DEFAULT_C0,
    scale=DEFAULT_TAU_SCALE,
    beta=None,
    workers=1,
):
    # type: (Sequence[Scenario], ExplainMethod, TauOption, int, int, Any, int) -> EvalResult
    """
    Evaluates a method on incident scenarios: precision against the arcs of
    the penalized paths, and size ratio of the support

    :raise PreconditionError: Not an incident scenario
    """
    rows = _evaluate_all(
        scenarios,
        ScenarioKind.INCIDENT,
        method,
        option,
        c0,
        scale,
        beta,
        workers,
    )
    summary = incident_summary(rows)
    _log.info(
        "Incident evaluation of %s: %s valid, min precision %s",
        method.value,
        summary["valid"],
        summary["precision"]["min"],
    )
    return EvalResult(ScenarioKind.INCIDENT, method, rows, summary)


# ------------------------------------------------------------------------------


def write_rows_csv(rows, fd):
    # type: (Iterable[EvalRow], IO[str]) -> None
    """
    Writes evaluation rows as CSV, one line per scenario and method
    """
    writer = csv.DictWriter(fd, fieldnames=EvalRow.FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_csv())


def write_summary(results, fd, config=None):
    # type: (Iterable[EvalResult], IO[str], Optional[Dict[str, Any]]) -> None
    """
    Writes the summaries as JSON, one section per scenario kind and method
    """
    sections = {}  # type: Dict[str, Dict[str, Any]]
    for result in results:
        sections.setdefault(result.kind.value, {})[
            result.method.value
        ] = result.summary

    document = {"summary": sections}  # type: Dict[str, Any]
    if config is not None:
        document["config"] = config
    json.dump(document, fd, indent=2, sort_keys=True)
    fd.write("\n")


# ------------------------------------------------------------------------------


def _arc_line(graph, index):
    """
    Coordinates of an arc and its geometry flags
    """
    arc = graph.arc(index)
    if arc.geometry:
        return [list(point) for point in arc.geometry], False
    start = graph.coordinates(arc.src)
    end = graph.coordinates(arc.dst)
    if start is None or end is None:
        return None, False
    return [list(start), list(end)], True


def _feature(coordinates, synthetic, properties):
    """
    Builds a LineString feature, with a null geometry if coordinates are
    missing
    """
    properties = dict(properties)
    properties["synthetic_geometry"] = synthetic
    properties["missing_geometry"] = coordinates is None
    geometry = None
    if coordinates is not None:
        geometry = {"type": "LineString", "coordinates": coordinates}
    return {"type": "Feature", "geometry": geometry, "properties": properties}


def export_geojson(graph, path, expl, ell, upper, context=()):
    # type: (RoadGraph, Path, Explanation, WeightVector, WeightVector, Iterable[int]) -> Dict[str, Any]
    """
    Renders an explanation as a GeoJSON FeatureCollection: the path, each
    arc of the support and the context arcs (closures, penalized arcs).

    Arcs without geometry are drawn as straight segments between their
    endpoints (``synthetic_geometry``); without coordinates, features get a
    null geometry (``missing_geometry``).

    :param graph: The graph
    :param path: The explained path
    :param expl: The explanation
    :param ell: Lower weights
    :param upper: Upper weights
    :param context: Arcs to show as context
    :return: The GeoJSON document
    """
    features = []

    coordinates = []  # type: Optional[List[List[float]]]
    synthetic = False
    for index in path.arcs:
        line, flag = _arc_line(graph, index)
        if line is None:
            coordinates = None
            break
        synthetic = synthetic or flag
        if coordinates and coordinates[-1] == line[0]:
            line = line[1:]
        coordinates.extend(line)

    if coordinates is not None and not path.arcs:
        point = graph.coordinates(path.source)
        coordinates = None if point is None else [list(point), list(point)]
        synthetic = True

    features.append(
        _feature(
            coordinates,
            synthetic,
            {
                "role": "path",
                "arc_ids": path.arc_ids(graph),
                "w": json_weight(path_weight(path, expl.weights)),
                "ell": json_weight(path_weight(path, ell)),
            },
        )
    )

    def arc_feature(index, role):
        line, flag = _arc_line(graph, index)
        return _feature(
            line,
            flag,
            {
                "role": role,
                "arc_id": graph.arc(index).arc_id,
                "w": json_weight(expl.weights[index]),
                "ell": json_weight(ell[index]),
                "u": json_weight(upper[index]),
            },
        )

    for index in sorted(expl.support):
        features.append(arc_feature(index, "explanation"))

    for index in sorted(set(context) - expl.support):
        features.append(arc_feature(index, "context"))

    return {"type": "FeatureCollection", "features": features}


def scenario_geojson(scenario, expl):
    # type: (Scenario, Explanation) -> Dict[str, Any]
    """
    Renders the explanation of a scenario, with its closed or penalized arcs
    as context
    """
    return export_geojson(
        scenario.graph,
        scenario.path,
        expl,
        scenario.ell,
        scenario.upper,
        scenario.target_set,
    )
