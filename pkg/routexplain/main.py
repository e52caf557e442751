#!/usr/bin/env python3
"""
Command line interface: explains routes, generates scenarios, runs the
evaluations and writes synthetic grids.

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

import argparse
import collections
import json
import logging
import os
import sys
from typing import IO, Any, Dict, List, Optional  # pylint:disable=W0611

from .beans import Explanation, VerificationReport  # pylint:disable=W0611
from .config import resolve_config
from .constants import (
    CONFIG_ENV,
    INFINITE_TOKEN,
    ExitCode,
    ExplainMethod,
    Pliability,
    ScenarioKind,
    TauOption,
)
from .exceptions import (
    CertificateError,
    ExplainError,
    GraphFormatError,
    PreconditionError,
    UnboundedError,
    UnreachableError,
)
from .generators import grid_graph
from .graph import (
    RoadGraph,
    dump_graph,
    load_path,
    load_weights,
    read_graph,
    shortest_path,
)
from .harness import (
    export_geojson,
    run_closure_eval,
    run_incident_eval,
    write_rows_csv,
    write_summary,
)
from .model import make_instance
from .pbe import PbeExplainer
from .scenarios import (
    gen_closure_scenario,
    gen_incident_scenario,
    load_scenario,
    read_scenarios,
    sample_query_pairs,
    scenario_instance,
    write_scenarios,
)
from .solver import SveExplainer
from .utils import log_error

# ------------------------------------------------------------------------------

__all__ = ("main", "make_parser")

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

_log = logging.getLogger("routexplain.main")

# Output files of the eval command
RESULTS_CSV = "results.csv"
SUMMARY_JSON = "summary.json"

# ------------------------------------------------------------------------------


def _write_json(document, output=None):
    # type: (Dict[str, Any], Optional[str]) -> None
    """
    Writes a JSON document with sorted keys to a file or to stdout
    """
    if output is None:
        json.dump(document, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
        return

    with open(output, "w", encoding="utf-8", newline="\n") as fd:
        json.dump(document, fd, indent=2, sort_keys=True)
        fd.write("\n")


def _read_weights(path, graph, default=None):
    """
    Reads a weight file, compressed or not
    """
    with open(path, "rb") as fd:
        return load_weights(fd, graph, default)


def _vertex(graph, vertex_id):
    # type: (RoadGraph, str) -> int
    """
    Position of a vertex given on the command line

    :raise PreconditionError: Unknown vertex
    """
    if not graph.has_vertex(vertex_id):
        raise PreconditionError("Unknown vertex {0!r}".format(vertex_id))
    return graph.vertex(vertex_id)


def _fraction(text):
    # type: (str) -> List[int]
    """
    Parses a ``numerator/denominator`` argument
    """
    try:
        numerator, denominator = (int(part) for part in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected numerator/denominator, got {0!r}".format(text)
        )
    if denominator <= 0 or numerator < denominator:
        raise argparse.ArgumentTypeError("fraction must be at least 1")
    return [numerator, denominator]


def _multiplier(text):
    # type: (str) -> Any
    """
    Parses a closure multiplier: a positive integer or ``inf``
    """
    if text == INFINITE_TOKEN:
        return text
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "invalid multiplier {0!r}".format(text)
        )
    if value < 1:
        raise argparse.ArgumentTypeError("multiplier must be positive")
    return value


def _methods(text):
    # type: (str) -> List[str]
    """
    Parses a comma-separated list of methods
    """
    methods = [part.strip().upper() for part in text.split(",") if part]
    for method in methods:
        try:
            ExplainMethod(method)
        except ValueError:
            raise argparse.ArgumentTypeError(
                "unknown method {0!r}".format(method)
            )
    return methods


def _explain_overrides(args):
    # type: (argparse.Namespace) -> Dict[str, Any]
    """
    Explanation settings given on the command line
    """
    return {
        "tau": args.tau,
        "c0": args.c0,
        "scale": args.scale,
        "beta": args.beta,
        "max_iters": args.max_iters,
        "debug_checks": args.debug_checks,
    }


# ------------------------------------------------------------------------------


def cli_explain(args):
    # type: (argparse.Namespace) -> ExitCode
    """
    Explains a path and writes the explanation, its certificate and the
    verifier report
    """
    config = resolve_config(
        {"explain": _explain_overrides(args)}, args.config
    )
    settings = config["explain"]
    option = TauOption(settings["tau"])
    graph = read_graph(args.graph)

    context = frozenset()  # type: Any
    if args.scenario:
        with open(args.scenario, "r", encoding="utf-8") as fd:
            scenario = load_scenario(fd, graph)
        inst = scenario_instance(
            scenario, option, settings["c0"], settings["scale"]
        )
        context = scenario.target_set
    else:
        if not args.upper:
            raise PreconditionError("Upper weights are required")

        ell = graph.free_flow()
        if args.lower:
            ell = _read_weights(args.lower, graph, ell)
        upper = _read_weights(args.upper, graph, ell)

        if args.path:
            source = None
            if args.source:
                source = _vertex(graph, args.source)
            with open(args.path, "rb") as fd:
                path = load_path(fd, graph, source)
        elif args.source and args.target:
            path, _ = shortest_path(
                graph,
                upper,
                _vertex(graph, args.source),
                _vertex(graph, args.target),
            )
        else:
            raise PreconditionError(
                "Give a path file or an origin and a destination"
            )

        inst = make_instance(
            graph, ell, upper, path, option, settings["c0"], settings["scale"]
        )

    if ExplainMethod(args.method) == ExplainMethod.PBE:
        explainer = PbeExplainer()  # type: Any
    else:
        explainer = SveExplainer(
            settings["max_iters"],
            settings["beta"],
            args.trace_dir,
            settings["debug_checks"],
        )

    expl = explainer.explain(inst)
    report = explainer.verify(inst, expl)

    document = {
        "source": graph.vertex_id(inst.source),
        "target": graph.vertex_id(inst.target),
        "path": inst.path.arc_ids(graph),
        "explanation": expl.to_json(graph),
        "report": report.to_json(),
        "config": config,
    }
    if expl.certificate is not None and settings["beta"] is None:
        document["certificate"] = expl.certificate.to_json(graph)
        document["solution"] = expl.solution.to_json(graph)
    _write_json(document, args.output)

    if args.geojson:
        _write_json(
            export_geojson(
                graph, inst.path, expl, inst.ell, inst.upper, context
            ),
            args.geojson,
        )

    if not report.passed:
        for check in report.failures():
            log_error("{0}: {1}".format(check.name, check.detail), 1)
        return ExitCode.VERIFICATION
    return ExitCode.OK


def cli_scenario(args):
    # type: (argparse.Namespace) -> ExitCode
    """
    Samples queries, generates the scenarios and writes one file per scenario
    """
    config = resolve_config(
        {
            "scenario": {
                "kind": args.kind,
                "k": args.k,
                "hop_radius": args.hop_radius,
                "multiplier": args.multiplier,
                "off_factor": args.off_factor,
                "gamma": args.gamma,
                "pliability": args.pliability,
                "count": args.count,
                "seed": args.seed,
                "min_m": args.min_m,
                "max_m": args.max_m,
                "rejection_budget": args.rejection_budget,
            }
        },
        args.config,
    )
    settings = config["scenario"]
    kind = ScenarioKind(settings["kind"])
    graph = read_graph(args.graph)
    ell = graph.free_flow()

    pairs = sample_query_pairs(
        graph,
        settings["min_m"],
        settings["max_m"],
        settings["count"],
        settings["seed"],
        settings["rejection_budget"],
    )

    scenarios = []
    for position, (source, target) in enumerate(pairs):
        scenario_id = "{0}-{1}-{2:04d}".format(
            kind.value, settings["seed"], position
        )
        if kind == ScenarioKind.CLOSURE:
            multiplier = settings["multiplier"]
            scenarios.append(
                gen_closure_scenario(
                    graph,
                    ell,
                    source,
                    target,
                    settings["k"],
                    settings["hop_radius"],
                    None if multiplier == INFINITE_TOKEN else multiplier,
                    settings["off_factor"],
                    Pliability(settings["pliability"]),
                    scenario_id=scenario_id,
                    seed=settings["seed"],
                )
            )
        else:
            scenarios.append(
                gen_incident_scenario(
                    graph,
                    ell,
                    source,
                    target,
                    settings["k"],
                    tuple(settings["gamma"]),
                    settings["off_factor"],
                    scenario_id=scenario_id,
                    seed=settings["seed"],
                )
            )

    write_scenarios(scenarios, args.output)

    reasons = collections.Counter(
        s.reason.value for s in scenarios if not s.valid
    )
    _write_json(
        {
            "scenarios": len(scenarios),
            "valid": sum(1 for s in scenarios if s.valid),
            "invalid": dict(reasons),
            "output": args.output,
            "config": config,
        }
    )
    return ExitCode.OK


def cli_eval(args):
    # type: (argparse.Namespace) -> ExitCode
    """
    Evaluates the methods on a folder of scenarios, per scenario kind
    """
    config = resolve_config(
        {
            "explain": _explain_overrides(args),
            "eval": {"methods": args.methods, "workers": args.workers},
        },
        args.config,
    )
    settings = config["explain"]
    if config["eval"]["workers"] is None:
        config["eval"]["workers"] = os.cpu_count() or 1

    graph = read_graph(args.graph)
    scenarios = read_scenarios(args.scenarios, graph)
    _log.info("Read %d scenario(s) from %s", len(scenarios), args.scenarios)

    runners = (
        (ScenarioKind.CLOSURE, run_closure_eval),
        (ScenarioKind.INCIDENT, run_incident_eval),
    )
    results = []
    for kind, runner in runners:
        selected = [s for s in scenarios if s.kind == kind]
        if not selected:
            continue

        for method in config["eval"]["methods"]:
            results.append(
                runner(
                    selected,
                    ExplainMethod(method),
                    TauOption(settings["tau"]),
                    settings["c0"],
                    settings["scale"],
                    settings["beta"],
                    config["eval"]["workers"],
                )
            )

    os.makedirs(args.output, exist_ok=True)
    with open(
        os.path.join(args.output, RESULTS_CSV),
        "w",
        encoding="utf-8",
        newline="",
    ) as fd:
        write_rows_csv((row for result in results for row in result.rows), fd)

    with open(
        os.path.join(args.output, SUMMARY_JSON),
        "w",
        encoding="utf-8",
        newline="\n",
    ) as fd:
        write_summary(results, fd, config)

    failures = [
        row for result in results for row in result.verification_failures
    ]
    if failures:
        for row in failures:
            log_error(
                "Verification failed: {0} ({1})".format(
                    row.scenario_id, row.method.value
                ),
                1,
            )
        return ExitCode.VERIFICATION
    return ExitCode.OK


def cli_gen_grid(args):
    # type: (argparse.Namespace) -> ExitCode
    """
    Writes a synthetic grid graph
    """
    graph = grid_graph(
        args.width, args.height, args.spacing, args.arterial, args.seed
    )
    if args.output is None:
        dump_graph(graph, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fd:
            dump_graph(graph, fd)
    _log.info("Wrote %s", graph)
    return ExitCode.OK


# ------------------------------------------------------------------------------


def _add_explain_options(parser):
    # type: (argparse.ArgumentParser) -> None
    """
    Options shared by the explain and eval commands
    """
    group = parser.add_argument_group("explanation")
    group.add_argument(
        "--tau",
        choices=[option.value for option in TauOption],
        help="Simplicity weights option",
    )
    group.add_argument("--c0", type=int, help="Simplicity weights constant")
    group.add_argument(
        "--scale", type=int, help="Scale of the inverse-gap option"
    )
    group.add_argument(
        "--beta", type=float, help="Ellipse factor of the subgraph filter"
    )
    group.add_argument(
        "--max-iters", type=int, help="Maximum number of solver iterations"
    )
    group.add_argument(
        "--debug-checks",
        action="store_true",
        default=None,
        help="Check the solver state after each iteration",
    )


def make_parser():
    # type: () -> argparse.ArgumentParser
    """
    Prepares the argument parser
    """
    parser = argparse.ArgumentParser(
        prog="routexplain",
        description="Explains traffic-aware shortest paths",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase verbosity (repeatable)",
    )
    parser.add_argument(
        "-q", "--quiet", action="store_true", help="Only log errors"
    )
    parser.add_argument(
        "--config",
        help="TOML configuration file (default: ${0})".format(CONFIG_ENV),
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # explain
    explain = subparsers.add_parser("explain", help="Explain a path")
    explain.set_defaults(handler=cli_explain)
    explain.add_argument("--graph", required=True, help="Graph TSV file")
    explain.add_argument(
        "--lower", help="Lower weights (default: free-flow times)"
    )
    explain.add_argument(
        "--upper", help="Upper weights (default for missing arcs: lower)"
    )
    explain.add_argument("--scenario", help="Scenario JSON file")
    explain.add_argument("--source", help="Origin vertex")
    explain.add_argument("--target", help="Destination vertex")
    explain.add_argument("--path", help="Path file, one arc per line")
    explain.add_argument(
        "--method",
        choices=[method.value for method in ExplainMethod],
        default=ExplainMethod.SVE.value,
        help="Explanation method",
    )
    explain.add_argument("--trace-dir", help="Dump residual graphs there")
    explain.add_argument("-o", "--output", help="Output JSON file")
    explain.add_argument("--geojson", help="Output GeoJSON file")
    _add_explain_options(explain)

    # scenario
    scenario = subparsers.add_parser("scenario", help="Generate scenarios")
    scenario.set_defaults(handler=cli_scenario)
    scenario.add_argument("--graph", required=True, help="Graph TSV file")
    scenario.add_argument(
        "-o", "--output", required=True, help="Output folder"
    )
    scenario.add_argument(
        "--kind", choices=[kind.value for kind in ScenarioKind]
    )
    scenario.add_argument("-k", type=int, help="Number of closures/incidents")
    scenario.add_argument("-n", "--count", type=int, help="Number of queries")
    scenario.add_argument("--seed", type=int, help="Random seed")
    scenario.add_argument("--min-m", type=int, help="Minimum distance (m)")
    scenario.add_argument("--max-m", type=int, help="Maximum distance (m)")
    scenario.add_argument(
        "--rejection-budget", type=int, help="Draws allowed per query"
    )
    scenario.add_argument(
        "--hop-radius", type=int, help="Closure window radius, in hops"
    )
    scenario.add_argument(
        "--multiplier",
        type=_multiplier,
        help="Closure weight factor, or 'inf' to delete closed arcs",
    )
    scenario.add_argument(
        "--off-factor", type=int, help="Upper weight factor off the paths"
    )
    scenario.add_argument(
        "--gamma", type=_fraction, help="Incident factor, as num/den"
    )
    scenario.add_argument(
        "--pliability", choices=[p.value for p in Pliability]
    )

    # eval
    evaluate = subparsers.add_parser("eval", help="Evaluate methods")
    evaluate.set_defaults(handler=cli_eval)
    evaluate.add_argument("--graph", required=True, help="Graph TSV file")
    evaluate.add_argument(
        "--scenarios", required=True, help="Folder of scenario files"
    )
    evaluate.add_argument(
        "-o", "--output", required=True, help="Output folder"
    )
    evaluate.add_argument(
        "--methods", type=_methods, help="Methods, comma-separated"
    )
    evaluate.add_argument(
        "-j", "--workers", type=int, help="Number of worker processes"
    )
    _add_explain_options(evaluate)

    # gen-grid
    grid = subparsers.add_parser("gen-grid", help="Write a synthetic grid")
    grid.set_defaults(handler=cli_gen_grid)
    grid.add_argument("--width", type=int, required=True)
    grid.add_argument("--height", type=int, required=True)
    grid.add_argument("--spacing", type=int, default=100, help="In meters")
    grid.add_argument(
        "--arterial",
        type=int,
        nargs="*",
        default=[],
        help="Indices of the arterial rows",
    )
    grid.add_argument("--seed", type=int, default=0)
    grid.add_argument("-o", "--output", help="Output TSV file")
    return parser


def main(argv=None):
    # type: (Optional[List[str]]) -> int
    """
    Entry point of the command line interface

    :param argv: Arguments (default: sys.argv)
    :return: The exit code
    """
    args = make_parser().parse_args(argv)

    if args.quiet:
        level = logging.ERROR
    else:
        level = max(logging.DEBUG, logging.WARNING - 10 * args.verbose)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s"
    )

    try:
        return int(args.handler(args))
    except CertificateError as ex:
        _log.error("Internal verification failure: %s", ex)
        return int(ExitCode.VERIFICATION)
    except (PreconditionError, UnboundedError, UnreachableError) as ex:
        _log.error("Precondition failed: %s", ex)
        return int(ExitCode.PRECONDITION)
    except (GraphFormatError, ValueError) as ex:
        _log.error("Invalid input: %s", ex)
        return int(ExitCode.PARSE_ERROR)
    except (ExplainError, IOError) as ex:
        _log.error("%s", ex)
        return int(ExitCode.FAILURE)


if __name__ == "__main__":
    sys.exit(main())
