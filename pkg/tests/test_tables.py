#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Evaluation tables on a 100x100 grid: closure containment, incident precision
and size ratio, and the running time of a single query.

Counts are reduced unless ROUTEXPLAIN_FULL_SUITE is set.

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
import logging
import os
import sys
import time
import unittest

# Prepare Python path to import routexplain
sys.path.insert(
    0, os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
)

from routexplain.constants import (
    DEFAULT_C0,
    ExplainMethod,
    Pliability,
    TauOption,
)
from routexplain.generators import grid_graph
from routexplain.harness import (
    NOT_AVAILABLE,
    run_closure_eval,
    run_incident_eval,
)
from routexplain.pbe import run_pbe
from routexplain.scenarios import (
    gen_closure_scenario,
    gen_incident_scenario,
    sample_query_pairs,
    scenario_instance,
)
from routexplain.solver import SveExplainer

# Local
from tests.helpers import FULL_SUITE, suite_size

# ------------------------------------------------------------------------------

# Documentation strings format
__docformat__ = "restructuredtext en"

_logger = logging.getLogger("routexplain.tests")

# ------------------------------------------------------------------------------

GRID_SIZE = 100
ARTERIAL_ROWS = (10, 30, 50, 70, 90)
GRID_SEED = 1

# Crow-flight distance band of the queries, in meters
QUERY_BAND_M = (1000, 3000)
QUERY_SEED = 7

OPTION = TauOption.SCALE_INVARIANT
BETA = 1
WORKERS = 4 if FULL_SUITE else 1

# Time allowed to explain a single query, in seconds
QUERY_TIME_LIMIT = 5.0

# Graph, query pairs and scenarios shared by the test cases
_CACHE = {}

# ------------------------------------------------------------------------------


def table_grid():
    """
    The arterial grid and its query pairs
    """
    if "grid" not in _CACHE:
        graph = grid_graph(
            GRID_SIZE, GRID_SIZE, arterial_rows=ARTERIAL_ROWS, seed=GRID_SEED
        )
        _CACHE["grid"] = graph
        _CACHE["pairs"] = sample_query_pairs(
            graph,
            QUERY_BAND_M[0],
            QUERY_BAND_M[1],
            suite_size(3, 100),
            QUERY_SEED,
        )
    return _CACHE["grid"], _CACHE["pairs"]


def closure_scenarios(k, pliability):
    """
    Closure scenarios of every query pair
    """
    key = ("closure", k, pliability)
    if key not in _CACHE:
        graph, pairs = table_grid()
        ell = graph.free_flow()
        _CACHE[key] = [
            gen_closure_scenario(
                graph,
                ell,
                source,
                target,
                k,
                pliability=pliability,
                scenario_id="closure-{0}".format(index),
                seed=QUERY_SEED,
            )
            for index, (source, target) in enumerate(pairs)
        ]
    return _CACHE[key]


def incident_scenarios(k):
    """
    Incident scenarios of every query pair, with the default penalty
    """
    key = ("incident", k)
    if key not in _CACHE:
        graph, pairs = table_grid()
        ell = graph.free_flow()
        _CACHE[key] = [
            gen_incident_scenario(
                graph,
                ell,
                source,
                target,
                k,
                gamma=(11, 10),
                scenario_id="incident-{0}".format(index),
                seed=QUERY_SEED,
            )
            for index, (source, target) in enumerate(pairs)
        ]
    return _CACHE[key]


def evaluate_closures(scenarios, method):
    """
    Runs the closure evaluation with the table settings
    """
    return run_closure_eval(
        scenarios,
        method,
        OPTION,
        DEFAULT_C0,
        beta=BETA if method == ExplainMethod.SVE else None,
        workers=WORKERS,
    )


# ------------------------------------------------------------------------------


class TestClosureTable(unittest.TestCase):
    """
    Containment of the explanations in the closed arcs
    """

    def test_few_pliable(self):
        """
        Only closures and arcs off the computed paths are pliable: the
        cheapest explanation stays in the closed arcs, and so does the
        penalty loop whenever the closed sets avoid the earlier paths
        """
        for k in (1, 9):
            scenarios = closure_scenarios(k, Pliability.FEW)
            sve = evaluate_closures(scenarios, ExplainMethod.SVE)
            pbe = evaluate_closures(scenarios, ExplainMethod.PBE)
            _logger.info(
                "FEW k=%d: SVE %s, PBE %s", k, sve.summary, pbe.summary
            )

            self.assertGreater(sve.summary["valid"], 0, k)
            self.assertEqual(sve.summary["containment_pct"], 100.0, k)
            self.assertEqual(sve.verification_failures, [], k)
            self.assertIn(
                pbe.summary["isolated_containment_pct"],
                (100.0, NOT_AVAILABLE),
                k,
            )
            if k == 1:
                # A single window is always bypassed on a grid
                self.assertEqual(
                    pbe.summary["isolated"], pbe.summary["valid"]
                )
                self.assertEqual(pbe.summary["containment_pct"], 100.0)

    def test_few_pliable_paths(self):
        """
        With isolated closed sets, the penalty loop recomputes a prefix of
        the scenario paths
        """
        for scenario in closure_scenarios(9, Pliability.FEW):
            if not scenario.valid or not scenario.isolated_closures:
                continue

            trace = run_pbe(scenario_instance(scenario, OPTION, DEFAULT_C0))
            self.assertEqual(
                trace.paths,
                scenario.paths[: len(trace.paths)],
                scenario.scenario_id,
            )
            self.assertLessEqual(
                trace.explanation.support,
                scenario.closed,
                scenario.scenario_id,
            )

    def test_all_pliable(self):
        """
        Every untouched arc is pliable: once the penalty loop runs, it
        raises every arc of the first path left by the explained one
        """
        scenarios = closure_scenarios(9, Pliability.ALL)
        for scenario in scenarios:
            if not scenario.valid:
                continue

            trace = run_pbe(scenario_instance(scenario, OPTION, DEFAULT_C0))
            if not trace.iterations:
                continue

            support = trace.explanation.support
            left = frozenset(scenario.paths[0].arcs).difference(
                scenario.path.arcs
            )
            self.assertLessEqual(left, support, scenario.scenario_id)

        sve = evaluate_closures(scenarios, ExplainMethod.SVE)
        pbe = evaluate_closures(scenarios, ExplainMethod.PBE)
        _logger.info("ALL k=9: SVE %s, PBE %s", sve.summary, pbe.summary)
        self.assertEqual(sve.verification_failures, [])
        self.assertEqual(pbe.verification_failures, [])


class TestIncidentTable(unittest.TestCase):
    """
    Precision and size of the explanations of penalized routes
    """

    def test_incidents(self):
        """
        The cheapest explanation is precise and smaller than the penalty
        loop's one
        """
        scenarios = incident_scenarios(9)
        sve = run_incident_eval(
            scenarios,
            ExplainMethod.SVE,
            OPTION,
            DEFAULT_C0,
            beta=BETA,
            workers=WORKERS,
        )
        pbe = run_incident_eval(
            scenarios, ExplainMethod.PBE, OPTION, DEFAULT_C0, workers=WORKERS
        )
        _logger.info(
            "Incidents k=9: SVE %s, PBE %s", sve.summary, pbe.summary
        )

        self.assertGreater(sve.summary["explained"], 0)
        self.assertGreaterEqual(sve.summary["precision"]["min"], 0.8)
        self.assertLess(
            sve.summary["ratio"]["50%"], pbe.summary["ratio"]["50%"]
        )
        self.assertEqual(sve.verification_failures, [])


class TestQueryTime(unittest.TestCase):
    """
    Running time of a single explanation on the full grid
    """

    def test_single_query(self):
        """
        One closure query is explained within the time limit
        """
        for scenario in closure_scenarios(9, Pliability.FEW):
            if scenario.valid:
                break
        else:
            self.skipTest("No valid scenario")

        inst = scenario_instance(scenario, OPTION, DEFAULT_C0)
        start = time.perf_counter()
        expl = SveExplainer(beta=BETA).explain(inst)
        elapsed = time.perf_counter() - start
        _logger.info("Single query: %.3f s, %s", elapsed, expl)

        self.assertLess(elapsed, QUERY_TIME_LIMIT)
        self.assertEqual(len(expl.weights), scenario.graph.num_arcs)


# ------------------------------------------------------------------------------


if __name__ == "__main__":
    # Setup logging
    logging.basicConfig(level=logging.INFO)

    # Run tests
    unittest.main()
