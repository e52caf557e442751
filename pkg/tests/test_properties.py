#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Property suites: explanations of closure scenarios built by deleting single
arcs

Set ROUTEXPLAIN_FULL_SUITE=1 to run the full-size suites.

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
import unittest

# Prepare Python path to import routexplain
sys.path.insert(
    0, os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
)

from routexplain.constants import Pliability, TauOption
from routexplain.generators import grid_graph
from routexplain.graph import path_weight
from routexplain.oracle import verify_explanation
from routexplain.pbe import run_pbe
from routexplain.scenarios import (
    gen_closure_scenario,
    sample_query_pairs,
    scenario_instance,
)
from routexplain.solver import solve_sve

# Local
from tests.helpers import suite_size

# ------------------------------------------------------------------------------

# Documentation strings format
__docformat__ = "restructuredtext en"

_logger = logging.getLogger("routexplain.tests")

# ------------------------------------------------------------------------------


def deletion_scenarios(count, k, pliability, seed):
    """
    Valid closure scenarios deleting one arc per round, on 8x8 grids

    :param count: Number of query pairs
    :param k: Number of deleted arcs
    :param pliability: Pliability of the untouched arcs
    :param seed: Seed of the grid and of the queries
    :return: The valid scenarios, and the number of generated ones
    """
    graph = grid_graph(8, 8, arterial_rows=[2, 5], seed=seed)
    ell = graph.free_flow()
    scenarios = []
    for position, (source, target) in enumerate(
        sample_query_pairs(graph, 300, 1000, count, seed)
    ):
        scenario = gen_closure_scenario(
            graph,
            ell,
            source,
            target,
            k,
            hop_radius=0,
            multiplier=None,
            pliability=pliability,
            hop_filter=lambda _: 0,
            scenario_id="deletion-{0}-{1}".format(seed, position),
        )
        if scenario.valid:
            scenarios.append(scenario)
    return scenarios, count


class TestSingleDeletion(unittest.TestCase):
    """
    One deleted arc, every other arc pliable
    """

    def setUp(self):
        """
        Generates the scenarios
        """
        self.scenarios = []
        total = 0
        for seed in range(4):
            valid, count = deletion_scenarios(
                suite_size(5, 50), 1, Pliability.ALL, seed
            )
            self.scenarios.extend(valid)
            total += count

        _logger.info("%d/%d valid scenarios", len(self.scenarios), total)
        self.assertGreater(len(self.scenarios), total // 2)

    def test_support(self):
        """
        The explanation only raises arcs of the first path with the same
        simplicity weight as the deleted arc, and is contained in the
        penalty-based explanation
        """
        for option in TauOption:
            for scenario in self.scenarios:
                inst = scenario_instance(scenario, option)
                first = scenario.paths[0]
                deleted = scenario.closed_sets[0][0]
                same_tau = frozenset(
                    index
                    for index in first.arcs
                    if inst.tau[index] == inst.tau[deleted]
                )

                expl, _, _ = solve_sve(inst)
                pbe = run_pbe(inst).explanation
                message = "{0} / {1}".format(scenario.scenario_id, option)

                self.assertTrue(expl.support <= same_tau, message)
                self.assertTrue(expl.support <= pbe.support, message)
                self.assertFalse(
                    expl.support & frozenset(scenario.path.arcs), message
                )
                self.assertLessEqual(expl.valuation, pbe.valuation, message)

                pbe_arcs = frozenset(first.arcs) - frozenset(
                    scenario.path.arcs
                )
                self.assertEqual(pbe.support, pbe_arcs, message)

    def test_valuation(self):
        """
        With unit simplicity weights, the valuation is the length difference
        of the two paths
        """
        for scenario in self.scenarios:
            inst = scenario_instance(scenario, TauOption.ONE)
            expl, _, cert = solve_sve(inst)
            first, last = scenario.paths
            self.assertEqual(
                expl.valuation,
                path_weight(last, inst.ell) - path_weight(first, inst.ell),
                scenario.scenario_id,
            )
            self.assertEqual(cert.gap, 0)
            self.assertTrue(verify_explanation(inst, expl).passed)


class TestMultipleDeletions(unittest.TestCase):
    """
    Several deleted arcs, arcs of the computed paths fixed, inverse-gap
    simplicity weights
    """

    def test_support(self):
        """
        Only deleted arcs are raised, at no cost. When the penalty loop
        follows the generated paths, it raises all of them.
        """
        checked = 0
        followed = 0
        for k in range(2, 6):
            for seed in range(2):
                scenarios, _ = deletion_scenarios(
                    suite_size(5, 13), k, Pliability.FEW, 10 * k + seed
                )
                for scenario in scenarios:
                    inst = scenario_instance(scenario, TauOption.INVERSE_GAP)
                    deleted = scenario.closed
                    self.assertEqual(len(deleted), k)
                    for index in deleted:
                        self.assertEqual(inst.tau[index], 0)

                    expl, _, _ = solve_sve(inst)
                    trace = run_pbe(inst)
                    message = scenario.scenario_id

                    self.assertTrue(expl.support <= deleted, message)
                    self.assertEqual(expl.valuation, 0, message)
                    checked += 1

                    # A later deletion on an earlier path is raised early
                    if trace.paths == scenario.paths:
                        support = trace.explanation.support
                        self.assertEqual(support, deleted, message)
                        self.assertTrue(expl.support <= support, message)
                        self.assertEqual(trace.explanation.valuation, 0)
                        followed += 1

        _logger.info("%d/%d penalty loops followed", followed, checked)
        self.assertGreater(checked, 0)
        self.assertGreater(followed, 0)


# ------------------------------------------------------------------------------


if __name__ == "__main__":
    # Setup logging
    logging.basicConfig(level=logging.INFO)

    # Run tests
    unittest.main()
