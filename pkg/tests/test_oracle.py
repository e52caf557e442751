#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Tests of the verification oracles

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

from routexplain.beans import Certificate, Explanation, FlowSolution
from routexplain.exceptions import GuardError
from routexplain.generators import grid_graph, random_digraph
from routexplain.graph import Path, WeightVector
from routexplain.model import make_explanation, make_instance
from routexplain.oracle import (
    brute_force_mip,
    enumerate_paths,
    verify_certificate,
    verify_explanation,
)
from routexplain.solver import solve_sve

# Local
from tests.helpers import arc_indices, example_instance, two_bridges_instance

# ------------------------------------------------------------------------------

# Documentation strings format
__docformat__ = "restructuredtext en"

_logger = logging.getLogger("routexplain.tests")

# ------------------------------------------------------------------------------


def count_paths(graph, source, target, visited=None):
    """
    Counts simple paths by plain recursion
    """
    if source == target:
        return 1

    visited = (visited or frozenset()) | {source}
    total = 0
    for index in graph.out_arcs(source):
        head = graph.arc(index).dst
        if head not in visited:
            total += count_paths(graph, head, target, visited)
    return total


class TestEnumeration(unittest.TestCase):
    """
    Simple path enumeration
    """

    def test_example(self):
        """
        The direct arc and three detours
        """
        inst = example_instance()
        graph = inst.graph
        paths = enumerate_paths(graph, inst.ell, inst.source, inst.target)
        self.assertEqual(
            [(path.arc_ids(graph), weight) for path, weight in paths],
            [
                (["e1", "f"], 98),
                (["e2", "f"], 98),
                (["e3", "f"], 98),
                (["e"], 100),
            ],
        )

        paths = enumerate_paths(graph, inst.upper, inst.source, inst.target)
        self.assertEqual(paths[0][0].arc_ids(graph), ["e"])

        same = enumerate_paths(graph, inst.ell, inst.source, inst.source)
        self.assertEqual(len(same), 1)
        self.assertEqual(same[0][1], 0)

    def test_guards(self):
        """
        Graphs and path counts are bounded
        """
        with self.assertRaises(GuardError):
            graph = grid_graph(4, 4)
            enumerate_paths(graph, graph.free_flow(), 0, 15)

        inst = example_instance()
        with self.assertRaises(GuardError):
            enumerate_paths(
                inst.graph, inst.ell, inst.source, inst.target, limit=2
            )

    def test_path_count(self):
        """
        Same number of paths as a plain recursive count
        """
        for seed in range(5):
            graph = random_digraph(7, 16, seed)
            weights = graph.free_flow()
            paths = enumerate_paths(graph, weights, 0, 6)
            self.assertEqual(len(paths), count_paths(graph, 0, 6))

            weights_seen = [weight for _, weight in paths]
            self.assertEqual(weights_seen, sorted(weights_seen))
            self.assertEqual(len({path.arcs for path, _ in paths}), len(paths))


class TestBruteForce(unittest.TestCase):
    """
    Exhaustive search of full raises
    """

    def test_example(self):
        """
        Raising f is the cheapest full raise
        """
        inst = example_instance()
        self.assertEqual(
            brute_force_mip(inst), (arc_indices(inst.graph, "f"), 2)
        )

    def test_two_bridges(self):
        """
        Only the north bridge can be raised: a full raise costs 800
        """
        inst = two_bridges_instance()
        self.assertEqual(
            brute_force_mip(inst),
            (arc_indices(inst.graph, "north_bridge"), 800),
        )

    def test_limits(self):
        """
        Support size limit and pliable arcs guard
        """
        inst = example_instance()
        self.assertIsNone(brute_force_mip(inst, max_support=0))

        graph = grid_graph(3, 3)
        ell = graph.free_flow()
        upper = WeightVector(graph, [2 * value for value in ell])
        big = make_instance(graph, ell, upper, Path(graph, [0]))
        with self.assertRaises(GuardError):
            brute_force_mip(big)


class TestVerification(unittest.TestCase):
    """
    Independent checks of explanations and certificates
    """

    def setUp(self):
        """
        Solves the example
        """
        self.inst = example_instance()
        self.graph = self.inst.graph
        self.expl, self.solution, self.cert = solve_sve(self.inst)

    def failed(self, report):
        """
        Names of the failed checks
        """
        return sorted(check.name for check in report.failures())

    def test_pass(self):
        """
        The solver output passes every check
        """
        report = verify_certificate(
            self.inst, self.expl, self.cert, self.solution
        )
        self.assertTrue(report.passed)
        self.assertEqual(self.failed(report), [])
        self.assertTrue(report.to_json()["passed"])
        self.assertTrue(verify_explanation(self.inst, self.expl).passed)

    def test_lowered_weight(self):
        """
        Lowering f breaks sufficiency
        """
        f = self.graph.arc_by_id("f").index
        tampered = make_explanation(
            self.expl.weights.replace({f: 50}), self.inst
        )
        report = verify_explanation(self.inst, tampered)
        self.assertEqual(self.failed(report), ["lp1.sufficiency"])

        report = verify_certificate(
            self.inst, tampered, self.cert, self.solution
        )
        self.assertIn("lp1.sufficiency", self.failed(report))
        self.assertIn("certificate.weights", self.failed(report))
        self.assertFalse(report.passed)

    def test_raised_weight(self):
        """
        Raising f above its upper weight breaks validity
        """
        f = self.graph.arc_by_id("f").index
        tampered = make_explanation(
            self.expl.weights.replace({f: 52}), self.inst
        )
        report = verify_explanation(self.inst, tampered)
        self.assertEqual(self.failed(report), ["lp1.validity"])
        self.assertEqual(report.check("lp1.validity").offenders, ["f"])

    def test_wrong_summary(self):
        """
        Support and valuation must match the weights
        """
        wrong = Explanation(
            self.expl.weights,
            3,
            arc_indices(self.graph, "e1", "f"),
            self.expl.tau,
        )
        report = verify_explanation(self.inst, wrong)
        self.assertEqual(self.failed(report), ["lp1.valuation", "support"])
        self.assertEqual(report.check("support").offenders, ["e1"])

    def test_wrong_potentials(self):
        """
        Potentials that don't match the weights are reported
        """
        cert = Certificate(self.cert.weights, (0, 40, 100), 0)
        report = verify_certificate(
            self.inst, self.expl, cert, self.solution
        )
        self.assertEqual(self.failed(report), ["lp1.potentials"])
        self.assertEqual(
            report.check("lp1.potentials").offenders, ["f"]
        )

    def test_wrong_flow(self):
        """
        A flow that isn't conserved is reported
        """
        solution = FlowSolution(
            [0, 1, 0, 0, 1], [0, 0, 1, 1, 0], [0, 0, 0, 0, 0]
        )
        report = verify_certificate(self.inst, self.expl, self.cert, solution)
        self.assertIn("lp2.conservation", self.failed(report))
        self.assertEqual(
            report.check("lp2.conservation").offenders, ["s", "t"]
        )


# ------------------------------------------------------------------------------


if __name__ == "__main__":
    # Setup logging
    logging.basicConfig(level=logging.INFO)

    # Run tests
    unittest.main()
