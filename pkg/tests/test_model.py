#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Tests of the explanation model: simplicity weights, validity, sufficiency
and objectives

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

import numpy as np

# Prepare Python path to import routexplain
sys.path.insert(
    0, os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
)

from routexplain.beans import FlowSolution, TauVector
from routexplain.constants import INFINITE, ExplainMethod, TauOption
from routexplain.exceptions import PreconditionError, UnreachableError
from routexplain.generators import random_digraph, random_upper
from routexplain.graph import WeightVector, distances, shortest_path
from routexplain.model import (
    check_sufficiency,
    check_u_shortest,
    check_validity,
    duality_gap,
    lp2_objective,
    make_explanation,
    make_instance,
    make_tau,
    support,
    valuation,
)
from routexplain.solver import (
    apply_modify,
    build_residual,
    check_flow,
    cycle_flow,
    find_positive_cycle,
    init_flow,
    make_nondegenerate,
)

# Local
from tests.helpers import (
    arc_indices,
    example_graph,
    example_instance,
    path_of,
    read_weights,
    suite_size,
)

# ------------------------------------------------------------------------------

# Documentation strings format
__docformat__ = "restructuredtext en"

_logger = logging.getLogger("routexplain.tests")

# ------------------------------------------------------------------------------


class TestSimplicityWeights(unittest.TestCase):
    """
    Construction of the simplicity weights
    """

    def setUp(self):
        """
        Lower and upper weights of the parallel-arc example
        """
        self.graph = example_graph()
        self.ell = self.graph.free_flow()
        self.upper = read_weights("example_k3_upper.tsv", self.graph)

    def tau(self, option, **kwargs):
        """
        Computes the simplicity weights with the given option
        """
        return list(
            make_tau(self.graph, self.ell, self.upper, option, **kwargs)
        )

    def test_options(self):
        """
        Each option on the example (e isn't pliable)
        """
        self.assertEqual(self.tau(TauOption.ONE), [0, 1, 1, 1, 1])
        self.assertEqual(
            self.tau(TauOption.INVERSE_GAP), [0, 500, 500, 500, 500]
        )
        self.assertEqual(
            self.tau(TauOption.SCALE_INVARIANT), [0, 10, 10, 10, 10]
        )
        self.assertEqual(
            self.tau(TauOption.OFFSET_INVERSE_GAP), [0, 6, 6, 6, 6]
        )

    def test_option_values(self):
        """
        Options can be given by name
        """
        tau = make_tau(self.graph, self.ell, self.upper, "inverse-gap")
        self.assertIs(tau.option, TauOption.INVERSE_GAP)
        self.assertEqual(
            tau.metadata(), {"option": "inverse-gap", "scale": 1000}
        )

        tau = make_tau(
            self.graph, self.ell, self.upper, "scale-invariant", c0=3
        )
        self.assertEqual(
            tau.metadata(), {"option": "scale-invariant", "c0": 3}
        )
        self.assertEqual(list(tau), [0, 3, 3, 3, 3])

    def test_inverse_gap_rounding(self):
        """
        Halves round up, small values are raised to 1
        """
        self.assertEqual(
            self.tau(TauOption.INVERSE_GAP, scale=5), [0, 3, 3, 3, 3]
        )
        self.assertEqual(
            self.tau(TauOption.INVERSE_GAP, scale=1), [0, 1, 1, 1, 1]
        )

    def test_infinite_upper(self):
        """
        Infinite upper weights: 0 for the inverse gap, 1 otherwise
        """
        self.upper = self.upper.replace({4: INFINITE})
        self.assertEqual(self.tau(TauOption.ONE)[4], 1)
        self.assertEqual(self.tau(TauOption.INVERSE_GAP)[4], 0)
        self.assertEqual(self.tau(TauOption.SCALE_INVARIANT)[4], 1)
        self.assertEqual(self.tau(TauOption.OFFSET_INVERSE_GAP)[4], 1)

    def test_bad_constants(self):
        """
        The constants must be positive
        """
        with self.assertRaises(PreconditionError):
            self.tau(TauOption.SCALE_INVARIANT, c0=0)
        with self.assertRaises(PreconditionError):
            self.tau(TauOption.OFFSET_INVERSE_GAP, c0=-1)
        with self.assertRaises(PreconditionError):
            self.tau(TauOption.INVERSE_GAP, scale=0)
        with self.assertRaises(ValueError):
            self.tau("nope")

        with self.assertRaises(ValueError):
            TauVector([1, -1])


class TestInstance(unittest.TestCase):
    """
    Explanation instance checks
    """

    def test_example(self):
        """
        The example: only the detour arcs are pliable
        """
        inst = example_instance()
        graph = inst.graph
        self.assertEqual(inst.source, graph.vertex("s"))
        self.assertEqual(inst.target, graph.vertex("t"))
        self.assertEqual(inst.path_arcs, arc_indices(graph, "e"))
        self.assertEqual(
            frozenset(inst.pliable_arcs()),
            arc_indices(graph, "e1", "e2", "e3", "f"),
        )
        self.assertFalse(inst.is_pliable(graph.arc_by_id("e").index))
        check_u_shortest(inst)

    def test_inconsistent_weights(self):
        """
        Upper weights below lower ones, infinite lower weights
        """
        graph = example_graph()
        ell = graph.free_flow()
        path = path_of(graph, "e")

        with self.assertRaises(PreconditionError):
            make_instance(graph, ell, WeightVector(graph, [99] * 5), path)

        with self.assertRaises(PreconditionError):
            make_instance(
                graph,
                ell.replace({1: INFINITE}),
                ell.replace({1: INFINITE}),
                path,
            )

    def test_tau_on_fixed_arc(self):
        """
        Non-pliable arcs can't have a simplicity weight
        """
        inst = example_instance()
        with self.assertRaises(PreconditionError):
            inst.with_tau(TauVector([1, 1, 1, 1, 1]))
        with self.assertRaises(PreconditionError):
            inst.with_tau(TauVector([0, 1]))

        other = inst.with_tau(TauVector([0, 2, 2, 2, 2]))
        self.assertEqual(list(other.tau), [0, 2, 2, 2, 2])

    def test_not_u_shortest(self):
        """
        The detour is longer than e under the upper weights
        """
        graph = example_graph()
        upper = read_weights("example_k3_upper.tsv", graph)
        inst = make_instance(
            graph, graph.free_flow(), upper, path_of(graph, "e1", "f")
        )
        with self.assertRaises(PreconditionError):
            check_u_shortest(inst)


class TestExplanations(unittest.TestCase):
    """
    Validity, sufficiency, valuation and support of weights
    """

    def setUp(self):
        """
        Example instance and candidate weights
        """
        self.inst = example_instance()
        self.graph = self.inst.graph

        # Raising the three parallel arcs
        self.parallel = WeightVector(self.graph, [100, 51, 51, 51, 49])

        # Raising f only
        self.single = WeightVector(self.graph, [100, 49, 49, 49, 51])

    def test_validity(self):
        """
        Weights must stay between the bounds
        """
        self.assertTrue(check_validity(self.parallel, self.inst))
        self.assertTrue(check_validity(self.single, self.inst))
        self.assertTrue(check_validity(self.inst.ell, self.inst))

        for values in (
            [100, 52, 49, 49, 49],
            [100, 48, 49, 49, 49],
            [101, 49, 49, 49, 49],
            [100, 49, 49, 49, INFINITE],
        ):
            self.assertFalse(
                check_validity(WeightVector(self.graph, values), self.inst)
            )

    def test_sufficiency(self):
        """
        The path must be a shortest path under the weights
        """
        self.assertTrue(check_sufficiency(self.parallel, self.inst))
        self.assertTrue(check_sufficiency(self.single, self.inst))
        self.assertFalse(check_sufficiency(self.inst.ell, self.inst))
        self.assertFalse(
            check_sufficiency(
                WeightVector(self.graph, [100, 50, 50, 50, 49]), self.inst
            )
        )

        with self.assertRaises(UnreachableError):
            check_sufficiency(
                WeightVector(self.graph, [INFINITE] * 5), self.inst
            )

    def test_valuation(self):
        """
        Valuation and support of both candidates
        """
        self.assertEqual(valuation(self.single, self.inst), 2)
        self.assertEqual(valuation(self.parallel, self.inst), 6)
        self.assertEqual(valuation(self.inst.ell, self.inst), 0)

        self.assertEqual(
            support(self.single, self.inst), arc_indices(self.graph, "f")
        )
        self.assertEqual(
            support(self.parallel, self.inst),
            arc_indices(self.graph, "e1", "e2", "e3"),
        )

        inst = example_instance(TauOption.INVERSE_GAP)
        self.assertEqual(valuation(self.single, inst), 1000)

    def test_make_explanation(self):
        """
        Explanations carry their method and support
        """
        expl = make_explanation(
            self.single, self.inst, ExplainMethod.PBE, iterations=3
        )
        self.assertEqual(expl.valuation, 2)
        self.assertTrue(expl.nontrivial)
        self.assertEqual(expl.support_ids(self.graph), ["f"])

        data = expl.to_json(self.graph)
        self.assertEqual(data["method"], "PBE")
        self.assertEqual(data["weights"], {"f": 51})
        self.assertEqual(data["iterations"], 3)
        self.assertEqual(data["tau"], {"option": "one"})

        trivial = make_explanation(self.inst.ell, self.inst)
        self.assertFalse(trivial.nontrivial)


class TestObjectives(unittest.TestCase):
    """
    Objectives of the formulations and their duality gap
    """

    def setUp(self):
        """
        Example instance, the zero flow and the optimal flow
        """
        self.inst = example_instance()
        self.graph = self.inst.graph
        self.zero = FlowSolution([0] * 5, [0] * 5, [0] * 5)

        # One unit around the cycle t -> s -> v -> t (e backwards, e1, f)
        self.optimal = FlowSolution(
            [-1, 1, 0, 0, 1], [1, 0, 1, 1, 0], [0, 0, 0, 0, 0]
        )
        self.weights = WeightVector(self.graph, [100, 49, 49, 49, 51])
        self.potentials = [0, 49, 100]

    def test_zero_flow(self):
        """
        Against the zero flow, the gap is the sum of tau * w
        """
        parallel = WeightVector(self.graph, [100, 51, 51, 51, 49])
        self.assertEqual(lp2_objective(self.zero, self.inst), -196)

        gap = duality_gap(parallel, [0, 0, 0], self.zero, self.inst)
        self.assertEqual(gap, 202)
        self.assertEqual(
            gap,
            valuation(parallel, self.inst)
            - lp2_objective(self.zero, self.inst),
        )

    def test_optimal_pair(self):
        """
        The optimal pair has no gap
        """
        self.assertEqual(lp2_objective(self.optimal, self.inst), 2)
        self.assertEqual(valuation(self.weights, self.inst), 2)
        self.assertEqual(
            duality_gap(
                self.weights, self.potentials, self.optimal, self.inst
            ),
            0,
        )

    def test_suboptimal_weights(self):
        """
        Raising the parallel arcs instead leaves a gap of 4
        """
        parallel = WeightVector(self.graph, [100, 51, 51, 51, 49])
        gap = duality_gap(parallel, self.potentials, self.optimal, self.inst)
        self.assertEqual(gap, 4)
        self.assertEqual(
            gap,
            valuation(parallel, self.inst)
            - lp2_objective(self.optimal, self.inst),
        )

    def test_initial_flow_gap(self):
        """
        Raising the three parallel arcs against the initial flow leaves a
        gap of twice their number
        """
        parallel = WeightVector(self.graph, [100, 51, 51, 51, 49])
        start = init_flow(self.inst)
        self.assertEqual(lp2_objective(start, self.inst), 0)
        self.assertEqual(valuation(parallel, self.inst), 6)
        self.assertEqual(
            duality_gap(parallel, [0, 51, 100], start, self.inst), 2 * 3
        )


def finite_instance(seed, option=TauOption.ONE, **kwargs):
    """
    Random digraph with finite upper weights, explaining the shortest path
    under them between two random vertices

    :return: The instance and the generator used to build it
    """
    rng = np.random.default_rng(seed)
    graph = random_digraph(12, 30, seed)
    ell = graph.free_flow()
    gaps = rng.integers(0, 7, size=graph.num_arcs)
    upper = WeightVector(
        graph, [value + int(gap) for value, gap in zip(ell, gaps)]
    )
    source, target = (
        int(x) for x in rng.choice(graph.num_vertices, size=2, replace=False)
    )
    path, _ = shortest_path(graph, upper, source, target)
    return make_instance(graph, ell, upper, path, option, **kwargs), rng


def canceling_flows(inst, limit=50):
    """
    Flow solutions visited by the cycle-canceling loop, all feasible
    """
    solution = init_flow(inst)
    result = [solution]
    for _ in range(limit):
        residual = build_residual(inst, solution)
        cycle = find_positive_cycle(residual)
        if cycle is None or cycle.unbounded:
            break

        flow = make_nondegenerate(
            residual, cycle_flow(residual, cycle, cycle.bottleneck)
        )
        solution = apply_modify(inst, solution, residual, flow)
        result.append(solution)
    return result


class TestInvariants(unittest.TestCase):
    """
    Properties of the objectives and weights on random instances
    """

    def random_cut(self, inst, rng):
        """
        Feasible cut solution: upper weights off the path, random weights
        on it, and the distances from the source
        """
        values = list(inst.upper)
        for index in inst.path.arcs:
            values[index] = int(
                rng.integers(inst.ell[index], inst.upper[index] + 1)
            )
        weights = WeightVector(inst.graph, values)
        return weights, distances(inst.graph, weights, inst.source)

    def test_gap_nonnegative(self):
        """
        Weak duality: every feasible pair has a nonnegative gap
        """
        for seed in range(suite_size(10, 100)):
            inst, rng = finite_instance(seed)
            flows = canceling_flows(inst)
            for _ in range(3):
                weights, potentials = self.random_cut(inst, rng)
                self.assertTrue(check_validity(weights, inst))
                self.assertTrue(check_sufficiency(weights, inst))
                for solution in flows:
                    check_flow(inst, solution)
                    gap = duality_gap(weights, potentials, solution, inst)
                    self.assertGreaterEqual(gap, 0, seed)

    def test_raised_arc_monotonic(self):
        """
        Raising one arc never shortens the shortest path, lengthens it by
        at most the raise, and keeps it if the arc isn't on it
        """
        for seed in range(suite_size(10, 100)):
            inst, rng = finite_instance(seed)
            graph = inst.graph
            base = inst.ell
            path, total = shortest_path(graph, base, inst.source, inst.target)

            index = int(rng.integers(0, graph.num_arcs))
            delta = int(rng.integers(1, 50))
            raised = base.replace({index: base[index] + delta})
            new_path, new_total = shortest_path(
                graph, raised, inst.source, inst.target
            )

            self.assertGreaterEqual(new_total, total, seed)
            self.assertLessEqual(new_total, total + delta, seed)
            if index not in path:
                self.assertEqual(new_path, path, seed)
                self.assertEqual(new_total, total, seed)

    def test_inverse_gap_counts_arcs(self):
        """
        With S the lcm of the gaps, raising a set of arcs to their upper
        weight costs S per arc
        """
        for seed in range(suite_size(10, 50)):
            inst, rng = finite_instance(seed)
            pliable = inst.pliable_arcs()
            scale = int(
                np.lcm.reduce(
                    [inst.upper[i] - inst.ell[i] for i in pliable]
                )
            )
            inst = make_instance(
                inst.graph,
                inst.ell,
                inst.upper,
                inst.path,
                TauOption.INVERSE_GAP,
                scale=scale,
            )

            raised = [i for i in pliable if rng.random() < 0.3]
            weights = inst.ell.replace({i: inst.upper[i] for i in raised})
            self.assertEqual(support(weights, inst), frozenset(raised))
            self.assertEqual(
                valuation(weights, inst), scale * len(raised), seed
            )

    def test_scale_invariant_unit(self):
        """
        Scale-invariant weights with C0 = 1 are the unit weights
        """
        for seed in range(suite_size(10, 50)):
            graph = random_digraph(20, 60, seed)
            ell = graph.free_flow()
            upper = random_upper(graph, ell, np.random.default_rng(seed))
            self.assertEqual(
                list(make_tau(graph, ell, upper, TauOption.ONE)),
                list(
                    make_tau(
                        graph, ell, upper, TauOption.SCALE_INVARIANT, c0=1
                    )
                ),
                seed,
            )


# ------------------------------------------------------------------------------


if __name__ == "__main__":
    # Setup logging
    logging.basicConfig(level=logging.INFO)

    # Run tests
    unittest.main()
