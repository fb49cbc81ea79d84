from __future__ import unicode_literals

import unittest

import numpy as np
import pytest

from limid.exceptions import StructureError
from limid.model import Variable, Diagram, Policy, Strategy, CHANCE, DECISION, VALUE, first_strategy
from limid.model.factor import Factor
from limid.model.evaluate import expected_utility
from limid.generators.urn import gen_urn
from limid.oracle import brute_force_meu, enumerate_strategies
from limid.preprocess import find_barren, is_d_separated, nonrequisite_arcs, minimize, expand_strategy
from limid.preprocess import scale_utilities, unscale_meu, ScalingInfo, Minimize

from helpers import random_suite, close


def with_barren_nodes():
    variables = [
        Variable("A", CHANCE, "xy"),
        Variable("B", CHANCE, "xy"),
        Variable("C", CHANCE, "xy"),
        Variable("D", DECISION, "lr"),
        Variable("V", VALUE),
    ]
    arcs = [("A", "B"), ("B", "C"), ("A", "D"), ("A", "V")]
    cpts = {
        "A": Factor(["A"], [2], [0.4, 0.6]),
        "B": Factor(["A", "B"], [2, 2], [0.5, 0.5, 0.1, 0.9]),
        "C": Factor(["B", "C"], [2, 2], [1., 0., 0., 1.]),
    }
    return Diagram(variables, arcs, cpts, {"V": Factor(["A"], [2], [3., 5.])})


class TestMinimize(unittest.TestCase):

    def setUp(self):
        self.diagram = with_barren_nodes()

    def test_should_find_leaves_only(self):
        assert find_barren(self.diagram) == set(["C", "D"])

    def test_should_remove_barren_chains(self):
        minimal = minimize(self.diagram)
        assert minimal.ids == ["A", "V"]
        assert minimal.arcs == [("A", "V")]

    def test_should_keep_requisite_arcs(self):
        for variant in (1, 2):
            assert nonrequisite_arcs(gen_urn(4, variant=variant)) == set()

    def test_should_cut_previous_decisions_when_the_urn_is_seen(self):
        for n in range(2, 6):
            diagram = gen_urn(n, variant=5)
            expected = set(("D%d" % (i - 1), "D%d" % i) for i in range(2, n + 1))
            assert nonrequisite_arcs(diagram) == expected
            minimal = minimize(diagram)
            assert minimal.parents("D1") == ("X0",)
            for i in range(2, n + 1):
                assert minimal.parents("D%d" % i) == ("X%d" % (i - 1),)

    def test_should_keep_the_meu(self):
        diagram = gen_urn(2, variant=5)
        minimal = minimize(diagram)
        assert close(brute_force_meu(diagram).meu, brute_force_meu(minimal).meu)

    def test_should_be_a_component(self):
        reducer = Minimize()
        assert reducer(self.diagram, barren=False, arcs=False).same_structure(self.diagram)
        assert len(reducer(self.diagram)) == 2


def test_minimize_keeps_the_meu_of_random_diagrams():
    for seed, diagram in random_suite(size=40):
        minimal = minimize(diagram)
        assert close(brute_force_meu(diagram).meu, brute_force_meu(minimal).meu), seed


def test_minimize_is_idempotent():
    for seed, diagram in random_suite(size=60, omega_d=8):
        minimal = minimize(diagram)
        assert minimize(minimal).same_structure(minimal), seed


def test_d_separation_is_symmetric():
    rng = np.random.RandomState(9)
    for seed, diagram in random_suite(size=60, omega_d=8):
        ids = list(diagram.ids)
        for _ in range(20):
            labels = rng.randint(4, size=len(ids))
            xs = [vid for vid, label in zip(ids, labels) if label == 0]
            ys = [vid for vid, label in zip(ids, labels) if label == 1]
            ws = [vid for vid, label in zip(ids, labels) if label == 2]
            assert is_d_separated(diagram, xs, ys, ws) == is_d_separated(diagram, ys, xs, ws), seed


class TestExpandStrategy(unittest.TestCase):

    def setUp(self):
        self.diagram = gen_urn(2, variant=5)
        self.minimal = minimize(self.diagram)

    def test_should_reach_the_same_value_on_the_full_diagram(self):
        best = brute_force_meu(self.minimal)
        full = expand_strategy(best.strategy, self.diagram)
        full.check(self.diagram)
        assert close(expected_utility(self.diagram, full), best.meu)

    def test_should_give_removed_decisions_their_first_state(self):
        minimal = minimize(with_barren_nodes())
        full = expand_strategy(Strategy(), with_barren_nodes())
        assert full["D"].choices == (0, 0)
        assert minimal.decisions == []

    def test_should_refuse_unknown_parents(self):
        strategy = Strategy([Policy("D2", ["X0"], [3], [0, 0, 0])])
        with pytest.raises(StructureError):
            expand_strategy(strategy, self.diagram)


class TestScaling(unittest.TestCase):

    def test_should_map_utilities_to_the_unit_interval(self):
        scaled, info = scale_utilities(with_barren_nodes())
        assert scaled.utilities["V"].flat == [0., 1.]
        assert (info.k, info.K, info.value_count) == (3., 5., 1)

    def test_should_zero_equal_utilities(self):
        diagram = gen_urn(2, variant=1)
        flat = diagram.replace(utilities={"R": Factor(["X2"], [3], [2., 2., 2.])})
        scaled, info = scale_utilities(flat)
        assert info.trivial
        assert scaled.utilities["R"].flat == [0., 0., 0.]
        assert unscale_meu(0., info) == 2.

    def test_should_reject_inverted_ranges(self):
        with pytest.raises(StructureError):
            ScalingInfo(1., 0., 1)


def test_scaling_is_affine_on_every_strategy():
    for seed, diagram in random_suite(size=20):
        scaled, info = scale_utilities(diagram)
        for count, strategy in enumerate(enumerate_strategies(diagram)):
            if count == 8:
                break
            value = unscale_meu(expected_utility(scaled, strategy), info)
            assert close(value, expected_utility(diagram, strategy), tol=1e-8), seed


def test_scaled_utilities_stay_in_the_unit_interval():
    for _, diagram in random_suite(size=20):
        scaled, _ = scale_utilities(diagram)
        for vid in scaled.values:
            values = scaled.utilities[vid].values
            assert values.min() >= 0. and values.max() <= 1.
        assert expected_utility(scaled, first_strategy(scaled)) >= 0.
