from __future__ import unicode_literals

import unittest

import numpy as np
import pytest

from limid.exceptions import StructureError, NormalizationError
from limid.model import Variable, Diagram, Policy, Strategy, CHANCE, DECISION, VALUE
from limid.model import first_strategy, strategy_count, diagram_summary
from limid.model.factor import Factor, factor_product, factor_sum, sum_marginal
from limid.model.evaluate import expected_utility, joint_distribution, policy_to_factor
from limid.generators.urn import gen_urn

from helpers import random_suite, close


def two_stage():
    """ a test, then a treatment decision knowing the test result """
    variables = [
        Variable("S", CHANCE, ["healthy", "sick"]),
        Variable("T", CHANCE, ["neg", "pos"]),
        Variable("D", DECISION, ["wait", "treat"]),
        Variable("V", VALUE),
    ]
    arcs = [("S", "T"), ("T", "D"), ("S", "V"), ("D", "V")]
    cpts = {
        "S": Factor(["S"], [2], [0.9, 0.1]),
        "T": Factor(["S", "T"], [2, 2], [0.95, 0.05, 0.2, 0.8]),
    }
    utilities = {"V": Factor(["S", "D"], [2, 2], [10., 8., 0., 6.])}
    return Diagram(variables, arcs, cpts, utilities)


class TestFactor(unittest.TestCase):

    def setUp(self):
        self.f = Factor(["A", "B"], [2, 3], np.arange(6.))
        self.g = Factor(["B"], [3], [1., 2., 3.])

    def test_should_multiply_over_the_union_scope(self):
        prod = factor_product(self.f, self.g)
        assert prod.scope == ("A", "B")
        assert prod.flat == [0., 2., 6., 3., 8., 15.]

    def test_should_add_over_the_union_scope(self):
        total = factor_sum(self.g, Factor(["A"], [2], [10., 20.]))
        assert total.scope == ("B", "A")
        assert total.reorder(["A", "B"]).flat == [11., 12., 13., 21., 22., 23.]

    def test_should_sum_out_variables(self):
        assert sum_marginal(self.f, ["B"]).flat == [3., 12.]
        assert sum_marginal(self.f, ["A", "B"]).flat == [15.]

    def test_should_reject_wrong_sizes(self):
        with pytest.raises(StructureError):
            Factor(["A"], [2], [1., 2., 3.])
        with pytest.raises(StructureError):
            factor_product(self.f, Factor(["B"], [2], [1., 1.]))

    def test_should_be_immutable(self):
        with pytest.raises(ValueError):
            self.f.values[0, 0] = 1.


class TestDiagram(unittest.TestCase):

    def setUp(self):
        self.diagram = two_stage()

    def test_should_classify_variables(self):
        assert self.diagram.chance == ["S", "T"]
        assert self.diagram.decisions == ["D"]
        assert self.diagram.values == ["V"]
        assert self.diagram.family("T") == ("S", "T")

    def test_should_reject_the_separator_in_state_labels(self):
        with pytest.raises(StructureError):
            Variable("X", CHANCE, ["a,b", "c"])

    def test_should_count_policies_exactly(self):
        assert self.diagram.policy_count("D") == 4
        big = gen_urn(40, variant=2)
        assert strategy_count(big) == 2 ** 3 * 4 ** 39

    def test_should_reject_cycles(self):
        variables = [Variable("A", CHANCE, "ab"), Variable("B", CHANCE, "ab")]
        cpts = {"A": Factor(["B", "A"], [2, 2], [.5] * 4), "B": Factor(["A", "B"], [2, 2], [.5] * 4)}
        with pytest.raises(StructureError):
            Diagram(variables, [("A", "B"), ("B", "A")], cpts)

    def test_should_reject_value_children(self):
        variables = [Variable("V", VALUE), Variable("A", CHANCE, "ab")]
        with pytest.raises(StructureError):
            Diagram(variables, [("V", "A")], {"A": Factor(["A"], [2], [.5, .5])}, {"V": Factor.constant(0.)})

    def test_should_name_the_unnormalized_configuration(self):
        cpts = dict(self.diagram.cpts)
        cpts["T"] = Factor(["S", "T"], [2, 2], [0.95, 0.05, 0.2, 0.7])
        with pytest.raises(NormalizationError) as err:
            self.diagram.replace(cpts=cpts)
        assert err.value.variable == "T"
        assert err.value.configuration == ("sick",)

    def test_should_accept_unnormalized_tables_when_not_strict(self):
        cpts = dict(self.diagram.cpts)
        cpts["T"] = Factor(["S", "T"], [2, 2], [1., 1., 1., 1.])
        loose = self.diagram.replace(cpts=cpts, strict_normalization=False)
        assert not loose.strict_normalization

    def test_should_reject_missing_tables(self):
        with pytest.raises(StructureError):
            Diagram(self.diagram.variables, self.diagram.arcs, {"S": self.diagram.cpts["S"]},
                    self.diagram.utilities)

    def test_should_reorder_tables_to_the_family(self):
        cpts = dict(self.diagram.cpts)
        cpts["T"] = self.diagram.cpts["T"].reorder(["T", "S"])
        again = self.diagram.replace(cpts=cpts)
        assert again.cpts["T"].scope == ("S", "T")
        assert again.same_structure(self.diagram)

    def test_should_summarize(self):
        summary = diagram_summary(self.diagram)
        assert summary["strategy_count"] == 4
        assert summary["omega_d"] == 4
        assert summary["omega_c"] == 4


class TestPolicy(unittest.TestCase):

    def test_should_index_parent_configurations_last_fastest(self):
        policy = Policy("D", ["A", "B"], [2, 3], [0, 1, 2, 0, 1, 2])
        assert policy[(1, 2)] == 2
        assert policy[(0, 1)] == 1

    def test_should_build_from_a_total_table(self):
        policy = Policy.from_table("D", ["A"], [2], {(0,): 1, (1,): 0})
        assert policy.choices == (1, 0)
        with pytest.raises(StructureError):
            Policy.from_table("D", ["A"], [2], {(0,): 1})

    def test_should_check_a_strategy_against_a_diagram(self):
        diagram = two_stage()
        with pytest.raises(StructureError):
            Strategy([Policy("D", [], [], [0])]).check(diagram)
        with pytest.raises(StructureError):
            Strategy([]).check(diagram)
        first_strategy(diagram).check(diagram)

    def test_should_reject_negative_choices(self):
        diagram = two_stage()
        with pytest.raises(StructureError):
            Strategy([Policy("D", ["T"], [2], [0, -1])]).check(diagram)

    def test_should_give_a_degenerate_cpt(self):
        diagram = two_stage()
        factor = policy_to_factor(Policy("D", ["T"], [2], [0, 1]), diagram)
        assert factor.scope == ("T", "D")
        assert factor.flat == [1., 0., 0., 1.]


class TestEvaluate(unittest.TestCase):

    def setUp(self):
        self.diagram = two_stage()

    def test_should_evaluate_a_fixed_strategy(self):
        treat_if_positive = Strategy([Policy("D", ["T"], [2], [0, 1])])
        # healthy: 0.9 * (0.95 * 10 + 0.05 * 8), sick: 0.1 * (0.2 * 0 + 0.8 * 6)
        expected = 0.9 * (0.95 * 10 + 0.05 * 8) + 0.1 * 0.8 * 6
        assert abs(expected_utility(self.diagram, treat_if_positive) - expected) < 1e-12

    def test_should_build_a_normalized_joint(self):
        joint = joint_distribution(self.diagram, first_strategy(self.diagram))
        assert joint.scope == ("S", "T", "D")
        assert abs(joint.values.sum() - 1.) < 1e-12

    def test_should_evaluate_diagrams_without_decisions(self):
        variables = [Variable("A", CHANCE, "ab"), Variable("V", VALUE)]
        diagram = Diagram(variables, [("A", "V")], {"A": Factor(["A"], [2], [0.25, 0.75])},
                          {"V": Factor(["A"], [2], [4., 8.])})
        assert expected_utility(diagram, Strategy()) == 7.


FACTOR_CARDS = {"A": 2, "B": 3, "C": 2, "E": 4}


def random_factor(rng, scope):
    cards = [FACTOR_CARDS[var] for var in scope]
    return Factor(scope, cards, rng.random_sample(int(np.prod(cards, dtype=np.int64))))


def random_scope(rng):
    return [var for var in sorted(FACTOR_CARDS) if rng.rand() < 0.5]


def test_factor_product_is_commutative_and_associative():
    rng = np.random.RandomState(5)
    for _ in range(500):
        f, g, h = [random_factor(rng, random_scope(rng)) for _ in range(3)]
        assert factor_product(f, g).allclose(factor_product(g, f))
        assert factor_product(factor_product(f, g), h).allclose(factor_product(f, factor_product(g, h)))


def test_marginalization_commutes_with_products_over_other_variables():
    rng = np.random.RandomState(6)
    for _ in range(500):
        f = random_factor(rng, [var for var in ("A", "B") if rng.rand() < 0.7])
        g = random_factor(rng, [var for var in ("B", "C", "E") if rng.rand() < 0.7])
        gone = [var for var in ("C", "E") if rng.rand() < 0.7]
        assert sum_marginal(factor_product(f, g), gone).allclose(factor_product(f, sum_marginal(g, gone)))


def test_expected_utility_is_the_sum_over_the_joint_distribution():
    for seed, diagram in random_suite(size=60):
        strategy = first_strategy(diagram)
        joint = joint_distribution(diagram, strategy)
        total = sum(diagram.utilities[vid].broadcast(joint.scope) for vid in diagram.values)
        naive = float(np.sum(joint.values * total))
        assert close(expected_utility(diagram, strategy), naive), seed
