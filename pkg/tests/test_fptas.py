from __future__ import unicode_literals

import unittest

import numpy as np
import pytest

from limid.exceptions import StructureError
from limid.valuation import Valuation, ValuationSet, set_combine, maximal_set, dominates
from limid.generators.partition import gen_partition
from limid.ordering import elimination_order
from limid.preprocess import scale_utilities
from limid.lve import solve, LVESolver
from limid.oracle import brute_force_meu
from limid.fptas import ApproxConfig, ApproxSolver, ZERO_BUCKET
from limid.fptas import bucket_index, alpha_equivalent, alpha_dominated, coarsen, alpha_combine
from limid.fptas import is_covering, cardinality_bound, solve_approx

from helpers import random_suite, acceptance_suite, close


def scalars(*pairs):
    return ValuationSet.scalars(pairs)


def random_set(rng, size, scope=("A",), cards=(2,)):
    shape = (size,) + tuple(cards)
    # a few exact zeros and exact repeats
    p = np.round(rng.random_sample(shape), 2)
    u = np.round(rng.random_sample(shape), 2)
    return ValuationSet(scope, cards, p, u)


class TestBuckets(unittest.TestCase):

    def test_should_floor_the_log(self):
        assert bucket_index([0.5, 0.15, 0.1, 0.03], 10.).tolist() == [-1, -1, -1, -2]

    def test_should_snap_exact_powers(self):
        assert bucket_index([0.125, 0.25, 1., 4.], 2.).tolist() == [-3, -2, 0, 2]
        assert bucket_index([1e-3], 10.).tolist() == [-3]

    def test_should_isolate_zeros(self):
        assert bucket_index([0.], 2.).tolist() == [ZERO_BUCKET]

    def test_should_reject_bad_input(self):
        with pytest.raises(StructureError):
            bucket_index([-0.1], 2.)
        with pytest.raises(StructureError):
            bucket_index([0.5], 1.)


class TestApproxConfig(unittest.TestCase):

    def test_should_derive_alpha_from_the_variable_count(self):
        config = ApproxConfig(0.2, 10)
        assert close(config.alpha, 1.01)

    def test_should_reject_bad_epsilon(self):
        for epsilon in (0., -1., float("inf"), float("nan")):
            with pytest.raises(StructureError):
                ApproxConfig(epsilon, 3)


class TestCoarsen(unittest.TestCase):

    def setUp(self):
        self.vset = scalars((0.5, 0.), (0.1, 0.), (0.15, 0.), (0.03, 0.))

    def test_should_keep_one_member_per_class(self):
        assert coarsen(self.vset, 10.).pairs() == [(0.03, 0.), (0.1, 0.)]

    def test_should_compare_entries_by_bucket(self):
        assert alpha_equivalent(Valuation.scalar(0.5, 0.), Valuation.scalar(0.15, 0.), 10.)
        assert not alpha_equivalent(Valuation.scalar(0.1, 0.), Valuation.scalar(0.03, 0.), 10.)
        assert not alpha_equivalent(Valuation.scalar(0.1, 0.), Valuation.scalar(0.1, 0.01), 10.)

    def test_should_keep_inequivalent_members(self):
        antichain = scalars((0.9, 0.001), (0.001, 0.9))
        assert coarsen(antichain, 10.).pairs() == [(0.001, 0.9), (0.9, 0.001)]

    def test_should_cover_the_input(self):
        assert is_covering(self.vset, coarsen(self.vset, 10.), 10.)
        assert not is_covering(self.vset, scalars((0.03, 0.)), 10.)

    def test_should_combine_then_coarsen(self):
        left = scalars((0.5, 0.), (0.1, 0.))
        right = scalars((0.05, 0.), (0.4, 0.))
        combined = alpha_combine(left, right, 10.)
        assert is_covering(set_combine(left, right), combined, 10.)
        identity = ValuationSet.singleton(Valuation.identity())
        assert alpha_combine(identity, self.vset, 10.).pairs() == coarsen(self.vset, 10.).pairs()


def test_dominance_implies_alpha_dominance():
    rng = np.random.RandomState(21)
    for _ in range(500):
        phi = Valuation.scalar(rng.rand(), rng.rand())
        psi = Valuation.scalar(phi.p[()] + rng.rand(), phi.u[()] + rng.rand())
        assert dominates(psi, phi)
        for alpha in (1.001, 2., 10.):
            assert alpha_dominated(phi, psi, alpha)


def test_equivalent_valuations_alpha_dominate_each_other():
    rng = np.random.RandomState(22)
    checked = 0
    for _ in range(2000):
        alpha = 1. + rng.rand()
        vset = random_set(rng, 2)
        phi, psi = vset[0], vset[1]
        if alpha_equivalent(phi, psi, alpha):
            checked += 1
            assert alpha_dominated(phi, psi, alpha, slack=1e-12)
            assert alpha_dominated(psi, phi, alpha, slack=1e-12)
    assert checked > 0


def test_coarsen_covers_is_idempotent_and_bounded():
    rng = np.random.RandomState(23)
    for _ in range(300):
        alpha = 1. + 3. * rng.rand()
        vset = random_set(rng, 1 + rng.randint(40))
        coarse = coarsen(vset, alpha)
        assert is_covering(vset, coarse, alpha, slack=1e-12)
        assert coarsen(coarse, alpha).matrix().tolist() == coarse.matrix().tolist()
        assert len(coarse) <= cardinality_bound(vset, alpha)


def test_both_association_orders_give_square_coverings():
    rng = np.random.RandomState(24)
    for _ in range(100):
        alpha = 1. + rng.rand()
        sets = [random_set(rng, 1 + rng.randint(6), scope=(var,), cards=(2,)) for var in "ABC"]
        full = set_combine(set_combine(sets[0], sets[1]), sets[2])
        left_first = alpha_combine(alpha_combine(sets[0], sets[1], alpha), sets[2], alpha)
        right_first = alpha_combine(sets[0], alpha_combine(sets[1], sets[2], alpha), alpha)
        assert is_covering(full, left_first, alpha ** 2, slack=1e-12)
        assert is_covering(full, right_first, alpha ** 2, slack=1e-12)


def test_the_worked_example_gives_coverings_in_both_orders():
    alpha = 10.
    psi1, psi2, psi3 = scalars((1., 0.), (0.3, 0.)), scalars((0.5, 0.), (0.1, 0.)), scalars((0.05, 0.), (0.4, 0.))
    first = alpha_combine(psi1, psi2, alpha)
    assert np.allclose([p for p, _ in first.pairs()], [0.03, 0.1])
    inner = alpha_combine(psi2, psi3, alpha)
    assert np.allclose([p for p, _ in inner.pairs()], [0.005, 0.025, 0.2])
    full = set_combine(set_combine(psi1, psi2), psi3)
    for result in (alpha_combine(first, psi3, alpha), alpha_combine(psi1, inner, alpha)):
        assert is_covering(full, result, alpha ** 2, slack=1e-12)
        buckets = [tuple(row) for row in bucket_index(result.matrix(), alpha).tolist()]
        assert len(set(buckets)) == len(buckets)


class TestApproxSolver(unittest.TestCase):

    def test_should_stay_below_the_exact_value(self):
        diagram = gen_partition([2, 1, 1])
        exact = LVESolver()(diagram).meu
        for epsilon in (0.5, 0.1, 0.01):
            result = ApproxSolver()(diagram, epsilon=epsilon)
            assert result.meu <= exact + 1e-12
            assert exact <= (1. + epsilon) * result.meu + 1e-12
            assert result.stats["epsilon"] == epsilon

    def test_should_be_exact_for_tiny_epsilon(self):
        diagram = gen_partition([1, 1, 1])
        exact = LVESolver()(diagram).meu
        assert close(ApproxSolver()(diagram, epsilon=1e-9).meu, exact, tol=1e-8)

    def test_should_report_alpha(self):
        diagram = gen_partition([1, 1])
        result = solve_approx(diagram, elimination_order(diagram), 0.5)
        assert close(result.stats["alpha"], 1. + 0.5 / (2 * len(diagram)))


@pytest.mark.parametrize("epsilon", [0.1, 0.01])
def test_approximation_is_within_the_bound(epsilon):
    for seed, diagram in random_suite():
        scaled, _ = scale_utilities(diagram)
        order = elimination_order(scaled)
        exact = solve(scaled, order).meu
        approx = solve_approx(scaled, order, epsilon).meu
        assert approx <= exact + 1e-9, seed
        assert exact <= (1. + epsilon) * approx + 1e-9, seed


@pytest.mark.parametrize("epsilon", [0.1, 0.01])
def test_approximation_is_within_the_oracle_bound_at_the_acceptance_bounds(epsilon):
    for seed, diagram in acceptance_suite(40):
        scaled, _ = scale_utilities(diagram)
        exact = brute_force_meu(scaled).meu
        approx = solve_approx(scaled, elimination_order(scaled), epsilon).meu
        assert approx <= exact + 1e-9, seed
        assert exact <= (1. + epsilon) * approx + 1e-9, seed


def test_maximal_set_of_a_coarsened_set_still_covers():
    rng = np.random.RandomState(25)
    for _ in range(100):
        vset = random_set(rng, 20)
        coarse = maximal_set(coarsen(vset, 2.))
        assert is_covering(vset, coarse, 2., slack=1e-12)
