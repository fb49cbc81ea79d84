from __future__ import unicode_literals

import unittest

import pytest

from limid.exceptions import StructureError
from limid.model import Policy, Strategy, strategy_count
from limid.model.evaluate import expected_utility
from limid.generators.urn import gen_urn
from limid.oracle import brute_force_meu, enumerate_strategies
from limid.transform import make_decisions_parentless, lift_strategy, decisions_over, MakeParentless

from helpers import random_suite, close


class TestMakeParentless(unittest.TestCase):

    def setUp(self):
        self.diagram = gen_urn(3, variant=2)
        self.flat, self.tmap = make_decisions_parentless(self.diagram)

    def test_should_leave_no_decision_with_parents(self):
        assert all(not self.flat.parents(d) for d in self.flat.decisions)
        assert len(self.flat.decisions) == 3 + 2 + 2

    def test_should_keep_the_number_of_strategies(self):
        assert strategy_count(self.flat) == strategy_count(self.diagram)

    def test_should_plug_the_chain_output_in_place_of_the_decision(self):
        entry = self.tmap["D1"]
        assert entry.m == 3
        assert self.flat.parents("X1") == ("X0", entry.output)
        assert entry.output in self.flat.parents(self.tmap["D2"].chance_ids[0])

    def test_should_keep_the_meu(self):
        assert close(brute_force_meu(self.flat).meu, brute_force_meu(self.diagram).meu)

    def test_should_keep_the_value_of_every_strategy(self):
        for strategy in enumerate_strategies(self.flat):
            lifted = lift_strategy(strategy, self.tmap)
            lifted.check(self.diagram)
            assert close(expected_utility(self.flat, strategy), expected_utility(self.diagram, lifted))

    def test_should_skip_parentless_decisions(self):
        diagram = gen_urn(3, variant=1)
        flat, tmap = make_decisions_parentless(diagram)
        assert flat is diagram
        assert len(tmap) == 0

    def test_should_reject_unknown_decisions(self):
        with pytest.raises(StructureError):
            make_decisions_parentless(self.diagram, ["X1"])

    def test_should_refuse_policies_with_parents_in_the_gadget(self):
        strategy = Strategy([Policy(d, [], [], [0]) for d in self.flat.decisions])
        lift_strategy(strategy, self.tmap)
        broken = [Policy(d, [], [], [0]) for d in self.flat.decisions if d != "D1#d1"]
        with pytest.raises(StructureError):
            lift_strategy(Strategy(broken), self.tmap)

    def test_should_select_decisions_by_threshold(self):
        assert decisions_over(self.diagram, 4) == ["D1"]
        flat, tmap = MakeParentless()(self.diagram, threshold=4)
        assert list(tmap) == ["D1"]
        assert flat.parents("D2") == ("D1#x3",)


def test_transform_keeps_the_meu_of_random_diagrams():
    checked = 0
    for seed, diagram in random_suite(size=60, omega_d=8):
        if strategy_count(diagram) > 512:
            continue
        flat, tmap = make_decisions_parentless(diagram)
        best = brute_force_meu(flat)
        assert close(best.meu, brute_force_meu(diagram).meu), seed
        assert close(expected_utility(diagram, lift_strategy(best.strategy, tmap)), best.meu), seed
        checked += 1
    assert checked > 10


def test_gadget_families_grow_by_at_most_three():
    diagrams = [gen_urn(3, variant=variant) for variant in (2, 5)]
    diagrams += [diagram for _, diagram in random_suite(size=40, omega_d=8)]
    for diagram in diagrams:
        flat, tmap = make_decisions_parentless(diagram)
        for entry in tmap.entries:
            for chance_id in entry.chance_ids:
                assert len(flat.family(chance_id)) <= len(entry.parents) + 3, entry
