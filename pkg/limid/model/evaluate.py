#-*- coding:utf-8 -*-
""" :mod:`limid.model.evaluate`
===============================

Fixed strategy evaluation.

A policy turns its decision into a chance variable with a degenerate CPT.
With every decision fixed, the diagram is a Bayesian network and the
expected utility is the utility part of the full marginal of the
product of all valuations:

>>> from limid.generators.urn import gen_urn
>>> diagram = gen_urn(1, variant=1)
>>> from limid.model import Strategy, Policy
>>> add = Strategy([Policy("D1", [], [], [0])])
>>> expected_utility(diagram, add)
0.0
>>> remove = Strategy([Policy("D1", [], [], [1])])
>>> round(expected_utility(diagram, remove), 12)
0.333333333333
"""
from __future__ import unicode_literals
from functools import reduce

import logging

import numpy as np

from limid.exceptions import StructureError
from limid.model import DECISION
from limid.model.factor import Factor, product_all
from limid.valuation import Valuation, combine, eliminate

_logger = logging.getLogger("limid.model.evaluate")


def policy_to_factor(policy, diagram):
    """ Degenerate CPT of a policy, over the decision's family.

    >>> from limid.generators.urn import gen_urn
    >>> from limid.model import Policy
    >>> diagram = gen_urn(2, variant=2)
    >>> diagram.parents("D2")
    ('D1',)
    >>> policy = Policy("D2", ["D1"], [2], [1, 0])
    >>> policy_to_factor(policy, diagram).flat
    [0.0, 1.0, 1.0, 0.0]
    """
    decision = policy.decision
    parents = diagram.parents(decision)
    if diagram[decision].kind != DECISION or policy.parents != parents:
        raise StructureError("Policy over %r does not match decision '%s' with parents %r"
                             % (policy.parents, decision, parents))
    card = diagram.card(decision)
    table = np.zeros((len(policy.choices), card))
    table[np.arange(len(policy.choices)), policy.choices] = 1.
    return Factor(parents + (decision,), diagram.parent_cards(decision) + (card,), table)


def joint_distribution(diagram, strategy):
    """ p_s, the product of all CPTs and policy factors, over the chance and
    decision variables in declaration order """
    strategy.check(diagram)
    factors = [diagram.cpts[vid] for vid in diagram.chance]
    factors += [policy_to_factor(strategy[vid], diagram) for vid in diagram.decisions]
    joint = product_all(factors)
    return joint.reorder([vid for vid in diagram.ids if vid in joint])


def strategy_valuation(diagram, strategy):
    """ The empty scope valuation (p, E_s) obtained by eliminating every
    chance and decision variable under a fixed strategy """
    strategy.check(diagram)
    valuations = [Valuation.probability(diagram.cpts[vid]) for vid in diagram.chance]
    valuations += [Valuation.probability(policy_to_factor(strategy[vid], diagram))
                   for vid in diagram.decisions]
    valuations += [Valuation.utility(diagram.utilities[vid]) for vid in diagram.values]
    return eliminate_all(valuations)


def expected_utility(diagram, strategy):
    """ Expected utility of `strategy`, by variable elimination """
    return strategy_valuation(diagram, strategy).u[()]


def eliminate_all(valuations):
    """ Combine a list of valuations and marginalize to the empty scope.

    Variables are eliminated greedily, smallest bucket domain first.
    """
    pool = list(valuations)
    cards = {}
    for val in pool:
        cards.update(zip(val.scope, val.cards))
    remaining = sorted(cards)
    while remaining:
        def cost(var):
            scope = set()
            for val in pool:
                if var in val.scope:
                    scope.update(val.scope)
            return int(np.prod([cards[v] for v in scope], dtype=np.int64))
        var = min(remaining, key=cost)
        remaining.remove(var)
        bucket = [val for val in pool if var in val.scope]
        pool = [val for val in pool if var not in val.scope]
        pool.append(eliminate(reduce(combine, bucket), [var]))
    return reduce(combine, pool, Valuation.identity())
