#-*- coding:utf-8 -*-
""" :mod:`limid.oracle`
=======================

Maximum expected utility by trying every strategy.

Slow but obviously right, the reference the solvers are tested against.

>>> from limid.generators.partition import gen_partition
>>> result = brute_force_meu(gen_partition([1, 1]))
>>> round(result.meu, 12)
0.666666666667
>>> result.stats["strategy_count"]
4
"""
from __future__ import unicode_literals
from builtins import range

import time
import logging
import itertools

from limid.exceptions import ResourceLimitError
from limid.model import Policy, Strategy, strategy_count
from limid.model.evaluate import expected_utility
from limid.lve import SolveResult

_logger = logging.getLogger("limid.oracle")

#: largest number of strategies the oracle agrees to enumerate
DEFAULT_STRATEGY_CAP = 10 ** 6


def _policies(diagram, decision):
    parents, cards = diagram.parents(decision), diagram.parent_cards(decision)
    size = len(diagram.parent_configurations(decision))
    return [Policy(decision, parents, cards, choices)
            for choices in itertools.product(range(diagram.card(decision)), repeat=size)]


def enumerate_strategies(diagram, cap=DEFAULT_STRATEGY_CAP):
    """ Every strategy of `diagram` once, in lexicographic order: decisions
    in declaration order, the first one varying slowest, and the policies
    of a decision in lexicographic order of their choices.

    :param cap: refuse diagrams with more strategies, 0 for no limit
    :raises ResourceLimitError: when the cap is exceeded

    >>> from limid.generators.urn import gen_urn
    >>> [s["D2"].choices for s in enumerate_strategies(gen_urn(2, variant=2))][:4]
    [(0, 0), (0, 1), (1, 0), (1, 1)]
    """
    count = strategy_count(diagram)
    if cap and count > cap:
        raise ResourceLimitError("%d strategies to enumerate (limit %d)" % (count, cap),
                                 stats={"strategy_count": count})
    policies = [_policies(diagram, decision) for decision in diagram.decisions]
    for combination in itertools.product(*policies):
        yield Strategy(combination)


def evaluate_strategies(diagram, cap=DEFAULT_STRATEGY_CAP):
    """ (strategy, expected utility) pairs in enumeration order """
    for strategy in enumerate_strategies(diagram, cap):
        yield strategy, float(expected_utility(diagram, strategy))


def brute_force_meu(diagram, cap=DEFAULT_STRATEGY_CAP):
    """ Best strategy by enumeration, ties keep the first one enumerated.

    :raises ResourceLimitError: when the diagram has more than `cap` strategies
    """
    start = time.time()
    best, best_value = None, None
    for strategy, value in evaluate_strategies(diagram, cap):
        if best_value is None or value > best_value:
            best, best_value = strategy, value
    stats = {
        "strategy_count": strategy_count(diagram),
        "wall_time": time.time() - start,
    }
    _logger.debug("%d strategies evaluated in %.3fs, best %r" % (stats["strategy_count"], stats["wall_time"],
                                                                best_value))
    return SolveResult(best_value, best, stats)
