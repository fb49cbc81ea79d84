#-*- coding:utf-8 -*-
""" :mod:`limid.generators`
===========================

Diagram families: random diagrams following a size protocol, the urn
games, and two families built from hard problems (number partition and
CNF satisfiability) whose maximum expected utility is known in closed form.

SubModules
----------

.. toctree::

    limid.generators.protocol
    limid.generators.urn
    limid.generators.partition
    limid.generators.sat
"""
from __future__ import unicode_literals

import numpy as np


def deterministic_cpt(cards, rule):
    """ 0/1 table over a family, `rule(config)` returns the index of the
    child state with probability one for the parents configuration `config`.

    :param cards: cardinalities of the family, the child last

    >>> deterministic_cpt([2, 2], lambda config: 1 - config[0]).tolist()
    [[0.0, 1.0], [1.0, 0.0]]
    """
    cards = tuple(cards)
    table = np.zeros(cards)
    for config in np.ndindex(*cards[:-1]):
        table[config + (rule(config),)] = 1.
    return table


from limid.generators.urn import gen_urn
from limid.generators.partition import gen_partition
from limid.generators.sat import gen_sat, parse_dimacs, CNF
from limid.generators.protocol import gen_random, RandomParams, RandomDiagram
