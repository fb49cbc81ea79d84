#-*- coding:utf-8 -*-
""" :mod:`limid.generators.urn`
===============================

The urn game: n players in turn add a ball to an urn or remove one,
without seeing the urn. Removing from an empty urn puts two balls in it,
adding to a full urn (two balls) does nothing. The reward is 1 when the
urn ends up empty.

Three information patterns are available:

* variant 1: nobody sees anything (parentless decisions),
* variant 2: each player knows the previous decision, the first one
  knows the initial urn,
* variant 5: variant 2 plus the current content of the urn.

>>> diagram = gen_urn(3, variant=5)
>>> diagram.parents("D2")
('D1', 'X1')
>>> diagram.parents("X2")
('X1', 'D2')
"""
from __future__ import unicode_literals
from builtins import range

import numpy as np

from limid.exceptions import StructureError
from limid.model import Variable, Diagram, CHANCE, DECISION, VALUE
from limid.model.factor import Factor

ADD = "add"
REMOVE = "remove"
ACTIONS = (ADD, REMOVE)
CAPACITY = 2
URN_STATES = tuple("%d" % balls for balls in range(CAPACITY + 1))
VARIANTS = (1, 2, 5)


def urn_step(balls, action):
    """ urn content after `action`

    >>> urn_step(0, REMOVE), urn_step(2, ADD), urn_step(1, ADD)
    (2, 2, 2)
    """
    if action == ADD:
        return min(balls + 1, CAPACITY)
    return balls - 1 if balls > 0 else CAPACITY


def transition_table():
    """ deterministic CPT over (previous urn, action, next urn) """
    table = np.zeros((len(URN_STATES), len(ACTIONS), len(URN_STATES)))
    for balls in range(len(URN_STATES)):
        for act, action in enumerate(ACTIONS):
            table[balls, act, urn_step(balls, action)] = 1.
    return table


def gen_urn(n, variant=1):
    """ Urn game diagram with `n` players.

    :param n: number of players (decisions)
    :param variant: information pattern, 1, 2 or 5
    """
    if n < 1:
        raise StructureError("The urn game needs at least one player")
    if variant not in VARIANTS:
        raise StructureError("Unknown urn variant %r, expected one of %r" % (variant, VARIANTS))
    variables = [Variable("X0", CHANCE, URN_STATES)]
    arcs = []
    cpts = {"X0": Factor(["X0"], [len(URN_STATES)], np.ones(len(URN_STATES)) / len(URN_STATES))}
    step = transition_table()
    for i in range(1, n + 1):
        urn, prev, decision = "X%d" % i, "X%d" % (i - 1), "D%d" % i
        variables += [Variable(decision, DECISION, ACTIONS), Variable(urn, CHANCE, URN_STATES)]
        arcs += [(prev, urn), (decision, urn)]
        cpts[urn] = Factor([prev, decision, urn], step.shape, step)
        if variant >= 2:
            if i == 1:
                arcs.append(("X0", decision))
            else:
                arcs.append(("D%d" % (i - 1), decision))
        if variant == 5 and i > 1:
            arcs.append((prev, decision))
    variables.append(Variable("R", VALUE))
    arcs.append(("X%d" % n, "R"))
    reward = np.zeros(len(URN_STATES))
    reward[0] = 1.
    utilities = {"R": Factor(["X%d" % n], [len(URN_STATES)], reward)}
    return Diagram(variables, arcs, cpts, utilities)
