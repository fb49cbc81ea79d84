#-*- coding:utf-8 -*-
""" :mod:`limid.generators.partition`
=====================================

Diagrams encoding the number partition problem.

The diagram is the urn chain with three states per chance variable
(``x``, ``y``, ``z``) and two per decision (``d1``, ``d2``). A strategy is a
split of the numbers: the indexes whose decision is ``d1`` form one side.
Its expected utility is ``1 - (prod_{i in I} t_i + prod_{i not in I} t_i) / 3``,
which reaches 2/3 exactly when both sides have the same sum (with
``t_i = 2 ** (-a_i / a)``, ``a`` being half the total).

>>> diagram = gen_partition([1, 1])
>>> diagram.decisions
['D1', 'D2']
>>> partition_closed_form([1, 1], [0])
0.6666666666666667
>>> round(partition_closed_form([1, 1], [0, 1]), 6)
0.583333
"""
from __future__ import unicode_literals
from builtins import range

import logging

import numpy as np

from limid.exceptions import StructureError
from limid.model import Variable, Diagram, Policy, Strategy, CHANCE, DECISION, VALUE
from limid.model.factor import Factor

_logger = logging.getLogger("limid.generators.partition")

CHAIN_STATES = ("x", "y", "z")
SIDES = ("d1", "d2")


def _check_numbers(numbers):
    numbers = [int(a) for a in numbers]
    if not numbers:
        raise StructureError("A partition diagram needs at least one number")
    if any(a <= 0 for a in numbers):
        raise StructureError("Partition numbers must be positive integers, got %r" % (numbers,))
    return numbers


def encoding_bits(numbers):
    """ number of bits of the binary encoding of `numbers`

    >>> encoding_bits([1, 1, 4])
    5
    """
    return sum(int(a).bit_length() for a in _check_numbers(numbers))


def round_up(value, bits):
    """ smallest multiple of ``2 ** -bits`` not below `value`

    Precision is capped at the one of a double.

    >>> round_up(0.3, 2)
    0.5
    """
    return float(np.ldexp(np.ceil(np.ldexp(value, bits)), -bits))


def partition_weights(numbers, idealized=True):
    """ The parameters ``t_i`` of the chain CPTs.

    Idealized weights are ``2 ** (-a_i / a)``. Otherwise each weight is
    rounded up to ``6b + 3`` bits, ``b`` being :func:`encoding_bits`.

    >>> partition_weights([2, 1, 1])
    [0.5, 0.7071067811865476, 0.7071067811865476]
    """
    numbers = _check_numbers(numbers)
    half = sum(numbers) / 2.
    weights = [2. ** (-a / half) for a in numbers]
    if not idealized:
        bits = 6 * encoding_bits(numbers) + 3
        weights = [min(round_up(t, bits), 1.) for t in weights]
    return weights


def partition_cpt(t):
    """ CPT of a chain variable over (previous state, decision, state) """
    table = np.zeros((len(CHAIN_STATES), len(SIDES), len(CHAIN_STATES)))
    x, y, z = range(len(CHAIN_STATES))
    d1, d2 = range(len(SIDES))
    table[x, d1] = (t, 0., 1. - t)
    table[y, d1] = (0., 1., 0.)
    table[z, d1] = (0., 0., 1.)
    table[x, d2] = (1., 0., 0.)
    table[y, d2] = (0., t, 1. - t)
    table[z, d2] = (0., 0., 1.)
    return table


def gen_partition(numbers, idealized=True):
    """ Partition diagram for a list of positive integers.

    :param numbers: the numbers to split
    :param idealized: use exact powers of two for the weights instead of
        their finite precision encoding
    """
    weights = partition_weights(numbers, idealized)
    states = len(CHAIN_STATES)
    variables = [Variable("X0", CHANCE, CHAIN_STATES)]
    arcs = []
    cpts = {"X0": Factor(["X0"], [states], np.ones(states) / states)}
    for i, t in enumerate(weights, 1):
        prev, decision, chain = "X%d" % (i - 1), "D%d" % i, "X%d" % i
        variables += [Variable(decision, DECISION, SIDES), Variable(chain, CHANCE, CHAIN_STATES)]
        arcs += [(prev, chain), (decision, chain)]
        cpts[chain] = Factor([prev, decision, chain], [states, len(SIDES), states], partition_cpt(t))
    last = "X%d" % len(weights)
    variables.append(Variable("R", VALUE))
    arcs.append((last, "R"))
    utilities = {"R": Factor([last], [states], [0., 0., 1.])}
    _logger.debug("partition diagram over %d numbers (idealized=%s)" % (len(weights), idealized))
    return Diagram(variables, arcs, cpts, utilities)


def partition_strategy(numbers, index_set):
    """ Strategy putting the numbers at `index_set` (0-based) on the ``d1`` side """
    chosen = set(index_set)
    return Strategy([Policy("D%d" % i, [], [], [0 if i - 1 in chosen else 1])
                     for i in range(1, len(_check_numbers(numbers)) + 1)])


def partition_closed_form(numbers, index_set, idealized=True):
    """ Expected utility of :func:`partition_strategy` ``(numbers, index_set)`` """
    weights = partition_weights(numbers, idealized)
    chosen = set(index_set)
    inside = np.prod([t for i, t in enumerate(weights) if i in chosen])
    outside = np.prod([t for i, t in enumerate(weights) if i not in chosen])
    return float(1. - (inside + outside) / 3.)


def partition_threshold(numbers):
    """ The value ``1 - r / 3`` that the maximum expected utility of the
    non idealized diagram exceeds iff an even partition exists.

    ``r`` is ``2 ** (2 ** -5b)`` rounded up to ``5b + 3`` bits.

    >>> round(partition_threshold([1, 1]), 6)
    0.666423
    """
    bits = encoding_bits(numbers)
    exponent = 2. ** (-5 * bits)
    # r = 1 + f, f computed without cancellation
    fraction = round_up(float(np.expm1(np.log(2.) * exponent)), 5 * bits + 3)
    return 1. - (1. + fraction) / 3.


def has_even_partition(numbers):
    """ subset sum check, for small inputs

    >>> has_even_partition([3, 1, 2]), has_even_partition([1, 1, 4])
    (True, False)
    """
    numbers = _check_numbers(numbers)
    total = sum(numbers)
    if total % 2:
        return False
    reachable = set([0])
    for a in numbers:
        reachable |= set(s + a for s in reachable)
    return total // 2 in reachable
