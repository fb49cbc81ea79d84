#-*- coding:utf-8 -*-
""" :mod:`limid.preprocess`
===========================

Diagram reductions that keep the maximum expected utility: barren node
removal, nonrequisite arc removal, and affine utility scaling.

On the urn game where each player sees the previous decision and the
current urn, the previous decision is useless information:

>>> from limid.generators.urn import gen_urn
>>> diagram = gen_urn(3, variant=5)
>>> sorted(nonrequisite_arcs(diagram))
[('D1', 'D2'), ('D2', 'D3')]
>>> minimal = minimize(diagram)
>>> [minimal.parents(d) for d in minimal.decisions]
[('X0',), ('X1',), ('X2',)]
"""
from __future__ import unicode_literals

import logging

import numpy as np

from reliure import Optionable
from reliure.types import Boolean

from limid.exceptions import StructureError
from limid.model import Policy, Strategy
from limid.model.factor import Factor

_logger = logging.getLogger("limid.preprocess")


def find_barren(diagram):
    """ Chance and decision variables without children.

    >>> from limid.generators.urn import gen_urn
    >>> find_barren(gen_urn(2, variant=1))
    set()
    """
    return set(vid for vid in diagram.chance + diagram.decisions if not diagram.children(vid))


def is_d_separated(diagram, xs, ys, ws):
    """ True iff every trail between a node of `xs` and a node of `ys` is
    blocked by `ws`.

    A trail is active when every collider on it is in `ws` or has a
    descendant in `ws`, and no other node of the trail is in `ws`.
    Reachability follows the directed ball passing scheme: a node is
    entered either from a child (going up) or from a parent (going down).

    >>> from limid.generators.urn import gen_urn
    >>> diagram = gen_urn(3, variant=5)
    >>> is_d_separated(diagram, ["D1"], ["R"], ["D2", "X1"])
    True
    >>> is_d_separated(diagram, ["X0"], ["R"], ["D1"])
    False
    """
    xs, ys, ws = set(xs), set(ys), set(ws)
    if xs & ys:
        return False
    # ws and their ancestors: colliders in there let the ball through
    opened = set(ws)
    for vid in ws:
        opened |= diagram.ancestors(vid)
    UP, DOWN = 0, 1
    visited = set()
    stack = [(vid, UP) for vid in xs]
    while stack:
        vid, direction = stack.pop()
        if (vid, direction) in visited:
            continue
        visited.add((vid, direction))
        if vid in ys and vid not in ws:
            return False
        if direction == UP and vid not in ws:
            stack.extend((parent, UP) for parent in diagram.parents(vid))
            stack.extend((child, DOWN) for child in diagram.children(vid))
        elif direction == DOWN:
            if vid not in ws:
                stack.extend((child, DOWN) for child in diagram.children(vid))
            if vid in opened:
                stack.extend((parent, UP) for parent in diagram.parents(vid))
    return True


def nonrequisite_arcs(diagram):
    """ Arcs (X, D) into a decision D such that X is d-separated from the
    value nodes downstream of D given D and its other parents.

    >>> from limid.generators.urn import gen_urn
    >>> nonrequisite_arcs(gen_urn(2, variant=1))
    set()
    """
    found = set()
    values = set(diagram.values)
    for decision in diagram.decisions:
        parents = diagram.parents(decision)
        if not parents:
            continue
        downstream = diagram.descendants(decision) & values
        for parent in parents:
            given = (set(parents) - set([parent])) | set([decision])
            if not downstream or is_d_separated(diagram, [parent], downstream, given):
                found.add((parent, decision))
    return found


def minimize(diagram, arcs=True, barren=True):
    """ Remove nonrequisite arcs then barren nodes, until none is left. """
    current = diagram
    while True:
        removed_arcs = nonrequisite_arcs(current) if arcs else set()
        if removed_arcs:
            _logger.debug("remove nonrequisite arcs %s" % sorted(removed_arcs))
            current = current.remove(arcs=removed_arcs)
        removed_nodes = find_barren(current) if barren else set()
        if removed_nodes:
            _logger.debug("remove barren nodes %s" % sorted(removed_nodes))
            current = current.remove(variables=removed_nodes)
        if not removed_arcs and not removed_nodes:
            return current


def expand_strategy(strategy, diagram):
    """ Strategy of `diagram` from a strategy of a reduced version of it.

    Policies ignore the parents that were cut, decisions that were removed
    take their first state.

    >>> from limid.generators.urn import gen_urn
    >>> diagram = gen_urn(2, variant=5)
    >>> reduced = Strategy([Policy("D1", ["X0"], [3], [1, 0, 0]),
    ...                     Policy("D2", ["X1"], [3], [0, 1, 1])])
    >>> expand_strategy(reduced, diagram)["D2"].choices
    (0, 1, 1, 0, 1, 1)
    """
    policies = []
    for decision in diagram.decisions:
        parents = diagram.parents(decision)
        cards = diagram.parent_cards(decision)
        if decision not in strategy:
            policies.append(Policy.constant(decision, parents, cards))
            continue
        policy = strategy[decision]
        if policy.parents == parents:
            policies.append(policy)
            continue
        missing = set(policy.parents) - set(parents)
        if missing:
            raise StructureError("Policy of '%s' depends on %s which are not parents in the diagram"
                                 % (decision, ", ".join(sorted(missing))))
        positions = [parents.index(parent) for parent in policy.parents]
        choices = [policy[tuple(config[pos] for pos in positions)]
                   for config in diagram.parent_configurations(decision)]
        policies.append(Policy(decision, parents, cards, choices))
    return Strategy(policies)


class ScalingInfo(object):
    """ Utility range of a diagram before scaling.

    :param k: smallest utility entry
    :param K: largest utility entry
    :param value_count: number of value variables

    >>> ScalingInfo(-2., 6., 1).trivial
    False
    """
    def __init__(self, k, K, value_count):
        if k > K:
            raise StructureError("Invalid utility range [%r, %r]" % (k, K))
        self.k = float(k)
        self.K = float(K)
        self.value_count = int(value_count)

    @property
    def trivial(self):
        """ every strategy has the same expected utility """
        return self.k == self.K

    def __repr__(self):
        return "<ScalingInfo k=%r K=%r |V|=%d>" % (self.k, self.K, self.value_count)


def scale_utilities(diagram):
    """ Affine map of every utility to [0, 1].

    >>> from limid.model import Diagram, Variable, VALUE, DECISION
    >>> diagram = Diagram([Variable("D", DECISION, "ab"), Variable("V", VALUE)], [("D", "V")],
    ...                   utilities={"V": Factor(["D"], [2], [-2., 6.])})
    >>> scaled, info = scale_utilities(diagram)
    >>> scaled.utilities["V"].flat, info.k, info.K
    ([0.0, 1.0], -2.0, 6.0)

    When all utilities are equal the scaled utilities are zero.
    """
    values = diagram.values
    if not values:
        return diagram, ScalingInfo(0., 0., 0)
    k = min(float(diagram.utilities[vid].values.min()) for vid in values)
    K = max(float(diagram.utilities[vid].values.max()) for vid in values)
    info = ScalingInfo(k, K, len(values))
    utilities = {}
    for vid in values:
        table = diagram.utilities[vid]
        if info.trivial:
            scaled = np.zeros(table.cards)
        else:
            scaled = np.clip((table.values - k) / (K - k), 0., 1.)
        utilities[vid] = Factor(table.scope, table.cards, scaled)
    return diagram.replace(utilities=utilities), info


def unscale_meu(value, info):
    """ Expected utility of the original diagram from the scaled one.

    >>> unscale_meu(0.5, ScalingInfo(-2., 6., 1))
    2.0
    """
    return (info.K - info.k) * value + info.k * info.value_count


class Minimize(Optionable):
    """ Reduce a diagram to a minimal one.

    >>> from limid.generators.urn import gen_urn
    >>> reducer = Minimize()
    >>> len(reducer(gen_urn(4, variant=5)).arcs)
    13
    >>> len(reducer(gen_urn(4, variant=5), barren=False, arcs=False).arcs)
    16
    """
    def __init__(self, name=None):
        super(Minimize, self).__init__(name=name)
        self.add_option("arcs", Boolean(default=True, help="remove nonrequisite arcs"))
        self.add_option("barren", Boolean(default=True, help="remove barren nodes"))

    @Optionable.check
    def __call__(self, diagram, arcs=None, barren=None):
        self._logger.info("Before minimizing: |U|=%d, |A|=%d" % (len(diagram), len(diagram.arcs)))
        current = minimize(diagram, arcs=arcs, barren=barren)
        self._logger.info("After minimizing: |U|=%d, |A|=%d" % (len(current), len(current.arcs)))
        return current
