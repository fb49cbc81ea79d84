#-*- coding:utf-8 -*-
""" :mod:`limid.valuation`
==========================

Ordered valuation algebra used by the elimination solvers.

A valuation is a pair ``(p, u)`` of nonnegative tables over the same scope:
a probability part and a utility part. Valuations combine as
``(p, u) x (q, v) = (pq, pv + qu)`` and are marginalized by summing both
parts. One valuation dominates another when both of its parts are
entrywise greater or equal.

>>> phi = Valuation.scalar(0.3, 0.)
>>> psi = Valuation.scalar(0.5, 0.)
>>> combine(phi, psi).as_pair()
(0.15, 0.0)
>>> dominates(psi, phi), dominates(phi, psi)
(True, False)

Sets of valuations over one scope are stored as stacked numpy arrays in a
:class:`ValuationSet`, so combination of two sets is a single broadcast:

>>> left = ValuationSet.scalars([(0.1, 0.), (0.03, 0.)])
>>> right = ValuationSet.scalars([(0.05, 0.), (0.4, 0.)])
>>> len(set_combine(left, right))
4
>>> maximal_set(ValuationSet.scalars([(0.2, 0.5), (0.3, 0.6), (0.1, 0.1)])).pairs()
[(0.3, 0.6)]
"""
from __future__ import unicode_literals
from builtins import range

import logging

import numpy as np

from limid.exceptions import StructureError
from limid.model.factor import Factor, union_scope, sum_marginal

_logger = logging.getLogger("limid.valuation")

#: members combined at once when a set product is reduced on the fly
DEFAULT_BLOCK_SIZE = 256


class Valuation(object):
    """ A (probability, utility) pair of factors over one scope.

    :param p: probability part
    :type p: :class:`Factor`
    :param u: utility part, over the same variables as `p`
    :param trace: tuple of (decision id, policy) pairs recording the policy
        choices this valuation was built from
    """
    def __init__(self, p, u, trace=()):
        if sorted(p.scope) != sorted(u.scope):
            raise StructureError("Probability and utility parts have different scopes: %r, %r"
                                 % (p.scope, u.scope))
        self.p = p
        self.u = u.reorder(p.scope)
        self.trace = tuple(trace)

    @classmethod
    def identity(cls):
        """ the neutral element (1, 0) """
        return cls(Factor.constant(1.), Factor.constant(0.))

    @classmethod
    def scalar(cls, p, u, trace=()):
        return cls(Factor.constant(p), Factor.constant(u), trace)

    @classmethod
    def probability(cls, factor, trace=()):
        """ (factor, 0) """
        return cls(factor, Factor.zeros(factor.scope, factor.cards), trace)

    @classmethod
    def utility(cls, factor):
        """ (1, factor) """
        return cls(Factor(factor.scope, factor.cards, np.ones(factor.cards)), factor)

    @property
    def scope(self):
        return self.p.scope

    @property
    def cards(self):
        return self.p.cards

    def as_pair(self):
        """ (p, u) floats of an empty scope valuation """
        if self.scope:
            raise StructureError("Valuation over %r is not a scalar" % (self.scope,))
        return (self.p[()], self.u[()])

    def __repr__(self):
        return "<Valuation %r>" % (self.scope,)


def combine(phi, psi):
    """ Combination ``(pq, pv + qu)``, the trace is phi's followed by psi's.

    >>> phi = Valuation(Factor(["X"], [2], [0.5, 0.25]), Factor(["X"], [2], [0., 1.]))
    >>> combine(Valuation.identity(), phi).u.flat
    [0.0, 1.0]
    """
    scope, cards = union_scope(phi.p, psi.p)
    p, u = phi.p.broadcast(scope), phi.u.broadcast(scope)
    q, v = psi.p.broadcast(scope), psi.u.broadcast(scope)
    return Valuation(Factor(scope, cards, np.broadcast_to(p * q, cards)),
                     Factor(scope, cards, np.broadcast_to(p * v + q * u, cards)),
                     phi.trace + psi.trace)


def eliminate(phi, variables):
    """ Sum `variables` out of both parts. """
    variables = set(variables) & set(phi.scope)
    if not variables:
        return phi
    return Valuation(sum_marginal(phi.p, variables), sum_marginal(phi.u, variables), phi.trace)


def dominates(psi, phi):
    """ True iff psi dominates phi: ``p <= q`` and ``u <= v`` entrywise.

    >>> dominates(Valuation.scalar(0.3, 0.6), Valuation.scalar(0.2, 0.9))
    False
    """
    if sorted(psi.scope) != sorted(phi.scope):
        raise StructureError("Can not compare valuations over %r and %r" % (psi.scope, phi.scope))
    q, v = psi.p.reorder(phi.scope).values, psi.u.reorder(phi.scope).values
    return bool(np.all(phi.p.values <= q) and np.all(phi.u.values <= v))


class ValuationSet(object):
    """ A finite set of valuations sharing one scope.

    :param scope: variable ids (axis order of the stacked tables)
    :param cards: cardinalities of the scope variables
    :param p: array of shape ``(n,) + cards``, probability parts
    :param u: array of shape ``(n,) + cards``, utility parts
    :param traces: list of n traces

    >>> vset = ValuationSet.scalars([(1., 0.), (0.3, 0.)])
    >>> len(vset), vset.scope
    (2, ())
    >>> vset[1].as_pair()
    (0.3, 0.0)
    """
    def __init__(self, scope, cards, p, u, traces=None):
        self.scope = tuple(scope)
        self.cards = tuple(int(card) for card in cards)
        p = np.asarray(p, dtype=np.float64)
        u = np.asarray(u, dtype=np.float64)
        count = p.shape[0] if p.ndim else 0
        shape = (count,) + self.cards
        self.p = p.reshape(shape)
        self.u = u.reshape(shape)
        self.traces = list(traces) if traces is not None else [()] * count
        if len(self.traces) != count:
            raise StructureError("%d traces for %d valuations" % (len(self.traces), count))

    @classmethod
    def from_valuations(cls, valuations):
        valuations = list(valuations)
        if not valuations:
            raise StructureError("Can not infer the scope of an empty list of valuations")
        first = valuations[0]
        scope, cards = first.scope, first.cards
        p = np.stack([val.p.reorder(scope).values for val in valuations])
        u = np.stack([val.u.reorder(scope).values for val in valuations])
        return cls(scope, cards, p, u, [val.trace for val in valuations])

    @classmethod
    def singleton(cls, valuation):
        return cls.from_valuations([valuation])

    @classmethod
    def scalars(cls, pairs):
        """ set of empty scope valuations from (p, u) pairs """
        pairs = np.array(pairs, dtype=np.float64).reshape(-1, 2)
        return cls((), (), pairs[:, 0], pairs[:, 1])

    def __len__(self):
        return self.p.shape[0]

    def __getitem__(self, index):
        return Valuation(Factor(self.scope, self.cards, self.p[index]),
                         Factor(self.scope, self.cards, self.u[index]),
                         self.traces[index])

    def __iter__(self):
        for index in range(len(self)):
            yield self[index]

    def __repr__(self):
        return "<ValuationSet |%d| over %r>" % (len(self), self.scope)

    @property
    def domain_size(self):
        return int(np.prod(self.cards, dtype=np.int64))

    def matrix(self):
        """ one row per member: flattened probability part then utility part """
        count = len(self)
        return np.concatenate([self.p.reshape(count, self.domain_size),
                               self.u.reshape(count, self.domain_size)], axis=1)

    def pairs(self):
        """ (p, u) floats of an empty scope set """
        if self.scope:
            raise StructureError("Set over %r is not a set of scalars" % (self.scope,))
        return [(float(p), float(u)) for p, u in zip(self.p, self.u)]

    def take(self, indexes):
        indexes = list(indexes)
        return ValuationSet(self.scope, self.cards, self.p[indexes], self.u[indexes],
                            [self.traces[i] for i in indexes])

    def canonical_order(self):
        """ member indexes sorted lexicographically by (p table, u table);
        equal tables keep their relative order """
        if len(self) == 0:
            return np.zeros(0, dtype=np.int64)
        return np.lexsort(self.matrix().T[::-1])

    def reorder(self, scope):
        """ Same set with its table axes following `scope` """
        scope = tuple(scope)
        if scope == self.scope:
            return self
        if sorted(scope) != sorted(self.scope):
            raise StructureError("Can not reorder set over %r to %r" % (self.scope, scope))
        axes = [0] + [1 + self.scope.index(var) for var in scope]
        cards = [self.cards[self.scope.index(var)] for var in scope]
        return ValuationSet(scope, cards, np.transpose(self.p, axes), np.transpose(self.u, axes), self.traces)

    def concat(self, other):
        """ members of self followed by the members of other """
        other = other.reorder(self.scope)
        return ValuationSet(self.scope, self.cards,
                            np.concatenate([self.p, other.p]), np.concatenate([self.u, other.u]),
                            self.traces + other.traces)

    def broadcast(self, scope, lead):
        """ (p, u) arrays broadcastable over `lead + scope` """
        axes = [0] + [1 + self.scope.index(var) for var in scope if var in self.scope]
        shape = list(lead) + [self.cards[self.scope.index(var)] if var in self.scope else 1
                              for var in scope]
        return (np.transpose(self.p, axes).reshape(shape),
                np.transpose(self.u, axes).reshape(shape))


def set_combine(left, right):
    """ All combinations of a member of `left` with a member of `right`, in
    row-major order (left members vary slowest).

    >>> vset = set_combine(ValuationSet.scalars([(0.1, 0.), (0.03, 0.)]),
    ...                    ValuationSet.scalars([(0.5, 0.), (1., 0.)]))
    >>> [p for p, u in vset.pairs()]
    [0.05, 0.1, 0.015, 0.03]
    """
    scope, cards = _union(left, right)
    n, m = len(left), len(right)
    p, u = left.broadcast(scope, (n, 1))
    q, v = right.broadcast(scope, (1, m))
    shape = (n * m,) + cards
    prob = np.broadcast_to(p * q, (n, m) + cards).reshape(shape)
    util = np.broadcast_to(p * v + q * u, (n, m) + cards).reshape(shape)
    traces = [tl + tr for tl in left.traces for tr in right.traces]
    return ValuationSet(scope, cards, prob, util, traces)


def set_combine_reduced(left, right, reducer, block_size=DEFAULT_BLOCK_SIZE):
    """ ``reducer(set_combine(left, right))`` computed block by block.

    `reducer` must satisfy ``r(A + B) == r(r(A) + r(B))`` for concatenated
    sets, which holds for :func:`maximal_set` and for α-coarsening.
    """
    step = max(1, block_size // max(len(right), 1))
    if len(left) <= step:
        return reducer(set_combine(left, right))
    result = None
    for start in range(0, len(left), step):
        block = reducer(set_combine(left.take(range(start, min(start + step, len(left)))), right))
        result = block if result is None else reducer(result.concat(block))
    return result


def set_eliminate(vset, variables):
    """ Marginalize every member.

    >>> vset = ValuationSet.from_valuations([
    ...     Valuation(Factor(["X"], [2], [0.25, 0.75]), Factor(["X"], [2], [0., 0.5]))])
    >>> set_eliminate(vset, ["X"]).pairs()
    [(1.0, 0.5)]
    """
    variables = set(variables)
    axes = tuple(1 + axis for axis, var in enumerate(vset.scope) if var in variables)
    if not axes:
        return vset
    keep = [axis for axis, var in enumerate(vset.scope) if var not in variables]
    return ValuationSet([vset.scope[axis] for axis in keep], [vset.cards[axis] for axis in keep],
                        vset.p.sum(axis=axes), vset.u.sum(axis=axes), vset.traces)


#: number of cells compared at once by the dominance filter
BLOCK_CELLS = 1 << 22


def _strictly_dominated(rows):
    """ mask of the rows below another row in every entry and different from it """
    count, width = rows.shape
    step = max(1, BLOCK_CELLS // max(count * width, 1))
    mask = np.zeros(count, dtype=bool)
    for start in range(0, count, step):
        block = rows[start:start + step, None, :]
        above = np.all(rows[None, :, :] >= block, axis=2) & np.any(rows[None, :, :] > block, axis=2)
        mask[start:start + step] = np.any(above, axis=1)
    return mask


def _repeated(sorted_rows):
    """ mask of the rows equal to their predecessor, rows being sorted """
    mask = np.zeros(len(sorted_rows), dtype=bool)
    mask[1:] = np.all(sorted_rows[1:] == sorted_rows[:-1], axis=1)
    return mask


def maximal_set(vset):
    """ Members that are not dominated by another member.

    Among members with identical tables the first one in canonical order
    is kept. The result lists members in canonical order.

    >>> vset = ValuationSet.scalars([(0.2, 0.9), (0.3, 0.6), (0.2, 0.9)])
    >>> maximal_set(vset).pairs()
    [(0.2, 0.9), (0.3, 0.6)]
    """
    if len(vset) <= 1:
        return vset
    order = vset.canonical_order()
    rows = vset.matrix()[order]
    distinct = ~_repeated(rows)
    order, rows = order[distinct], rows[distinct]
    return vset.take(order[~_strictly_dominated(rows)])


def is_antichain(vset):
    """ True if no member dominates another one """
    if len(vset) <= 1:
        return True
    rows = vset.matrix()
    if np.any(_repeated(rows[vset.canonical_order()])):
        return False
    return not np.any(_strictly_dominated(rows))


def _union(left, right):
    cards = dict(zip(left.scope, left.cards))
    scope = list(left.scope)
    for var, card in zip(right.scope, right.cards):
        if var not in cards:
            cards[var] = card
            scope.append(var)
        elif cards[var] != card:
            raise StructureError("Variable '%s' has %d states in one set and %d in another"
                                 % (var, cards[var], card))
    return tuple(scope), tuple(cards[var] for var in scope)
