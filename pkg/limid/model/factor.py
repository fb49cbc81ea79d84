#-*- coding:utf-8 -*-
""" :mod:`limid.model.factor`
=============================

Tabular functions over an ordered scope of discrete variables.

A :class:`Factor` stores its values in a numpy array with one axis per scope
variable. Flattening is row-major: the *last* scope variable varies fastest,
which is the layout used by the diagram documents.

>>> f = Factor(["A", "B"], [2, 3], range(6))
>>> f.flat
[0.0, 1.0, 2.0, 3.0, 4.0, 5.0]
>>> f[1, 0]
3.0

Operations never modify their inputs:

>>> g = Factor(["B"], [3], [1., 10., 100.])
>>> factor_product(f, g).flat
[0.0, 10.0, 200.0, 3.0, 40.0, 500.0]
>>> sum_marginal(f, ["A"]).flat
[3.0, 5.0, 7.0]
"""
from __future__ import unicode_literals
from builtins import range

import numpy as np

from limid.exceptions import StructureError


class Factor(object):
    """ A real valued table over an ordered scope.

    :param scope: variable ids, in table order
    :type scope: list
    :param cards: number of states of each scope variable
    :type cards: list of int
    :param values: table values, either nested or flat (last variable fastest)

    >>> one = Factor.constant(1.)
    >>> one.scope, one.flat
    ((), [1.0])
    >>> Factor(["X"], [2], [0.3, 0.7, 0.1])
    Traceback (most recent call last):
    StructureError: Factor over ('X',) expects 2 values, got 3
    """
    def __init__(self, scope, cards, values):
        self.scope = tuple(scope)
        self.cards = tuple(int(card) for card in cards)
        if len(self.scope) != len(self.cards):
            raise StructureError("Factor scope %r and cardinalities %r differ in length"
                                 % (self.scope, self.cards))
        if len(set(self.scope)) != len(self.scope):
            raise StructureError("Factor scope %r has repeated variables" % (self.scope,))
        array = np.array(values, dtype=np.float64)
        size = int(np.prod(self.cards, dtype=np.int64))
        if array.size != size:
            raise StructureError("Factor over %r expects %d values, got %d"
                                 % (self.scope, size, array.size))
        array = array.reshape(self.cards)
        array.flags.writeable = False
        self.values = array
        self._axis = dict((var, axis) for axis, var in enumerate(self.scope))

    @classmethod
    def constant(cls, value):
        """ Factor with an empty scope """
        return cls((), (), [value])

    @classmethod
    def zeros(cls, scope, cards):
        return cls(scope, cards, np.zeros(cards))

    @property
    def flat(self):
        """ values as a python list, last scope variable varying fastest """
        return [float(val) for val in self.values.ravel()]

    @property
    def size(self):
        return self.values.size

    def card(self, var):
        return self.cards[self._axis[var]]

    def __contains__(self, var):
        return var in self._axis

    def __getitem__(self, index):
        return float(self.values[index])

    def __repr__(self):
        return "<Factor %s>" % (", ".join("%s:%d" % item for item in zip(self.scope, self.cards)) or "()")

    def cardinalities(self):
        """ variable -> number of states """
        return dict(zip(self.scope, self.cards))

    def reorder(self, scope):
        """ Same factor with its axes permuted to follow `scope`.

        >>> f = Factor(["A", "B"], [2, 3], range(6))
        >>> f.reorder(["B", "A"]).flat
        [0.0, 3.0, 1.0, 4.0, 2.0, 5.0]
        """
        scope = tuple(scope)
        if scope == self.scope:
            return self
        if sorted(scope) != sorted(self.scope):
            raise StructureError("Can not reorder factor over %r to %r" % (self.scope, scope))
        axes = [self._axis[var] for var in scope]
        return Factor(scope, [self.cards[axis] for axis in axes], np.transpose(self.values, axes))

    def rename(self, mapping):
        """ Same table with variables renamed according to `mapping` """
        return Factor([mapping.get(var, var) for var in self.scope], self.cards, self.values)

    def broadcast(self, scope, cards=None):
        """ Values as an array broadcastable over `scope`.

        Every variable of the factor must appear in `scope`, missing axes get
        a length of one.
        """
        missing = [var for var in self.scope if var not in scope]
        if missing:
            raise StructureError("Variables %r are not in the target scope" % (missing,))
        axes = [self._axis[var] for var in scope if var in self._axis]
        shape = [self.cards[self._axis[var]] if var in self._axis else 1 for var in scope]
        return np.transpose(self.values, axes).reshape(shape)

    def allclose(self, other, rtol=1e-9, atol=1e-12):
        """ Entrywise comparison, up to axis order """
        if sorted(self.scope) != sorted(other.scope):
            return False
        other = other.reorder(self.scope)
        return self.cards == other.cards and np.allclose(self.values, other.values, rtol=rtol, atol=atol)


def union_scope(*factors):
    """ Union of factor scopes, in order of first appearance, with their
    cardinalities.

    :raises StructureError: if a variable has different cardinalities

    >>> union_scope(Factor(["A"], [2], [1, 1]), Factor(["B", "A"], [3, 2], range(6)))
    (('A', 'B'), (2, 3))
    >>> union_scope(Factor(["A"], [2], [1, 1]), Factor(["A"], [3], [1, 1, 1]))
    Traceback (most recent call last):
    StructureError: Variable 'A' has 2 states in one factor and 3 in another
    """
    scope, cards = [], {}
    for factor in factors:
        for var, card in zip(factor.scope, factor.cards):
            if var not in cards:
                cards[var] = card
                scope.append(var)
            elif cards[var] != card:
                raise StructureError("Variable '%s' has %d states in one factor and %d in another"
                                     % (var, cards[var], card))
    return tuple(scope), tuple(cards[var] for var in scope)


def factor_product(f, g):
    """ Pointwise product, the scope is f's scope followed by g's new variables.

    >>> factor_product(Factor.constant(0.3), Factor.constant(0.5)).flat
    [0.15]
    """
    scope, cards = union_scope(f, g)
    return Factor(scope, cards, f.broadcast(scope) * g.broadcast(scope))


def factor_sum(f, g):
    """ Pointwise sum over the union scope.

    >>> factor_sum(Factor.constant(0.25), Factor.constant(0.5)).flat
    [0.75]
    """
    scope, cards = union_scope(f, g)
    values = np.broadcast_to(f.broadcast(scope) + g.broadcast(scope), cards)
    return Factor(scope, cards, values)


def sum_marginal(f, variables):
    """ Sum out `variables` from f. Variables outside the scope are ignored.

    >>> f = Factor(["X"], [2], [0.25, 0.75])
    >>> sum_marginal(f, ["X"]).flat
    [1.0]
    >>> sum_marginal(f, []) is f
    True
    """
    variables = set(variables)
    axes = tuple(axis for axis, var in enumerate(f.scope) if var in variables)
    if not axes:
        return f
    keep = [axis for axis in range(len(f.scope)) if axis not in axes]
    return Factor([f.scope[axis] for axis in keep], [f.cards[axis] for axis in keep],
                  f.values.sum(axis=axes))


def product_all(factors):
    """ Product of a sequence of factors, the constant 1 when empty """
    result = Factor.constant(1.)
    for factor in factors:
        result = factor_product(result, factor)
    return result


def assignments(cards):
    """ All joint states of variables with cardinalities `cards`, last fastest.

    >>> list(assignments([2, 2]))
    [(0, 0), (0, 1), (1, 0), (1, 1)]
    >>> list(assignments([]))
    [()]
    """
    return np.ndindex(*cards) if cards else iter([()])
