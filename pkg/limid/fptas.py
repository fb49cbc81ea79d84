#-*- coding:utf-8 -*-
""" :mod:`limid.fptas`
======================

Approximate maximum expected utility with a relative guarantee.

Two nonnegative numbers are α-equivalent when they are both zero, or both
positive with the same ``floor(log_alpha(x))``. Two valuations are
α-equivalent when all their entries are. Coarsening a set keeps a single
valuation per α-equivalence class, which bounds the size of every set by a
polynomial of the input size. Running the elimination with coarsening after
every combination, with ``alpha = 1 + epsilon / (2 |U|)``, returns a value
``u`` with ``u <= MEU <= (1 + epsilon) u`` (on utilities scaled to [0, 1]).

>>> vset = ValuationSet.scalars([(0.5, 0.), (0.1, 0.), (0.15, 0.), (0.03, 0.)])
>>> coarsen(vset, 10.).pairs()
[(0.03, 0.0), (0.1, 0.0)]

>>> from limid.generators.urn import gen_urn
>>> solver = ApproxSolver()
>>> result = solver(gen_urn(3, variant=5), epsilon=0.1)
>>> result.meu <= 1. + 1e-12 and 1. <= 1.1 * result.meu
True
"""
from __future__ import unicode_literals, division

import logging

import numpy as np

from reliure import Optionable
from reliure.types import Numeric

from limid.exceptions import StructureError
from limid.valuation import ValuationSet, set_combine
from limid.lve import Propagation, LVESolver, DEFAULT_TRANSFORM_THRESHOLD

_logger = logging.getLogger("limid.fptas")

#: bucket of zero entries
ZERO_BUCKET = np.iinfo(np.int64).min
#: log ratios that close to an integer are snapped to it
SNAP_ULPS = 4


class ApproxConfig(object):
    """ Precision of an approximate run.

    :param epsilon: relative error, > 0
    :param variable_count: number of variables of the diagram (all kinds)

    >>> config = ApproxConfig(0.1, 5)
    >>> round(config.alpha, 12)
    1.01
    """
    def __init__(self, epsilon, variable_count):
        self.epsilon = float(epsilon)
        if not (np.isfinite(self.epsilon) and self.epsilon > 0):
            raise StructureError("epsilon must be a positive number, got %r" % epsilon)
        if variable_count < 1:
            raise StructureError("The diagram has no variable")
        self.alpha = 1. + self.epsilon / (2. * variable_count)

    def __repr__(self):
        return "<ApproxConfig epsilon=%r alpha=%r>" % (self.epsilon, self.alpha)


def _check_alpha(alpha):
    if not alpha > 1.:
        raise StructureError("alpha must be greater than 1, got %r" % alpha)


def bucket_index(values, alpha):
    """ ``floor(log_alpha(v))`` of every entry, :data:`ZERO_BUCKET` for zeros.

    >>> bucket_index([0.5, 0.1, 0.03, 0.], 10.).tolist()
    [-1, -1, -2, -9223372036854775808]
    >>> bucket_index([1.], 2.).tolist()
    [0]
    """
    _check_alpha(alpha)
    values = np.asarray(values, dtype=np.float64)
    if np.any(values < 0):
        raise StructureError("Can not bucket negative values")
    positive = values > 0
    ratio = np.log(np.where(positive, values, 1.)) / np.log(alpha)
    nearest = np.rint(ratio)
    snap = np.abs(ratio - nearest) <= SNAP_ULPS * np.spacing(np.maximum(np.abs(nearest), 1.))
    buckets = np.where(snap, nearest, np.floor(ratio)).astype(np.int64)
    return np.where(positive, buckets, ZERO_BUCKET)


def _rows(phi, psi):
    if sorted(phi.scope) != sorted(psi.scope):
        raise StructureError("Can not compare valuations over %r and %r" % (phi.scope, psi.scope))
    first = np.concatenate([phi.p.values.ravel(), phi.u.values.ravel()])
    second = np.concatenate([psi.p.reorder(phi.scope).values.ravel(), psi.u.reorder(phi.scope).values.ravel()])
    return first, second


def alpha_equivalent(phi, psi, alpha):
    """ True when every entry of both parts of `phi` and `psi` falls in the
    same bucket.

    >>> from limid.valuation import Valuation
    >>> alpha_equivalent(Valuation.scalar(0.5, 0.), Valuation.scalar(0.15, 0.), 10.)
    True
    >>> alpha_equivalent(Valuation.scalar(0.1, 0.), Valuation.scalar(0.03, 0.), 10.)
    False
    """
    first, second = _rows(phi, psi)
    return bool(np.array_equal(bucket_index(first, alpha), bucket_index(second, alpha)))


def alpha_dominated(phi, psi, alpha, slack=0.):
    """ True when ``p <= alpha q`` and ``u <= alpha v`` entrywise, for
    ``phi = (p, u)`` and ``psi = (q, v)``; `slack` is a relative tolerance """
    _check_alpha(alpha)
    first, second = _rows(phi, psi)
    return bool(np.all(first <= alpha * second * (1. + slack)))


def coarsen(vset, alpha):
    """ One valuation per α-equivalence class of `vset`.

    The representative of a class is its first member in canonical order
    (smallest probability table, then smallest utility table) and the
    result lists the representatives in canonical order, so coarsening is
    idempotent.
    """
    _check_alpha(alpha)
    if len(vset) <= 1:
        return vset
    order = vset.canonical_order()
    buckets = bucket_index(vset.matrix()[order], alpha)
    _, first = np.unique(buckets, axis=0, return_index=True)
    return vset.take(order[np.sort(first)])


def alpha_combine(left, right, alpha):
    """ coarsened combination of two sets

    >>> left = ValuationSet.scalars([(0.5, 0.), (0.1, 0.)])
    >>> right = ValuationSet.scalars([(0.5, 0.), (1., 0.)])
    >>> alpha_combine(left, right, 10.).pairs()
    [(0.05, 0.0), (0.1, 0.0)]
    """
    return coarsen(set_combine(left, right), alpha)


def is_covering(vset, cover, alpha, slack=0.):
    """ True when every member of `vset` is α-dominated by a member of `cover` """
    _check_alpha(alpha)
    if len(vset) == 0:
        return True
    if len(cover) == 0:
        return False
    cover = cover.reorder(vset.scope)
    rows, bounds = vset.matrix(), alpha * cover.matrix() * (1. + slack)
    covered = np.all(rows[:, None, :] <= bounds[None, :, :], axis=2)
    return bool(np.all(np.any(covered, axis=1)))


def cardinality_bound(vset, alpha):
    """ Largest possible size of ``coarsen(vset, alpha)``.

    Every entry falls in one of the buckets between the smallest positive
    entry ``t`` and the largest entry, plus the zero bucket when some entry
    is zero. For entries in ``(0, 1]`` that is ``1 - floor(log_alpha(t))``
    buckets per entry, and the bound is that number to the power of the
    number of entries of both parts.

    >>> cardinality_bound(ValuationSet.scalars([(0.5, 0.2), (0.1, 1.)]), 10.)
    4
    """
    _check_alpha(alpha)
    rows = vset.matrix()
    if rows.size == 0:
        return 1
    positive = rows[rows > 0]
    levels = 1 if np.any(rows == 0) else 0
    if positive.size:
        buckets = bucket_index(positive, alpha)
        levels += int(max(buckets.max(), 0) - buckets.min()) + 1
    return max(levels, 1) ** (2 * vset.domain_size)


def solve_approx(diagram, order, epsilon, max_set_size=0, timeout=0., on_step=None,
                 max_policies=DEFAULT_TRANSFORM_THRESHOLD):
    """ Approximate maximum expected utility of a diagram with utilities in
    [0, 1]: the returned value is at most the maximum expected utility and
    at least that maximum divided by ``1 + epsilon``.

    The loop is the exact one with every pairwise combination coarsened.

    >>> from limid.generators.urn import gen_urn
    >>> from limid.ordering import min_fill_order
    >>> diagram = gen_urn(1, variant=1)
    >>> result = solve_approx(diagram, min_fill_order(diagram), 0.1)
    >>> result.meu <= 1. / 3 + 1e-12 and 1. / 3 <= 1.1 * result.meu, result.stats["epsilon"]
    (True, 0.1)
    """
    config = ApproxConfig(epsilon, len(diagram))
    alpha = config.alpha
    propagation = Propagation(lambda vset: coarsen(vset, alpha), max_set_size, timeout,
                              on_step, max_policies)
    _logger.debug("approximate run with %r" % config)
    result = propagation.run(diagram, order)
    result.stats["width"] = getattr(order, "width", 0)
    result.stats["epsilon"] = config.epsilon
    result.stats["alpha"] = alpha
    return result


class ApproxSolver(LVESolver):
    """ Approximate solver component, same pipeline as :class:`LVESolver`
    with coarsened propagation.

    >>> from limid.generators.partition import gen_partition
    >>> solver = ApproxSolver()
    >>> result = solver(gen_partition([1, 1]), epsilon=0.01)
    >>> 2. / 3 / 1.01 <= result.meu <= 2. / 3 + 1e-12
    True
    """
    def __init__(self, name=None):
        super(ApproxSolver, self).__init__(name=name)
        self.add_option("epsilon", Numeric(vtype=float, default=0.1, min=0.,
            help="relative error of the approximation"))

    def propagate(self, scaled, order, max_set_size, timeout, max_policies, epsilon=0.1, **kwargs):
        return solve_approx(scaled, order, epsilon, max_set_size=max_set_size, timeout=timeout,
                            max_policies=max_policies)

    @Optionable.check
    def __call__(self, diagram, epsilon=None, ordering=None, minimize=None, transform=None,
                 transform_threshold=None, max_set_size=None, timeout=None):
        self._logger.info("Approximate solve, epsilon=%r" % epsilon)
        result = self.pipeline(diagram, ordering, minimize, transform, transform_threshold, max_set_size,
                               timeout, epsilon=epsilon)
        result.stats["epsilon"] = float(epsilon)
        return result
