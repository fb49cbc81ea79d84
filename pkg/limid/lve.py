#-*- coding:utf-8 -*-
""" :mod:`limid.lve`
====================

Exact maximum expected utility by variable elimination over sets of
valuations.

Each chance variable starts with its CPT, each decision with the set of all
its policies, each value variable with its utility. Variables are then
eliminated one at a time: the sets mentioning the variable are combined,
the variable is summed out and dominated valuations are dropped. The
valuation left with the largest utility gives the maximum expected utility,
and the policies it was built from form an optimal strategy.

>>> from limid.generators.urn import gen_urn
>>> from limid.ordering import min_fill_order
>>> diagram = gen_urn(1, variant=1)
>>> result = solve(diagram, min_fill_order(diagram))
>>> round(result.meu, 12)
0.333333333333
>>> result.strategy["D1"].choices
(1,)

The :class:`LVESolver` component chains minimization, the decision
transformation, utility scaling and the elimination itself:

>>> solver = LVESolver()
>>> result = solver(gen_urn(3, variant=5))
>>> round(result.meu, 12)
1.0
"""
from __future__ import unicode_literals
from builtins import range

import time
import logging
import itertools

import numpy as np

from reliure import Optionable
from reliure.types import Numeric, Text, Boolean

from limid.exceptions import StructureError, ResourceLimitError, SolverTimeout, NumericError
from limid.model import Policy, Strategy, first_strategy, strategy_count
from limid.model.evaluate import policy_to_factor
from limid.valuation import Valuation, ValuationSet, set_combine_reduced, set_eliminate, maximal_set
from limid.preprocess import minimize as minimize_diagram, scale_utilities, unscale_meu, expand_strategy
from limid.transform import make_decisions_parentless, lift_strategy, decisions_over, TransformMap
from limid.ordering import elimination_order, ORDERINGS, MIN_FILL

_logger = logging.getLogger("limid.lve")

#: decisions with more policies than this are replaced by parentless ones
DEFAULT_TRANSFORM_THRESHOLD = 1024


class SolveResult(object):
    """ Outcome of a solver run.

    :param meu: maximum expected utility (or its approximation)
    :param strategy: a :class:`Strategy` reaching `meu`
    :param stats: dict with ``max_set_cardinality``, ``per_step_cardinalities``
        (list of (variable, cardinality)), ``width``, ``order`` and
        ``wall_time`` (seconds)
    """
    def __init__(self, meu, strategy, stats=None):
        self.meu = float(meu)
        self.strategy = strategy
        self.stats = stats or {}

    def __repr__(self):
        return "<SolveResult meu=%r>" % self.meu

    def as_stats(self, diagram=None, epsilon=None):
        """ Statistics document of the run, `diagram` adds its strategy count """
        doc = {
            "meu": self.meu,
            "width": self.stats.get("width", 0),
            "order": list(self.stats.get("order", [])),
            "max_set_cardinality": self.stats.get("max_set_cardinality", 0),
            "per_step_cardinalities": [[var, card] for var, card in self.stats.get("per_step_cardinalities", [])],
            "wall_time_ms": 1000. * self.stats.get("wall_time", 0.),
        }
        if diagram is not None:
            doc["strategy_count"] = strategy_count(diagram)
        if epsilon is not None:
            doc["epsilon"] = float(epsilon)
        return doc


def policy_set(diagram, decision, trace=True):
    """ Set of the valuations ``(policy factor, 0)`` of every policy of
    `decision`, in lexicographic order of the choices.

    >>> from limid.generators.urn import gen_urn
    >>> len(policy_set(gen_urn(2, variant=2), "D2"))
    4
    """
    parents = diagram.parents(decision)
    cards = diagram.parent_cards(decision)
    size = len(diagram.parent_configurations(decision))
    valuations = []
    for choices in itertools.product(range(diagram.card(decision)), repeat=size):
        policy = Policy(decision, parents, cards, choices)
        valuations.append(Valuation.probability(policy_to_factor(policy, diagram),
                                                ((decision, policy),) if trace else ()))
    return ValuationSet.from_valuations(valuations)


def initialize(diagram, max_policies=DEFAULT_TRANSFORM_THRESHOLD):
    """ Initial sets of valuations, one per variable in declaration order.

    :param max_policies: refuse decisions with more policies than this,
        0 for no limit
    :raises ResourceLimitError: when a decision has too many policies
    """
    sets = []
    for var in diagram.variables:
        vid = var.id
        if vid in diagram.cpts:
            sets.append(ValuationSet.singleton(Valuation.probability(diagram.cpts[vid])))
        elif vid in diagram.utilities:
            sets.append(ValuationSet.singleton(Valuation.utility(diagram.utilities[vid])))
        else:
            count = diagram.policy_count(vid)
            if max_policies and count > max_policies:
                raise ResourceLimitError("Decision '%s' has %d policies (limit %d), "
                                         "replace it by parentless decisions first" % (vid, count, max_policies))
            sets.append(policy_set(diagram, vid))
    return sets


class Propagation(object):
    """ Elimination loop shared by the exact and approximate solvers.

    :param pair_reducer: applied to every pairwise combination of sets
    :param max_set_size: abort when a set gets bigger, 0 for no limit
    :param timeout: abort after that many seconds, 0 for no limit
    :param on_step: called with (variable, set) after each elimination
    """
    def __init__(self, pair_reducer=maximal_set, max_set_size=0, timeout=0., on_step=None,
                 max_policies=DEFAULT_TRANSFORM_THRESHOLD):
        self.pair_reducer = pair_reducer
        self.max_set_size = int(max_set_size)
        self.timeout = float(timeout)
        self.on_step = on_step
        self.max_policies = max_policies
        self.stats = {}

    def _check(self, vset, variable):
        if self.max_set_size and len(vset) > self.max_set_size:
            raise ResourceLimitError("Set of %d valuations while eliminating '%s' (limit %d)"
                                     % (len(vset), variable, self.max_set_size), stats=self.partial())
        if not (np.all(np.isfinite(vset.p)) and np.all(np.isfinite(vset.u))):
            raise NumericError("Non finite values while eliminating '%s'" % variable)

    def partial(self):
        stats = dict(self.stats)
        stats["wall_time"] = time.time() - self._start
        return stats

    def fold(self, sets, variable):
        """ combination of `sets`, smallest first """
        sets = sorted(sets, key=len)
        result = sets[0]
        for vset in sets[1:]:
            result = set_combine_reduced(result, vset, self.pair_reducer)
            self._check(result, variable)
        return result

    def run(self, diagram, order):
        self._start = time.time()
        order = list(order)
        if sorted(order) != sorted(diagram.chance + diagram.decisions):
            raise StructureError("The order must list every chance and decision variable once")
        for vid in diagram.values:
            if np.any(diagram.utilities[vid].values < 0):
                raise StructureError("Utilities of '%s' are negative, scale them first" % vid)
        pool = initialize(diagram, self.max_policies)
        self.stats = {
            "max_set_cardinality": max([len(vset) for vset in pool] or [0]),
            "per_step_cardinalities": [],
            "order": order,
        }
        for variable in order:
            if self.timeout and time.time() - self._start > self.timeout:
                raise SolverTimeout("No solution after %.3fs" % self.timeout, stats=self.partial())
            bucket = [vset for vset in pool if variable in vset.scope]
            pool = [vset for vset in pool if variable not in vset.scope]
            psi = maximal_set(set_eliminate(self.fold(bucket, variable), [variable]))
            self._check(psi, variable)
            pool.append(psi)
            self.stats["per_step_cardinalities"].append((variable, len(psi)))
            self.stats["max_set_cardinality"] = max(self.stats["max_set_cardinality"], len(psi))
            _logger.debug("eliminate %s: bucket of %d sets, |psi|=%d" % (variable, len(bucket), len(psi)))
            if self.on_step is not None:
                self.on_step(variable, psi)
        if pool:
            final = maximal_set(self.fold(pool, None))
        else:
            final = ValuationSet.singleton(Valuation.identity())
        final = final.take(final.canonical_order())
        best = int(np.argmax(final.u.reshape(len(final))))
        strategy = Strategy([policy for _, policy in final.traces[best]])
        self.stats["wall_time"] = time.time() - self._start
        return SolveResult(float(final.u.reshape(len(final))[best]), strategy, dict(self.stats))


def solve(diagram, order, max_set_size=0, timeout=0., on_step=None, max_policies=DEFAULT_TRANSFORM_THRESHOLD):
    """ Maximum expected utility of a diagram with nonnegative utilities.

    :param order: an :class:`EliminationOrder` or a list of the chance and
        decision variables
    :raises NumericError: on non finite intermediate values
    :raises ResourceLimitError: if a set exceeds `max_set_size`
    :raises SolverTimeout: if `timeout` seconds have elapsed
    """
    propagation = Propagation(maximal_set, max_set_size, timeout, on_step, max_policies)
    result = propagation.run(diagram, order)
    result.stats["width"] = getattr(order, "width", 0)
    return result


class LVESolver(Optionable):
    """ Exact solver component.

    The returned strategy is a strategy of the input diagram and the
    maximum expected utility is in the original utility scale.

    >>> from limid.generators.urn import gen_urn
    >>> solver = LVESolver()
    >>> result = solver(gen_urn(2, variant=2), ordering="rev-topo", transform_threshold=4)
    >>> round(result.meu, 12), result.strategy["D2"].parents
    (0.666666666667, ('D1',))
    """
    def __init__(self, name=None):
        super(LVESolver, self).__init__(name=name)
        self.add_option("ordering", Text(default=MIN_FILL, choices=list(ORDERINGS),
            help="elimination order heuristic"))
        self.add_option("minimize", Boolean(default=True,
            help="remove barren nodes and nonrequisite arcs first"))
        self.add_option("transform", Boolean(default=True,
            help="replace decisions with too many policies by parentless decisions"))
        self.add_option("transform_threshold", Numeric(vtype=int, default=DEFAULT_TRANSFORM_THRESHOLD, min=1,
            help="policy count above which a decision is replaced"))
        self.add_option("max_set_size", Numeric(vtype=int, default=0, min=0,
            help="abort when a set of valuations gets bigger (0: no limit)"))
        self.add_option("timeout", Numeric(vtype=float, default=0., min=0.,
            help="abort after this many seconds (0: no limit)"))

    def propagate(self, scaled, order, max_set_size, timeout, max_policies, **kwargs):
        """ run the elimination on the scaled diagram """
        return solve(scaled, order, max_set_size=max_set_size, timeout=timeout, max_policies=max_policies)

    @Optionable.check
    def __call__(self, diagram, ordering=None, minimize=None, transform=None, transform_threshold=None,
                 max_set_size=None, timeout=None):
        return self.pipeline(diagram, ordering, minimize, transform, transform_threshold, max_set_size, timeout)

    def pipeline(self, diagram, ordering, minimize, transform, transform_threshold, max_set_size, timeout,
                 **kwargs):
        """ minimize, transform, scale, order and propagate, `kwargs` go to
        :meth:`propagate` """
        start = time.time()
        work = minimize_diagram(diagram) if minimize else diagram
        self._logger.info("Solve: |U|=%d, |A|=%d" % (len(work), len(work.arcs)))
        tmap = TransformMap()
        if transform:
            work, tmap = make_decisions_parentless(work, decisions_over(work, transform_threshold))
            if len(tmap):
                self._logger.info("%d decision(s) replaced, |U|=%d" % (len(tmap), len(work)))
        scaled, info = scale_utilities(work)
        if info.trivial:
            self._logger.warning("All utilities are equal to %r, every strategy is optimal" % info.k)
            result = SolveResult(info.k * info.value_count, first_strategy(work),
                                 {"max_set_cardinality": 0, "per_step_cardinalities": [], "width": 0, "order": []})
        else:
            order = elimination_order(scaled, ordering)
            self._logger.info("Order %s of width %d" % (ordering, order.width))
            result = self.propagate(scaled, order, max_set_size, timeout, transform_threshold, **kwargs)
            result.meu = unscale_meu(result.meu, info)
        result.strategy = expand_strategy(lift_strategy(result.strategy, tmap), diagram)
        result.stats["wall_time"] = time.time() - start
        self._logger.info("MEU=%r in %.3fs" % (result.meu, result.stats["wall_time"]))
        return result

