#-*- coding:utf-8 -*-
""" :mod:`limid.generators.protocol`
====================================

Random diagrams with bounded family domains and bounded width.

Every chance and decision variable gets 2 to 4 states. Each decision first
receives its own value child, then arcs are added one at a time, drawn
uniformly among the pairs that keep the graph acyclic, keep every family
domain under its bound and keep the greedy width estimate under the cap.
Generation stops when no pair fits.

>>> diagram = gen_random(RandomParams(d=2, c=3, seed=7))
>>> len(diagram.decisions), len(diagram.chance), len(diagram.values)
(2, 3, 4)
>>> diagram.same_structure(gen_random(RandomParams(d=2, c=3, seed=7)))
True
"""
from __future__ import unicode_literals
from builtins import range

import logging

import numpy as np

from reliure import Optionable
from reliure.types import Numeric

from limid.exceptions import StructureError
from limid.model import Variable, Diagram, CHANCE, DECISION, VALUE
from limid.model.factor import Factor
from limid.ordering import scopes_width

_logger = logging.getLogger("limid.generators.protocol")

#: cap on the greedy width estimate of generated diagrams
DEFAULT_WIDTH_CAP = 10
MIN_STATES = 2
MAX_STATES = 4


class RandomParams(object):
    """ Size of a random diagram.

    :param d: number of decisions
    :param c: number of chance variables
    :param omega_d: bound on the domain size of a decision family
    :param omega_c: bound on the domain size of a chance (or value) family
    :param width_cap: bound on the greedy width estimate
    :param seed: random seed

    The number of value variables is ``d + 2``.

    >>> RandomParams(d=0, c=1)
    Traceback (most recent call last):
    StructureError: A random diagram needs d >= 1 and c >= 1, got d=0, c=1
    """
    def __init__(self, d, c, omega_d=8, omega_c=16, width_cap=DEFAULT_WIDTH_CAP, seed=0):
        self.d, self.c = int(d), int(c)
        self.omega_d, self.omega_c = int(omega_d), int(omega_c)
        self.width_cap = int(width_cap)
        self.seed = int(seed)
        if self.d < 1 or self.c < 1:
            raise StructureError("A random diagram needs d >= 1 and c >= 1, got d=%d, c=%d" % (self.d, self.c))
        if min(self.omega_d, self.omega_c) < MAX_STATES:
            raise StructureError("Family bounds must be at least %d" % MAX_STATES)

    @property
    def v(self):
        return self.d + 2

    def as_dict(self):
        return {"d": self.d, "c": self.c, "v": self.v, "omega_d": self.omega_d,
                "omega_c": self.omega_c, "width_cap": self.width_cap, "seed": self.seed}

    def __repr__(self):
        return "<RandomParams %s>" % " ".join("%s=%d" % item for item in sorted(self.as_dict().items()))


class _Skeleton(object):
    """ arcs and cardinalities of a diagram under construction """
    def __init__(self, ids, kinds, cards):
        self.ids = list(ids)
        self.kinds = kinds
        self.cards = cards
        self.parents = dict((vid, []) for vid in self.ids)
        self.children = dict((vid, []) for vid in self.ids)
        self.eliminated = [vid for vid in self.ids if kinds[vid] != VALUE]

    def add(self, parent, child):
        self.parents[child].append(parent)
        self.children[parent].append(child)

    def reaches(self, source, target):
        stack, seen = [source], set()
        while stack:
            vid = stack.pop()
            if vid == target:
                return True
            if vid not in seen:
                seen.add(vid)
                stack.extend(self.children[vid])
        return False

    def domain(self, child, extra=None):
        family = self.parents[child] + ([extra] if extra else [])
        if self.kinds[child] != VALUE:
            family = family + [child]
        return int(np.prod([self.cards[vid] for vid in family], dtype=np.int64))

    def width(self, extra=None):
        scopes = []
        for vid in self.ids:
            scope = list(self.parents[vid])
            if extra and extra[1] == vid:
                scope.append(extra[0])
            if self.kinds[vid] != VALUE:
                scope.append(vid)
            scopes.append(scope)
        return scopes_width(self.eliminated, [self.cards[vid] for vid in self.eliminated], scopes)


def gen_random(params):
    """ Random diagram following `params`, see :class:`RandomParams` """
    rng = np.random.RandomState(params.seed)
    chance = ["C%d" % i for i in range(1, params.c + 1)]
    decisions = ["D%d" % i for i in range(1, params.d + 1)]
    values = ["V%d" % i for i in range(1, params.v + 1)]
    kinds = dict([(vid, CHANCE) for vid in chance] + [(vid, DECISION) for vid in decisions]
                 + [(vid, VALUE) for vid in values])
    cards = dict((vid, int(rng.randint(MIN_STATES, MAX_STATES + 1))) for vid in chance + decisions)
    skeleton = _Skeleton(chance + decisions + values, kinds, cards)

    for decision, value in zip(decisions, values):
        skeleton.add(decision, value)

    bound = {CHANCE: params.omega_c, DECISION: params.omega_d, VALUE: params.omega_c}
    candidates = [(a, b) for a in chance + decisions for b in skeleton.ids
                  if a != b and b not in skeleton.children[a]]
    candidates = [candidates[i] for i in rng.permutation(len(candidates))]
    # each pair is tried once, in random order
    for parent, child in candidates:
        if skeleton.reaches(child, parent):
            continue
        if skeleton.domain(child, parent) > bound[kinds[child]]:
            continue
        if skeleton.width((parent, child)) > params.width_cap:
            continue
        skeleton.add(parent, child)
    _logger.debug("random diagram %r: %d arcs" % (params, sum(len(p) for p in skeleton.parents.values())))

    variables = [Variable(vid, kinds[vid], ["s%d" % k for k in range(cards[vid])] if vid in cards else ())
                 for vid in skeleton.ids]
    arcs = [(parent, child) for child in skeleton.ids for parent in skeleton.parents[child]]
    order = dict((vid, pos) for pos, vid in enumerate(skeleton.ids))
    cpts, utilities = {}, {}
    for vid in skeleton.ids:
        parents = sorted(skeleton.parents[vid], key=order.get)
        parent_cards = [cards[pa] for pa in parents]
        if kinds[vid] == CHANCE:
            shape = parent_cards + [cards[vid]]
            draws = 1. - rng.random_sample(shape)
            cpts[vid] = Factor(parents + [vid], shape, draws / draws.sum(axis=-1, keepdims=True))
        elif kinds[vid] == VALUE:
            utilities[vid] = Factor(parents, parent_cards, rng.random_sample(parent_cards))
    return Diagram(variables, arcs, cpts, utilities)


class RandomDiagram(Optionable):
    """ Random diagram generator component, its input is the seed.

    >>> generator = RandomDiagram()
    >>> diagram = generator(3, d=1, c=2)
    >>> len(diagram.values)
    3
    """
    def __init__(self, name=None):
        super(RandomDiagram, self).__init__(name=name)
        self.add_option("d", Numeric(vtype=int, default=3, min=1, help="number of decisions"))
        self.add_option("c", Numeric(vtype=int, default=5, min=1, help="number of chance variables"))
        self.add_option("omega_d", Numeric(vtype=int, default=8, min=MAX_STATES,
            help="bound on the domain size of decision families"))
        self.add_option("omega_c", Numeric(vtype=int, default=16, min=MAX_STATES,
            help="bound on the domain size of chance families"))
        self.add_option("width_cap", Numeric(vtype=int, default=DEFAULT_WIDTH_CAP, min=1,
            help="bound on the greedy width estimate"))

    @Optionable.check
    def __call__(self, seed, d=None, c=None, omega_d=None, omega_c=None, width_cap=None):
        params = RandomParams(d, c, omega_d, omega_c, width_cap, seed)
        self._logger.info("Generate random diagram %r" % params)
        return gen_random(params)
