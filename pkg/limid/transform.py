#-*- coding:utf-8 -*-
""" :mod:`limid.transform`
==========================

Replace decisions having parents by parentless decisions.

A decision D with parents is replaced by a chain of deterministic chance
variables ``X1 ... Xm`` (one per parent configuration ``pi_1 < ... < pi_m``)
and parentless decisions ``D1 ... Dm`` with the states of D. ``Di`` is the
choice of D when its parents are in configuration ``pi_i``, the chain
carries that choice down to ``Xm``, which takes the place of D for its
children. A strategy of the new diagram is a strategy of the old one, and
both have the same expected utility.

>>> from limid.generators.urn import gen_urn
>>> diagram = gen_urn(2, variant=2)
>>> flat, tmap = make_decisions_parentless(diagram)
>>> [flat.parents(d) for d in flat.decisions]
[(), (), (), (), ()]
>>> tmap["D2"].decision_ids
('D2#d1', 'D2#d2')
>>> flat.strict_normalization
False
"""
from __future__ import unicode_literals
from builtins import range
import six

import logging

import numpy as np

from reliure import Optionable
from reliure.types import Numeric

from limid.exceptions import StructureError
from limid.model import Variable, Policy, Strategy, CHANCE, DECISION
from limid.model.factor import Factor, assignments

_logger = logging.getLogger("limid.transform")


class TransformEntry(object):
    """ How one decision was replaced.

    :param decision: id of the replaced decision
    :param parents: its parents
    :param parent_cards: their cardinalities
    :param chance_ids: ids of the chain variables ``X1 ... Xm``
    :param decision_ids: ids of the new decisions ``D1 ... Dm``

    ``Di`` stands for the configuration ``configurations[i - 1]``, the parent
    configurations being in lexicographic order (last parent fastest).
    """
    def __init__(self, decision, parents, parent_cards, chance_ids, decision_ids):
        self.decision = decision
        self.parents = tuple(parents)
        self.parent_cards = tuple(parent_cards)
        self.chance_ids = tuple(chance_ids)
        self.decision_ids = tuple(decision_ids)
        self.configurations = [tuple(int(i) for i in config) for config in assignments(self.parent_cards)]
        if not len(self.configurations) == len(self.chance_ids) == len(self.decision_ids):
            raise StructureError("Gadget of '%s' needs %d chance and decision variables"
                                 % (decision, len(self.configurations)))

    @property
    def m(self):
        return len(self.configurations)

    @property
    def output(self):
        """ the chain variable standing for the decision """
        return self.chance_ids[-1]

    def __repr__(self):
        return "<TransformEntry %s m=%d>" % (self.decision, self.m)


class TransformMap(object):
    """ Replaced decision id -> :class:`TransformEntry` """
    def __init__(self, entries=()):
        self._entries = dict((entry.decision, entry) for entry in entries)
        self._order = [entry.decision for entry in entries]

    @property
    def entries(self):
        return [self._entries[d] for d in self._order]

    def __getitem__(self, decision):
        return self._entries[decision]

    def __contains__(self, decision):
        return decision in self._entries

    def __iter__(self):
        return iter(self._order)

    def __len__(self):
        return len(self._order)

    def __repr__(self):
        return "<TransformMap %s>" % ", ".join(self._order)


def _fresh(base, taken):
    name, count = base, 1
    while name in taken:
        count += 1
        name = "%s_%d" % (base, count)
    taken.add(name)
    return name


def chain_tables(card, parent_cards, position):
    """ 0/1 table of the chain variable standing for configuration number
    `position` (0-based), over (parents of D, previous chain variable, new
    decision, chain variable). The first chain variable has no previous one.

    >>> chain_tables(2, [2], 0).tolist()
    [[[1.0, 0.0], [0.0, 1.0]], [[1.0, 1.0], [1.0, 1.0]]]
    """
    target = np.unravel_index(position, parent_cards) if parent_cards else ()
    first = position == 0
    shape = list(parent_cards) + ([] if first else [card]) + [card, card]
    table = np.zeros(shape)
    for index in np.ndindex(*shape):
        config = tuple(index[:len(parent_cards)])
        rest = index[len(parent_cards):]
        if first:
            decision, state = rest
            matches = config == tuple(target)
            table[index] = 1. if (not matches or state == decision) else 0.
        else:
            previous, decision, state = rest
            if config == tuple(target):
                table[index] = 1. if previous == state == decision else 0.
            else:
                table[index] = 1. if previous == state else 0.
    return table


def make_decisions_parentless(diagram, decisions=None):
    """ Replace decisions with parents by chains of parentless decisions.

    :param decisions: ids of the decisions to replace, all decisions with
        parents by default; parentless decisions are left unchanged
    :returns: (new diagram, :class:`TransformMap`)
    """
    if decisions is None:
        decisions = diagram.decisions
    todo = [d for d in diagram.decisions if d in set(decisions) and diagram.parents(d)]
    unknown = set(decisions) - set(diagram.decisions)
    if unknown:
        raise StructureError("Not decisions of the diagram: %s" % ", ".join(sorted(unknown)))
    if not todo:
        return diagram, TransformMap()

    taken = set(diagram.ids)
    variables, entries, renamed = [], [], {}
    for var in diagram.variables:
        if var.id not in todo:
            variables.append(var)
            continue
        m = len(diagram.parent_configurations(var.id))
        decision_ids = [_fresh("%s#d%d" % (var.id, i), taken) for i in range(1, m + 1)]
        chance_ids = [_fresh("%s#x%d" % (var.id, i), taken) for i in range(1, m + 1)]
        for d_id, x_id in zip(decision_ids, chance_ids):
            variables += [Variable(d_id, DECISION, var.states), Variable(x_id, CHANCE, var.states)]
        entry = TransformEntry(var.id, diagram.parents(var.id), diagram.parent_cards(var.id),
                               chance_ids, decision_ids)
        entries.append(entry)
        renamed[var.id] = entry.output

    arcs, cpts = [], {}
    for parent, child in diagram.arcs:
        if child in renamed:
            continue
        arcs.append((renamed.get(parent, parent), child))
    for vid, table in six.iteritems(diagram.cpts):
        cpts[vid] = table.rename(renamed)
    utilities = dict((vid, table.rename(renamed)) for vid, table in six.iteritems(diagram.utilities))

    for entry in entries:
        card = diagram.card(entry.decision)
        # a replaced decision can be the parent of another one
        parents = [renamed.get(parent, parent) for parent in entry.parents]
        for i, (d_id, x_id) in enumerate(zip(entry.decision_ids, entry.chance_ids)):
            arcs += [(parent, x_id) for parent in parents] + [(d_id, x_id)]
            scope = parents + [d_id, x_id]
            cards = list(entry.parent_cards) + [card, card]
            if i > 0:
                previous = entry.chance_ids[i - 1]
                arcs.append((previous, x_id))
                scope = parents + [previous, d_id, x_id]
                cards = list(entry.parent_cards) + [card, card, card]
            cpts[x_id] = Factor(scope, cards, chain_tables(card, entry.parent_cards, i))
        _logger.debug("decision '%s' replaced by %d parentless decisions" % (entry.decision, entry.m))

    transformed = diagram.replace(variables=variables, arcs=arcs, cpts=cpts, utilities=utilities,
                                  strict_normalization=False)
    return transformed, TransformMap(entries)


def lift_strategy(strategy, tmap):
    """ Strategy of the original diagram from a strategy of the transformed one.

    >>> from limid.generators.urn import gen_urn
    >>> flat, tmap = make_decisions_parentless(gen_urn(2, variant=2))
    >>> chosen = Strategy([Policy(d, [], [], [1 if d == "D2#d1" else 0]) for d in flat.decisions])
    >>> lift_strategy(chosen, tmap)["D2"].choices
    (1, 0)
    """
    gadget = set()
    policies = []
    for entry in tmap.entries:
        choices = []
        for d_id in entry.decision_ids:
            if d_id not in strategy:
                raise StructureError("No policy for '%s' introduced for '%s'" % (d_id, entry.decision))
            policy = strategy[d_id]
            if policy.parents:
                raise StructureError("Policy of '%s' should have no parents" % d_id)
            choices.append(policy.choices[0])
            gadget.add(d_id)
        policies.append(Policy(entry.decision, entry.parents, entry.parent_cards, choices))
    # chain outputs go back to the decisions they stand for
    original = dict((entry.output, entry.decision) for entry in tmap.entries)
    for decision in strategy:
        if decision in gadget:
            continue
        policy = strategy[decision]
        policies.append(Policy(decision, [original.get(parent, parent) for parent in policy.parents],
                               policy.parent_cards, policy.choices))
    return Strategy(policies)


def decisions_over(diagram, threshold):
    """ decisions with parents whose number of policies is above `threshold` """
    return [d for d in diagram.decisions if diagram.parents(d) and diagram.policy_count(d) > threshold]


class MakeParentless(Optionable):
    """ Component replacing decisions with parents, returns the new diagram
    and the :class:`TransformMap`.

    >>> from limid.generators.urn import gen_urn
    >>> transform = MakeParentless()
    >>> flat, tmap = transform(gen_urn(3, variant=5), threshold=16)
    >>> list(tmap)
    ['D2', 'D3']
    """
    def __init__(self, name=None):
        super(MakeParentless, self).__init__(name=name)
        self.add_option("threshold", Numeric(vtype=int, default=0, min=0,
            help="only replace decisions with more policies than this"))

    @Optionable.check
    def __call__(self, diagram, threshold=None):
        selected = decisions_over(diagram, threshold)
        self._logger.info("Before transform: |U|=%d, %d decision(s) to replace"
                          % (len(diagram), len(selected)))
        transformed, tmap = make_decisions_parentless(diagram, selected)
        self._logger.info("After transform: |U|=%d, |A|=%d" % (len(transformed), len(transformed.arcs)))
        return transformed, tmap
