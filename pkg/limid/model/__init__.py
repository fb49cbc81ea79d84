#-*- coding:utf-8 -*-
""" :mod:`limid.model`
======================

Variables, diagrams, policies and strategies.

SubModules
----------

.. toctree::

    limid.model.factor
    limid.model.evaluate

A LIMID is a directed acyclic graph over chance, decision and value
variables. Chance variables carry a conditional probability table over
their family (parents in declaration order, the variable itself last),
value variables carry a utility table over their parents and have no
children.

>>> x = Variable("X", CHANCE, ["lo", "hi"])
>>> d = Variable("D", DECISION, ["stop", "go"])
>>> r = Variable("R", VALUE)
>>> diagram = Diagram([x, d, r], [("X", "D"), ("D", "R")],
...     cpts={"X": Factor(["X"], [2], [0.25, 0.75])},
...     utilities={"R": Factor(["D"], [2], [0., 1.])})
>>> diagram.chance, diagram.decisions, diagram.values
(['X'], ['D'], ['R'])
>>> diagram.parents("D")
('X',)
>>> diagram.policy_count("D")
4
>>> strategy_count(diagram)
4

Invalid diagrams are rejected at construction:

>>> Diagram([x, r], [("R", "X")])
Traceback (most recent call last):
StructureError: Value node 'R' can not have children
"""
from __future__ import unicode_literals
import six

try:
    from collections.abc import Mapping
except ImportError:  # python 2
    from collections import Mapping

import logging

import igraph as ig
import numpy as np

from limid.exceptions import StructureError, NormalizationError
from limid.model.factor import Factor, assignments

_logger = logging.getLogger("limid.model")

# Variables kinds
CHANCE = "chance"
DECISION = "decision"
VALUE = "value"
KINDS = (CHANCE, DECISION, VALUE)

#: tolerance on CPT normalization
STRICT_TOLERANCE = 1e-9

#: joins parent state labels in strategy documents, so labels can not contain it
STATE_SEPARATOR = ","


class Variable(object):
    """ A diagram variable.

    :param vid: unique identifier
    :param kind: one of :data:`CHANCE`, :data:`DECISION`, :data:`VALUE`
    :param states: ordered state labels, empty exactly for value variables

    >>> Variable("D", DECISION, ["add", "remove"]).card
    2
    >>> Variable("X", CHANCE, ["only"])
    Traceback (most recent call last):
    StructureError: Variable 'X' (chance) needs at least two states
    """
    def __init__(self, vid, kind, states=()):
        if kind not in KINDS:
            raise StructureError("Unknown variable kind %r for '%s'" % (kind, vid))
        states = tuple(six.text_type(state) for state in states)
        if kind == VALUE and states:
            raise StructureError("Value variable '%s' can not have states" % vid)
        if kind != VALUE and len(states) < 2:
            raise StructureError("Variable '%s' (%s) needs at least two states" % (vid, kind))
        if len(set(states)) != len(states):
            raise StructureError("Variable '%s' has repeated state labels" % vid)
        if any(STATE_SEPARATOR in state for state in states):
            raise StructureError("State labels of '%s' can not contain '%s'" % (vid, STATE_SEPARATOR))
        self.id = six.text_type(vid)
        self.kind = kind
        self.states = states

    @property
    def card(self):
        return len(self.states)

    def state_index(self, label):
        try:
            return self.states.index(label)
        except ValueError:
            raise StructureError("'%s' is not a state of '%s'" % (label, self.id))

    def __eq__(self, other):
        return isinstance(other, Variable) and \
            (self.id, self.kind, self.states) == (other.id, other.kind, other.states)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.id, self.kind, self.states))

    def __repr__(self):
        return "<Variable %s %s %r>" % (self.kind, self.id, list(self.states))


class Diagram(object):
    """ An immutable LIMID.

    :param variables: list of :class:`Variable`, the declaration order is
        significant (it orders parents inside tables)
    :param arcs: iterable of (parent id, child id)
    :param cpts: chance id -> :class:`Factor` over the family of the variable
    :param utilities: value id -> :class:`Factor` over its parents
    :param strict_normalization: whether CPT columns must sum to one

    Tables whose scope is a permutation of the expected one are reordered.
    """
    def __init__(self, variables, arcs, cpts=None, utilities=None, strict_normalization=True):
        self.variables = tuple(variables)
        self._index = {}
        for pos, var in enumerate(self.variables):
            if var.id in self._index:
                raise StructureError("Duplicate variable id '%s'" % var.id)
            self._index[var.id] = pos
        self.strict_normalization = bool(strict_normalization)

        self._parents = dict((var.id, []) for var in self.variables)
        self._children = dict((var.id, []) for var in self.variables)
        seen = set()
        for parent, child in arcs:
            for vid in (parent, child):
                if vid not in self._index:
                    raise StructureError("Arc (%s, %s) refers to unknown variable '%s'" % (parent, child, vid))
            if parent == child:
                raise StructureError("Self loop on '%s'" % parent)
            if (parent, child) in seen:
                continue
            seen.add((parent, child))
            if self[parent].kind == VALUE:
                raise StructureError("Value node '%s' can not have children" % parent)
            self._parents[child].append(parent)
            self._children[parent].append(child)
        for vid in self._parents:
            self._parents[vid] = tuple(sorted(self._parents[vid], key=self._index.get))
            self._children[vid] = tuple(sorted(self._children[vid], key=self._index.get))
        self.arcs = tuple(sorted(seen, key=lambda arc: (self._index[arc[1]], self._index[arc[0]])))

        self.graph = self._build_graph()
        if not self.graph.is_dag():
            raise StructureError("The arcs of the diagram contain a cycle")

        self.cpts = self._check_tables(cpts or {}, CHANCE)
        self.utilities = self._check_tables(utilities or {}, VALUE)
        if self.strict_normalization:
            for vid in self.chance:
                self._check_normalized(vid)

    def _build_graph(self):
        graph = ig.Graph(directed=True)
        graph.add_vertices(len(self.variables))
        graph.vs["name"] = [var.id for var in self.variables]
        graph.vs["kind"] = [var.kind for var in self.variables]
        graph.add_edges([(self._index[p], self._index[c]) for p, c in self.arcs])
        return graph

    def _check_tables(self, tables, kind):
        checked = {}
        for vid in tables:
            if vid not in self._index or self[vid].kind != kind:
                raise StructureError("Table given for '%s' which is not a %s variable" % (vid, kind))
        for vid in self._of_kind(kind):
            if vid not in tables:
                raise StructureError("Missing table for %s variable '%s'" % (kind, vid))
            expected = self.family(vid) if kind == CHANCE else self.parents(vid)
            table = tables[vid]
            if sorted(table.scope) != sorted(expected):
                raise StructureError("Table of '%s' has scope %r, expected %r"
                                     % (vid, list(table.scope), list(expected)))
            table = table.reorder(expected)
            cards = tuple(self[var].card for var in expected)
            if table.cards != cards:
                raise StructureError("Table of '%s' has cardinalities %r, expected %r"
                                     % (vid, table.cards, cards))
            if not np.all(np.isfinite(table.values)):
                raise StructureError("Table of '%s' has non finite entries" % vid)
            if kind == CHANCE and np.any(table.values < 0):
                raise StructureError("CPT of '%s' has negative entries" % vid)
            checked[vid] = table
        return checked

    def _check_normalized(self, vid):
        table = self.cpts[vid]
        totals = table.values.sum(axis=-1)
        bad = np.argwhere(np.abs(totals - 1.) > STRICT_TOLERANCE)
        if len(bad):
            config = tuple(int(i) for i in bad[0])
            labels = tuple(self[pa].states[i] for pa, i in zip(self.parents(vid), config))
            raise NormalizationError(vid, labels, float(totals[tuple(bad[0])]))

    def _of_kind(self, kind):
        return [var.id for var in self.variables if var.kind == kind]

    ## accessors
    def __getitem__(self, vid):
        try:
            return self.variables[self._index[vid]]
        except KeyError:
            raise StructureError("Unknown variable '%s'" % vid)

    def __contains__(self, vid):
        return vid in self._index

    def __len__(self):
        return len(self.variables)

    def __repr__(self):
        return "<Diagram |C|=%d |D|=%d |V|=%d |A|=%d>" % (
            len(self.chance), len(self.decisions), len(self.values), len(self.arcs))

    @property
    def ids(self):
        return [var.id for var in self.variables]

    @property
    def chance(self):
        return self._of_kind(CHANCE)

    @property
    def decisions(self):
        return self._of_kind(DECISION)

    @property
    def values(self):
        return self._of_kind(VALUE)

    def index(self, vid):
        """ declaration position of a variable """
        return self._index[vid]

    def card(self, vid):
        return self[vid].card

    def parents(self, vid):
        return self._parents[vid]

    def children(self, vid):
        return self._children[vid]

    def family(self, vid):
        return self._parents[vid] + (vid,)

    def ancestors(self, vid):
        """ strict ancestors of `vid` """
        found = self.graph.subcomponent(self._index[vid], mode=ig.IN)
        return set(self.variables[i].id for i in found) - set([vid])

    def descendants(self, vid):
        """ strict descendants of `vid` """
        found = self.graph.subcomponent(self._index[vid], mode=ig.OUT)
        return set(self.variables[i].id for i in found) - set([vid])

    def topological_order(self):
        return [self.variables[i].id for i in self.graph.topological_sorting(mode=ig.OUT)]

    def parent_cards(self, vid):
        return tuple(self.card(pa) for pa in self.parents(vid))

    def parent_configurations(self, vid):
        """ configurations of the parents of `vid`, last parent fastest """
        return [tuple(int(i) for i in config) for config in assignments(self.parent_cards(vid))]

    def policy_count(self, decision):
        """ |Ω_D| ** |Ω_pa(D)| as an exact integer """
        size = 1
        for card in self.parent_cards(decision):
            size *= card
        return self.card(decision) ** size

    def replace(self, variables=None, arcs=None, cpts=None, utilities=None, strict_normalization=None):
        """ Copy of the diagram with some fields replaced """
        return Diagram(
            self.variables if variables is None else variables,
            self.arcs if arcs is None else arcs,
            self.cpts if cpts is None else cpts,
            self.utilities if utilities is None else utilities,
            self.strict_normalization if strict_normalization is None else strict_normalization,
        )

    def remove(self, variables=(), arcs=()):
        """ Copy of the diagram without some variables and arcs.

        Removed arcs must point to decisions, removed variables must have no
        children left: no table has to be rewritten.
        """
        gone = set(variables)
        arcs = set(arcs)
        for parent, child in arcs:
            if self[child].kind != DECISION:
                raise StructureError("Only arcs into decisions can be removed, not (%s, %s)" % (parent, child))
        kept_arcs = [arc for arc in self.arcs if arc not in arcs and arc[0] not in gone and arc[1] not in gone]
        for vid in gone:
            if any(child not in gone for child in self.children(vid)):
                raise StructureError("Can not remove '%s', it still has children" % vid)
        return Diagram(
            [var for var in self.variables if var.id not in gone],
            kept_arcs,
            dict((vid, cpt) for vid, cpt in six.iteritems(self.cpts) if vid not in gone),
            dict((vid, util) for vid, util in six.iteritems(self.utilities) if vid not in gone),
            self.strict_normalization,
        )

    def same_structure(self, other):
        """ True when both diagrams have the same variables, arcs and tables """
        if self.variables != other.variables or set(self.arcs) != set(other.arcs):
            return False
        if self.strict_normalization != other.strict_normalization:
            return False
        for mine, theirs in ((self.cpts, other.cpts), (self.utilities, other.utilities)):
            if set(mine) != set(theirs):
                return False
            for vid in mine:
                if not np.array_equal(mine[vid].values, theirs[vid].values):
                    return False
        return True


class Policy(object):
    """ Decision rule of one decision: a state index for every parent
    configuration.

    :param decision: decision id
    :param parents: parent ids, in declaration order
    :param parent_cards: parent cardinalities
    :param choices: chosen state indexes, one per parent configuration in
        lexicographic order (last parent fastest)

    >>> policy = Policy("D2", ["D1"], [2], [1, 0])
    >>> policy.table
    {(0,): 1, (1,): 0}
    >>> policy[(1,)]
    0
    >>> Policy.constant("D", [], [], 1).table
    {(): 1}
    """
    def __init__(self, decision, parents, parent_cards, choices):
        self.decision = decision
        self.parents = tuple(parents)
        self.parent_cards = tuple(int(card) for card in parent_cards)
        self.choices = tuple(int(choice) for choice in choices)
        size = int(np.prod(self.parent_cards, dtype=np.int64))
        if len(self.choices) != size:
            raise StructureError("Policy of '%s' needs %d choices, got %d"
                                 % (decision, size, len(self.choices)))

    @classmethod
    def constant(cls, decision, parents, parent_cards, state=0):
        size = int(np.prod(parent_cards, dtype=np.int64))
        return cls(decision, parents, parent_cards, [state] * size)

    @classmethod
    def from_table(cls, decision, parents, parent_cards, table):
        """ Build a policy from a configuration -> state mapping, which must be total """
        choices = []
        for config in assignments(parent_cards):
            key = tuple(int(i) for i in config)
            if key not in table:
                raise StructureError("Policy of '%s' has no choice for configuration %r" % (decision, key))
            choices.append(table[key])
        return cls(decision, parents, parent_cards, choices)

    @property
    def table(self):
        return dict((tuple(int(i) for i in config), choice)
                    for config, choice in zip(assignments(self.parent_cards), self.choices))

    def __getitem__(self, config):
        if not self.parent_cards:
            return self.choices[0]
        return self.choices[int(np.ravel_multi_index(tuple(config), self.parent_cards))]

    def __eq__(self, other):
        return isinstance(other, Policy) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.decision, self.parents, self.parent_cards, self.choices)

    def __repr__(self):
        return "<Policy %s | %s: %r>" % (self.decision, ",".join(self.parents), list(self.choices))


class Strategy(Mapping):
    """ One policy per decision, read-only mapping decision id -> :class:`Policy`.

    >>> s = Strategy([Policy.constant("D", [], [], 1)])
    >>> s["D"].choices, len(s)
    ((1,), 1)
    """
    def __init__(self, policies=()):
        if isinstance(policies, Mapping):
            policies = list(policies.values())
        self._policies = {}
        for policy in policies:
            if policy.decision in self._policies:
                raise StructureError("Two policies for decision '%s'" % policy.decision)
            self._policies[policy.decision] = policy

    def __getitem__(self, decision):
        return self._policies[decision]

    def __iter__(self):
        return iter(sorted(self._policies))

    def __len__(self):
        return len(self._policies)

    def __eq__(self, other):
        return isinstance(other, Strategy) and self._policies == other._policies

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset(self._policies.values()))

    def __repr__(self):
        return "<Strategy %s>" % ", ".join(repr(self[d]) for d in self)

    def check(self, diagram):
        """ Raise :class:`StructureError` unless the strategy covers exactly the
        decisions of `diagram` with policies over their parents """
        missing = set(diagram.decisions) - set(self._policies)
        if missing:
            raise StructureError("No policy for decision(s) %s" % ", ".join(sorted(missing)))
        extra = set(self._policies) - set(diagram.decisions)
        if extra:
            raise StructureError("Policies given for unknown decision(s) %s" % ", ".join(sorted(extra)))
        for decision in diagram.decisions:
            policy = self[decision]
            if policy.parents != diagram.parents(decision) or policy.parent_cards != diagram.parent_cards(decision):
                raise StructureError("Policy of '%s' is over %r, diagram parents are %r"
                                     % (decision, policy.parents, diagram.parents(decision)))
            if min(policy.choices) < 0 or max(policy.choices) >= diagram.card(decision):
                raise StructureError("Policy of '%s' chooses an unknown state" % decision)
        return self


def first_strategy(diagram):
    """ Strategy always choosing the first state """
    return Strategy([Policy.constant(d, diagram.parents(d), diagram.parent_cards(d))
                     for d in diagram.decisions])


def strategy_count(diagram):
    """ |Δ|, the number of strategies, as an exact integer """
    count = 1
    for decision in diagram.decisions:
        count *= diagram.policy_count(decision)
    return count


def diagram_summary(diagram):
    """ A few figures describing a diagram.

    >>> from limid.generators.urn import gen_urn
    >>> summary = diagram_summary(gen_urn(2, variant=1))
    >>> summary["chance"], summary["decisions"], summary["values"], summary["strategy_count"]
    (3, 2, 1, 4)
    """
    def family_domain(vid):
        size = 1
        for var in diagram.family(vid):
            size *= diagram.card(var)
        return size
    chance, decisions = diagram.chance, diagram.decisions
    return {
        "chance": len(chance),
        "decisions": len(decisions),
        "values": len(diagram.values),
        "arcs": len(diagram.arcs),
        "max_states": max([diagram.card(v) for v in chance + decisions] or [0]),
        "omega_c": max([family_domain(v) for v in chance] or [0]),
        "omega_d": max([family_domain(v) for v in decisions] or [0]),
        "strategy_count": strategy_count(diagram),
        "strict_normalization": diagram.strict_normalization,
    }
