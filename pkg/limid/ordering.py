#-*- coding:utf-8 -*-
""" :mod:`limid.ordering`
=========================

Elimination orders over the chance and decision variables.

Orders are scored on the moral graph: the undirected graph linking every
pair of variables that appear together in a table (a CPT family, a
decision family, or the parents of a value node). Value variables are
never eliminated and are not part of the graph.

>>> from limid.generators.urn import gen_urn
>>> diagram = gen_urn(3, variant=1)
>>> order = min_fill_order(diagram)
>>> order.width
2
>>> reverse_topological_order(diagram).variables[0]
'X3'
"""
from __future__ import unicode_literals

import logging
import itertools

import igraph as ig
import numpy as np

from limid.exceptions import StructureError
from limid.model import VALUE

_logger = logging.getLogger("limid.ordering")

MIN_FILL = "min-fill"
REV_TOPO = "rev-topo"
GIVEN = "given"
ORDERINGS = (MIN_FILL, REV_TOPO, GIVEN)


class EliminationOrder(object):
    """ A permutation of the chance and decision variables, with its
    induced width.

    >>> order = EliminationOrder(["A", "B"], 1, name="given")
    >>> list(order), len(order), order.width
    (['A', 'B'], 2, 1)
    """
    def __init__(self, variables, width, name=None):
        self.variables = tuple(variables)
        self.width = int(width)
        self.name = name

    def __iter__(self):
        return iter(self.variables)

    def __len__(self):
        return len(self.variables)

    def __getitem__(self, index):
        return self.variables[index]

    def __repr__(self):
        return "<EliminationOrder %s width=%d: %s>" % (self.name, self.width, ", ".join(self.variables))


def _scopes(diagram):
    for vid in diagram.chance + diagram.decisions:
        yield diagram.family(vid)
    for vid in diagram.values:
        yield diagram.parents(vid)


def moral_graph(diagram):
    """ Undirected igraph graph over C ∪ D, vertices carry a `name`
    attribute and are in declaration order.

    >>> from limid.generators.urn import gen_urn
    >>> graph = moral_graph(gen_urn(1, variant=1))
    >>> graph.vs["name"]
    ['X0', 'D1', 'X1']
    >>> graph.ecount()
    3
    """
    names = [var.id for var in diagram.variables if var.kind != VALUE]
    return _graph_of(names, _scopes(diagram))


def _graph_of(names, scopes):
    index = dict((vid, pos) for pos, vid in enumerate(names))
    edges = set()
    for scope in scopes:
        for a, b in itertools.combinations(sorted(index[vid] for vid in scope), 2):
            edges.add((a, b))
    graph = ig.Graph(n=len(names), edges=sorted(edges), directed=False)
    graph.vs["name"] = names
    return graph


class _Elimination(object):
    """ Graph being triangulated by successive eliminations """
    def __init__(self, names, cards, scopes):
        graph = _graph_of(names, scopes)
        self.names = list(names)
        self.cards = list(cards)
        self.index = dict((vid, pos) for pos, vid in enumerate(self.names))
        self.adj = dict((pos, set(neighbors)) for pos, neighbors in enumerate(graph.get_adjlist()))
        self.width = 0

    def fill_in(self, node):
        neighbors = list(self.adj[node])
        return sum(1 for a, b in itertools.combinations(neighbors, 2) if b not in self.adj[a])

    def score(self, node):
        """ (fill-ins, domain size of the neighborhood, declaration index) """
        domain = int(np.prod([self.cards[n] for n in self.adj[node]] + [self.cards[node]], dtype=np.int64))
        return (self.fill_in(node), domain, node)

    def eliminate(self, node):
        neighbors = self.adj.pop(node)
        self.width = max(self.width, len(neighbors))
        for a in neighbors:
            self.adj[a].discard(node)
            self.adj[a] |= neighbors - set([a])


def _eliminating(diagram):
    names = [var.id for var in diagram.variables if var.kind != VALUE]
    return _Elimination(names, [diagram.card(vid) for vid in names], _scopes(diagram))


def min_fill_order(diagram):
    """ Greedy order eliminating first the variable adding the fewest
    fill-in edges """
    elim = _eliminating(diagram)
    order = []
    while elim.adj:
        node = min(elim.adj, key=elim.score)
        order.append(elim.names[node])
        elim.eliminate(node)
    _logger.debug("min-fill order of width %d" % elim.width)
    return EliminationOrder(order, elim.width, name=MIN_FILL)


def reverse_topological_order(diagram):
    """ Greedy min-fill order restricted to variables whose chance and
    decision descendants are all eliminated.

    >>> from limid.generators.urn import gen_urn
    >>> order = reverse_topological_order(gen_urn(2, variant=2))
    >>> order.variables
    ('X2', 'D2', 'X1', 'D1', 'X0')
    """
    elim = _eliminating(diagram)
    pending = dict((elim.index[vid], set(elim.index[child] for child in diagram.children(vid)
                                          if child in elim.index))
                   for vid in elim.names)
    order = []
    while elim.adj:
        eligible = [node for node in elim.adj if not pending[node]]
        node = min(eligible, key=elim.score)
        order.append(elim.names[node])
        elim.eliminate(node)
        for children in pending.values():
            children.discard(node)
    _logger.debug("reverse topological order of width %d" % elim.width)
    return EliminationOrder(order, elim.width, name=REV_TOPO)


def declaration_order(diagram):
    """ Chance and decision variables in declaration order """
    order = [var.id for var in diagram.variables if var.kind != VALUE]
    return EliminationOrder(order, induced_width(diagram, order), name=GIVEN)


def induced_width(diagram, order):
    """ Largest number of neighbors of a variable when it is eliminated.

    :raises StructureError: if `order` is not a permutation of C ∪ D

    >>> from limid.generators.urn import gen_urn
    >>> diagram = gen_urn(1, variant=1)
    >>> induced_width(diagram, ["X0", "D1", "X1"])
    2
    >>> induced_width(diagram, ["X0", "D1"])
    Traceback (most recent call last):
    StructureError: Not an elimination order: missing X1
    """
    elim = _eliminating(diagram)
    order = list(order)
    missing = set(elim.names) - set(order)
    if missing:
        raise StructureError("Not an elimination order: missing %s" % ", ".join(sorted(missing)))
    unknown = [vid for vid in order if vid not in elim.index]
    if unknown or len(order) != len(elim.names):
        raise StructureError("Not an elimination order: unknown or repeated %s"
                             % ", ".join(unknown or order))
    for vid in order:
        elim.eliminate(elim.index[vid])
    return elim.width


def elimination_order(diagram, name=MIN_FILL):
    """ Order built by the heuristic called `name`, one of :data:`ORDERINGS` """
    if name == MIN_FILL:
        return min_fill_order(diagram)
    if name == REV_TOPO:
        return reverse_topological_order(diagram)
    if name == GIVEN:
        return declaration_order(diagram)
    raise StructureError("Unknown ordering %r, expected one of %s" % (name, ", ".join(ORDERINGS)))


def greedy_width(diagram):
    """ width of the min-fill order, the treewidth estimate used by the
    random generator """
    return min_fill_order(diagram).width


def scopes_width(names, cards, scopes):
    """ Min-fill width of the graph linking variables sharing a scope.

    :param names: variable ids, the elimination set
    :param cards: their cardinalities
    :param scopes: iterable of scopes, restricted to `names`

    >>> scopes_width(["A", "B", "C"], [2, 2, 2], [("A", "B"), ("B", "C")])
    1
    """
    elim = _Elimination(names, cards, scopes)
    while elim.adj:
        elim.eliminate(min(elim.adj, key=elim.score))
    return elim.width
