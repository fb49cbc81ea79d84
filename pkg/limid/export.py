#-*- coding:utf-8 -*-
""" :mod:`limid.export`
=======================

JSON documents for diagrams, strategies and solver statistics.

A diagram document lists its ``variables`` (``id``, ``kind``, ``states``),
its ``arcs`` as ``[parent, child]`` pairs, the flat ``cpts`` of chance
variables over their family (parents in declaration order, the variable
last, last variable fastest), the flat ``utilities`` of value variables
over their parents, and ``strict_normalization``.

Serialization is canonical: sorted keys, fixed indentation and shortest
round-trip rendering of the numbers, so that a serialized document parses
and serializes back to the same text.

>>> from limid.generators.urn import gen_urn
>>> text = serialize_diagram(gen_urn(1, variant=1))
>>> serialize_diagram(parse_diagram(text)) == text
True
>>> parse_diagram('{"variables": [{"id": "X", "kind": "chance", "states": ["a", "b"]}], '
...               '"arcs": [], "cpts": {"X": [0.5, "half"]}, "utilities": {}}')
Traceback (most recent call last):
DocumentError: cpts.X[1]: expected a number, got 'half'
"""
from __future__ import unicode_literals
import six

import json
import logging

import numpy as np

from limid.exceptions import StructureError, DocumentError
from limid.model import Variable, Diagram, Policy, Strategy, KINDS, CHANCE, VALUE, STATE_SEPARATOR
from limid.model.factor import Factor

_logger = logging.getLogger("limid.export")

DIAGRAM_KEYS = ("variables", "arcs", "cpts", "utilities", "strict_normalization")


def dumps(document):
    """ canonical JSON text of a document """
    return json.dumps(document, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def loads(text):
    """ document from JSON text, syntax errors are :class:`DocumentError` """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except ValueError as err:
        raise DocumentError("invalid JSON (%s)" % err)


def _document(document):
    if isinstance(document, six.string_types) or isinstance(document, bytes):
        document = loads(document)
    if not isinstance(document, dict):
        raise DocumentError("expected an object, got %s" % type(document).__name__)
    return document


def _expect(value, types, path, what):
    if not isinstance(value, types) or isinstance(value, bool) and bool not in types:
        raise DocumentError("expected %s, got %r" % (what, value), path)
    return value


def _numbers(values, path):
    _expect(values, (list,), path, "a list of numbers")
    numbers = []
    for pos, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, six.integer_types + (float,)):
            raise DocumentError("expected a number, got %r" % value, "%s[%d]" % (path, pos))
        numbers.append(float(value))
    return numbers


def _variables(entries):
    _expect(entries, (list,), "variables", "a list")
    variables = []
    for pos, entry in enumerate(entries):
        path = "variables[%d]" % pos
        _expect(entry, (dict,), path, "an object")
        unknown = set(entry) - set(["id", "kind", "states"])
        if unknown:
            raise DocumentError("unknown key(s) %s" % ", ".join(sorted(unknown)), path)
        vid = _expect(entry.get("id"), six.string_types, path + ".id", "a string")
        kind = entry.get("kind")
        if kind not in KINDS:
            raise DocumentError("expected one of %s, got %r" % (", ".join(KINDS), kind), path + ".kind")
        states = _expect(entry.get("states", []), (list,), path + ".states", "a list")
        for spos, state in enumerate(states):
            _expect(state, six.string_types, "%s.states[%d]" % (path, spos), "a string")
        try:
            variables.append(Variable(vid, kind, states))
        except StructureError as err:
            raise DocumentError(str(err), path)
    return variables


def _arcs(entries):
    _expect(entries, (list,), "arcs", "a list")
    arcs = []
    for pos, entry in enumerate(entries):
        path = "arcs[%d]" % pos
        if not isinstance(entry, list) or len(entry) != 2 \
                or not all(isinstance(vid, six.string_types) for vid in entry):
            raise DocumentError("expected a [parent, child] pair of ids, got %r" % (entry,), path)
        arcs.append(tuple(entry))
    return arcs


def _tables(entries, key, scopes, cards):
    _expect(entries, (dict,), key, "an object")
    tables = {}
    for vid, values in six.iteritems(entries):
        path = "%s.%s" % (key, vid)
        if vid not in scopes:
            raise DocumentError("not a %s variable" % ("chance" if key == "cpts" else "value"), path)
        values = _numbers(values, path)
        size = int(np.prod(cards[vid], dtype=np.int64))
        if len(values) != size:
            raise DocumentError("expected %d values over (%s), got %d"
                                % (size, ", ".join(scopes[vid]), len(values)), path)
        tables[vid] = Factor(scopes[vid], cards[vid], values)
    return tables


def parse_diagram(document):
    """ :class:`Diagram` from a document (JSON text or decoded object).

    :raises DocumentError: on syntax errors and malformed entries, the
        message starts with the path of the faulty entry
    :raises StructureError: when the diagram itself is invalid (cycle,
        CPT not normalized...)
    """
    document = _document(document)
    unknown = set(document) - set(DIAGRAM_KEYS)
    if unknown:
        raise DocumentError("unknown key(s) %s" % ", ".join(sorted(unknown)))
    for key in ("variables", "arcs"):
        if key not in document:
            raise DocumentError("missing key", key)
    variables = _variables(document["variables"])
    arcs = _arcs(document["arcs"])
    strict = _expect(document.get("strict_normalization", True), (bool,), "strict_normalization", "a boolean")

    known = dict((var.id, var) for var in variables)
    parents = dict((var.id, []) for var in variables)
    for parent, child in arcs:
        if child in parents:
            parents[child].append(parent)
    position = dict((var.id, pos) for pos, var in enumerate(variables))
    scopes, cards = {}, {}
    for var in variables:
        scope = sorted(set(pa for pa in parents[var.id] if pa in known), key=position.get)
        if var.kind == CHANCE:
            scope.append(var.id)
        scopes[var.id] = scope
        cards[var.id] = [known[vid].card for vid in scope]
    cpts = _tables(document.get("cpts", {}), "cpts",
                   dict((vid, scope) for vid, scope in six.iteritems(scopes) if known[vid].kind == CHANCE), cards)
    utilities = _tables(document.get("utilities", {}), "utilities",
                        dict((vid, scope) for vid, scope in six.iteritems(scopes) if known[vid].kind == VALUE),
                        cards)
    return Diagram(variables, arcs, cpts, utilities, strict_normalization=strict)


def diagram_document(diagram):
    """ document object of a diagram """
    return {
        "variables": [{"id": var.id, "kind": var.kind, "states": list(var.states)} for var in diagram.variables],
        "arcs": [[parent, child] for parent, child in diagram.arcs],
        "cpts": dict((vid, table.flat) for vid, table in six.iteritems(diagram.cpts)),
        "utilities": dict((vid, table.flat) for vid, table in six.iteritems(diagram.utilities)),
        "strict_normalization": diagram.strict_normalization,
    }


def serialize_diagram(diagram):
    """ canonical JSON text of a diagram """
    return dumps(diagram_document(diagram))


def _config_key(diagram, decision, config):
    return STATE_SEPARATOR.join(diagram[pa].states[i] for pa, i in zip(diagram.parents(decision), config))


def strategy_document(strategy, diagram):
    """ document object of a strategy of `diagram`: for every decision, the
    state chosen for each parent configuration, keyed by the comma joined
    parent state labels (empty for a parentless decision).

    >>> from limid.generators.urn import gen_urn
    >>> from limid.model import first_strategy
    >>> diagram = gen_urn(2, variant=2)
    >>> strategy_document(first_strategy(diagram), diagram)["policies"]["D2"] == {"add": "add", "remove": "add"}
    True
    """
    strategy.check(diagram)
    policies = {}
    for decision in diagram.decisions:
        states = diagram[decision].states
        policy = strategy[decision]
        policies[decision] = dict((_config_key(diagram, decision, config), states[choice])
                                  for config, choice in zip(diagram.parent_configurations(decision),
                                                            policy.choices))
    return {"policies": policies}


def serialize_strategy(strategy, diagram):
    return dumps(strategy_document(strategy, diagram))


def parse_strategy(document, diagram):
    """ :class:`Strategy` of `diagram` from a document.

    :raises DocumentError: when a decision or a parent configuration has no
        choice, or when a choice is not a state of its decision
    """
    document = _document(document)
    policies = _expect(document.get("policies"), (dict,), "policies", "an object")
    unknown = set(policies) - set(diagram.decisions)
    if unknown:
        raise DocumentError("not decisions of the diagram: %s" % ", ".join(sorted(unknown)), "policies")
    result = []
    for decision in diagram.decisions:
        path = "policies.%s" % decision
        if decision not in policies:
            raise DocumentError("missing policy", path)
        table = _expect(policies[decision], (dict,), path, "an object")
        configs = diagram.parent_configurations(decision)
        keys = [_config_key(diagram, decision, config) for config in configs]
        extra = set(table) - set(keys)
        if extra:
            raise DocumentError("unknown parent configuration(s) %s" % ", ".join(sorted(extra)), path)
        choices = []
        for key in keys:
            if key not in table:
                raise DocumentError("no choice for parent configuration %r" % key, path)
            state = table[key]
            if state not in diagram[decision].states:
                raise DocumentError("'%s' is not a state of '%s'" % (state, decision), "%s[%r]" % (path, key))
            choices.append(diagram[decision].states.index(state))
        result.append(Policy(decision, diagram.parents(decision), diagram.parent_cards(decision), choices))
    return Strategy(result)


def serialize_stats(result, diagram=None, epsilon=None):
    """ canonical JSON text of the statistics of a solver run, see
    :meth:`limid.lve.SolveResult.as_stats` """
    return dumps(result.as_stats(diagram, epsilon))
