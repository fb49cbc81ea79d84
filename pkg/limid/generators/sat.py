#-*- coding:utf-8 -*-
""" :mod:`limid.generators.sat`
===============================

Diagrams encoding CNF satisfiability.

Each of the `q` replicas is a chain ``S0 -> S1 -> ... -> Sn`` where ``S0``
picks one clause uniformly at random and ``Si`` drops to 0 as soon as the
truth value chosen by decision ``Di`` satisfies that clause. A chain of
binary variables ``B1 ... Bq`` records whether every replica reached 0,
and the utility is 1 iff ``Bq`` holds. A strategy is one truth assignment
per replica, and its expected utility is the product over the replicas of
the fraction of clauses it satisfies.

>>> cnf = parse_dimacs("p cnf 2 1\\n1 -2 0\\n")
>>> cnf.clauses
((1, -2),)
>>> diagram = gen_sat(cnf, 1)
>>> diagram.decisions
['D1_1', 'D1_2']
>>> sat_closed_form(cnf, [[False, False]])
1.0
"""
from __future__ import unicode_literals, division
from builtins import range

import logging
import itertools

import numpy as np

from limid.exceptions import StructureError, DocumentError
from limid.model import Variable, Diagram, Policy, Strategy, CHANCE, DECISION, VALUE
from limid.model.factor import Factor
from limid.generators import deterministic_cpt

_logger = logging.getLogger("limid.generators.sat")

TRUTH_STATES = ("false", "true")
BOOL_STATES = ("0", "1")


class CNF(object):
    """ A formula in conjunctive normal form.

    :param n_vars: number of propositional variables, numbered from 1
    :param clauses: lists of nonzero integers, ``-i`` is the negation of ``i``

    >>> CNF(1, [[1], [-1]]).clauses
    ((1,), (-1,))
    >>> CNF(1, [[2]])
    Traceback (most recent call last):
    StructureError: Clause (2,) mentions variable 2, the formula has 1
    """
    def __init__(self, n_vars, clauses):
        self.n_vars = int(n_vars)
        self.clauses = tuple(tuple(int(lit) for lit in clause) for clause in clauses)
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.n_vars:
                    raise StructureError("Clause %r mentions variable %d, the formula has %d"
                                         % (clause, abs(lit), self.n_vars))

    @property
    def m(self):
        """ number of clauses """
        return len(self.clauses)

    def __eq__(self, other):
        return isinstance(other, CNF) and (self.n_vars, self.clauses) == (other.n_vars, other.clauses)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "<CNF n=%d m=%d>" % (self.n_vars, self.m)


def parse_dimacs(text):
    """ Read a formula in DIMACS layout.

    Comment lines start with ``c``, the header is ``p cnf <vars> <clauses>``
    and every clause is ended by a ``0``. Without header the number of
    variables is the largest one used.

    >>> parse_dimacs("c example\\n1 2 0 -1\\n0").clauses
    ((1, 2), (-1,))
    """
    n_vars = None
    declared = None
    clauses, current = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "%":
            break
        if tokens[0] == "p":
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise DocumentError("Invalid header %r" % line.strip(), "line %d" % lineno)
            try:
                n_vars, declared = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise DocumentError("Invalid header %r" % line.strip(), "line %d" % lineno)
            continue
        for tok in tokens:
            try:
                lit = int(tok)
            except ValueError:
                raise DocumentError("Invalid literal %r" % tok, "line %d" % lineno)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if current:
        clauses.append(current)
    if n_vars is None:
        n_vars = max([abs(lit) for clause in clauses for lit in clause] or [0])
    if declared is not None and declared != len(clauses):
        _logger.warning("header announces %d clauses, %d found" % (declared, len(clauses)))
    try:
        return CNF(n_vars, clauses)
    except StructureError as err:
        raise DocumentError(str(err))


def write_dimacs(cnf):
    """ DIMACS text of a formula

    >>> print(write_dimacs(CNF(2, [[1, -2], [2]])).strip())
    p cnf 2 2
    1 -2 0
    2 0
    """
    out = "p cnf %d %d\n" % (cnf.n_vars, cnf.m)
    for clause in cnf.clauses:
        out += " ".join(["%d" % lit for lit in clause] + ["0"]) + "\n"
    return out


def satisfies(clause, assignment):
    """ True when the truth `assignment` (indexed from 0) satisfies `clause` """
    return any(bool(assignment[abs(lit) - 1]) == (lit > 0) for lit in clause)


def count_satisfied(cnf, assignment):
    """ number of clauses satisfied by a truth assignment

    >>> count_satisfied(CNF(1, [[1], [-1]]), [True])
    1
    """
    if len(assignment) != cnf.n_vars:
        raise StructureError("Assignment of %d values for %d variables" % (len(assignment), cnf.n_vars))
    return sum(1 for clause in cnf.clauses if satisfies(clause, assignment))


def max_satisfied(cnf):
    """ largest number of satisfied clauses, by enumeration """
    return max(count_satisfied(cnf, assignment)
               for assignment in itertools.product((False, True), repeat=cnf.n_vars))


def _ids(j, n):
    selectors = ["S%d_%d" % (j, i) for i in range(n + 1)]
    decisions = ["D%d_%d" % (j, i) for i in range(1, n + 1)]
    return selectors, decisions, "B%d" % j


def gen_sat(cnf, q=1):
    """ Diagram of `q` replicas of the clause tracking chain of `cnf`.

    :param cnf: a :class:`CNF` with at least one clause and one variable
    :param q: number of replicas
    """
    if cnf.m == 0:
        raise StructureError("The formula has no clause")
    if cnf.n_vars == 0:
        raise StructureError("The formula has no variable")
    if q < 1:
        raise StructureError("At least one replica is needed, got q=%d" % q)
    m, n = cnf.m, cnf.n_vars
    first_states = tuple("%d" % k for k in range(1, m + 1))
    states = tuple("%d" % k for k in range(m + 1))
    variables, arcs, cpts = [], [], {}
    previous_b = None
    for j in range(1, q + 1):
        selectors, decisions, b = _ids(j, n)
        variables.append(Variable(selectors[0], CHANCE, first_states))
        cpts[selectors[0]] = Factor([selectors[0]], [m], np.ones(m) / m)
        for i in range(1, n + 1):
            prev, decision, sel = selectors[i - 1], decisions[i - 1], selectors[i]
            variables += [Variable(decision, DECISION, TRUTH_STATES), Variable(sel, CHANCE, states)]
            arcs += [(prev, sel), (decision, sel)]
            prev_card = m if i == 1 else m + 1
            cpts[sel] = Factor([prev, decision, sel], [prev_card, 2, m + 1],
                               deterministic_cpt([prev_card, 2, m + 1], _tracking_rule(cnf, i)))
        variables.append(Variable(b, CHANCE, BOOL_STATES))
        arcs.append((selectors[-1], b))
        if previous_b is None:
            cpts[b] = Factor([selectors[-1], b], [m + 1, 2],
                             deterministic_cpt([m + 1, 2], lambda config: int(config[0] == 0)))
        else:
            arcs.append((previous_b, b))
            cpts[b] = Factor([previous_b, selectors[-1], b], [2, m + 1, 2],
                             deterministic_cpt([2, m + 1, 2],
                                               lambda config: int(config[0] == 1 and config[1] == 0)))
        previous_b = b
    variables.append(Variable("U", VALUE))
    arcs.append((previous_b, "U"))
    utilities = {"U": Factor([previous_b], [2], [0., 1.])}
    _logger.debug("sat diagram: n=%d m=%d q=%d" % (n, m, q))
    return Diagram(variables, arcs, cpts, utilities)


def _tracking_rule(cnf, i):
    """ next selector state given (previous selector, truth value of x_i) """
    first = i == 1

    def rule(config):
        prev, value = config
        clause = prev + 1 if first else prev
        if clause == 0:
            return 0
        literal_true = i if value == 1 else -i
        if literal_true in cnf.clauses[clause - 1]:
            return 0
        return clause
    return rule


def sat_strategy(cnf, assignments):
    """ Strategy playing ``assignments[j - 1]`` in replica j """
    policies = []
    for j, assignment in enumerate(assignments, 1):
        _, decisions, _ = _ids(j, cnf.n_vars)
        if len(assignment) != cnf.n_vars:
            raise StructureError("Assignment of %d values for %d variables" % (len(assignment), cnf.n_vars))
        policies += [Policy(d, [], [], [int(bool(value))]) for d, value in zip(decisions, assignment)]
    return Strategy(policies)


def sat_closed_form(cnf, assignments):
    """ Expected utility of :func:`sat_strategy`: the product over replicas
    of the satisfied clause fractions """
    value = 1.
    for assignment in assignments:
        value *= count_satisfied(cnf, assignment) / cnf.m
    return value


def sat_threshold(m, q):
    """ Upper bound ``((m - 1) / m) ** q`` on the maximum expected utility
    of an unsatisfiable formula with `m` clauses

    >>> sat_threshold(2, 2)
    0.25
    """
    return ((m - 1) / m) ** q


def min_replicas(m, n, gamma):
    """ Smallest number of replicas q with
    ``q > ((2m + 1) * ((m + 1) ** 2 * (4n + 4) + 2) ** gamma) ** (1 / (1 - gamma))``.

    With that many replicas, telling a satisfiable formula from an
    unsatisfiable one from an approximation within a factor
    ``2 ** (size ** gamma)`` is as hard as deciding satisfiability.

    >>> min_replicas(2, 1, 0.)
    6
    """
    if not 0. <= gamma < 1.:
        raise StructureError("gamma must be in [0, 1), got %r" % gamma)
    size = (m + 1) ** 2 * (4 * n + 4) + 2
    bound = ((2 * m + 1) * size ** gamma) ** (1. / (1. - gamma))
    return int(np.floor(bound)) + 1
