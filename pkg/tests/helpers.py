#-*- coding:utf-8 -*-
""" Seeded diagram suites shared by the tests """
from __future__ import unicode_literals

import itertools

from limid.model import strategy_count
from limid.generators import gen_random, RandomParams

#: number of random diagrams compared against the oracle
SUITE_SIZE = 200
#: largest number of strategies of a diagram in the acceptance suite
ACCEPTANCE_CAP = 4096


def small_params(seed, omega_d=4):
    """ parameters of a diagram small enough for the oracle: with
    `omega_d` = 4 a decision has at most 4 policies """
    return RandomParams(d=1 + seed % 3, c=2 + seed % 4, omega_d=omega_d, omega_c=8, width_cap=4, seed=seed)


def random_suite(size=SUITE_SIZE, omega_d=4):
    for seed in range(size):
        yield seed, gen_random(small_params(seed, omega_d))


def acceptance_params(seed):
    """ up to 5 decisions over several parents and up to 6 chance variables """
    return RandomParams(d=1 + seed % 5, c=2 + seed % 5, omega_d=8, omega_c=16, seed=seed)


def acceptance_suite(size, cap=ACCEPTANCE_CAP):
    """ the first `size` acceptance diagrams having at most `cap` strategies """
    found = 0
    for seed in itertools.count():
        if found == size:
            return
        diagram = gen_random(acceptance_params(seed))
        if strategy_count(diagram) <= cap:
            found += 1
            yield seed, diagram


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol * max(1., abs(a), abs(b))
