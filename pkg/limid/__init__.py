#-*- coding:utf-8 -*-
""":mod:`limid`
===============

Solvers for limited memory influence diagrams (LIMIDs): exact maximum
expected utility by variable elimination over sets of valuations, and a
fully polynomial approximation scheme built on the same propagation.

SubModules
----------

.. toctree::

    limid.model
    limid.preprocess
    limid.transform
    limid.ordering
    limid.valuation
    limid.lve
    limid.fptas
    limid.oracle
    limid.generators
    limid.export
    limid.bench
    limid.cli
    limid.exceptions

:license: ${LICENSE}

"""

__version__ = "0.3.0"
