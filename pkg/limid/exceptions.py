#-*- coding:utf-8 -*-
""" :mod:`limid.exceptions`
===========================

Errors raised by limid.

Every error derives from :class:`LimidError`. The command line maps the
three families onto exit codes:

* :class:`StructureError` (bad diagram, factor, order, strategy or
  document) exits with 2,
* :class:`ResourceLimitError` (enumeration caps, set-size caps, deadlines)
  exits with 3,
* :class:`NumericError` (non finite intermediate values) exits with 4.

>>> issubclass(NormalizationError, ValueError)
True
>>> err = ResourceLimitError("too many policies", stats={"max_set_cardinality": 12})
>>> err.stats["max_set_cardinality"]
12
"""


class LimidError(RuntimeError):
    """ Base class of limid errors """
    exit_code = 1


class StructureError(LimidError, ValueError):
    """ Raised when a diagram, factor, order, policy or strategy is malformed """
    exit_code = 2


class NormalizationError(StructureError):
    """ Raised when a CPT column does not sum to one under strict normalization """
    def __init__(self, variable, configuration, total):
        self.variable = variable
        self.configuration = tuple(configuration)
        self.total = total
        super(NormalizationError, self).__init__(
            "CPT of '%s' sums to %r for parent configuration %r (expected 1)"
            % (variable, total, self.configuration))


class DocumentError(StructureError):
    """ Raised when a document can not be parsed, `path` locates the faulty entry """
    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = "%s: %s" % (path, message)
        super(DocumentError, self).__init__(message)


class ResourceLimitError(LimidError):
    """ Raised when a configured cap is exceeded, `stats` holds partial figures """
    exit_code = 3

    def __init__(self, message, stats=None):
        super(ResourceLimitError, self).__init__(message)
        self.stats = stats or {}


class SolverTimeout(ResourceLimitError):
    """ Raised when a solver misses its deadline """
    pass


class NumericError(LimidError, ArithmeticError):
    """ Raised when a computation produces non finite values """
    exit_code = 4
