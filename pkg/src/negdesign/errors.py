"""Exceptions raised by negdesign

Checkers never raise on violations: violations are returned as data. Exceptions signal malformed input only.
"""


class NegDesignError(ValueError):
    """Base class of all negdesign errors"""


class ObjectMismatchError(NegDesignError):
    """Objects (preorders, hom-sets, spaces) of composed or compared entities do not match"""


class UnknownElementError(NegDesignError):
    """A name does not refer to an element of the preorder"""


class ClosureError(NegDesignError):
    """A closure or monotonicity invariant does not hold"""

    def __init__(self, message, axis=None):
        super().__init__(message)
        self.axis = axis


class EnumerationCapError(NegDesignError):
    """An exhaustive enumeration would exceed its configured cap"""


class CategoryAxiomError(NegDesignError):
    """A finite category or hom-preorder violates an axiom"""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class BrokenPathError(NegDesignError):
    """A sequence of edges does not form a path"""


class NegativeWeightError(NegDesignError):
    """An edge weight is negative"""


class InadmissibleBoundError(NegDesignError):
    """A lower bound exceeds the true distance of its pair"""


class ProblemFileError(NegDesignError):
    """A problem file cannot be parsed or validated"""

    def __init__(self, message, line=None, entity=None):
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)
        self.line = line
        self.entity = entity
