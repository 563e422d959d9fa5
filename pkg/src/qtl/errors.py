"""Exception hierarchy shared by all qtl modules.

Every error raised on purpose derives from QtlError so callers (and the
CLI) can separate expected diagnostics from genuine bugs.
"""


class QtlError(Exception):
    """Base class for all qtl diagnostics."""


# quiver construction / validation

class PartitionViolation(QtlError):
    """Vertex partition broken: a pair is not a 2-set, overlaps, or leaves gaps."""


class IncompatibleDimension(QtlError):
    """Dimension vector incompatible with the vertex partition or star pattern."""


class DanglingArrow(QtlError):
    """Arrow endpoint is not a declared vertex."""


class FourthCasePresent(QtlError):
    """Operation requires a quiver with no doubly-starred arrows."""


# words and trace products

class EmptyWord(QtlError):
    """Words must contain at least one letter."""


class DuplicateSymbol(QtlError):
    """A multilinear trace product used a numbered letter twice."""


# exact algebra

class NotSquare(QtlError):
    """Square matrix required."""


class ShapeMismatch(QtlError):
    """Matrix shapes do not compose or do not match the dimension vector."""


class MissingAssignment(QtlError):
    """Word evaluation hit an arrow without an assigned matrix."""


class FieldMismatch(QtlError):
    """Operands live over different coefficient fields or variable universes."""


class Singular(QtlError):
    """Invertible matrix required."""


# engine

class NotAdmissible(QtlError):
    """Word is not a closed path in the doubled quiver."""


class LayoutMismatch(QtlError):
    """Permutation datum inconsistent with the hat-quiver layout."""


class NotInHom(QtlError):
    """Permutation fails the equivariance membership equations."""


class NotDominating(QtlError):
    """Dimension specialization requires a componentwise-larger source."""


class UnbalancedMultidegree(QtlError):
    """Hat layout needs equally many starred-head and starred-tail copies."""


# oracle

class UnsupportedCharacteristic(QtlError):
    """Operation is only available in characteristic zero (or odd, as stated)."""


class BudgetExceeded(QtlError):
    """A configured size budget (monomials, superclass size, ...) was exceeded."""


# supermixed

class OddCharRequired(QtlError):
    """Orthogonal factors need an odd-characteristic (or zero) ground field."""


# CLI / input files

class ParseError(QtlError):
    """Malformed quiver specification file."""
