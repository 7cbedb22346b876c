"""Exception types shared across the package."""


class CowordsError(Exception):
    """Base class for all errors raised by this package."""


class MalformedToken(CowordsError):
    """A word token is not of the form ``name`` or ``name^-1``."""


class UnknownGenerator(CowordsError):
    """A token names a generator outside the alphabet."""


class InvalidRay(CowordsError):
    """A ray index or ray point is out of range for the star."""


class RayCountMismatch(CowordsError):
    """Two Houghton elements live on stars with different ray counts."""


class InvalidRayCount(CowordsError):
    """The requested number of rays is out of range."""


class InvalidIndex(CowordsError):
    """A generator index is out of range for the rank."""


class InvalidRank(CowordsError):
    """The requested free-group rank is out of range."""


class ParameterMismatch(CowordsError):
    """Two prefix maps have different arity or root count."""


class InvalidGenerators(CowordsError):
    """A generator table fails validation."""


class UnknownTerminal(CowordsError):
    """A word contains a symbol outside a grammar's terminal alphabet."""


class UnknownLetter(CowordsError):
    """A word contains a symbol outside a machine's input alphabet."""
