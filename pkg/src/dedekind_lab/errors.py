"""Exception hierarchy. Every domain error the CLI can report lives here."""


class DedekindLabError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class NotCoprime(DedekindLabError, ValueError):
    pass


class NotPrime(DedekindLabError, ValueError):
    pass


class ResourceLimit(DedekindLabError):
    """A request would exceed the configured element budget."""


class IntegralityViolation(DedekindLabError, ArithmeticError):
    """Phi came out non-integral. This is always a bug."""


class InfinityCoset(DedekindLabError, ValueError):
    """The c = 0 double coset has symbol value infinity."""


class UnsupportedGroup(DedekindLabError, ValueError):
    pass


class EmptyStream(DedekindLabError, ValueError):
    pass
