class SpecclassError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedRing(SpecclassError):
    pass


class NotPID(UnsupportedRing):
    pass


class NotIntegerRing(UnsupportedRing):
    pass


class RingMismatch(SpecclassError):
    pass


class IllDefinedMap(SpecclassError):
    pass


class NeedCandidates(SpecclassError):
    """No complete strategy for enumerating candidate primes applies; pass them explicitly."""


class NotPrime(SpecclassError):
    pass


class ExplosionGuard(SpecclassError):
    pass


class IterationCap(SpecclassError):
    """A chain computation failed to stabilize within its hard cap."""


class ParseError(SpecclassError):
    def __init__(self, message: str, line: int = 0, col: int = 0, expected=()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        loc = f"{line}:{col}: " if line else ""
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{loc}{message}{exp}")
