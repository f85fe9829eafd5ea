"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class BalleanError(Exception):
    """Base class for all errors raised by :mod:`ballean`."""


class EmptySetError(BalleanError, ValueError):
    pass


class UnknownPointError(BalleanError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown point"


class GroundMismatchError(BalleanError, ValueError):
    pass


class NotSubsetError(BalleanError, ValueError):
    pass


class OutOfRangeError(BalleanError, ValueError):
    pass


class PreconditionViolated(BalleanError, ValueError):
    pass


class NotMemberError(BalleanError, ValueError):
    pass


class NoEndError(BalleanError):
    """A member of a family has no right end for the requested entourage."""

    def __init__(self, subset):
        super().__init__(f"no right end found for {sorted(subset)}")
        self.subset = subset


class ConfigError(BalleanError):
    """Malformed configuration; ``location`` is a dotted path into the document."""

    def __init__(self, location: str, message: str):
        super().__init__(f"config error at {location}: {message}")
        self.location = location
        self.message = message
