# design_errors.py

# 1. Base Error Module
class NetworkDesignError(Exception):
    """Base class for every error raised by the network design scripts."""


# 2. Graph and Cut Function Errors
class EmptyNodeSet(NetworkDesignError):
    """Raised when an operation needs a nonempty node set."""


class InvalidRestriction(NetworkDesignError):
    """Raised when a restriction is requested on the empty set or the whole ground set."""


class SizeLimitExceeded(NetworkDesignError):
    """Raised when a brute-force enumeration would exceed its configured cap."""


class OverlappingTerminals(NetworkDesignError):
    """Raised when pinned sources and sinks of a min cut intersect."""


# 3. LP and Solver Errors
class Infeasible(NetworkDesignError):
    """
    Raised when a working LP has no feasible point.

    Args:
    - message (str): Human-readable reason.
    - certificate_rows (list): Indices of constraints carrying a nonzero Phase 1 multiplier.
    """

    def __init__(self, message, certificate_rows=()):
        super().__init__(message)
        self.certificate_rows = list(certificate_rows)


class IterationLimit(NetworkDesignError):
    """Raised when the cutting-plane or rounding loop runs past its guard."""


class AssertionHalfEdge(NetworkDesignError):
    """Raised when an extreme point has no free edge at value 1/2 or more."""


class InvariantViolation(NetworkDesignError):
    """Raised when a runtime check of a proven property fails."""


class NotKConnected(NetworkDesignError):
    """Raised when the k-ECSS reduction receives a graph that is not k-edge-connected."""


# 4. Instance File Errors
class ParseError(NetworkDesignError):
    """Raised on malformed instance or solution files; `line` is 1-based (0 when unknown)."""

    def __init__(self, message, line=0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class MixedFamilies(ParseError):
    """Raised when a file mixes req, kecss and grace directives."""


class NonDecreasingTau(ParseError):
    """Raised when a grace profile increases somewhere."""


class SelfLoop(ParseError):
    """Raised on an edge whose endpoints coincide."""
