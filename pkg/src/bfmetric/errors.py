"""Exception types shared across the package."""


class BFMetricError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------------------
# metric space construction


class EmptySpace(BFMetricError):
    def __init__(self):
        super().__init__("a metric space needs at least one point")


class NonzeroDiagonal(BFMetricError):
    def __init__(self, i):
        super().__init__(f"d[{i}][{i}] must be 0")
        self.i = i


class Asymmetric(BFMetricError):
    def __init__(self, i, j):
        super().__init__(f"d[{i}][{j}] != d[{j}][{i}]")
        self.i, self.j = i, j


class ZeroOffDiagonal(BFMetricError):
    def __init__(self, i, j):
        super().__init__(f"d[{i}][{j}] must be positive for distinct points")
        self.i, self.j = i, j


class TriangleViolation(BFMetricError):
    def __init__(self, i, j, k):
        super().__init__(f"d[{i}][{k}] > d[{i}][{j}] + d[{j}][{k}]")
        self.i, self.j, self.k = i, j, k


class Disconnected(BFMetricError):
    def __init__(self, i, j):
        super().__init__(f"no path between points {i} and {j}")
        self.i, self.j = i, j


class BadParams(BFMetricError):
    pass


class NonpositiveScale(BFMetricError):
    def __init__(self):
        super().__init__("scaling factor must be positive")


class ParseError(BFMetricError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# engine limits and lookups


class IndexOutOfRange(BFMetricError):
    def __init__(self, index, n):
        super().__init__(f"point index {index} out of range for a {n}-point space")
        self.index, self.n = index, n


class SpaceTooLarge(BFMetricError):
    def __init__(self, n, limit):
        super().__init__(f"space has {n} points, limit is {limit}")
        self.n, self.limit = n, limit


class LimitExceeded(BFMetricError):
    pass


# ---------------------------------------------------------------------------
# games


class InvalidExtension(BFMetricError):
    """One-point extension of a partial map broke functionality or injectivity.

    ``reason`` is "conflict" (the challenged point already has a different
    partner) or "duplicate-target" (the response point is already used).
    """

    def __init__(self, reason):
        super().__init__(f"invalid extension: {reason}")
        self.reason = reason


class GameOverError(BFMetricError):
    def __init__(self, winner):
        super().__init__(f"game is over (winner: Player {winner})")
        self.winner = winner


class IllegalMove(BFMetricError):
    def __init__(self, message, legal=None):
        super().__init__(message)
        self.legal = legal
