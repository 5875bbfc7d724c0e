"""Finite metric spaces with exact rational distances.

Distances are :class:`fractions.Fraction` values throughout; nothing in the
package ever touches floating point, so distance comparisons are exact.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    Asymmetric,
    BadParams,
    Disconnected,
    EmptySpace,
    IndexOutOfRange,
    NonpositiveScale,
    NonzeroDiagonal,
    ParseError,
    TriangleViolation,
    ZeroOffDiagonal,
)

Rat = Fraction


def parse_rat(text) -> Fraction:
    """Parse "p" or "p/q" (q > 0) into a Fraction.

    Inputs not in lowest terms are normalized; a nonpositive denominator is
    rejected outright.
    """
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"malformed rational {text!r}") from None
    if d <= 0:
        raise ParseError(f"nonpositive denominator in {text!r}")
    return Fraction(n, d)


def format_rat(q: Fraction) -> str:
    """Canonical form: "p" for integers, "p/q" in lowest terms otherwise."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class MetricSpace:
    """Immutable finite metric space with rational distances.

    Construct through :func:`validate_space` (or the generators below) so the
    metric axioms are checked exactly once.
    """

    labels: tuple[str, ...]
    d: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def dist(self, i: int, j: int) -> Fraction:
        return self.d[i][j]

    def check_index(self, i: int) -> None:
        if not isinstance(i, int) or not 0 <= i < self.n:
            raise IndexOutOfRange(i, self.n)

    def __repr__(self):
        return f"MetricSpace(n={self.n})"


def validate_space(matrix, labels=None) -> MetricSpace:
    """Check the four metric axioms and freeze the space.

    The first violated invariant is reported with its indices, checked in the
    order: zero diagonal, symmetry, positivity, triangle inequality.
    """
    n = len(matrix)
    if n == 0:
        raise EmptySpace()
    rows = []
    for row in matrix:
        if len(row) != n:
            raise BadParams(f"matrix is not square: row of length {len(row)}, expected {n}")
        rows.append(tuple(Fraction(x) for x in row))
    d = tuple(rows)
    for i in range(n):
        if d[i][i] != 0:
            raise NonzeroDiagonal(i)
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                raise Asymmetric(i, j)
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] <= 0:
                raise ZeroOffDiagonal(i, j)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                if d[i][k] > d[i][j] + d[j][k]:
                    raise TriangleViolation(i, j, k)
    if labels is None:
        labels = tuple(f"p{i}" for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise BadParams(f"{len(labels)} labels for {n} points")
    return MetricSpace(labels=labels, d=d)


def from_graph(n: int, edges, labels=None) -> MetricSpace:
    """Metric space as the min-plus closure of a positively weighted graph.

    The closure guarantees the triangle inequality in one pass; an unreachable
    pair raises :class:`Disconnected`.
    """
    if n < 1:
        raise BadParams("need at least one point")
    dist: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = Fraction(0)
    for i, j, w in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(i if not 0 <= i < n else j, n)
        if i == j:
            continue
        w = Fraction(w)
        if w <= 0:
            raise BadParams(f"edge ({i},{j}) has nonpositive weight {w}")
        if dist[i][j] is None or w < dist[i][j]:
            dist[i][j] = dist[j][i] = w
    for k in range(n):
        for i in range(n):
            dik = dist[i][k]
            if dik is None:
                continue
            for j in range(n):
                dkj = dist[k][j]
                if dkj is None:
                    continue
                if dist[i][j] is None or dik + dkj < dist[i][j]:
                    dist[i][j] = dist[j][i] = dik + dkj
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] is None:
                raise Disconnected(i, j)
    return validate_space(dist, labels)


def scale(space: MetricSpace, factor) -> MetricSpace:
    """Multiply every distance by a positive rational factor."""
    factor = Fraction(factor)
    if factor <= 0:
        raise NonpositiveScale()
    d = tuple(tuple(x * factor for x in row) for row in space.d)
    return MetricSpace(labels=space.labels, d=d)


def relabel(space: MetricSpace, perm) -> MetricSpace:
    """Isometric copy with point i of the result being point perm[i] of the input."""
    n = space.n
    if sorted(perm) != list(range(n)):
        raise BadParams(f"not a permutation of 0..{n - 1}: {perm}")
    d = tuple(tuple(space.d[perm[i]][perm[j]] for j in range(n)) for i in range(n))
    labels = tuple(space.labels[perm[i]] for i in range(n))
    return MetricSpace(labels=labels, d=d)


def generate(kind: str, params: dict, seed: int = 0) -> MetricSpace:
    """Deterministic space generators for the test corpus.

    kinds: path, cycle, random_l1 (rational grid points under L1),
    random_graph (closure of a random connected weighted graph).
    """
    n = params.get("n")
    if not isinstance(n, int) or n < 1:
        raise BadParams(f"bad point count {n!r}")
    if kind == "path":
        if n == 1:
            return validate_space([[0]])
        d = [[Fraction(abs(i - j)) for j in range(n)] for i in range(n)]
        return validate_space(d)
    if kind == "cycle":
        if n == 1:
            return validate_space([[0]])
        d = [[Fraction(min(abs(i - j), n - abs(i - j))) for j in range(n)] for i in range(n)]
        return validate_space(d)
    if kind == "random_l1":
        rng = random.Random(seed)
        dim = params.get("dim", 2)
        grid = params.get("grid", 4 * n)
        den = params.get("den", 2)
        if dim < 1 or grid < 1 or den < 1:
            raise BadParams("dim, grid and den must be positive")
        points: list[tuple[Fraction, ...]] = []
        attempts = 0
        while len(points) < n:
            attempts += 1
            if attempts > 1000 * n:
                raise BadParams("grid too small for that many distinct points")
            p = tuple(Fraction(rng.randint(0, grid), den) for _ in range(dim))
            if p not in points:
                points.append(p)
        d = [
            [sum((abs(a - b) for a, b in zip(p, q)), Fraction(0)) for q in points]
            for p in points
        ]
        return validate_space(d)
    if kind == "random_graph":
        rng = random.Random(seed)
        extra = params.get("edge_prob", 0.3)
        edges = []
        for i in range(1, n):
            j = rng.randrange(i)
            edges.append((i, j, Fraction(rng.randint(1, 6), rng.randint(1, 3))))
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < extra:
                    edges.append((i, j, Fraction(rng.randint(1, 6), rng.randint(1, 3))))
        return from_graph(n, edges)
    raise BadParams(f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# serialization: {"labels": [...], "d": [["0", "1/2", ...], ...]}


def to_document(space: MetricSpace) -> dict:
    return {
        "labels": list(space.labels),
        "d": [[format_rat(x) for x in row] for row in space.d],
    }


def encode(space: MetricSpace) -> str:
    """Canonical text form; rationals in lowest terms, rows in index order."""
    return json.dumps(to_document(space), indent=2) + "\n"


def from_document(doc) -> MetricSpace:
    if not isinstance(doc, dict):
        raise ParseError("document must be an object")
    if "d" not in doc:
        raise ParseError('missing "d" entry')
    d = doc["d"]
    if not isinstance(d, list) or not all(isinstance(row, list) for row in d):
        raise ParseError('"d" must be a list of rows')
    matrix = [[parse_rat(x) for x in row] for row in d]
    labels = doc.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise ParseError('"labels" must be a list of strings')
    return validate_space(matrix, labels)


def decode(text: str) -> MetricSpace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    return from_document(doc)
