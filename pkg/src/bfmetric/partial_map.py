"""Partial maps between point indices and the partial-isometry predicate.

A pair of equal-length tuples induces a correspondence between points; when
that correspondence is a well-defined injective partial function it is stored
as a :class:`PartialMap`. Over exact rational distances, preserving every
strict threshold relation on distances is the same as preserving each pairwise
distance exactly, which is what :func:`is_partial_isometry` checks. This is
the single place where the threshold-relation semantics is collapsed to
distance equality.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidExtension
from .space import MetricSpace


@dataclass(frozen=True)
class PartialMap:
    """Injective partial function on point indices, sorted by source."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        srcs = [s for s, _ in self.pairs]
        tgts = [t for _, t in self.pairs]
        if srcs != sorted(srcs):
            raise ValueError("pairs must be sorted by source")
        if len(set(srcs)) != len(srcs):
            raise ValueError("not functional: duplicate source")
        if len(set(tgts)) != len(tgts):
            raise ValueError("not injective: duplicate target")

    @classmethod
    def from_pairs(cls, pairs) -> "PartialMap":
        return cls(tuple(sorted(pairs)))

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def sources(self) -> frozenset:
        return frozenset(s for s, _ in self.pairs)

    @property
    def targets(self) -> frozenset:
        return frozenset(t for _, t in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def get(self, source: int):
        for s, t in self.pairs:
            if s == source:
                return t
        return None

    def preimage(self, target: int):
        for s, t in self.pairs:
            if t == target:
                return s
        return None

    def inverse(self) -> "PartialMap":
        return PartialMap.from_pairs((t, s) for s, t in self.pairs)

    def is_total(self, n: int) -> bool:
        return len(self.pairs) == n

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __le__(self, other: "PartialMap") -> bool:
        return set(self.pairs) <= set(other.pairs)

    def __str__(self):
        inner = ", ".join(f"{s}->{t}" for s, t in self.pairs)
        return "{" + inner + "}"


EMPTY_MAP = PartialMap()


def normalize(a, b) -> PartialMap | None:
    """Correspondence induced by a tuple pair, or None when inconsistent.

    Inconsistent means some point is forced to two different partners, i.e.
    the pair fails level-0 equivalence for structural reasons.
    """
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError("tuples must have equal length")
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    for x, y in zip(a, b):
        if fwd.get(x, y) != y or bwd.get(y, x) != x:
            return None
        fwd[x] = y
        bwd[y] = x
    return PartialMap.from_pairs(fwd.items())


def is_partial_isometry(space: MetricSpace, p: PartialMap) -> bool:
    """True iff p preserves every pairwise distance exactly."""
    for s, _ in p.pairs:
        space.check_index(s)
    for _, t in p.pairs:
        space.check_index(t)
    d = space.d
    pairs = p.pairs
    for i in range(len(pairs)):
        si, ti = pairs[i]
        for j in range(i + 1, len(pairs)):
            sj, tj = pairs[j]
            if d[si][sj] != d[ti][tj]:
                return False
    return True


def extend(space: MetricSpace, p: PartialMap, side: str, challenge: int, response: int) -> PartialMap:
    """One round of the back-and-forth: add challenge->response (side L) or
    response->challenge (side R).

    If the challenged point is already matched, an agreeing response returns p
    unchanged and a disagreeing one raises ``InvalidExtension("conflict")``;
    reusing an already-matched response raises
    ``InvalidExtension("duplicate-target")``. Distance preservation is *not*
    checked here.
    """
    space.check_index(challenge)
    space.check_index(response)
    if side not in ("L", "R"):
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")
    if side == "L":
        existing = p.get(challenge)
        if existing is not None:
            if existing == response:
                return p
            raise InvalidExtension("conflict")
        if p.preimage(response) is not None:
            raise InvalidExtension("duplicate-target")
        return PartialMap.from_pairs(p.pairs + ((challenge, response),))
    existing = p.preimage(challenge)
    if existing is not None:
        if existing == response:
            return p
        raise InvalidExtension("conflict")
    if p.get(response) is not None:
        raise InvalidExtension("duplicate-target")
    return PartialMap.from_pairs(p.pairs + ((response, challenge),))


def all_partial_isometries(space: MetricSpace) -> list[PartialMap]:
    """Every distance-preserving partial map of the space, empty map included.

    Backtracking enumeration: domains are built in increasing source order and
    each new pair is checked against the pairs already placed, so only
    preserving maps are ever materialized.
    """
    n = space.n
    d = space.d
    out: list[PartialMap] = []

    def rec(pairs: tuple[tuple[int, int], ...], used_targets: set[int], next_src: int):
        out.append(PartialMap(pairs))
        for x in range(next_src, n):
            for y in range(n):
                if y in used_targets:
                    continue
                if all(d[x][s] == d[y][t] for s, t in pairs):
                    used_targets.add(y)
                    rec(pairs + ((x, y),), used_targets, x + 1)
                    used_targets.remove(y)

    rec((), set(), 0)
    return out
