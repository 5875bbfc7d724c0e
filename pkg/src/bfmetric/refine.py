"""Back-and-forth hierarchy over partial maps, computed by fixpoint refinement.

Level 0 holds every distance-preserving partial map. Each refinement round
keeps a map only when every challenge point outside its domain (and, on the
other side, outside its range) admits a response that lands back in the
previous level. On a finite space the chain of levels is a strictly shrinking
sequence of finite sets, so it stabilizes after at most |level 0| rounds and
no limit stages below the first infinite ordinal contribute anything; the
stabilization index is recorded as ``alpha_star``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import LimitExceeded, SpaceTooLarge
from .partial_map import (
    PartialMap,
    all_partial_isometries,
    is_partial_isometry,
    normalize,
)
from .space import MetricSpace

DEFAULT_SPACE_LIMIT = 8


@functools.total_ordering
@dataclass(frozen=True)
class Rank:
    """Failure level of a map: Finite(k) or Top (never fails).

    ``level=None`` encodes Top, the conventional "-1 at every level" value;
    Top compares greater than every finite rank.
    """

    level: int | None = None

    @property
    def is_top(self) -> bool:
        return self.level is None

    def __lt__(self, other: "Rank") -> bool:
        if self.is_top:
            return False
        if other.is_top:
            return True
        return self.level < other.level

    def __str__(self):
        return "top" if self.is_top else str(self.level)


TOP = Rank(None)


@dataclass(frozen=True)
class RefinementTable:
    """Rank of every distance-preserving partial map, plus chain statistics."""

    space: MetricSpace
    ranks: dict[PartialMap, Rank]
    alpha_star: int
    level_sizes: tuple[int, ...]

    def rank_of(self, p: PartialMap) -> Rank:
        # maps absent from the table are not distance-preserving: rank 0
        return self.ranks.get(p, Rank(0))

    def in_level(self, p: PartialMap, alpha: int) -> bool:
        r = self.rank_of(p)
        return r.is_top or r.level > alpha

    def top_maps(self) -> list[PartialMap]:
        return [p for p, r in self.ranks.items() if r.is_top]

    def index_map_set(self) -> frozenset:
        """The table as a bare set of (pairs, rank) items, for invariance checks."""
        return frozenset((p.pairs, r.level) for p, r in self.ranks.items())

    def to_dict(self) -> dict:
        return {
            "alpha_star": self.alpha_star,
            "level_sizes": list(self.level_sizes),
            "maps": [
                {
                    "map": str(p),
                    "pairs": [list(pair) for pair in p.pairs],
                    "rank": "top" if r.is_top else r.level,
                }
                for p, r in sorted(self.ranks.items(), key=lambda kv: (kv[0].size, kv[0].pairs))
            ],
        }


def refine(space: MetricSpace, limit: int = DEFAULT_SPACE_LIMIT) -> RefinementTable:
    """Run the refinement to its fixpoint and rank every preserving map.

    A map dies at round alpha+1 when some unmatched point on either side has
    no response that keeps the extended map in round alpha's survivor set;
    survivors of the fixpoint get rank Top.
    """
    if space.n > limit:
        raise SpaceTooLarge(space.n, limit)
    maps = all_partial_isometries(space)
    index = {m.pairs: i for i, m in enumerate(maps)}
    n = space.n

    # For each map, one requirement list per challenge point: the survivor-set
    # indices of its valid one-point extensions answering that challenge.
    requirements: list[list[list[int]]] = []
    for m in maps:
        dom = m.sources
        ran = m.targets
        lists = []
        for x in range(n):
            if x in dom:
                continue
            cand = []
            for y in range(n):
                if y in ran:
                    continue
                i = index.get(tuple(sorted(m.pairs + ((x, y),))))
                if i is not None:
                    cand.append(i)
            lists.append(cand)
        for y in range(n):
            if y in ran:
                continue
            cand = []
            for x in range(n):
                if x in dom:
                    continue
                i = index.get(tuple(sorted(m.pairs + ((x, y),))))
                if i is not None:
                    cand.append(i)
            lists.append(cand)
        requirements.append(lists)

    alive = [True] * len(maps)
    death_level = [0] * len(maps)
    level_sizes = [len(maps)]
    alpha = 0
    while True:
        dying = [
            i
            for i in range(len(maps))
            if alive[i]
            and any(not any(alive[c] for c in lst) for lst in requirements[i])
        ]
        if not dying:
            alpha_star = alpha
            break
        for i in dying:
            alive[i] = False
            death_level[i] = alpha + 1
        alpha += 1
        level_sizes.append(sum(alive))

    ranks = {
        maps[i]: (TOP if alive[i] else Rank(death_level[i])) for i in range(len(maps))
    }
    return RefinementTable(
        space=space, ranks=ranks, alpha_star=alpha_star, level_sizes=tuple(level_sizes)
    )


@functools.lru_cache(maxsize=128)
def table_for(space: MetricSpace, limit: int = DEFAULT_SPACE_LIMIT) -> RefinementTable:
    """Cached refinement table; spaces are immutable so this is safe."""
    return refine(space, limit)


def equiv_at(space: MetricSpace, a, b, alpha: int) -> bool:
    """Whether the tuple pair is equivalent at the given level."""
    if alpha < 0:
        raise ValueError("level must be a natural number")
    for i in tuple(a) + tuple(b):
        space.check_index(i)
    p = normalize(a, b)
    if p is None:
        return False
    return table_for(space).in_level(p, alpha)


def rank_of_pair(space: MetricSpace, a, b) -> Rank:
    """Rank of a tuple pair: 0 for inconsistent or non-preserving pairs."""
    for i in tuple(a) + tuple(b):
        space.check_index(i)
    p = normalize(a, b)
    if p is None:
        return Rank(0)
    return table_for(space).rank_of(p)


def scott_rank(space: MetricSpace, limit: int = DEFAULT_SPACE_LIMIT) -> tuple[int, PartialMap | None]:
    """Largest failure level among preserving maps, plus one; 0 when all survive.

    The supremum ranges over pairs admitting a partial isometry (level-0
    equivalent); the literal variant including structurally bad pairs is
    :func:`scott_rank_literal`.
    """
    table = table_for(space, limit)
    finite = [(r.level, p) for p, r in table.ranks.items() if not r.is_top]
    if not finite:
        return 0, None
    best = max(level for level, _ in finite)
    witness = PartialMap(min(p.pairs for level, p in finite if level == best))
    return best + 1, witness


def scott_rank_literal(space: MetricSpace, limit: int = DEFAULT_SPACE_LIMIT) -> int:
    """The unrestricted supremum, which also ranges over non-equivalent pairs.

    With at least two points the pair ((0,0),(0,1)) is inconsistent, hence has
    rank 0 and contributes 1 to the supremum; a one-point space has no such
    pair.
    """
    sr, _ = scott_rank(space, limit)
    if space.n == 1:
        return sr
    return max(sr, 1)


class NaiveTupleChecker:
    """Literal tuple-level evaluation of the back-and-forth clauses.

    Cross-check oracle for the tuple-to-map reduction: no normalization, the
    recursion works on raw tuple pairs with memoization. A pair failing
    level 0 fails every level, because deeper clauses only extend the pair and
    restrictions of partial isometries are partial isometries; that fact is
    used to prune, everything else follows the definition verbatim.
    """

    def __init__(self, space: MetricSpace, tuple_limit: int = 6, clock_limit: int = 12):
        self.space = space
        self.tuple_limit = tuple_limit
        self.clock_limit = clock_limit
        self._memo: dict[tuple, bool] = {}

    def equivalent(self, a, b, alpha: int) -> bool:
        a, b = tuple(a), tuple(b)
        if len(a) != len(b):
            raise ValueError("tuples must have equal length")
        if len(a) > self.tuple_limit:
            raise LimitExceeded(f"tuple length {len(a)} exceeds limit {self.tuple_limit}")
        if alpha > self.clock_limit:
            raise LimitExceeded(f"level {alpha} exceeds limit {self.clock_limit}")
        for i in a + b:
            self.space.check_index(i)
        return self._eq(a, b, alpha)

    def _eq(self, a, b, alpha) -> bool:
        key = (a, b, alpha)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        p = normalize(a, b)
        level0 = p is not None and is_partial_isometry(self.space, p)
        if alpha == 0 or not level0:
            result = level0 if alpha == 0 else False
        else:
            n = self.space.n
            beta = alpha - 1
            result = all(
                any(self._eq(a + (x,), b + (y,), beta) for y in range(n))
                for x in range(n)
            ) and all(
                any(self._eq(a + (y,), b + (x,), beta) for y in range(n))
                for x in range(n)
            )
        self._memo[key] = result
        return result


_naive_cache: dict[MetricSpace, NaiveTupleChecker] = {}


def rank_of_pair_naive(space: MetricSpace, a, b, alpha: int) -> bool:
    """Tuple-level equivalence verdict at the given level (memoized per space)."""
    checker = _naive_cache.get(space)
    if checker is None:
        checker = _naive_cache[space] = NaiveTupleChecker(space)
    return checker.equivalent(a, b, alpha)
