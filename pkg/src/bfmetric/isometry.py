"""Autoisometry enumeration, extension queries, orbits, ultrahomogeneity.

This module is the brute-force ground truth: it never consults the refinement
engine, only raw backtracking over permutations.
"""
from __future__ import annotations

import itertools

from .errors import SpaceTooLarge
from .partial_map import PartialMap, all_partial_isometries, is_partial_isometry, normalize
from .space import MetricSpace

DEFAULT_GROUP_LIMIT = 8
DEFAULT_EXTENSION_LIMIT = 12

Isometry = tuple  # total permutation of point indices, distance-preserving


def autoisometries(space: MetricSpace, limit: int = DEFAULT_GROUP_LIMIT) -> list[Isometry]:
    """The full autoisometry group, in lexicographic order.

    Contains the identity and is closed under composition and inverse (a
    property the tests verify rather than assume).
    """
    if space.n > limit:
        raise SpaceTooLarge(space.n, limit)
    n = space.n
    d = space.d
    out: list[Isometry] = []
    perm: list[int] = []
    used = [False] * n

    def rec(i: int):
        if i == n:
            out.append(tuple(perm))
            return
        for y in range(n):
            if used[y]:
                continue
            if all(d[i][j] == d[y][perm[j]] for j in range(i)):
                used[y] = True
                perm.append(y)
                rec(i + 1)
                perm.pop()
                used[y] = False

    rec(0)
    return out


def extends_to_autoisometry(
    space: MetricSpace, p: PartialMap, limit: int = DEFAULT_EXTENSION_LIMIT
) -> Isometry | None:
    """Some autoisometry extending p, or None.

    Direct backtracking from p's assignments, so it works even when the full
    group would be too large to enumerate. Unassigned points are picked
    fail-first: most distinct distances to the current domain first.
    """
    if space.n > limit:
        raise SpaceTooLarge(space.n, limit)
    for s, _ in p.pairs:
        space.check_index(s)
    for _, t in p.pairs:
        space.check_index(t)
    if not is_partial_isometry(space, p):
        return None
    n = space.n
    d = space.d
    assigned = p.as_dict()
    used = set(assigned.values())

    def rec() -> bool:
        if len(assigned) == n:
            return True
        remaining = [x for x in range(n) if x not in assigned]
        x = max(remaining, key=lambda z: (len({d[z][a] for a in assigned}), -z))
        for y in range(n):
            if y in used:
                continue
            if all(d[x][a] == d[y][b] for a, b in assigned.items()):
                assigned[x] = y
                used.add(y)
                if rec():
                    return True
                del assigned[x]
                used.remove(y)
        return False

    if rec():
        return tuple(assigned[i] for i in range(n))
    return None


def _orbits_from_group(space: MetricSpace, k: int, group: list[Isometry]):
    seen: set[tuple] = set()
    classes = []
    for t in itertools.permutations(range(space.n), k):
        if t in seen:
            continue
        orbit = sorted({tuple(g[i] for i in t) for g in group})
        seen.update(orbit)
        classes.append(orbit)
    return classes


def _orbits_from_extension(space: MetricSpace, k: int):
    classes: list[list[tuple]] = []
    for t in itertools.permutations(range(space.n), k):
        for cls in classes:
            p = normalize(cls[0], t)
            if p is not None and extends_to_autoisometry(space, p) is not None:
                cls.append(t)
                break
        else:
            classes.append([t])
    return [sorted(cls) for cls in classes]


def orbits(space: MetricSpace, k: int, method: str = "auto", limit: int = DEFAULT_GROUP_LIMIT):
    """Partition of injective k-tuples under the diagonal group action.

    method: "group" (enumerate the group once), "extension" (pairwise
    extension queries, usable when the group is too big), or "auto".
    Both paths produce the same partition; the tests compare them.
    """
    if k > space.n:
        raise ValueError(f"tuple length {k} exceeds point count {space.n}")
    if method == "auto":
        method = "group" if space.n <= limit else "extension"
    if method == "group":
        return _orbits_from_group(space, k, autoisometries(space, limit))
    if method == "extension":
        return _orbits_from_extension(space, k)
    raise ValueError(f"unknown orbit method {method!r}")


def is_ultrahomogeneous(space: MetricSpace, limit: int = DEFAULT_GROUP_LIMIT) -> bool:
    """Whether every distance-preserving partial map extends to an autoisometry.

    Computed from the definition; independent of the refinement engine.
    """
    if space.n > limit:
        raise SpaceTooLarge(space.n, limit)
    return all(
        extends_to_autoisometry(space, p) is not None
        for p in all_partial_isometries(space)
    )
