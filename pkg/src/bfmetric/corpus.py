"""Test corpora: exhaustive small spaces and seeded random families."""
from __future__ import annotations

import itertools

from .space import MetricSpace, generate, validate_space


def _canonical(n: int, d) -> tuple:
    """Minimum over all relabelings of the flattened distance matrix."""
    best = None
    for perm in itertools.permutations(range(n)):
        flat = tuple(d[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or flat < best:
            best = flat
    return best


def exhaustive_spaces(max_n: int = 4, distances=(1, 2, 3)) -> list[MetricSpace]:
    """All metric spaces with at most max_n points and the given distance set,
    one representative per isometry class."""
    out = [validate_space([[0]])]
    for n in range(2, max_n + 1):
        seen = set()
        positions = list(itertools.combinations(range(n), 2))
        for values in itertools.product(distances, repeat=len(positions)):
            d = [[0] * n for _ in range(n)]
            for (i, j), v in zip(positions, values):
                d[i][j] = d[j][i] = v
            ok = all(
                d[i][k] <= d[i][j] + d[j][k]
                for i in range(n)
                for j in range(n)
                for k in range(n)
                if len({i, j, k}) == 3
            )
            if not ok:
                continue
            key = _canonical(n, d)
            if key in seen:
                continue
            seen.add(key)
            out.append(validate_space(d))
    return out


def random_spaces(count: int, n: int, seed: int = 0) -> list[MetricSpace]:
    """Seeded mix of random graph-closure and L1-grid spaces."""
    out = []
    for i in range(count):
        kind = "random_graph" if i % 2 == 0 else "random_l1"
        out.append(generate(kind, {"n": n}, seed=seed + i))
    return out


def mixed_random_spaces(count: int, max_n: int = 6, seed: int = 0) -> list[MetricSpace]:
    """Seeded random spaces with sizes cycling through 2..max_n."""
    out = []
    sizes = list(range(2, max_n + 1))
    for i in range(count):
        n = sizes[i % len(sizes)]
        kind = "random_graph" if i % 2 == 0 else "random_l1"
        out.append(generate(kind, {"n": n}, seed=seed + i))
    return out
