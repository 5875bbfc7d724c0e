"""Three-way cross-validation: refinement vs game tree vs autoisometry search.

Any discrepancy reported here is a bug — the three computations are
independent routes to the same facts.
"""
from __future__ import annotations

from .game import GameTreeSolver
from .isometry import extends_to_autoisometry, is_ultrahomogeneous
from .refine import scott_rank, table_for
from .space import MetricSpace


def check_space(space: MetricSpace, game_tree: bool = True, solve_limit: int = 6) -> list[str]:
    """Run every cross-validation invariant on one space; returns mismatches.

    game_tree=False skips the exhaustive game solver (for sizes where only
    refinement and backtracking are feasible).
    """
    mismatches: list[str] = []
    table = table_for(space)
    solver = GameTreeSolver(space, limit=solve_limit) if game_tree else None
    maps = list(table.ranks)

    for p in maps:
        extends = extends_to_autoisometry(space, p) is not None
        if table.rank_of(p).is_top != extends:
            mismatches.append(
                f"map {p}: refinement rank {table.rank_of(p)} vs autoisometry extension {extends}"
            )
        if solver is not None:
            for alpha in range(table.alpha_star + 2):
                ref = table.in_level(p, alpha)
                game = solver.ii_wins_clocked(p, alpha)
                if ref != game:
                    mismatches.append(
                        f"map {p} at level {alpha}: refinement {ref} vs game tree {game}"
                    )
            unclocked = solver.ii_wins(p, None)
            if unclocked != extends:
                mismatches.append(
                    f"map {p}: unclocked game {unclocked} vs autoisometry extension {extends}"
                )

    sr, _ = scott_rank(space)
    ultra = is_ultrahomogeneous(space)
    if ultra != (sr == 0):
        mismatches.append(f"ultrahomogeneous {ultra} vs Scott rank {sr}")
    return mismatches
