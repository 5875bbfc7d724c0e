"""Aggregate report over the refinement, isometry and game modules."""
from __future__ import annotations

from dataclasses import dataclass

from .isometry import autoisometries, is_ultrahomogeneous
from .partial_map import PartialMap
from .refine import (
    DEFAULT_SPACE_LIMIT,
    RefinementTable,
    scott_rank,
    scott_rank_literal,
    table_for,
)
from .space import MetricSpace


@dataclass(frozen=True)
class AnalysisReport:
    scott_rank: int
    sr_literal: int
    alpha_star: int
    group_order: int
    ultrahomogeneous: bool
    witness: PartialMap | None
    worst_pairs: tuple[tuple[PartialMap, int], ...]  # maps at the deepest finite rank
    level_sizes: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "scott_rank": self.scott_rank,
            "sr_literal": self.sr_literal,
            "alpha_star": self.alpha_star,
            "group_order": self.group_order,
            "ultrahomogeneous": self.ultrahomogeneous,
            "witness": str(self.witness) if self.witness is not None else None,
            "worst_pairs": [[str(p), r] for p, r in self.worst_pairs],
            "level_sizes": list(self.level_sizes),
        }


def analyze(space: MetricSpace, limit: int = DEFAULT_SPACE_LIMIT) -> AnalysisReport:
    table = table_for(space, limit)
    sr, witness = scott_rank(space, limit)
    worst = tuple(
        sorted(
            ((p, r.level) for p, r in table.ranks.items() if not r.is_top and r.level == sr - 1),
            key=lambda pr: pr[0].pairs,
        )
    )
    return AnalysisReport(
        scott_rank=sr,
        sr_literal=scott_rank_literal(space, limit),
        alpha_star=table.alpha_star,
        group_order=len(autoisometries(space, limit)),
        ultrahomogeneous=is_ultrahomogeneous(space, limit),
        witness=witness,
        worst_pairs=worst,
        level_sizes=table.level_sizes,
    )


def table_export(space: MetricSpace, limit: int = DEFAULT_SPACE_LIMIT) -> dict:
    """Refinement-table document for the CLI and the analysis endpoint."""
    return table_for(space, limit).to_dict()
