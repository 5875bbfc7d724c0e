"""Exact-arithmetic back-and-forth analysis of finite rational metric spaces."""

from .analysis import AnalysisReport, analyze
from .game import (
    Challenge,
    GameState,
    GameTreeSolver,
    Response,
    Verdict,
    apply_move,
    engine_move,
    legal_moves,
    new_game,
    solve,
)
from .isometry import (
    autoisometries,
    extends_to_autoisometry,
    is_ultrahomogeneous,
    orbits,
)
from .partial_map import (
    EMPTY_MAP,
    PartialMap,
    all_partial_isometries,
    extend,
    is_partial_isometry,
    normalize,
)
from .refine import (
    Rank,
    RefinementTable,
    TOP,
    equiv_at,
    rank_of_pair,
    rank_of_pair_naive,
    refine,
    scott_rank,
    scott_rank_literal,
    table_for,
)
from .space import (
    MetricSpace,
    decode,
    encode,
    from_graph,
    generate,
    scale,
    validate_space,
)

__version__ = "0.1.0"
