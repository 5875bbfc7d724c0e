"""The clocked and unclocked matching games: state machine, exhaustive solver,
and the engine's optimal strategy.

Player I challenges with a point on either side (declaring a strictly
decreasing ordinal first, in the clocked variant); Player II answers on the
opposite side. The clocked game ends when the round declared with ordinal 0
completes, and Player II wins exactly when the accumulated correspondence
preserves all distances. The unclocked game never ends by clock; on a finite
space an interactive session is truncated once the correspondence is total,
at which point the partial-isometry status of the (total) map settles it.

:func:`solve` is an exhaustive memoized game-tree search keyed on
(correspondence, remaining clock) and is deliberately independent of the
refinement engine — the two are cross-validated in the test suite, never
mixed here.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import GameOverError, IllegalMove, SpaceTooLarge
from .partial_map import (
    EMPTY_MAP,
    PartialMap,
    all_partial_isometries,
    extend,
    is_partial_isometry,
    normalize,
)
from .errors import InvalidExtension
from .refine import Rank, RefinementTable
from .space import MetricSpace

DEFAULT_SOLVE_LIMIT = 6


# ---------------------------------------------------------------------------
# moves and state


@dataclass(frozen=True)
class Challenge:
    point: int
    side: str  # "L" or "R"
    ordinal: int | None = None  # None in the unclocked game

    def to_wire(self) -> dict:
        out = {"type": "challenge", "side": self.side, "point": self.point}
        if self.ordinal is not None:
            out["ordinal"] = self.ordinal
        return out


@dataclass(frozen=True)
class Response:
    point: int

    def to_wire(self) -> dict:
        return {"type": "response", "point": self.point}


Move = Challenge | Response


@dataclass(frozen=True)
class Round:
    """A completed round: the challenge and Player II's answer."""

    challenge: Challenge
    response: int

    def to_wire(self) -> dict:
        return {"challenge": self.challenge.to_wire(), "response": self.response}


@dataclass(frozen=True)
class GameState:
    """Immutable game position; every move produces a new state."""

    space: MetricSpace
    a: tuple[int, ...]
    b: tuple[int, ...]
    current: PartialMap | None  # None when the initial tuples were inconsistent
    clock: int | None  # exclusive bound for the next declared ordinal; None = unclocked
    moves: tuple[Round, ...] = ()
    pending: Challenge | None = None
    winner: str | None = None

    @property
    def infinite(self) -> bool:
        return self.clock is None

    @property
    def phase(self) -> str:
        if self.winner is not None:
            return "over"
        if self.pending is not None:
            return "await_response"
        return "await_challenge"

    @property
    def to_move(self) -> str | None:
        """Which player acts next: "I" challenges, "II" responds."""
        if self.winner is not None:
            return None
        return "II" if self.pending is not None else "I"


def new_game(space: MetricSpace, a, b, clock: int | None) -> GameState:
    """Start a game on a tuple pair.

    If the initial pair is inconsistent or not distance-preserving, the game
    is over at once with Player I the winner (the classical setup assumes a
    starting partial isometry; declaring II lost totalizes it). A zero clock
    means no round can be declared: II wins immediately on a preserving base.
    """
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError("tuples must have equal length")
    for i in a + b:
        space.check_index(i)
    if clock is not None and clock < 0:
        raise ValueError("clock must be a natural number or None")
    p = normalize(a, b)
    if p is None or not is_partial_isometry(space, p):
        return GameState(space=space, a=a, b=b, current=p, clock=clock, winner="I")
    if clock == 0:
        return GameState(space=space, a=a, b=b, current=p, clock=clock, winner="II")
    return GameState(space=space, a=a, b=b, current=p, clock=clock)


def legal_moves(state: GameState) -> list[Move]:
    if state.phase == "over":
        raise GameOverError(state.winner)
    n = state.space.n
    if state.phase == "await_response":
        return [Response(p) for p in range(n)]
    if state.infinite:
        return [Challenge(p, side) for side in ("L", "R") for p in range(n)]
    return [
        Challenge(p, side, o)
        for o in range(state.clock)
        for side in ("L", "R")
        for p in range(n)
    ]


def _legal_digest(state: GameState) -> dict:
    if state.phase == "await_response":
        return {"responses": list(range(state.space.n))}
    return {
        "ordinals": None if state.infinite else list(range(state.clock)),
        "sides": ["L", "R"],
        "points": list(range(state.space.n)),
    }


def apply_move(state: GameState, move: Move) -> GameState:
    """Advance the game by one legal move; raises IllegalMove otherwise."""
    if state.phase == "over":
        raise GameOverError(state.winner)
    n = state.space.n
    if isinstance(move, Challenge):
        if state.phase != "await_challenge":
            raise IllegalMove("a response is pending", _legal_digest(state))
        if not 0 <= move.point < n:
            raise IllegalMove(f"point {move.point} out of range", _legal_digest(state))
        if move.side not in ("L", "R"):
            raise IllegalMove(f"bad side {move.side!r}", _legal_digest(state))
        if state.infinite:
            if move.ordinal is not None:
                raise IllegalMove("no ordinal is declared in the unclocked game", _legal_digest(state))
        else:
            if move.ordinal is None or not 0 <= move.ordinal < state.clock:
                raise IllegalMove(
                    f"ordinal must lie strictly below {state.clock}", _legal_digest(state)
                )
        return replace(state, pending=move)
    if isinstance(move, Response):
        if state.phase != "await_response":
            raise IllegalMove("a challenge must come first", _legal_digest(state))
        if not 0 <= move.point < n:
            raise IllegalMove(f"point {move.point} out of range", _legal_digest(state))
        ch = state.pending
        rounds = state.moves + (Round(ch, move.point),)
        try:
            ext = extend(state.space, state.current, ch.side, ch.point, move.point)
        except InvalidExtension:
            return replace(state, moves=rounds, pending=None, winner="I")
        if not state.infinite:
            new_clock = ch.ordinal
            if new_clock == 0:
                winner = "II" if is_partial_isometry(state.space, ext) else "I"
                return replace(
                    state, current=ext, moves=rounds, pending=None, clock=new_clock, winner=winner
                )
            return replace(state, current=ext, moves=rounds, pending=None, clock=new_clock)
        if ext.is_total(n):
            # nothing new can ever be played; score by the final map
            winner = "II" if is_partial_isometry(state.space, ext) else "I"
            return replace(state, current=ext, moves=rounds, pending=None, winner=winner)
        return replace(state, current=ext, moves=rounds, pending=None)
    raise IllegalMove(f"unknown move {move!r}", _legal_digest(state))


def replay(space: MetricSpace, a, b, clock, moves) -> GameState:
    """Rebuild a state from its move log; used to audit wire states."""
    state = new_game(space, a, b, clock)
    for move in moves:
        state = apply_move(state, move)
    return state


# ---------------------------------------------------------------------------
# exhaustive solver


@dataclass(frozen=True)
class ChallengeNode:
    """Player I's winning certificate: a challenge and a subtree per response.

    A ``None`` child means the game is over (and lost for II) after that
    response.
    """

    challenge: Challenge
    children: dict[int, "ChallengeNode | None"] = field(default_factory=dict)


@dataclass(frozen=True)
class Verdict:
    winner: str  # "I" or "II"
    # For II: {(map pairs, ordinal, side, challenge point): response point},
    # covering every position reachable under the strategy. For I: a
    # ChallengeNode tree. None when the game is over before any move.
    certificate: dict | ChallengeNode | None = None


class GameTreeSolver:
    """Memoized exhaustive search over (correspondence, clock) positions."""

    def __init__(self, space: MetricSpace, limit: int = DEFAULT_SOLVE_LIMIT):
        if space.n > limit:
            raise SpaceTooLarge(space.n, limit)
        self.space = space
        self.n = space.n
        self._memo: dict[tuple, bool] = {}
        self._pres: dict[tuple, bool] = {}
        self._survivors: set[tuple] | None = None

    def _preserving(self, p: PartialMap) -> bool:
        cached = self._pres.get(p.pairs)
        if cached is None:
            cached = self._pres[p.pairs] = is_partial_isometry(self.space, p)
        return cached

    def _extensions(self, p: PartialMap, side: str, x: int):
        """(response, extended map) for every response that keeps the map legal."""
        out = []
        for y in range(self.n):
            try:
                out.append((y, extend(self.space, p, side, x, y)))
            except InvalidExtension:
                pass
        return out

    def ii_wins_clocked(self, p: PartialMap, alpha: int) -> bool:
        """Whether II survives the clocked game from map p with clock alpha."""
        key = (p.pairs, alpha)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        if not self._preserving(p):
            # every extension stays non-preserving, so I ends the game and wins
            result = False
        elif alpha == 0:
            result = True
        else:
            result = True
            for beta in range(alpha):
                for side in ("L", "R"):
                    for x in range(self.n):
                        if not any(
                            self.ii_wins_clocked(ext, beta)
                            for _, ext in self._extensions(p, side, x)
                        ):
                            result = False
                            break
                    if not result:
                        break
                if not result:
                    break
        self._memo[key] = result
        return result

    def survivors(self) -> set[tuple]:
        """Greatest self-sustaining set of preserving maps (unclocked winners)."""
        if self._survivors is None:
            alive = {m.pairs: m for m in all_partial_isometries(self.space)}
            while True:
                dying = []
                for pairs, m in alive.items():
                    dom = m.sources
                    ran = m.targets
                    ok = all(
                        any(
                            ext.pairs in alive
                            for _, ext in self._extensions(m, "L", x)
                        )
                        for x in range(self.n)
                        if x not in dom
                    ) and all(
                        any(
                            ext.pairs in alive
                            for _, ext in self._extensions(m, "R", y)
                        )
                        for y in range(self.n)
                        if y not in ran
                    )
                    if not ok:
                        dying.append(pairs)
                if not dying:
                    break
                for pairs in dying:
                    del alive[pairs]
            self._survivors = set(alive)
        return self._survivors

    def ii_wins(self, p: PartialMap, clock: int | None) -> bool:
        if clock is None:
            return self._preserving(p) and p.pairs in self.survivors()
        return self.ii_wins_clocked(p, clock)

    # -- certificates -------------------------------------------------------

    def strategy_table(self, p: PartialMap, clock: int | None) -> dict:
        """Winning responses for II from every position reachable under them."""
        table: dict[tuple, int] = {}
        seen: set[tuple] = set()

        def visit(m: PartialMap, alpha):
            key = (m.pairs, alpha)
            if key in seen:
                return
            seen.add(key)
            ordinals = [None] if alpha is None else range(alpha)
            for beta in ordinals:
                for side in ("L", "R"):
                    for x in range(self.n):
                        for y, ext in self._extensions(m, side, x):
                            if self.ii_wins(ext, beta):
                                table[(m.pairs, beta, side, x)] = y
                                visit(ext, beta)
                                break

        visit(p, clock)
        return table

    def challenge_tree(self, p: PartialMap, clock: int | None) -> ChallengeNode:
        """Winning challenge tree for I from a position II cannot hold."""

        def build(m: PartialMap, alpha) -> ChallengeNode:
            ordinals = [None] if alpha is None else range(alpha)
            for beta in ordinals:
                for x in range(self.n):
                    for side in ("L", "R"):
                        if beta is None:
                            # unclocked: only progress-making challenges, so the
                            # tree bottoms out at a total map
                            matched = m.sources if side == "L" else m.targets
                            if x in matched:
                                continue
                        exts = self._extensions(m, side, x)
                        if any(self.ii_wins(ext, beta) for _, ext in exts):
                            continue
                        children: dict[int, ChallengeNode | None] = {}
                        for y in range(self.n):
                            ext = dict(exts).get(y)
                            if ext is None or beta == 0:
                                children[y] = None  # illegal answer or final round
                            elif beta is None and ext.is_total(self.n):
                                children[y] = None  # truncated unclocked game
                            else:
                                children[y] = build(ext, beta)
                        return ChallengeNode(
                            challenge=Challenge(x, side, beta), children=children
                        )
            raise AssertionError("no winning challenge from a losing position")

        return build(p, clock)


_solver_cache: dict[tuple, GameTreeSolver] = {}


def solver_for(space: MetricSpace, limit: int = DEFAULT_SOLVE_LIMIT) -> GameTreeSolver:
    key = (space, limit)
    solver = _solver_cache.get(key)
    if solver is None:
        solver = _solver_cache[key] = GameTreeSolver(space, limit)
    return solver


def solve(space: MetricSpace, a, b, clock: int | None, limit: int = DEFAULT_SOLVE_LIMIT) -> Verdict:
    """Decide the game on a tuple pair and produce a winner's certificate."""
    a, b = tuple(a), tuple(b)
    for i in a + b:
        space.check_index(i)
    solver = solver_for(space, limit)
    p = normalize(a, b)
    if p is None or not is_partial_isometry(space, p):
        return Verdict(winner="I", certificate=None)
    if clock == 0:
        return Verdict(winner="II", certificate={})
    if solver.ii_wins(p, clock):
        return Verdict(winner="II", certificate=solver.strategy_table(p, clock))
    return Verdict(winner="I", certificate=solver.challenge_tree(p, clock))


# ---------------------------------------------------------------------------
# engine strategy from the refinement table


def _extension_rank(space, table: RefinementTable, p, side, x, y) -> Rank | None:
    """Rank of the one-point extension, or None when the extension is illegal."""
    try:
        ext = extend(space, p, side, x, y)
    except InvalidExtension:
        return None
    return table.rank_of(ext)


def engine_move(state: GameState, table: RefinementTable) -> Move:
    """Optimal move for whichever player is to act, from the refinement table.

    Responding: pick the lowest point whose extension stays in the declared
    level; if none exists, maximize the extension's rank. Challenging: when
    the current map dies at level s and the clock allows, declare s-1 and pick
    the first challenge (ascending point, L before R) every answer to which
    falls out of level s-1; from an unwinnable position, minimize the number
    of answers that keep II safe.
    """
    if state.phase == "over":
        raise GameOverError(state.winner)
    space = state.space
    n = space.n
    p = state.current

    if state.phase == "await_response":
        ch = state.pending
        beta = ch.ordinal  # None in the unclocked game
        best_y, best_rank = None, None
        for y in range(n):
            r = _extension_rank(space, table, p, ch.side, ch.point, y)
            if r is None:
                continue
            if beta is None:
                if r.is_top:
                    return Response(y)
            elif r.is_top or r.level > beta:
                return Response(y)
            if best_rank is None or r > best_rank:
                best_y, best_rank = y, r
        # losing: best_y is None only if every response is an illegal
        # extension, which cannot happen (some point is always unmatched,
        # and a fully matched side means the challenged point is matched too,
        # making the agreeing response legal)
        return Response(best_y if best_y is not None else 0)

    # Player I to challenge
    r = table.rank_of(p)
    clocked = not state.infinite
    max_ordinal = (state.clock - 1) if clocked else None
    can_win = (not r.is_top) and (not clocked or r.level - 1 <= max_ordinal)

    if can_win:
        s = r.level
        if s == 0:
            # current map already fails; end the game / head for totality
            if clocked:
                return Challenge(0, "L", 0)
            x = min(i for i in range(n) if i not in p.sources)
            return Challenge(x, "L")
        beta = s - 1
        for x in range(n):
            for side in ("L", "R"):
                responses = [
                    _extension_rank(space, table, p, side, x, y) for y in range(n)
                ]
                if all(
                    rr is None or (not rr.is_top and rr.level <= beta) for rr in responses
                ):
                    return Challenge(x, side, beta if clocked else None)
        raise AssertionError("rank promises a winning challenge but none was found")

    # unwinnable: harass by minimizing II's surviving answers, preferring
    # challenges on unmatched points so unclocked games still make progress
    beta = max_ordinal
    best = None
    for x in range(n):
        for side in ("L", "R"):
            stale = x in (p.sources if side == "L" else p.targets)
            surviving = 0
            for y in range(n):
                rr = _extension_rank(space, table, p, side, x, y)
                if rr is None:
                    continue
                if beta is None:
                    surviving += rr.is_top
                else:
                    surviving += rr.is_top or rr.level > beta
            if best is None or (stale, surviving) < best[0]:
                best = ((stale, surviving), x, side)
    _, x, side = best
    return Challenge(x, side, beta)
