"""Schmidt's game: alternating nested closed intervals with exact lengths.

Player B opens with a closed interval B_0 inside the board, player A
picks A_s inside B_s of length alpha*|B_s|, player B answers with
B_{s+1} inside A_s of length beta*|A_s|, so |B_s| = (alpha*beta)^s |B_0|
exactly.  Endpoints are exact rationals throughout (every float input is
a dyadic rational), so containment and the length law are checked with
exact arithmetic and hold to equality, not tolerance.

Strategies are callables (state, role) -> (lo, hi) proposing the next
interval; an illegal proposal forfeits the game for that player, which
is reported as a distinct outcome rather than an error.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

Interval = tuple[Fraction, Fraction]

ROLE_A = "A"
ROLE_B = "B"

OUTCOME_COMPLETED = "completed"
OUTCOME_FORFEIT_A = "forfeit-a"
OUTCOME_FORFEIT_B = "forfeit-b"


@dataclass
class GameState:
    alpha: Fraction
    beta: Fraction
    board: Interval
    history: list[tuple[str, Fraction, Fraction]] = field(default_factory=list)

    @property
    def current(self) -> Interval:
        label, lo, hi = self.history[-1]
        return lo, hi

    @property
    def round_index(self) -> int:
        """Number of completed (A, B) half-move pairs."""
        return (len(self.history) - 1) // 2

    def required_length(self, role: str) -> Fraction:
        lo, hi = self.current
        ratio = self.alpha if role == ROLE_A else self.beta
        return ratio * (hi - lo)


@dataclass
class GameResult:
    outcome: str
    state: GameState
    point: Fraction | None
    radius: Fraction | None
    forfeited_round: int | None = None


Strategy = Callable[[GameState, str], Interval]


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def place(parent: Interval, length: Fraction, offset: Fraction) -> Interval:
    """Subinterval of exact ``length`` at ``offset`` in [0, 1] of the slack."""
    lo, hi = parent
    slack = (hi - lo) - length
    left = lo + offset * slack
    return (left, left + length)


def play(board, alpha, beta, strategy_a: Strategy, strategy_b: Strategy,
         rounds: int, opening: Interval | None = None) -> GameResult:
    """Run ``rounds`` full (A, B) rounds; returns the final state and the
    midpoint of the last interval with radius |last|/2.

    ``opening`` is player B's initial interval B_0 (defaults to the whole
    board).  A strategy that proposes an interval violating containment
    or the exact length rule forfeits immediately.
    """
    alpha = _as_fraction(alpha)
    beta = _as_fraction(beta)
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise ValueError("alpha and beta must lie in (0, 1)")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    board = (_as_fraction(board[0]), _as_fraction(board[1]))
    if board[1] <= board[0]:
        raise ValueError("board must have positive length")

    if opening is None:
        b0 = board
    else:
        b0 = (_as_fraction(opening[0]), _as_fraction(opening[1]))
        if not (board[0] <= b0[0] < b0[1] <= board[1]):
            raise ValueError("opening interval must lie inside the board")
    state = GameState(alpha=alpha, beta=beta, board=board,
                      history=[("B0", b0[0], b0[1])])

    for s in range(rounds):
        for role, label in ((ROLE_A, f"A{s}"), (ROLE_B, f"B{s + 1}")):
            strategy = strategy_a if role == ROLE_A else strategy_b
            parent_lo, parent_hi = state.current
            need = state.required_length(role)
            try:
                lo, hi = strategy(state, role)
                lo, hi = _as_fraction(lo), _as_fraction(hi)
            except Exception:
                lo = hi = None
            legal = (lo is not None and parent_lo <= lo and hi <= parent_hi
                     and hi - lo == need)
            if not legal:
                outcome = OUTCOME_FORFEIT_A if role == ROLE_A else OUTCOME_FORFEIT_B
                return GameResult(outcome=outcome, state=state, point=None,
                                  radius=None, forfeited_round=s)
            state.history.append((label, lo, hi))

    lo, hi = state.current
    return GameResult(outcome=OUTCOME_COMPLETED, state=state,
                      point=(lo + hi) / 2, radius=(hi - lo) / 2)


# ---------------------------------------------------------------------------
# strategies

def leftmost(state: GameState, role: str) -> Interval:
    return place(state.current, state.required_length(role), Fraction(0))


def rightmost(state: GameState, role: str) -> Interval:
    return place(state.current, state.required_length(role), Fraction(1))


def offset_strategy(offset) -> Strategy:
    offset = _as_fraction(offset)

    def strategy(state: GameState, role: str) -> Interval:
        return place(state.current, state.required_length(role), offset)

    return strategy


def random_strategy(seed: int) -> Strategy:
    """Legal moves at uniformly random dyadic offsets (deterministic per seed)."""
    rng = random.Random(seed)

    def strategy(state: GameState, role: str) -> Interval:
        offset = Fraction(rng.getrandbits(48), 1 << 48)
        return place(state.current, state.required_length(role), offset)

    return strategy


def avoidance_strategy(targets: list[tuple[float, float]],
                       grid: int = 64) -> Strategy:
    """Player-A rule: dodge weighted targets at the scale they matter.

    ``targets`` is a list of (value, weight) pairs.  At each move only
    targets with weight >= the current interval length are active; among
    ``grid`` equally spaced placements the strategy picks the one
    maximizing the minimum of distance/weight over active targets, ties
    to the leftmost.  With targets (a(p^m), 1/m^2) the intersection point
    is pushed away from every a(p^m) by a margin proportional to 1/m^2,
    i.e. toward Bad(p, m^2).  Scores are floats; the interval endpoints
    stay exact.
    """
    pairs = sorted(targets)
    values = np.array([v for v, _ in pairs], dtype=np.float64)
    weights = np.array([w for _, w in pairs], dtype=np.float64)

    def strategy(state: GameState, role: str) -> Interval:
        parent = state.current
        need = state.required_length(role)
        scale = float(parent[1] - parent[0])
        active = weights >= scale
        if not active.any():
            return place(parent, need, Fraction(0))
        v = values[active]
        w = weights[active]
        best_offset = Fraction(0)
        best_score = -1.0
        for i in range(grid):
            offset = Fraction(i, grid - 1)
            lo, hi = place(parent, need, offset)
            flo, fhi = float(lo), float(hi)
            dist = np.maximum(0.0, np.maximum(flo - v, v - fhi))
            score = float(np.min(dist / w))
            if score > best_score:
                best_score, best_offset = score, offset
        return place(parent, need, best_offset)

    return strategy


def chase_strategy(targets: list[tuple[float, float]]) -> Strategy:
    """Adversary: move toward the target nearest the current center."""
    pairs = sorted(targets)
    values = np.array([v for v, _ in pairs], dtype=np.float64)

    def strategy(state: GameState, role: str) -> Interval:
        parent_lo, parent_hi = state.current
        need = state.required_length(role)
        if len(values) == 0:
            return place(state.current, need, Fraction(0))
        center = float((parent_lo + parent_hi) / 2)
        nearest = float(values[int(np.argmin(np.abs(values - center)))])
        goal = Fraction(nearest)
        slack = (parent_hi - parent_lo) - need
        if slack == 0:
            return (parent_lo, parent_lo + need)
        desired = goal - need / 2
        offset = (desired - parent_lo) / slack
        offset = min(Fraction(1), max(Fraction(0), offset))
        return place(state.current, need, offset)

    return strategy
