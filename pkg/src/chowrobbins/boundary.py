"""Stopping boundary, per-position cutoff horizons, and the go-frontier.

The boundary entry for level n is the smallest heads-minus-tails surplus at
which stopping is optimal after n tosses.  A position's cutoff is the
smallest horizon at which it flips from stop to go; because game values are
nondecreasing in the horizon, the go region only grows with N, which makes
doubling plus binary search valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CutoffBeyondCap, DomainError
from .induction import Decision, Position, _as_position, decision, sweep
from .numerics import FLOAT, NumericMode

DEFAULT_CUTOFF_CAP = 4000
DEFAULT_FRONTIER_HORIZON = 2000


@dataclass(frozen=True)
class BetaSequence:
    """Minimal stopping surpluses harvested from one backward sweep.

    ``at(n)`` is the smallest d >= 0 with d == n (mod 2) such that the
    position with h+t = n, h-t = d is a stop under horizon ``horizon``.
    Values are tagged with the horizon they were computed at and make no
    claim about the unbounded game.
    """

    horizon: int
    entries: tuple

    @property
    def n_max(self) -> int:
        return len(self.entries)

    def at(self, n: int) -> int:
        if not 1 <= n <= len(self.entries):
            raise DomainError(f"n must lie in [1, {len(self.entries)}], got {n}")
        return self.entries[n - 1]

    def __iter__(self):
        return ((n + 1, d) for n, d in enumerate(self.entries))


@dataclass(frozen=True)
class CutoffRecord:
    position: Position
    cutoff: int


@dataclass(frozen=True)
class FrontierEntry:
    total: int
    position: Position
    cutoff: int


def beta_sequence(
    n_max: int,
    length: int | None = None,
    mode: NumericMode = FLOAT,
    progress=None,
) -> BetaSequence:
    """Boundary surpluses for levels 1..length at horizon n_max."""
    if length is None:
        length = n_max
    if not 1 <= length <= n_max:
        raise DomainError(
            f"sequence length must lie in [1, horizon], got {length} vs {n_max}"
        )
    res = sweep(n_max, mode, stop_level=max(0, length - 1), beta_max=length,
                progress=progress)
    return BetaSequence(horizon=n_max, entries=tuple(res.beta[1:length + 1]))


def shepp_ratio(beta: BetaSequence, n: int) -> float:
    """beta_n / sqrt(n), the finite-n version of the boundary growth constant."""
    return beta.at(n) / math.sqrt(n)


def cutoff(p, n_cap: int = DEFAULT_CUTOFF_CAP, mode: NumericMode = FLOAT) -> CutoffRecord:
    """Smallest horizon at which p becomes a go, searched up to n_cap.

    Doubles the horizon until a go appears, then binary-searches the flip
    point; both sides of the returned cutoff are re-verified.  Raises
    CutoffBeyondCap if p is still a stop at n_cap (which proves nothing
    about larger horizons).
    """
    pos = _as_position(p)
    if pos.level < 1:
        raise DomainError("cutoff needs a position with at least one toss")
    if n_cap < pos.level:
        raise DomainError(f"cap {n_cap} is below the position level {pos.level}")

    def is_go(N: int) -> bool:
        return decision(pos, N, mode) is Decision.GO

    lo = pos.level  # at N = h+t the game is over: a stop
    probe = pos.level + 1
    while probe < n_cap and not is_go(probe):
        lo = probe
        probe *= 2
    if probe >= n_cap:
        if not is_go(n_cap):
            raise CutoffBeyondCap(pos, n_cap)
        hi = n_cap
    else:
        hi = probe
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if is_go(mid):
            hi = mid
        else:
            lo = mid
    if is_go(hi - 1) or not is_go(hi):
        raise AssertionError(f"cutoff verification failed at {hi} for {tuple(pos)}")
    return CutoffRecord(position=pos, cutoff=hi)


def go_frontier(
    total_max: int,
    n_ref: int = DEFAULT_FRONTIER_HORIZON,
    n_cap: int = DEFAULT_CUTOFF_CAP,
    mode: NumericMode = FLOAT,
) -> list[FrontierEntry]:
    """Per level i <= total_max: the go position with the most heads at
    horizon n_ref, paired with its cutoff."""
    if not 1 <= total_max <= n_ref:
        raise DomainError(f"need 1 <= total_max <= n_ref, got {total_max}, {n_ref}")
    if n_ref > n_cap:
        raise DomainError(f"n_ref {n_ref} exceeds the cutoff cap {n_cap}")
    res = sweep(n_ref, mode, stop_level=0, collect_go_below=total_max)
    entries = []
    for total in range(1, total_max + 1):
        go = res.go_levels[total]
        go_heads = [h for h in range(total + 1) if go[h]]
        if not go_heads:
            continue
        h = max(go_heads)
        pos = Position(h, total - h)
        entries.append(
            FrontierEntry(total=total, position=pos, cutoff=cutoff(pos, n_cap, mode).cutoff)
        )
    return entries
