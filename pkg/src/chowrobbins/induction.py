"""Backward induction for the bounded fair-coin stopping game.

A player tosses a fair coin up to N times and may stop at any point,
collecting the current fraction of heads h/(h+t); at the horizon the payoff
is max(1/2, h/N).  Values satisfy

    f(h, t) = max( (f(h+1, t) + f(h, t+1)) / 2 ,  h/(h+t) )

with terminal values max(1/2, h/N) on the diagonal h+t = N.  The sweep walks
anti-diagonals from the horizon down, keeping two diagonals alive, so memory
stays O(N) even at N = 50000.

Exact sweeps store each level as integer numerators over the common
denominator 2^(N-l) * lcm(1..N): no gcd reduction per cell, only big-integer
adds and comparisons, which keeps full exact triangles practical well beyond
N = 1000.

The cone evaluator computes single values a fixed number of levels m below
the terminal diagonal of an odd horizon 2n+1 in O(m^2) exact operations,
independent of n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError
from .numerics import EXACT, FLOAT, NumericMode, prefer_continue


class Position(NamedTuple):
    heads: int
    tails: int

    @property
    def level(self) -> int:
        return self.heads + self.tails

    def stop_payoff(self) -> Fraction:
        """h/(h+t); zero at the empty position, where stopping pays nothing."""
        if self.level == 0:
            return Fraction(0)
        return Fraction(self.heads, self.level)


class Decision(Enum):
    STOP = "stop"
    GO = "go"


@dataclass(frozen=True)
class DiagonalTable:
    """One anti-diagonal of game values, indexed by heads.

    ``values[h]`` is the value at (h, level-h); ``go[h]`` records the
    decision made there (False on the terminal diagonal, where the game
    ends unconditionally).
    """

    n_max: int
    level: int
    values: object  # np.ndarray (float mode) or list[Fraction] (exact mode)
    go: np.ndarray

    def decision_at(self, heads: int) -> Decision:
        return Decision.GO if self.go[heads] else Decision.STOP

    def value_at(self, heads: int):
        return self.values[heads]


def _as_position(p) -> Position:
    h, t = p
    if h < 0 or t < 0:
        raise DomainError(f"position {p!r} has negative coordinates")
    return Position(int(h), int(t))


def _check_horizon(n_max: int) -> int:
    if n_max < 1:
        raise DomainError(f"horizon must be >= 1, got {n_max}")
    return int(n_max)


# ---------------------------------------------------------------------------
# public single-step contract

def boundary_values(n_max: int, mode: NumericMode = FLOAT) -> DiagonalTable:
    """Terminal diagonal: values max(1/2, h/N), every cell a stop."""
    N = _check_horizon(n_max)
    if mode.exact:
        vals = [max(Fraction(1, 2), Fraction(h, N)) for h in range(N + 1)]
    else:
        vals = np.maximum(0.5, np.arange(N + 1, dtype=np.float64) / N)
    return DiagonalTable(N, N, vals, np.zeros(N + 1, dtype=bool))


def step_back(table: DiagonalTable, mode: NumericMode = FLOAT) -> DiagonalTable:
    """One level of backward induction from ``table`` (at level l) to l-1."""
    l_next = table.level
    if l_next < 1:
        raise DomainError("cannot step back from level 0")
    l = l_next - 1
    if mode.exact:
        nxt = table.values
        vals, go = [], np.zeros(l + 1, dtype=bool)
        for h in range(l + 1):
            cont = (nxt[h + 1] + nxt[h]) / 2
            stop = Fraction(h, l) if l > 0 else Fraction(0)
            go[h] = prefer_continue(cont, stop, mode)
            vals.append(cont if cont > stop else stop)
    else:
        nxt = np.asarray(table.values)
        cont = 0.5 * (nxt[1:l + 2] + nxt[:l + 1])
        stop = np.arange(l + 1) / l if l > 0 else np.zeros(1)
        go = cont > stop + mode.epsilon
        vals = np.maximum(cont, stop)
    return DiagonalTable(table.n_max, l, vals, go)


# ---------------------------------------------------------------------------
# sweep engines

@dataclass
class SweepResult:
    n_max: int
    level: int
    values: np.ndarray | None = None        # float mode, level `level`
    exact_nums: list | None = None          # exact mode numerators
    exact_den: int | None = None            # their common denominator
    go_levels: dict | None = None           # level -> bool ndarray (go flags)
    beta: list | None = None                # beta[n] for 1 <= n <= beta_max
    harvested: dict | None = None           # (h, t) -> value

    def value_at(self, heads: int):
        if self.values is not None:
            return float(self.values[heads])
        return Fraction(self.exact_nums[heads], self.exact_den)


def _beta_from_level(cont, stop, l: int, is_stop: Callable) -> int:
    # smallest surplus d = 2h - l >= 0 whose cell is a stop; the all-heads
    # cell is always a stop, so the scan terminates
    h0 = (l + 1) // 2
    for h in range(h0, l + 1):
        if is_stop(cont[h], stop[h]):
            return 2 * h - l
    raise AssertionError("unreachable: all-heads cell must stop")


def _sweep_float(
    n_max: int,
    epsilon: float,
    stop_level: int = 0,
    beta_max: int = 0,
    positions: tuple = (),
    collect_go_below: int = -1,
    progress: Callable[[int, int], None] | None = None,
) -> SweepResult:
    N = n_max
    h_all = np.arange(N + 1, dtype=np.float64)
    vals = np.maximum(0.5, h_all / N)
    beta = [0] * (beta_max + 1)
    go_levels: dict[int, np.ndarray] = {}
    harvested = {}
    want = {}
    for p in positions:
        want.setdefault(p[0] + p[1], []).append(tuple(p))
    cont_buf = np.empty(N + 1)
    stop_buf = np.empty(N + 1)
    for l in range(N - 1, stop_level - 1, -1):
        m = l + 1
        cont = cont_buf[:m]
        np.add(vals[1:m + 1], vals[:m], out=cont)
        cont *= 0.5
        if l > 0:
            stop = stop_buf[:m]
            np.divide(h_all[:m], float(l), out=stop)
        else:
            stop = np.zeros(1)
        if l <= collect_go_below:
            go_levels[l] = cont > stop + epsilon
        if 1 <= l <= beta_max:
            h0 = (l + 1) // 2
            flags = cont[h0:] <= stop[h0:] + epsilon
            beta[l] = 2 * (h0 + int(np.argmax(flags))) - l
        np.maximum(cont, stop, out=vals[:m])
        for p in want.get(l, ()):
            harvested[p] = float(vals[p[0]])
        if progress is not None and l % 1000 == 0:
            progress(l, N)
    return SweepResult(
        n_max=N, level=stop_level, values=vals[:stop_level + 1].copy(),
        go_levels=go_levels or None, beta=beta if beta_max else None,
        harvested=harvested,
    )


def _sweep_exact(
    n_max: int,
    stop_level: int = 0,
    beta_max: int = 0,
    positions: tuple = (),
    collect_go_below: int = -1,
    progress: Callable[[int, int], None] | None = None,
) -> SweepResult:
    N = n_max
    L = reduce(math.lcm, range(1, N + 1), 1)
    if L % 2:
        L *= 2
    base = L // N
    nums = [max(L // 2, h * base) for h in range(N + 1)]
    den = L
    beta = [0] * (beta_max + 1)
    go_levels: dict[int, np.ndarray] = {}
    harvested = {}
    want = {}
    for p in positions:
        want.setdefault(p[0] + p[1], []).append(tuple(p))
    for l in range(N - 1, stop_level - 1, -1):
        den <<= 1
        M = den // l if l > 0 else 0
        nxt = nums
        cont = [nxt[h + 1] + nxt[h] for h in range(l + 1)]
        stop = [h * M for h in range(l + 1)]
        nums = [c if c > s else s for c, s in zip(cont, stop)]
        if l <= collect_go_below:
            go_levels[l] = np.fromiter(
                (c > s for c, s in zip(cont, stop)), dtype=bool, count=l + 1
            )
        if 1 <= l <= beta_max:
            beta[l] = _beta_from_level(cont, stop, l, lambda c, s: c <= s)
        for p in want.get(l, ()):
            harvested[p] = Fraction(nums[p[0]], den)
        if progress is not None and l % 1000 == 0:
            progress(l, N)
    return SweepResult(
        n_max=N, level=stop_level, exact_nums=nums, exact_den=den,
        go_levels=go_levels or None, beta=beta if beta_max else None,
        harvested=harvested,
    )


def sweep(n_max: int, mode: NumericMode = FLOAT, **kwargs) -> SweepResult:
    """Run a full backward sweep with optional harvest hooks.

    Keyword hooks: ``stop_level`` (lowest level computed), ``beta_max``
    (record minimal stopping surpluses for levels 1..beta_max),
    ``positions`` (cells whose values to capture in passing),
    ``collect_go_below`` (keep go/stop flags for levels <= this),
    ``progress`` (callback(level, n_max) every 1000 levels).
    """
    N = _check_horizon(n_max)
    if kwargs.get("beta_max", 0) > N:
        raise DomainError("beta_max exceeds the horizon")
    if mode.exact:
        return _sweep_exact(N, **kwargs)
    return _sweep_float(N, mode.epsilon, **kwargs)


# ---------------------------------------------------------------------------
# point queries

def value(p, n_max: int, mode: NumericMode = FLOAT):
    """Expected payoff from position p under optimal play, horizon n_max."""
    pos = _as_position(p)
    N = _check_horizon(n_max)
    if pos.level > N:
        raise DomainError(f"position {tuple(pos)} lies beyond horizon {N}")
    res = sweep(N, mode, stop_level=pos.level)
    return res.value_at(pos.heads)


def continuation_value(p, n_max: int, mode: NumericMode = FLOAT):
    """Expected payoff of tossing once more from p and playing on optimally."""
    pos = _as_position(p)
    N = _check_horizon(n_max)
    if pos.level >= N:
        raise DomainError(f"no toss remains at level {pos.level} of horizon {N}")
    res = sweep(N, mode, stop_level=pos.level + 1)
    if mode.exact:
        return Fraction(
            res.exact_nums[pos.heads + 1] + res.exact_nums[pos.heads],
            2 * res.exact_den,
        )
    return 0.5 * (res.values[pos.heads + 1] + res.values[pos.heads])


def decision(p, n_max: int, mode: NumericMode = FLOAT) -> Decision:
    """Stop or go at p, horizon n_max; ties stop."""
    pos = _as_position(p)
    N = _check_horizon(n_max)
    if not 1 <= pos.level <= N:
        raise DomainError(f"decision needs 1 <= h+t <= {N}, got {tuple(pos)}")
    if pos.level == N:
        return Decision.STOP
    if mode.exact:
        res = sweep(N, mode, stop_level=pos.level + 1)
        cont_num = res.exact_nums[pos.heads + 1] + res.exact_nums[pos.heads]
        # compare cont_num/(2 den) with h/l by cross-multiplication
        go = cont_num * pos.level > pos.heads * 2 * res.exact_den
        return Decision.GO if go else Decision.STOP
    cont = continuation_value(pos, N, mode)
    stop = pos.heads / pos.level
    return Decision.GO if prefer_continue(cont, stop, mode) else Decision.STOP


# ---------------------------------------------------------------------------
# exact cone evaluation below the terminal diagonal

def cone_values_exact(m: int, alpha: int, n: int) -> Fraction:
    """Exact value at (n+alpha, n-alpha-m+1) for horizon 2n+1.

    The target sits m levels below the terminal diagonal; only the width
    m+1 cone of terminal cells above it can influence it, so the sweep
    costs O(m^2) exact operations however large n is.
    """
    if m < 1 or n < 1:
        raise DomainError(f"need m >= 1 and n >= 1, got m={m}, n={n}")
    N = 2 * n + 1
    h0 = n + alpha
    t0 = n - alpha - m + 1
    if h0 < 0 or t0 < 0:
        raise DomainError(
            f"cone target ({h0}, {t0}) leaves the lattice for m={m}, "
            f"alpha={alpha}, n={n}"
        )
    half = Fraction(1, 2)
    vals = [max(half, Fraction(h0 + j, N)) for j in range(m + 1)]
    for k in range(m - 1, -1, -1):
        l = h0 + t0 + k
        vals = [
            max(
                (vals[j + 1] + vals[j]) / 2,
                Fraction(h0 + j, l) if l > 0 else Fraction(0),
            )
            for j in range(k + 1)
        ]
    return vals[0]
