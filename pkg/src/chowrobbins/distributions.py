"""Payoff distributions and the goal-threshold strategy.

The payoff law of a policy is computed by forward absorption: derive the
policy's stop set, push probability mass forward from the start position,
split go-mass half/half between heads and tails, and deposit stopped mass on
its payoff atom.  Atom keys are exact reduced fractions even in float mode,
so payoffs like 1/2 never split into duplicate keys.

Two policies are covered: the expectation-optimal stopping rule from the
backward induction, and the goal strategy "stop at the first state whose
heads fraction reaches g".  Under the goal strategy a player who never
reaches the goal ends with nothing: the payoff law puts that mass on 0.
That convention makes the distribution's mean match the goal strategy's
expected gain as usually reported, and makes P(payoff >= g) coincide with
the achievement probability for every g in (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .induction import _as_position, sweep, value
from .numerics import FLOAT, NumericMode, as_fraction

MASS_TOLERANCE = 1e-12


class PayoffDistribution:
    """Sparse map from exact payoff to probability.

    Probabilities are floats in float mode and Fractions in exact mode;
    payoff keys are always Fractions.
    """

    def __init__(self, atoms: dict, exact: bool):
        self._atoms = dict(atoms)
        self.exact = exact

    def __len__(self) -> int:
        return len(self._atoms)

    def __getitem__(self, payoff) -> object:
        return self._atoms.get(as_fraction(payoff), Fraction(0) if self.exact else 0.0)

    def items(self):
        """Atoms sorted by payoff."""
        return sorted(self._atoms.items())

    def total_mass(self):
        if self.exact:
            return sum(self._atoms.values(), Fraction(0))
        return math.fsum(self._atoms.values())

    def mean(self):
        if self.exact:
            return sum((a * p for a, p in self._atoms.items()), Fraction(0))
        return math.fsum(float(a) * p for a, p in self._atoms.items())

    def tail_probability(self, threshold):
        """P(payoff >= threshold); the comparison is exact on the keys."""
        c = as_fraction(threshold)
        vals = [p for a, p in self._atoms.items() if a >= c]
        if self.exact:
            return sum(vals, Fraction(0))
        return math.fsum(vals)


def moments(dist: PayoffDistribution, k: int = 4) -> tuple:
    """(mean, std_dev, skewness, kurtosis) truncated to the first k entries.

    Skewness and kurtosis (the standardized third and fourth central
    moments) are None for a degenerate distribution.
    """
    if not 1 <= k <= 4:
        raise DomainError(f"moment order k must lie in 1..4, got {k}")
    mu = dist.mean()
    out = [mu]
    if k >= 2:
        mu_f = float(mu)
        m2 = math.fsum(p * (float(a) - mu_f) ** 2 for a, p in dist.items())
        std = math.sqrt(max(m2, 0.0))
        out.append(std)
        if k >= 3:
            if std == 0.0:
                out += [None, None][: k - 2]
            else:
                m3 = math.fsum(p * (float(a) - mu_f) ** 3 for a, p in dist.items())
                out.append(m3 / std**3)
                if k == 4:
                    m4 = math.fsum(p * (float(a) - mu_f) ** 4 for a, p in dist.items())
                    out.append(m4 / std**4)
    return tuple(out[:k])


# ---------------------------------------------------------------------------
# forward absorption

def _forward_absorb_float(h0, t0, N, go_levels, terminal_key, interior_key):
    atoms: dict[Fraction, float] = {}
    l0 = h0 + t0
    mass = np.zeros(l0 + 1)
    mass[h0] = 1.0
    for l in range(l0, N):
        go = go_levels(l)
        m = mass[: l + 1]
        stopped = np.nonzero(~go[: l + 1] & (m > 0))[0]
        for h in stopped:
            key = interior_key(int(h), l)
            atoms[key] = atoms.get(key, 0.0) + float(m[h])
        nxt = np.zeros(l + 2)
        live = np.where(go[: l + 1], m, 0.0)
        nxt[1:] += 0.5 * live
        nxt[:-1] += 0.5 * live
        mass = nxt
    for h in range(N + 1):
        if mass[h] > 0:
            key = terminal_key(h)
            atoms[key] = atoms.get(key, 0.0) + float(mass[h])
    return atoms


def _forward_absorb_exact(h0, t0, N, go_levels, terminal_key, interior_key):
    atoms: dict[Fraction, Fraction] = {}
    zero = Fraction(0)
    l0 = h0 + t0
    mass = {h0: Fraction(1)}
    for l in range(l0, N):
        go = go_levels(l)
        nxt: dict[int, Fraction] = {}
        for h, m in mass.items():
            if go[h]:
                half = m / 2
                nxt[h + 1] = nxt.get(h + 1, zero) + half
                nxt[h] = nxt.get(h, zero) + half
            else:
                key = interior_key(h, l)
                atoms[key] = atoms.get(key, zero) + m
        mass = nxt
    for h, m in mass.items():
        key = terminal_key(h)
        atoms[key] = atoms.get(key, zero) + m
    return atoms


def payoff_distribution(p, n_max: int, mode: NumericMode = FLOAT) -> PayoffDistribution:
    """Payoff law from p under the expectation-optimal stopping rule."""
    pos = _as_position(p)
    N = int(n_max)
    if pos.level > N:
        raise DomainError(f"position {tuple(pos)} lies beyond horizon {N}")
    res = sweep(N, mode, stop_level=pos.level, collect_go_below=N - 1)
    go_levels = lambda l: res.go_levels[l]
    interior = lambda h, l: Fraction(h, l) if l > 0 else Fraction(0)
    terminal = lambda h: max(Fraction(1, 2), Fraction(h, N))
    absorb = _forward_absorb_exact if mode.exact else _forward_absorb_float
    return PayoffDistribution(
        absorb(pos.heads, pos.tails, N, go_levels, terminal, interior), mode.exact
    )


# ---------------------------------------------------------------------------
# goal strategy

def _goal_fraction(g) -> Fraction:
    gf = as_fraction(g)
    if not 0 < gf < 1:
        raise DomainError(f"goal must lie strictly between 0 and 1, got {g!r}")
    return gf


def _satisfied_mask(gf: Fraction, l: int, n_cells: int) -> np.ndarray:
    # heads fraction >= g by cross-multiplication; the empty state never counts
    if l < 1:
        return np.zeros(n_cells, dtype=bool)
    h = np.arange(n_cells, dtype=np.int64)
    return h * gf.denominator >= gf.numerator * l


def goal_value(g, p, n_max: int, mode: NumericMode = FLOAT):
    """Probability of ever reaching heads fraction >= g by the horizon."""
    gf = _goal_fraction(g)
    pos = _as_position(p)
    N = int(n_max)
    if pos.level > N:
        raise DomainError(f"position {tuple(pos)} lies beyond horizon {N}")
    if gf.denominator * N >= 2**62 or gf.numerator * N >= 2**62:
        raise DomainError("goal fraction too large to test against this horizon")
    if mode.exact:
        one, half = Fraction(1), Fraction(1, 2)
        sat = lambda h, l: l >= 1 and h * gf.denominator >= gf.numerator * l
        vals = [one if sat(h, N) else Fraction(0) for h in range(N + 1)]
        for l in range(N - 1, pos.level - 1, -1):
            vals = [
                one if sat(h, l) else half * (vals[h + 1] + vals[h])
                for h in range(l + 1)
            ]
        return vals[pos.heads]
    sat_N = _satisfied_mask(gf, N, N + 1)
    vals = sat_N.astype(np.float64)
    for l in range(N - 1, pos.level - 1, -1):
        cont = 0.5 * (vals[1:l + 2] + vals[:l + 1])
        vals = np.where(_satisfied_mask(gf, l, l + 1), 1.0, cont)
    return float(vals[pos.heads])


def goal_distribution(g, p, n_max: int, mode: NumericMode = FLOAT) -> PayoffDistribution:
    """Payoff law of the goal strategy from p.

    Mass stops on the heads fraction at the first state reaching g
    (including horizon states whose final fraction reaches it) and on the
    atom 0 when the goal is never met.
    """
    gf = _goal_fraction(g)
    pos = _as_position(p)
    N = int(n_max)
    if pos.level > N:
        raise DomainError(f"position {tuple(pos)} lies beyond horizon {N}")
    if gf.denominator * N >= 2**62 or gf.numerator * N >= 2**62:
        raise DomainError("goal fraction too large to test against this horizon")
    masks = {l: ~_satisfied_mask(gf, l, l + 1) for l in range(pos.level, N)}
    go_levels = lambda l: masks[l]
    interior = lambda h, l: Fraction(h, l)

    def terminal(h):
        if h * gf.denominator >= gf.numerator * N:
            return max(Fraction(1, 2), Fraction(h, N))
        return Fraction(0)

    absorb = _forward_absorb_exact if mode.exact else _forward_absorb_float
    return PayoffDistribution(
        absorb(pos.heads, pos.tails, N, go_levels, terminal, interior), mode.exact
    )


@dataclass(frozen=True)
class CompareReport:
    horizon: int
    goal: Fraction
    optimal_expectation: object
    optimal_goal_prob: object
    goal_strategy_expectation: object
    goal_strategy_prob: object


def compare(g, n_max: int, mode: NumericMode = FLOAT) -> CompareReport:
    """Expectation-optimal play vs the goal strategy, both judged both ways."""
    gf = _goal_fraction(g)
    N = int(n_max)
    opt = payoff_distribution((0, 0), N, mode)
    goal = goal_distribution(gf, (0, 0), N, mode)
    return CompareReport(
        horizon=N,
        goal=gf,
        optimal_expectation=opt.mean(),
        optimal_goal_prob=opt.tail_probability(gf),
        goal_strategy_expectation=goal.mean(),
        goal_strategy_prob=goal.tail_probability(gf),
    )
