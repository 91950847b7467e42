"""Diophantine analysis around the Markov fractions.

Provides the best-approximation constant inf b**2*|f - a/b|, the maximal
interval around each Markov fraction that is free of other Markov
fractions, guaranteed rational enclosures for the interval-length series
(which converges to 1/2), the saltus representation of the tree transport
mu, the quadratic irrationalities at interval endpoints, and a growth-rate
estimator for denominators along a branch.

Enclosures are exact rationals with guaranteed containment; the only
floating point lives in the growth-rate estimator, where the quantity of
interest is a double logarithm.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import exp, isqrt, log, log1p
from typing import Iterable, Iterator

from .exact import QuadraticSurd, farey_mediant, surd_enclose
from .markov import MarkovFraction, enumerate_tree, mu, springborn_mediant

__all__ = [
    "FreenessReport",
    "MarkovInterval",
    "MarkovIrrationality",
    "approx_constant",
    "approx_constant_detail",
    "fractions_strictly_inside",
    "interval_freeness",
    "lyapunov_estimate",
    "lyapunov_trajectory",
    "markov_interval",
    "markov_irrationality",
    "mcshane_partial_sum",
    "reduced_fractions_up_to",
    "saltus_mu",
]

_MAX_LYAPUNOV_STEPS = 10_000


# -- best approximation constant ---------------------------------------------


def approx_constant_detail(f: Fraction) -> tuple[Fraction, Fraction]:
    """The constant inf b**2 * |f - a/b| over rationals a/b != f, with a witness.

    For each b the minimum of |p*b - a*q| over integers a is computed
    directly, and every value for denominator b is at least b/q, so the
    scan stops once b/q exceeds the best value found.  Returns the
    constant and the first rational attaining it (smallest b, then the
    lower of the two nearest candidates).
    """
    p, q = f.numerator, f.denominator
    best: Fraction | None = None
    witness = f
    b = 1
    while best is None or Fraction(b, q) <= best:
        r = (p * b) % q
        if r == 0:
            # The nearest distinct rational with this denominator sits a
            # full 1/b away; report the one above f.
            value = Fraction(b)
            a = (p * b) // q + 1
        elif 2 * r <= q:
            value = Fraction(b * r, q)
            a = (p * b - r) // q
        else:
            value = Fraction(b * (q - r), q)
            a = (p * b + (q - r)) // q
        if best is None or value < best:
            best, witness = value, Fraction(a, b)
        b += 1
    return best, witness


def approx_constant(f: Fraction) -> Fraction:
    """Best-approximation constant of f; at least 1/3 exactly on Markov fractions."""
    return approx_constant_detail(f)[0]


# -- intervals free of Markov fractions ---------------------------------------


def _length_surd(q: int) -> QuadraticSurd:
    """Interval length 3 - sqrt(9*q**2 - 4)/q as an exact surd."""
    return QuadraticSurd(3 * q, -1, q, 9 * q * q - 4)


@dataclass(frozen=True)
class MarkovInterval:
    """The maximal interval around a Markov fraction containing no other.

    Endpoints are exact quadratic surds; hi - lo equals the length
    3 - sqrt(9*q**2 - 4)/q by construction.
    """

    center: Fraction
    lo: QuadraticSurd
    hi: QuadraticSurd
    length: QuadraticSurd


def markov_interval(f: MarkovFraction) -> MarkovInterval:
    """Exact free interval around a Markov fraction."""
    length = _length_surd(f.value.denominator)
    half = length * Fraction(1, 2)
    return MarkovInterval(
        center=f.value,
        lo=f.value - half,
        hi=f.value + half,
        length=length,
    )


def reduced_fractions_up_to(denominator_bound: int) -> list[Fraction]:
    """All Markov fractions in [0, 1/2] with denominator <= bound, seeds included.

    The tree is pruned at the bound: denominators grow strictly along
    every branch, so a subtree below an oversized vertex never recovers.
    """
    if denominator_bound < 1:
        raise ValueError("denominator bound must be positive")
    found = [f for f in (Fraction(0), Fraction(1, 2)) if f.denominator <= denominator_bound]
    queue = deque([(Fraction(0), Fraction(1, 2))])
    while queue:
        f1, f2 = queue.popleft()
        f3 = springborn_mediant(f1, f2)
        if f3.denominator > denominator_bound:
            continue
        found.append(f3)
        queue.append((f1, f3))
        queue.append((f3, f2))
    return sorted(found)


def fractions_strictly_inside(
    lo: QuadraticSurd,
    hi: QuadraticSurd,
    denominator_bound: int,
    exclude: Fraction | None = None,
) -> list[Fraction]:
    """Markov fractions (any integer translate n +- r) strictly between lo and hi.

    The full fraction set on the line is scanned, not just the reduced
    tree: every value n + r and n - r with r in the reduced set and n an
    integer near the interval is tested by exact surd comparison.
    """
    reduced = reduced_fractions_up_to(denominator_bound)
    lo_bound, _ = surd_enclose(lo, 3)
    _, hi_bound = surd_enclose(hi, 3)
    n_min = lo_bound.numerator // lo_bound.denominator
    n_max = hi_bound.numerator // hi_bound.denominator + 1
    intruders = set()
    for n in range(n_min, n_max + 1):
        for r in reduced:
            for candidate in (n + r, n - r):
                if candidate == exclude:
                    continue
                if lo.compare(candidate) < 0 < hi.compare(candidate):
                    intruders.add(candidate)
    return sorted(intruders)


@dataclass(frozen=True)
class FreenessReport:
    """Whether an interval is free of other Markov fractions up to a bound."""

    center: Fraction
    denominator_bound: int
    intruders: tuple[Fraction, ...]

    @property
    def free(self) -> bool:
        return not self.intruders


def interval_freeness(f: MarkovFraction, denominator_bound: int) -> FreenessReport:
    """Check that f's interval contains no other Markov fraction up to the bound."""
    interval = markov_interval(f)
    intruders = fractions_strictly_inside(
        interval.lo, interval.hi, denominator_bound, exclude=f.value)
    return FreenessReport(f.value, denominator_bound, tuple(intruders))


# -- interval length series ----------------------------------------------------


def _length_bounds(q: int, guard_bits: int) -> tuple[Fraction, Fraction]:
    """Dyadic bounds on the interval length with relative error below 2**(1-guard).

    Uses l(q) = 4 / (q * (3q + sqrt(9*q**2 - 4))), which needs no
    cancellation, with the square root scaled to guard_bits extra bits.
    Dyadic denominators keep long sums cheap to accumulate exactly.
    """
    d = 9 * q * q - 4
    root = isqrt(d << (2 * guard_bits))
    base = 3 * q << guard_bits
    m_lo = q * (base + root)       # scaled denominator, in units of 2**-guard_bits
    m_hi = q * (base + root + 1)
    e = m_hi.bit_length() + guard_bits
    numerator = 1 << (e + guard_bits + 2)
    lo = Fraction(numerator // m_hi, 1 << e)
    hi = Fraction(-((-numerator) // m_lo), 1 << e)
    return lo, hi


def _guard_bits(precision: int) -> int:
    if precision < 1:
        raise ValueError("precision must be a positive digit count")
    return 4 * precision + 24


def mcshane_partial_sum(depth: int, precision: int) -> tuple[Fraction, Fraction]:
    """Enclosure of (l(1) + l(2))/2 + sum of l(q) over tree vertices to depth.

    The series converges to 1/2 from below.  Bounds are guaranteed, the
    enclosure width is below 10**-precision, and for fixed precision both
    bounds grow strictly with depth (each vertex contributes a strictly
    positive lower bound).
    """
    guard = _guard_bits(precision)
    lo1, hi1 = _length_bounds(1, guard)
    lo2, hi2 = _length_bounds(2, guard)
    total_lo, total_hi = (lo1 + lo2) / 2, (hi1 + hi2) / 2
    for _, triple in enumerate_tree(depth):
        lo, hi = _length_bounds(triple.f3.denominator, guard)
        total_lo += lo
        total_hi += hi
    return total_lo, total_hi


# -- saltus representation of the tree transport -------------------------------


def _jump_table(depth: int) -> Iterator[tuple[Fraction, int]]:
    """Interior jump locations a/b with the tree denominator of their image.

    Walks the Farey tree and the reduced tree in lockstep: the vertex at a
    turn word jumps by the interval length of the fraction at the same
    word.
    """
    queue = deque([(0, Fraction(0), Fraction(1), Fraction(0), Fraction(1, 2))])
    while queue:
        level, flp, frp, mlp, mrp = queue.popleft()
        fv = farey_mediant(flp, frp)
        mv = springborn_mediant(mlp, mrp)
        yield fv, mv.denominator
        if level < depth:
            queue.append((level + 1, flp, fv, mlp, mv))
            queue.append((level + 1, fv, frp, mv, mrp))


def saltus_mu(x: Fraction, depth: int, precision: int) -> tuple[Fraction, Fraction]:
    """Enclosure of the pure jump sum representing the tree transport at x.

    The sum is -l(1)/2 + sum over rationals a/b of l(q(a/b)) * H(x - a/b),
    truncated at the given tree depth, with the symmetric Heaviside
    convention H(0) = 1/2.  As the depth grows the value converges to the
    transport mu(x) for every x in [0, 1].
    """
    if not Fraction(0) <= x <= Fraction(1):
        raise ValueError(f"saltus is evaluated on [0, 1]; got {x}")
    guard = _guard_bits(precision)
    total_lo, total_hi = Fraction(0), Fraction(0)

    def add(q: int, weight: Fraction) -> None:
        nonlocal total_lo, total_hi
        lo, hi = _length_bounds(q, guard)
        if weight > 0:
            total_lo += lo * weight
            total_hi += hi * weight
        elif weight < 0:
            total_lo += hi * weight
            total_hi += lo * weight

    def heaviside(t: Fraction) -> Fraction:
        if t > 0:
            return Fraction(1)
        return Fraction(1, 2) if t == 0 else Fraction(0)

    add(1, heaviside(x) - Fraction(1, 2))
    add(2, heaviside(x - 1))
    for position, q in _jump_table(depth):
        weight = heaviside(x - position)
        if weight:
            add(q, weight)
    return total_lo, total_hi


# -- endpoint irrationalities ---------------------------------------------------


@dataclass(frozen=True)
class MarkovIrrationality:
    """The two endpoint irrationalities at a rational and their Lagrange number.

    ``lagrange`` is sqrt(9*q**2 - 4)/q, always strictly below 3.
    """

    center: Fraction
    minus: QuadraticSurd
    plus: QuadraticSurd
    lagrange: QuadraticSurd


def markov_irrationality(x: Fraction) -> MarkovIrrationality:
    """Endpoint irrationalities mu(x) -+ l(q)/2 of the transport of x."""
    image = mu(x)
    interval = markov_interval(image)
    q = image.value.denominator
    return MarkovIrrationality(
        center=image.value,
        minus=interval.lo,
        plus=interval.hi,
        lagrange=QuadraticSurd(0, 1, q, 9 * q * q - 4),
    )


# -- denominator growth along a branch ------------------------------------------


def lyapunov_trajectory(turns: Iterable[str], steps: int) -> list[float]:
    """Estimates log(log q_n)/n for n = 1..steps along a branch.

    The walk starts at the root (denominator 5, parents 1 and 2) and
    consumes steps - 1 turns.  Denominator logarithms are tracked as
    doubles while they fit and as double logarithms beyond, so deep
    alternating branches (log q growing like the golden ratio to the n)
    stay finite.
    """
    if not 1 <= steps <= _MAX_LYAPUNOV_STEPS:
        raise ValueError(f"steps must lie in [1, {_MAX_LYAPUNOV_STEPS}]")
    log3 = log(3)
    # ln(ln q) for the triple around the current vertex; ln(ln 1) = -inf.
    ta, tb, tc = float("-inf"), log(log(2)), log(log(5))
    estimates = [tc / 1]
    it = iter(turns)
    for n in range(2, steps + 1):
        try:
            ch = next(it)
        except StopIteration:
            raise ValueError(f"turn sequence ended before step {n}") from None
        if ch not in ("L", "R"):
            raise ValueError(f"turn word may only contain 'L' and 'R': {ch!r}")
        if ch == "L":
            pa, pc, replaced = ta, tc, tb
        else:
            pa, pc, replaced = tc, tb, ta
        if max(pa, pc, replaced) < 700.0:
            la, lc, lb = exp(pa), exp(pc), exp(replaced)
            t_new = log(log3 + la + lc + log1p(-exp(lb - log3 - la - lc)))
        else:
            # The subtracted term is below double precision here.
            m = max(pa, pc)
            t_new = m + log(exp(pa - m) + exp(pc - m) + log3 * exp(-m))
        if ch == "L":
            ta, tb, tc = ta, tc, t_new
        else:
            ta, tb, tc = tc, tb, t_new
        estimates.append(t_new / n)
    return estimates


def lyapunov_estimate(turns: Iterable[str], steps: int) -> float:
    """Final growth estimate log(log q_n)/n after the given number of steps."""
    return lyapunov_trajectory(turns, steps)[-1]
