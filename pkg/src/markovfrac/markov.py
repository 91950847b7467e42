"""The Markov fraction tree and its arithmetic.

The tree is generated from the seed pair (0/1, 1/2) by the mediant rule

    (p1/q1) * (p2/q2) = (p1*q1 + p2*q2) / (q1**2 + q2**2),

whose reduced numerator and denominator are (p1*q1 + p2*q2)/(p2*q1 - p1*q2)
and (q1**2 + q2**2)/(p2*q1 - p1*q2).  Denominators of the resulting
fractions are exactly the Markov numbers: the coordinates of solutions of
x**2 + y**2 + z**2 = 3*x*y*z.  This module also provides the Vieta
involution on Markov triples, the Fibonacci and Pell boundary branches,
the congruence p**2 + 1 == 0 (mod q) satisfied by every numerator, and the
two generalized equations with coefficient patterns (1,1,2,4) and (1,2,3,6).

Turn words follow the same convention as :mod:`markovfrac.farey`:
L moves toward smaller fractions, R toward larger ones.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator

from .farey import TurnWord, check_word, farey_path_to

__all__ = [
    "FractionTriple",
    "GeneralizedEquation",
    "MarkovFraction",
    "MarkovTriple",
    "RelationReport",
    "UnicityReport",
    "REDUCED_SEEDS",
    "UNIT_SEEDS",
    "check_relations",
    "descend_value",
    "enumerate_tree",
    "fibonacci_branch",
    "generalized_enumerate",
    "mu",
    "pell_branch",
    "solve_congruence",
    "springborn_mediant",
    "unicity_scan",
    "vieta_mutate",
]

#: Seeds of the reduced tree; every vertex lies strictly between them.
REDUCED_SEEDS = (Fraction(0), Fraction(1, 2))
#: Seeds of the [0, 1] variant used by the slope recursion.
UNIT_SEEDS = (Fraction(0), Fraction(1))

# Vertex budget for exhaustive scans: depth d emits 2**(d+1) - 1 vertices.
_MAX_SCAN_VERTICES = 1 << 20


def springborn_mediant(f1: Fraction, f2: Fraction) -> Fraction:
    """Mediant variant generating the Markov fraction tree; requires f1 < f2."""
    if not f1 < f2:
        raise ValueError(f"arguments must be ordered: expected {f1} < {f2}")
    p1, q1 = f1.numerator, f1.denominator
    p2, q2 = f2.numerator, f2.denominator
    return Fraction(p1 * q1 + p2 * q2, q1 * q1 + q2 * q2)


@dataclass(frozen=True)
class MarkovTriple:
    """Ordered positive solution of x**2 + y**2 + z**2 = 3*x*y*z."""

    x: int
    y: int
    z: int

    def __post_init__(self) -> None:
        x, y, z = self.x, self.y, self.z
        if min(x, y, z) < 1:
            raise ValueError("Markov triples are positive")
        if x * x + y * y + z * z != 3 * x * y * z:
            raise ValueError(f"({x}, {y}, {z}) does not solve the Markov equation")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def vieta_mutate(t: MarkovTriple, index: int) -> MarkovTriple:
    """Replace one coordinate by the second root of the Markov equation.

    For index i the new coordinate is 3 times the product of the other two
    minus the old one; applying the same mutation twice returns t.
    """
    x, y, z = t.as_tuple()
    if index == 1:
        return MarkovTriple(3 * y * z - x, y, z)
    if index == 2:
        return MarkovTriple(x, 3 * x * z - y, z)
    if index == 3:
        return MarkovTriple(x, y, 3 * x * y - z)
    raise ValueError(f"index must be 1, 2 or 3, not {index}")


@dataclass(frozen=True)
class FractionTriple:
    """A tree vertex f3 together with its neighbours f1 < f3 < f2.

    No invariants are enforced at construction so that broken triples can
    be fed to :func:`check_relations` as negative controls; triples emitted
    by :func:`enumerate_tree` satisfy every relation exactly.
    """

    f1: Fraction
    f2: Fraction
    f3: Fraction


@dataclass(frozen=True)
class RelationReport:
    """Truth of each exact relation tying a vertex to its neighbours.

    With pi/qi the numerators and denominators of (f1, f2, f3):

    * ``det_f2_f3_is_q1``:  p2*q3 - p3*q2 == q1
    * ``det_f3_f1_is_q2``:  p3*q1 - p1*q3 == q2
    * ``det_f2_f1_is_flip``: p2*q1 - p1*q2 == (q1**2 + q2**2)/q3 == 3*q1*q2 - q3
      (including integrality of the quotient)
    * ``left_child_consistent``:  (p1*q1 + p3*q3)/q2 over (q1**2 + q3**2)/q2
      is an integer pair equal to the reduced mediant of (f1, f3)
    * ``right_child_consistent``: (p2*q2 + p3*q3)/q1 over (q2**2 + q3**2)/q1
      is an integer pair equal to the reduced mediant of (f3, f2)
    """

    det_f2_f3_is_q1: bool
    det_f3_f1_is_q2: bool
    det_f2_f1_is_flip: bool
    left_child_consistent: bool
    right_child_consistent: bool

    @property
    def all_hold(self) -> bool:
        return (self.det_f2_f3_is_q1 and self.det_f3_f1_is_q2
                and self.det_f2_f1_is_flip
                and self.left_child_consistent and self.right_child_consistent)

    def as_dict(self) -> dict[str, bool]:
        return {
            "det_f2_f3_is_q1": self.det_f2_f3_is_q1,
            "det_f3_f1_is_q2": self.det_f3_f1_is_q2,
            "det_f2_f1_is_flip": self.det_f2_f1_is_flip,
            "left_child_consistent": self.left_child_consistent,
            "right_child_consistent": self.right_child_consistent,
        }


def _child_consistent(fa: Fraction, fb: Fraction, num: int, den: int, q: int) -> bool:
    # The pair (num/q, den/q) must be integral and reduce to the mediant of (fa, fb).
    if num % q or den % q:
        return False
    if den // q <= 0:
        return False
    try:
        return Fraction(num // q, den // q) == springborn_mediant(fa, fb)
    except ValueError:
        return False


def check_relations(t: FractionTriple) -> RelationReport:
    """Exact truth report for the neighbour relations of a candidate triple."""
    p1, q1 = t.f1.numerator, t.f1.denominator
    p2, q2 = t.f2.numerator, t.f2.denominator
    p3, q3 = t.f3.numerator, t.f3.denominator
    qq12 = q1 * q1 + q2 * q2
    flip = (qq12 % q3 == 0
            and p2 * q1 - p1 * q2 == qq12 // q3 == 3 * q1 * q2 - q3)
    return RelationReport(
        det_f2_f3_is_q1=(p2 * q3 - p3 * q2 == q1),
        det_f3_f1_is_q2=(p3 * q1 - p1 * q3 == q2),
        det_f2_f1_is_flip=flip,
        left_child_consistent=_child_consistent(
            t.f1, t.f3, p1 * q1 + p3 * q3, q1 * q1 + q3 * q3, q2),
        right_child_consistent=_child_consistent(
            t.f3, t.f2, p2 * q2 + p3 * q3, q2 * q2 + q3 * q3, q1),
    )


def enumerate_tree(
    depth: int,
    seeds: tuple[Fraction, Fraction] = REDUCED_SEEDS,
) -> Iterator[tuple[TurnWord, FractionTriple]]:
    """Breadth-first tree vertices to the given depth, children L before R.

    Yields 2**(depth + 1) - 1 pairs (word, triple); the root has word ''.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if (1 << (depth + 1)) - 1 > _MAX_SCAN_VERTICES:
        raise ValueError(f"depth {depth} exceeds the {_MAX_SCAN_VERTICES} vertex budget")

    def walk() -> Iterator[tuple[TurnWord, FractionTriple]]:
        queue: deque[tuple[TurnWord, Fraction, Fraction]] = deque([("", seeds[0], seeds[1])])
        while queue:
            word, f1, f2 = queue.popleft()
            f3 = springborn_mediant(f1, f2)
            yield word, FractionTriple(f1, f2, f3)
            if len(word) < depth:
                queue.append((word + "L", f1, f3))
                queue.append((word + "R", f3, f2))

    return walk()


def descend_value(word: TurnWord, seeds: tuple[Fraction, Fraction] = REDUCED_SEEDS) -> Fraction:
    """Value of the tree vertex addressed by a turn word."""
    check_word(word)
    f1, f2 = seeds
    for ch in word:
        f3 = springborn_mediant(f1, f2)
        if ch == "L":
            f2 = f3
        else:
            f1 = f3
    return springborn_mediant(f1, f2)


@dataclass(frozen=True)
class MarkovFraction:
    """A fraction of the reduced tree with its address.

    The two seeds 0/1 and 1/2 carry word None; every proper vertex carries
    its turn word and depth == len(word).
    """

    value: Fraction
    depth: int
    word: TurnWord | None

    def __post_init__(self) -> None:
        p, q = self.value.numerator, self.value.denominator
        if not 0 <= 2 * p <= q:
            raise ValueError(f"{self.value} lies outside [0, 1/2]")
        if (p * p + 1) % q:
            raise ValueError(f"{self.value} fails the numerator congruence")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")


def mu(x: Fraction) -> MarkovFraction:
    """Order isomorphism from [0, 1] rationals onto the Markov fractions.

    The endpoints map to the seeds (0 -> 0/1, 1 -> 1/2); an interior
    rational maps to the reduced-tree vertex at its Farey turn word, so
    mediants of Farey neighbours map to tree mediants of their images.
    """
    if not Fraction(0) <= x <= Fraction(1):
        raise ValueError(f"mu is defined on [0, 1]; got {x}")
    if x == 0:
        return MarkovFraction(Fraction(0), 0, None)
    if x == 1:
        return MarkovFraction(Fraction(1, 2), 0, None)
    word = farey_path_to(x)
    return MarkovFraction(descend_value(word), len(word), word)


def fibonacci_branch(k: int) -> MarkovFraction:
    """k-th fraction (k >= 1) of the boundary branch converging to (3 - sqrt(5))/2.

    Starting from 2/5 the branch repeatedly takes the mediant with the seed
    0/1, i.e. descends by the constant word 'L'.  Numerators and
    denominators are every second Fibonacci number: p(k+1) = q(k) and
    q(k+1) = (q(k)**2 + 1)/q(k-1), anchored by q(0) = 2, q(1) = 5.
    """
    if k < 1:
        raise ValueError("branch index starts at 1")
    prev_q, p, q = 2, 2, 5
    for _ in range(k - 1):
        whole = q * q + 1
        assert whole % prev_q == 0
        prev_q, p, q = q, q, whole // prev_q
    return MarkovFraction(Fraction(p, q), k - 1, "L" * (k - 1))


def pell_branch(k: int) -> MarkovFraction:
    """k-th fraction (k >= 1) of the boundary branch converging to sqrt(2) - 1.

    Starting from 2/5 the branch repeatedly takes the mediant with the seed
    1/2, i.e. descends by the constant word 'R'.  The values are ratios
    y(2k)/y(2k+1) of consecutive Pell numbers (y(1), y(2) = 1, 2 and
    y(n+1) = 2*y(n) + y(n-1)); the companion x-sequence solves
    x**2 - 2*y**2 = +-1.
    """
    if k < 1:
        raise ValueError("branch index starts at 1")
    y = [0] * (2 * k + 2)
    y[1], y[2] = 1, 2
    for n in range(3, 2 * k + 2):
        y[n] = 2 * y[n - 1] + y[n - 2]
    return MarkovFraction(Fraction(y[2 * k], y[2 * k + 1]), k - 1, "R" * (k - 1))


# -- congruence x**2 + 1 == 0 (mod q) ---------------------------------------

_BRUTE_FORCE_LIMIT = 10_000_000


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Deterministic for n < 3.3e24 with these witnesses; larger inputs get
    # a Miller-Rabin test with vanishing error probability.
    witnesses = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for a in witnesses:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, rng: random.Random) -> int:
    # Brent's cycle-finding variant; n must be odd composite.
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    rng = random.Random(0xC0FFEE)  # fixed seed: deterministic output
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return factors


def _sqrt_minus_one_mod_prime_power(p: int, e: int) -> list[int]:
    """Solutions of x**2 == -1 modulo p**e for an odd prime p."""
    if p % 4 != 1:
        return []
    # Square root of -1 mod p via a quadratic non-residue.
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    x = pow(n, (p - 1) // 4, p)
    mod = p
    while mod < p ** e:
        # Newton lift: stable because 2x is invertible (p odd, x nonzero).
        mod = min(mod * mod, p ** e)
        x = (x - (x * x + 1) * pow(2 * x, -1, mod)) % mod
    return sorted((x % p ** e, (-x) % p ** e))


def _congruence_factored(q: int) -> list[int]:
    factors = _factorize(q)
    if factors.get(2, 0) >= 2:
        return []
    residues = [(0, 1)]  # pairs (residue, modulus), combined by CRT
    for p, e in sorted(factors.items()):
        mod = p ** e
        roots = [1] if p == 2 else _sqrt_minus_one_mod_prime_power(p, e)
        if not roots:
            return []
        residues = [
            ((r * mod * pow(mod, -1, m) + s * m * pow(m, -1, mod)) % (m * mod), m * mod)
            for r, m in residues
            for s in roots
        ]
    return sorted(r for r, _ in residues)


def _congruence_brute(q: int) -> list[int]:
    if q == 1:
        return [0]
    found = []
    for x in range(q // 2 + 1):
        if (x * x + 1) % q == 0:
            found.append(x)
            if x != (q - x) % q:
                found.append(q - x)
    return sorted(found)


def solve_congruence(q: int) -> list[int]:
    """All residues x in [0, q) with x**2 + 1 == 0 (mod q), sorted.

    Brute force is used up to 10**7; beyond that the modulus is factored
    and solutions are lifted and combined by the Chinese remainder theorem.
    The set is nonempty exactly when q has no prime factor congruent to
    3 mod 4 and is not divisible by 4; Markov numbers always qualify.
    """
    if q < 1:
        raise ValueError("modulus must be positive")
    if q <= _BRUTE_FORCE_LIMIT:
        return _congruence_brute(q)
    return _congruence_factored(q)


# -- exhaustive scans --------------------------------------------------------


@dataclass(frozen=True)
class UnicityReport:
    """Result of grouping enumerated fractions by denominator."""

    depth: int
    vertex_count: int
    distinct_denominators: int
    duplicates: tuple[tuple[int, tuple[Fraction, ...]], ...]

    @property
    def all_unique(self) -> bool:
        return not self.duplicates


def unicity_scan(depth: int) -> UnicityReport:
    """Check that no denominator repeats among tree fractions to the given depth.

    Seeds are included.  A duplicate denominator would exhibit two Markov
    fractions sharing a Markov number; none is known, and none occurs in
    any enumerable range.
    """
    by_denominator: dict[int, list[Fraction]] = {1: [Fraction(0)], 2: [Fraction(1, 2)]}
    count = 2
    for _, triple in enumerate_tree(depth):
        by_denominator.setdefault(triple.f3.denominator, []).append(triple.f3)
        count += 1
    duplicates = tuple(
        (q, tuple(vals)) for q, vals in sorted(by_denominator.items()) if len(vals) > 1
    )
    return UnicityReport(depth, count, len(by_denominator), duplicates)


# -- generalized equations ---------------------------------------------------


@dataclass(frozen=True)
class GeneralizedEquation:
    """Coefficients of a*x**2 + b*y**2 + c*z**2 = d*x*y*z with a + b + c = d.

    The condition a + b + c = d makes (1, 1, 1) a solution; each coefficient
    divides d in the supported instances, so all Vieta flips stay integral.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a + self.b + self.c != self.d:
            raise ValueError("coefficients must satisfy a + b + c = d")
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("coefficients must be positive")

    def satisfied_by(self, x: int, y: int, z: int) -> bool:
        return (self.a * x * x + self.b * y * y + self.c * z * z
                == self.d * x * y * z)


#: The three supported instances: the Markov equation itself, the degree-4
#: pattern (1,1,2,4), and the degree-6 pattern (1,2,3,6).
SUPPORTED_EQUATIONS = {
    "markov": GeneralizedEquation(1, 1, 1, 3),
    "quadric": GeneralizedEquation(1, 1, 2, 4),
    "x3": GeneralizedEquation(1, 2, 3, 6),
}


def generalized_enumerate(eq: GeneralizedEquation, depth: int) -> set[tuple[int, int, int]]:
    """Closure of (1, 1, 1) under the three Vieta flips, to a mutation depth.

    A flip replaces one coordinate by the second root of its quadratic,
    e.g. x -> d*y*z/a - x; divisibility holds for the supported instances
    and is checked for anything else.
    """
    if eq not in SUPPORTED_EQUATIONS.values():
        raise ValueError(f"unsupported coefficient tuple ({eq.a}, {eq.b}, {eq.c}, {eq.d})")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    start = (1, 1, 1)
    seen = {start}
    frontier = [start]
    for _ in range(depth):
        next_frontier = []
        for x, y, z in frontier:
            for flipped in (
                (eq.d * y * z // eq.a - x, y, z) if (eq.d * y * z) % eq.a == 0 else None,
                (x, eq.d * x * z // eq.b - y, z) if (eq.d * x * z) % eq.b == 0 else None,
                (x, y, eq.d * x * y // eq.c - z) if (eq.d * x * y) % eq.c == 0 else None,
            ):
                if flipped is None or min(flipped) < 1:
                    continue
                if flipped not in seen:
                    assert eq.satisfied_by(*flipped)
                    seen.add(flipped)
                    next_frontier.append(flipped)
        frontier = next_frontier
    return seen
