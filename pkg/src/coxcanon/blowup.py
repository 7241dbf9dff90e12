"""Blow-ups of P^n at finitely many distinct rational points.

A divisor ``dA - sum c_i E_i`` is stored as ``BlowupDivisor(d, c)``.  Its
sections are the degree-``d`` forms vanishing to order ``max(c_i, 0)`` at
the i-th point, counted by exact rank of the Taylor-condition matrix.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .lattice import FGAbelianGroup, GroupElement, IntMatrix, exact_rank


@dataclass(frozen=True)
class PointConfig:
    n: int
    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        pts = tuple(tuple(Fraction(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if self.n < 2 and pts:
            raise ValueError("blowing up points needs n >= 2")
        if self.n < 1:
            raise ValueError("projective dimension must be positive")
        for p in pts:
            if len(p) != self.n + 1:
                raise ValueError(f"point {p} needs {self.n + 1} homogeneous coordinates")
            if not any(p):
                raise ValueError("a point needs a nonzero coordinate")
        normed = [_normalize_point(p) for p in pts]
        if len(set(normed)) != len(normed):
            raise ValueError("points must be pairwise distinct in projective space")

    @property
    def r(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        return {"n": self.n, "points": [[str(x) for x in p] for p in self.points]}


def _normalize_point(p) -> tuple[Fraction, ...]:
    pivot = next(x for x in p if x != 0)
    return tuple(x / pivot for x in p)


@dataclass(frozen=True)
class BlowupDivisor:
    d: int
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    @classmethod
    def zero(cls, r: int) -> "BlowupDivisor":
        return cls(0, (0,) * r)

    @classmethod
    def hyperplane(cls, r: int) -> "BlowupDivisor":
        return cls(1, (0,) * r)

    @classmethod
    def exceptional(cls, r: int, i: int) -> "BlowupDivisor":
        """The divisor E_i, i.e. c_i = -1."""
        return cls(0, tuple(-int(j == i) for j in range(r)))

    @property
    def is_integral(self) -> bool:
        return True

    def __add__(self, other: "BlowupDivisor") -> "BlowupDivisor":
        if len(self.c) != len(other.c):
            raise ValueError("divisors on different blow-ups")
        return BlowupDivisor(self.d + other.d, tuple(a + b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return BlowupDivisor(-self.d, tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return BlowupDivisor(k * self.d, tuple(k * a for a in self.c))

    def ambient_vector(self) -> tuple[int, ...]:
        """Coefficients on (E_1, ..., E_r, A)."""
        return tuple(-x for x in self.c) + (self.d,)


def class_group_blowup(config: PointConfig) -> FGAbelianGroup:
    """Free of rank r+1 on (E_1, ..., E_r, A)."""
    return FGAbelianGroup(config.r + 1, (), IntMatrix.identity(config.r + 1))


def divisor_class_blowup(config: PointConfig, D: BlowupDivisor) -> GroupElement:
    return class_group_blowup(config).element(D.ambient_vector())


def canonical_divisor_blowup(config: PointConfig) -> BlowupDivisor:
    """(n-1) sum E_i - (n+1) A."""
    n = config.n
    return BlowupDivisor(-(n + 1), (-(n - 1),) * config.r)


def _monomials(nvars: int, degree: int):
    """Exponent vectors of the monomials of a given degree, lexicographic."""
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev, exps = -1, []
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        yield tuple(exps)


def _multi_indices(nvars: int, below: int):
    for total in range(below):
        yield from _monomials(nvars, total)


def vanishing_conditions(point: Sequence[Fraction], degree: int, order: int) -> list[list[Fraction]]:
    """Rows expressing that a degree-``degree`` form vanishes to ``order`` at ``point``.

    In the affine chart where the first nonzero coordinate is 1, each row is
    one Taylor coefficient of order < ``order``, as a linear functional on
    the monomial coefficients.
    """
    p = _normalize_point(point)
    piv = next(i for i, x in enumerate(p) if x != 0)
    others = [i for i in range(len(p)) if i != piv]
    monos = list(_monomials(len(p), degree))
    rows = []
    for beta in _multi_indices(len(others), order):
        row = []
        for alpha in monos:
            val = Fraction(1)
            for k, j in enumerate(others):
                a, b = alpha[j], beta[k]
                if b > a:
                    val = Fraction(0)
                    break
                val *= comb(a, b) * p[j] ** (a - b)
            row.append(val)
        rows.append(row)
    return rows


@lru_cache(maxsize=100_000)
def _section_dimension(config: PointConfig, d: int, mults: tuple[int, ...]) -> int:
    if d < 0 or any(m > d for m in mults):
        # a nonzero form of degree d has multiplicity at most d everywhere
        return 0
    total = comb(d + config.n, config.n)
    rows = []
    for p, m in zip(config.points, mults):
        if m > 0:
            rows += vanishing_conditions(p, d, m)
    return total - exact_rank(rows) if rows else total


def section_dimension_blowup(config: PointConfig, D: BlowupDivisor) -> int:
    """h^0(X, O(dA - sum c_i E_i)); nonpositive c_i impose nothing."""
    if len(D.c) != config.r:
        raise ValueError("divisor has the wrong number of exceptional coefficients")
    return _section_dimension(config, D.d, tuple(max(x, 0) for x in D.c))


def _collinear_sets(config: PointConfig):
    """Maximal sets (size >= 2) of indices of collinear points."""
    seen = set()
    pts = config.points
    for i, j in itertools.combinations(range(config.r), 2):
        line = frozenset(k for k in range(config.r) if exact_rank([pts[i], pts[j], pts[k]]) == 2)
        if line not in seen:
            seen.add(line)
            yield line


def is_ample_blowup(config: PointConfig, D: BlowupDivisor) -> bool | None:
    """Ampleness of ``dA - sum c_i E_i``: True, False, or None if undecided.

    True when every c_i >= 1 and d > sum c_i (the divisor is a positive
    combination of the base-point-free classes A and A - E_i that meets
    every curve positively).  False when some curve meets it
    nonpositively: a line inside some E_i, a general line, or the strict
    transform of a line through one or more of the points.
    """
    d, c = D.d, D.c
    if d <= 0:
        return False
    if config.r == 0:
        return True
    if any(x <= 0 for x in c):
        return False
    if d > sum(c):
        return True
    if any(d - x <= 0 for x in c):
        return False
    for line in _collinear_sets(config):
        if d - sum(c[k] for k in line) <= 0:
            return False
    return None


def default_points(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Deterministic distinct points: coordinate points first, then
    moment-curve points (1, t, t^2, ...)."""
    pts = []
    for i in range(min(r, n + 1)):
        pts.append(tuple(int(j == i) for j in range(n + 1)))
    t = 1
    while len(pts) < r:
        pts.append(tuple(t ** k for k in range(n + 1)))
        t += 1
    return tuple(pts)
