"""Rational polyhedra in inequality form, Fourier-Motzkin projection and
lattice-point enumeration."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import gcd_all


class UnboundedPolyhedronError(ValueError):
    pass


Constraint = tuple[tuple[int, ...], Fraction]


def _normalize(normal: Sequence, bound) -> Constraint | None:
    """gcd-reduce ``<normal, u> >= bound``; returns None for ``0 >= b`` with b <= 0."""
    normal = tuple(Fraction(a) for a in normal)
    bound = Fraction(bound)
    den = math.lcm(*(a.denominator for a in normal)) if normal else 1
    ints = tuple(int(a * den) for a in normal)
    bound = bound * den
    g = gcd_all(ints)
    if g == 0:
        return None if bound <= 0 else ((0,) * len(ints), bound)
    return tuple(a // g for a in ints), bound / g


def _dedupe(constraints) -> list[Constraint]:
    best: dict[tuple[int, ...], Fraction] = {}
    for normal, bound in constraints:
        if normal not in best or bound > best[normal]:
            best[normal] = bound
    return sorted(best.items())


@dataclass(frozen=True)
class RationalPolyhedron:
    """``{u in Q^n : <normal, u> >= bound for every constraint}``."""

    dim: int
    constraints: tuple[Constraint, ...] = field(default=())

    def __post_init__(self):
        normed = []
        for normal, bound in self.constraints:
            if len(normal) != self.dim:
                raise ValueError("constraint normal has wrong length")
            c = _normalize(normal, bound)
            if c is not None:
                normed.append(c)
        object.__setattr__(self, "constraints", tuple(_dedupe(normed)))

    @classmethod
    def from_inequalities(cls, rows: Sequence[tuple[Sequence[int], object]]) -> "RationalPolyhedron":
        rows = list(rows)
        dim = len(rows[0][0]) if rows else 0
        return cls(dim, tuple((tuple(a), Fraction(b)) for a, b in rows))

    def contains(self, point: Sequence) -> bool:
        return all(sum(a * x for a, x in zip(normal, point)) >= bound for normal, bound in self.constraints)

    def translate(self, t: Sequence[int]) -> "RationalPolyhedron":
        """The polyhedron ``P + t``."""
        return RationalPolyhedron(
            self.dim,
            tuple((n, b + sum(a * x for a, x in zip(n, t))) for n, b in self.constraints),
        )

    def has_contradiction(self) -> bool:
        return any(not any(n) and b > 0 for n, b in self.constraints)


def eliminate(constraints: Sequence[Constraint], var: int) -> list[Constraint]:
    """One Fourier-Motzkin step removing coordinate ``var``."""
    pos, neg, rest = [], [], []
    for c in constraints:
        a = c[0][var]
        (pos if a > 0 else neg if a < 0 else rest).append(c)
    out = list(rest)
    for (p, pb), (q, qb) in itertools.product(pos, neg):
        lp, lq = -q[var], p[var]
        normal = tuple(lp * x + lq * y for x, y in zip(p, q))
        c = _normalize(normal, lp * pb + lq * qb)
        if c is not None:
            out.append(c)
    return _dedupe(out)


def project(P: RationalPolyhedron, keep: Sequence[int]) -> list[Constraint]:
    """Constraints of the projection onto the coordinates in ``keep``.

    The returned normals still have length ``P.dim`` with zeros outside
    ``keep``.
    """
    cons = list(P.constraints)
    for var in range(P.dim):
        if var not in keep:
            cons = eliminate(cons, var)
    return cons


@dataclass(frozen=True)
class BoundingBox:
    bounded: bool
    empty: bool
    box: tuple[tuple[int, int], ...] | None

    @property
    def lattice_empty(self) -> bool:
        return self.empty or (self.box is not None and any(lo > hi for lo, hi in self.box))


UNBOUNDED = BoundingBox(bounded=False, empty=False, box=None)


def _interval(cons: Sequence[Constraint], i: int):
    """Rational interval of coordinate ``i`` from single-variable constraints."""
    lo = hi = None
    empty = False
    for normal, bound in cons:
        a = normal[i]
        if any(v for k, v in enumerate(normal) if k != i):
            raise AssertionError("projection left extra variables")
        if a == 0:
            empty |= bound > 0
        elif a > 0:
            v = bound / a
            lo = v if lo is None else max(lo, v)
        else:
            v = bound / a
            hi = v if hi is None else min(hi, v)
    if lo is not None and hi is not None and lo > hi:
        empty = True
    return lo, hi, empty


def is_bounded_with_box(P: RationalPolyhedron) -> BoundingBox:
    """Decide emptiness and boundedness, and bound every lattice point.

    Rational emptiness is exact.  The box is the Fourier-Motzkin shadow on
    each axis, rounded inward to integers.
    """
    if P.has_contradiction():
        return BoundingBox(bounded=True, empty=True, box=None)
    intervals = []
    for i in range(P.dim):
        lo, hi, empty = _interval(project(P, [i]), i)
        if empty:
            return BoundingBox(bounded=True, empty=True, box=None)
        intervals.append((lo, hi))
    if P.dim == 0:
        return BoundingBox(bounded=True, empty=False, box=())
    if any(lo is None or hi is None for lo, hi in intervals):
        return UNBOUNDED
    box = tuple((math.ceil(lo), math.floor(hi)) for lo, hi in intervals)
    return BoundingBox(bounded=True, empty=False, box=box)


def _lattice_constraints(P: RationalPolyhedron):
    # <a, u> is an integer for integral u, so the bound may be rounded up
    return [(n, math.ceil(b)) for n, b in P.constraints]


def enumerate_lattice_points(P: RationalPolyhedron) -> list[tuple[int, ...]]:
    """All integer points of a bounded polyhedron in lexicographic order."""
    bb = is_bounded_with_box(P)
    if not bb.bounded:
        raise UnboundedPolyhedronError("polyhedron is unbounded")
    if bb.lattice_empty:
        return []
    cons = _lattice_constraints(P)
    ranges = [range(lo, hi + 1) for lo, hi in bb.box]
    return [
        pt
        for pt in itertools.product(*ranges)
        if all(sum(a * x for a, x in zip(n, pt)) >= b for n, b in cons)
    ]


def count_lattice_points(P: RationalPolyhedron) -> int:
    return len(enumerate_lattice_points(P))
