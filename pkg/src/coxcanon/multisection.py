"""Multi-section rings R(X; D_1, ..., D_s), the modules M_F and the graded
canonical module.

The canonical module is realized degreewise as M_{K_X}: its piece in degree
n is h^0(X, O_X(sum n_i D_i + K_X)).  Every table here is a finite-box cache;
nothing is claimed outside the box it was computed on.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

from .backends import ToricBackend, UnsupportedOperation, VarietyBackend
from .cohomology import product_twists, top_cohomology
from .lattice import FGAbelianGroup, GroupElement, IntMatrix, exact_rank, sublattice_membership
from .toric import ToricDivisor

log = logging.getLogger(__name__)

Degree = tuple[int, ...]
Box = tuple[tuple[int, int], ...]


class DependentClassesError(ValueError):
    """The classes of D_1, ..., D_s are linearly dependent over Z."""


class NoAmpleWitnessError(RuntimeError):
    """No ample Cartier divisor was found in the lattice spanned by the D_i."""


def make_box(spec, s: int) -> Box:
    """Normalize ``spec`` (None, one (lo, hi) pair, or one pair per axis)."""
    if spec is None:
        return ((-5, 5),) * s
    spec = tuple(tuple(int(x) for x in p) for p in spec)
    if len(spec) == 1 and s != 1:
        spec = spec * s
    if len(spec) != s:
        raise ValueError(f"box has {len(spec)} axes, ring has {s}")
    if any(lo > hi for lo, hi in spec):
        raise ValueError("empty box axis")
    return spec


def box_degrees(box: Box) -> Iterable[Degree]:
    return itertools.product(*(range(lo, hi + 1) for lo, hi in box))


@dataclass(frozen=True)
class GradedDimTable:
    box: Box
    entries: dict

    @classmethod
    def fill(cls, box: Box, fn: Callable[[Degree], int]) -> "GradedDimTable":
        return cls(box, {n: fn(n) for n in box_degrees(box)})

    def __getitem__(self, n) -> int:
        return self.entries[tuple(n)]

    def degrees(self) -> list[Degree]:
        return sorted(self.entries)

    def nonzero(self) -> dict:
        return {n: v for n, v in sorted(self.entries.items()) if v}

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    def to_dict(self) -> dict:
        return {
            "box": [list(p) for p in self.box],
            "entries": [{"degree": list(n), "dim": self.entries[n]} for n in self.degrees()],
        }

    def to_csv_rows(self) -> list[list]:
        return [[",".join(str(x) for x in n), self.entries[n]] for n in self.degrees()]


@dataclass(frozen=True)
class MultiSectionRing:
    backend: VarietyBackend
    divisors: tuple
    classes: tuple | None
    ample_witness: tuple[int, ...] | None
    ample_status: str
    independent: bool = True
    noetherian_assumed: bool = True

    @property
    def s(self) -> int:
        return len(self.divisors)

    @property
    def integral(self) -> bool:
        return all(self.backend.is_integral(D) for D in self.divisors)

    @property
    def hypothesis_verified(self) -> bool:
        return self.ample_status in ("found", "assumed")

    def divisor_at(self, n: Sequence[int]):
        if len(n) != self.s:
            raise ValueError(f"degree {tuple(n)} has the wrong length for s={self.s}")
        return self.backend.combination(n, self.divisors)

    def hypotheses(self) -> dict:
        return {
            "independent_classes": self.independent,
            "ample_witness": list(self.ample_witness) if self.ample_witness else None,
            "ample_witness_status": self.ample_status,
            "noetherian": "assumed" if self.noetherian_assumed else "not assumed",
        }


def _class_rows(backend: VarietyBackend, divisors) -> list[tuple[int, ...]]:
    out = []
    for D in divisors:
        k = backend.denominator(D)
        out.append(tuple(backend.divisor_class(k * D).coordinates))
    return out


def classes_independent(backend: VarietyBackend, divisors) -> bool:
    """No nonzero integer vector kills sum n_i [D_i] in Cl(X).

    Torsion classes can never be part of an independent family, so it is
    enough that the free parts have full rank.
    """
    f = backend.class_group().free_rank
    free_parts = [row[:f] for row in _class_rows(backend, divisors)]
    if f == 0:
        return False
    return exact_rank(free_parts) == len(divisors)


def _witness_candidates(s: int, bound: int):
    for radius in range(1, bound + 1):
        for a in itertools.product(range(-radius, radius + 1), repeat=s):
            if max(abs(x) for x in a) == radius:
                yield a


def find_ample_witness(backend: VarietyBackend, divisors, bound: int = 8):
    """First integer vector a (by max-norm, then lexicographic) with
    sum a_i D_i ample Cartier, or None."""
    for a in _witness_candidates(len(divisors), bound):
        D = backend.combination(a, divisors)
        if not backend.is_integral(D):
            continue
        if backend.ample_cartier(D) is True:
            return a
    return None


def new_ring(backend: VarietyBackend, divisors: Sequence, *, witness_bound: int = 8,
             check_independence: bool = True) -> MultiSectionRing:
    """Build R(X; D_1, ..., D_s), checking condition (1) and searching for
    an ample witness.

    ``check_independence=False`` skips condition (1); such rings are only
    meant for exercising :func:`local_domain_probe`.
    """
    divisors = tuple(divisors)
    if not divisors:
        raise ValueError("need at least one divisor")
    independent = classes_independent(backend, divisors)
    if check_independence and not independent:
        raise DependentClassesError("divisor classes are linearly dependent over Z")
    classes = None
    if all(backend.is_integral(D) for D in divisors):
        classes = tuple(backend.divisor_class(D) for D in divisors)
    if backend.ample_assumed:
        witness, status = None, "assumed"
    else:
        witness = find_ample_witness(backend, divisors, witness_bound)
        status = "found" if witness is not None else "not_found"
        if witness is None:
            log.info("no ample witness with |a_i| <= %d; results are unverified", witness_bound)
    return MultiSectionRing(backend, divisors, classes, witness, status, independent)


def _require_hypotheses(ring: MultiSectionRing, allow_unverified: bool):
    if not ring.hypothesis_verified and not allow_unverified:
        raise NoAmpleWitnessError("condition (2) is not established for this ring")


def _require_integral(ring: MultiSectionRing):
    if not ring.integral or ring.classes is None:
        raise UnsupportedOperation("operation needs integral divisors D_i")


# -- graded pieces ---------------------------------------------------------------

def graded_dimension(ring: MultiSectionRing, n: Sequence[int]) -> int:
    """dim R_n = h^0(X, O_X(sum n_i D_i))."""
    return ring.backend.section_dimension(ring.divisor_at(n))


def module_piece_dimension(ring: MultiSectionRing, F, n: Sequence[int]) -> int:
    """dim [M_F]_n = h^0(X, O_X(sum n_i D_i + F))."""
    return ring.backend.section_dimension(ring.divisor_at(n) + F)


def graded_table(ring: MultiSectionRing, box=None) -> GradedDimTable:
    box = make_box(box, ring.s)
    return GradedDimTable.fill(box, lambda n: graded_dimension(ring, n))


def module_table(ring: MultiSectionRing, F, box=None) -> GradedDimTable:
    box = make_box(box, ring.s)
    return GradedDimTable.fill(box, lambda n: module_piece_dimension(ring, F, n))


def canonical_piece_dimension(ring: MultiSectionRing, n: Sequence[int], *, allow_unverified: bool = False) -> int:
    """dim of the canonical module in degree n, via M_{K_X}.

    Rings with Q-divisors go through :func:`q_canonical_piece`.
    """
    _require_hypotheses(ring, allow_unverified)
    if not ring.integral:
        return q_canonical_piece(ring, n, allow_unverified=allow_unverified)
    return module_piece_dimension(ring, ring.backend.canonical_divisor(), n)


def canonical_table(ring: MultiSectionRing, box=None, *, allow_unverified: bool = False) -> GradedDimTable:
    _require_hypotheses(ring, allow_unverified)
    box = make_box(box, ring.s)
    return GradedDimTable.fill(box, lambda n: canonical_piece_dimension(ring, n, allow_unverified=allow_unverified))


def q_canonical_piece(ring: MultiSectionRing, n: Sequence[int], *, allow_unverified: bool = False) -> int:
    """Canonical piece for Q-divisors D_i on a toric X.

    h^0 of the round-down of sum n_i D_i + K_X + sum_V (q_V - 1)/q_V V,
    where q_V is the lcm over i of the reduced denominators of the
    coefficient of D_i along the prime divisor V.
    """
    _require_hypotheses(ring, allow_unverified)
    backend = ring.backend
    if not isinstance(backend, ToricBackend):
        if ring.integral:
            return module_piece_dimension(ring, backend.canonical_divisor(), n)
        raise UnsupportedOperation("Q-divisors are only supported on toric backends")
    nrays = backend.fan.nrays
    q = [lcm(*(D.coefficients[v].denominator for D in ring.divisors)) for v in range(nrays)]
    correction = ToricDivisor(tuple(Fraction(qv - 1, qv) for qv in q))
    total = ring.divisor_at(n) + backend.canonical_divisor() + correction
    return backend.section_dimension(total)


# -- freeness and class groups ----------------------------------------------------

@dataclass(frozen=True)
class FreenessVerdict:
    """Outcome of the lattice test [K_X] in Z[D_1] + ... + Z[D_s].

    When free, ``coefficients`` c satisfy [K_X] = sum c_i [D_i]; then
    omega = R(shift) with ``shift`` = c under R(e)_n = R_{n+e}, and the
    generator sits in degree ``generator_degree`` = -c.
    """

    free: bool
    coefficients: tuple[int, ...] | None
    hypotheses: dict = field(default_factory=dict)

    @property
    def shift(self) -> tuple[int, ...] | None:
        return self.coefficients

    @property
    def generator_degree(self) -> tuple[int, ...] | None:
        return None if self.coefficients is None else tuple(-c for c in self.coefficients)

    def to_dict(self) -> dict:
        return {
            "free": self.free,
            "canonical_class_coefficients": list(self.coefficients) if self.coefficients else None,
            "shift": list(self.shift) if self.shift else None,
            "generator_degree": list(self.generator_degree) if self.generator_degree else None,
            "hypotheses": self.hypotheses,
        }


def freeness_test(ring: MultiSectionRing, *, allow_unverified: bool = False) -> FreenessVerdict:
    """Decide whether omega_R is free of rank one, by exact lattice membership."""
    _require_hypotheses(ring, allow_unverified)
    _require_integral(ring)
    cl = ring.backend.class_group()
    K = ring.backend.divisor_class(ring.backend.canonical_divisor())
    coeffs = cl.membership([c.coordinates for c in ring.classes], K.coordinates)
    return FreenessVerdict(coeffs is not None, coeffs, ring.hypotheses())


def cl_R_group(ring: MultiSectionRing, *, allow_unverified: bool = False) -> FGAbelianGroup:
    """Cl(R) = Cl(X) / <[D_1], ..., [D_s]>, with projection from divisors."""
    _require_hypotheses(ring, allow_unverified)
    _require_integral(ring)
    return ring.backend.class_group().quotient([c.coordinates for c in ring.classes])


def class_in_cl_R(ring: MultiSectionRing, F, *, allow_unverified: bool = False) -> GroupElement:
    """Image of [F] under Cl(X) -> Cl(R), i.e. the class of M_F."""
    return cl_R_group(ring, allow_unverified=allow_unverified).element(ring.backend.ambient_vector(F))


def default_cox_basis(backend: VarietyBackend) -> list:
    """Divisors whose classes are the standard basis of a free Cl(X)."""
    cl = backend.class_group()
    gens = backend.generators()
    rows = [backend.divisor_class(D).coordinates for D in gens]
    basis = []
    for k in range(cl.free_rank):
        e = tuple(int(i == k) for i in range(cl.ngens))
        coeffs = sublattice_membership(rows, e)
        if coeffs is None:  # pragma: no cover - generators always span
            raise ArithmeticError("generators do not span the class group")
        basis.append(backend.combination(coeffs, gens))
    return basis


def cox_canonical_degree(backend: VarietyBackend, basis: Sequence | None = None) -> GroupElement:
    """Degree of the generator of omega_Cox(X), i.e. -[K_X] in the basis.

    Also confirms that the freeness test on the Cox ring reports the same
    generator degree.
    """
    cl = backend.class_group()
    if cl.torsion:
        raise ValueError("class group has torsion; the Cox ring is not defined this way")
    basis = list(basis) if basis is not None else default_cox_basis(backend)
    mat = [backend.divisor_class(D).coordinates for D in basis]
    if len(mat) != cl.free_rank or abs(IntMatrix(mat).det()) != 1:
        raise ValueError("chosen divisors are not a Z-basis of Cl(X)")
    K = backend.divisor_class(backend.canonical_divisor()).coordinates
    coeffs = sublattice_membership(mat, K)
    degree = GroupElement(tuple(-c for c in coeffs))
    ring = new_ring(backend, basis)
    verdict = freeness_test(ring, allow_unverified=True)
    if not verdict.free or verdict.generator_degree != degree.coordinates:
        raise AssertionError("freeness test disagrees with the Cox canonical degree")
    return degree


# -- restriction to sublattices ------------------------------------------------

def restrict_ring(ring: MultiSectionRing, sublattice: Sequence[Sequence[int]], **kwargs) -> MultiSectionRing:
    """R(X; F_1, ..., F_r) with F_j = sum_i sublattice[j][i] D_i."""
    rows = [tuple(int(x) for x in row) for row in sublattice]
    if not rows or any(len(r) != ring.s for r in rows):
        raise ValueError(f"sublattice vectors must have length {ring.s}")
    return new_ring(ring.backend, [ring.divisor_at(r) for r in rows], **kwargs)


def _sub_to_full(sublattice, m):
    s = len(sublattice[0])
    return tuple(sum(mj * row[i] for mj, row in zip(m, sublattice)) for i in range(s))


@dataclass(frozen=True)
class ReciprocityResult:
    applicable: bool
    reason: str = ""
    hilbert_polynomial: tuple[Fraction, ...] | None = None  # values at 0..deg
    degree: int | None = None
    krull_dimension: int | None = None

    def canonical_piece(self, n: int) -> int:
        if not self.applicable:
            raise ValueError(self.reason)
        if n <= 0:
            return 0
        val = (-1) ** self.degree * _lagrange_eval(self.hilbert_polynomial, -n)
        if val.denominator != 1 or val < 0:
            raise ArithmeticError("reciprocity produced a non-natural number")
        return int(val)


def _lagrange_eval(values: Sequence[Fraction], x: int) -> Fraction:
    """Evaluate the polynomial with P(k) = values[k], k = 0..len-1."""
    total = Fraction(0)
    m = len(values)
    for k, yk in enumerate(values):
        term = Fraction(yk)
        for j in range(m):
            if j != k:
                term *= Fraction(x - j, k - j)
        total += term
    return total


def _poly_degree(values: Sequence[Fraction]) -> int:
    diffs = list(values)
    deg = len(diffs) - 1
    while deg > 0:
        top = diffs
        for _ in range(deg):
            top = [b - a for a, b in zip(top, top[1:])]
        if top[0] != 0:
            return deg
        deg -= 1
    return 0


def hilbert_reciprocity(ring: MultiSectionRing, window: int | None = None) -> ReciprocityResult:
    """Canonical module of a singly graded R(X; D) from its Hilbert function.

    Assumes R is Cohen-Macaulay with R_n = 0 for n < 0 and dim R_n equal to
    a polynomial P(n) for every n >= 0.  Then the Hilbert series of omega is
    (-1)^{dim R} H_R(1/t), so omega_n = (-1)^{deg P} P(-n) for n >= 1 and 0
    otherwise.  The hypotheses on the Hilbert function are checked on
    ``window``; Cohen-Macaulayness is assumed.
    """
    if ring.s != 1:
        return ReciprocityResult(False, "only singly graded rings are supported")
    d = ring.backend.dim
    window = window if window is not None else 2 * d + 6
    if any(graded_dimension(ring, (-k,)) for k in range(1, window + 1)):
        return ReciprocityResult(False, "ring has nonzero pieces in negative degree")
    values = [Fraction(graded_dimension(ring, (k,))) for k in range(window + 1)]
    base = values[: d + 1]
    if any(_lagrange_eval(base, k) != values[k] for k in range(window + 1)):
        return ReciprocityResult(False, "Hilbert function is not a polynomial on n >= 0")
    deg = _poly_degree(base)
    return ReciprocityResult(True, "", tuple(base), deg, deg + 1)


@dataclass(frozen=True)
class RestrictionReport:
    sublattice: tuple[tuple[int, ...], ...]
    box: Box
    ample_in_sublattice: bool
    sublattice_witness: tuple[int, ...] | None
    method: str
    restricted_table: GradedDimTable
    subring_table: GradedDimTable | None
    agree: bool | None
    mismatches: tuple

    def to_dict(self) -> dict:
        return {
            "sublattice": [list(r) for r in self.sublattice],
            "box": [list(p) for p in self.box],
            "ample_in_sublattice": self.ample_in_sublattice,
            "sublattice_witness": list(self.sublattice_witness) if self.sublattice_witness else None,
            "subring_method": self.method,
            "restricted_canonical_table": self.restricted_table.to_dict(),
            "subring_canonical_table": self.subring_table.to_dict() if self.subring_table else None,
            "agree": self.agree,
            "mismatches": [{"degree": list(n), "restricted": a, "subring": b} for n, a, b in self.mismatches],
            "identity_expected": self.ample_in_sublattice,
        }


def restriction_check(ring: MultiSectionRing, sublattice: Sequence[Sequence[int]], box=None, *,
                      allow_unverified: bool = False) -> RestrictionReport:
    """Compare omega_R restricted to a sublattice L with omega of R|_L.

    The left side is the canonical table of ``ring`` at the degrees of L.
    The right side is computed from the subring alone: by Hilbert-function
    reciprocity when L has rank one and the Hilbert function allows it,
    otherwise from M_{K_X} of the subring when L carries an ample witness.
    """
    _require_hypotheses(ring, allow_unverified)
    rows = tuple(tuple(int(x) for x in r) for r in sublattice)
    sub = restrict_ring(ring, rows)
    box = make_box(box, sub.s)
    left = GradedDimTable.fill(box, lambda m: canonical_piece_dimension(ring, _sub_to_full(rows, m),
                                                                        allow_unverified=allow_unverified))
    right, method = None, "undetermined"
    if sub.s == 1:
        rec = hilbert_reciprocity(sub, window=max(2 * ring.backend.dim + 6, box[0][1] + 1))
        if rec.applicable:
            right = GradedDimTable.fill(box, lambda m: rec.canonical_piece(m[0]))
            method = "hilbert_reciprocity"
    if right is None and sub.hypothesis_verified:
        right = canonical_table(sub, box)
        method = "canonical_module_formula"
    mismatches = ()
    agree = None
    if right is not None:
        mismatches = tuple((n, left[n], right[n]) for n in left.degrees() if left[n] != right[n])
        agree = not mismatches
    return RestrictionReport(rows, box, sub.ample_status == "found", sub.ample_witness, method,
                             left, right, agree, mismatches)


# -- probes and duality ---------------------------------------------------------

@dataclass(frozen=True)
class ProbeReport:
    box: Box
    violation: Degree | None
    checked: int

    @property
    def consistent(self) -> bool:
        return self.violation is None

    def to_dict(self) -> dict:
        return {"box": [list(p) for p in self.box],
                "violation": list(self.violation) if self.violation else None,
                "checked": self.checked, "consistent": self.consistent}


def local_domain_probe(ring: MultiSectionRing, box=None) -> ProbeReport:
    """Look for n != 0 with R_n and R_{-n} both nonzero.

    Such a degree cannot exist in a local Z^s-graded domain; finding one
    means condition (1) was bypassed or a backend is wrong.
    """
    box = make_box(box, ring.s)
    checked = 0
    for n in box_degrees(box):
        if not any(n):
            continue
        checked += 1
        if graded_dimension(ring, n) > 0 and graded_dimension(ring, tuple(-x for x in n)) > 0:
            return ProbeReport(box, n, checked)
    return ProbeReport(box, None, checked)


def top_local_cohomology_dim(ring: MultiSectionRing, n: Sequence[int], *, allow_unverified: bool = False) -> int:
    """dim H^{d+s}_m(R)_n, the graded dual of omega_R: omega in degree -n."""
    return canonical_piece_dimension(ring, tuple(-x for x in n), allow_unverified=allow_unverified)


@dataclass(frozen=True)
class DualityReport:
    box: Box
    rows: tuple  # (degree, local cohomology dim, oracle dim)

    @property
    def agree(self) -> bool:
        return all(a == b for _, a, b in self.rows)

    def to_dict(self) -> dict:
        return {"box": [list(p) for p in self.box], "agree": self.agree,
                "entries": [{"degree": list(n), "local_cohomology": a, "oracle": b} for n, a, b in self.rows]}


def serre_duality_check(ring: MultiSectionRing, factor_dims: Sequence[int], box=None) -> DualityReport:
    """Compare dim H^{d+s}_m(R)_n with h^d(X, O_X(sum n_i D_i)) from the
    Bott/Kunneth formulas, for X a product of projective spaces laid out as
    :func:`coxcanon.toric.product_of_projective_spaces`."""
    _require_integral(ring)
    box = make_box(box, ring.s)
    rows = []
    for n in box_degrees(box):
        lhs = top_local_cohomology_dim(ring, n)
        twists = product_twists(factor_dims, ring.divisor_at(n).integer_vector())
        rows.append((n, lhs, top_cohomology(factor_dims, twists)))
    return DualityReport(box, tuple(rows))
