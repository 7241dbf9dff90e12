"""Complete simplicial toric varieties given by a fan.

Divisors are torus-invariant Q-divisors, one coefficient per ray.  Section
dimensions come from lattice points of the section polytope
``{u : <u, v_rho> >= -a_rho}``.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Sequence

from .lattice import FGAbelianGroup, GroupElement, IntMatrix, cokernel_presentation, exact_rank, gcd_all, solve_rational
from .polyhedra import RationalPolyhedron, UnboundedPolyhedronError, count_lattice_points


class InvalidFanError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class NonIntegralDivisorError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    rays: tuple[tuple[int, ...], ...]
    cones: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.cones))

    @property
    def rank(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def to_dict(self) -> dict:
        return {"rays": [list(r) for r in self.rays], "cones": [list(c) for c in self.cones]}


@dataclass(frozen=True)
class ToricDivisor:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))

    @classmethod
    def prime(cls, nrays: int, index: int) -> "ToricDivisor":
        return cls(tuple(int(i == index) for i in range(nrays)))

    @classmethod
    def zero(cls, nrays: int) -> "ToricDivisor":
        return cls((0,) * nrays)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def floor(self) -> "ToricDivisor":
        return ToricDivisor(tuple(floor(c) for c in self.coefficients))

    def integer_vector(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise NonIntegralDivisorError(f"divisor {self} is not integral")
        return tuple(int(c) for c in self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __add__(self, other: "ToricDivisor") -> "ToricDivisor":
        if len(other) != len(self):
            raise ValueError("divisors live on different fans")
        return ToricDivisor(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return ToricDivisor(tuple(-a for a in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return ToricDivisor(tuple(k * a for a in self.coefficients))

    def __repr__(self):
        return "ToricDivisor(%s)" % ", ".join(str(c) for c in self.coefficients)


def validate_fan(fan: Fan) -> list[str]:
    """Diagnostics for every violated fan invariant; empty when valid.

    Checks primitive rays, simplicial strongly convex full-dimensional
    cones, and completeness: every ridge is shared by exactly two cones on
    opposite sides, and a generic vector lies in exactly one cone.
    """
    diags = []
    n = fan.rank
    if not fan.rays:
        return ["fan has no rays"]
    if any(len(r) != n for r in fan.rays):
        return ["rays have inconsistent lengths"]
    for i, r in enumerate(fan.rays):
        if gcd_all(r) != 1:
            diags.append(f"non-primitive ray {i}: {list(r)}")
    if not fan.cones:
        return diags + ["fan has no maximal cones (incomplete)"]
    for c in fan.cones:
        if any(i < 0 or i >= fan.nrays for i in c):
            diags.append(f"cone {list(c)} references an unknown ray")
    if diags:
        return diags
    for c in fan.cones:
        if len(c) != n:
            diags.append(f"cone {list(c)} is not simplicial of full dimension")
        elif exact_rank([fan.rays[i] for i in c]) != n:
            diags.append(f"cone {list(c)} is not strongly convex (rays linearly dependent)")
    if len(set(fan.cones)) != len(fan.cones):
        diags.append("duplicate maximal cones")
    if diags:
        return diags

    ridges = Counter()
    for c in fan.cones:
        for ridge in itertools.combinations(c, n - 1):
            ridges[ridge] += 1
    for ridge, k in sorted(ridges.items()):
        if k != 2:
            diags.append(f"incomplete: ridge {list(ridge)} lies in {k} maximal cone(s), expected 2")
    if diags:
        return diags
    for ridge in ridges:
        a, b = [c for c in fan.cones if set(ridge) <= set(c)]
        ra = next(i for i in a if i not in ridge)
        rb = next(i for i in b if i not in ridge)
        # the two opposite rays must lie on opposite sides of the ridge hyperplane
        sa = _side(fan, ridge, ra)
        sb = _side(fan, ridge, rb)
        if sa * sb >= 0:
            diags.append(f"cones {list(a)} and {list(b)} overlap across ridge {list(ridge)}")
    if diags:
        return diags
    w = _generic_vector(fan)
    hits = [c for c in fan.cones if _in_cone_interior(fan, c, w)]
    if len(hits) != 1:
        diags.append(f"cones cover a generic vector {len(hits)} times, expected once")
    return diags


def _side(fan: Fan, ridge, ray) -> int:
    vecs = [fan.rays[i] for i in ridge] + [fan.rays[ray]]
    return _sign(IntMatrix(vecs).det())


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _cone_coordinates(fan: Fan, cone, w):
    mat = IntMatrix([fan.rays[i] for i in cone]).T
    return solve_rational(mat.tolist(), w)


def _in_cone_interior(fan: Fan, cone, w) -> bool:
    coords = _cone_coordinates(fan, cone, w)
    return coords is not None and all(c > 0 for c in coords)


def _generic_vector(fan: Fan) -> tuple[int, ...]:
    n = fan.rank
    for base in itertools.count(7):
        w = tuple(base ** k * (-1) ** k for k in range(n))
        if all(all(x != 0 for x in _cone_coordinates(fan, c, w)) for c in fan.cones):
            return w
    raise AssertionError("unreachable")


def check_fan(fan: Fan) -> Fan:
    diags = validate_fan(fan)
    if diags:
        raise InvalidFanError(diags)
    return fan


def ray_matrix(fan: Fan) -> IntMatrix:
    """The map M -> Z^rays, u -> (<u, v_rho>)_rho, as a (#rays x n) matrix."""
    return IntMatrix(fan.rays)


@lru_cache(maxsize=None)
def class_group(fan: Fan) -> FGAbelianGroup:
    """Cl(X) = Z^rays / image of the character lattice."""
    check_fan(fan)
    return cokernel_presentation(ray_matrix(fan))


def divisor_class(fan: Fan, D: ToricDivisor) -> GroupElement:
    return class_group(fan).element(D.integer_vector())


def canonical_divisor(fan: Fan) -> ToricDivisor:
    return ToricDivisor((-1,) * fan.nrays)


def principal_divisor(fan: Fan, u: Sequence[int]) -> ToricDivisor:
    """div(chi^u) = sum <u, v_rho> D_rho."""
    return ToricDivisor(ray_matrix(fan).apply(u))


def _local_data(fan: Fan, D: ToricDivisor):
    """Per maximal cone, the rational m_sigma with <m_sigma, v_rho> = -a_rho on its rays."""
    out = {}
    for c in fan.cones:
        sol = solve_rational([fan.rays[i] for i in c], [-D.coefficients[i] for i in c])
        if sol is None:
            raise AssertionError(f"cone {c} is degenerate")
        out[c] = sol
    return out


def is_cartier(fan: Fan, D: ToricDivisor) -> bool:
    if not D.is_integral:
        raise NonIntegralDivisorError("Cartier test needs an integral divisor")
    return all(all(x.denominator == 1 for x in m) for m in _local_data(fan, D).values())


def is_ample(fan: Fan, D: ToricDivisor) -> bool:
    """Ample Cartier: the support function bends strictly across every ridge."""
    if not is_cartier(fan, D):
        return False
    local = _local_data(fan, D)
    n = fan.rank
    for a in fan.cones:
        m = local[a]
        for b in fan.cones:
            if a == b or len(set(a) & set(b)) != n - 1:
                continue
            rho = next(i for i in b if i not in a)
            value = sum(x * y for x, y in zip(m, fan.rays[rho]))
            if not value > -D.coefficients[rho]:
                return False
    return True


def is_nef_or_ample_global(fan: Fan, D: ToricDivisor, strict: bool = True) -> bool:
    """Global form of the convexity test: compare every m_sigma against every
    ray outside sigma.  Used as an independent check of ``is_ample``."""
    if not is_cartier(fan, D):
        return False
    for c, m in _local_data(fan, D).items():
        for rho, v in enumerate(fan.rays):
            if rho in c:
                continue
            value = sum(x * y for x, y in zip(m, v))
            bound = -D.coefficients[rho]
            if (value <= bound) if strict else (value < bound):
                return False
    return True


def section_polyhedron(fan: Fan, D: ToricDivisor) -> RationalPolyhedron:
    return RationalPolyhedron(fan.rank, tuple((v, -a) for v, a in zip(fan.rays, D.coefficients)))


@lru_cache(maxsize=200_000)
def _section_dimension(fan: Fan, coeffs: tuple[int, ...]) -> int:
    P = RationalPolyhedron(fan.rank, tuple((v, -a) for v, a in zip(fan.rays, coeffs)))
    try:
        return count_lattice_points(P)
    except UnboundedPolyhedronError as exc:  # pragma: no cover - complete fans only
        raise AssertionError("section polyhedron of a complete fan is unbounded") from exc


def section_dimension(fan: Fan, D: ToricDivisor) -> int:
    """h^0(X, O_X(D)); rational coefficients are rounded down ray by ray."""
    if len(D) != fan.nrays:
        raise ValueError("divisor length does not match the number of rays")
    return _section_dimension(fan, D.floor().integer_vector())


# -- shipped fans -----------------------------------------------------------

def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [(-1,) * n]
    cones = list(itertools.combinations(range(n + 1), n))
    return Fan(tuple(rays), tuple(cones), name=f"P^{n}")


def product_of_projective_spaces(dims: Sequence[int]) -> Fan:
    """P^{n_1} x ... x P^{n_k}; rays are grouped by factor, each block laid
    out as in :func:`projective_space`."""
    total = sum(dims)
    rays, blocks, offset = [], [], 0
    for n in dims:
        block = []
        for v in projective_space(n).rays:
            ray = [0] * total
            ray[offset:offset + n] = v
            block.append(len(rays))
            rays.append(tuple(ray))
        blocks.append(block)
        offset += n
    factor_cones = [list(itertools.combinations(b, len(b) - 1)) for b in blocks]
    cones = [sum(choice, ()) for choice in itertools.product(*factor_cones)]
    name = " x ".join(f"P^{n}" for n in dims)
    return Fan(tuple(rays), tuple(cones), name=name)


def product_of_projective_lines(k: int) -> Fan:
    return product_of_projective_spaces([1] * k)


def hirzebruch(a: int) -> Fan:
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (3, 0))
    return Fan(rays, cones, name=f"F_{a}")


def del_pezzo_6() -> Fan:
    """P^2 blown up at its three torus-fixed points (hexagon fan).

    Ray order: D1', E_(1:0:0), D2', E_(0:1:0), D0', E_(0:0:1), where Di' is
    the strict transform of {x_i = 0} for the P^2 rays
    v0 = (-1,-1), v1 = (1,0), v2 = (0,1).
    """
    rays = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
    cones = tuple((i, (i + 1) % 6) for i in range(6))
    return Fan(rays, cones, name="dP6")


def weighted_projective_plane_112() -> Fan:
    rays = ((1, 0), (0, 1), (-1, -2))
    return Fan(rays, ((0, 1), (1, 2), (0, 2)), name="P(1,1,2)")
