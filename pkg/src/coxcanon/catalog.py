"""Shipped varieties and the standard example rings.

* Weighted-plane blow-up at the monomial curve point (class data only):
  Cl(X) = Z A + Z E, K_X = E - (a+b+c) A, ring R(X; -alpha E, beta A).
* Blow-up of P^n at r points with ring R(X; -sum m_i E_i, A).
* P^1 x P^1 with its Cox ring R(X; A_1, A_2) and the rings S_{a,b} = R(X; a A_1 + b A_2).
"""
from __future__ import annotations

from math import comb, gcd
from typing import Sequence

from . import toric
from .backends import BlowupBackend, LatticeBackend, ToricBackend
from .blowup import BlowupDivisor, PointConfig, default_points
from .multisection import MultiSectionRing, freeness_test, new_ring
from .toric import ToricDivisor


def builtin_fan(name: str, **params) -> toric.Fan:
    if name == "projective_space":
        return toric.projective_space(int(params.get("n", 2)))
    if name == "product_of_p1":
        return toric.product_of_projective_lines(int(params.get("k", 2)))
    if name == "product_of_projective_spaces":
        return toric.product_of_projective_spaces([int(x) for x in params["dims"]])
    if name == "del_pezzo_6":
        return toric.del_pezzo_6()
    if name == "hirzebruch":
        return toric.hirzebruch(int(params.get("a", 1)))
    if name == "weighted_p112":
        return toric.weighted_projective_plane_112()
    raise KeyError(f"unknown builtin variety {name!r}")


def product_layout(name: str, **params) -> list[int] | None:
    """Factor dimensions when the builtin is a product of projective spaces."""
    if name == "projective_space":
        return [int(params.get("n", 2))]
    if name == "product_of_p1":
        return [1] * int(params.get("k", 2))
    if name == "product_of_projective_spaces":
        return [int(x) for x in params["dims"]]
    return None


# -- weighted plane blown up at the monomial curve point --------------------------

def weighted_blowup_backend(a: int, b: int, c: int) -> LatticeBackend:
    """Basis order (A, E)."""
    if min(a, b, c) <= 0 or gcd(a, b) != 1 or gcd(b, c) != 1 or gcd(a, c) != 1:
        raise ValueError("a, b, c must be pairwise coprime positive integers")
    return LatticeBackend(("A", "E"), (-(a + b + c), 1), dim=2,
                          name=f"Bl P({a},{b},{c}) at the monomial curve point")


def weighted_blowup_ring(a: int, b: int, c: int, alpha: int, beta: int) -> MultiSectionRing:
    """R(X; -alpha E, beta A), i.e. the (alpha, beta)-Veronese of the symbolic Rees ring."""
    backend = weighted_blowup_backend(a, b, c)
    return new_ring(backend, [backend.divisor((0, -alpha)), backend.divisor((beta, 0))])


def weighted_blowup_freeness_table(a: int, b: int, c: int, alphas: Sequence[int], betas: Sequence[int]) -> dict:
    return {(al, be): freeness_test(weighted_blowup_ring(a, b, c, al, be)).free
            for al in alphas for be in betas}


# -- blow-up of P^n at points ---------------------------------------------------

def point_blowup_backend(n: int, r: int, points=None) -> BlowupBackend:
    return BlowupBackend(PointConfig(n, tuple(points) if points is not None else default_points(n, r)))


def point_blowup_ring(n: int, m: Sequence[int], points=None) -> MultiSectionRing:
    """R(X; -m_1 E_1 - ... - m_r E_r, A) on the blow-up of P^n at r points."""
    backend = point_blowup_backend(n, len(m), points)
    r = len(m)
    return new_ring(backend, [BlowupDivisor(0, tuple(m)), BlowupDivisor(1, (0,) * r)])


def dp6_divisor(d: int, c: Sequence[int]) -> ToricDivisor:
    """The toric divisor on :func:`coxcanon.toric.del_pezzo_6` that is
    linearly equivalent to dA - sum c_i E_i, where E_0, E_1, E_2 lie over
    (1:0:0), (0:1:0), (0:0:1) and A pulls back the line x_0 = 0."""
    c0, c1, c2 = c
    # A = D0' + E_(0:1:0) + E_(0:0:1)
    return ToricDivisor((0, -c0, 0, d - c1, d, d - c2))


def coordinate_points_p2() -> tuple:
    return ((1, 0, 0), (0, 1, 0), (0, 0, 1))


# -- P^1 x P^1 ----------------------------------------------------------------

def p1xp1_backend() -> ToricBackend:
    return ToricBackend(toric.product_of_projective_lines(2))


def p1xp1_divisor(a: int, b: int) -> ToricDivisor:
    """a A_1 + b A_2, with A_1, A_2 the ray divisors of (1,0) and (0,1).

    Ray layout: (1,0), (-1,0), (0,1), (0,-1); O(A_1) = O(1,0), O(A_2) = O(0,1).
    """
    return ToricDivisor((a, 0, b, 0))


def cox_p1xp1() -> MultiSectionRing:
    backend = p1xp1_backend()
    return new_ring(backend, [p1xp1_divisor(1, 0), p1xp1_divisor(0, 1)])


def segre_ring(a: int, b: int) -> MultiSectionRing:
    """S_{a,b} = R(X; a A_1 + b A_2) on P^1 x P^1."""
    return new_ring(p1xp1_backend(), [p1xp1_divisor(a, b)])


def segre_canonical_formula(a: int, b: int, n: int) -> int:
    """dim k[x_0,x_1]_{na-2} * dim k[y_0,y_1]_{nb-2} for n > 0, else 0."""
    if n <= 0:
        return 0

    def binary_forms(deg):
        return deg + 1 if deg >= 0 else 0

    return binary_forms(n * a - 2) * binary_forms(n * b - 2)


def projective_line_point_ring() -> MultiSectionRing:
    """R(P^1; pt) = k[x_0, x_1]."""
    backend = ToricBackend(toric.projective_space(1))
    return new_ring(backend, [ToricDivisor((1, 0))])


def monomial_count(dims: Sequence[int], degrees: Sequence[int]) -> int:
    """Monomials of multidegree ``degrees`` in a polynomial ring with
    ``dims[j] + 1`` variables of degree e_j."""
    out = 1
    for n, d in zip(dims, degrees):
        out *= comb(d + n, n) if d >= 0 else 0
    return out
