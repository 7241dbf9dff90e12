"""Closed-form line-bundle cohomology on P^n and products of projective
spaces (Bott vanishing plus Kunneth).

Nothing here touches fans, polytopes or class groups, so the numbers serve
as an independent reference for the section-counting code.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence


def bott_dimension(n: int, d: int, i: int) -> int:
    """h^i(P^n, O(d))."""
    if n < 1:
        raise ValueError("n must be positive")
    if i == 0 and d >= 0:
        return comb(d + n, n)
    if i == n and d <= -n - 1:
        return comb(-d - 1, n)
    return 0


@dataclass(frozen=True)
class CohomologyQuery:
    dims: tuple[int, ...]
    twists: tuple[int, ...]
    index: int

    def __post_init__(self):
        if len(self.dims) != len(self.twists):
            raise ValueError("one twist per factor")
        if not 0 <= self.index <= sum(self.dims):
            raise ValueError("cohomological index out of range")


def kunneth_dimension(query: CohomologyQuery) -> int:
    """h^i of O(d_1, ..., d_k) on P^{n_1} x ... x P^{n_k}."""
    total = 0
    for split in itertools.product(*(range(n + 1) for n in query.dims)):
        if sum(split) != query.index:
            continue
        term = 1
        for n, d, i in zip(query.dims, query.twists, split):
            term *= bott_dimension(n, d, i)
            if not term:
                break
        total += term
    return total


def euler_characteristic(n: int, d: int) -> int:
    """chi(P^n, O(d)) as the polynomial binom(d+n, n) in d."""
    num = 1
    for k in range(1, n + 1):
        num *= d + k
    den = 1
    for k in range(1, n + 1):
        den *= k
    return num // den


def product_twists(dims: Sequence[int], coefficients: Sequence[int]) -> tuple[int, ...]:
    """Per-factor degree of a torus-invariant divisor on a product of
    projective spaces, with rays laid out factor by factor (n_j + 1 rays per
    factor).  The degree on a factor is the sum of its ray coefficients."""
    if len(coefficients) != sum(n + 1 for n in dims):
        raise ValueError("coefficient vector does not match the product layout")
    out, pos = [], 0
    for n in dims:
        out.append(sum(int(c) for c in coefficients[pos:pos + n + 1]))
        pos += n + 1
    return tuple(out)


def top_cohomology(dims: Sequence[int], twists: Sequence[int]) -> int:
    return kunneth_dimension(CohomologyQuery(tuple(dims), tuple(twists), sum(dims)))
