"""Variety backends: a uniform surface over toric varieties, point blow-ups
of P^n, and class-group-only lattice data."""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import lcm
from typing import Sequence

from . import blowup, toric
from .lattice import FGAbelianGroup, GroupElement, IntMatrix, cokernel_presentation


class UnsupportedOperation(NotImplementedError):
    pass


class VarietyBackend(ABC):
    """Capabilities the multisection code needs from a normal projective X."""

    kind: str = "abstract"
    #: set when condition (2) is taken on faith instead of searched for
    ample_assumed: bool = False

    @property
    @abstractmethod
    def dim(self) -> int: ...

    @abstractmethod
    def class_group(self) -> FGAbelianGroup: ...

    @abstractmethod
    def canonical_divisor(self): ...

    @abstractmethod
    def zero_divisor(self): ...

    @abstractmethod
    def ambient_vector(self, D) -> tuple[int, ...]:
        """Integer coordinates of D in the free group of divisors."""

    @abstractmethod
    def generators(self) -> list:
        """Divisors whose classes generate Cl(X)."""

    def section_dimension(self, D) -> int:
        raise UnsupportedOperation(f"{self.kind} backend cannot count sections")

    def ample_cartier(self, D) -> bool | None:
        return None

    def is_integral(self, D) -> bool:
        return D.is_integral

    def denominator(self, D) -> int:
        return 1

    def divisor_class(self, D) -> GroupElement:
        return self.class_group().element(self.ambient_vector(D))

    def combination(self, coeffs: Sequence[int], divisors: Sequence):
        total = self.zero_divisor()
        for a, D in zip(coeffs, divisors):
            if a:
                total = total + a * D
        return total

    def describe(self) -> dict:
        return {"kind": self.kind}


class ToricBackend(VarietyBackend):
    kind = "toric"

    def __init__(self, fan: toric.Fan):
        self.fan = toric.check_fan(fan)

    @property
    def dim(self) -> int:
        return self.fan.rank

    def class_group(self):
        return toric.class_group(self.fan)

    def canonical_divisor(self):
        return toric.canonical_divisor(self.fan)

    def zero_divisor(self):
        return toric.ToricDivisor.zero(self.fan.nrays)

    def ambient_vector(self, D):
        return D.integer_vector()

    def generators(self):
        return [toric.ToricDivisor.prime(self.fan.nrays, i) for i in range(self.fan.nrays)]

    def divisor(self, coefficients) -> toric.ToricDivisor:
        D = toric.ToricDivisor(coefficients)
        if len(D) != self.fan.nrays:
            raise ValueError(f"divisor needs {self.fan.nrays} coefficients, got {len(D)}")
        return D

    def section_dimension(self, D):
        return toric.section_dimension(self.fan, D)

    def ample_cartier(self, D):
        return toric.is_ample(self.fan, D)

    def denominator(self, D):
        return lcm(*(c.denominator for c in D.coefficients))

    def describe(self):
        return {"kind": self.kind, "name": self.fan.name, **self.fan.to_dict()}


class BlowupBackend(VarietyBackend):
    kind = "blowup"

    def __init__(self, config: blowup.PointConfig):
        self.config = config

    @property
    def dim(self) -> int:
        return self.config.n

    def class_group(self):
        return blowup.class_group_blowup(self.config)

    def canonical_divisor(self):
        return blowup.canonical_divisor_blowup(self.config)

    def zero_divisor(self):
        return blowup.BlowupDivisor.zero(self.config.r)

    def ambient_vector(self, D):
        return D.ambient_vector()

    def generators(self):
        r = self.config.r
        return [blowup.BlowupDivisor.exceptional(r, i) for i in range(r)] + [blowup.BlowupDivisor.hyperplane(r)]

    def divisor(self, d, c) -> blowup.BlowupDivisor:
        D = blowup.BlowupDivisor(d, c)
        if len(D.c) != self.config.r:
            raise ValueError(f"divisor needs {self.config.r} exceptional coefficients")
        return D

    def section_dimension(self, D):
        return blowup.section_dimension_blowup(self.config, D)

    def ample_cartier(self, D):
        return blowup.is_ample_blowup(self.config, D)

    def describe(self):
        return {"kind": self.kind, **self.config.to_dict()}


@dataclass(frozen=True)
class LatticeDivisor:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))

    is_integral = True

    def __add__(self, other):
        return LatticeDivisor(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LatticeDivisor(tuple(-a for a in self.coords))

    def __rmul__(self, k):
        return LatticeDivisor(tuple(k * a for a in self.coords))


class LatticeBackend(VarietyBackend):
    """Only the class group and canonical class are known.

    Divisors are given by their class coordinates in a chosen basis; section
    dimensions are unavailable, so only lattice-level questions (freeness,
    Cl(R)) can be answered.
    """

    kind = "lattice"

    def __init__(self, basis_names: Sequence[str], canonical: Sequence[int], dim: int,
                 ample_assumed: bool = True, name: str = ""):
        self.basis_names = tuple(basis_names)
        self.canonical = LatticeDivisor(canonical)
        self._dim = dim
        self.ample_assumed = ample_assumed
        self.name = name
        if len(self.canonical.coords) != len(self.basis_names):
            raise ValueError("canonical class has the wrong length")

    @property
    def dim(self) -> int:
        return self._dim

    def class_group(self):
        k = len(self.basis_names)
        return cokernel_presentation(IntMatrix.zeros(k, 1))

    def canonical_divisor(self):
        return self.canonical

    def zero_divisor(self):
        return LatticeDivisor((0,) * len(self.basis_names))

    def ambient_vector(self, D):
        return D.coords

    def generators(self):
        k = len(self.basis_names)
        return [LatticeDivisor(tuple(int(i == j) for j in range(k))) for i in range(k)]

    def divisor(self, coords) -> LatticeDivisor:
        D = LatticeDivisor(coords)
        if len(D.coords) != len(self.basis_names):
            raise ValueError("divisor has the wrong length")
        return D

    def describe(self):
        return {"kind": self.kind, "name": self.name, "basis": list(self.basis_names),
                "canonical_class": list(self.canonical.coords), "dim": self.dim}
