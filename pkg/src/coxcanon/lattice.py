"""Exact integer-matrix algebra.

Hermite and Smith normal forms, finitely generated abelian groups given as
cokernels, sublattice membership, and exact rational rank/solve.  Everything
runs on Python ints and ``fractions.Fraction``; there is no floating point
anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


class IntMatrix:
    """Immutable integer matrix with row-major entries."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix")
        else:
            width = ncols or 0
        if ncols is not None and data and width != ncols:
            raise ValueError("column count mismatch")
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(([0] * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return cls(([col[i] for col in columns] for i in range(nrows)), ncols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(r[j] for r in self._rows) for j in range(self.ncols))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns(), ncols=self.nrows)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix(
            ([sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows),
            ncols=other.ncols,
        )

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self._rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det([list(r) for r in self._rows])


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant; ``m`` is consumed."""
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    m = _integer_rows(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        if rank == nrows:
            break
        piv = next((i for i in range(rank, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            a = m[i][col]
            row_i, row_r = m[i], m[rank]
            for j in range(col + 1, ncols):
                row_i[j] = (row_i[j] * p - a * row_r[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
    return rank


def solve_rational(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``matrix @ x = rhs`` exactly; None when inconsistent.

    Free variables (if any) are set to zero.
    """
    n_rows = len(matrix)
    n_cols = len(matrix[0]) if n_rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n_rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][-1] != 0 for i in range(r, n_rows)):
        return None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return tuple(x)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(A) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  ``H`` is in
    row echelon form, pivots are positive, entries above a pivot lie in
    ``[0, pivot)``, and zero rows sit at the bottom.
    """
    A = _as_matrix(A)
    m, n = A.shape
    H = [list(r) for r in A.rows()]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    row = 0
    for col in range(n):
        if row == m:
            break
        for i in range(row + 1, m):
            if H[i][col] == 0:
                continue
            a, b = H[row][col], H[i][col]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            H[row], H[i] = (
                [x * u + y * v for u, v in zip(H[row], H[i])],
                [-q * u + p * v for u, v in zip(H[row], H[i])],
            )
            U[row], U[i] = (
                [x * u + y * v for u, v in zip(U[row], U[i])],
                [-q * u + p * v for u, v in zip(U[row], U[i])],
            )
        if H[row][col] == 0:
            continue
        if H[row][col] < 0:
            H[row] = [-v for v in H[row]]
            U[row] = [-v for v in U[row]]
        piv = H[row][col]
        for i in range(row):
            f = H[i][col] // piv
            if f:
                H[i] = [u - f * v for u, v in zip(H[i], H[row])]
                U[i] = [u - f * v for u, v in zip(U[i], U[row])]
        row += 1
    return IntMatrix(H, ncols=n), IntMatrix(U, ncols=m)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with U, V unimodular and S diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.S.shape)
        return tuple(self.S[i, i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def snf(A) -> SmithDecomposition:
    """Smith normal form by exact elimination.

    The pivot is always the nonzero entry of smallest absolute value in the
    remaining block, ties broken by lowest (row, column).
    """
    A = _as_matrix(A)
    m, n = A.shape
    S = [list(r) for r in A.rows()]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in S:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = S[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = S[i][t] // p
                if q:
                    add_row(i, t, -q)
                dirty |= S[i][t] != 0
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(j, t, -q)
                dirty |= S[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(S[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-v for v in S[t]]
            U[t] = [-v for v in U[t]]
        if all(S[i][j] == 0 for i in range(t, m) for j in range(t, n)):
            break
    return SmithDecomposition(IntMatrix(U, ncols=m), IntMatrix(S, ncols=n), IntMatrix(V, ncols=n))


@dataclass(frozen=True)
class FGAbelianGroup:
    """Finitely generated abelian group ``Z^free_rank + sum Z/t_i``.

    ``projection`` maps ambient lattice coordinates to group coordinates,
    free coordinates first, then one coordinate per torsion factor.
    """

    free_rank: int
    torsion: tuple[int, ...]
    projection: IntMatrix

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def ambient_rank(self) -> int:
        return self.projection.ncols

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        f = self.free_rank
        return tuple(coords[:f]) + tuple(c % t for c, t in zip(coords[f:], self.torsion))

    def element(self, ambient: Sequence[int]) -> "GroupElement":
        return GroupElement(self.reduce(self.projection.apply(ambient)))

    def zero(self) -> "GroupElement":
        return GroupElement((0,) * self.ngens)

    def relations(self) -> list[tuple[int, ...]]:
        """Vectors in group coordinates that generate the torsion relations."""
        out = []
        for k, t in enumerate(self.torsion):
            v = [0] * self.ngens
            v[self.free_rank + k] = t
            out.append(tuple(v))
        return out

    def membership(self, generators: Sequence[Sequence[int]], target: Sequence[int]):
        """Integer coefficients writing ``target`` in the subgroup spanned by
        ``generators`` (all in group coordinates), or None."""
        rels = self.relations()
        sol = sublattice_membership(list(generators) + rels, target)
        if sol is None:
            return None
        return sol[: len(generators)]

    def quotient(self, generators: Sequence[Sequence[int]]) -> "FGAbelianGroup":
        """This group modulo the subgroup spanned by ``generators``."""
        cols = [tuple(g) for g in generators] + self.relations()
        if not cols:
            cols = [(0,) * self.ngens]
        inner = cokernel_presentation(IntMatrix.from_columns(cols, self.ngens))
        return FGAbelianGroup(inner.free_rank, inner.torsion, inner.projection @ self.projection)

    def describe(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "projection": self.projection.tolist(),
            "description": self.describe(),
        }


@dataclass(frozen=True)
class GroupElement:
    coordinates: tuple[int, ...]

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self):
        return len(self.coordinates)

    def is_zero(self) -> bool:
        return not any(self.coordinates)


def cokernel_presentation(A) -> FGAbelianGroup:
    """``Z^rows / column span of A`` in invariant-factor form.

    Invariant factors equal to 1 are dropped.  The free part of the
    projection is put in Hermite normal form so that the presentation is
    canonical.
    """
    A = _as_matrix(A)
    m = A.nrows
    dec = snf(A)
    diag = dec.diagonal
    rank = dec.rank
    urows = dec.U.rows()
    torsion_rows, torsion = [], []
    for i in range(rank):
        if diag[i] > 1:
            torsion.append(diag[i])
            torsion_rows.append(tuple(x % diag[i] for x in urows[i]))
    free_rows = list(urows[rank:m])
    if free_rows:
        H, _ = hnf(free_rows)
        free_rows = [r for r in H.rows() if any(r)]
    proj = IntMatrix(free_rows + torsion_rows, ncols=m)
    return FGAbelianGroup(len(free_rows), tuple(torsion), proj)


def sublattice_membership(generators: Sequence[Sequence[int]], target: Sequence[int]):
    """Integer coefficients ``c`` with ``sum c_j * generators[j] == target``.

    Returns a tuple, or None when ``target`` is not in the integer span.
    """
    target = tuple(int(x) for x in target)
    k = len(generators)
    if any(len(g) != len(target) for g in generators):
        raise ValueError("dimension mismatch between generators and target")
    if not any(target):
        return (0,) * k
    if k == 0:
        return None
    H, U = hnf(generators)
    # solve x @ H == target by walking the echelon pivots
    x = [0] * k
    residual = list(target)
    for i, row in enumerate(H.rows()):
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            break
        q, r = divmod(residual[piv], row[piv])
        if r:
            return None
        x[i] = q
        residual = [a - q * b for a, b in zip(residual, row)]
    if any(residual):
        return None
    coeffs = tuple(sum(x[i] * U[i, j] for i in range(k)) for j in range(k))
    check = tuple(sum(c * g[t] for c, g in zip(coeffs, generators)) for t in range(len(target)))
    if check != target:
        raise ArithmeticError("membership re-substitution failed")
    return coeffs


def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return exact_rank(vectors)


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
