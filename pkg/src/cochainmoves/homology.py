"""Integer boundary matrices, Smith normal form, and homology groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .chains import CellComplex, CoefficientGroup, Z
from .surfaces import LabeledSurface


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), ncols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V == diag(diagonal, 0, ...) with U, V unimodular."""

    diagonal: tuple[int, ...]
    U: IntegerMatrix
    V: IntegerMatrix
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    def D(self) -> IntegerMatrix:
        r, c = self.shape
        return IntegerMatrix(r, c, tuple(
            tuple(self.diagonal[i] if i == j and i < len(self.diagonal) else 0 for j in range(c))
            for i in range(r)))

    def verify(self, A: IntegerMatrix) -> bool:
        if (self.U @ A @ self.V) != self.D():
            return False
        if any(d <= 0 for d in self.diagonal):
            return False
        if any(b % a for a, b in zip(self.diagonal, self.diagonal[1:])):
            return False
        return abs(determinant(self.U)) == 1 and abs(determinant(self.V)) == 1


def smith_normal_form(A: IntegerMatrix) -> SmithForm:
    m, n = A.rows, A.cols
    a = A.tolist()
    U = IntegerMatrix.identity(m).tolist()
    V = IntegerMatrix.identity(n).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        diag.append(a[t][t])
        t += 1
    return SmithForm(tuple(diag), IntegerMatrix.from_rows(U, m), IntegerMatrix.from_rows(V, n), (m, n))


@dataclass(frozen=True)
class GroupDescriptor:
    """A finitely generated abelian group (or Z/m-module): free part plus cyclic torsion.

    Over Z/m the free part counts Z/m summands and ``torsion`` lists the
    remaining cyclic factors Z/t with 1 < t < m.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    modulus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(sorted(t for t in self.torsion if t > 1)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        base = "Z" if self.modulus is None else f"Z/{self.modulus}"
        parts = []
        if self.free_rank == 1:
            parts.append(base)
        elif self.free_rank > 1:
            parts.append(f"{base}^{self.free_rank}" if self.modulus is None else f"({base})^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return "+".join(parts) or "0"


def _complex(c) -> CellComplex:
    return c.cell_complex() if isinstance(c, LabeledSurface) else c


def boundary_matrix(complex_or_surface, n: int) -> IntegerMatrix:
    """Matrix of the degree-n boundary; column j is the boundary of basis(n)[j]."""
    cx = _complex(complex_or_surface)
    rows, cols = cx.basis(n - 1), cx.basis(n)
    index = {r: i for i, r in enumerate(rows)}
    data = [[0] * len(cols) for _ in rows]
    for j, cell in enumerate(cols):
        for face, coeff in cx.boundaries[n][cell].terms.items():
            data[index[face]][j] += coeff
    return IntegerMatrix.from_rows(data, len(cols))


def kernel_image_ranks(complex_or_surface, n: int) -> tuple[int, int]:
    """(rank ker d_n, rank im d_{n+1}) over Z."""
    cx = _complex(complex_or_surface)
    rank_n = smith_normal_form(boundary_matrix(cx, n)).rank
    rank_up = smith_normal_form(boundary_matrix(cx, n + 1)).rank
    return len(cx.basis(n)) - rank_n, rank_up


def _integral_homology(cx: CellComplex, i: int) -> tuple[int, tuple[int, ...]]:
    if i < 0:
        return 0, ()
    ker, _ = kernel_image_ranks(cx, i)
    snf = smith_normal_form(boundary_matrix(cx, i + 1))
    return ker - snf.rank, tuple(d for d in snf.diagonal if d > 1)


def homology_group(complex_or_surface, i: int, coeff: CoefficientGroup = Z) -> GroupDescriptor:
    cx = _complex(complex_or_surface)
    free, torsion = _integral_homology(cx, i)
    m = coeff.modulus
    if m is None:
        return GroupDescriptor(free, torsion)
    # universal coefficients: H_i(X) (x) Z/m  +  Tor(H_{i-1}(X), Z/m)
    _, torsion_below = _integral_homology(cx, i - 1)
    factors = [m] * free + [gcd(t, m) for t in torsion] + [gcd(t, m) for t in torsion_below]
    return GroupDescriptor(sum(1 for f in factors if f == m), tuple(f for f in factors if 1 < f < m), m)


def homology(complex_or_surface, coeff: CoefficientGroup = Z) -> list[GroupDescriptor]:
    cx = _complex(complex_or_surface)
    return [homology_group(cx, i, coeff) for i in range(max(cx.dimension, 0) + 1)]


def format_homology(groups: Sequence[GroupDescriptor]) -> str:
    return " ".join(f"H{i}={g}" for i, g in enumerate(groups))
