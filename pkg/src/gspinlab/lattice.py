"""Exact integer-matrix algebra and finitely generated abelian groups.

Everything runs on Python's arbitrary-precision integers; there is no
floating point anywhere. The Smith normal form is the single engine behind
the lattice computations used by the rest of the package: cokernels give
centers and component groups, saturated kernels give sublattices such as
orthogonal complements of a similitude character.

Pivoting is deterministic (smallest absolute value, ties broken by lowest
row then lowest column index) so that golden tests are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[int, ...]


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence[int]], cols: Optional[int] = None):
        nrows = len(data)
        if nrows:
            width = len(data[0]) if cols is None else cols
        elif cols is None:
            raise ValueError("a matrix with no rows needs an explicit column count")
        else:
            width = cols
        cells = []
        for row in data:
            if len(row) != width:
                raise ValueError("ragged rows in matrix data")
            cells.append(tuple(int(x) for x in row))
        object.__setattr__(self, "rows", nrows)
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_data", tuple(cells))

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        if columns:
            nrows = len(columns[0])
        elif rows is None:
            raise ValueError("a matrix with no columns needs an explicit row count")
        else:
            nrows = rows
        return cls([[col[i] for col in columns] for i in range(nrows)], cols=len(columns))

    @classmethod
    def column(cls, vec: Sequence[int]) -> "IntMatrix":
        return cls([[x] for x in vec], cols=1)

    def entry(self, i: int, j: int) -> int:
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def iter_rows(self) -> Iterable[Vector]:
        return iter(self._data)

    def to_rows(self) -> List[List[int]]:
        return [list(r) for r in self._data]

    def columns(self) -> List[Vector]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix([self.col(j) for j in range(self.cols)], cols=self.rows)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        ocols = [other.col(j) for j in range(other.cols)]
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self._data],
            cols=other.cols,
        )

    def apply(self, vec: Sequence[int]) -> Vector:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self._data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in row] for row in self._data], cols=self.cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})"

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)

    def max_abs(self) -> int:
        return max((abs(x) for row in self._data for x in row), default=0)


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U*m*V = D, U and V unimodular, D diagonal.

    The diagonal entries are nonnegative and satisfy d1 | d2 | ... .
    """
    nr, nc = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(nr).to_rows()
    v = IntMatrix.identity(nc).to_rows()

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for r in a:
                r[i], r[j] = r[j], r[i]
            for r in v:
                r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, q):
        if q:
            arow, srow = a[dst], a[src]
            for k in range(nc):
                arow[k] += q * srow[k]
            urow, usrc = u[dst], u[src]
            for k in range(nr):
                urow[k] += q * usrc[k]

    def addmul_col(dst, src, q):
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in v:
                r[dst] += q * r[src]

    t = 0
    lim = min(nr, nc)
    while t < lim:
        # deterministic pivot: smallest |entry|, ties by lowest row then column
        bi = bj = -1
        bv = 0
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x != 0 and (bi < 0 or abs(x) < bv):
                    bi, bj, bv = i, j, abs(x)
        if bi < 0:
            break
        swap_rows(t, bi)
        swap_cols(t, bj)
        while True:
            dirty = False
            for i in range(t + 1, nr):
                x = a[i][t]
                if x:
                    addmul_row(i, t, -(x // a[t][t]))
                    if a[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                x = a[t][j]
                if x:
                    addmul_col(j, t, -(x // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if (
                not dirty
                and all(a[i][t] == 0 for i in range(t + 1, nr))
                and all(a[t][j] == 0 for j in range(t + 1, nc))
            ):
                break
        # the pivot must divide the remaining block
        p = a[t][t]
        offender = -1
        for i in range(t + 1, nr):
            if any(a[i][j] % p for j in range(t + 1, nc)):
                offender = i
                break
        if offender >= 0:
            addmul_row(t, offender, 1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntMatrix(u, cols=nr), IntMatrix(a, cols=nc), IntMatrix(v, cols=nc)


def diagonal_of(d: IntMatrix) -> List[int]:
    return [d.entry(i, i) for i in range(min(d.rows, d.cols))]


def matrix_rank(m: IntMatrix) -> int:
    _, d, _ = smith_normal_form(m)
    return sum(1 for x in diagonal_of(d) if x != 0)


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Isomorphism class of a finitely generated abelian group.

    ``torsion`` lists invariant factors d1 | d2 | ..., each >= 2; factors
    equal to 1 are suppressed so that equality is a canonical-form test.
    """

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        tor = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tor)
        for d in tor:
            if d < 2:
                raise ValueError("torsion invariant factors must be >= 2")
        for a, b in zip(tor, tor[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> Optional[int]:
        """Group order, or None for infinite groups."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def torsion_order(self) -> int:
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def two_torsion(self) -> "AbelianGroupStructure":
        """The subgroup of elements x with 2x = 0 (of the torsion part)."""
        return AbelianGroupStructure(0, tuple(2 for d in self.torsion if d % 2 == 0))

    def is_elementary_two_group(self) -> bool:
        return self.free_rank == 0 and all(d == 2 for d in self.torsion)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "1"


def cokernel_structure(m: IntMatrix) -> AbelianGroupStructure:
    """Isomorphism class of Z^rows / (column span of m)."""
    _, d, _ = smith_normal_form(m)
    diag = [x for x in diagonal_of(d) if x != 0]
    return AbelianGroupStructure(m.rows - len(diag), tuple(x for x in diag if x > 1))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a saturated basis of the integral kernel {v : m v = 0}."""
    _, d, v = smith_normal_form(m)
    r = sum(1 for x in diagonal_of(d) if x != 0)
    cols = [v.col(j) for j in range(r, m.cols)]
    return IntMatrix.from_columns(cols, rows=m.cols)


def solve_integral(m: IntMatrix, b: Sequence[int]) -> Optional[Vector]:
    """One integral solution x of m x = b, or None when none exists."""
    if len(b) != m.rows:
        raise ValueError("dimension mismatch in solve")
    u, d, v = smith_normal_form(m)
    c = u.apply(b)
    diag = diagonal_of(d)
    r = sum(1 for x in diag if x != 0)
    y = [0] * m.cols
    for j in range(min(m.rows, m.cols)):
        if j < r:
            if c[j] % diag[j]:
                return None
            y[j] = c[j] // diag[j]
        elif c[j]:
            return None
    for j in range(min(m.rows, m.cols), m.rows):
        if c[j]:
            return None
    return v.apply(y)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    if m.det() not in (1, -1):
        raise ValueError("matrix is not unimodular")
    cols = []
    n = m.rows
    for i in range(n):
        e = [1 if k == i else 0 for k in range(n)]
        x = solve_integral(m, e)
        assert x is not None
        cols.append(x)
    return IntMatrix.from_columns(cols, rows=n)


def rational_left_inverse(k: IntMatrix) -> List[List[Fraction]]:
    """A rational left inverse of a full-column-rank integer matrix."""
    u, d, v = smith_normal_form(k)
    diag = diagonal_of(d)
    if k.cols > k.rows or any(x == 0 for x in diag):
        raise ValueError("matrix does not have full column rank")
    # k = u^-1 d v^-1, so  v * d^+ * u  is a left inverse
    urows = u.to_rows()
    vrows = v.to_rows()
    m, n = k.cols, k.rows
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            s = Fraction(0)
            for t in range(m):
                s += Fraction(vrows[i][t] * urows[t][j], diag[t])
            row.append(s)
        out.append(row)
    return out
