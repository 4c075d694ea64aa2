"""Exact arithmetic over the Gaussian rationals Q(i), and square matrices.

Entries are pairs of ``fractions.Fraction``. This field is enough for every
group the package touches (subgroups of SL2(C)^2 and SL4(C) generated by
monomial and diagonal matrices with fourth-root-of-unity entries), and for
the character values of groups of exponent dividing 4.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import List, Optional, Sequence, Tuple


def _frac_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QI:
    """A Gaussian rational re + im*i with exact components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    def __add__(self, other: "QI") -> "QI":
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QI") -> "QI":
        return QI(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QI") -> "QI":
        return QI(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def inverse(self) -> "QI":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other: "QI") -> "QI":
        return self * other.inverse()

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, QI) and self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def sqrt(self) -> Optional["QI"]:
        """A square root in Q(i) when one exists, sign-normalized."""
        a, b = self.re, self.im
        if b == 0:
            r = _frac_sqrt(a)
            if r is not None:
                return QI(r)
            r = _frac_sqrt(-a)
            if r is not None:
                return QI(0, r)
            return None
        n = _frac_sqrt(a * a + b * b)
        if n is None:
            return None
        x = _frac_sqrt((a + n) / 2)
        if x is None or x == 0:
            return None
        y = b / (2 * x)
        root = QI(x, y)
        return root if root.sort_key() > (-root).sort_key() else -root

    def __repr__(self) -> str:
        return f"QI({format_qi(self)!r})"


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)
FOURTH_ROOTS = (QI(1), QI(0, 1), QI(-1), QI(0, -1))


def parse_qi(s: str) -> QI:
    """Parse strings like '1', '-i', '3/2i', '1/2+1/2i', '2-3i'."""
    t = s.strip().replace(" ", "")
    if not t:
        raise ValueError("empty Gaussian rational literal")
    if "i" not in t:
        return QI(Fraction(t))
    body = t[: t.rindex("i")]
    tail = t[t.rindex("i") + 1 :]
    if tail:
        raise ValueError(f"bad Gaussian rational literal {s!r}")
    # split real and imaginary parts on the last +/- that is not leading
    split = -1
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            split = k
            break
    if split < 0:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:split], body[split:]
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_part)
    return QI(Fraction(re_part) if re_part else Fraction(0), im)


def format_qi(z: QI) -> str:
    if z.im == 0:
        return str(z.re)
    if z.re == 0:
        if z.im == 1:
            return "i"
        if z.im == -1:
            return "-i"
        return f"{z.im}i"
    sign = "+" if z.im > 0 else "-"
    mag = abs(z.im)
    istr = "i" if mag == 1 else f"{mag}i"
    return f"{z.re}{sign}{istr}"


class GaussianMatrix:
    """Immutable square matrix over Q(i)."""

    __slots__ = ("n", "_data")

    def __init__(self, data: Sequence[Sequence[QI]]):
        n = len(data)
        cells = []
        for row in data:
            if len(row) != n:
                raise ValueError("GaussianMatrix must be square")
            cells.append(tuple(row))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_data", tuple(cells))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "GaussianMatrix":
        return cls([[QI(1) if i == j else QI(0) for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, z: QI) -> "GaussianMatrix":
        return cls([[z if i == j else QI(0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]]) -> "GaussianMatrix":
        return cls([[parse_qi(x) for x in row] for row in rows])

    def to_strings(self) -> List[List[str]]:
        return [[format_qi(x) for x in row] for row in self._data]

    def entry(self, i: int, j: int) -> QI:
        return self._data[i][j]

    def row(self, i: int) -> Tuple[QI, ...]:
        return self._data[i]

    def __mul__(self, other: "GaussianMatrix") -> "GaussianMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        cols = [[other._data[k][j] for k in range(n)] for j in range(n)]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                s = QI(0)
                for k in range(n):
                    s = s + self._data[i][k] * cols[j][k]
                row.append(s)
            out.append(row)
        return GaussianMatrix(out)

    def scale(self, z: QI) -> "GaussianMatrix":
        return GaussianMatrix([[z * x for x in row] for row in self._data])

    def __neg__(self) -> "GaussianMatrix":
        return self.scale(QI(-1))

    def transpose(self) -> "GaussianMatrix":
        n = self.n
        return GaussianMatrix([[self._data[j][i] for j in range(n)] for i in range(n)])

    def trace(self) -> QI:
        t = QI(0)
        for i in range(self.n):
            t = t + self._data[i][i]
        return t

    def det(self) -> QI:
        n = self.n
        a = [list(row) for row in self._data]
        out = QI(1)
        for k in range(n):
            piv = -1
            for i in range(k, n):
                if not a[i][k].is_zero():
                    piv = i
                    break
            if piv < 0:
                return QI(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                out = -out
            out = out * a[k][k]
            inv = a[k][k].inverse()
            for i in range(k + 1, n):
                f = a[i][k] * inv
                if not f.is_zero():
                    for j in range(k, n):
                        a[i][j] = a[i][j] - f * a[k][j]
        return out

    def inverse(self) -> "GaussianMatrix":
        n = self.n
        a = [list(row) + [QI(1) if i == j else QI(0) for j in range(n)] for i, row in enumerate(self._data)]
        for k in range(n):
            piv = -1
            for i in range(k, n):
                if not a[i][k].is_zero():
                    piv = i
                    break
            if piv < 0:
                raise ZeroDivisionError("singular matrix")
            a[k], a[piv] = a[piv], a[k]
            inv = a[k][k].inverse()
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and not a[i][k].is_zero():
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return GaussianMatrix([row[n:] for row in a])

    def is_identity(self) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                x = self._data[i][j]
                if i == j:
                    if x.re != 1 or x.im != 0:
                        return False
                elif not x.is_zero():
                    return False
        return True

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaussianMatrix)
            and self.n == other.n
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.n, self._data))

    def sort_key(self):
        return tuple(x.sort_key() for row in self._data for x in row)

    def __repr__(self) -> str:
        return f"GaussianMatrix({self.to_strings()!r})"


def qi_nullspace(rows: List[List[QI]], width: int) -> List[List[QI]]:
    """Basis of the right nullspace of a Q(i) matrix given as rows.

    Each basis vector is normalized so its first nonzero entry is 1, and
    the list is ordered by the position of that entry.
    """
    a = [list(r) for r in rows]
    m = len(a)
    pivots: List[int] = []
    r = 0
    for c in range(width):
        piv = -1
        for i in range(r, m):
            if not a[i][c].is_zero():
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [QI(0)] * width
        vec[fc] = QI(1)
        for prow, pc in enumerate(pivots):
            vec[pc] = -a[prow][fc]
        basis.append(vec)
    return basis
