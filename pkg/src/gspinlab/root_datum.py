"""Based root data for the split groups of interest and their relatives.

A based root datum is stored as (rank, simple roots, simple coroots) with
the standard pairing between Z^rank and its dual: `<x, y> = sum x_i y_i`.
Constructors cover general linear, special linear, projective linear, and
general spin groups, plus the three lattice-level operations everything
else is built from: products, kernels of central characters (similitude
kernels), and quotients by finite central subgroups or central tori.

The full root set is generated on demand by reflection closure with a hard
cap; a datum whose closure does not terminate below the cap is rejected,
which also rules out non-finite-type Cartan data.
"""
from __future__ import annotations

from math import gcd
from typing import Dict, List, Sequence, Tuple

from .lattice import (
    AbelianGroupStructure,
    IntMatrix,
    cokernel_structure,
    inverse_unimodular,
    kernel_basis,
    matrix_rank,
    smith_normal_form,
    solve_integral,
)

Vector = Tuple[int, ...]

ROOT_CLOSURE_CAP = 10000


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


class BasedRootDatum:
    """A based root datum (X, R, Delta, X^, R^, Delta^) in coordinates.

    ``simple_roots`` live in X = Z^rank, ``simple_coroots`` in the dual
    copy of Z^rank; validity (pairing 2 on diagonal, generalized Cartan
    conditions, finite reflection closure) is checked at construction.
    """

    __slots__ = ("rank", "simple_roots", "simple_coroots", "label")

    def __init__(
        self,
        rank: int,
        simple_roots: Sequence[Sequence[int]],
        simple_coroots: Sequence[Sequence[int]],
        label: str = "",
    ):
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(
            self, "simple_roots", tuple(tuple(int(x) for x in a) for a in simple_roots)
        )
        object.__setattr__(
            self, "simple_coroots", tuple(tuple(int(x) for x in a) for a in simple_coroots)
        )
        object.__setattr__(self, "label", label)
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("BasedRootDatum is immutable")

    def _validate(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        if len(self.simple_roots) != len(self.simple_coroots):
            raise ValueError("number of simple roots and coroots differ")
        for a in self.simple_roots + self.simple_coroots:
            if len(a) != self.rank:
                raise ValueError("root/coroot length does not match rank")
        n = len(self.simple_roots)
        if len(set(self.simple_roots)) != n or len(set(self.simple_coroots)) != n:
            raise ValueError("repeated simple roots or coroots")
        c = self.cartan_matrix()
        for i in range(n):
            if c[i][i] != 2:
                raise ValueError(f"<alpha_{i}, alpha_{i}^> = {c[i][i]} != 2")
            for j in range(n):
                if i != j:
                    if c[i][j] > 0:
                        raise ValueError("positive off-diagonal Cartan entry")
                    if (c[i][j] == 0) != (c[j][i] == 0):
                        raise ValueError("Cartan zero pattern is not symmetric")
        if n and matrix_rank(IntMatrix.from_columns(self.simple_roots, rows=self.rank)) != n:
            raise ValueError("simple roots are linearly dependent")
        if n and matrix_rank(IntMatrix.from_columns(self.simple_coroots, rows=self.rank)) != n:
            raise ValueError("simple coroots are linearly dependent")
        self.roots()  # raises when the reflection closure is not finite

    def cartan_matrix(self) -> List[List[int]]:
        """Entries <alpha_i, alpha_j^>."""
        return [
            [_dot(a, b) for b in self.simple_coroots]
            for a in self.simple_roots
        ]

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        return _dot(x, y)

    def roots(self, cap: int = ROOT_CLOSURE_CAP) -> Tuple[Tuple[Vector, Vector], ...]:
        """All (root, coroot) pairs, by reflection closure of the simple ones."""
        seen: Dict[Vector, Vector] = {}
        frontier = list(zip(self.simple_roots, self.simple_coroots))
        for b, bv in frontier:
            seen[b] = bv
        while frontier:
            new = []
            for b, bv in frontier:
                for a, av in zip(self.simple_roots, self.simple_coroots):
                    k = _dot(b, av)
                    rb = tuple(x - k * y for x, y in zip(b, a))
                    kv = _dot(a, bv)
                    rbv = tuple(x - kv * y for x, y in zip(bv, av))
                    if rb not in seen:
                        seen[rb] = rbv
                        new.append((rb, rbv))
                    elif seen[rb] != rbv:
                        raise ValueError("inconsistent root/coroot reflection closure")
            frontier = new
            if len(seen) > cap:
                raise ValueError(f"root closure exceeded cap {cap}")
        return tuple(sorted(seen.items()))

    def dual(self) -> "BasedRootDatum":
        return BasedRootDatum(
            self.rank, self.simple_coroots, self.simple_roots, label=f"dual({self.label})"
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BasedRootDatum)
            and self.rank == other.rank
            and self.simple_roots == other.simple_roots
            and self.simple_coroots == other.simple_coroots
        )

    def __hash__(self) -> int:
        return hash((self.rank, self.simple_roots, self.simple_coroots))

    def __repr__(self) -> str:
        return f"BasedRootDatum(rank={self.rank}, label={self.label!r}, |Delta|={len(self.simple_roots)})"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "rank": self.rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BasedRootDatum":
        return cls(d["rank"], d["simple_roots"], d["simple_coroots"], d.get("label", ""))


class DiagonalizableData:
    """A diagonalizable group presented by a relations matrix.

    The character group is the cokernel of the matrix; two presentations are
    considered the same exactly when their invariant-factor normal forms
    agree. Centers, kernels, and cokernels of the lattice maps all land
    here.
    """

    __slots__ = ("character_presentation",)

    def __init__(self, character_presentation: IntMatrix):
        object.__setattr__(self, "character_presentation", character_presentation)

    def __setattr__(self, name, value):
        raise AttributeError("DiagonalizableData is immutable")

    def structure(self) -> AbelianGroupStructure:
        return cokernel_structure(self.character_presentation)

    def __eq__(self, other) -> bool:
        return isinstance(other, DiagonalizableData) and self.structure() == other.structure()

    def __hash__(self) -> int:
        return hash(self.structure())

    def __repr__(self) -> str:
        return f"DiagonalizableData({self.structure()})"


def center_data(d: "BasedRootDatum") -> DiagonalizableData:
    """The center of d as a diagonalizable group (X modulo the root span)."""
    return DiagonalizableData(IntMatrix.from_columns(d.simple_roots, rows=d.rank))


def _type_a_cartan(n: int) -> List[List[int]]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
        if i + 1 < n:
            c[i][i + 1] = -1
            c[i + 1][i] = -1
    return c


def gl_datum(n: int) -> BasedRootDatum:
    """GL_n on the character basis e_1..e_n; roots e_i - e_{i+1}."""
    if n < 1:
        raise ValueError("gl_datum requires n >= 1")
    roots = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(v)
    return BasedRootDatum(n, roots, [list(r) for r in roots], label=f"GL{n}")


def sl_datum(n: int) -> BasedRootDatum:
    """SL_n on the fundamental-weight basis: roots are Cartan matrix rows."""
    if n < 1:
        raise ValueError("sl_datum requires n >= 1")
    c = _type_a_cartan(n - 1)
    coroots = [[1 if j == i else 0 for j in range(n - 1)] for i in range(n - 1)]
    return BasedRootDatum(n - 1, c, coroots, label=f"SL{n}")


def pgl_datum(n: int) -> BasedRootDatum:
    """PGL_n, the dual datum of SL_n."""
    if n < 1:
        raise ValueError("pgl_datum requires n >= 1")
    d = sl_datum(n).dual()
    return BasedRootDatum(d.rank, d.simple_roots, d.simple_coroots, label=f"PGL{n}")


def gspin_datum(n: int) -> BasedRootDatum:
    """General spin group of rank n (type D_n flavour), lattice rank n+1.

    Basis e_0, e_1, ..., e_n of X; simple roots e_1-e_2, ..., e_{n-1}-e_n,
    e_{n-1}+e_n; the last simple coroot is e_{n-1}* + e_n* - e_0*.
    """
    if n < 2:
        raise ValueError("gspin_datum requires n >= 2")
    rank = n + 1
    roots = []
    coroots = []
    for i in range(1, n):
        v = [0] * rank
        v[i], v[i + 1] = 1, -1
        roots.append(v)
        coroots.append(list(v))
    last = [0] * rank
    last[n - 1], last[n] = 1, 1
    roots.append(last)
    lastv = [0] * rank
    lastv[0], lastv[n - 1], lastv[n] = -1, 1, 1
    coroots.append(lastv)
    return BasedRootDatum(rank, roots, coroots, label=f"GSpin{2 * n}")


def product_datum(d1: BasedRootDatum, d2: BasedRootDatum) -> BasedRootDatum:
    """Direct sum of lattices, concatenation of simple data."""
    r1, r2 = d1.rank, d2.rank
    roots = [tuple(a) + (0,) * r2 for a in d1.simple_roots]
    roots += [(0,) * r1 + tuple(a) for a in d2.simple_roots]
    coroots = [tuple(a) + (0,) * r2 for a in d1.simple_coroots]
    coroots += [(0,) * r1 + tuple(a) for a in d2.simple_coroots]
    label = f"{d1.label} x {d2.label}" if d1.label and d2.label else ""
    return BasedRootDatum(r1 + r2, roots, coroots, label=label)


def similitude_kernel_datum(
    d: BasedRootDatum, chi: Sequence[int], label: str = ""
) -> BasedRootDatum:
    """Datum of the kernel of a central character chi of d.

    Characters become X / Z*chi, cocharacters the orthogonal complement of
    chi; both are re-expressed in a Smith basis so the standard pairing is
    preserved. chi must be primitive and pair to zero with every coroot.
    """
    chi = tuple(int(x) for x in chi)
    if len(chi) != d.rank:
        raise ValueError("character length does not match rank")
    g = 0
    for x in chi:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("similitude character must be nonzero")
    if g != 1:
        raise ValueError("similitude character must be a lattice direct-summand generator")
    for av in d.simple_coroots:
        if _dot(chi, av):
            raise ValueError("similitude character must be central (pair to 0 with coroots)")
    u, dd, _ = smith_normal_form(IntMatrix.column(chi))
    assert dd.entry(0, 0) == 1
    uinv_t = inverse_unimodular(u).transpose()
    new_roots = [u.apply(a)[1:] for a in d.simple_roots]
    new_coroots = []
    for av in d.simple_coroots:
        w = uinv_t.apply(av)
        assert w[0] == 0
        new_coroots.append(w[1:])
    return BasedRootDatum(
        d.rank - 1, new_roots, new_coroots, label=label or f"ker-chi({d.label})"
    )


def central_quotient_datum(
    d: BasedRootDatum,
    subgroup: Sequence[Tuple[Sequence[int], int]],
    label: str = "",
) -> BasedRootDatum:
    """Quotient of d by the finite central subgroup generated by y_i(zeta_{n_i}).

    Each generator is a pair (cocharacter y, order n); centrality means
    <alpha, y> = 0 mod n for every root alpha. Characters shrink to the
    sublattice pairing integrally with the extended cocharacter lattice
    X^ + sum Z*(y_i/n_i); the result is re-coordinatized so the standard
    pairing survives.
    """
    gens = [(tuple(int(x) for x in y), int(n)) for y, n in subgroup]
    r = d.rank
    for y, n in gens:
        if len(y) != r:
            raise ValueError("cocharacter length does not match rank")
        if n < 1:
            raise ValueError("generator order must be >= 1")
        for a in d.simple_roots:
            if _dot(a, y) % n:
                raise ValueError("subgroup is not central (a root is nontrivial on it)")
    gens = [(y, n) for y, n in gens if n > 1]
    if not gens:
        return BasedRootDatum(r, d.simple_roots, d.simple_coroots, label=label or d.label)
    k = len(gens)
    # x in X' iff <x, y_i> = 0 mod n_i for all i; encode as a kernel problem
    rows = []
    for idx, (y, n) in enumerate(gens):
        row = list(y) + [0] * k
        row[r + idx] = -n
        rows.append(row)
    kern = kernel_basis(IntMatrix(rows, cols=r + k))
    if kern.cols != r:
        raise ValueError("degenerate central subgroup data")
    basis_cols = [kern.col(j)[:r] for j in range(kern.cols)]
    c = IntMatrix.from_columns(basis_cols, rows=r)
    det_c = abs(c.det())
    if det_c == 0:
        raise ValueError("character sublattice is degenerate")
    ct = c.transpose()
    new_roots = []
    for a in d.simple_roots:
        sol = solve_integral(c, a)
        if sol is None:
            raise ValueError("root does not survive the central quotient")
        new_roots.append(sol)
    new_coroots = [ct.apply(av) for av in d.simple_coroots]
    return BasedRootDatum(r, new_roots, new_coroots, label=label or f"({d.label})/Z")


def central_torus_quotient_datum(
    d: BasedRootDatum, y: Sequence[int], label: str = ""
) -> BasedRootDatum:
    """Quotient of d by the central one-parameter subgroup with cocharacter y.

    Dual to taking the kernel of a similitude character: characters become
    the orthogonal complement of y, cocharacters X^ / Z*y.
    """
    out = similitude_kernel_datum(d.dual(), y).dual()
    return BasedRootDatum(
        out.rank, out.simple_roots, out.simple_coroots, label=label or f"({d.label})/GL1"
    )


def center_structure(d: BasedRootDatum) -> AbelianGroupStructure:
    """X / ZR as free rank plus invariant factors; pi0 is the torsion part."""
    m = IntMatrix.from_columns(d.simple_roots, rows=d.rank)
    return cokernel_structure(m)


def dual_sc_center(d: BasedRootDatum) -> AbelianGroupStructure:
    """Center of the simply connected cover of the dual derived group.

    Computed as the cokernel of the Cartan matrix of the dual root system
    (weight lattice modulo root lattice).
    """
    if not d.simple_roots:
        raise ValueError("no semisimple part")
    c = [[_dot(b, av) for b in d.simple_coroots] for av in d.simple_roots]
    # transpose of the Cartan matrix; cokernel class is transpose-invariant
    out = cokernel_structure(IntMatrix(c))
    assert out.free_rank == 0
    return out


def is_central_cocharacter_of_order_two(d: BasedRootDatum, y: Sequence[int]) -> bool:
    """Does y(-1) define a central element of exact order 2?"""
    y = tuple(int(x) for x in y)
    evenly = all(_dot(a, y) % 2 == 0 for a, _ in d.roots())
    nontrivial = any(x % 2 for x in y)
    return evenly and nontrivial


def verify_exact_sequence(maps: Sequence[IntMatrix]) -> bool:
    """Exactness of 0 -> Z^a0 -> Z^a1 -> ... -> Z^ak -> 0.

    The maps are the contravariant character-lattice maps of a short (or
    longer) exact sequence of diagonalizable/reductive groups read right to
    left. Checks injectivity at the start, surjectivity at the end, and
    kernel = image at every interior node.
    """
    if not maps:
        raise ValueError("empty sequence")
    for f, g in zip(maps, maps[1:]):
        if g.cols != f.rows:
            raise ValueError("dimension mismatch in sequence")
    first, last = maps[0], maps[-1]
    if kernel_basis(first).cols != 0:
        return False
    cok = cokernel_structure(last)
    if cok.free_rank != 0 or cok.torsion:
        return False
    for f, g in zip(maps, maps[1:]):
        prod = g * f
        if any(x for row in prod.iter_rows() for x in row):
            return False
        kb = kernel_basis(g)
        for j in range(kb.cols):
            if solve_integral(f, kb.col(j)) is None:
                return False
        if matrix_rank(f) + matrix_rank(g) != f.rows:
            return False
    return True
