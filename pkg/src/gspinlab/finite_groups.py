"""Finite matrix groups over Q(i): closure, classes, exact character tables.

Group elements are ``GaussianMatrix`` objects or tuples of them (tuples for
product ambient groups such as SL2 x SL2). Quotients by finite central
subgroups reuse the same machinery through a canonical-representative
multiplication hook.

Character tables are computed by an exact Dixon-style method: the class-sum
matrices are simultaneously diagonalized over a prime field F_p with
p = 1 mod exponent, and the character values are lifted back to Z[i] via
root-of-unity multiplicities. For groups of order at most 64 each row is
cross-validated against the regular representation (the projection built
from the row must be idempotent), giving a second, independent path.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .gaussian import FOURTH_ROOTS, QI, GaussianMatrix
from .lattice import AbelianGroupStructure


class NotFiniteError(RuntimeError):
    """Closure generation exceeded the configured cap."""


class CapExceededError(RuntimeError):
    """Input is larger than the supported size for this operation."""


class FieldInsufficientError(RuntimeError):
    """Exact values would leave Q(i); refusing to approximate."""


Element = object  # GaussianMatrix or tuple of GaussianMatrix


def elem_mul(x: Element, y: Element) -> Element:
    if isinstance(x, tuple):
        return tuple(a * b for a, b in zip(x, y))
    return x * y


def elem_inv(x: Element) -> Element:
    if isinstance(x, tuple):
        return tuple(a.inverse() for a in x)
    return x.inverse()


def elem_identity_like(x: Element) -> Element:
    if isinstance(x, tuple):
        return tuple(GaussianMatrix.identity(a.n) for a in x)
    return GaussianMatrix.identity(x.n)


def elem_key(x: Element):
    if isinstance(x, tuple):
        return tuple(a.sort_key() for a in x)
    return (x.sort_key(),)


def elem_is_invertible(x: Element) -> bool:
    if isinstance(x, tuple):
        return all(not a.det().is_zero() for a in x)
    return not x.det().is_zero()


class FiniteMatrixGroup:
    """A finite group of (tuples of) matrices, closed under the given product.

    ``mul``/``inv`` default to plain matrix operations; quotient groups pass
    canonicalizing hooks instead. The element tuple is kept in a canonical
    sorted order for reproducibility.
    """

    def __init__(
        self,
        elements: Iterable[Element],
        generators: Sequence[Element] = (),
        mul: Optional[Callable[[Element, Element], Element]] = None,
        inv: Optional[Callable[[Element], Element]] = None,
        label: str = "",
    ):
        self.mul = mul or elem_mul
        self.inv = inv or elem_inv
        self.elements: Tuple[Element, ...] = tuple(sorted(set(elements), key=elem_key))
        self.generators: Tuple[Element, ...] = tuple(generators) if generators else self.elements
        self.label = label
        self._cache: Dict[str, object] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Element) -> bool:
        if "set" not in self._cache:
            self._cache["set"] = frozenset(self.elements)
        return x in self._cache["set"]

    @property
    def identity(self) -> Element:
        if "identity" not in self._cache:
            x0 = self.elements[0]
            found = None
            for e in self.elements:
                if self.mul(e, x0) == x0 and self.mul(x0, e) == x0:
                    if self.mul(e, e) == e:
                        found = e
                        break
            if found is None:
                raise ValueError("element set has no identity; not a group")
            self._cache["identity"] = found
        return self._cache["identity"]

    def element_order(self, x: Element) -> int:
        e = self.identity
        y = x
        n = 1
        while y != e:
            y = self.mul(y, x)
            n += 1
            if n > self.order:
                raise ValueError("element order exceeds group order; not a group")
        return n

    def is_closed(self) -> bool:
        elems = frozenset(self.elements)
        for x in self.elements:
            for g in self.generators:
                if self.mul(x, g) not in elems:
                    return False
        return True

    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            ab = all(
                self.mul(x, y) == self.mul(y, x)
                for i, x in enumerate(self.elements)
                for y in self.elements[i + 1 :]
            )
            self._cache["abelian"] = ab
        return self._cache["abelian"]

    def exponent(self) -> int:
        from math import lcm

        e = 1
        for x in self.elements:
            e = lcm(e, self.element_order(x))
        return e

    def conjugacy_classes(self) -> Tuple["ConjClass", ...]:
        if "classes" not in self._cache:
            self._cache["classes"] = _conjugacy_classes(self)
        return self._cache["classes"]

    def center(self) -> "FiniteMatrixGroup":
        zs = [
            z
            for z in self.elements
            if all(self.mul(z, x) == self.mul(x, z) for x in self.elements)
        ]
        return FiniteMatrixGroup(zs, generators=zs, mul=self.mul, inv=self.inv)

    def character_table(self) -> "CharacterTable":
        if "table" not in self._cache:
            self._cache["table"] = _character_table(self)
        return self._cache["table"]


def generate_closure(
    generators: Sequence[Element], cap: int = 512, label: str = ""
) -> FiniteMatrixGroup:
    """Close a generating set under multiplication; error beyond ``cap``."""
    gens = list(generators)
    if not gens:
        raise ValueError("no generators")
    for g in gens:
        if not elem_is_invertible(g):
            raise ValueError("generators must be invertible")
    ident = elem_identity_like(gens[0])
    seen = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for x in frontier:
            for g in gens:
                y = elem_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
                    if len(seen) > cap:
                        raise NotFiniteError(f"not finite within cap {cap}")
        frontier = fresh
    return FiniteMatrixGroup(seen, generators=gens, label=label)


@dataclass(frozen=True)
class ConjClass:
    rep: Element
    members: Tuple[Element, ...]
    order: int

    @property
    def size(self) -> int:
        return len(self.members)


def _conjugacy_classes(group: FiniteMatrixGroup) -> Tuple[ConjClass, ...]:
    mul, inv = group.mul, group.inv
    gens = group.generators
    ginv = [inv(g) for g in gens]
    remaining = set(group.elements)
    classes = []
    for x in group.elements:
        if x not in remaining:
            continue
        orbit = {x}
        queue = [x]
        while queue:
            y = queue.pop()
            for g, gi in zip(gens, ginv):
                z = mul(gi, mul(y, g))
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        remaining -= orbit
        members = tuple(sorted(orbit, key=elem_key))
        classes.append(ConjClass(members[0], members, group.element_order(members[0])))
    classes.sort(key=lambda c: (c.order, c.size, elem_key(c.rep)))
    return tuple(classes)


def center_of_group(group: FiniteMatrixGroup) -> FiniteMatrixGroup:
    return group.center()


def conjugacy_classes(group: FiniteMatrixGroup) -> Tuple[ConjClass, ...]:
    return group.conjugacy_classes()


def quotient_group(
    group: FiniteMatrixGroup, canon: Callable[[Element], Element]
) -> FiniteMatrixGroup:
    """Quotient by a finite central subgroup via a canonical-rep map."""
    elems = {canon(x) for x in group.elements}
    return FiniteMatrixGroup(
        elems,
        generators=tuple({canon(g) for g in group.generators}),
        mul=lambda a, b: canon(elem_mul(a, b)),
        inv=lambda x: canon(elem_inv(x)),
    )


def sign_canonical_component(m: GaussianMatrix) -> GaussianMatrix:
    """The canonical one of {m, -m}: larger flattened entry key."""
    neg = -m
    return m if m.sort_key() >= neg.sort_key() else neg


def sign_canonical(x: Element) -> Element:
    if isinstance(x, tuple):
        return tuple(sign_canonical_component(a) for a in x)
    return sign_canonical_component(x)


def fourth_root_canonical(m: GaussianMatrix) -> GaussianMatrix:
    """The canonical representative of m modulo scalar fourth roots of unity."""
    return max((m.scale(z) for z in FOURTH_ROOTS), key=lambda a: a.sort_key())


def abelian_invariants(group: FiniteMatrixGroup) -> AbelianGroupStructure:
    """Invariant factors of a finite abelian group, by peeling maximal orders."""
    if not group.is_abelian():
        raise ValueError("abelian_invariants needs an abelian group")

    def rec(elements, mul, identity) -> List[int]:
        if len(elements) == 1:
            return []

        def order_of(x):
            y, n = x, 1
            while y != identity:
                y = mul(y, x)
                n += 1
            return n

        gmax = None
        best = 0
        for x in elements:
            o = order_of(x)
            if o > best:
                best, gmax = o, x
        cyc = [identity]
        y = gmax
        while y != identity:
            cyc.append(y)
            y = mul(y, gmax)
        to_coset: Dict[object, frozenset] = {}
        cosets = []
        for x in elements:
            if x in to_coset:
                continue
            cs = frozenset(mul(x, h) for h in cyc)
            for z in cs:
                to_coset[z] = cs
            cosets.append(cs)

        def qmul(a, b):
            return to_coset[mul(next(iter(a)), next(iter(b)))]

        return [best] + rec(cosets, qmul, to_coset[identity])

    peeled = rec(list(group.elements), group.mul, group.identity)
    for a, b in zip(peeled, peeled[1:]):
        assert a % b == 0
    return AbelianGroupStructure(0, tuple(reversed(peeled)))


def group_id(group: FiniteMatrixGroup) -> str:
    """Identify a small group against a fixed catalogue."""
    n = group.order
    if n > 64:
        raise CapExceededError("group_id supports order <= 64")
    if group.is_abelian():
        inv = abelian_invariants(group).torsion
        if not inv:
            return "1"
        if all(d == 2 for d in inv):
            return "Z/2" if len(inv) == 1 else f"(Z/2)^{len(inv)}"
        if inv == (4,):
            return "Z/4"
        if inv == (2, 4):
            return "Z/2 x Z/4"
        if inv[-1] == 4 and all(d == 2 for d in inv[:-1]) and len(inv) >= 3:
            return f"(Z/2)^{len(inv) - 1} x Z/4"
        factors = ",".join(str(d) for d in inv)
        return f"abelian order {n} (invariant factors {factors})"
    if n == 8:
        involutions = sum(1 for x in group.elements if group.element_order(x) == 2)
        return "Q8" if involutions == 1 else "D4"
    if n == 16:
        zinv = abelian_invariants(group.center()).torsion
        squares = {
            group.mul(x, x) for x in group.elements if group.element_order(x) == 4
        }
        involutions = sum(1 for x in group.elements if group.element_order(x) == 2)
        # center (Z/2)^2, all order-4 squares equal, 3 involutions: that is
        # Q8 x Z/2 (Z/4:Z/4 has two squares, D4 x Z/2 has 11 involutions)
        if zinv == (2, 2) and len(squares) == 1 and involutions == 3:
            return "Q8 x Z/2"
    return f"unrecognized (order={n}, abelian=no, exponent={group.exponent()})"


# ---------------------------------------------------------------------------
# character tables


@dataclass(frozen=True)
class CharacterRow:
    degree: int
    values: Tuple[QI, ...]

    def sort_key(self):
        return (self.degree, tuple(v.sort_key() for v in self.values))


@dataclass
class CharacterTable:
    group: FiniteMatrixGroup
    classes: Tuple[ConjClass, ...]
    rows: Tuple[CharacterRow, ...]

    def class_index(self, x: Element) -> int:
        if not hasattr(self, "_idx"):
            self._idx = {m: i for i, c in enumerate(self.classes) for m in c.members}
        return self._idx[x]

    def value(self, row: CharacterRow, x: Element) -> QI:
        return row.values[self.class_index(x)]

    def degrees(self) -> Tuple[int, ...]:
        return tuple(r.degree for r in self.rows)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _choose_prime(exponent: int, order: int) -> int:
    p = 2 * isqrt(order) + 2
    while True:
        if _is_prime(p) and (p - 1) % exponent == 0:
            return p
        p += 1


def _primitive_eth_root(p: int, e: int) -> int:
    # factor p-1, find a generator, take its (p-1)/e power
    m = p - 1
    facs = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            facs.add(d)
            m //= d
        d += 1
    if m > 1:
        facs.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in facs):
            return pow(g, (p - 1) // e, p)
    raise RuntimeError("no generator found")


def _modp_nullspace(mat: List[List[int]], p: int) -> List[List[int]]:
    rows = [r[:] for r in mat]
    m = len(rows)
    width = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(width):
        piv = -1
        for i in range(r, m):
            if rows[i][c] % p:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        invp = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * invp) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * width
        vec[fc] = 1
        for prow, pc in enumerate(pivots):
            vec[pc] = (-rows[prow][fc]) % p
        basis.append(vec)
    return basis


def _modp_solve_coords(basis: List[List[int]], target: List[int], p: int) -> List[int]:
    # coordinates of target in the span of basis vectors (assumed consistent)
    k = len(target)
    m = len(basis)
    aug = [[basis[j][i] for j in range(m)] + [target[i]] for i in range(k)]
    coords = [0] * m
    r = 0
    pivots = []
    for c in range(m):
        piv = -1
        for i in range(r, k):
            if aug[i][c] % p:
                piv = i
                break
        if piv < 0:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        invp = pow(aug[r][c], p - 2, p)
        aug[r] = [(x * invp) % p for x in aug[r]]
        for i in range(k):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for row_i, c in enumerate(pivots):
        coords[c] = aug[row_i][m]
    return coords


def _character_table(group: FiniteMatrixGroup) -> CharacterTable:
    n = group.order
    if n > 512:
        raise CapExceededError("character_table supports order <= 512")
    e = group.exponent()
    if 4 % e:
        raise FieldInsufficientError(
            f"field insufficient: exponent {e} does not divide 4, values leave Q(i)"
        )
    classes = group.conjugacy_classes()
    k = len(classes)
    mul, inv = group.mul, group.inv
    idx = {m: i for i, c in enumerate(classes) for m in c.members}
    reps = [c.rep for c in classes]
    sizes = [c.size for c in classes]
    inv_class = [idx[inv(r)] for r in reps]
    power = []
    for r in reps:
        row = []
        y = group.identity
        for _ in range(e):
            row.append(idx[y])
            y = mul(y, r)
        power.append(row)

    m_mats = []
    for i in range(k):
        mat = [[0] * k for _ in range(k)]
        for t in range(k):
            zt = reps[t]
            for x in classes[i].members:
                j = idx[mul(inv(x), zt)]
                mat[t][j] += 1
        m_mats.append(mat)

    p = _choose_prime(e, n)
    zroot = _primitive_eth_root(p, e)

    # split F_p^k into common eigenlines of the class-sum matrices
    spaces: List[List[List[int]]] = [
        [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    ]
    for i in range(k):
        if all(len(b) == 1 for b in spaces):
            break
        mat = m_mats[i]
        fresh: List[List[List[int]]] = []
        for basis in spaces:
            if len(basis) == 1:
                fresh.append(basis)
                continue
            mdim = len(basis)
            images = [
                [sum(mat[t][j] * vec[j] for j in range(k)) % p for t in range(k)]
                for vec in basis
            ]
            coords = [_modp_solve_coords(basis, img, p) for img in images]
            rmat = [[coords[b][a] for b in range(mdim)] for a in range(mdim)]
            for lam in range(p):
                shifted = [
                    [(rmat[a][b] - (lam if a == b else 0)) % p for b in range(mdim)]
                    for a in range(mdim)
                ]
                null = _modp_nullspace(shifted, p)
                if null:
                    sub = [
                        [
                            sum(coef[t] * basis[t][j] for t in range(mdim)) % p
                            for j in range(k)
                        ]
                        for coef in null
                    ]
                    fresh.append(sub)
        spaces = fresh

    omegas_list = []
    for basis in spaces:
        assert len(basis) == 1, "class-sum matrices failed to split to lines"
        v = basis[0]
        t0 = next(t for t in range(k) if v[t] % p)
        om = []
        for i in range(k):
            img = sum(m_mats[i][t0][j] * v[j] for j in range(k)) % p
            om.append((img * pow(v[t0], p - 2, p)) % p)
        omegas_list.append(om)

    zeta = FOURTH_ROOTS[(4 // e) % 4]
    zeta_pows = [QI(1)]
    for _ in range(e - 1):
        zeta_pows.append(zeta_pows[-1] * zeta)
    einv = pow(e, p - 2, p)
    rows = []
    for om in omegas_list:
        s = 0
        for i in range(k):
            s = (s + om[i] * om[inv_class[i]] * pow(sizes[i], p - 2, p)) % p
        d2 = (n * pow(s, p - 2, p)) % p
        deg = None
        for dd in range(1, isqrt(n) + 1):
            if (dd * dd) % p == d2:
                deg = dd
                break
        assert deg is not None, "no degree matches the mod-p data"
        chi_p = [(deg * om[i] * pow(sizes[i], p - 2, p)) % p for i in range(k)]
        values = []
        for i in range(k):
            val = QI(0)
            for j in range(e):
                mj = 0
                for t in range(e):
                    mj = (mj + chi_p[power[i][t]] * pow(zroot, (-j * t) % (p - 1), p)) % p
                mj = (mj * einv) % p
                assert mj <= deg, "multiplicity lift out of range"
                if mj:
                    val = val + QI(mj) * zeta_pows[j]
            values.append(val)
        rows.append(CharacterRow(deg, tuple(values)))

    rows.sort(key=lambda r: r.sort_key())
    table = CharacterTable(group, classes, tuple(rows))
    _validate_table(table)
    if n <= 64:
        _regular_representation_check(table)
    return table


def _validate_table(table: CharacterTable) -> None:
    group = table.group
    n = group.order
    k = len(table.classes)
    rows = table.rows
    if len(rows) != k:
        raise AssertionError("number of characters differs from class count")
    if sum(r.degree * r.degree for r in rows) != n:
        raise AssertionError("degrees fail sum of squares = |G|")
    sizes = [c.size for c in table.classes]
    for a, ra in enumerate(rows):
        for b, rb in enumerate(rows):
            s = QI(0)
            for i in range(k):
                s = s + QI(sizes[i]) * ra.values[i] * rb.values[i].conj()
            want = QI(n) if a == b else QI(0)
            if s != want:
                raise AssertionError("row orthogonality fails")
    for i in range(k):
        for j in range(k):
            s = QI(0)
            for r in rows:
                s = s + r.values[i] * r.values[j].conj()
            want = QI(n) * QI(sizes[i]).inverse() if i == j else QI(0)
            if s != want:
                raise AssertionError("column orthogonality fails")


def _regular_representation_check(table: CharacterTable) -> None:
    """Independent validation: each row defines an idempotent projection.

    With T[u][v] = chi(g_v g_u^{-1}) the matrix (d/|G|) T must be idempotent,
    equivalently T^2 = (|G|/d) T over Z[i].
    """
    group = table.group
    elems = group.elements
    n = len(elems)
    pos = {x: i for i, x in enumerate(elems)}
    mul, inv = group.mul, group.inv
    invidx = [pos[inv(x)] for x in elems]
    prod = [[pos[mul(elems[a], elems[b])] for b in range(n)] for a in range(n)]
    cls_of = [table.class_index(x) for x in elems]
    for row in table.rows:
        vals = []
        for v in row.values:
            if v.re.denominator != 1 or v.im.denominator != 1:
                raise AssertionError("character value is not an algebraic integer in Z[i]")
            vals.append((v.re.numerator, v.im.numerator))
        if n % row.degree:
            raise AssertionError("degree does not divide group order")
        scale = n // row.degree
        t = [[vals[cls_of[prod[v][invidx[u]]]] for v in range(n)] for u in range(n)]
        for u in range(n):
            for v in range(n):
                sre = sim = 0
                tu = t[u]
                for w in range(n):
                    are, aim = tu[w]
                    bre, bim = t[w][v]
                    sre += are * bre - aim * bim
                    sim += are * bim + aim * bre
                if sre != scale * t[u][v][0] or sim != scale * t[u][v][1]:
                    raise AssertionError("regular representation cross-check fails")


def character_table(group: FiniteMatrixGroup) -> CharacterTable:
    return group.character_table()


@dataclass(frozen=True)
class CentralCharacter:
    """A character of a designated central subgroup, given on generators."""

    assignments: Tuple[Tuple[Element, QI], ...]

    def extend(self, mul: Callable, identity: Element) -> Dict[Element, QI]:
        """Value map on the generated subgroup; error when not multiplicative."""
        values: Dict[Element, QI] = {identity: QI(1)}
        frontier = [identity]
        while frontier:
            fresh = []
            for x in frontier:
                for g, val in self.assignments:
                    y = mul(x, g)
                    newval = values[x] * val
                    if y in values:
                        if values[y] != newval:
                            raise ValueError("central character is not multiplicative")
                    else:
                        values[y] = newval
                        fresh.append(y)
            frontier = fresh
        return values


def irreps_with_central_character(
    group: FiniteMatrixGroup,
    z_elements: Sequence[Element],
    zeta: CentralCharacter,
    table: Optional[CharacterTable] = None,
) -> List[CharacterRow]:
    """Rows of the character table whose restriction to Z is zeta-isotypic."""
    zset = set(z_elements)
    for z in zset:
        if z not in group:
            raise ValueError("designated subgroup is not inside the group")
        if any(group.mul(z, x) != group.mul(x, z) for x in group.elements):
            raise ValueError("designated subgroup is not central")
    values = zeta.extend(group.mul, group.identity)
    if set(values) != zset:
        raise ValueError("central character generators do not generate the subgroup")
    if table is None:
        table = group.character_table()
    out = []
    for row in table.rows:
        ok = True
        for z, val in values.items():
            if table.value(row, z) != QI(row.degree) * val:
                ok = False
                break
        if ok:
            out.append(row)
    return out
