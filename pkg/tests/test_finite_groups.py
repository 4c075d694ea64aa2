import itertools

import pytest

from gspinlab import presets
from gspinlab.finite_groups import (
    CapExceededError,
    CentralCharacter,
    FieldInsufficientError,
    FiniteMatrixGroup,
    NotFiniteError,
    abelian_invariants,
    center_of_group,
    conjugacy_classes,
    generate_closure,
    group_id,
    irreps_with_central_character,
    quotient_group,
    sign_canonical,
)
from gspinlab.gaussian import QI, GaussianMatrix


A = GaussianMatrix.from_strings([["i", "0"], ["0", "-i"]])
B = GaussianMatrix.from_strings([["0", "1"], ["-1", "0"]])
I2 = GaussianMatrix.identity(2)
NEG = I2.scale(QI(-1))
X = GaussianMatrix.from_strings([["1", "0"], ["0", "-1"]])


def brute_force_classes(group):
    # independent orbit oracle: conjugate by every element
    elems = list(group.elements)
    remaining = set(elems)
    classes = []
    while remaining:
        x = next(iter(remaining))
        orbit = {group.mul(group.inv(g), group.mul(x, g)) for g in elems}
        classes.append(frozenset(orbit))
        remaining -= orbit
    return set(classes)


def test_closure_q8():
    g = generate_closure([A, B])
    assert g.order == 8
    assert group_id(g) == "Q8"


def test_closure_mu4():
    g = generate_closure([GaussianMatrix.scalar(4, QI(0, 1))])
    assert g.order == 4
    assert group_id(g) == "Z/4"


def test_closure_unipotent_not_finite():
    with pytest.raises(NotFiniteError):
        generate_closure([GaussianMatrix.from_strings([["1", "1"], ["0", "1"]])], cap=64)


def test_closure_requires_invertible():
    with pytest.raises(ValueError):
        generate_closure([GaussianMatrix.from_strings([["1", "1"], ["1", "1"]])])


def test_closure_generator_order_independent():
    gens = [A, B, A * B]
    base = generate_closure(gens)
    for perm in itertools.permutations(gens):
        assert generate_closure(list(perm)).elements == base.elements


def test_q8_classes_and_center():
    g = generate_closure([A, B])
    classes = conjugacy_classes(g)
    assert len(classes) == 5
    assert {frozenset(c.members) for c in classes} == brute_force_classes(g)
    z = center_of_group(g)
    assert z.order == 2 and NEG in z


def test_abelian_group_classes_are_singletons():
    g = generate_closure([GaussianMatrix.scalar(2, QI(0, 1))])
    assert all(c.size == 1 for c in conjugacy_classes(g))


def test_coupled_pair_group_classes():
    g = generate_closure([(A, A), (B, B), (I2, NEG)])
    assert g.order == 16
    assert group_id(g) == "Q8 x Z/2"
    assert len(conjugacy_classes(g)) == 10
    assert {frozenset(c.members) for c in conjugacy_classes(g)} == brute_force_classes(g)


KNOWN_Q8_TABLE = {
    # degree -> sorted character values on classes ordered (1, -1, a, b, ab)
    (1, 1, 1, 1, 1),
    (1, 1, 1, -1, -1),
    (1, 1, -1, 1, -1),
    (1, 1, -1, -1, 1),
    (2, -2, 0, 0, 0),
}


def test_q8_character_table_matches_textbook():
    g = generate_closure([A, B])
    table = g.character_table()
    assert table.degrees() == (1, 1, 1, 1, 2)
    got = set()
    for row in table.rows:
        vals = []
        for v in row.values:
            assert v.im == 0
            vals.append(int(v.re))
        got.add(tuple(vals))
    assert got == KNOWN_Q8_TABLE


def test_z4_character_values():
    g = generate_closure([GaussianMatrix.scalar(2, QI(0, 1))])
    table = g.character_table()
    assert table.degrees() == (1, 1, 1, 1)
    values = {v for row in table.rows for v in row.values}
    assert values == {QI(1), QI(-1), QI(0, 1), QI(0, -1)}


def test_elementary_abelian_table():
    g = generate_closure([(NEG, I2), (I2, NEG), (X, X)])
    assert group_id(g) == "(Z/2)^3"
    table = g.character_table()
    assert table.degrees() == (1,) * 8


def test_tables_catalogue_orthogonality():
    groups = [
        generate_closure([A, B]),
        generate_closure(presets.witness_generators("d4_gl2")),
        generate_closure([(A, A), (B, B), (I2, NEG)]),
        generate_closure([(NEG, I2), (I2, A), (I2, B)]),
        generate_closure([(A, I2), (I2, A)]),
    ]
    for g in groups:
        table = g.character_table()  # orthogonality asserted internally
        assert sum(r.degree**2 for r in table.rows) == g.order
        assert len(table.rows) == len(table.classes)


def test_central_character_partition_counts():
    g = generate_closure([(A, A), (B, B), (I2, NEG)])
    z1, z2 = (NEG, I2), (I2, NEG)
    zs = [(I2.scale(a), I2.scale(b)) for a in (QI(1), QI(-1)) for b in (QI(1), QI(-1))]
    total = 0
    for v1 in (QI(1), QI(-1)):
        for v2 in (QI(1), QI(-1)):
            zeta = CentralCharacter(((z1, v1), (z2, v2)))
            total += len(irreps_with_central_character(g, zs, zeta))
    assert total == len(g.character_table().rows)


def test_central_character_errors():
    g = generate_closure([A, B])
    zs = [I2, NEG]
    bad = CentralCharacter(((NEG, QI(0, 1)),))  # (-I)^2 = I but i^2 = -1
    with pytest.raises(ValueError):
        irreps_with_central_character(g, zs, bad)
    noncentral = CentralCharacter(((A, QI(1)),))
    with pytest.raises(ValueError):
        irreps_with_central_character(g, [I2, A, NEG, A.scale(QI(-1))], noncentral)


def test_mu4_central_character_pickout():
    g = generate_closure([GaussianMatrix.scalar(4, QI(0, 1))])
    z = GaussianMatrix.scalar(4, QI(0, 1))
    zeta = CentralCharacter(((z, QI(0, 1)),))
    rows = irreps_with_central_character(g, list(g.elements), zeta)
    assert len(rows) == 1 and rows[0].degree == 1


def test_field_insufficient_for_exponent_3():
    rot3 = GaussianMatrix.from_strings(
        [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]]
    )
    g = generate_closure([rot3])
    with pytest.raises(FieldInsufficientError):
        g.character_table()


def test_table_cap():
    diag = []
    for signs in itertools.product((1, -1), repeat=10):
        diag.append(
            GaussianMatrix([[QI(signs[i]) if i == j else QI(0) for j in range(10)] for i in range(10)])
        )
    g = FiniteMatrixGroup(diag)
    with pytest.raises(CapExceededError):
        g.character_table()
    with pytest.raises(CapExceededError):
        group_id(g)


def test_group_id_catalogue():
    assert group_id(generate_closure(presets.witness_generators("d4_gl2"))) == "D4"
    assert group_id(generate_closure([(NEG, I2), (I2, NEG)])) == "(Z/2)^2"
    assert group_id(generate_closure([(A, I2), (I2, A)])) == (
        "abelian order 16 (invariant factors 4,4)"
    )
    assert group_id(generate_closure([A])) == "Z/4"
    assert group_id(generate_closure([(A, A), (I2, NEG)])) == "Z/2 x Z/4"
    assert group_id(generate_closure([(NEG, I2), (I2, NEG), (X, X), (A, A)])) == (
        "(Z/2)^2 x Z/4"
    )
    assert group_id(generate_closure([I2])) == "1"
    assert group_id(generate_closure([NEG])) == "Z/2"


def test_group_id_rejects_lookalike():
    # D4 x Z/2 shares the order and center shape but has 11 involutions
    d4gens = presets.witness_generators("d4_gl2")
    g = generate_closure([(m, I2) for m in d4gens] + [(I2, NEG)])
    assert g.order == 16
    assert group_id(g).startswith("unrecognized")


def test_abelian_invariants_oracle():
    # compare against order statistics of a known product
    g = generate_closure([(A, I2), (I2, NEG)])  # Z/4 x Z/2
    inv = abelian_invariants(g)
    assert inv.torsion == (2, 4)
    counts = {}
    for x in g.elements:
        counts[g.element_order(x)] = counts.get(g.element_order(x), 0) + 1
    assert counts == {1: 1, 2: 3, 4: 4}


def test_quotient_group_by_signs():
    g = generate_closure([(A, A), (B, B), (I2, NEG)])
    q = quotient_group(g, sign_canonical)
    assert q.order == 4
    assert group_id(q) == "(Z/2)^2"


def test_is_closed_detects_corruption():
    g = generate_closure([A, B])
    broken = FiniteMatrixGroup(g.elements[:-1], generators=g.elements[:-1])
    assert not broken.is_closed()
