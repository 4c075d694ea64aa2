from gspinlab import presets
from gspinlab.lattice import IntMatrix, solve_integral
from gspinlab.morphisms import (
    RootDatumMap,
    cartan_compatible_bijections,
    check_isomorphism,
    search_isomorphisms,
    verify_dual_identification,
    _det_poly_coeffs,
    _integer_roots,
    _line_box_range,
)
from gspinlab.root_datum import gl_datum, sl_datum


PSI4 = presets.datum("GSpin4")
G4 = presets.datum("G4")
PSI6 = presets.datum("GSpin6")
G6 = presets.datum("G6")
S4, _, _ = presets.datum_map("gspin4_to_g4")
S6, _, _ = presets.datum_map("gspin6_to_g6")


def test_distinguished_map_rank4():
    assert S4.iota_vee == S4.iota.transpose()
    assert check_isomorphism(S4, PSI4, G4)


def test_distinguished_map_rank6():
    assert S6.iota_vee == S6.iota.transpose() == S6.iota  # symmetric
    assert check_isomorphism(S6, PSI6, G6)


def test_identity_map_cases():
    ident = RootDatumMap(IntMatrix.identity(3), IntMatrix.identity(3))
    assert check_isomorphism(ident, PSI4, PSI4)
    assert not check_isomorphism(ident, PSI4, G4)  # raw coordinate mismatch


def test_search_uniqueness_rank4():
    maps = search_isomorphisms(PSI4, G4, assignment=(0, 1), det_sign=1)
    assert len(maps) == 1
    assert maps[0].iota == S4.iota
    assert maps[0].iota_vee == S4.iota.transpose()


def test_search_uniqueness_rank6():
    maps = search_isomorphisms(PSI6, G6, assignment=(0, 1, 2), det_sign=1)
    assert len(maps) == 1
    assert maps[0].iota == S6.iota


def test_search_without_det_constraint_has_alternatives():
    maps = search_isomorphisms(PSI4, G4, assignment=(0, 1))
    assert len(maps) >= 2
    dets = {m.iota.det() for m in maps}
    assert dets <= {1, -1} and -1 in dets


def test_search_rank_mismatch_is_empty():
    assert search_isomorphisms(sl_datum(2), gl_datum(2)) == []


def test_search_results_all_verify():
    for d1, d2 in [(PSI4, G4), (PSI6, G6), (PSI4, PSI4)]:
        for f in search_isomorphisms(d1, d2):
            assert check_isomorphism(f, d1, d2)


def test_inverse_and_composition():
    inv = S4.inverse()
    assert check_isomorphism(inv, G4, PSI4)
    ident = inv.compose(S4)
    assert check_isomorphism(ident, PSI4, PSI4)
    assert ident.iota == IntMatrix.identity(3)


def test_cartan_bijections():
    # the two rank-4 factors can swap
    assert len(cartan_compatible_bijections(PSI4, PSI4)) == 2
    # the rank-6 diagram has the branch swap only
    assert len(cartan_compatible_bijections(PSI6, PSI6)) == 2


def test_dual_identifications():
    ok4, detail4 = verify_dual_identification("GSpin4", presets.datum("GL2xGL2"))
    assert ok4 and detail4["kernel_matches_similitude_dual"]
    ok6, detail6 = verify_dual_identification("GSpin6", presets.datum("GL1xGL4"))
    assert ok6
    assert detail6["sc_center"] == [4]


def test_perturbed_kernel_fails():
    ok, detail = verify_dual_identification(
        "GSpin4", presets.datum("GL2xGL2"), kernel=(1, 1, 1, 1)
    )
    assert not ok
    assert not detail["kernel_matches_similitude_dual"]
    # the quotient datum itself is abstractly isomorphic; the failure is the
    # kernel-cocharacter validation
    assert detail["quotient_isomorphic_to_dual"]


def test_cocharacter_realizations_match():
    for case in ("G4", "G6"):
        data = presets.realization_data(case)
        f, dom, _ = presets.datum_map(data["map"])
        basis = IntMatrix.from_columns(data["cochar_basis"])
        for i, cochar in enumerate(data["realizations"]):
            coords = solve_integral(basis, cochar)
            assert coords is not None
            image = f.iota_vee.apply(coords)
            assert image == tuple(1 if j == i else 0 for j in range(dom.rank))


def test_rejected_realization_variants_fail_duality():
    # printed sign variants that do not satisfy the duality pairing
    for case in ("G4", "G6"):
        data = presets.realization_data(case)
        f, dom, _ = presets.datum_map(data["map"])
        basis = IntMatrix.from_columns(data["cochar_basis"])
        for rej in data["rejected"]:
            coords = solve_integral(basis, rej["cochar"])
            if coords is None:
                continue  # not even in the cocharacter lattice
            image = f.iota_vee.apply(coords)
            want = tuple(1 if j == rej["index"] else 0 for j in range(dom.rank))
            assert image != want


def test_det_poly_and_integer_roots():
    # det(I + c*E11) = 1 + c on 2x2
    coeffs = _det_poly_coeffs([1, 0, 0, 1], [1, 0, 0, 0], 2)
    assert coeffs == [1, 1, 0]
    assert _integer_roots([-4, 0, 1]) == [-2, 2]
    assert _integer_roots([0, 0, 1]) == [0]
    assert _integer_roots([]) is None
    assert _integer_roots([0]) is None
    assert _integer_roots([5]) == []


def test_line_box_range():
    assert _line_box_range([0, 0], [1, 0], 2) == [-2, -1, 0, 1, 2]
    assert _line_box_range([10, 0], [0, 1], 2) == []
