"""Constructor determinism, invariants (one seed here; the acceptance suite
covers 20), special examples and degeneration paths."""

from cremona_lab.cremona import analyze_map, line_preimage_split
from cremona_lab.families import (EXPECTED, FAMILY_LABELS, PATHS, a1_example,
                                  a2_example, build, deform, det_to_dJ_map,
                                  pro_inter, ruled, special_examples)
from cremona_lab.fields import GF, QQ
from cremona_lab.ideals import IdealHandle, graded_piece_dim, multiplicity_at
from cremona_lab.poly import ring
from cremona_lab.rng import Rng

P = 10007
FP = GF(P)


def test_constructor_determinism():
    for label in ("E2", "E7", "E23", "ruled_3_4"):
        a, _ = build(label, 11, FP)
        b, _ = build(label, 11, FP)
        assert a.components == b.components, label


def test_constructors_meet_their_specs_single_seed():
    for label in FAMILY_LABELS:
        psi, spec = build(label, 12, FP)
        an = analyze_map(psi, seed=12, trials=0, with_certificate=False)
        assert an.bidegree == spec.bidegree, label
        if spec.c2 is not None:
            assert (an.c2.degree, an.c2.p_a) == spec.c2, label
        if label.startswith("ruled"):
            assert an.ruled and an.genus == 0
            assert an.deg1part < 9 - spec.bidegree[1]
        else:
            assert not an.ruled and an.genus == 1
            assert an.deg1part == 9 - spec.bidegree[1]


def test_ruled_ordinary_points_count():
    # the residual base scheme has length 2d - 4
    for d in (2, 3, 4, 5):
        psi, _ = build(f"ruled_3_{d}", 13, FP)
        an = analyze_map(psi, seed=13, trials=0, with_certificate=False)
        assert an.theta_count == 2 * d - 4, d


def test_ruled_degeneration_switch():
    # moving two base points onto a line that meets the double line drops
    # the inverse degree by one
    for d in (5, 4):
        psi = ruled(d, 14, FP, degenerate=True)
        an = analyze_map(psi, seed=14, trials=2, with_certificate=False)
        assert an.bidegree == (3, d - 1)
        assert an.ruled


def test_special_examples_pinned():
    R = ring(QQ, 4)
    sp = special_examples(QQ)
    assert [str(c) for c in sp["ruled-involution"].components] == \
        ["z0*z1^2", "z0^2*z1", "z0^2*z2", "z1^2*z3"]
    assert [str(c) for c in sp["dJ-ruled"].components] == \
        ["z0^3", "z0^2*z1", "z0^2*z2", "z1^2*z3"]


def test_dj_ruled_is_ruled_and_birational():
    psi = special_examples(QQ)["dJ-ruled"].reduce_mod(P)
    an = analyze_map(psi, seed=15, trials=3)
    assert an.ruled and an.genus == 0 and an.birational == "yes"
    assert an.bidegree == (3, 3)


def test_pro_inter_bidegrees():
    for eps, bd in ((0, (3, 3)), (1, (3, 4))):
        psi = pro_inter(eps, FP)
        an = analyze_map(psi, seed=16, trials=0, with_certificate=False)
        assert an.bidegree == bd
        assert an.ruled == (eps == 0)


def test_expected_table_is_consistent_with_rows():
    from cremona_lab.hudson import load_table

    rows = {r.row: r for r in load_table()}
    for label, spec in EXPECTED.items():
        if spec.table_row is None:
            assert spec.notes
            continue
        row = rows[spec.table_row]
        assert row.bidegree == spec.bidegree, label
        if spec.counts is not None:
            assert row.counts == spec.counts, label


def test_deform_paths_endpoints():
    from cremona_lab.cli import PATH_EXPECTATIONS

    for path in PATHS:
        for t, psi in deform(path, (0, 2), 17, FP):
            an = analyze_map(psi, seed=17, trials=0, with_certificate=False)
            expect = PATH_EXPECTATIONS[path]["zero" if t == 0 else "nonzero"]
            assert (an.bidegree, (an.c2.degree, an.c2.p_a), an.ruled) == expect, (path, t)


def test_det_to_dj_divided_minors_are_cubic():
    psi = det_to_dJ_map(0, 18, FP)
    assert all(c.degree == 3 for c in psi.components)
    # at t=0 the system is the de Jonquieres shape: all members singular at e3
    from cremona_lab.hudson import classify_point

    F = FP
    pt = classify_point(psi, (F.zero, F.zero, F.zero, F.one), Rng(18))
    assert pt.tag == "DoublePoint"


def test_a1_a2_examples_match_published_values():
    R = ring(QQ, 4)
    rng = Rng(19)
    psi1, p1, _ = a1_example(QQ)
    g1, c11, c21 = line_preimage_split(psi1, rng.split("a1"))
    assert (c21.degree, c21.p_a) == (4, 0)
    assert multiplicity_at(c21.ideal, p1, rng.split("m")) == 4
    union = IdealHandle(list(g1.gens), R, saturated=True)
    assert multiplicity_at(union, p1, rng.split("u")) == 6

    psi2, p2, _, _ = a2_example(QQ)
    g2, c12, c22 = line_preimage_split(psi2, rng.split("a2"))
    assert (c22.degree, c22.p_a) == (4, 1)
    assert multiplicity_at(c22.ideal, p2, rng.split("m2")) == 3
    assert multiplicity_at(c12.ideal, p2, rng.split("m1")) == 3
    union2 = IdealHandle(list(g2.gens), R, saturated=True)
    assert multiplicity_at(union2, p2, rng.split("u2")) == 6


def test_graded_piece_expectations():
    psi, _ = build("E23", 20, FP)
    an = analyze_map(psi, seed=20, trials=0, with_certificate=False)
    assert graded_piece_dim(an.c2.ideal, 3) == 7
    psi, _ = build("E7", 20, FP)
    an = analyze_map(psi, seed=20, trials=0, with_certificate=False)
    assert graded_piece_dim(an.c2.ideal, 3) == 6
    assert graded_piece_dim(an.c2.ideal, 2) == 1
    psi, _ = build("E3", 20, FP)
    an = analyze_map(psi, seed=20, trials=0, with_certificate=False)
    assert graded_piece_dim(an.c2.ideal, 2) == 1
