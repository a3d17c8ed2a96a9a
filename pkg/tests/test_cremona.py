"""Map-level pipeline: validation, liaison split, oracles, inverse."""

import pytest

from cremona_lab import linalg
from cremona_lab.cremona import (InverseUnavailable, MapError, analyze_map,
                                 base_locus, bidegree, birationality_certificate,
                                 genus_of_map, inverse, is_birational, is_ruled,
                                 line_preimage_split, map_of_degree, new_map)
from cremona_lab.families import determinantal, special_examples
from cremona_lab.fields import GF, QQ
from cremona_lab.ideals import IdealHandle
from cremona_lab.poly import parse_poly, ring
from cremona_lab.rng import Rng

P = 10007
R = ring(GF(P), 4)
F = R.field


def pp(s):
    return parse_poly(s, R)


def involution():
    return new_map(pp("z0*z1^2"), pp("z0^2*z1"), pp("z0^2*z2"), pp("z1^2*z3"),
                   label="ruled-involution")


def test_new_map_accepts_the_classical_involution():
    involution()


def test_new_map_rejects_common_factor():
    rng = Rng(1)
    qs = [R.random_poly(2, rng.split(str(i))) for i in range(4)]
    with pytest.raises(MapError):
        new_map(*[pp("z0") * q for q in qs])


def test_identity_map_needs_the_generic_degree_variant():
    comps = [R.var(i) for i in range(4)]
    with pytest.raises(MapError):
        new_map(*comps)
    psi = map_of_degree(comps, 1)
    assert psi.degree == 1


def test_analysis_of_involution():
    an = analyze_map(involution(), seed=1)
    assert an.bidegree == (3, 3)
    assert an.genus == 0 and an.ruled
    assert an.birational == "yes" and an.certificate == 1
    # witness is the double line z0 = z1 = 0
    w = IdealHandle(list(an.ruled_witness), R)
    assert w.equals(IdealHandle([pp("z0"), pp("z1")], R))


def test_base_locus_of_determinantal():
    psi = determinantal(5, GF(P))
    J, deg1, theta = base_locus(psi, Rng(2))
    assert deg1 == 6 and theta == 0


def test_split_retries_are_deterministic():
    psi = determinantal(5, GF(P))
    g1, c1a, c2a = line_preimage_split(psi, Rng(3))
    g2, c1b, c2b = line_preimage_split(psi, Rng(3))
    assert c1a.ideal.groebner() == c1b.ideal.groebner()
    assert (c1a.degree, c1a.p_a, c2a.degree, c2a.p_a) == (3, 0, 6, 3)


def test_bidegree_cross_check():
    assert bidegree(determinantal(5, GF(P)), Rng(4)) == (3, 3)


def test_cube_map_fiber_and_certificate():
    # frozen by this oracle run: the fiber ideal of a generic point has
    # degree 27 (the topological degree of z -> z^3), and the certificate
    # reproduces it
    psi = special_examples(QQ)["cube"].reduce_mod(P)
    an = analyze_map(psi, seed=5)
    assert an.birational == "no"
    assert an.fiber_degree == 27
    assert an.certificate == 27
    assert an.c2.degree == 0 and an.c1.degree == 9


def test_non_dominant_control():
    psi = special_examples(QQ)["segre-squares"].reduce_mod(P)
    verdict, _ = is_birational(psi, Rng(6), trials=2)
    assert verdict == "no"


def test_degree_three_fiber_control():
    psi = special_examples(QQ)["dJ-smooth-S"].reduce_mod(P)
    an = analyze_map(psi, seed=7)
    assert an.birational == "no" and an.fiber_degree == 3 and an.certificate == 3


def test_conjugation_invariance():
    psi = determinantal(8, GF(P))
    rng = Rng(9)
    A = linalg.random_invertible(F, 4, rng.split("A"))
    B = linalg.random_invertible(F, 4, rng.split("B"))
    an0 = analyze_map(psi, seed=1, trials=2)
    an1 = analyze_map(psi.conjugate(A, B), seed=1, trials=2)
    for f in ("bidegree", "genus", "ruled", "deg1part", "theta_count"):
        assert getattr(an0, f) == getattr(an1, f)
    assert (an0.c2.degree, an0.c2.p_a) == (an1.c2.degree, an1.c2.p_a)
    assert an0.birational == an1.birational == "yes"


def test_birationality_conjugation_invariant():
    psi = involution()
    rng = Rng(10)
    A = linalg.random_invertible(F, 4, rng.split("A"))
    B = linalg.random_invertible(F, 4, rng.split("B"))
    v, d = is_birational(psi.conjugate(A, B), rng.split("t"), trials=3)
    assert v == "yes"


def test_inverse_of_involution_is_itself():
    psi = involution()
    g = inverse(psi, 3, Rng(11))
    assert [f.monic() for f in g.components] == [f.monic() for f in psi.components]


def test_inverse_of_determinantal_is_determinantal():
    # p < 2^20 for the dense linear-algebra backend
    Fp = GF(524287)
    psi = determinantal(3, Fp)
    an = analyze_map(psi, seed=3, trials=2)
    assert an.bidegree == (3, 3)
    g = inverse(psi, 3, Rng(12))
    an2 = analyze_map(g, seed=3, trials=2)
    assert an2.bidegree == (3, 3)
    assert (an2.c2.degree, an2.c2.p_a) == (6, 3)  # determinantal signature


def test_inverse_unavailable_on_big_prime():
    psi = determinantal(3, GF(2147482951))
    with pytest.raises(InverseUnavailable):
        inverse(psi, 3, Rng(13))


def test_genus_and_ruledness_disagreement_is_caught():
    # sanity of the cross-check plumbing: a plainly non-ruled map
    psi = determinantal(21, GF(P))
    assert genus_of_map(psi, Rng(14)) == 1
    ruled, wit = is_ruled(psi, Rng(15))
    assert not ruled and wit is None


def test_certificate_counts_base_points():
    # generic de Jonquieres map: certificate 1
    from cremona_lab.families import dejonquieres

    psi = dejonquieres("E3", 2, GF(P))
    an = analyze_map(psi, seed=2)
    assert an.certificate == 1 and an.birational == "yes"


def test_sing_c1_support_independent_of_line_choice():
    # two draws of the generic line give C1's with the same singular support
    from cremona_lab.families import cuboquintic
    from cremona_lab.hudson import curve_singular_points

    psi = cuboquintic("E13", 4, GF(P))
    _, c1a, _ = line_preimage_split(psi, Rng(20, "a"))
    _, c1b, _ = line_preimage_split(psi, Rng(20, "b"))
    assert c1a.ideal.groebner() != c1b.ideal.groebner()  # genuinely different lines
    sa = curve_singular_points(c1a, Rng(21))
    sb = curve_singular_points(c1b, Rng(22))
    assert sa is not None and sb is not None
    assert sorted(p for p, _ in sa) == sorted(p for p, _ in sb)
    assert all(m >= 2 for _, m in sa)
