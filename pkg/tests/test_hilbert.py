"""Hilbert data against independent counting oracles."""

from math import comb

from cremona_lab import linalg
from cremona_lab.fields import GF
from cremona_lab.ideals import IdealHandle, graded_piece_dim, hilbert_from_basis
from cremona_lab.poly import parse_poly, ring
from cremona_lab.rng import Rng

R = ring(GF(10007), 4)


def pp(s):
    return parse_poly(s, R)


TWISTED = IdealHandle([pp("z0*z2 - z1^2"), pp("z1*z3 - z2^2"), pp("z0*z3 - z1*z2")],
                      saturated=True)


def brute_hf(I: IdealHandle, k: int) -> int:
    """Standard-monomial count at degree k, straight from the lead terms."""
    leads = [g.lead()[0] for g in I.groebner()]
    count = 0
    for m in R.monomials_of_degree(k):
        if not any(R.mdivides(l, m) for l in leads):
            count += 1
    return count


def test_twisted_cubic_hp_by_counting():
    # oracle: count standard monomials degree by degree up to 6 and fit a
    # line; frozen result HP(t) = 3t + 1 (degree 3, p_a 0)
    values = [brute_hf(TWISTED, k) for k in range(7)]
    assert values == [1, 4, 7, 10, 13, 16, 19]  # 3k + 1 from k = 0 on
    h = hilbert_from_basis(TWISTED.groebner(), R)
    assert (h.dimension, h.degree, h.p_a) == (1, 3, 0)
    for k in range(7):
        assert h.hf(k) == values[k]
        assert h.hp(k) == 3 * k + 1


def test_koszul_oracle_for_complete_intersections():
    # oracle: HS numerator of a (2,2) complete intersection is (1 - t^2)^2
    rng = Rng(1)
    I = IdealHandle([R.random_poly(2, rng.split("a")), R.random_poly(2, rng.split("b"))],
                    saturated=True)
    h = hilbert_from_basis(I.groebner(), R)
    # expand (1-t^2)^2 / (1-t)^4 at t -> HF values
    num = [1, 0, -2, 0, 1]
    series = [sum(num[i] * comb(k - i + 3, 3) for i in range(min(k + 1, 5))) for k in range(8)]
    for k in range(8):
        assert h.hf(k) == series[k]
    assert (h.dimension, h.degree, h.p_a) == (1, 4, 1)


def test_empty_and_points():
    U = IdealHandle([R.one], saturated=True)
    h = hilbert_from_basis(U.groebner(), R)
    assert (h.dimension, h.degree) == (-1, 0)
    P = IdealHandle([pp("z0"), pp("z1"), pp("z2")], saturated=True)
    h = hilbert_from_basis(P.groebner(), R)
    assert (h.dimension, h.degree) == (0, 1)


def test_hp_agrees_with_hf_beyond_numerator_degree():
    rng = Rng(7)
    I = IdealHandle([R.random_poly(2, rng.split("a")), R.random_poly(3, rng.split("b"))],
                    saturated=True)
    h = hilbert_from_basis(I.groebner(), R)
    bound = len(h.hilbert_numerator)
    for k in range(bound, bound + 4):
        assert h.hf(k) == h.hp(k)


def test_graded_piece_dims():
    U = IdealHandle([R.one], saturated=True)
    assert graded_piece_dim(U, 3) == 20
    assert graded_piece_dim(TWISTED, 2) == 3
    assert graded_piece_dim(TWISTED, 1) == 0


def test_invariance_under_substitution():
    F = R.field
    rng = Rng(3)
    for k in range(3):
        M = linalg.random_invertible(F, 4, rng.split(f"M{k}"))
        I2 = TWISTED.substituted(M)
        h = hilbert_from_basis(I2.groebner(), R)
        assert (h.dimension, h.degree, h.p_a) == (1, 3, 0)
