import pytest

from cremona_lab.fields import GF, QQ
from cremona_lab.groebner import (Budget, BudgetError, exact_divide, groebner_basis,
                                  normal_form, spoly_reduces_to_zero)
from cremona_lab.poly import LEX, parse_poly, ring
from cremona_lab.rng import Rng

R = ring(GF(10007), 4)


def pp(s):
    return parse_poly(s, R)


TWISTED = [pp("z0*z2 - z1^2"), pp("z1*z3 - z2^2"), pp("z0*z3 - z1*z2")]


def test_monomial_free_linear_ideal_is_its_own_basis():
    gens = [pp("z0"), pp("z1")]
    assert groebner_basis(gens) == sorted(gens, key=lambda f: R.key(f.lead()[0]), reverse=True)


def test_twisted_cubic_reduced_basis_is_three_quadrics():
    gb = groebner_basis(TWISTED)
    assert len(gb) == 3
    assert all(g.degree == 2 for g in gb)
    # verify by the definition: every S-pair reduces to zero
    for i in range(3):
        for j in range(i + 1, 3):
            assert spoly_reduces_to_zero(gb, i, j)


def test_strategies_agree():
    rng = Rng(3)
    for k in range(6):
        gens = [R.random_poly(2 + k % 2, rng.split(f"{k}-{i}")) for i in range(3)]
        assert groebner_basis(gens) == groebner_basis(gens, strategy="sugar")


def test_normal_form_examples():
    gb = groebner_basis(TWISTED)
    # single reduction step, checkable by hand: z1^2 -> z0 z2
    assert normal_form(pp("z1^2"), gb) == pp("z0*z2")
    for g in TWISTED:
        assert normal_form(g, gb).is_zero()
    # linearity on random pairs
    rng = Rng(9)
    for k in range(10):
        f = R.random_poly(3, rng.split(f"f{k}"))
        g = R.random_poly(3, rng.split(f"g{k}"))
        assert normal_form(f + g, gb) == normal_form(f, gb) + normal_form(g, gb)


def test_membership_decidable():
    gb = groebner_basis(TWISTED)
    member = TWISTED[0] * pp("z3") - TWISTED[1] * pp("z0")
    assert normal_form(member, gb).is_zero()
    assert not normal_form(pp("z0^2"), gb).is_zero()


def test_deterministic_output():
    gb1 = groebner_basis(TWISTED)
    gb2 = groebner_basis(list(reversed(TWISTED)))
    assert gb1 == gb2


def test_budget_errors():
    rng = Rng(4)
    gens = [R.random_poly(3, rng.split(str(i))) for i in range(4)]
    with pytest.raises(BudgetError):
        groebner_basis(gens, budget=Budget(max_pairs=1))
    with pytest.raises(BudgetError):
        groebner_basis(gens, budget=Budget(max_degree=2))


def test_exact_divide():
    f = pp("z0^2*z3 - z0*z1*z2")
    assert exact_divide(f, pp("z0")) == pp("z0*z3 - z1*z2")
    assert exact_divide(f, pp("z1")) is None
    rng = Rng(6)
    a = R.random_poly(2, rng.split("a"))
    b = R.random_poly(3, rng.split("b"))
    assert exact_divide(a * b, b) == a


def test_lex_and_elimination_bases():
    # under lex, the twisted cubic picks up the degree-3 eliminant relations
    gb = groebner_basis(TWISTED, order=LEX)
    keyf = LEX.key_func(R)
    for g in gb:
        lead = max(g.terms, key=lambda t: keyf(t[0]))[0]
        assert keyf(lead) == max(keyf(m) for m, _ in g.terms)
    # an element free of z0 must exist (elimination of the first variable)
    free = [g for g in gb if all(R.mexp(m, 0) == 0 for m, _ in g.terms)]
    assert free


def test_qq_groebner():
    RQ = ring(QQ, 4)
    gens = [parse_poly(s, RQ) for s in ("z0*z2 - z1^2", "z1*z3 - z2^2", "z0*z3 - z1*z2")]
    gb = groebner_basis(gens)
    assert len(gb) == 3
    assert normal_form(parse_poly("z1^2", RQ), gb) == parse_poly("z0*z2", RQ)
