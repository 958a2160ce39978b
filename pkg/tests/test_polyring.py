from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spechtres.polyring import Polynomial, graded_piece_basis, grevlex_key, monomial_index, specht_polynomial
from spechtres.tableau import Tableau, enumerate_standard

from strategies import permutations_of, tableaux


def x(n, i):
    return Polynomial.variable(n, i)


@st.composite
def polynomials(draw, n=3, max_terms=4, max_deg=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg)] * n),
            st.fractions(min_value=-5, max_value=5, max_denominator=4),
            max_size=max_terms,
        )
    )
    return Polynomial(n, terms)


def test_arithmetic_examples():
    n = 2
    assert (x(n, 1) - x(n, 2)) + (x(n, 2) - x(n, 1)) == 0
    assert str((x(n, 1) - x(n, 2)) * (x(n, 1) + x(n, 2))) == "x1^2 - x2^2"
    assert x(n, 1).scale(0).is_zero()
    assert (x(n, 1) * Fraction(1, 2)).terms == {(1, 0): Fraction(1, 2)}


def test_mismatched_variable_count():
    with pytest.raises(ValueError):
        x(2, 1) + x(3, 1)
    with pytest.raises(ValueError):
        Polynomial(2, {(1, 0, 0): 1})


@given(polynomials(), polynomials(), polynomials())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()
    assert all(c != 0 for c in (p * q).terms.values())


@given(polynomials(), st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=3, max_size=3))
def test_evaluation_is_a_homomorphism(p, point):
    q = p * p + p
    assert q.evaluate(point) == p.evaluate(point) ** 2 + p.evaluate(point)


@given(polynomials())
def test_json_round_trip(p):
    assert Polynomial.from_json(3, p.to_json()) == p


def test_specht_polynomial_examples():
    t = Tableau.parse("3,5,1,7/6,2/4")
    n = 7
    expected = (x(n, 3) - x(n, 6)) * (x(n, 3) - x(n, 4)) * (x(n, 6) - x(n, 4)) * (x(n, 5) - x(n, 2))
    assert specht_polynomial(t) == expected
    assert specht_polynomial(Tableau([[1, 2, 3]])) == 1
    assert specht_polynomial(Tableau([[1], [2]])) == x(2, 1) - x(2, 2)
    assert specht_polynomial(Tableau([[1, 3], [2, 4]])) == (x(4, 1) - x(4, 2)) * (x(4, 3) - x(4, 4))
    assert specht_polynomial(Tableau([[1, 3, 5, 6], [2, 4]])) == (x(6, 1) - x(6, 2)) * (x(6, 3) - x(6, 4))


@given(tableaux(max_n=7))
def test_specht_polynomial_degree(t):
    f = specht_polynomial(t)
    assert f.is_homogeneous()
    assert f.degree() == sum(comb(h, 2) for h in t.shape.column_heights())


@given(tableaux(max_n=6).flatmap(lambda t: st.tuples(st.just(t), permutations_of(t.n))))
def test_specht_polynomial_equivariant(pair):
    from spechtres.tableau import SignedPermutation, act

    t, perm = pair
    sigma = SignedPermutation(perm)
    assert specht_polynomial(act(sigma, t)) == specht_polynomial(t).permute_variables(sigma)


def test_collapse_examples():
    n = 3
    assert (x(n, 1) - x(n, 2)).substitute_collapse({1, 2}).is_zero()
    assert (x(n, 1) - x(n, 3)).substitute_collapse({1, 2}) == x(n, 1) - x(n, 3)


@pytest.mark.parametrize("n,d", [(4, 2), (5, 2), (6, 2), (6, 3), (7, 3)])
def test_collapse_vanishes_when_subset_exceeds_columns(n, d):
    # two members of F share a column as soon as |F| > number of columns
    k = n - d + 1
    for t in enumerate_standard((n - d, d)):
        f = specht_polynomial(t)
        assert all(f.substitute_collapse(F).is_zero() for F in combinations(range(1, n + 1), k))


def test_collapse_with_d_plus_one_points_is_too_small():
    # counterexample for (n-d, d) with n > 2d and |F| = d + 1
    f = (x(6, 1) - x(6, 5)) * (x(6, 2) - x(6, 6))
    assert not f.substitute_collapse({1, 2, 3}).is_zero()


def test_graded_piece_basis():
    assert graded_piece_basis(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert graded_piece_basis(6, 0) == ((0,) * 6,)
    assert len(graded_piece_basis(6, 2)) == 21
    basis = graded_piece_basis(4, 3)
    assert [grevlex_key(m) for m in basis] == sorted((grevlex_key(m) for m in basis), reverse=True)
    assert monomial_index(4, 3)[basis[7]] == 7


def test_string_form():
    p = x(3, 1) * x(3, 2) * 3 - x(3, 3) ** 2 + Fraction(1, 2)
    assert str(p) == "3*x1*x2 - x3^2 + 1/2"
