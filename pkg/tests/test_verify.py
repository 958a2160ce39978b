import random

import pytest

from spechtres.polyring import Polynomial
from spechtres.resolution import assemble
from spechtres.verify import (
    BettiTable,
    VerificationReport,
    betti_expected,
    betti_numerator,
    check_betti,
    check_chain,
    check_decomposition,
    check_hilbert_numerator,
    check_irreducible_strand,
    check_minimal,
    check_strand_exactness,
    check_welldefined,
    divide_by_one_minus_t,
    mutate_sign,
    one_minus_t_power,
    poly_mul,
    run_checks,
    strand_matrix,
)


@pytest.fixture(scope="module")
def n6():
    return assemble("n22", 6)


def test_failing_report_needs_witness():
    with pytest.raises(ValueError):
        VerificationReport("chain", False)
    rep = VerificationReport("chain", True)
    assert rep.to_json()["status"] == "pass"


def test_betti_table_validation():
    with pytest.raises(ValueError):
        BettiTable({(0, 0): 2})
    with pytest.raises(ValueError):
        BettiTable({(0, 0): 1, (1, 2): -1})
    assert BettiTable({(0, 0): 1, (1, 2): 0}) == {(0, 0): 1}


def test_betti_closed_forms():
    assert betti_expected("n22", 6) == {(0, 0): 1, (1, 2): 9, (2, 3): 16, (3, 4): 9, (4, 6): 1}
    assert betti_expected("dd1", 2) == {(0, 0): 1, (1, 4): 5, (2, 5): 4}
    assert betti_expected("dd1", 4)[(1, 6)] == 84
    assert betti_expected("dd1", 4).totals() == [1, 84, 216, 189, 56]


@pytest.mark.parametrize("n", range(4, 9))
def test_n22_betti_table_is_palindromic(n):
    totals = betti_expected("n22", n).totals()
    assert totals == totals[::-1]


def test_polynomial_helpers():
    assert poly_mul([1, 4, 1], one_minus_t_power(4)) == [1, 0, -9, 16, -9, 0, 1]
    assert poly_mul([1, 2, 1], one_minus_t_power(2)) == [1, 0, -2, 0, 1]
    assert poly_mul([1, 3, 1], one_minus_t_power(3)) == [1, 0, -5, 5, 0, -1]
    q, r = divide_by_one_minus_t(poly_mul([1, 2, 3], one_minus_t_power(2)), 2)
    assert (q, r) == ([1, 2, 3], [0])
    assert divide_by_one_minus_t([1, 1], 1)[1] != [0]


def test_numerator_from_table(n6):
    from spechtres.verify import betti_of_complex

    assert betti_numerator(betti_of_complex(n6)) == [1, 0, -9, 16, -9, 0, 1]


@pytest.mark.parametrize("family,size", [("n22", 4), ("n22", 5), ("n22", 6), ("dd1", 1), ("dd1", 2), ("dd1", 3)])
def test_structural_checks_pass(family, size):
    cx = assemble(family, size)
    for rep in run_checks(cx, ["chain", "minimal", "betti", "hilbert", "irreducible"]):
        assert rep.passed, rep.line()


def test_chain_detects_flipped_sign(n6):
    broken, where = mutate_sign(n6, random.Random(1))
    rep = check_chain(broken)
    assert not rep.passed
    assert {"i", "row", "col", "monomial", "coefficient"} <= set(rep.witness)
    assert check_chain(n6).passed


def test_minimal_detects_unit_entry():
    cx = assemble("n22", 5).copy()
    cx.differential(2).columns[0][0] = Polynomial.constant(5, 1)
    rep = check_minimal(cx)
    assert not rep.passed and rep.witness["i"] == 2


def test_betti_detects_wrong_rank():
    cx = assemble("n22", 5).copy()
    cx.modules[2] = cx.modules[3]
    assert not check_betti(cx).passed


@pytest.mark.parametrize("family,size,D", [("n22", 5, 7), ("n22", 6, 8), ("dd1", 2, 8)])
def test_strand_exactness(family, size, D):
    rep = check_strand_exactness(assemble(family, size), D)
    assert rep.passed, rep.witness
    assert "strand-verified up to degree" in rep.note
    assert [row["degree"] for row in rep.details["strands"]] == list(range(D + 1))


def test_strand_quotient_dimensions_follow_hilbert_series(n6):
    # dim (R/I)_e from the strands equals the coefficient of (1+4t+t^2)/(1-t)^2
    rep = check_strand_exactness(n6, 6)
    dims = [row["dim_R_mod_I"] for row in rep.details["strands"]]
    assert dims == [1, 6, 12, 18, 24, 30, 36]


def test_strand_exactness_detects_mutation(n6):
    broken, _ = mutate_sign(n6, random.Random(11))
    rep = check_strand_exactness(broken, 8)
    assert not rep.passed and "chain" in rep.witness


@pytest.mark.parametrize("family,size,i,rank,degree", [("n22", 6, 2, 16, 3), ("n22", 6, 4, 1, 6), ("dd1", 2, 2, 4, 5)])
def test_irreducible_strand(family, size, i, rank, degree):
    rep = check_irreducible_strand(assemble(family, size), i)
    assert rep.passed
    assert rep.details == {"degree": degree, "rank": rank}


def test_strand_matrix_shape(n6):
    m = strand_matrix(n6.differential(2), 4)
    # 9 generators times 6 linear forms -> 16 generators times 6 linear forms
    assert m.shape == (9 * 21, 16 * 6)


@pytest.mark.parametrize("family,size", [("n22", 5), ("n22", 6), ("dd1", 2)])
def test_decomposition(family, size):
    rep = check_decomposition(family, size)
    assert rep.passed, rep.witness
    rows = rep.details["degrees"]
    assert rows[0]["dim_ideal"] == rows[0]["dim_intersection"] == 0
    assert rows[1]["dim_ideal"] == rows[1]["dim_intersection"] == 0


def test_decomposition_with_too_few_points_fails():
    rep = check_decomposition("n22", 5, subset_size=3)
    assert not rep.passed
    assert rep.witness["containment"] is False


@pytest.mark.parametrize("family,size", [("n22", 4), ("n22", 5), ("dd1", 2)])
def test_welldefined_exhaustive(family, size):
    rep = check_welldefined(family, size)
    assert rep.passed, rep.witness
    assert rep.details["exhaustive"]


def test_welldefined_sampled_is_reproducible():
    a = check_welldefined("dd1", 3, samples=40, seed=9)
    b = check_welldefined("dd1", 3, samples=40, seed=9)
    assert a.passed and a.details == b.details
    assert a.details["cases"] == 40


def test_welldefined_detects_broken_formula(monkeypatch):
    from spechtres import verify
    from spechtres.resolution import differential_image

    def broken(family, size, i, t):
        image = differential_image(family, size, i, t)
        # rescale only some tableaux so Garnir sums stop cancelling
        if t.entry(1, 1) == 1:
            return {k: p.scale(2) for k, p in image.items()}
        return image

    monkeypatch.setattr(verify, "differential_image", broken)
    rep = check_welldefined("n22", 5)
    assert not rep.passed
    assert "residual" in rep.witness


def test_unknown_check_rejected(n6):
    with pytest.raises(ValueError):
        run_checks(n6, ["nonsense"])
