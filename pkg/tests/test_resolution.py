import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spechtres.polyring import Polynomial
from spechtres.resolution import (
    GradedComplex,
    assemble,
    complex_from_json,
    differential_image,
    dumps,
    loads,
    module_spec,
    to_macaulay2,
    to_text,
)
from spechtres.specht import straighten_sparse
from spechtres.tableau import SignedPermutation, Tableau, act, enumerate_standard
from spechtres.verify import act_on_image

from golden import (
    D4_D2_SOURCE,
    D4_D2_TERMS,
    D4_D4_BLOCKS,
    D4_D4_SOURCE,
    N6_D2_SOURCE,
    N6_D2_TERMS,
    N6_D3_SOURCE,
    N6_D3_TERMS,
    N6_D4_SOURCE,
    N6_D4_TERMS,
    expected_image,
    variable_block,
)

T = Tableau.parse


@pytest.mark.parametrize(
    "i,source,terms",
    [(4, N6_D4_SOURCE, N6_D4_TERMS), (3, N6_D3_SOURCE, N6_D3_TERMS), (2, N6_D2_SOURCE, N6_D2_TERMS)],
)
def test_golden_n6(i, source, terms):
    assert differential_image("n22", 6, i, T(source)) == expected_image(6, terms)


@pytest.mark.parametrize("var", sorted(D4_D4_BLOCKS))
def test_golden_d4_top_blocks(var):
    image = differential_image("dd1", 4, 4, T(D4_D4_SOURCE))
    expected = expected_image(9, [(text, sign, (var,)) for text, sign in D4_D4_BLOCKS[var]])
    assert variable_block(image, 9, var) == expected


def test_golden_d4_second():
    assert differential_image("dd1", 4, 2, T(D4_D2_SOURCE)) == expected_image(9, D4_D2_TERMS)


@pytest.mark.parametrize(
    "family,size,ranks,twists",
    [
        ("n22", 4, (1, 2, 1), (0, 2, 4)),
        ("n22", 5, (1, 5, 5, 1), (0, 2, 3, 5)),
        ("n22", 6, (1, 9, 16, 9, 1), (0, 2, 3, 4, 6)),
        ("dd1", 1, (1, 1), (0, 3)),
        ("dd1", 2, (1, 5, 4), (0, 4, 5)),
        ("dd1", 4, (1, 84, 216, 189, 56), (0, 6, 7, 8, 9)),
    ],
)
def test_ranks_and_twists(family, size, ranks, twists):
    cx = assemble(family, size)
    assert cx.ranks() == ranks
    assert cx.twists() == twists
    for dm in cx.differentials:
        assert (dm.nrows, dm.ncols) == (ranks[dm.index - 1], ranks[dm.index])
        assert not dm.homogeneity_violations()


def test_module_shapes():
    assert [tuple(module_spec("dd1", 4, i).shape) for i in range(1, 5)] == [
        (4, 4, 1), (4, 3, 1, 1), (4, 2, 1, 1, 1), (4, 1, 1, 1, 1, 1)
    ]
    assert [tuple(module_spec("n22", 6, i).shape) for i in range(5)] == [
        (6,), (4, 2), (3, 2, 1), (2, 2, 1, 1), (1, 1, 1, 1, 1, 1)
    ]


@pytest.mark.parametrize("family,size", [("n22", 3), ("dd1", 0), ("xyz", 4)])
def test_invalid_parameters(family, size):
    with pytest.raises(ValueError):
        assemble(family, size)


def test_first_differential_is_specht_polynomial():
    x = lambda i: Polynomial.variable(4, i)
    assert differential_image("n22", 4, 1, T("1,3/2,4")) == {0: (x(1) - x(2)) * (x(3) - x(4))}


def test_last_dd1_differential_needs_standard_input():
    with pytest.raises(ValueError):
        differential_image("dd1", 2, 2, T("2,1/3/4/5"))


@pytest.mark.parametrize("family,size", [("n22", 5), ("dd1", 2)])
def test_json_round_trip_is_exact(family, size):
    cx = assemble(family, size)
    text = dumps(cx)
    again = loads(text)
    assert isinstance(again, GradedComplex)
    assert dumps(again) == text
    assert dumps(assemble(family, size)) == text


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("family"),
        lambda d: d["modules"][1].update(rank=99),
        lambda d: d["differentials"].pop(),
        lambda d: d.update(family="other"),
    ],
)
def test_malformed_json_rejected(mutate):
    data = json.loads(dumps(assemble("n22", 4)))
    mutate(data)
    with pytest.raises(ValueError):
        complex_from_json(data)


def test_text_and_m2_exports():
    cx = assemble("n22", 4)
    assert to_text(cx).startswith("complex n22(n=4) in 4 variables")
    script = to_macaulay2(cx)
    assert "R = QQ[x1..x4];" in script
    assert "assert(d1 * d2 == 0);" in script


def _image_of_vector(family, size, i, coords: dict[int, int]):
    basis = enumerate_standard(module_spec(family, size, i).shape)
    out = {}
    for k, c in coords.items():
        for idx, p in differential_image(family, size, i, basis[k]).items():
            out[idx] = out[idx] + p.scale(c) if idx in out else p.scale(c)
    return {k: v for k, v in out.items() if v}


CASES = [("n22", 5, i) for i in range(1, 4)] + [("n22", 6, i) for i in range(1, 5)] + [("dd1", 2, 1), ("dd1", 2, 2), ("dd1", 3, 2), ("dd1", 3, 3)]


@settings(max_examples=40)
@given(st.sampled_from(CASES), st.randoms(use_true_random=False))
def test_differentials_are_equivariant(case, rnd):
    family, size, i = case
    source = module_spec(family, size, i).shape
    target = module_spec(family, size, i - 1).shape
    n = source.n
    sigma = SignedPermutation(rnd.sample(range(1, n + 1), n))
    s = rnd.choice(enumerate_standard(source))
    lhs = _image_of_vector(family, size, i, straighten_sparse(act(sigma, s)))
    rhs = act_on_image(sigma, differential_image(family, size, i, s), target)
    assert lhs == rhs
