"""Worked differential images, transcribed as (tableau rows, sign, variables)."""

from spechtres.polyring import Polynomial
from spechtres.specht import straighten_sparse
from spechtres.tableau import Tableau

N6_D4_SOURCE = "1/2/3/4/5/6"
N6_D4_TERMS = [
    ("3,1/4,2/5/6", +1, (1, 2)),
    ("2,1/4,3/5/6", -1, (1, 3)),
    ("2,1/3,4/5/6", +1, (1, 4)),
    ("2,1/3,5/4/6", -1, (1, 5)),
    ("2,1/3,6/4/5", +1, (1, 6)),
    ("1,2/4,3/5/6", +1, (2, 3)),
    ("1,2/3,4/5/6", -1, (2, 4)),
    ("1,2/3,5/4/6", +1, (2, 5)),
    ("1,2/3,6/4/5", -1, (2, 6)),
    ("1,3/2,4/5/6", +1, (3, 4)),
    ("1,3/2,5/4/6", -1, (3, 5)),
    ("1,3/2,6/4/5", +1, (3, 6)),
    ("1,4/2,5/3/6", +1, (4, 5)),
    ("1,4/2,6/3/5", -1, (4, 6)),
    ("1,5/2,6/3/4", +1, (5, 6)),
]

N6_D3_SOURCE = "3,1/4,2/5/6"
N6_D3_TERMS = [
    ("4,1,3/5,2/6", +1, (3,)),
    ("3,1,4/5,2/6", -1, (4,)),
    ("3,1,5/4,2/6", +1, (5,)),
    ("3,1,6/4,2/5", -1, (6,)),
]

N6_D2_SOURCE = "4,1,3/5,2/6"
N6_D2_TERMS = [
    ("5,1,3,4/6,2", +1, (4,)),
    ("4,1,3,5/6,2", -1, (5,)),
    ("4,1,3,6/5,2", +1, (6,)),
]

D4_D4_SOURCE = "1,2,3,4/5/6/7/8/9"
D4_D4_BLOCKS = {
    1: [("5,2,3,4/6,1/7/8/9", +1), ("5,3,2,4/6,1/7/8/9", +1), ("5,4,2,3/6,1/7/8/9", +1)],
    5: [("1,2,3,4/6,5/7/8/9", -1), ("1,3,2,4/6,5/7/8/9", -1), ("1,4,2,3/6,5/7/8/9", -1)],
    9: [("1,2,3,4/5,9/6/7/8", -1), ("1,3,2,4/5,9/6/7/8", -1), ("1,4,2,3/5,9/6/7/8", -1)],
}

D4_D2_SOURCE = "1,2,3,4/5,6,7/8/9"
D4_D2_TERMS = [
    ("5,2,3,4/8,6,7,1/9", +1, (1,)),
    ("1,2,3,4/8,6,7,5/9", -1, (5,)),
    ("1,2,3,4/5,6,7,8/9", +1, (8,)),
    ("1,2,3,4/5,6,7,9/8", -1, (9,)),
]


def monomial(n: int, variables) -> Polynomial:
    p = Polynomial.constant(n, 1)
    for v in variables:
        p = p * Polynomial.variable(n, v)
    return p


def expected_image(n: int, terms) -> dict[int, Polynomial]:
    """Straighten each listed tableau and collect coefficients per standard basis vector."""
    out: dict[int, Polynomial] = {}
    for text, sign, variables in terms:
        mono = monomial(n, variables)
        for k, c in straighten_sparse(Tableau.parse(text)).items():
            term = mono.scale(sign * c)
            out[k] = out[k] + term if k in out else term
    return {k: p for k, p in out.items() if p}


def variable_block(image: dict[int, Polynomial], n: int, var: int) -> dict[int, Polynomial]:
    """Part of a linear image whose monomial is ``x_var``."""
    key = tuple(1 if i == var - 1 else 0 for i in range(n))
    out = {}
    for k, p in image.items():
        c = p.terms.get(key)
        if c:
            out[k] = Polynomial(n, {key: c})
    return out
