"""Specht modules in the standard polytabloid basis.

The workhorse is :func:`straighten`, which rewrites the polytabloid ``e(T)``
of an arbitrary tableau as an integer combination of standard polytabloids
using column sorting and Garnir relations.  :func:`straighten_oracle` solves
the same problem by linear algebra over the tabloid basis and is used only
to cross-check.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .polyring import Polynomial, specht_polynomial
from .tableau import (
    Partition,
    SignedPermutation,
    Tableau,
    Tabloid,
    act,
    column_stabilizer,
    enumerate_standard,
    hook_dimension,
    sort_with_sign,
    standard_index,
    tabloid_of,
)

Columns = tuple[tuple[int, ...], ...]

# ---------------------------------------------------------------------------
# vectors


class TabloidVector(dict):
    """Sparse vector in the permutation module spanned by tabloids."""

    def __init__(self, shape: Partition, coords: Mapping[Tabloid, object] | None = None):
        super().__init__()
        self.shape = Partition(shape)
        if coords:
            for k, v in coords.items():
                if v:
                    self[k] = v


class SpechtVector:
    """An element of ``V_shape`` given by its coordinates in the standard basis."""

    __slots__ = ("shape", "coords")

    def __init__(self, shape: Sequence[int], coords: Sequence):
        self.shape = Partition(shape)
        coords = tuple(coords)
        if len(coords) != hook_dimension(self.shape):
            raise ValueError(
                f"expected {hook_dimension(self.shape)} coordinates for {tuple(self.shape)}, got {len(coords)}"
            )
        self.coords = coords

    @classmethod
    def zero(cls, shape: Sequence[int]) -> "SpechtVector":
        return cls(shape, (0,) * hook_dimension(shape))

    @classmethod
    def from_sparse(cls, shape: Sequence[int], sparse: Mapping[int, object]) -> "SpechtVector":
        coords = [0] * hook_dimension(shape)
        for k, v in sparse.items():
            coords[k] = v
        return cls(shape, coords)

    @classmethod
    def unit(cls, t: Tableau) -> "SpechtVector":
        return cls.from_sparse(t.shape, {standard_index(t.shape)[t.rows]: 1})

    def sparse(self) -> dict[int, object]:
        return {k: v for k, v in enumerate(self.coords) if v}

    def terms(self) -> list[tuple[Tableau, object]]:
        basis = enumerate_standard(self.shape)
        return [(basis[k], v) for k, v in enumerate(self.coords) if v]

    def __add__(self, other: "SpechtVector") -> "SpechtVector":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return SpechtVector(self.shape, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "SpechtVector") -> "SpechtVector":
        return self + other.scale(-1)

    def scale(self, c) -> "SpechtVector":
        return SpechtVector(self.shape, (c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpechtVector)
            and self.shape == other.shape
            and all(a == b for a, b in zip(self.coords, other.coords))
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.coords))

    def __repr__(self) -> str:
        body = " ".join(f"{'+' if c > 0 else '-'}{abs(c)}*e({t.to_text()})" for t, c in self.terms())
        return f"SpechtVector({body or '0'})"


@lru_cache(maxsize=None)
def _signed_orders(h: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    return tuple((sort_with_sign(order)[1], order) for order in itertools.permutations(range(h)))


def polytabloid_expand(t: Tableau) -> TabloidVector:
    """``e(T) = sum over pi in C(T) of sgn(pi) {pi T}``."""
    nrows = len(t.shape)
    # each column contributes its signed rearrangements independently
    per_column = [
        [(sign, tuple(col[k] for k in order)) for sign, order in _signed_orders(len(col))]
        for col in t.columns()
    ]
    acc: dict[tuple, int] = {}
    for choice in itertools.product(*per_column):
        sign = 1
        rows: list[list[int]] = [[] for _ in range(nrows)]
        for s, arranged in choice:
            sign *= s
            for r, v in enumerate(arranged):
                rows[r].append(v)
        key = tuple(tuple(sorted(r)) for r in rows)
        acc[key] = acc.get(key, 0) + sign
    vec = TabloidVector(t.shape)
    for key, v in acc.items():
        if v:
            vec[Tabloid._trusted(key, t.shape)] = v
    return vec


# ---------------------------------------------------------------------------
# Garnir elements


@dataclass(frozen=True)
class GarnirPair:
    """Garnir data at column ``column`` and row ``row`` of ``tableau`` (1-based).

    ``A`` is the part of column ``column`` at or below ``row``; ``B`` is the
    part of column ``column + 1`` at or above ``row``.
    """

    tableau: Tableau
    column: int
    row: int

    def __post_init__(self):
        heights = self.tableau.shape.column_heights()
        if not 1 <= self.column < len(heights):
            raise ValueError(f"column {self.column} has no right neighbour")
        if not 1 <= self.row <= heights[self.column]:
            raise ValueError(f"row {self.row} is below column {self.column + 1}")

    @property
    def a_entries(self) -> tuple[int, ...]:
        return self.tableau.column(self.column)[self.row - 1:]

    @property
    def b_entries(self) -> tuple[int, ...]:
        return self.tableau.column(self.column + 1)[:self.row]

    @property
    def A(self) -> frozenset[int]:
        return frozenset(self.a_entries)

    @property
    def B(self) -> frozenset[int]:
        return frozenset(self.b_entries)

    @classmethod
    def from_sets(cls, t: Tableau, A: Iterable[int], B: Iterable[int]) -> "GarnirPair":
        A, B = frozenset(A), frozenset(B)
        if not A or not B:
            raise ValueError("A and B must be nonempty")
        row, col = t.position(min(A, key=lambda v: t.position(v)[0]))
        g = None
        try:
            g = cls(t, col, row)
        except ValueError:
            pass
        if g is None or g.A != A or g.B != B:
            raise ValueError(f"({sorted(A)}, {sorted(B)}) is not an admissible Garnir pattern for {t}")
        return g


def garnir_pairs(t: Tableau) -> list[GarnirPair]:
    heights = t.shape.column_heights()
    return [GarnirPair(t, j, r) for j in range(1, len(heights)) for r in range(1, heights[j] + 1)]


def _inversion_sign(seq: Sequence[int]) -> int:
    return sort_with_sign(seq)[1]


def garnir_transversal(g: GarnirPair) -> list[SignedPermutation]:
    """Permutations of ``A u B`` whose images are increasing down the A and B cells.

    Ordered so that the value set landing in the A cells runs through the
    combinations of ``A u B`` in reverse lexicographic order.
    """
    a, b = g.a_entries, g.b_entries
    pool = sorted(a + b)
    n = g.tableau.n
    out = []
    for chosen in reversed(list(itertools.combinations(pool, len(a)))):
        rest = [v for v in pool if v not in chosen]
        images = dict(zip(a, chosen))
        images.update(zip(b, rest))
        out.append(SignedPermutation.from_dict(n, images))
    return out


def garnir_sum(g: GarnirPair) -> list[tuple[int, Tableau]]:
    """The signed tableaux ``sgn(sigma) * sigma T`` of the Garnir relation."""
    return [(s.sign, act(s, g.tableau)) for s in garnir_transversal(g)]


# ---------------------------------------------------------------------------
# straightening


class _StraightenCache(threading.local):
    def __init__(self):
        self.by_shape: dict[Partition, dict[Columns, dict[int, int]]] = {}


_cache = _StraightenCache()
MAX_DEPTH = 10_000


def clear_cache() -> None:
    _cache.by_shape.clear()


def _sort_columns(cols: Columns) -> tuple[Columns, int]:
    sign = 1
    out = []
    for c in cols:
        sc, s = sort_with_sign(c)
        out.append(sc)
        sign *= s
    return tuple(out), sign


def _straighten_sorted(cols: Columns, memo: dict, index: dict, depth: int) -> dict[int, int]:
    hit = memo.get(cols)
    if hit is not None:
        return hit
    if depth > MAX_DEPTH:
        raise RuntimeError("straightening recursion exceeded its depth bound")

    descent = None
    for j in range(len(cols) - 1):
        left, right = cols[j], cols[j + 1]
        for r in range(len(right)):
            if left[r] > right[r]:
                descent = (j, r)
                break
        if descent:
            break

    if descent is None:
        rows = tuple(
            tuple(c[r] for c in cols if len(c) > r) for r in range(len(cols[0]))
        )
        result = {index[rows]: 1}
        memo[cols] = result
        return result

    j, r = descent
    left, right = cols[j], cols[j + 1]
    a, b = left[r:], right[:r + 1]
    base_sign = _inversion_sign(a + b)
    pool = sorted(a + b)
    acc: dict[int, int] = {}
    for chosen in itertools.combinations(pool, len(a)):
        if chosen == a:
            continue
        rest = tuple(v for v in pool if v not in chosen)
        sgn = base_sign * _inversion_sign(chosen + rest)
        new_cols = list(cols)
        new_cols[j] = left[:r] + chosen
        new_cols[j + 1] = rest + right[r + 1:]
        sub_cols, s = _sort_columns(tuple(new_cols))
        coeff = -sgn * s
        for k, v in _straighten_sorted(sub_cols, memo, index, depth + 1).items():
            acc[k] = acc.get(k, 0) + coeff * v
    result = {k: v for k, v in acc.items() if v}
    memo[cols] = result
    return result


def straighten_sparse(t: Tableau) -> dict[int, int]:
    """Sparse standard coordinates ``{SYT index: coefficient}`` of ``e(t)``."""
    shape = t.shape
    memo = _cache.by_shape.setdefault(shape, {})
    cols, sign = _sort_columns(t.columns())
    res = _straighten_sorted(cols, memo, standard_index(shape), 0)
    if sign == 1:
        return dict(res)
    return {k: -v for k, v in res.items()}


def straighten(t: Tableau) -> SpechtVector:
    """Coordinates ``c_S`` with ``e(t) = sum c_S e(S)`` over standard ``S``."""
    return SpechtVector.from_sparse(t.shape, straighten_sparse(t))


# ---------------------------------------------------------------------------
# oracle


@lru_cache(maxsize=None)
def _oracle_system(shape: Partition):
    basis = enumerate_standard(shape)
    expansions = [polytabloid_expand(s) for s in basis]
    tabloids = sorted({k for e in expansions for k in e})
    row_of = {tb: k for k, tb in enumerate(tabloids)}
    f = len(basis)
    rows: list[list[tuple[int, int]]] = [[] for _ in tabloids]
    for c, e in enumerate(expansions):
        for tb, v in e.items():
            rows[row_of[tb]].append((c, v))

    def dense(r: int) -> list[Fraction]:
        out = [Fraction(0)] * f
        for c, v in rows[r]:
            out[c] = Fraction(v)
        return out

    # the tabloids of the standard tableaux are the natural square block;
    # fall back to a row search if that block happens to be singular
    pivots = [row_of[tabloid_of(s)] for s in basis]
    try:
        inverse = _invert([dense(r) for r in pivots])
    except ArithmeticError:
        pivots = _independent_rows([dense(r) for r in range(len(rows))], f)
        inverse = _invert([dense(r) for r in pivots])
    return row_of, rows, pivots, inverse


def _independent_rows(matrix: list[list[Fraction]], f: int) -> list[int]:
    pivots: list[int] = []
    reduced: list[tuple[int, list[Fraction]]] = []
    for ridx, row in enumerate(matrix):
        vec = row[:]
        for pc, prow in reduced:
            if vec[pc]:
                factor = vec[pc] / prow[pc]
                vec = [x - factor * y for x, y in zip(vec, prow)]
        lead = next((c for c, x in enumerate(vec) if x), None)
        if lead is not None:
            reduced.append((lead, vec))
            pivots.append(ridx)
            if len(pivots) == f:
                return pivots
    raise ArithmeticError(f"standard polytabloids of shape with {f} standard tableaux are not independent")


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(m)
    aug = [row[:] + [Fraction(int(i == k)) for k in range(size)] for i, row in enumerate(m)]
    for c in range(size):
        p = next((r for r in range(c, size) if aug[r][c]), None)
        if p is None:
            raise ArithmeticError("singular system in straightening oracle")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(size):
            if r != c and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [row[size:] for row in aug]


def straighten_oracle(t: Tableau) -> SpechtVector:
    """Standard coordinates of ``e(t)`` by solving the tabloid-basis linear system."""
    row_of, rows, pivots, inverse = _oracle_system(t.shape)
    rhs = [0] * len(rows)
    for tb, v in polytabloid_expand(t).items():
        if tb not in row_of:
            raise ArithmeticError(f"{tb} is outside the span of standard polytabloids")
        rhs[row_of[tb]] = v
    picked = [(k, rhs[r]) for k, r in enumerate(pivots) if rhs[r]]
    coords = [sum((inv_row[k] * v for k, v in picked), Fraction(0)) for inv_row in inverse]
    for r, row in enumerate(rows):
        if sum(v * coords[c] for c, v in row) != rhs[r]:
            raise ArithmeticError("inconsistent system in straightening oracle")
    return SpechtVector(t.shape, (int(c) if c.denominator == 1 else c for c in coords))


# ---------------------------------------------------------------------------
# module structure


def act_specht(sigma: SignedPermutation | Sequence[int], v: SpechtVector) -> SpechtVector:
    """Linear extension of ``e(S) -> e(sigma S)``."""
    basis = enumerate_standard(v.shape)
    acc: dict[int, object] = {}
    for k, c in enumerate(v.coords):
        if not c:
            continue
        for idx, w in straighten_sparse(act(sigma, basis[k])).items():
            acc[idx] = acc.get(idx, 0) + c * w
    return SpechtVector.from_sparse(v.shape, acc)


def specht_to_polynomial(v: SpechtVector) -> Polynomial:
    """Image under ``e(S) -> f_S``."""
    n = v.shape.n
    out = Polynomial.zero(n)
    for t, c in v.terms():
        out = out + specht_polynomial(t).scale(c)
    return out


def is_family_shape(shape: Sequence[int]) -> bool:
    """True for the module shapes of the two resolution families."""
    shape = tuple(shape)
    n = sum(shape)
    if shape == (1,) * n:
        return True
    if len(shape) >= 2 and shape[1] == 2 and all(p == 1 for p in shape[2:]):
        return True
    if len(shape) >= 2 and n % 2 == 1:
        d = (n - 1) // 2
        if shape[0] == d and all(p == 1 for p in shape[2:]):
            i = len(shape) - 2
            return shape[1] == d - i + 1
    return False

