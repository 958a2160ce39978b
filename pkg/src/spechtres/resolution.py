"""The complexes ``F^(n-2,2)`` and ``F^(d,d,1)`` with explicit differentials.

Free modules are ``V_shape (x) R(-twist)`` in the standard polytabloid basis.
Differentials are stored source-major: ``columns[c]`` is the image of the
``c``-th standard tableau of the source shape, a map from target basis
index to a homogeneous polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from .polyring import Monomial, Polynomial, specht_polynomial
from .specht import straighten_sparse
from .tableau import Partition, Tableau, enumerate_standard, hook_dimension

FAMILIES = ("n22", "dd1")

Image = dict[int, Polynomial]


@dataclass(frozen=True)
class FreeModuleSpec:
    shape: Partition
    twist: int

    @property
    def rank(self) -> int:
        return hook_dimension(self.shape)

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "twist": self.twist, "rank": self.rank}


@dataclass
class DifferentialMatrix:
    """``d_index : source -> target`` as a polynomial matrix, stored by columns."""

    index: int
    source: FreeModuleSpec
    target: FreeModuleSpec
    nvars: int
    columns: list[Image]

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    @property
    def degree(self) -> int:
        return self.source.twist - self.target.twist

    def entry(self, row: int, col: int) -> Polynomial:
        return self.columns[col].get(row, Polynomial.zero(self.nvars))

    def nonzero_entries(self) -> Iterator[tuple[int, int, Polynomial]]:
        for c, column in enumerate(self.columns):
            for r in sorted(column):
                yield r, c, column[r]

    def homogeneity_violations(self) -> list[tuple[int, int, int]]:
        """Entries ``(row, col, degree)`` that are not homogeneous of ``self.degree``."""
        bad = []
        for r, c, p in self.nonzero_entries():
            if not p.is_homogeneous() or p.degree() != self.degree:
                bad.append((r, c, p.degree()))
        return bad

    def tensor(self) -> tuple[list[Monomial], np.ndarray, int]:
        """Coefficient tensor ``T[k, row, col]`` of the monomials that occur.

        Returns ``(monomials, T, scale)`` where ``T`` holds integers equal to
        ``scale`` times the true coefficients (``scale`` clears denominators).
        """
        monos: dict[Monomial, int] = {}
        denom = 1
        for _, _, p in self.nonzero_entries():
            for m, c in p.terms.items():
                monos.setdefault(m, len(monos))
                denom = lcm(denom, c.denominator)
        values = []
        big = False
        for r, c, p in self.nonzero_entries():
            for m, v in p.terms.items():
                iv = int(v * denom)
                big = big or abs(iv) > 2**31
                values.append((monos[m], r, c, iv))
        arr = np.zeros((len(monos), self.nrows, self.ncols), dtype=object if big else np.int64)
        for k, r, c, v in values:
            arr[k, r, c] = v
        return list(monos), arr, denom

    def copy(self) -> "DifferentialMatrix":
        return DifferentialMatrix(
            self.index, self.source, self.target, self.nvars, [dict(col) for col in self.columns]
        )


@dataclass
class GradedComplex:
    family: str
    params: dict
    nvars: int
    modules: list[FreeModuleSpec]
    differentials: list[DifferentialMatrix] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def differential(self, i: int) -> DifferentialMatrix:
        """``d_i : F_i -> F_(i-1)`` for ``1 <= i <= length``."""
        return self.differentials[i - 1]

    def ranks(self) -> tuple[int, ...]:
        return tuple(m.rank for m in self.modules)

    def twists(self) -> tuple[int, ...]:
        return tuple(m.twist for m in self.modules)

    def top_twist(self) -> int:
        return self.modules[-1].twist

    def label(self) -> str:
        key = "n" if self.family == "n22" else "d"
        return f"{self.family}({key}={self.params[key]})"

    def copy(self) -> "GradedComplex":
        return GradedComplex(
            self.family, dict(self.params), self.nvars, list(self.modules),
            [d.copy() for d in self.differentials],
        )


# ---------------------------------------------------------------------------
# accumulation helpers


def _accumulate(acc: dict, vec: dict[int, int], mono: Monomial, coeff: int) -> None:
    for idx, v in vec.items():
        key = (idx, mono)
        s = acc.get(key, 0) + coeff * v
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)


def _to_image(nvars: int, acc: dict) -> Image:
    grouped: dict[int, dict[Monomial, Fraction]] = {}
    for (idx, mono), v in acc.items():
        grouped.setdefault(idx, {})[mono] = Fraction(v)
    return {idx: Polynomial._raw(nvars, terms) for idx, terms in sorted(grouped.items())}


def _unit_monomial(n: int, *variables: int) -> Monomial:
    m = [0] * n
    for v in variables:
        m[v - 1] += 1
    return tuple(m)


# ---------------------------------------------------------------------------
# module shapes


def n22_shape(n: int, i: int) -> Partition:
    """Shape of ``F_i`` in ``F^(n-2,2)``; ``i = 0`` gives the trivial shape ``(n)``."""
    if i == 0:
        return Partition((n,))
    if 1 <= i <= n - 3:
        return Partition((n - 1 - i, 2) + (1,) * (i - 1))
    if i == n - 2:
        return Partition((1,) * n)
    raise ValueError(f"homological index {i} out of range for n={n}")


def n22_twist(n: int, i: int) -> int:
    if i == 0:
        return 0
    return n if i == n - 2 else i + 1


def dd1_shape(d: int, i: int) -> Partition:
    if i == 0:
        return Partition((2 * d + 1,))
    if 1 <= i <= d:
        return Partition((d, d - i + 1) + (1,) * i)
    raise ValueError(f"homological index {i} out of range for d={d}")


def dd1_twist(d: int, i: int) -> int:
    return 0 if i == 0 else d + i + 1


# ---------------------------------------------------------------------------
# the (n-2,2) family


def diff_n22_first(t: Tableau) -> Polynomial:
    """``d_1(e(T) (x) 1) = f_T``."""
    if len(t.shape) != 2 or t.shape[1] != 2:
        raise ValueError(f"d_1 expects a tableau of shape (n-2,2), got {tuple(t.shape)}")
    return specht_polynomial(t)


def n22_moved(t: Tableau, j: int) -> Tableau:
    """``T_j``: remove the ``j``-th entry of the first column, append it to row 1."""
    col = t.column(1)
    aj = col[j - 1]
    rest = col[:j - 1] + col[j:]
    rows = [(rest[0],) + t.rows[0][1:] + (aj,), (rest[1],) + t.rows[1][1:]]
    rows.extend((v,) for v in rest[2:])
    return Tableau._trusted(tuple(rows))


def diff_n22_middle(i: int, t: Tableau) -> Image:
    """``d_i(e(T)) = sum_j (-1)^(j-1) e(T_j) (x) x_(a_j)`` for ``2 <= i <= n-3``."""
    n = t.n
    if not 2 <= i <= n - 3:
        raise ValueError(f"middle differential index {i} out of range for n={n}")
    if t.shape != n22_shape(n, i):
        raise ValueError(f"d_{i} expects shape {tuple(n22_shape(n, i))}, got {tuple(t.shape)}")
    acc: dict = {}
    for j, aj in enumerate(t.column(1), start=1):
        sign = 1 if j % 2 == 1 else -1
        _accumulate(acc, straighten_sparse(n22_moved(t, j)), _unit_monomial(n, aj), sign)
    return _to_image(n, acc)


def n22_pair_tableau(n: int, j: int, k: int) -> Tableau:
    """``T_(j,k)``: second column ``(j, k)``, first column the rest in increasing order."""
    rest = [v for v in range(1, n + 1) if v not in (j, k)]
    rows = [(rest[0], j), (rest[1], k)] + [(v,) for v in rest[2:]]
    return Tableau._trusted(tuple(rows))


def diff_n22_top(n: int) -> Image:
    """Image of the column tableau ``1..n`` under ``d_(n-2)``."""
    if n < 4:
        raise ValueError("n must be at least 4")
    acc: dict = {}
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            sign = 1 if (j + k - 1) % 2 == 0 else -1
            _accumulate(acc, straighten_sparse(n22_pair_tableau(n, j, k)), _unit_monomial(n, j, k), sign)
    return _to_image(n, acc)


# ---------------------------------------------------------------------------
# the (d,d,1) family


def dd1_moved(t: Tableau, j: int) -> Tableau:
    """``T_j``: remove the ``j``-th entry of the first column, append it to row 2."""
    col = t.column(1)
    aj = col[j - 1]
    rest = col[:j - 1] + col[j:]
    rows = [(rest[0],) + t.rows[0][1:], (rest[1],) + t.rows[1][1:] + (aj,)]
    rows.extend((v,) for v in rest[2:])
    return Tableau._trusted(tuple(rows))


def dd1_h_orbit(t: Tableau, i: int) -> list[Tableau]:
    """``sigma(t)`` for ``sigma`` in ``H``: one value of the last ``i-1`` first-row
    cells is put in the leftmost of those cells, the others follow in increasing order."""
    d = t.shape[0]
    head, tail = t.rows[0][:d - i + 1], t.rows[0][d - i + 1:]
    out = []
    for v in sorted(tail):
        new_tail = (v,) + tuple(sorted(w for w in tail if w != v))
        out.append(Tableau._trusted((head + new_tail,) + t.rows[1:], t.shape))
    return out


def diff_dd1(i: int, t: Tableau) -> Image:
    """``d_i(e(T)) = sum_j sum_(sigma in H) (-1)^(j-1) e(sigma T_j) (x) x_(a_j)``, ``2 <= i <= d``."""
    n = t.n
    d = (n - 1) // 2
    if n != 2 * d + 1 or not 2 <= i <= d:
        raise ValueError(f"differential index {i} out of range for n={n}")
    if t.shape != dd1_shape(d, i):
        raise ValueError(f"d_{i} expects shape {tuple(dd1_shape(d, i))}, got {tuple(t.shape)}")
    if i == d and not t.is_standard():
        raise ValueError("the last differential is only defined on standard tableaux")
    acc: dict = {}
    for j, aj in enumerate(t.column(1), start=1):
        sign = 1 if j % 2 == 1 else -1
        mono = _unit_monomial(n, aj)
        for s in dd1_h_orbit(dd1_moved(t, j), i):
            _accumulate(acc, straighten_sparse(s), mono, sign)
    return _to_image(n, acc)


# ---------------------------------------------------------------------------
# dispatch and assembly


def family_length(family: str, size: int) -> int:
    if family == "n22":
        return size - 2
    if family == "dd1":
        return size
    raise ValueError(f"unknown family {family!r}")


def check_params(family: str, size: int) -> None:
    if family == "n22" and size < 4:
        raise ValueError(f"n22 needs n >= 4, got n={size}")
    if family == "dd1" and size < 1:
        raise ValueError(f"dd1 needs d >= 1, got d={size}")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def module_spec(family: str, size: int, i: int) -> FreeModuleSpec:
    if family == "n22":
        return FreeModuleSpec(n22_shape(size, i), n22_twist(size, i))
    return FreeModuleSpec(dd1_shape(size, i), dd1_twist(size, i))


def differential_image(family: str, size: int, i: int, t: Tableau) -> Image:
    """Image of ``e(t) (x) 1`` under ``d_i``, by the defining formula applied to ``t``.

    ``t`` need not be standard, except for the last differential of ``dd1``.
    The top differential of ``n22`` is only defined on the column tableau ``1..n``.
    """
    check_params(family, size)
    if i == 1:
        if t.shape != module_spec(family, size, 1).shape:
            raise ValueError(f"d_1 expects shape {tuple(module_spec(family, size, 1).shape)}")
        return _first_image(t)
    if family == "n22":
        if i == size - 2:
            if t.rows != tuple((v,) for v in range(1, size + 1)):
                raise ValueError("the top differential is defined on the column tableau 1..n only")
            return diff_n22_top(size)
        return diff_n22_middle(i, t)
    return diff_dd1(i, t)


def _first_image(t: Tableau) -> Image:
    f = specht_polynomial(t)
    return {0: f} if f else {}


def build_differential(family: str, size: int, i: int) -> DifferentialMatrix:
    source = module_spec(family, size, i)
    target = module_spec(family, size, i - 1)
    n = source.shape.n
    columns = [differential_image(family, size, i, t) for t in enumerate_standard(source.shape)]
    dm = DifferentialMatrix(i, source, target, n, columns)
    bad = dm.homogeneity_violations()
    if bad:
        r, c, deg = bad[0]
        raise ArithmeticError(f"d_{i} entry ({r},{c}) has degree {deg}, expected {dm.degree}")
    return dm


def assemble(family: str, size: int) -> GradedComplex:
    """Build the complex of ``family`` (``"n22"`` with ``n`` or ``"dd1"`` with ``d``)."""
    check_params(family, size)
    top = family_length(family, size)
    modules = [module_spec(family, size, i) for i in range(top + 1)]
    n = modules[0].shape.n
    params = {"n": size} if family == "n22" else {"d": size}
    cx = GradedComplex(family, params, n, modules)
    cx.differentials = [build_differential(family, size, i) for i in range(1, top + 1)]
    return cx


def build_n22(n: int) -> GradedComplex:
    return assemble("n22", n)


def build_dd1(d: int) -> GradedComplex:
    return assemble("dd1", d)


# ---------------------------------------------------------------------------
# serialisation


def complex_to_json(cx: GradedComplex) -> dict:
    diffs = []
    for dm in cx.differentials:
        entries = [[dm.entry(r, c).to_json() for c in range(dm.ncols)] for r in range(dm.nrows)]
        diffs.append({"index": dm.index, "rows": dm.nrows, "cols": dm.ncols, "entries": entries})
    return {
        "family": cx.family,
        "params": cx.params,
        "nvars": cx.nvars,
        "modules": [m.to_json() for m in cx.modules],
        "differentials": diffs,
    }


def dumps(cx: GradedComplex) -> str:
    return json.dumps(complex_to_json(cx), sort_keys=True, separators=(",", ":"))


def complex_from_json(data: dict) -> GradedComplex:
    """Inverse of :func:`complex_to_json`; raises ``ValueError`` on malformed input."""
    try:
        family = data["family"]
        params = {k: int(v) for k, v in data["params"].items()}
        nvars = int(data["nvars"])
        modules = []
        for m in data["modules"]:
            spec = FreeModuleSpec(Partition(m["shape"]), int(m["twist"]))
            if spec.rank != int(m["rank"]):
                raise ValueError(f"rank {m['rank']} does not match shape {m['shape']}")
            modules.append(spec)
        diffs = []
        for k, dj in enumerate(data["differentials"], start=1):
            source, target = modules[k], modules[k - 1]
            entries = dj["entries"]
            if len(entries) != target.rank or any(len(row) != source.rank for row in entries):
                raise ValueError(f"differential {k} has the wrong size")
            columns: list[Image] = [{} for _ in range(source.rank)]
            for r, row in enumerate(entries):
                for c, terms in enumerate(row):
                    p = Polynomial.from_json(nvars, terms)
                    if p:
                        columns[c][r] = p
            diffs.append(DifferentialMatrix(k, source, target, nvars, columns))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed complex: {exc}") from exc
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if len(diffs) != len(modules) - 1:
        raise ValueError("number of differentials does not match number of modules")
    return GradedComplex(family, params, nvars, modules, diffs)


def loads(text: str) -> GradedComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    return complex_from_json(data)


def to_text(cx: GradedComplex) -> str:
    lines = [f"complex {cx.label()} in {cx.nvars} variables"]
    for i, m in enumerate(cx.modules):
        lines.append(f"  F_{i} = V_{tuple(m.shape)} (x) R(-{m.twist})   rank {m.rank}")
    for dm in cx.differentials:
        lines.append(f"d_{dm.index}: {dm.nrows} x {dm.ncols}, entries of degree {dm.degree}")
        source_basis = enumerate_standard(dm.source.shape)
        target_basis = enumerate_standard(dm.target.shape)
        for c, column in enumerate(dm.columns):
            lines.append(f"  e({source_basis[c].to_text()}) ->")
            for r in sorted(column):
                lines.append(f"    e({target_basis[r].to_text()}) * ({column[r]})")
    return "\n".join(lines) + "\n"


def to_macaulay2(cx: GradedComplex) -> str:
    """A Macaulay2 script defining the differentials as matrices over QQ."""
    n = cx.nvars
    out = [f"-- {cx.label()}", f"R = QQ[x1..x{n}];"]
    for dm in cx.differentials:
        rows = []
        for r in range(dm.nrows):
            rows.append("{" + ", ".join(str(dm.entry(r, c)) for c in range(dm.ncols)) + "}")
        out.append(f"d{dm.index} = matrix(R, {{{', '.join(rows)}}});")
    for k in range(2, len(cx.differentials) + 1):
        out.append(f"assert(d{k - 1} * d{k} == 0);")
    out.append("C = chainComplex(" + ", ".join(f"d{k}" for k in range(1, len(cx.differentials) + 1)) + ");")
    out.append("print betti res coker d1;")
    return "\n".join(out) + "\n"
