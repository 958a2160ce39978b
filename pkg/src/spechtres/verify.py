"""Mechanical checks on assembled complexes.

Every check returns a :class:`VerificationReport`.  Failing reports always
carry a witness.  Ranks of graded strands are computed modulo large primes;
a modular rank never exceeds the rational one, so every equality used to
*pass* a check is a certificate over QQ (see :func:`check_strand_exactness`).
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Callable, Iterable

import numpy as np

from . import kernels
from .polyring import Monomial, Polynomial, graded_piece_basis, monomial_index, specht_polynomial
from .resolution import (
    DifferentialMatrix,
    GradedComplex,
    assemble,
    check_params,
    differential_image,
    family_length,
    module_spec,
)
from .specht import garnir_pairs, garnir_transversal
from .tableau import Partition, SignedPermutation, Tableau, act, all_tableaux, enumerate_standard, random_tableau

CHECKS = ("chain", "minimal", "betti", "strands", "hilbert", "decomposition", "irreducible", "welldef")


@dataclass
class VerificationReport:
    name: str
    passed: bool
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0
    note: str = ""

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"failing report {self.name!r} needs a witness")

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "status": "pass" if self.passed else "fail",
            "witness": self.witness,
            "details": self.details,
            "elapsed": round(self.elapsed, 4),
            "note": self.note,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name} ({self.elapsed:.2f}s)"
        if self.note:
            text += f" - {self.note}"
        if self.witness:
            text += f" witness={self.witness}"
        return text


def _timed(fn: Callable[..., VerificationReport]):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed = time.perf_counter() - start
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _threads() -> int:
    value = os.environ.get("SPECHTRES_THREADS")
    if value:
        return max(1, int(value))
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# chain condition and minimality


def _compose(outer: DifferentialMatrix, inner: DifferentialMatrix) -> dict[Monomial, np.ndarray]:
    """Coefficients of ``outer @ inner`` grouped by monomial (scaled by both denominators)."""
    mono_o, ten_o, _ = outer.tensor()
    mono_i, ten_i, _ = inner.tensor()
    result: dict[Monomial, np.ndarray] = {}
    if not mono_o or not mono_i:
        return result
    k_o, rows, mid = ten_o.shape
    stacked = ten_o.reshape(k_o * rows, mid)
    for b, mb in enumerate(mono_i):
        prod = kernels.int_matmul(stacked, ten_i[b]).reshape(k_o, rows, -1)
        for a, ma in enumerate(mono_o):
            key = tuple(x + y for x, y in zip(ma, mb))
            if key in result:
                result[key] = result[key] + prod[a]
            else:
                result[key] = prod[a].copy()
    return result


@_timed
def check_chain(cx: GradedComplex) -> VerificationReport:
    """``d_(i-1) d_i = 0`` as exact polynomial matrix products for every ``i``."""
    checked = []
    for i in range(2, cx.length + 1):
        outer, inner = cx.differential(i - 1), cx.differential(i)
        for mono, block in _compose(outer, inner).items():
            nz = np.argwhere(block != 0)
            if nz.size:
                r, c = (int(v) for v in nz[0])
                return VerificationReport(
                    "chain", False,
                    witness={"i": i, "row": r, "col": c, "monomial": list(mono),
                             "coefficient": int(block[r, c])},
                )
        checked.append(i)
    return VerificationReport("chain", True, details={"compositions": [f"d{i - 1}*d{i}" for i in checked]})


@_timed
def check_minimal(cx: GradedComplex) -> VerificationReport:
    """No entry of any differential has a nonzero constant term."""
    for dm in cx.differentials:
        for r, c, p in dm.nonzero_entries():
            if p.constant_term():
                return VerificationReport(
                    "minimal", False,
                    witness={"i": dm.index, "row": r, "col": c, "entry": str(p)},
                )
    return VerificationReport("minimal", True)


# ---------------------------------------------------------------------------
# Betti numbers and Hilbert series


class BettiTable(dict):
    """``{(i, j): beta_ij}`` with only nonzero entries stored."""

    def __init__(self, entries=()):
        super().__init__()
        for (i, j), b in dict(entries).items():
            if b < 0:
                raise ValueError(f"negative Betti number at {(i, j)}")
            if b:
                self[(int(i), int(j))] = int(b)
        if self.get((0, 0)) != 1:
            raise ValueError("beta_00 must be 1")

    def row(self, i: int) -> dict[int, int]:
        return {j: b for (k, j), b in self.items() if k == i}

    def totals(self) -> list[int]:
        top = max(i for i, _ in self)
        return [sum(self.row(i).values()) for i in range(top + 1)]

    def to_json(self) -> list[list[int]]:
        return [[i, j, b] for (i, j), b in sorted(self.items())]


def betti_expected(family: str, size: int) -> BettiTable:
    """Graded Betti numbers ``{(i, j): beta_ij}`` of ``R / I`` from the closed forms."""
    check_params(family, size)
    table = {(0, 0): 1}
    if family == "n22":
        n = size
        for i in range(1, n - 2):
            num = factorial(n) * (n - i - 2) * i
            den = factorial(i + 1) * factorial(n - i - 1) * (n - 1)
            assert num % den == 0
            table[(i, i + 1)] = num // den
        table[(n - 2, n)] = 1
    else:
        d = size
        for i in range(1, d + 1):
            num = factorial(2 * d + 1)
            den = (d + i + 1) * factorial(d + 1) * factorial(d - i) * factorial(i - 1)
            assert num % den == 0
            table[(i, i + d + 1)] = num // den
    return BettiTable(table)


def betti_of_complex(cx: GradedComplex) -> BettiTable:
    return BettiTable({(i, m.twist): m.rank for i, m in enumerate(cx.modules)})


@_timed
def check_betti(cx: GradedComplex) -> VerificationReport:
    """Ranks and twists agree with the closed forms and with the hook formula."""
    size = cx.params["n"] if cx.family == "n22" else cx.params["d"]
    expected = betti_expected(cx.family, size)
    actual = betti_of_complex(cx)
    if expected != actual:
        diff = sorted(set(expected.items()) ^ set(actual.items()))
        return VerificationReport("betti", False, witness={"mismatch": [list(k) + [v] for k, v in diff]})
    for i, m in enumerate(cx.modules):
        if len(enumerate_standard(m.shape)) != m.rank:
            return VerificationReport("betti", False, witness={"i": i, "shape": list(m.shape)})
    return VerificationReport("betti", True, details={"table": actual.to_json()})


def betti_numerator(table: dict[tuple[int, int], int]) -> list[int]:
    """Coefficients of ``sum (-1)^i beta_ij t^j``."""
    top = max(j for _, j in table)
    coeffs = [0] * (top + 1)
    for (i, j), b in table.items():
        coeffs[j] += (-1) ** i * b
    return coeffs


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def one_minus_t_power(k: int) -> list[int]:
    return [(-1) ** j * comb(k, j) for j in range(k + 1)]


def divide_by_one_minus_t(a: list[int], k: int) -> tuple[list[int], list[int]]:
    """Quotient and remainder of ``a`` divided by ``(1 - t)^k``."""
    quotient = list(a)
    for _ in range(k):
        # a = (1 - t) q  =>  q_j = a_0 + ... + a_j
        q, running = [], 0
        for c in quotient:
            running += c
            q.append(running)
        remainder = q[-1]
        if remainder != 0:
            return _trim(q[:-1]) if len(q) > 1 else [0], [remainder]
        quotient = _trim(q[:-1]) if len(q) > 1 else [0]
    return quotient, [0]


@_timed
def check_hilbert_numerator(cx: GradedComplex) -> VerificationReport:
    """Hilbert numerator identity from the Betti table.

    ``n22``: ``sum (-1)^i beta_ij t^j == (1 + (n-2) t + t^2)(1 - t)^(n-2)``.
    ``dd1``: ``(1 - t)^d`` divides the numerator with a nonnegative quotient.
    """
    numerator = _trim(betti_numerator(betti_of_complex(cx)))
    if cx.family == "n22":
        n = cx.params["n"]
        expected = _trim(poly_mul([1, n - 2, 1], one_minus_t_power(n - 2)))
        if numerator != expected:
            return VerificationReport("hilbert", False, witness={"numerator": numerator, "expected": expected})
        return VerificationReport("hilbert", True, details={"numerator": numerator, "h_vector": [1, n - 2, 1]})
    d = cx.params["d"]
    quotient, remainder = divide_by_one_minus_t(numerator, d)
    if remainder != [0] or any(c < 0 for c in quotient):
        return VerificationReport(
            "hilbert", False, witness={"numerator": numerator, "quotient": quotient, "remainder": remainder}
        )
    return VerificationReport(
        "hilbert", True, details={"numerator": numerator, "h_vector": quotient},
        note="internal consistency only: codimension d, nonnegative h-vector",
    )


# ---------------------------------------------------------------------------
# graded strands


def strand_matrix(dm: DifferentialMatrix, e: int) -> np.ndarray:
    """Integer matrix of ``[d]_e : [F_src]_e -> [F_tgt]_e`` (scaled by the entry denominator).

    Row ``r * M_t + k`` is ``e(S_r) (x) m_k`` with ``m_k`` the ``k``-th monomial of
    degree ``e - twist_tgt``; columns are indexed the same way on the source.
    """
    n = dm.nvars
    src_deg = e - dm.source.twist
    tgt_deg = e - dm.target.twist
    src_monos = graded_piece_basis(n, src_deg) if src_deg >= 0 else ()
    tgt_monos = graded_piece_basis(n, tgt_deg) if tgt_deg >= 0 else ()
    ms, mt = len(src_monos), len(tgt_monos)
    out = np.zeros((dm.nrows * mt, dm.ncols * ms), dtype=np.int64)
    if not ms or not mt:
        return out
    tgt_index = monomial_index(n, tgt_deg)
    monos, ten, _ = dm.tensor()
    src_arr = np.array(src_monos, dtype=np.int64)
    for k, mu in enumerate(monos):
        shifted = src_arr + np.array(mu, dtype=np.int64)
        targets = np.fromiter((tgt_index[tuple(row)] for row in shifted.tolist()), dtype=np.int64, count=ms)
        rows, cols = np.nonzero(ten[k])
        vals = ten[k][rows, cols].astype(np.int64)
        for r, c, v in zip(rows.tolist(), cols.tolist(), vals.tolist()):
            out[r * mt + targets, c * ms + np.arange(ms)] += v
    return out


def _strand_dims(cx: GradedComplex, e: int) -> list[int]:
    dims = []
    for m in cx.modules:
        deg = e - m.twist
        dims.append(m.rank * comb(cx.nvars + deg - 1, deg) if deg >= 0 else 0)
    return dims


def strand_ranks(cx: GradedComplex, e: int) -> list[int]:
    """Modular lower bounds for ``rank [d_i]_e``, ``i = 1..length``."""
    ranks = []
    for dm in cx.differentials:
        mat = strand_matrix(dm, e)
        ranks.append(kernels.rank_lower_bound(mat) if mat.size else 0)
    return ranks


@_timed
def check_strand_exactness(cx: GradedComplex, max_degree: int | None = None) -> VerificationReport:
    """``dim ker [d_i]_e == rank [d_(i+1)]_e`` for ``i >= 1`` and all ``e <= max_degree``.

    Ranks are modular lower bounds.  Given the chain condition (checked
    first), ``rank d_(i+1) <= dim ker d_i`` holds over QQ, so an equality of
    the modular counts certifies exactness over QQ in that degree.  A failure
    could in principle be a rank drop modulo both primes; the witness records
    the counts.
    """
    if max_degree is None:
        max_degree = cx.top_twist() + 2
    note = f"strand-verified up to degree {max_degree} (degree-bounded evidence, not a proof in all degrees)"
    chain = check_chain(cx)
    if not chain.passed:
        # without d d = 0 the modular counts certify nothing
        return VerificationReport("strands", False, witness={"chain": chain.witness}, note=note)
    degrees = list(range(0, max_degree + 1))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        all_ranks = list(pool.map(lambda e: strand_ranks(cx, e), degrees))
    per_degree = []
    failure = None
    for e, ranks in zip(degrees, all_ranks):
        dims = _strand_dims(cx, e)
        ranks_ext = ranks + [0]  # the map leaving the last module is zero
        for i in range(1, cx.length + 1):
            kernel = dims[i] - ranks_ext[i - 1]
            image = ranks_ext[i]
            if kernel != image and failure is None:
                failure = {"degree": e, "i": i, "dim_kernel": kernel, "rank_next": image}
        homology0 = dims[0] - ranks_ext[0]
        per_degree.append({"degree": e, "dims": dims, "ranks": ranks, "dim_R_mod_I": homology0})
    if failure:
        return VerificationReport("strands", False, witness=failure, details={"strands": per_degree}, note=note)
    return VerificationReport("strands", True, details={"strands": per_degree, "max_degree": max_degree}, note=note)


@_timed
def check_irreducible_strand(cx: GradedComplex, i: int) -> VerificationReport:
    """``[d_i]`` in the generating degree of ``F_i`` is injective."""
    dm = cx.differential(i)
    mat = strand_matrix(dm, dm.source.twist)
    rank = kernels.rank_lower_bound(mat)
    if rank != dm.ncols:
        return VerificationReport(
            f"irreducible[{i}]", False, witness={"i": i, "degree": dm.source.twist, "rank": rank, "rank_F": dm.ncols}
        )
    return VerificationReport(f"irreducible[{i}]", True, details={"degree": dm.source.twist, "rank": rank})


@_timed
def check_irreducible(cx: GradedComplex) -> VerificationReport:
    for i in range(1, cx.length + 1):
        rep = check_irreducible_strand(cx, i)
        if not rep.passed:
            return VerificationReport("irreducible", False, witness=rep.witness)
    return VerificationReport("irreducible", True, details={"indices": list(range(1, cx.length + 1))})


# ---------------------------------------------------------------------------
# decomposition as an intersection of linear ideals


def default_subset_size(family: str, size: int) -> int:
    """``|F|`` for which ``f_T`` lies in every ``(x_i - x_j | i, j in F)``.

    A Specht polynomial vanishes once two variables from ``F`` share a column,
    so ``|F|`` must exceed the number of columns ``lambda_1``.
    """
    shape = module_spec(family, size, 1).shape
    return shape[0] + 1


def _generator_matrix(gens: list[Polynomial], n: int, e: int) -> np.ndarray:
    deg = gens[0].degree()
    target = monomial_index(n, e)
    mult = graded_piece_basis(n, e - deg)
    cols = []
    for f in gens:
        for m in mult:
            col = np.zeros(len(target), dtype=object)
            for mono, c in f.terms.items():
                col[target[tuple(a + b for a, b in zip(mono, m))]] += int(c)
            cols.append(col)
    return np.array(cols, dtype=object).T


def _collapse_matrix(n: int, e: int, subsets: Iterable[tuple[int, ...]]) -> np.ndarray:
    basis = graded_piece_basis(n, e)
    blocks = []
    for F in subsets:
        keep = F[0] - 1
        images: dict[Monomial, int] = {}
        idx = []
        for m in basis:
            new = list(m)
            for i in F[1:]:
                new[keep] += new[i - 1]
                new[i - 1] = 0
            idx.append(images.setdefault(tuple(new), len(images)))
        block = np.zeros((len(images), len(basis)), dtype=np.int64)
        block[idx, np.arange(len(basis))] = 1
        blocks.append(block)
    return np.vstack(blocks)


@_timed
def check_decomposition(
    family: str, size: int, max_degree: int | None = None, subset_size: int | None = None
) -> VerificationReport:
    """Degree-wise ``dim I_e == dim (intersection over F of (x_i - x_j | i,j in F))_e``.

    Also checks ``f_T`` collapses to zero for every generator and every ``F``.
    """
    check_params(family, size)
    shape = module_spec(family, size, 1).shape
    n = shape.n
    k = subset_size if subset_size is not None else default_subset_size(family, size)
    if max_degree is None:
        max_degree = module_spec(family, size, family_length(family, size)).twist
    gens = [specht_polynomial(t) for t in enumerate_standard(shape)]
    subsets = list(combinations(range(1, n + 1), k))
    for t, f in zip(enumerate_standard(shape), gens):
        for F in subsets:
            if f.substitute_collapse(F):
                return VerificationReport(
                    "decomposition", False,
                    witness={"containment": False, "tableau": t.to_text(), "subset": list(F)},
                    details={"subset_size": k},
                )
    gen_deg = gens[0].degree()
    rows = []
    for e in range(0, max_degree + 1):
        total = comb(n + e - 1, e)
        if e < gen_deg:
            ideal_dim = 0
        else:
            ideal_dim = kernels.rank_lower_bound(_generator_matrix(gens, n, e))
        collapse = _collapse_matrix(n, e, subsets)
        inter_dim = total - kernels.rank_lower_bound(collapse)
        rows.append({"degree": e, "dim_R": total, "dim_ideal": ideal_dim, "dim_intersection": inter_dim})
        # ideal_dim <= dim I_e <= dim of the intersection <= inter_dim: the outer
        # steps are modular bounds, the middle one is the containment above
        if ideal_dim != inter_dim:
            return VerificationReport(
                "decomposition", False, witness=rows[-1], details={"subset_size": k, "degrees": rows}
            )
    return VerificationReport("decomposition", True, details={"subset_size": k, "degrees": rows})


# ---------------------------------------------------------------------------
# well-definedness on Garnir relations


def _image_sum(family: str, size: int, i: int, terms: list[tuple[int, Tableau]]) -> dict[int, Polynomial]:
    total: dict[int, Polynomial] = {}
    for sign, t in terms:
        for idx, p in differential_image(family, size, i, t).items():
            q = total.get(idx)
            total[idx] = p.scale(sign) if q is None else q + p.scale(sign)
    return {k: v for k, v in total.items() if v}


def welldef_indices(family: str, size: int) -> list[int]:
    """Differentials whose formula is applied to arbitrary (non-standard) tableaux."""
    if family == "n22":
        return list(range(1, size - 2))
    return list(range(1, size))


def garnir_image_residual(family: str, size: int, i: int, t: Tableau, g) -> dict[int, Polynomial]:
    terms = [(s.sign, act(s, t)) for s in garnir_transversal(g)]
    return _image_sum(family, size, i, terms)


@_timed
def check_welldefined(
    family: str, size: int, samples: int | None = None, seed: int = 0
) -> VerificationReport:
    """``sum over S(A,B) of sgn(sigma) d(e(sigma T)) == 0`` for Garnir pairs.

    ``samples=None`` runs over every tableau of each source shape; otherwise
    ``samples`` random (tableau, Garnir pair) cases are drawn with ``seed``.
    """
    check_params(family, size)
    rng = random.Random(seed)
    cases = 0
    per_index = {}
    indices = welldef_indices(family, size)
    for i in indices:
        shape = module_spec(family, size, i).shape
        if samples is None:
            pool = ((t, g) for t in all_tableaux(shape) for g in garnir_pairs(t))
        else:
            quota = samples // len(indices) + (1 if indices.index(i) < samples % len(indices) else 0)

            def draw(quota=quota, shape=shape):
                for _ in range(quota):
                    t = random_tableau(shape, rng)
                    yield t, rng.choice(garnir_pairs(t))

            pool = draw()
        count = 0
        for t, g in pool:
            residual = garnir_image_residual(family, size, i, t, g)
            count += 1
            if residual:
                idx, p = next(iter(residual.items()))
                return VerificationReport(
                    "welldef", False,
                    witness={"i": i, "tableau": t.to_text(), "A": sorted(g.A), "B": sorted(g.B),
                             "target_index": idx, "residual": str(p)},
                )
        per_index[i] = count
        cases += count
    return VerificationReport(
        "welldef", True, details={"cases": cases, "per_index": per_index, "exhaustive": samples is None}
    )


# ---------------------------------------------------------------------------
# equivariance


def act_on_image(sigma: SignedPermutation, image: dict[int, Polynomial], shape: Partition) -> dict[int, Polynomial]:
    """``sigma (sum v_k (x) p_k) = sum sigma(v_k) (x) sigma(p_k)``."""
    from .specht import straighten_sparse

    basis = enumerate_standard(shape)
    out: dict[int, Polynomial] = {}
    for idx, p in image.items():
        q = p.permute_variables(sigma)
        for k, c in straighten_sparse(act(sigma, basis[idx])).items():
            term = q.scale(c)
            out[k] = out[k] + term if k in out else term
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# mutation


def mutate_sign(cx: GradedComplex, rng: random.Random) -> tuple[GradedComplex, dict]:
    """Copy of ``cx`` with one randomly chosen nonzero entry negated."""
    entries = [(dm.index, r, c) for dm in cx.differentials for r, c, _ in dm.nonzero_entries()]
    i, r, c = rng.choice(entries)
    out = cx.copy()
    col = out.differential(i).columns[c]
    col[r] = -col[r]
    return out, {"i": i, "row": r, "col": c}


# ---------------------------------------------------------------------------
# orchestration


def run_checks(
    cx: GradedComplex,
    checks: Iterable[str],
    max_degree: int | None = None,
    samples: int | None = None,
    seed: int = 0,
) -> list[VerificationReport]:
    size = cx.params["n"] if cx.family == "n22" else cx.params["d"]
    reports = []
    for name in checks:
        if name == "chain":
            reports.append(check_chain(cx))
        elif name == "minimal":
            reports.append(check_minimal(cx))
        elif name == "betti":
            reports.append(check_betti(cx))
        elif name == "strands":
            reports.append(check_strand_exactness(cx, max_degree))
        elif name == "hilbert":
            reports.append(check_hilbert_numerator(cx))
        elif name == "decomposition":
            reports.append(check_decomposition(cx.family, size, max_degree))
        elif name == "irreducible":
            reports.append(check_irreducible(cx))
        elif name == "welldef":
            reports.append(check_welldefined(cx.family, size, samples=samples, seed=seed))
        else:
            raise ValueError(f"unknown check {name!r}; expected one of {CHECKS}")
    return reports


def verify_family(family: str, size: int, checks: Iterable[str] = CHECKS, **kwargs) -> list[VerificationReport]:
    return run_checks(assemble(family, size), checks, **kwargs)
