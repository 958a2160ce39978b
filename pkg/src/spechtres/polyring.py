"""Sparse polynomials over the rationals in ``x_1..x_n``.

A monomial is a dense exponent tuple of length ``nvars``; a polynomial is a
mapping monomial -> nonzero ``Fraction``.  Values are immutable once built.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .tableau import SignedPermutation, Tableau

Monomial = tuple[int, ...]


def grevlex_key(m: Monomial) -> tuple:
    """Sort key; larger key means larger in graded reverse lexicographic order."""
    return (sum(m), tuple(-e for e in reversed(m)))


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has wrong length for {nvars} variables")
                c = Fraction(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        m = [0] * nvars
        m[i - 1] = 1
        return cls._raw(nvars, {tuple(m): Fraction(1)})

    @classmethod
    def linear_form(cls, nvars: int, coeffs: Mapping[int, object]) -> "Polynomial":
        terms = {}
        for i, c in coeffs.items():
            m = [0] * nvars
            m[i - 1] = 1
            terms[tuple(m)] = c
        return cls(nvars, terms)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.nvars, out)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: grevlex_key(mc[0]), reverse=True)

    # -- substitutions ----------------------------------------------------

    def permute_variables(self, sigma: SignedPermutation | Sequence[int]) -> "Polynomial":
        """Apply ``x_i -> x_{sigma(i)}``."""
        mapping = sigma.mapping if isinstance(sigma, SignedPermutation) else tuple(sigma)
        out = {}
        for m, c in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(m):
                if e:
                    new[mapping[i] - 1] = e
            out[tuple(new)] = c
        return Polynomial._raw(self.nvars, out)

    def substitute_collapse(self, subset: Iterable[int]) -> "Polynomial":
        """Replace every ``x_i`` with ``i`` in ``subset`` by ``x_{min subset}``.

        The result is zero exactly when ``self`` lies in ``(x_i - x_j | i, j in subset)``.
        """
        subset = sorted(set(subset))
        if not subset:
            raise ValueError("subset must be nonempty")
        keep = subset[0] - 1
        idx = [i - 1 for i in subset[1:]]
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            new = list(m)
            for i in idx:
                new[keep] += new[i]
                new[i] = 0
            key = tuple(new)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Polynomial._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(point, m):
                if e:
                    term *= Fraction(v) ** e
            total += term
        return total

    # -- serialisation --------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self})"

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(m), "numerator": c.numerator, "denominator": c.denominator}
            for m, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, nvars: int, data: list[dict]) -> "Polynomial":
        terms = {}
        for t in data:
            m = tuple(int(e) for e in t["exponents"])
            terms[m] = terms.get(m, 0) + Fraction(int(t["numerator"]), int(t["denominator"]))
        return cls(nvars, terms)


def specht_polynomial(t: Tableau) -> Polynomial:
    """Product over columns of ``x_top - x_bottom`` for every pair of cells in the column."""
    n = t.n
    result = Polynomial.constant(n, 1)
    for col in t.columns():
        for s, u in combinations(col, 2):
            result = result * (Polynomial.variable(n, s) - Polynomial.variable(n, u))
    return result


@lru_cache(maxsize=None)
def graded_piece_basis(n: int, e: int) -> tuple[Monomial, ...]:
    """All degree-``e`` monomials in ``n`` variables, descending grevlex."""
    if e < 0:
        return ()
    out: list[Monomial] = []

    def rec(i: int, remaining: int, acc: list[int]) -> None:
        if i == n - 1:
            out.append(tuple(acc + [remaining]))
            return
        for k in range(remaining, -1, -1):
            acc.append(k)
            rec(i + 1, remaining - k, acc)
            acc.pop()

    if n == 0:
        return ((),) if e == 0 else ()
    rec(0, e, [])
    out.sort(key=grevlex_key, reverse=True)
    assert len(out) == comb(n + e - 1, e)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, e: int) -> dict[Monomial, int]:
    return {m: k for k, m in enumerate(graded_piece_basis(n, e))}
