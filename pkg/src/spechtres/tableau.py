"""Partitions, Young tableaux, tabloids and permutations of ``[n]``.

Cells are addressed ``(row, col)`` with 1-based indices.  Tableaux are
immutable and hashable; all heavy users (straightening, differentials)
key caches on ``Tableau.rows``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return Partition(sum(1 for p in self if p > c) for c in range(self[0]))

    def column_heights(self) -> tuple[int, ...]:
        return tuple(self.conjugate())

    def __repr__(self) -> str:
        return f"Partition{tuple(self)}"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        return cls(int(t) for t in text.replace(" ", "").split(",") if t)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    out: list[Partition] = []

    def rec(remaining: int, largest: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(acc))
            return
        for p in range(min(remaining, largest), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return out


class SignedPermutation:
    """A permutation of ``[n]`` stored as its full image list, with its sign.

    ``mapping[k - 1]`` is the image of ``k``.
    """

    __slots__ = ("mapping", "sign")

    def __init__(self, mapping: Sequence[int]):
        mapping = tuple(int(v) for v in mapping)
        if sorted(mapping) != list(range(1, len(mapping) + 1)):
            raise ValueError(f"not a permutation of [n]: {mapping}")
        self.mapping = mapping
        self.sign = permutation_sign(mapping)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_dict(cls, n: int, images: dict[int, int]) -> "SignedPermutation":
        """Permutation moving only the keys of ``images``."""
        return cls(images.get(k, k) for k in range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "SignedPermutation":
        images: dict[int, int] = {}
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                images[a] = b
        return cls.from_dict(n, images)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (self * other)(x) = self(other(x))
        return SignedPermutation(self.mapping[v - 1] for v in other.mapping)

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.n
        for k, v in enumerate(self.mapping, start=1):
            inv[v - 1] = k
        return SignedPermutation(inv)

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.mapping, start=1))

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedPermutation) and self.mapping == other.mapping

    def __hash__(self) -> int:
        return hash(self.mapping)

    def __repr__(self) -> str:
        return f"SignedPermutation({list(self.mapping)}, sign={self.sign:+d})"


def permutation_sign(mapping: Sequence[int]) -> int:
    """Sign of a permutation of ``[n]`` given as an image sequence."""
    seen = [False] * len(mapping)
    sign = 1
    for start in range(len(mapping)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = mapping[k] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sort_with_sign(values: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Sort ``values`` ascending and return the sign of the sorting permutation."""
    inversions = 0
    for i in range(len(values)):
        vi = values[i]
        for j in range(i + 1, len(values)):
            if vi > values[j]:
                inversions += 1
    return tuple(sorted(values)), (-1 if inversions & 1 else 1)


class Tableau:
    """A bijective filling of a Young diagram by ``1..n``."""

    __slots__ = ("rows", "shape", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        shape = Partition(len(r) for r in rows)
        entries = sorted(v for r in rows for v in r)
        if entries != list(range(1, shape.n + 1)):
            raise ValueError(f"entries must be a bijection onto [1..{shape.n}]: {rows}")
        self.rows = rows
        self.shape = shape
        self._hash = hash(rows)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...], shape: Partition | None = None) -> "Tableau":
        t = object.__new__(cls)
        t.rows = rows
        t.shape = shape if shape is not None else Partition(len(r) for r in rows)
        t._hash = hash(rows)
        return t

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "Tableau":
        height = len(columns[0])
        rows = [[col[r] for col in columns if len(col) > r] for r in range(height)]
        return cls(rows)

    @classmethod
    def parse(cls, text: str) -> "Tableau":
        """Parse ``"3,5,1,7/6,2/4"`` (rows separated by ``/``)."""
        try:
            rows = [[int(v) for v in row.split(",")] for row in text.replace(" ", "").split("/")]
        except ValueError as exc:
            raise ValueError(f"malformed tableau text {text!r}") from exc
        return cls(rows)

    def to_text(self) -> str:
        return "/".join(",".join(str(v) for v in row) for row in self.rows)

    @property
    def n(self) -> int:
        return self.shape.n

    def entry(self, row: int, col: int) -> int:
        return self.rows[row - 1][col - 1]

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(row[c] for row in self.rows if len(row) > c) for c in range(self.shape[0])
        )

    def column(self, col: int) -> tuple[int, ...]:
        return tuple(row[col - 1] for row in self.rows if len(row) >= col)

    def position(self, value: int) -> tuple[int, int]:
        for r, row in enumerate(self.rows, start=1):
            if value in row:
                return r, row.index(value) + 1
        raise KeyError(value)

    def reading_word(self) -> tuple[int, ...]:
        return tuple(v for row in self.rows for v in row)

    def is_standard(self) -> bool:
        rows = self.rows
        for row in rows:
            if any(row[k] > row[k + 1] for k in range(len(row) - 1)):
                return False
        for r in range(len(rows) - 1):
            upper, lower = rows[r], rows[r + 1]
            if any(upper[c] > lower[c] for c in range(len(lower))):
                return False
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Tableau({self.to_text()!r})"


class Tabloid:
    """Row-equivalence class of a tableau: the row contents as sorted tuples."""

    __slots__ = ("shape", "rows")

    def __init__(self, rows: Iterable[Iterable[int]]):
        self.rows = tuple(tuple(sorted(r)) for r in rows)
        self.shape = Partition(len(r) for r in self.rows)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...], shape: Partition) -> "Tabloid":
        """Skip validation; ``rows`` must already be sorted tuples of ``shape``."""
        tb = object.__new__(cls)
        tb.rows = rows
        tb.shape = shape
        return tb

    def __eq__(self, other) -> bool:
        return isinstance(other, Tabloid) and self.rows == other.rows

    def __lt__(self, other: "Tabloid") -> bool:
        return self.rows < other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Tabloid(" + " / ".join("{" + ",".join(map(str, r)) + "}" for r in self.rows) + ")"


def tabloid_of(t: Tableau) -> Tabloid:
    return Tabloid(t.rows)


def act(sigma: SignedPermutation | Sequence[int], t: Tableau) -> Tableau:
    """Relabel every entry ``x`` of ``t`` by ``sigma(x)``."""
    mapping = sigma.mapping if isinstance(sigma, SignedPermutation) else tuple(sigma)
    if len(mapping) != t.n:
        raise ValueError("permutation size does not match tableau")
    return Tableau._trusted(tuple(tuple(mapping[v - 1] for v in row) for row in t.rows), t.shape)


def column_stabilizer(t: Tableau) -> Iterator[SignedPermutation]:
    """All elements of ``S(C_1) x ... x S(C_k)`` for the columns of ``t``."""
    cols = [c for c in t.columns() if len(c) > 1]
    n = t.n
    for choice in itertools.product(*(itertools.permutations(c) for c in cols)):
        images = {}
        for col, perm in zip(cols, choice):
            images.update(zip(col, perm))
        yield SignedPermutation.from_dict(n, images)


def hook_dimension(shape: Sequence[int]) -> int:
    """Number of standard tableaux of ``shape`` via the hook length formula."""
    shape = Partition(shape)
    heights = shape.column_heights()
    prod = 1
    for r, length in enumerate(shape):
        for c in range(length):
            prod *= (length - c - 1) + (heights[c] - r - 1) + 1
    return factorial(shape.n) // prod


@lru_cache(maxsize=None)
def _standard_rows(shape: Partition) -> tuple[tuple[tuple[int, ...], ...], ...]:
    n = shape.n
    found: list[tuple[tuple[int, ...], ...]] = []
    rows: list[list[int]] = [[] for _ in shape]

    def place(v: int) -> None:
        if v > n:
            found.append(tuple(tuple(r) for r in rows))
            return
        for r in range(len(shape)):
            if len(rows[r]) < shape[r] and (r == 0 or len(rows[r - 1]) > len(rows[r])):
                rows[r].append(v)
                place(v + 1)
                rows[r].pop()

    place(1)
    found.sort(key=lambda rs: tuple(v for row in rs for v in row))
    return tuple(found)


def enumerate_standard(shape: Sequence[int]) -> list[Tableau]:
    """Standard tableaux of ``shape``, ordered lexicographically by row-reading word."""
    shape = Partition(shape)
    return [Tableau._trusted(rs, shape) for rs in _standard_rows(shape)]


@lru_cache(maxsize=None)
def standard_index(shape: Partition) -> dict[tuple[tuple[int, ...], ...], int]:
    """Map from the rows of each standard tableau to its position in the canonical order."""
    return {rs: k for k, rs in enumerate(_standard_rows(Partition(shape)))}


def all_tableaux(shape: Sequence[int]) -> Iterator[Tableau]:
    """Every tableau of ``shape`` (``n!`` of them)."""
    shape = Partition(shape)
    n = shape.n
    for word in itertools.permutations(range(1, n + 1)):
        rows, k = [], 0
        for length in shape:
            rows.append(word[k:k + length])
            k += length
        yield Tableau._trusted(tuple(rows), shape)


def random_tableau(shape: Sequence[int], rng) -> Tableau:
    """Uniform random tableau of ``shape``; ``rng`` is a ``random.Random``."""
    shape = Partition(shape)
    word = list(range(1, shape.n + 1))
    rng.shuffle(word)
    rows, k = [], 0
    for length in shape:
        rows.append(tuple(word[k:k + length]))
        k += length
    return Tableau._trusted(tuple(rows), shape)


def random_permutation(n: int, rng) -> SignedPermutation:
    word = list(range(1, n + 1))
    rng.shuffle(word)
    return SignedPermutation(word)
