"""Exact scalars, degree bookkeeping, super signs and exact linear algebra.

Everything here is exact.  Two kinds of field are supported: the rationals
(elements are ``fractions.Fraction``) and prime fields (elements are plain
``int`` reduced modulo the characteristic).  Matrices are dense rectangular
tables; elimination skips zero entries so that the very sparse differentials
produced by the oracle stay cheap.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# fields


class Field:
    """Base class for the exact fields used throughout the package."""

    name: str = "?"
    characteristic: int = 0

    def __call__(self, x) -> Scalar:  # pragma: no cover - abstract
        raise NotImplementedError

    def inv(self, x: Scalar) -> Scalar:  # pragma: no cover - abstract
        raise NotImplementedError

    def __repr__(self) -> str:
        return self.name


class Rationals(Field):
    name = "QQ"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def inv(self, x: Scalar) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"characteristic must be >= 2, got {p}")
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.characteristic) % self.characteristic
        return int(x) % self.characteristic

    def inv(self, x: Scalar) -> int:
        x = self(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.characteristic)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("GF", self.characteristic))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str | int | Field, p: int | None = None) -> Field:
    """Resolve ``"rational"``, ``"prime"`` (needs ``p``), an int or a Field."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, int):
        return GF(spec)
    if spec in ("rational", "QQ", "Q"):
        return QQ
    if spec == "prime":
        if p is None:
            raise ValueError("prime field requested without a characteristic")
        return GF(p)
    raise ValueError(f"unknown field spec {spec!r}")


# ---------------------------------------------------------------------------
# degrees and signs


class MultiDegree(NamedTuple):
    i: int = 0
    j: int = 0
    k: int = 0

    def __add__(self, other) -> "MultiDegree":  # type: ignore[override]
        return MultiDegree(self.i + other[0], self.j + other[1], self.k + other[2])

    def __neg__(self) -> "MultiDegree":
        return MultiDegree(-self.i, -self.j, -self.k)


def koszul_sign(ka: int, kb: int) -> int:
    """(-1)^(ka*kb): the sign for moving a k-homogeneous element past another."""
    return -1 if (ka * kb) % 2 else 1


def shuffle_sign(left_kdegs: list[int], right_kdegs: list[int]) -> int:
    """Sign of (a_1 x ... x a_n)(b_1 x ... x b_n) in the super tensor product.

    Every a_u has to travel past b_v for v < u, which contributes
    |a_u| * |b_v| to the exponent.
    """
    if len(left_kdegs) != len(right_kdegs):
        raise ValueError(
            f"shuffle_sign needs equal lengths, got {len(left_kdegs)} and {len(right_kdegs)}"
        )
    exponent = 0
    prefix = 0  # running sum of right degrees b_1..b_{u-1}
    for a, b in zip(left_kdegs, right_kdegs):
        exponent += a * prefix
        prefix += b
    return -1 if exponent % 2 else 1


# ---------------------------------------------------------------------------
# graded dimensions

GradedKey = tuple[int, int, int, int]


class GradedDims(Mapping):
    """Finitely supported map (s, t, j, k) -> positive dimension.

    Zero entries are dropped on construction so that equality is equality of
    supports with multiplicity.
    """

    __slots__ = ("_d",)

    def __init__(self, data: Mapping[GradedKey, int] | Iterable[tuple[GradedKey, int]] = ()):
        items = data.items() if isinstance(data, Mapping) else data
        d: dict[GradedKey, int] = {}
        for key, n in items:
            key = tuple(int(x) for x in key)
            if len(key) != 4:
                raise ValueError(f"graded key must have 4 entries, got {key}")
            d[key] = d.get(key, 0) + int(n)
        for key, n in list(d.items()):
            if n < 0:
                raise ValueError(f"negative dimension {n} at {key}")
            if n == 0:
                del d[key]
        self._d = d

    @classmethod
    def count(cls, keys: Iterable[GradedKey]) -> "GradedDims":
        d: dict[GradedKey, int] = {}
        for key in keys:
            key = tuple(key)
            d[key] = d.get(key, 0) + 1
        return cls(d)

    def __getitem__(self, key: GradedKey) -> int:
        return self._d.get(tuple(key), 0)

    def __iter__(self) -> Iterator[GradedKey]:
        return iter(sorted(self._d))

    def __len__(self) -> int:
        return len(self._d)

    def __contains__(self, key) -> bool:
        return tuple(key) in self._d

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedDims):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == {tuple(k): v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._d.items()))

    def __add__(self, other: "GradedDims") -> "GradedDims":
        d = dict(self._d)
        for key, n in other.items():
            d[key] = d.get(key, 0) + n
        return GradedDims(d)

    def __repr__(self) -> str:
        return f"GradedDims(total={self.total()}, support={len(self._d)})"

    def total(self) -> int:
        return sum(self._d.values())

    def shift(self, dj: int = 0, dk: int = 0) -> "GradedDims":
        """Apply <dj>[dk]: the entry at (j, k) moves to (j + dj, k + dk)."""
        return GradedDims({(s, t, j + dj, k + dk): n for (s, t, j, k), n in self._d.items()})

    def transpose(self) -> "GradedDims":
        """Swap the two vertices and negate both degrees (graded dual)."""
        return GradedDims({(t, s, -j, -k): n for (s, t, j, k), n in self._d.items()})

    def sectors(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (s, t, _, _), n in self._d.items():
            out[(s, t)] = out.get((s, t), 0) + n
        return out

    def diff(self, other: "GradedDims") -> list[tuple[GradedKey, int, int]]:
        """Entries where the two tables disagree, as (key, self, other)."""
        keys = sorted(set(self._d) | set(other.keys()))
        return [(k, self[k], other[k]) for k in keys if self[k] != other[k]]

    def as_rows(self) -> list[tuple[int, int, int, int, int]]:
        return [(*key, self._d[key]) for key in sorted(self._d)]


# ---------------------------------------------------------------------------
# matrices and elimination


class NotAComplexError(ArithmeticError):
    """Raised when a composite of two differentials is not zero."""

    def __init__(self, row: int, col: int, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"not a complex: (d_out . d_in)[{row}][{col}] = {value}")


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[tuple[Scalar, ...], ...]
    field: Field = QQ

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], field: Field = QQ, cols: int | None = None) -> "Matrix":
        table = tuple(tuple(field(x) for x in r) for r in rows)
        ncols = cols if cols is not None else (len(table[0]) if table else 0)
        for r in table:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(len(table), ncols, table, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        z = field(0)
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)), field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def from_columns(cls, columns: list[Mapping[int, Scalar]], rows: int, field: Field = QQ) -> "Matrix":
        """Build from sparse column images {row index: value}."""
        table = [[field(0)] * len(columns) for _ in range(rows)]
        for c, col in enumerate(columns):
            for r, v in col.items():
                table[r][c] = field(table[r][c] + v)
        return cls(rows, len(columns), tuple(tuple(r) for r in table), field)

    def __getitem__(self, rc: tuple[int, int]) -> Scalar:
        r, c = rc
        return self.entries[r][c]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        f = self.field
        out = []
        for r in self.entries:
            acc = [f(0)] * other.cols
            for a, orow in zip(r, other.entries):
                if a:
                    for c, b in enumerate(orow):
                        if b:
                            acc[c] = acc[c] + a * b
            out.append(tuple(f(x) for x in acc))
        return Matrix(self.rows, other.cols, tuple(out), f)

    def apply(self, vec: Iterable[Scalar]) -> tuple[Scalar, ...]:
        v = list(vec)
        f = self.field
        return tuple(f(sum((a * b for a, b in zip(r, v) if a and b), f(0))) for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)), self.field)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def over(self, field: Field) -> "Matrix":
        return Matrix.from_rows(self.entries, field, self.cols)

    def sparse_rows(self) -> list[dict[int, Scalar]]:
        return [{c: x for c, x in enumerate(r) if x} for r in self.entries]


class Echelon:
    """Incremental row echelon form over a field, on sparse dict vectors.

    Pivots are the smallest key of each stored row; stored rows are monic.
    Keys may be any totally ordered hashables (ints, words, ...).
    """

    def __init__(self, field: Field = QQ):
        self.field = field
        self.pivots: dict = {}

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping) -> dict:
        f = self.field
        r = {key: f(v) for key, v in vec.items() if f(v)}
        done: dict = {}
        while r:
            c = min(r)
            row = self.pivots.get(c)
            if row is None:
                done[c] = r.pop(c)
                continue
            factor = r[c]
            for key, v in row.items():
                nv = f(r.get(key, 0) - factor * v)
                if nv:
                    r[key] = nv
                else:
                    r.pop(key, None)
        return done

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; returns True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        inv = self.field.inv(r[c])
        self.pivots[c] = {key: self.field(v * inv) for key, v in r.items()}
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def sparse_rank(rows: Iterable[Mapping], field: Field = QQ) -> int:
    ech = Echelon(field)
    for r in rows:
        ech.add(r)
    return ech.rank


def rank_and_kernel(m: Matrix) -> tuple[int, list[tuple[Scalar, ...]]]:
    """Rank of ``m`` and a basis of its right kernel, by Gauss-Jordan elimination."""
    f = m.field
    rows = [list(r) for r in m.entries]
    pivot_cols: list[int] = []
    r = 0
    for c in range(m.cols):
        pr = next((i for i in range(r, m.rows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f(x * inv) for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [f(x - factor * y) if y else x for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == m.rows:
            break
    free = [c for c in range(m.cols) if c not in set(pivot_cols)]
    kernel = []
    for fc in free:
        v = [f(0)] * m.cols
        v[fc] = f(1)
        for row_idx, pc in enumerate(pivot_cols):
            v[pc] = f(-rows[row_idx][fc])
        kernel.append(tuple(v))
    return len(pivot_cols), kernel


def check_complex(d_in: Matrix, d_out: Matrix) -> None:
    """Raise NotAComplexError unless d_out . d_in == 0."""
    if d_out.cols != d_in.rows:
        raise ValueError(f"incompatible differentials: {d_out.rows}x{d_out.cols} after {d_in.rows}x{d_in.cols}")
    comp = d_out @ d_in
    for r, row in enumerate(comp.entries):
        for c, x in enumerate(row):
            if x:
                raise NotAComplexError(r, c, x)


def homology_dim(d_in: Matrix, d_out: Matrix) -> int:
    """dim ker(d_out) - rank(d_in) for a two-step complex  . -d_in-> V -d_out-> ."""
    check_complex(d_in, d_out)
    rank_out = sparse_rank(_columns(d_out), d_out.field)
    rank_in = sparse_rank(_columns(d_in), d_in.field)
    return d_out.cols - rank_out - rank_in


def _columns(m: Matrix) -> list[dict[int, Scalar]]:
    return [{r: m.entries[r][c] for r in range(m.rows) if m.entries[r][c]} for c in range(m.cols)]
