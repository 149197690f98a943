"""Dense exact matrices and Gaussian elimination over the rationals.

Entries are any exact ring elements supporting ``+``, ``-``, ``*`` and
truthiness (``Fraction`` or :class:`~qosp.scalar.LaurentPoly`).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

__all__ = ["RepMatrix", "rank", "nullspace", "RowSpace"]


class RepMatrix:
    """Immutable dense ``rows x cols`` matrix.

    ``zero`` is the additive identity of the entry ring; it is needed to build
    empty products and identity matrices without guessing the ring.
    """

    __slots__ = ("rows", "cols", "entries", "zero")

    def __init__(self, entries: Sequence[Sequence], zero, cols: int | None = None):
        rows_t = tuple(tuple(r) for r in entries)
        ncols = len(rows_t[0]) if rows_t else (cols or 0)
        if any(len(r) != ncols for r in rows_t):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(rows_t))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", rows_t)
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, name, value):
        raise AttributeError("RepMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int, zero) -> "RepMatrix":
        return cls([[zero] * cols for _ in range(rows)], zero, cols)

    @classmethod
    def identity(cls, dim: int, zero) -> "RepMatrix":
        one = zero + 1
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)], zero, dim)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["RepMatrix"]]) -> "RepMatrix":
        zero = blocks[0][0].zero
        out = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    if b.rows != h:
                        raise ValueError("block heights differ")
                    row.extend(b.entries[i])
                out.append(row)
        return cls(out, zero)

    @property
    def dim(self) -> int:
        if self.rows != self.cols:
            raise ValueError("not square")
        return self.rows

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RepMatrix":
        return RepMatrix([row[c0:c1] for row in self.entries[r0:r1]], self.zero, c1 - c0)

    def map(self, fn: Callable, zero=None) -> "RepMatrix":
        z = fn(self.zero) if zero is None else zero
        return RepMatrix([[fn(x) for x in row] for row in self.entries], z, self.cols)

    def _check(self, other: "RepMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        self._check(other)
        return RepMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                         self.zero, self.cols)

    def __sub__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        self._check(other)
        return RepMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                         self.zero, self.cols)

    def __neg__(self):
        return RepMatrix([[-a for a in r] for r in self.entries], self.zero, self.cols)

    def scale(self, c) -> "RepMatrix":
        if not c:
            return RepMatrix.zeros(self.rows, self.cols, self.zero)
        return RepMatrix([[c * a if a else a for a in r] for r in self.entries], self.zero, self.cols)

    def __mul__(self, c):
        if isinstance(c, RepMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.zero
        bcols = [[(k, x) for k, x in enumerate(col) if x] for col in zip(*other.entries)] \
            if other.rows else [[] for _ in range(other.cols)]
        out = []
        for row in self.entries:
            nz = {k: a for k, a in enumerate(row) if a}
            new = []
            for col in bcols:
                acc = zero
                for k, b in col:
                    a = nz.get(k)
                    if a is not None:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return RepMatrix(out, zero, other.cols)

    def is_zero(self) -> bool:
        return not any(a for r in self.entries for a in r)

    def nonzero_entries(self) -> list[tuple[int, int, object]]:
        return [(i, j, a) for i, r in enumerate(self.entries) for j, a in enumerate(r) if a]

    def is_scalar(self):
        """Return the scalar c if self == c * I, else None."""
        c = self.entries[0][0] if self.rows else self.zero
        for i, r in enumerate(self.entries):
            for j, a in enumerate(r):
                if i == j:
                    if a != c:
                        return None
                elif a:
                    return None
        return c

    def flat(self) -> list:
        return [a for r in self.entries for a in r]

    def __eq__(self, other):
        if not isinstance(other, RepMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"RepMatrix({self.rows}x{self.cols})"

    def pretty(self) -> str:
        cells = [[str(a) for a in r] for r in self.entries]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)


class RowSpace:
    """Incrementally maintained reduced row basis over the rationals.

    ``add`` returns True when the vector enlarged the span.
    """

    def __init__(self, width: int):
        self.width = width
        self._rows: dict[int, list[Fraction]] = {}  # pivot column -> row with 1 at pivot

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        if len(v) != self.width:
            raise ValueError("width mismatch")
        for piv in sorted(self._rows):
            c = v[piv]
            if c:
                row = self._rows[piv]
                for j in range(piv, self.width):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def add(self, vec: Sequence) -> bool:
        v = self.reduce(vec)
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        for p, row in self._rows.items():
            c = row[piv]
            if c:
                for j in range(piv, self.width):
                    if v[j]:
                        row[j] -= c * v[j]
        self._rows[piv] = v
        return True

    def basis(self) -> list[list[Fraction]]:
        return [list(self._rows[p]) for p in sorted(self._rows)]


def _echelon(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = 1 / rows[r][c]
        prow = [x * inv for x in rows[r]]
        rows[r] = prow
        nzc = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nzc:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(rows: Iterable[Sequence], ncols: int | None = None) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0]) if ncols is None else ncols
    return len(_echelon(mat, ncols)[1])


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column, in reduced form."""
    mat = [[Fraction(x) for x in row] for row in rows]
    red, pivots = _echelon(mat, ncols) if mat else ([], [])
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis
