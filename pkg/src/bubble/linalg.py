"""Dense exact matrices: fraction-free determinants and field ranks."""

from __future__ import annotations

import os
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction

from .scalars import AlgebraicScalar, LaurentPoly

DEFAULT_MAX_SYMBOLIC_DIM = 64


def max_symbolic_dim() -> int:
    """Largest dimension for a direct symbolic determinant (env ``BUBBLE_MAX_SYMBOLIC_DIM``)."""
    raw = os.environ.get("BUBBLE_MAX_SYMBOLIC_DIM")
    if raw is None:
        return DEFAULT_MAX_SYMBOLIC_DIM
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"BUBBLE_MAX_SYMBOLIC_DIM must be an integer, got {raw!r}") from None


class SymbolicDimensionError(ValueError):
    """Raised when a symbolic determinant is requested above the size guard."""


class ExactMatrix:
    """Row-major dense matrix with homogeneous exact entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Sequence], cols: int | None = None):
        data = tuple(tuple(r) for r in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self.entries = data

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> ExactMatrix:
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def block_diag(cls, blocks: Sequence[ExactMatrix], zero=0) -> ExactMatrix:
        size = sum(b.rows for b in blocks)
        out = [[zero] * size for _ in range(size)]
        off = 0
        for b in blocks:
            if b.rows != b.cols:
                raise ValueError("block_diag needs square blocks")
            for i, row in enumerate(b.entries):
                out[off + i][off:off + b.cols] = row
            off += b.rows
        return cls(out, size)

    def kron(self, other: ExactMatrix) -> ExactMatrix:
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append([a * b for a in ra for b in rb])
        return ExactMatrix(out, self.cols * other.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.entries == other.entries

    __hash__ = None

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = []
        for r in self.entries:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = a * b + acc
                row.append(acc)
            out.append(row)
        return ExactMatrix(out, other.cols)

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(list(zip(*self.entries)) if self.rows else [], self.rows)

    def map(self, f: Callable) -> ExactMatrix:
        return ExactMatrix([[f(x) for x in r] for r in self.entries], self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _exact_div(a, b):
    if isinstance(b, int) and b == 1:
        return a
    if isinstance(a, LaurentPoly):
        return a.exact_div(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in Bareiss step")
        return q
    return a / b


def diagonal_blocks(M: ExactMatrix) -> list[tuple[int, int]]:
    """Maximal contiguous diagonal blocks ``[start, stop)`` of a square matrix.

    Entries outside the returned blocks are all zero.
    """
    n = M.rows
    lo = [n] * n
    hi = [-1] * n
    for i, row in enumerate(M.entries):
        for j, x in enumerate(row):
            if x:
                lo[i] = min(lo[i], j, i)
                hi[i] = max(hi[i], j, i)
                lo[j] = min(lo[j], i, j)
                hi[j] = max(hi[j], i, j)
    out = []
    start = 0
    reach = -1
    for k in range(n):
        reach = max(reach, hi[k], k)
        if reach == k:
            out.append((start, k + 1))
            start = k + 1
    return out


def _principal(M: ExactMatrix, start: int, stop: int) -> ExactMatrix:
    return ExactMatrix([r[start:stop] for r in M.entries[start:stop]], stop - start)


def determinant(M: ExactMatrix):
    """Determinant by fraction-free (Bareiss) elimination.

    Works over integers, rationals, number fields and Laurent polynomials.
    Pivots are the first nonzero entry scanning down the current column.
    A block-diagonal matrix is split into its diagonal blocks first.
    Symbolic (Laurent) matrices above ``max_symbolic_dim()`` are refused.
    """
    if not M.is_square():
        raise ValueError(f"determinant of non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return 1
    if n > max_symbolic_dim() and any(isinstance(x, LaurentPoly) for r in M.entries for x in r):
        raise SymbolicDimensionError(
            f"symbolic determinant of dimension {n} exceeds the guard {max_symbolic_dim()}; "
            "use the factorized formula or specialise parameters first"
        )
    parts = diagonal_blocks(M)
    if len(parts) > 1:
        out = 1
        for start, stop in parts:
            out = _bareiss(_principal(M, start, stop)) * out
        return out
    return _bareiss(M)


def _bareiss(M: ExactMatrix):
    n = M.rows
    a = [list(r) for r in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0] if not isinstance(a[0][0], int) else 0
        pivot = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            lead = rowi[k]
            for j in range(k + 1, n):
                x = rowi[j]
                if lead:
                    y = rowk[j]
                    val = pivot * x - lead * y if y else pivot * x
                elif x:
                    val = pivot * x
                else:
                    continue
                rowi[j] = _exact_div(val, prev)
            rowi[k] = 0
        prev = pivot
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def _to_field(x):
    if isinstance(x, LaurentPoly):
        raise TypeError("rank needs field entries: specialize parameters first")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, AlgebraicScalar)):
        return x
    raise TypeError(f"unsupported entry type {type(x).__name__}")


def rank(M: ExactMatrix) -> int:
    """Rank by Gaussian elimination over the entries' field.

    Columns are scanned left to right; the pivot is the first nonzero entry
    at or below the current row. Zero entries are skipped, so block-diagonal
    matrices cost little beyond their blocks.
    """
    a = [[_to_field(x) for x in r] for r in M.entries]
    nrows, ncols = M.rows, M.cols
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        prow = a[r]
        inv = 1 / prow[c]
        support = [j for j in range(c + 1, ncols) if prow[j]]
        for i in range(r + 1, nrows):
            row = a[i]
            x = row[c]
            if not x:
                continue
            f = x * inv
            for j in support:
                row[j] = row[j] - f * prow[j]
            row[c] = 0 * x
        r += 1
    return r
