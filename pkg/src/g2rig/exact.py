"""Exact rational matrices with fraction-free rank computation.

Matrices are stored sparsely as ``{row: {col: value}}`` with ``int`` or
``Fraction`` entries. Rank is computed by Bareiss elimination over Python
integers after clearing denominators row by row. Before elimination the
matrix is split into the connected components of its row/column incidence
graph; every coboundary matrix of a graded algebra is block diagonal up to
permutation, so this keeps the dense blocks small.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = int | Fraction

PIVOT_ORDERS = ("natural", "reversed")


def _normalize(value) -> Scalar:
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, int):
        return value
    return Fraction(value)


class ExactMatrix:
    """Sparse matrix of exact rationals."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: dict[int, dict[int, Scalar]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        self._rows: dict[int, dict[int, Scalar]] = {}
        for i, row in (rows or {}).items():
            if not 0 <= i < nrows:
                raise IndexError(f"row {i} out of range for {nrows} rows")
            clean = {}
            for j, v in row.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range for {ncols} columns")
                if v:
                    clean[j] = _normalize(v)
            if clean:
                self._rows[i] = clean

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: int | None = None) -> ExactMatrix:
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged dense matrix")
            rows[i] = {j: v for j, v in enumerate(row) if v}
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict[int, Scalar]]) -> ExactMatrix:
        rows: dict[int, dict[int, Scalar]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> ExactMatrix:
        return cls(nrows, ncols)

    # -- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(key)
        return self._rows.get(i, {}).get(j, 0)

    def row(self, i: int) -> dict[int, Scalar]:
        return dict(self._rows.get(i, {}))

    def items(self) -> Iterable[tuple[int, int, Scalar]]:
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def column(self, j: int) -> dict[int, Scalar]:
        return {i: r[j] for i, r in self._rows.items() if j in r}

    def to_dense(self) -> list[list[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    # -- algebra ----------------------------------------------------------

    def transpose(self) -> ExactMatrix:
        rows: dict[int, dict[int, Scalar]] = {}
        for i, row in self._rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return ExactMatrix(self.ncols, self.nrows, rows)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out: dict[int, dict[int, Scalar]] = {}
        for i, row in self._rows.items():
            acc: dict[int, Scalar] = {}
            for k, a in row.items():
                brow = other._rows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return ExactMatrix(self.nrows, other.ncols, out)

    def apply(self, vector: Sequence) -> list[Scalar]:
        if len(vector) != self.ncols:
            raise ValueError(f"vector length {len(vector)} != {self.ncols}")
        out: list[Scalar] = [0] * self.nrows
        for i, row in self._rows.items():
            out[i] = _normalize(sum(v * vector[j] for j, v in row.items()))
        return out

    def hstack(self, other: ExactMatrix) -> ExactMatrix:
        if self.nrows != other.nrows:
            raise ValueError("hstack needs equal row counts")
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                tgt[j + self.ncols] = v
        return ExactMatrix(self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.ncols:
            raise ValueError("vstack needs equal column counts")
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            rows[i + self.nrows] = dict(r)
        return ExactMatrix(self.nrows + other.nrows, self.ncols, rows)

    # -- rank -------------------------------------------------------------

    def rank(self, pivot_order: str = "natural") -> int:
        """Exact rank; ``pivot_order`` selects the elimination order per block."""
        if pivot_order not in PIVOT_ORDERS:
            raise ValueError(f"unknown pivot order {pivot_order!r}")
        rows = _integer_rows(self._rows.values())
        total = 0
        for block_rows, block_cols in _components(rows):
            if pivot_order == "reversed":
                block_rows = block_rows[::-1]
                block_cols = block_cols[::-1]
            col_pos = {c: k for k, c in enumerate(block_cols)}
            dense = []
            for r in block_rows:
                line = [0] * len(block_cols)
                for c, v in r.items():
                    line[col_pos[c]] = v
                dense.append(line)
            total += bareiss_rank(dense)
        return total

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def kernel_basis(self) -> list[list[Fraction]]:
        """Basis of the right kernel, one vector per free column of the RREF."""
        dense = [[Fraction(x) for x in row] for row in self.to_dense()]
        reduced, pivots = rref(dense, self.ncols)
        return nullspace_from_rref(reduced, pivots, self.ncols)


def _integer_rows(rows: Iterable[dict[int, Scalar]]) -> list[dict[int, int]]:
    """Scale rows to primitive integer rows and drop duplicates up to sign."""
    seen = set()
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            if isinstance(v, Fraction):
                den = math.lcm(den, v.denominator)
        ints = {c: int(v * den) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        first = ints[min(ints)]
        if first < 0:
            g = -g
        ints = {c: v // g for c, v in ints.items()}
        key = tuple(sorted(ints.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(ints)
    return out


def _components(rows: list[dict[int, int]]) -> list[tuple[list[dict[int, int]], list[int]]]:
    """Split rows into blocks that share no column; deterministic order."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        cols = list(row)
        for c in cols:
            parent.setdefault(c, c)
        root = find(cols[0])
        for c in cols[1:]:
            rc = find(c)
            if rc != root:
                if rc < root:
                    root, rc = rc, root
                parent[rc] = root
    groups: dict[int, tuple[list, set]] = {}
    for row in rows:
        root = find(next(iter(row)))
        bucket = groups.setdefault(root, ([], set()))
        bucket[0].append(row)
        bucket[1].update(row)
    return [(groups[r][0], sorted(groups[r][1])) for r in sorted(groups)]


def bareiss_rank(matrix: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Works in place on ``matrix``. Every intermediate entry is a minor of the
    input, so the division by the previous pivot is exact.
    """
    nrows = len(matrix)
    if nrows == 0:
        return 0
    ncols = len(matrix[0])
    prev = 1
    r = 0
    for c in range(ncols):
        p = r
        while p < nrows and matrix[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        matrix[r], matrix[p] = matrix[p], matrix[r]
        prow = matrix[r]
        piv = prow[c]
        tail = prow[c + 1:]
        for i in range(r + 1, nrows):
            row = matrix[i]
            a = row[c]
            if a:
                row[c + 1:] = [(piv * x - a * y) // prev for x, y in zip(row[c + 1:], tail)]
                row[c] = 0
            elif prev == piv:
                continue
            else:
                row[c + 1:] = [piv * x // prev for x in row[c + 1:]]
        prev = piv
        r += 1
        if r == nrows:
            break
    return r


def rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals (zero rows dropped)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace_from_rref(reduced: list[list[Fraction]], pivots: list[int], ncols: int) -> list[list[Fraction]]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            vec[pc] = -row[free]
        basis.append(vec)
    return basis
