"""Dense GF(2) linear algebra on bit-packed rows.

Each row of a matrix is one Python int; column j is bit j.  Row reduction is
word-parallel via XOR, which is fast enough for the chain complexes handled
here (thousands of cells) without any third-party dependency.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


class BitMatrix:
    """rows x cols matrix over GF(2); row i is the int `data[i]`."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[Sequence[int]] = None) -> None:
        self.rows = rows
        self.cols = cols
        self.data: list[int] = list(data) if data is not None else [0] * rows
        if len(self.data) != rows:
            raise ValueError(f"expected {rows} rows, got {len(self.data)}")

    def get(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def set(self, i: int, j: int, value: int) -> None:
        if value & 1:
            self.data[i] |= 1 << j
        else:
            self.data[i] &= ~(1 << j)

    def row(self, i: int) -> int:
        return self.data[i]

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, list(self.data))

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            bit = 1 << i
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= bit
                r &= r - 1
        return BitMatrix(self.cols, self.rows, out)

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.rows}")
        out = [0] * self.rows
        for i, r in enumerate(self.data):
            acc = 0
            rr = r
            while rr:
                k = (rr & -rr).bit_length() - 1
                acc ^= other.data[k]
                rr &= rr - 1
            out[i] = acc
        return BitMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.data)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    @classmethod
    def from_lists(cls, rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> "BitMatrix":
        data = []
        width = 0
        for row in rows:
            acc = 0
            n = 0
            for j, x in enumerate(row):
                if x & 1:
                    acc |= 1 << j
                n = j + 1
            width = max(width, n)
            data.append(acc)
        return cls(len(data), cols if cols is not None else width, data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def rank_gf2(matrix: BitMatrix) -> int:
    """Rank by in-place elimination on a copy."""
    rows = [r for r in matrix.data if r]
    rank = 0
    while rows:
        pivot_row = min(rows, key=lambda r: (r & -r).bit_length())
        pivot_bit = pivot_row & -pivot_row
        rank += 1
        nxt = []
        for r in rows:
            if r is pivot_row:
                continue
            if r & pivot_bit:
                r ^= pivot_row
            if r:
                nxt.append(r)
        rows = nxt
    return rank


class Gf2Solver:
    """Row-reduce A once, then answer `solve(b)` queries for x with x·A = b.

    Treats rows of A as the generating set: a query asks for a row vector x
    such that x A = b.  Factoring keeps E with R = E A in row-reduced form so
    each query costs one sweep over the pivots.
    """

    def __init__(self, matrix: BitMatrix) -> None:
        self.matrix = matrix
        n = matrix.rows
        # Work on [A | E] with E starting as identity over the row index.
        work = list(matrix.data)
        ident = [1 << i for i in range(n)]
        pivot_cols: list[int] = []
        pivot_rows: list[int] = []  # indices into work, in pivot order
        used = [False] * n
        col = 0
        cols = matrix.cols
        while col < cols and len(pivot_cols) < n:
            sel = -1
            for idx in range(n):
                if not used[idx] and (work[idx] >> col) & 1:
                    sel = idx
                    break
            if sel == -1:
                col += 1
                continue
            used[sel] = True
            prow, erow = work[sel], ident[sel]
            for idx in range(n):
                if idx != sel and (work[idx] >> col) & 1:
                    work[idx] ^= prow
                    ident[idx] ^= erow
            pivot_cols.append(col)
            pivot_rows.append(sel)
            col += 1
        self.pivot_cols = pivot_cols
        # Rows of R (unit in their pivot column) and the matching rows of E;
        # read after all eliminations so every row is fully reduced.
        self.reduced = [work[i] for i in pivot_rows]
        self.reduced_e = [ident[i] for i in pivot_rows]
        self.rank = len(pivot_cols)

    def solve(self, b: int) -> Optional[int]:
        """Return x (bitmask over matrix rows) with x·A = b, or None."""
        residue = b
        x = 0
        for (pcol, prow, erow) in zip(self.pivot_cols, self.reduced, self.reduced_e):
            if (residue >> pcol) & 1:
                residue ^= prow
                x ^= erow
        return x if residue == 0 else None

    def in_row_space(self, b: int) -> bool:
        return self.solve(b) is not None


def kernel_basis(matrix: BitMatrix) -> list[int]:
    """Basis of {x : x·A = 0}, x as bitmasks over rows of A."""
    n = matrix.rows
    work = list(matrix.data)
    ident = [1 << i for i in range(n)]
    # Gaussian elimination tracking row operations; kernel rows are the fully
    # zeroed work rows.
    pivot_of_col: dict[int, int] = {}
    for i in range(n):
        r = work[i]
        while r:
            c = (r & -r).bit_length() - 1
            p = pivot_of_col.get(c)
            if p is None:
                pivot_of_col[c] = i
                break
            work[i] ^= work[p]
            ident[i] ^= ident[p]
            r = work[i]
    return [ident[i] for i in range(n) if work[i] == 0]
