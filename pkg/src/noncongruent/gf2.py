"""Dense linear algebra over F2 on bit-packed rows.

A :class:`BitMatrix` keeps its rows as a read-only ``(rows, words)`` uint64
array; column ``j`` lives in word ``j // 64`` at bit ``j % 64``. Rank goes
through the compiled kernel; echelon-form work (nullspace, solve, inverse)
runs on Python ints because the matrices involved are tiny.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NotInvertible

Vector = tuple[int, ...]


def _words(cols: int) -> int:
    return max(1, (cols + 63) // 64)


def _pack_int(value: int, nw: int) -> list[int]:
    return [(value >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(nw)]


@dataclass(frozen=True, eq=False)
class BitMatrix:
    rows: int
    cols: int
    data: np.ndarray

    def __post_init__(self):
        if self.data.shape != (self.rows, _words(self.cols)) or self.data.dtype != np.uint64:
            raise DimensionMismatch("packed data does not match the declared shape")
        self.data.flags.writeable = False

    # -- construction

    @classmethod
    def from_int_rows(cls, row_ints: Sequence[int], cols: int) -> "BitMatrix":
        nw = _words(cols)
        mask = (1 << cols) - 1
        data = np.array([_pack_int(r & mask, nw) for r in row_ints],
                        dtype=np.uint64).reshape(len(row_ints), nw)
        return cls(len(row_ints), cols, data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        ints = []
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
            ints.append(sum((int(b) & 1) << j for j, b in enumerate(row)))
        return cls.from_int_rows(ints, cols)

    @classmethod
    def from_array(cls, arr) -> "BitMatrix":
        arr = np.asarray(arr)
        return cls.from_rows(arr.tolist(), arr.shape[1] if arr.ndim == 2 else 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls.from_int_rows([1 << i for i in range(k)], k)

    @classmethod
    def diagonal(cls, bits: Sequence[int]) -> "BitMatrix":
        return cls.from_int_rows([(b & 1) << i for i, b in enumerate(bits)], len(bits))

    # -- access

    def row_ints(self) -> list[int]:
        out = []
        for r in range(self.rows):
            v = 0
            for k, w in enumerate(self.data[r]):
                v |= int(w) << (64 * k)
            out.append(v)
        return out

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return int(self.data[i, j // 64] >> np.uint64(j % 64)) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, v in enumerate(self.row_ints()):
            for j in range(self.cols):
                out[i, j] = (v >> j) & 1
        return out

    def tolist(self) -> list[list[int]]:
        return self.to_array().tolist()

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(b) for b in row) for row in self.tolist())
        return f"BitMatrix({self.rows}x{self.cols}: {body})"

    # -- algebra

    def transpose(self) -> "BitMatrix":
        rows = self.row_ints()
        cols = [sum(((rows[i] >> j) & 1) << i for i in range(self.rows))
                for j in range(self.cols)]
        return BitMatrix.from_int_rows(cols, self.rows)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return BitMatrix(self.rows, self.cols, self.data ^ other.data)

    __sub__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        brows = other.row_ints()
        out = []
        for v in self.row_ints():
            acc = 0
            j = 0
            while v:
                if v & 1:
                    acc ^= brows[j]
                v >>= 1
                j += 1
            out.append(acc)
        return BitMatrix.from_int_rows(out, other.cols)

    def apply(self, x: Sequence[int]) -> Vector:
        """Matrix-vector product M x."""
        if len(x) != self.cols:
            raise DimensionMismatch("vector length differs from column count")
        xv = _vec_to_int(x)
        return tuple(bin(r & xv).count("1") & 1 for r in self.row_ints())


def _vec_to_int(x: Sequence[int]) -> int:
    return sum((int(b) & 1) << j for j, b in enumerate(x))


def _int_to_vec(v: int, n: int) -> Vector:
    return tuple((v >> j) & 1 for j in range(n))


def _rref(row_ints: list[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = list(row_ints)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        bit = 1 << c
        piv = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M: BitMatrix) -> int:
    """Row rank over F2."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return kernels.rank_words(M.data)


def nullspace(M: BitMatrix) -> list[Vector]:
    """Basis of {v : Mv = 0}, one vector per free column in ascending order.

    Each basis vector sets its free column to 1, every other free column to 0,
    and the pivot coordinates from the reduced echelon form.
    """
    rows, pivots = _rref(M.row_ints(), M.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(_int_to_vec(v, M.cols))
    return basis


def solve(M: BitMatrix, b: Sequence[int]) -> Vector | None:
    """Some x with Mx = b (free variables zero), or None if inconsistent."""
    if len(b) != M.rows:
        raise DimensionMismatch(f"rhs length {len(b)} != rows {M.rows}")
    aug = [r | ((int(bi) & 1) << M.cols) for r, bi in zip(M.row_ints(), b)]
    rows, pivots = _rref(aug, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        return None
    x = 0
    for r, p in zip(rows, pivots):
        if (r >> M.cols) & 1:
            x |= 1 << p
    return _int_to_vec(x, M.cols)


def inverse(M: BitMatrix) -> BitMatrix:
    if M.rows != M.cols:
        raise NotInvertible("matrix is not square")
    k = M.rows
    aug = [r | (1 << (k + i)) for i, r in enumerate(M.row_ints())]
    rows, pivots = _rref(aug, k)
    if len(pivots) != k:
        raise NotInvertible("matrix is singular over F2")
    return BitMatrix.from_int_rows([r >> k for r in rows], k)


def block_assemble(blocks: Sequence[Sequence[BitMatrix]]) -> BitMatrix:
    """Concatenate a 2x2 (or any rectangular) grid of conformable blocks."""
    row_heights = [row[0].rows for row in blocks]
    col_widths = [b.cols for b in blocks[0]]
    for row, h in zip(blocks, row_heights):
        if len(row) != len(col_widths):
            raise DimensionMismatch("ragged block grid")
        for b, w in zip(row, col_widths):
            if b.rows != h or b.cols != w:
                raise DimensionMismatch("blocks are not conformable")
    out = []
    for row in blocks:
        parts = [b.row_ints() for b in row]
        for i in range(row[0].rows):
            v, shift = 0, 0
            for part, w in zip(parts, col_widths):
                v |= part[i] << shift
                shift += w
            out.append(v)
    return BitMatrix.from_int_rows(out, sum(col_widths))


def schur_rank(C1: BitMatrix, C2: BitMatrix, C3: BitMatrix, C4: BitMatrix) -> int:
    """rank [[C1, C2], [C3, C4]] via rank(C1) + rank(C4 - C3 C1^-1 C2).

    C1 must be square and invertible.
    """
    if C2.rows != C1.rows or C3.cols != C1.cols or C4.rows != C3.rows or C4.cols != C2.cols:
        raise DimensionMismatch("blocks are not conformable")
    inv = inverse(C1)
    return C1.rows + rank(C4 - C3 @ inv @ C2)
