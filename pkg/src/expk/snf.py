"""Dense integer matrices and certified Smith normal form.

Entries are Python ints, so there is no overflow. The reduction always
pivots on a smallest-magnitude nonzero entry of the remaining block,
which keeps coefficient growth small on boundary matrices.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class IntMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Iterable[Sequence[int]] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = [[0] * cols for _ in range(rows)]
        else:
            self.data = [list(map(int, row)) for row in data]
            if len(self.data) != rows or any(len(row) != cols for row in self.data):
                raise ValueError(f"entries do not form a {rows}x{cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        ncols = len(rows[0]) if rows else (cols or 0)
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = 1
        return m

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Sequence[int]) -> IntMatrix:
        m = cls(rows, cols)
        for i, d in enumerate(diag):
            m.data[i][i] = d
        return m

    def copy(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, self.data)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.data[ij[0]][ij[1]]

    def __setitem__(self, ij: tuple[int, int], value: int) -> None:
        self.data[ij[0]][ij[1]] = value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols}, {self.data})"

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = IntMatrix(self.rows, other.cols)
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        for i, row in enumerate(self.data):
            nz = [(j, a) for j, a in enumerate(row) if a]
            if not nz:
                continue
            out.data[i] = [sum(a * col[j] for j, a in nz) for col in ocols]
        return out

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, vec) if a) for row in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.data)

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.data]

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.data]


def det(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = M.to_list()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


@dataclass
class SNFResult:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def verify(self, M: IntMatrix) -> bool:
        """Exact certificate check: ``U M V == D``, unimodular ``U, V``, divisibility chain."""
        if self.U @ M @ self.V != self.D:
            return False
        if abs(det(self.U)) != 1 or abs(det(self.V)) != 1:
            return False
        for i in range(self.D.rows):
            for j in range(self.D.cols):
                if i != j and self.D[i, j]:
                    return False
        diag = self.diagonal
        if any(d < 0 for d in diag):
            return False
        r = self.rank
        if any(diag[i] == 0 for i in range(r)) or any(diag[i] for i in range(r, len(diag))):
            return False
        return all(diag[i + 1] % diag[i] == 0 for i in range(r - 1))

    def digest(self) -> str:
        payload = json.dumps([self.U.data, self.D.data, self.V.data], separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()


def smith_normal_form(M: IntMatrix) -> SNFResult:
    """``U M V = D`` with ``U``, ``V`` unimodular and ``d_1 | d_2 | ...``."""
    A = M.to_list()
    m, n = M.rows, M.cols
    U = IntMatrix.identity(m).data
    V = IntMatrix.identity(n).data

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if best is None:
            break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return SNFResult(IntMatrix(m, m, U), IntMatrix(m, n, A), IntMatrix(n, n, V))
