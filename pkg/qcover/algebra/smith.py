"""Smith normal form over the integers.

Works on numpy object arrays so every entry is an exact Python int. Only the
column transform V (with U M V = D) is tracked; it is what cokernel
membership needs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from qcover.config import SNF_MAX_ENTRY
from qcover.errors import OverflowGuard

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithResult:
    diagonal: tuple[int, ...]
    rank_free: int
    torsion: tuple[int, ...]
    column_transform: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    def format(self) -> str:
        parts = [f"Z^{self.rank_free}"] if self.rank_free else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " (+) ".join(parts) or "0"

    def contains_row(self, vector) -> tuple[bool, tuple[int, ...]]:
        """Whether ``vector`` lies in the row lattice of the reduced matrix.

        Returns the verdict and the transformed coordinates v V.
        """
        V = np.array(self.column_transform, dtype=object)
        w = tuple(int(c) for c in np.array(list(vector), dtype=object).dot(V)) if V.size else ()
        for c, d in zip(w, self.diagonal):
            if (d == 0 and c != 0) or (d != 0 and c % d != 0):
                return False, w
        return True, w


def _guard(A: np.ndarray, bound: int) -> None:
    if A.size and max(abs(int(v)) for v in A.flat) > bound:
        raise OverflowGuard(bound)


def smith_normal_form(M, max_entry: int = SNF_MAX_ENTRY) -> SmithResult:
    A = np.array(M, dtype=object)
    if A.ndim != 2:
        A = A.reshape(0, 0) if A.size == 0 else A.reshape(1, -1)
    rows, cols = A.shape
    V = np.identity(cols, dtype=int).astype(object)
    _guard(A, max_entry)

    t = 0
    while t < min(rows, cols):
        sub = A[t:, t:]
        nonzero = [(abs(int(sub[i, j])), i, j) for i in range(sub.shape[0])
                   for j in range(sub.shape[1]) if sub[i, j] != 0]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        A[[t, t + i]] = A[[t + i, t]]
        A[:, [t, t + j]] = A[:, [t + j, t]]
        V[:, [t, t + j]] = V[:, [t + j, t]]

        while True:
            p = A[t, t]
            # clear the pivot column and row by remainders
            for r in range(t + 1, rows):
                if A[r, t] != 0:
                    A[r] = A[r] - (A[r, t] // p) * A[t]
            for c in range(t + 1, cols):
                if A[t, c] != 0:
                    q = A[t, c] // p
                    A[:, c] = A[:, c] - q * A[:, t]
                    V[:, c] = V[:, c] - q * V[:, t]
            _guard(A, max_entry)
            col_rest = [(abs(int(A[r, t])), r) for r in range(t + 1, rows) if A[r, t] != 0]
            row_rest = [(abs(int(A[t, c])), c) for c in range(t + 1, cols) if A[t, c] != 0]
            if col_rest:
                _, r = min(col_rest)
                A[[t, r]] = A[[r, t]]
                continue
            if row_rest:
                _, c = min(row_rest)
                A[:, [t, c]] = A[:, [c, t]]
                V[:, [t, c]] = V[:, [c, t]]
                continue
            # divisibility: fold a bad row into the pivot row and go again
            bad = next((r for r in range(t + 1, rows) for c in range(t + 1, cols)
                        if A[r, c] % p != 0), None)
            if bad is None:
                break
            A[t] = A[t] + A[bad]
        if A[t, t] < 0:
            A[t] = -A[t]
        t += 1

    diagonal = [int(A[i, i]) for i in range(min(rows, cols))] + [0] * max(0, cols - rows)
    rank_free = sum(1 for d in diagonal if d == 0)
    torsion = tuple(d for d in diagonal if d > 1)
    logger.debug("SNF of %dx%d matrix: %s", rows, cols, diagonal)
    return SmithResult(tuple(diagonal), rank_free, torsion,
                       tuple(tuple(int(v) for v in row) for row in V))
