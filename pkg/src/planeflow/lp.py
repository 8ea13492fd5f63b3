"""A small exact simplex for ``max c.x  s.t.  A x = b, x >= 0``.

Tableau entries are Python ints as long as every pivot divides exactly,
which is always the case for network matrices with integral data, and
fall back to :class:`fractions.Fraction` otherwise.  Bland's rule rules out
cycling.  Only meant for oracle-sized problems.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["ExactLP", "Unbounded", "LPInfeasible"]


class Unbounded(Exception):
    pass


class LPInfeasible(Exception):
    pass


def _div(x, p):
    if isinstance(x, int) and isinstance(p, int):
        q, r = divmod(x, p)
        return q if r == 0 else Fraction(x, p)
    return x / p


def _pivot(T: list[list], basis: list[int], r: int, c: int) -> None:
    row = T[r]
    p = row[c]
    if p == -1:
        row = [-x for x in row]
    elif p != 1:
        row = [_div(x, p) for x in row]
    T[r] = row
    for i in range(len(T)):
        if i == r:
            continue
        f = T[i][c]
        if f:
            T[i] = [a - f * b for a, b in zip(T[i], row)]
    basis[r] = c


def _run(T: list[list], basis: list[int], ncols: int) -> None:
    """Simplex iterations on T whose last row holds the reduced costs."""
    obj = T[-1]
    while True:
        obj = T[-1]
        c = next((j for j in range(ncols) if obj[j] < 0), -1)
        if c < 0:
            return
        best = None
        for i in range(len(T) - 1):
            a = T[i][c]
            if a > 0:
                ratio = _div(T[i][-1], a)
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise Unbounded()
        _pivot(T, basis, best[1], c)


class ExactLP:
    """Feasible region ``{x >= 0 : A x = b}``, solved once, optimized repeatedly."""

    def __init__(self, A: Sequence[Sequence], b: Sequence) -> None:
        self.ncols = len(A[0]) if A else 0
        rows = []
        for a_row, bi in zip(A, b):
            r = list(a_row) + [bi]
            if bi < 0:
                r = [-x for x in r]
            rows.append(r)
        m, n = len(rows), self.ncols
        # reuse unit columns as the starting basis where possible
        basis = [-1] * m
        for j in range(n):
            col = [rows[i][j] for i in range(m)]
            nz = [i for i in range(m) if col[i] != 0]
            if len(nz) == 1 and col[nz[0]] == 1 and basis[nz[0]] < 0:
                basis[nz[0]] = j
        art = [i for i in range(m) if basis[i] < 0]
        T = []
        for i, r in enumerate(rows):
            extra = [1 if i == ai else 0 for ai in art]
            T.append(r[:n] + extra + [r[n]])
        for q, i in enumerate(art):
            basis[i] = n + q
        total = n + len(art)
        obj = [0] * n + [1] * len(art) + [0]
        for i in art:
            obj = [o - x for o, x in zip(obj, T[i])]
        T.append(obj)
        _run(T, basis, total)
        if T[-1][-1] != 0:
            raise LPInfeasible()
        T.pop()
        # drive zero-level artificials out, dropping redundant rows
        i = 0
        while i < len(T):
            if basis[i] >= n:
                c = next((j for j in range(n) if T[i][j] != 0), -1)
                if c < 0:
                    T.pop(i)
                    basis.pop(i)
                    continue
                _pivot(T, basis, i, c)
            i += 1
        self.T = [r[:n] + [r[-1]] for r in T]
        self.basis = basis

    def maximize(self, c: Sequence) -> tuple[object, list]:
        """Optimal value and a primal solution; raises :class:`Unbounded`."""
        n = self.ncols
        T = [list(r) for r in self.T]
        basis = list(self.basis)
        obj = [-x for x in c] + [0]
        for i, j in enumerate(basis):
            if c[j]:
                obj = [o + c[j] * x for o, x in zip(obj, T[i])]
        T.append(obj)
        _run(T, basis, n)
        x = [0] * n
        for i, j in enumerate(basis):
            x[j] = T[i][-1]
        return T[-1][-1], x

    def minimize(self, c: Sequence) -> tuple[object, list]:
        v, x = self.maximize([-a for a in c])
        return -v, x
