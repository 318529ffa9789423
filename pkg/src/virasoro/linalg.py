"""Gaussian elimination over Q.

Matrices are lists of rows of :class:`Fraction`.  Right-hand sides may be
any values closed under ``+`` and rational scaling (e.g. ``CentralScalar``),
which is what the exchange-constraint solver needs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int, rhs: Sequence | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots, rhs)`` where ``rows`` holds only the nonzero
    rows and ``rhs`` is ``None`` when none was given.  Rows of the input whose
    coefficient part reduces to zero keep their rhs entries at the end of the
    returned rhs list so callers can test consistency.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    b = list(rhs) if rhs is not None else None
    pivots = []
    r = 0
    nrows = len(mat)
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][col]), None)
        if piv is None:
            continue
        if piv != r:
            mat[r], mat[piv] = mat[piv], mat[r]
            if b is not None:
                b[r], b[piv] = b[piv], b[r]
        inv = 1 / mat[r][col]
        if inv != 1:
            mat[r] = [x * inv for x in mat[r]]
            if b is not None:
                b[r] = b[r] * inv
        for i in range(nrows):
            if i != r and mat[i][col]:
                f = mat[i][col]
                ri = mat[i]
                rr = mat[r]
                for k in range(col, ncols):
                    if rr[k]:
                        ri[k] -= f * rr[k]
                if b is not None:
                    b[i] = b[i] - b[r] * f
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots, (b if b is not None else None)


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    red, pivots, _ = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], ncols: int, rhs: Sequence, zero=Fraction(0)):
    """One solution of A x = b with free variables set to ``zero``, or None."""
    red, pivots, b = rref(rows, ncols, rhs)
    if any(b[i] for i in range(len(pivots), len(b))):
        return None
    x = [zero] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = b[i]
    return x
