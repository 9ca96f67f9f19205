"""Dense exact linear algebra over the fields of :mod:`cidade.fields`.

Matrices are numpy arrays whose dtype is chosen by the field (int64 for
finite fields, object/Fraction for QQ).  Rows are vectors throughout:
``nullspace(A)`` returns the rows x with ``A @ x = 0``.
"""

from __future__ import annotations

import numpy as np

from .fields import Field


def _inv(F: Field, a):
    return F.inv(a if F.dtype is object else int(a))


def rref(F: Field, A):
    """Reduced row echelon form and the pivot columns."""
    R = np.array(A, dtype=F.dtype, copy=True)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.scale_row(_inv(F, R[r, c]), R[r])
        others = np.flatnonzero(R[:, c] != 0)
        others = others[others != r]
        if others.size:
            R[others] = F.eliminate(R[others], R[others, c], R[r])
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(F: Field, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A, ncols=None):
    """Basis (as rows) of the right kernel of A."""
    A = np.asarray(A, dtype=F.dtype)
    n = A.shape[1] if A.ndim == 2 else ncols
    if A.size == 0:
        out = F.zeros((n, n))
        for i in range(n):
            out[i, i] = F.one
        return out
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in set(pivots)]
    out = F.zeros((len(free), n))
    for k, f in enumerate(free):
        out[k, f] = F.one
        for row, pc in enumerate(pivots):
            if R[row, f] != 0:
                out[k, pc] = F.neg(R[row, f] if F.dtype is object else int(R[row, f]))
    return out


def row_basis(F: Field, rows, ncols: int):
    """Echelon basis of the span of the given rows."""
    rows = np.asarray(rows, dtype=F.dtype)
    if rows.size == 0:
        return F.zeros((0, ncols))
    return rref(F, rows)[0]


def stack(F: Field, blocks, ncols: int):
    blocks = [np.asarray(b, dtype=F.dtype).reshape(-1, ncols) for b in blocks]
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return F.zeros((0, ncols))
    return np.vstack(blocks)


def span_rank(F: Field, *blocks, ncols: int) -> int:
    return rank(F, stack(F, blocks, ncols))


def in_span(F: Field, basis, v) -> bool:
    basis = np.asarray(basis, dtype=F.dtype)
    n = len(v)
    return span_rank(F, basis, [v], ncols=n) == span_rank(F, basis, ncols=n)


def coordinates(F: Field, basis, v):
    """Coefficients c with ``c @ basis == v`` for linearly independent rows;
    None if v is not in the span."""
    basis = np.asarray(basis, dtype=F.dtype)
    k, n = basis.shape
    aug = F.zeros((n, k + 1))
    aug[:, :k] = basis.T
    aug[:, k] = np.asarray(v, dtype=F.dtype)
    R, pivots = rref(F, aug)
    if k in pivots:
        return None
    out = F.zeros(k)
    for row, pc in enumerate(pivots):
        out[pc] = R[row, k]
    return out


def matmul(F: Field, A, B):
    """Exact product of two matrices over F."""
    A = np.asarray(A, dtype=F.dtype)
    B = np.asarray(B, dtype=F.dtype)
    m, k = A.shape
    k2, n = B.shape
    if k != k2:
        raise ValueError("shape mismatch")
    out = F.zeros((m, n))
    for j in range(k):
        col = A[:, j]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        out[nz] = F.add_arrays(out[nz], F.eliminate(F.zeros((nz.size, n)), _negate(F, col[nz]), B[j]))
    return out


def _negate(F: Field, v):
    if F.dtype is object:
        return -v
    return np.array([F.neg(int(a)) for a in v], dtype=F.dtype)


def is_zero(A) -> bool:
    A = np.asarray(A)
    return A.size == 0 or not np.any(A != 0)
