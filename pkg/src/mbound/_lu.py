"""Hand-rolled dense LU with partial pivoting for desk-scale matrices.

Everything downstream (determinants, inverses, leading principal minors,
M-matrix classification) funnels through this one factorization so the
pivoting / tolerance policy lives in a single place.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularMatrixError

# |pivot| <= PIVOT_REL * max|entry| declares the matrix singular
PIVOT_REL = 1e-13


def _pivot_floor(a: np.ndarray) -> float:
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    return PIVOT_REL * max(scale, 1e-300)


def lu_factor(a: np.ndarray):
    """Factor PA = LU in place; returns (lu, perm_sign, singular).

    ``lu`` packs L (unit lower, implicit diagonal) and U.  ``singular`` is
    True when some pivot falls below the relative floor; factorization still
    completes with whatever pivots exist so determinant() can return 0.
    """
    n = a.shape[0]
    lu = a.astype(np.float64, copy=True)
    sign = 1.0
    floor = _pivot_floor(a)
    singular = False
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= floor:
            singular = True
            continue
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            sign = -sign
        piv = lu[k, k]
        lu[k + 1:, k] /= piv
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, sign, singular


def determinant(a: np.ndarray) -> float:
    lu, sign, singular = lu_factor(a)
    if singular:
        return 0.0
    return float(sign * np.prod(np.diag(lu)))


def inverse(a: np.ndarray) -> np.ndarray:
    """A^-1 via LU solves against the identity columns."""
    n = a.shape[0]
    lu = a.astype(np.float64, copy=True)
    perm = np.arange(n)
    floor = _pivot_floor(a)
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= floor:
            raise SingularMatrixError("matrix is singular within pivot tolerance")
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    inv = np.empty((n, n), dtype=np.float64)
    for col in range(n):
        b = np.zeros(n)
        b[np.where(perm == col)[0][0]] = 1.0
        # forward substitution (unit lower)
        y = b.copy()
        for i in range(1, n):
            y[i] -= lu[i, :i] @ y[:i]
        # back substitution
        x = y
        for i in range(n - 1, -1, -1):
            if i + 1 < n:
                x[i] -= lu[i, i + 1:] @ x[i + 1:]
            x[i] /= lu[i, i]
        inv[:, col] = x
    return inv


def leading_minors(a: np.ndarray) -> np.ndarray:
    """Determinants of the n leading principal submatrices (1x1 .. nxn)."""
    n = a.shape[0]
    return np.array([determinant(a[:k, :k]) for k in range(1, n + 1)])
