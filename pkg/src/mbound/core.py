"""Dense square matrices, entrywise products, and structural classification.

Matrices are plain float64 numpy arrays of shape (n, n).  ``as_matrix`` is
the single validation gate; every public operation routes its inputs
through it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _lu

__all__ = [
    "MatrixClassification",
    "as_matrix",
    "hadamard",
    "fan_product",
    "fan_power",
    "classify",
    "scale_similarity",
    "cyclic_permutation",
    "perturb_cyclic",
]

# leading principal minor counts as positive iff > MINOR_REL * max|entry|
MINOR_REL = 1e-12


@dataclass(frozen=True)
class MatrixClassification:
    """Structural predicate bundle for one matrix."""

    nonnegative: bool
    z_matrix: bool
    nonsingular_m_matrix: bool
    irreducible: bool
    strictly_row_dd: bool


def as_matrix(obj) -> np.ndarray:
    """Validate and normalize to a square, finite float64 array.

    Accepts anything ``np.asarray`` does.  Raises ValueError for non-square
    shapes or non-finite entries.
    """
    a = np.array(obj, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _pair(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] != b.shape[0]:
        raise ValueError("order mismatch")
    return a, b


def hadamard(a, b) -> np.ndarray:
    """Entrywise product a_ij * b_ij."""
    a, b = _pair(a, b)
    return a * b


def fan_product(a, b) -> np.ndarray:
    """Diagonal a_ii*b_ii, off-diagonal -a_ij*b_ij.

    Meaningful when both inputs have nonpositive off-diagonals (the result
    then keeps that sign pattern); not enforced here.
    """
    a, b = _pair(a, b)
    out = -(a * b)
    np.fill_diagonal(out, np.diag(a) * np.diag(b))
    return out


def fan_power(a, p: int) -> np.ndarray:
    """p-fold self fan product: diagonal a_ii**p, off-diagonal -|a_ij|**p.

    p == 1 returns an exact copy (no arithmetic touches the entries).
    """
    a = as_matrix(a)
    if not isinstance(p, (int, np.integer)) or p < 1:
        raise ValueError("exponent must be a positive integer")
    if p == 1:
        return a.copy()
    out = -np.abs(a) ** p
    np.fill_diagonal(out, np.diag(a) ** p)
    return out


def _strongly_connected(a: np.ndarray) -> bool:
    # digraph on exact nonzero off-diagonal pattern; n is small, two BFS
    n = a.shape[0]
    if n == 1:
        return a[0, 0] != 0.0
    adj = a != 0.0
    np.fill_diagonal(adj, False)

    def reaches_all(mat):
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = [0]
        while frontier:
            nxt = []
            for v in frontier:
                for w in np.nonzero(mat[v])[0]:
                    if not seen[w]:
                        seen[w] = True
                        nxt.append(int(w))
            frontier = nxt
        return bool(seen.all())

    return reaches_all(adj) and reaches_all(adj.T)


def classify(a) -> MatrixClassification:
    """Compute all structural predicates for one matrix.

    The M-matrix test requires nonpositive off-diagonals plus positive
    leading principal minors; minors come from the shared LU routine with
    the deterministic relative tolerance ``MINOR_REL``.
    """
    a = as_matrix(a)
    n = a.shape[0]
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    nonnegative = bool(np.all(a >= 0.0))
    z_matrix = bool(np.all(off <= 0.0))
    if z_matrix:
        floor = MINOR_REL * max(float(np.max(np.abs(a))), 1e-300)
        m_matrix = bool(np.all(_lu.leading_minors(a) > floor))
    else:
        m_matrix = False
    diag = np.abs(np.diag(a))
    strictly_dd = bool(np.all(diag > np.abs(off).sum(axis=1)))
    return MatrixClassification(
        nonnegative=nonnegative,
        z_matrix=z_matrix,
        nonsingular_m_matrix=m_matrix,
        irreducible=_strongly_connected(a),
        strictly_row_dd=strictly_dd,
    )


def scale_similarity(a, d) -> np.ndarray:
    """Diagonal similarity D^-1 A D with D = diag(d); preserves the spectrum
    and the nonzero pattern, leaves the diagonal untouched."""
    a = as_matrix(a)
    d = np.asarray(d, dtype=np.float64)
    if d.shape != (a.shape[0],):
        raise ValueError("order mismatch")
    if np.any(d <= 0.0):
        raise ValueError("scaling vector must be strictly positive")
    return a * (d[None, :] / d[:, None])


def cyclic_permutation(n: int) -> np.ndarray:
    """The permutation matrix with ones at (1,2),(2,3),...,(n,1)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    p = np.zeros((n, n))
    for i in range(n):
        p[i, (i + 1) % n] = 1.0
    return p


def perturb_cyclic(a, eps: float, sign: int = 1) -> np.ndarray:
    """a + sign*eps*P with P the cyclic permutation; irreducible for eps>0, n>=2."""
    a = as_matrix(a)
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return a + sign * eps * cyclic_permutation(a.shape[0])
