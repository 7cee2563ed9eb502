"""Every bound formula: upper bounds on rho of a Hadamard product of
nonnegative matrices, lower bounds on tau of Fan products and of A∘B⁻¹ for
M-matrices, the multi-matrix Hölder-exponent bound, the auxiliary row-chain
quantities, and ovals-of-Cassini membership.

Bound naming scheme (also the ``BoundResult.name`` strings):

====================  ======================================================
rho_product           rho(A)·rho(B)
rho_affine            max_i affine diagonal correction
rho_oval_deficit      pairwise oval with full spectral deficits
rho_oval_rowmax       pairwise oval, off-diagonal row maxima in the radicand
tau_product           tau(A)·tau(B)
tau_affine            min_i affine diagonal correction
tau_oval_deficit      pairwise oval with full tau deficits
tau_oval_rowmax       pairwise oval, off-diagonal row maxima
tau_hinv_diag_floor   tau(A)·min beta_ii
tau_hinv_jacobi_ratio Jacobi-contraction times min diagonal ratio
tau_hinv_chain        row-chain bound on the dominance-scaled denominator
tau_hinv_jacobi_oval  pairwise oval with Jacobi-radius cross term
tau_hinv_deficit_oval pairwise oval with tau deficits (two variants)
tau_multi_fan         Hölder-exponent bound for an m-fold Fan product
====================  ======================================================

All pairwise scans run over ordered pairs i != j in row-major order; ties
keep the first pair.  Radicands are clamped at zero (see ``_clamped_sqrt``).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Optional, Sequence

import numpy as np

from .core import as_matrix, classify, scale_similarity
from .spectral import inverse

__all__ = [
    "BoundResult",
    "OffdiagMax",
    "AuxChain",
    "HolderExponents",
    "aux_offdiag_max",
    "aux_chain",
    "inverse_column_caps",
    "rho_bound_product",
    "rho_bound_affine",
    "rho_bound_oval_deficit",
    "rho_bound_oval_rowmax",
    "tau_bound_product",
    "tau_bound_affine",
    "tau_bound_oval_deficit",
    "tau_bound_oval_rowmax",
    "tau_hinv_diag_floor",
    "tau_hinv_jacobi_ratio",
    "tau_hinv_chain",
    "tau_hinv_jacobi_oval",
    "tau_hinv_deficit_oval",
    "tau_multi_fan",
    "cassini_contains",
]

log = logging.getLogger("mbound.bounds")

# warn only when the clamped magnitude is beyond accumulated-rounding scale
CLAMP_WARN = 1e-10


def _clamped_sqrt(x: float) -> float:
    if x < 0.0:
        if x < -CLAMP_WARN:
            log.warning("clamping negative radicand %.6e to zero", x)
        x = 0.0
    return sqrt(x)


@dataclass(frozen=True)
class BoundResult:
    """One evaluated bound: ``direction`` is "upper" or "lower"; components
    carries the intermediate quantities for report transparency."""

    name: str
    direction: str
    value: float
    components: dict


@dataclass(frozen=True)
class OffdiagMax:
    """Per-row maxima of absolute off-diagonal entries: s from the first
    matrix, t from the second.  n = 1 gives zeros."""

    s: np.ndarray
    t: np.ndarray


@dataclass(frozen=True)
class AuxChain:
    """Row-chain quantities of one matrix.

    r_pair[l, i] = |a_li| / (|a_ll| − Σ_{k≠l,i} |a_lk|)   (l ≠ i)
    r[i]         = max_{l≠i} r_pair[l, i]
    s_pair[j, i] = (|a_ji| + Σ_{k≠j,i} |a_jk|·r[k]) / |a_jj|
    s[i]         = max_{j≠i} s_pair[j, i]

    Defined only when every denominator is positive (guaranteed for
    strictly row diagonally dominant matrices).
    """

    r_pair: np.ndarray
    r: np.ndarray
    s_pair: np.ndarray
    s: np.ndarray


def _offdiag_rowmax(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if n == 1:
        return np.zeros(1)
    m = np.abs(a).copy()
    np.fill_diagonal(m, -np.inf)
    return m.max(axis=1)


def aux_offdiag_max(a, b) -> OffdiagMax:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[0] != b.shape[0]:
        raise ValueError("order mismatch")
    return OffdiagMax(s=_offdiag_rowmax(a), t=_offdiag_rowmax(b))


def aux_chain(a) -> AuxChain:
    a = as_matrix(a)
    n = a.shape[0]
    ab = np.abs(a)
    dg = np.diag(ab)
    off = ab.copy()
    np.fill_diagonal(off, 0.0)
    rowsum = off.sum(axis=1)
    r_pair = np.zeros((n, n))
    for l in range(n):
        for i in range(n):
            if l == i:
                continue
            den = dg[l] - (rowsum[l] - off[l, i])
            if den <= 0.0:
                raise ValueError(f"denominator nonpositive at row {l}, column {i}")
            r_pair[l, i] = off[l, i] / den
    r = np.zeros(n)
    s_pair = np.zeros((n, n))
    s = np.zeros(n)
    if n > 1:
        for i in range(n):
            r[i] = max(r_pair[l, i] for l in range(n) if l != i)
        for j in range(n):
            for i in range(n):
                if j == i:
                    continue
                acc = sum(off[j, k] * r[k] for k in range(n) if k != j and k != i)
                s_pair[j, i] = (off[j, i] + acc) / dg[j]
        for i in range(n):
            s[i] = max(s_pair[j, i] for j in range(n) if j != i)
    return AuxChain(r_pair=r_pair, r=r, s_pair=s_pair, s=s)


def inverse_column_caps(a, chain: Optional[AuxChain] = None) -> np.ndarray:
    """Entrywise caps on the inverse of a strictly row-dominant M-matrix.

    Returns C with inv(a)[j, i] <= C[j, i] * inv(a)[i, i] for all j != i.
    The cap fixes the column's r value inside the row sum:

        C[j, i] = (|a_ji| + r[i] * Sum_{k != j,i} |a_jk|) / a_jj

    which, unlike the per-k chained form, survives adversarial patterns
    (the per-k form undershoots on some dominant matrices).  Diagonal
    entries are set to 1.
    """
    a = as_matrix(a)
    if chain is None:
        chain = aux_chain(a)
    n = a.shape[0]
    off = np.abs(a).copy()
    np.fill_diagonal(off, 0.0)
    rowsum = off.sum(axis=1)
    dg = np.abs(np.diag(a))
    caps = np.eye(n)
    for j in range(n):
        for i in range(n):
            if j == i:
                continue
            caps[j, i] = (off[j, i] + chain.r[i] * (rowsum[j] - off[j, i])) / dg[j]
    return caps


def _pair_scan(n: int, term):
    """(value, (i, j)) of term(i, j) extremized over ordered pairs i != j.

    term returns (candidate, better) where better is the strict comparison;
    first row-major pair wins ties.
    """
    best = None
    arg = (-1, -1)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            cand = term(i, j)
            if best is None or (cand < best if term.minimize else cand > best):
                best = cand
                arg = (i, j)
    return best, arg


# ----------------------------------------------------------------------
# upper bounds on rho of a Hadamard product of nonnegative matrices
# ----------------------------------------------------------------------

def rho_bound_product(rho_a: float, rho_b: float) -> BoundResult:
    """rho(A)*rho(B)."""
    if rho_a < 0.0 or rho_b < 0.0:
        raise ValueError("spectral radii must be nonnegative")
    return BoundResult(
        "rho_product", "upper", rho_a * rho_b,
        {"rho_a": rho_a, "rho_b": rho_b},
    )


def rho_bound_affine(a, b, rho_a: float, rho_b: float) -> BoundResult:
    """max_i {2 a_ii b_ii + rho(A)rho(B) − b_ii rho(A) − a_ii rho(B)}."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    da, db = np.diag(a), np.diag(b)
    vals = 2.0 * da * db + rho_a * rho_b - db * rho_a - da * rho_b
    i = int(np.argmax(vals))
    return BoundResult(
        "rho_affine", "upper", float(vals[i]),
        {"rho_a": rho_a, "rho_b": rho_b, "argmax": i},
    )


def _oval_upper(da, db, radicand):
    n = len(da)
    if n == 1:
        return float(da[0] * db[0]), (0, 0)

    def term(i, j):
        x, y = da[i] * db[i], da[j] * db[j]
        return 0.5 * (x + y + _clamped_sqrt((x - y) ** 2 + radicand(i, j)))

    term.minimize = False
    return _pair_scan(n, term)


def _oval_lower(da, db, radicand):
    n = len(da)
    if n == 1:
        return float(da[0] * db[0]), (0, 0)

    def term(i, j):
        x, y = da[i] * db[i], da[j] * db[j]
        return 0.5 * (x + y - _clamped_sqrt((x - y) ** 2 + radicand(i, j)))

    term.minimize = True
    return _pair_scan(n, term)


def rho_bound_oval_deficit(a, b, rho_a: float, rho_b: float) -> BoundResult:
    """Pairwise oval form whose radicand uses the full spectral deficits
    (rho(A)−a_ii)(rho(B)−b_ii)(rho(A)−a_jj)(rho(B)−b_jj)."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    da, db = np.diag(a), np.diag(b)
    value, arg = _oval_upper(
        da, db,
        lambda i, j: 4.0 * (rho_a - da[i]) * (rho_b - db[i])
        * (rho_a - da[j]) * (rho_b - db[j]),
    )
    return BoundResult(
        "rho_oval_deficit", "upper", value,
        {"rho_a": rho_a, "rho_b": rho_b, "argmax_pair": arg},
    )


def rho_bound_oval_rowmax(a, b, rho_a: float, rho_b: float) -> BoundResult:
    """Pairwise oval form with off-diagonal row maxima in the radicand:
    4 t_i s_j (rho(A)−a_ii)(rho(B)−b_jj), s rows of A, t rows of B."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    aux = aux_offdiag_max(a, b)
    da, db = np.diag(a), np.diag(b)
    value, arg = _oval_upper(
        da, db,
        lambda i, j: 4.0 * aux.t[i] * aux.s[j] * (rho_a - da[i]) * (rho_b - db[j]),
    )
    return BoundResult(
        "rho_oval_rowmax", "upper", value,
        {
            "rho_a": rho_a, "rho_b": rho_b, "argmax_pair": arg,
            "s": tuple(map(float, aux.s)), "t": tuple(map(float, aux.t)),
        },
    )


# ----------------------------------------------------------------------
# lower bounds on tau of a Fan product of M-matrices
# ----------------------------------------------------------------------

def tau_bound_product(tau_a: float, tau_b: float) -> BoundResult:
    """tau(A)*tau(B)."""
    if tau_a <= 0.0 or tau_b <= 0.0:
        raise ValueError("tau values must be positive")
    return BoundResult(
        "tau_product", "lower", tau_a * tau_b,
        {"tau_a": tau_a, "tau_b": tau_b},
    )


def tau_bound_affine(a, b, tau_a: float, tau_b: float) -> BoundResult:
    """min_i {b_ii tau(A) + a_ii tau(B) − tau(A)tau(B)}."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    da, db = np.diag(a), np.diag(b)
    vals = db * tau_a + da * tau_b - tau_a * tau_b
    i = int(np.argmin(vals))
    return BoundResult(
        "tau_affine", "lower", float(vals[i]),
        {"tau_a": tau_a, "tau_b": tau_b, "argmin": i},
    )


def tau_bound_oval_deficit(a, b, tau_a: float, tau_b: float) -> BoundResult:
    """Pairwise oval with full tau deficits in the radicand."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    da, db = np.diag(a), np.diag(b)
    value, arg = _oval_lower(
        da, db,
        lambda i, j: 4.0 * (da[i] - tau_a) * (db[i] - tau_b)
        * (da[j] - tau_a) * (db[j] - tau_b),
    )
    return BoundResult(
        "tau_oval_deficit", "lower", value,
        {"tau_a": tau_a, "tau_b": tau_b, "argmin_pair": arg},
    )


def tau_bound_oval_rowmax(a, b, tau_a: float, tau_b: float) -> BoundResult:
    """Pairwise oval with 4 t_i s_j (a_ii−tau(A))(b_jj−tau(B)) radicand."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    aux = aux_offdiag_max(a, b)
    da, db = np.diag(a), np.diag(b)
    value, arg = _oval_lower(
        da, db,
        lambda i, j: 4.0 * aux.t[i] * aux.s[j] * (da[i] - tau_a) * (db[j] - tau_b),
    )
    return BoundResult(
        "tau_oval_rowmax", "lower", value,
        {
            "tau_a": tau_a, "tau_b": tau_b, "argmin_pair": arg,
            "s": tuple(map(float, aux.s)), "t": tuple(map(float, aux.t)),
        },
    )


# ----------------------------------------------------------------------
# lower bounds on tau(A ∘ B^-1) for M-matrices A, B
# ----------------------------------------------------------------------

def tau_hinv_diag_floor(tau_a: float, binv) -> BoundResult:
    """tau(A) * min_i beta_ii."""
    binv = as_matrix(binv)
    beta = np.diag(binv)
    i = int(np.argmin(beta))
    return BoundResult(
        "tau_hinv_diag_floor", "lower", float(tau_a * beta[i]),
        {"tau_a": tau_a, "min_beta": float(beta[i]), "argmin": i},
    )


def tau_hinv_jacobi_ratio(a, b, rho_ja: float, rho_jb: float) -> BoundResult:
    """(1 − rho(J_A)rho(J_B)) / (1 + rho(J_B)^2) * min_i a_ii/b_ii.

    The ratio runs a_ii over b_ii; the flipped orientation fails validity
    on desk checks, so only this one is offered.
    """
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    da, db = np.diag(a), np.diag(b)
    ratios = da / db
    i = int(np.argmin(ratios))
    contraction = (1.0 - rho_ja * rho_jb) / (1.0 + rho_jb ** 2)
    return BoundResult(
        "tau_hinv_jacobi_ratio", "lower", float(contraction * ratios[i]),
        {
            "rho_ja": rho_ja, "rho_jb": rho_jb,
            "contraction": float(contraction),
            "min_ratio": float(ratios[i]), "argmin": i,
            "ratio": "a_ii/b_ii",
        },
    )


def _dominance_scaled(b):
    """(scaled, d, applied): similarity making b strictly row dominant.

    d = b^-1 · 1 keeps the diagonal and, for M-matrices, guarantees strict
    dominance of D^-1 b D; when b is already dominant the identity is used.
    """
    if classify(b).strictly_row_dd:
        return b, np.ones(b.shape[0]), False
    d = inverse(b) @ np.ones(b.shape[0])
    return scale_similarity(b, d), d, True


def tau_hinv_chain(a, b) -> BoundResult:
    """min_i (a_ii − s'_i · Σ_{j≠i}|a_ji|) / b_ii, column sums of a in the
    numerator, with s'_i the ROW maximum max_{j≠i} s_pair[i, j] of the chain
    matrix of the dominance-scaled b (each row's own chain coefficients)."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError("order mismatch")
    scaled, d, applied = _dominance_scaled(b)
    chain = aux_chain(scaled)
    s_row = chain.s_pair.max(axis=1)  # diag is 0, entries >= 0
    da, db = np.diag(a), np.diag(b)
    colsum = np.abs(a).sum(axis=0) - np.abs(da)
    vals = (da - s_row * colsum) / db
    i = int(np.argmin(vals))
    return BoundResult(
        "tau_hinv_chain", "lower", float(vals[i]),
        {
            "argmin": i, "s_row": tuple(map(float, s_row)),
            "scaled": applied, "scaling": tuple(map(float, d)),
        },
    )


def tau_hinv_jacobi_oval(a, b, binv, rho_ja: float, rho_jb: float) -> BoundResult:
    """Pairwise oval on the diagonal products a_ii beta_ii with the Jacobi
    cross term 4 a_ii a_jj beta_ii beta_jj rho^2(J_A) rho^2(J_B)."""
    a, b = as_matrix(a), as_matrix(b)
    binv = as_matrix(binv)
    if not (a.shape == b.shape == binv.shape):
        raise ValueError("order mismatch")
    da = np.diag(a)
    beta = np.diag(binv)
    g = (rho_ja * rho_jb) ** 2
    value, arg = _oval_lower(
        da, beta,
        lambda i, j: 4.0 * da[i] * da[j] * beta[i] * beta[j] * g,
    )
    return BoundResult(
        "tau_hinv_jacobi_oval", "lower", value,
        {"rho_ja": rho_ja, "rho_jb": rho_jb, "argmin_pair": arg},
    )


def tau_hinv_deficit_oval(a, b, binv, tau_a: float, tau_b: float,
                          variant: str = "proof") -> BoundResult:
    """Pairwise oval with tau-deficit radicand, in two variants.

    variant="proof" (default): radicand 4 s_i s_j beta_ii beta_jj
    (a_ii−tau(A))(a_jj−tau(A)) with s the row-chain vector of the
    dominance-scaled b — the construction that actually emerges from
    chaining the inverse-entry caps, and the only one that matches the
    reference value on the worked example.

    variant="statement": radicand 4 s_i s_j beta_ii beta_jj
    (a_ii−tau(A))(b_jj−tau(B)) with s the off-diagonal row maxima of a.
    Kept selectable for comparison; it is NOT validity-guaranteed (desk
    checks produce values above the exact minimum eigenvalue).

    Both variants' values are recorded in components.
    """
    a, b = as_matrix(a), as_matrix(b)
    binv = as_matrix(binv)
    if not (a.shape == b.shape == binv.shape):
        raise ValueError("order mismatch")
    if variant not in ("proof", "statement"):
        raise ValueError("variant must be 'proof' or 'statement'")
    da, db = np.diag(a), np.diag(b)
    beta = np.diag(binv)

    s_stmt = _offdiag_rowmax(a)
    v_stmt, arg_stmt = _oval_lower(
        da, beta,
        lambda i, j: 4.0 * s_stmt[i] * s_stmt[j] * beta[i] * beta[j]
        * (da[i] - tau_a) * (db[j] - tau_b),
    )
    scaled, d, applied = _dominance_scaled(b)
    s_chain = aux_chain(scaled).s
    v_proof, arg_proof = _oval_lower(
        da, beta,
        lambda i, j: 4.0 * s_chain[i] * s_chain[j] * beta[i] * beta[j]
        * (da[i] - tau_a) * (da[j] - tau_a),
    )
    value, arg = (v_proof, arg_proof) if variant == "proof" else (v_stmt, arg_stmt)
    return BoundResult(
        "tau_hinv_deficit_oval", "lower", value,
        {
            "variant": variant, "argmin_pair": arg,
            "proof_value": v_proof, "statement_value": v_stmt,
            "tau_a": tau_a, "tau_b": tau_b,
            "scaled": applied, "scaling": tuple(map(float, d)),
        },
    )


# ----------------------------------------------------------------------
# multi-matrix Fan product bound and Cassini membership
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HolderExponents:
    """Positive integer exponents with Σ 1/P_k >= 1 (checked exactly)."""

    p: tuple

    def __post_init__(self):
        p = tuple(self.p)
        object.__setattr__(self, "p", p)
        if len(p) == 0 or any((not isinstance(x, (int, np.integer))) or x < 1 for x in p):
            raise ValueError("invalid exponents: need positive integers")
        if sum(Fraction(1, int(x)) for x in p) < 1:
            raise ValueError("invalid exponents: reciprocals must sum to >= 1")


def tau_multi_fan(matrices: Sequence, exponents: HolderExponents,
                  taus_of_fan_powers: Sequence[float]) -> BoundResult:
    """min_i { Π_k A_k[i,i] − Π_k (A_k[i,i]^P_k − tau(A_k^(P_k)))^(1/P_k) }.

    Each bracket is a Perron deficit and must be nonnegative; tiny negative
    rounding dust is clamped, anything beyond relative 1e-8 raises.
    """
    mats = [as_matrix(m) for m in matrices]
    if len(mats) != len(exponents.p) or len(mats) != len(taus_of_fan_powers):
        raise ValueError("matrices, exponents and tau values must align")
    n = mats[0].shape[0]
    if any(m.shape[0] != n for m in mats):
        raise ValueError("order mismatch")
    vals = np.empty(n)
    for i in range(n):
        prod_diag = 1.0
        prod_deficit = 1.0
        for m, p, tau_pow in zip(mats, exponents.p, taus_of_fan_powers):
            dii = float(m[i, i])
            prod_diag *= dii
            bracket = dii ** p - tau_pow
            if bracket < 0.0:
                if bracket < -1e-8 * max(1.0, abs(dii) ** p):
                    raise ValueError("negative Perron deficit bracket")
                if bracket < -CLAMP_WARN:
                    log.warning("clamping negative deficit %.6e to zero", bracket)
                bracket = 0.0
            prod_deficit *= bracket ** (1.0 / p)
        vals[i] = prod_diag - prod_deficit
    i = int(np.argmin(vals))
    return BoundResult(
        "tau_multi_fan", "lower", float(vals[i]),
        {"argmin": i, "p": tuple(int(x) for x in exponents.p),
         "taus_of_fan_powers": tuple(map(float, taus_of_fan_powers))},
    )


def cassini_contains(a, z: complex) -> bool:
    """True iff z lies in some oval |z−a_ii||z−a_jj| <= c_i c_j (i != j),
    where c_i are the absolute COLUMN sums without the diagonal."""
    a = as_matrix(a)
    n = a.shape[0]
    if n < 2:
        raise ValueError("Cassini requires n >= 2")
    col = np.abs(a).sum(axis=0) - np.abs(np.diag(a))
    d = np.diag(a)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            lhs = abs(z - d[i]) * abs(z - d[j])
            rhs = col[i] * col[j]
            # eigenvalues of 2x2 matrices sit exactly ON the oval boundary,
            # so a computed root needs float-level slack to stay a member
            slack = 1e-12 * max(1.0, abs(z) ** 2, rhs)
            if lhs <= rhs + slack:
                return True
    return False
