"""Dense complex eigensolvers and pivoted LU.

Everything spectral in the package reduces to these kernels, applied to
complex adjoint matrices of size 2n.  General matrices go through
balancing, Householder reduction to upper Hessenberg form and
Wilkinson-shifted QR with deflation; Hermitian matrices go through cyclic
Jacobi.  Sizes are desk scale (2n <= 128), so clarity wins over blocking.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergence, NotHermitian, ShapeMismatch, Singular

DEFLATION_TOL = 1e-14
EXCEPTIONAL_EVERY = 10
_RADIX = 2.0


def _as_square(M) -> np.ndarray:
    M = np.array(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {M.shape}")
    return M


def _sort_complex(values) -> list[complex]:
    return sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))


# -- LU ---------------------------------------------------------------------

def lu_factor(M) -> tuple[np.ndarray, np.ndarray, float]:
    """Gaussian elimination with partial pivoting.

    Returns the packed factors, the row permutation and the smallest pivot
    magnitude met.  Zero pivots are left in place; callers decide whether
    that is an error.
    """
    LU = _as_square(M).copy()
    n = LU.shape[0]
    perm = np.arange(n)
    min_pivot = np.inf
    for k in range(n):
        p = k + int(np.argmax(np.abs(LU[k:, k])))
        if p != k:
            LU[[k, p]] = LU[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        piv = LU[k, k]
        min_pivot = min(min_pivot, abs(piv))
        if piv != 0 and k + 1 < n:
            LU[k + 1:, k] /= piv
            LU[k + 1:, k + 1:] -= np.outer(LU[k + 1:, k], LU[k, k + 1:])
    return LU, perm, float(min_pivot)


def lu_solve(LU: np.ndarray, perm: np.ndarray, b) -> np.ndarray:
    b = np.array(b, dtype=complex)
    x = b[perm].copy()
    n = LU.shape[0]
    for k in range(n):
        x[k + 1:] -= np.multiply.outer(LU[k + 1:, k], x[k]) if x.ndim > 1 else LU[k + 1:, k] * x[k]
    for k in range(n - 1, -1, -1):
        x[k] /= LU[k, k]
        if k:
            x[:k] -= np.multiply.outer(LU[:k, k], x[k]) if x.ndim > 1 else LU[:k, k] * x[k]
    return x


def inverse(M, rel_pivot_tol: float = 1e-12) -> np.ndarray:
    M = _as_square(M)
    LU, perm, min_pivot = lu_factor(M)
    scale = np.linalg.norm(M)
    if min_pivot < rel_pivot_tol * scale or scale == 0.0:
        raise Singular(f"pivot {min_pivot:.3e} below {rel_pivot_tol:g} * ||M||_F")
    return lu_solve(LU, perm, np.eye(M.shape[0], dtype=complex))


# -- general eigenvalues ----------------------------------------------------

def balance(M: np.ndarray) -> np.ndarray:
    """Parlett-Reinsch diagonal scaling by powers of two (no permutations)."""
    A = M.copy()
    n = A.shape[0]
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            col = np.abs(A[:, i])
            row = np.abs(A[i, :])
            col[i] = row[i] = 0.0
            c, r = col.sum(), row.sum()
            if c == 0.0 or r == 0.0:
                continue
            g, f, s = r / _RADIX, 1.0, c + r
            while c < g:
                f *= _RADIX
                c *= _RADIX * _RADIX
            g = r * _RADIX
            while c > g:
                f /= _RADIX
                c /= _RADIX * _RADIX
            if (c + r) / f < 0.95 * s:
                converged = False
                A[i, :] /= f
                A[:, i] *= f
    return A


def hessenberg(M: np.ndarray) -> np.ndarray:
    """Householder reduction to upper Hessenberg form (similarity)."""
    H = M.copy()
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _eig2(a: complex, b: complex, c: complex, d: complex) -> tuple[complex, complex]:
    half_tr = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + b * c)
    l1 = half_tr + disc
    l2 = half_tr - disc
    det = a * d - b * c
    # recompute the smaller root from the determinant to avoid cancellation
    if abs(l1) >= abs(l2):
        if l1 != 0:
            l2 = det / l1
    elif l2 != 0:
        l1 = det / l2
    return complex(l1), complex(l2)


def _wilkinson_shift(a, b, c, d) -> complex:
    l1, l2 = _eig2(a, b, c, d)
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def _givens(x: complex, y: complex) -> np.ndarray:
    r = np.sqrt(abs(x) ** 2 + abs(y) ** 2)
    if r == 0.0:
        return np.eye(2, dtype=complex)
    c, s = x / r, y / r
    return np.array([[c.conjugate(), s.conjugate()], [-s, c]], dtype=complex)


def _qr_step(B: np.ndarray, shift: complex) -> None:
    """One explicit shifted QR sweep on an unreduced Hessenberg block, in place."""
    m = B.shape[0]
    B[np.diag_indices(m)] -= shift
    rots = []
    for k in range(m - 1):
        G = _givens(B[k, k], B[k + 1, k])
        B[k:k + 2, k:] = G @ B[k:k + 2, k:]
        B[k + 1, k] = 0.0
        rots.append(G)
    for k, G in enumerate(rots):
        B[:k + 2, k:k + 2] = B[:k + 2, k:k + 2] @ G.conj().T
    B[np.diag_indices(m)] += shift


def complex_eigenvalues(M, tol: float | None = None, max_sweeps: int = 40) -> list[complex]:
    """All eigenvalues of a square complex matrix, sorted by (real, imag).

    ``max_sweeps`` bounds the QR sweeps spent on any one eigenvalue; beyond it
    :class:`NoConvergence` is raised.  ``tol`` overrides the relative
    deflation threshold.
    """
    M = _as_square(M)
    n = M.shape[0]
    if n == 0:
        return []
    if not np.all(np.isfinite(M)):
        raise NoConvergence("matrix has non-finite entries")
    defl = DEFLATION_TOL if tol is None else tol
    H = hessenberg(balance(M))
    norm = np.linalg.norm(H)
    tiny = np.finfo(float).tiny
    values: list[complex] = []
    hi = n - 1
    its = 0
    while hi >= 0:
        if hi == 0:
            values.append(H[0, 0])
            break
        lo = hi
        while lo > 0:
            s = abs(H[lo, lo - 1])
            ref = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if ref == 0.0:
                ref = norm
            if s <= defl * ref or s <= tiny:
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            values.append(H[hi, hi])
            hi -= 1
            its = 0
            continue
        if lo == hi - 1:
            values.extend(_eig2(H[lo, lo], H[lo, hi], H[hi, lo], H[hi, hi]))
            hi -= 2
            its = 0
            continue
        its += 1
        if its > max_sweeps:
            raise NoConvergence(f"QR iteration stalled after {max_sweeps} sweeps at index {hi}")
        if its % EXCEPTIONAL_EVERY == 0:
            shift = H[hi, hi] + 0.75 * abs(H[hi, hi - 1].real) + 0.75j * abs(H[hi, hi - 1].imag)
        else:
            shift = _wilkinson_shift(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        _qr_step(H[lo:hi + 1, lo:hi + 1], shift)
    return _sort_complex(values)


def complex_eigenvector(M, lam: complex, max_iter: int = 12, tol: float = 1e-8) -> np.ndarray:
    """Unit eigenvector for ``lam`` by shifted inverse iteration.

    The shift is nudged by a fixed pseudo-random 1e-12 offset so that an
    exact eigenvalue does not produce an exactly singular system.
    """
    M = _as_square(M)
    n = M.shape[0]
    norm = max(np.linalg.norm(M), 1.0)
    rng = np.random.default_rng(0x5EED)
    nudge = 1e-12 * norm * complex(*rng.uniform(0.5, 1.0, size=2))
    LU, perm, _ = lu_factor(M - (lam + nudge) * np.eye(n))
    floor = np.finfo(float).eps * norm
    piv = LU[np.diag_indices(n)]
    small = np.abs(piv) < floor
    LU[np.diag_indices(n)] = np.where(small, floor, piv)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x /= np.linalg.norm(x)
    best, best_res = x, np.inf
    for _ in range(max_iter):
        x = lu_solve(LU, perm, x)
        x /= np.linalg.norm(x)
        res = np.linalg.norm(M @ x - lam * x)
        if res < best_res:
            best, best_res = x, res
        if res <= tol * norm:
            return x
    if best_res <= tol * norm:
        return best
    raise NoConvergence(f"inverse iteration residual {best_res:.3e} above {tol:g} * ||M||_F")


# -- Hermitian eigenvalues --------------------------------------------------

def hermitian_eigh(H, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi for Hermitian ``H``; ascending eigenvalues and eigenvectors."""
    H = _as_square(H)
    scale = np.linalg.norm(H)
    if np.linalg.norm(H - H.conj().T) > 1e-10 * max(scale, 1.0):
        raise NotHermitian("matrix is not Hermitian within 1e-10")
    A = 0.5 * (H + H.conj().T)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    target = 1e-12 * scale
    for _ in range(max_sweeps):
        if np.linalg.norm(A - np.diag(np.diag(A))) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = A[p, q]
                ab = abs(b)
                if ab <= 1e-300:
                    continue
                tau = (A[q, q].real - A[p, p].real) / (2.0 * ab)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ph = b / ab
                R = np.array([[c, s * ph], [-s * np.conj(ph), c]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ R
                A[idx, :] = R.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ R
    else:
        raise NoConvergence("Jacobi sweeps exhausted")
    w = np.diag(A).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def hermitian_eigs(H) -> list[float]:
    return [float(x) for x in hermitian_eigh(H)[0]]
