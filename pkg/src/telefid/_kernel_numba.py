"""Jacobi-rotation kernels compiled with numba.

Hermitian eigenproblems use cyclic complex Jacobi sweeps (off-diagonal
norm below 1e-12, at most 100 sweeps).  The 3x3 SVD uses one-sided
Jacobi on the columns, which keeps small singular values accurate
instead of squaring them away through a normal-equations pass.
"""

import numpy as np
from numba import njit

MAX_SWEEPS = 100
OFF_TOL = 1e-12


@njit(cache=True)
def jacobi_eigh(a):
    """Eigendecomposition of a Hermitian matrix; returns unsorted (w, V)."""
    n = a.shape[0]
    A = a.copy()
    V = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        V[i, i] = 1.0 + 0.0j
    for _ in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(A[p, q]) ** 2
        if np.sqrt(off) < OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                upp = phase * c
                upq = phase * s
                uqp = -s + 0.0j
                uqq = c + 0.0j
                # A <- U^dagger A U restricted to the (p, q) plane
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = akp * upp + akq * uqp
                    A[k, q] = akp * upq + akq * uqq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = np.conj(upp) * apk + np.conj(uqp) * aqk
                    A[q, k] = np.conj(upq) * apk + np.conj(uqq) * aqk
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = vkp * upp + vkq * uqp
                    V[k, q] = vkp * upq + vkq * uqq
                A[p, q] = 0.0 + 0.0j
                A[q, p] = 0.0 + 0.0j
                A[p, p] = A[p, p].real + 0.0j
                A[q, q] = A[q, q].real + 0.0j
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i].real
    return w, V


@njit(cache=True)
def jacobi_svd3(a):
    """One-sided Jacobi SVD of a real 3x3 matrix.

    Returns (U, s, V) with a = U @ diag(s) @ V.T, s sorted descending
    and nonnegative.  U, V are orthogonal but not sign-normalized; rank
    deficiency is handled by completing U to an orthonormal basis.
    """
    W = a.copy()
    V = np.eye(3)
    for _ in range(60):
        rotated = 0
        for p in range(2):
            for q in range(p + 1, 3):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0
                for k in range(3):
                    alpha += W[k, p] * W[k, p]
                    beta += W[k, q] * W[k, q]
                    gamma += W[k, p] * W[k, q]
                if alpha == 0.0 or beta == 0.0:
                    continue
                if abs(gamma) <= 1e-15 * np.sqrt(alpha * beta):
                    continue
                rotated += 1
                zeta = (beta - alpha) / (2.0 * gamma)
                if zeta >= 0.0:
                    t = 1.0 / (zeta + np.sqrt(1.0 + zeta * zeta))
                else:
                    t = -1.0 / (-zeta + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for k in range(3):
                    wp = W[k, p]
                    wq = W[k, q]
                    W[k, p] = c * wp - s * wq
                    W[k, q] = s * wp + c * wq
                    vp = V[k, p]
                    vq = V[k, q]
                    V[k, p] = c * vp - s * vq
                    V[k, q] = s * vp + c * vq
        if rotated == 0:
            break

    norms = np.empty(3)
    for k in range(3):
        norms[k] = np.sqrt(W[0, k] ** 2 + W[1, k] ** 2 + W[2, k] ** 2)

    # stable descending order of the column norms
    idx = np.array([0, 1, 2])
    for i in range(1, 3):
        j = i
        while j > 0 and norms[idx[j]] > norms[idx[j - 1]]:
            tmp = idx[j]
            idx[j] = idx[j - 1]
            idx[j - 1] = tmp
            j -= 1

    s_out = np.empty(3)
    Vs = np.empty((3, 3))
    for k in range(3):
        s_out[k] = norms[idx[k]]
        for r in range(3):
            Vs[r, k] = V[r, idx[k]]

    U = np.zeros((3, 3))
    if s_out[0] <= 0.0:
        return np.eye(3), np.zeros(3), np.eye(3)
    rank_tol = 1e-13 * s_out[0]
    for k in range(3):
        if s_out[k] > rank_tol:
            for r in range(3):
                U[r, k] = W[r, idx[k]] / s_out[k]
            for j in range(k):
                d = U[0, j] * U[0, k] + U[1, j] * U[1, k] + U[2, j] * U[2, k]
                for r in range(3):
                    U[r, k] -= d * U[r, j]
            nrm = np.sqrt(U[0, k] ** 2 + U[1, k] ** 2 + U[2, k] ** 2)
            for r in range(3):
                U[r, k] /= nrm
        elif k == 1:
            # rank 1: seed with the axis least aligned with the range
            jmin = 0
            amin = abs(U[0, 0])
            if abs(U[1, 0]) < amin:
                jmin = 1
                amin = abs(U[1, 0])
            if abs(U[2, 0]) < amin:
                jmin = 2
            for r in range(3):
                U[r, 1] = 1.0 if r == jmin else 0.0
            d = U[jmin, 0]
            for r in range(3):
                U[r, 1] -= d * U[r, 0]
            nrm = np.sqrt(U[0, 1] ** 2 + U[1, 1] ** 2 + U[2, 1] ** 2)
            for r in range(3):
                U[r, 1] /= nrm
        else:
            U[0, 2] = U[1, 0] * U[2, 1] - U[2, 0] * U[1, 1]
            U[1, 2] = U[2, 0] * U[0, 1] - U[0, 0] * U[2, 1]
            U[2, 2] = U[0, 0] * U[1, 1] - U[1, 0] * U[0, 1]
    return U, s_out, Vs


def eigh(a):
    return jacobi_eigh(np.ascontiguousarray(a, dtype=np.complex128))


def svd3(t):
    return jacobi_svd3(np.ascontiguousarray(t, dtype=np.float64))
