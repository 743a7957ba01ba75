"""Small dense linear-algebra substrate.

Hot kernels (Hermitian eigendecomposition, special 3x3 SVD) run on one
of two interchangeable backends:

* ``numba``  - Jacobi-rotation kernels compiled with numba (default
  when numba is importable),
* ``numpy``  - LAPACK calls through ``numpy.linalg``.

Set ``TELEFID_KERNEL=numpy`` (or ``numba``) to force a backend.  Both
backends feed the same convention-fixing post-processing, so results
agree up to the gauge freedom of degenerate spectra.

Conventions
-----------
hermitian_eig   eigenvalues ascending; each eigenvector's largest
                component is rotated to the positive real axis.
svd3_special    o1 @ t @ o2.T = diag(d) with o1, o2 proper rotations,
                d[0] >= d[1] >= |d[2]| and sign(d[2]) = sign(det t).
rotation_to_spin(o)   U with U (n.sigma) U^dag = (o.T n).sigma and
                det U = +1; the global sign makes the first significant
                entry positive (real part first, then imaginary).
"""

import os

import numpy as np

from .errors import NonHermitian

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
ID2 = np.eye(2, dtype=complex)

HERMITICITY_TOL = 1e-9
ROTATION_TOL = 1e-10


def _backend_module(name):
    if name == "numpy":
        from . import _kernel_numpy

        return _kernel_numpy
    if name == "numba":
        from . import _kernel_numba

        return _kernel_numba
    raise ValueError(f"unknown kernel backend {name!r}")


def _resolve_default():
    choice = os.environ.get("TELEFID_KERNEL", "auto").strip().lower() or "auto"
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"TELEFID_KERNEL must be 'numba' or 'numpy', got {choice!r}"
        )
    if choice in ("auto", "numba"):
        try:
            return "numba", _backend_module("numba")
        except ImportError:
            if choice == "numba":
                raise
    return "numpy", _backend_module("numpy")


_BACKEND_NAME, _BACKEND = _resolve_default()


def backend_name():
    """Name of the kernel backend in use ('numba' or 'numpy')."""
    return _BACKEND_NAME


def available_backends():
    names = []
    try:
        _backend_module("numba")
        names.append("numba")
    except ImportError:
        pass
    names.append("numpy")
    return tuple(names)


def _impl(backend):
    if backend is None:
        return _BACKEND
    return _backend_module(backend)


def hermitian_eig(m, backend=None):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as orthonormal
    columns).  Raises NonHermitian if the input deviates from its
    conjugate transpose by more than 1e-9.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    dev = np.max(np.abs(m - m.conj().T))
    if dev > HERMITICITY_TOL:
        raise NonHermitian(f"matrix deviates from Hermitian by {dev:.3e}")
    h = 0.5 * (m + m.conj().T)
    w, v = _impl(backend).eigh(h)
    order = np.argsort(w, kind="stable")
    w = np.ascontiguousarray(w[order])
    v = np.ascontiguousarray(v[:, order])
    for k in range(v.shape[1]):
        j = int(np.argmax(np.abs(v[:, k])))
        pivot = v[j, k]
        mag = abs(pivot)
        if mag > 0.0:
            v[:, k] *= np.conj(pivot) / mag
    return w, v


def _paired_sign_fix(u, v):
    # Sign gauge: make each left column lead with a positive entry.
    # Flips must come in (u column, v column) pairs to keep the
    # diagonal, and in an even count overall to keep both dets at +1,
    # so any odd parity is parked on the last pair.
    flips = []
    for k in range(3):
        col = u[:, k]
        for comp in col:
            if abs(comp) > 1e-12:
                if comp < 0.0:
                    flips.append(k)
                break
    if len(flips) % 2 == 1:
        if 2 in flips:
            flips.remove(2)
        else:
            flips.append(2)
    for k in flips:
        u[:, k] *= -1.0
        v[:, k] *= -1.0
    return u, v


def svd3_special(t, backend=None):
    """SVD of a real 3x3 matrix with proper-rotation factors.

    Returns (o1, d, o2) such that o1 @ t @ o2.T = diag(d), both factors
    are rotations, d[0] >= d[1] >= |d[2]| with d[0], d[1] >= 0, and the
    sign of det t is carried entirely by d[2].
    """
    t = np.asarray(t, dtype=float)
    if t.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    if not np.all(np.isfinite(t)):
        raise ValueError("matrix entries must be finite")
    u, s, v = _impl(backend).svd3(t)
    u = np.array(u, dtype=float)
    v = np.array(v, dtype=float)
    d = np.array(s, dtype=float)
    if np.linalg.det(u) < 0.0:
        u[:, 2] *= -1.0
        d[2] *= -1.0
    if np.linalg.det(v) < 0.0:
        v[:, 2] *= -1.0
        d[2] *= -1.0
    u, v = _paired_sign_fix(u, v)
    return u.T.copy(), d, v.T.copy()


def is_rotation(o, tol=ROTATION_TOL):
    o = np.asarray(o, dtype=float)
    if o.shape != (3, 3):
        return False
    if np.max(np.abs(o.T @ o - np.eye(3))) > tol:
        return False
    return abs(np.linalg.det(o) - 1.0) <= tol


def is_special_unitary(u, tol=ROTATION_TOL):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        return False
    if np.max(np.abs(u.conj().T @ u - ID2)) > tol:
        return False
    return abs(np.linalg.det(u) - 1.0) <= tol


def _fix_su2_sign(u):
    for entry in (u[0, 0], u[0, 1], u[1, 0], u[1, 1]):
        if abs(entry) > 1e-12:
            if entry.real < -1e-12 or (abs(entry.real) <= 1e-12 and entry.imag < 0.0):
                return -u
            return u
    return u


def rotation_to_spin(o):
    """Lift a proper rotation to its spin-1/2 unitary.

    The returned U satisfies U (n.sigma) U^dag = (o.T n).sigma for every
    axis n, has det +1, and uses a deterministic global sign.
    """
    o = np.asarray(o, dtype=float)
    if not is_rotation(o):
        raise ValueError("input is not a proper rotation within 1e-10")
    m = o.T  # the adjoint action of the result realizes n -> o.T n
    tr = m[0, 0] + m[1, 1] + m[2, 2]
    if tr > 0.0:
        s = 2.0 * np.sqrt(tr + 1.0)
        q = np.array(
            [
                0.25 * s,
                (m[2, 1] - m[1, 2]) / s,
                (m[0, 2] - m[2, 0]) / s,
                (m[1, 0] - m[0, 1]) / s,
            ]
        )
    elif m[0, 0] >= m[1, 1] and m[0, 0] >= m[2, 2]:
        s = 2.0 * np.sqrt(1.0 + m[0, 0] - m[1, 1] - m[2, 2])
        q = np.array(
            [
                (m[2, 1] - m[1, 2]) / s,
                0.25 * s,
                (m[0, 1] + m[1, 0]) / s,
                (m[0, 2] + m[2, 0]) / s,
            ]
        )
    elif m[1, 1] >= m[2, 2]:
        s = 2.0 * np.sqrt(1.0 + m[1, 1] - m[0, 0] - m[2, 2])
        q = np.array(
            [
                (m[0, 2] - m[2, 0]) / s,
                (m[0, 1] + m[1, 0]) / s,
                0.25 * s,
                (m[1, 2] + m[2, 1]) / s,
            ]
        )
    else:
        s = 2.0 * np.sqrt(1.0 + m[2, 2] - m[0, 0] - m[1, 1])
        q = np.array(
            [
                (m[1, 0] - m[0, 1]) / s,
                (m[0, 2] + m[2, 0]) / s,
                (m[1, 2] + m[2, 1]) / s,
                0.25 * s,
            ]
        )
    q /= np.linalg.norm(q)
    u = q[0] * ID2 - 1j * (q[1] * SIGMA_X + q[2] * SIGMA_Y + q[3] * SIGMA_Z)
    return _fix_su2_sign(u)
