"""Two-qubit state model.

Density matrices are plain 4x4 complex ndarrays in the computational
basis |00>, |01>, |10>, |11>.  ``validate`` enforces the state axioms;
the remaining operations assume a valid state.  Pauli labels follow
sigma_1 = X, sigma_2 = Y, sigma_3 = Z with Y = [[0, -i], [i, 0]].
"""

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    NonHermitian,
    NotPositive,
    OutOfRange,
    StateFormatError,
    TraceNotOne,
)
from .kernel import ID2, PAULIS, SIGMA_Y, hermitian_eig

HERMITICITY_TOL = 1e-9
TRACE_TOL = 1e-9
POSITIVITY_TOL = 1e-9

_PAULI4 = (ID2,) + PAULIS
# 16 products sigma_u (x) sigma_v flattened in row-major (u, v) order
_PRODUCT_BASIS = np.stack(
    [np.kron(_PAULI4[u], _PAULI4[v]) for u in range(4) for v in range(4)]
)

_R2 = 1.0 / np.sqrt(2.0)
# order: phi+, phi-, psi+, psi-
BELL_KETS = np.array(
    [
        [_R2, 0.0, 0.0, _R2],
        [_R2, 0.0, 0.0, -_R2],
        [0.0, _R2, _R2, 0.0],
        [0.0, _R2, -_R2, 0.0],
    ],
    dtype=complex,
)


@dataclass
class HilbertSchmidt:
    """Local Bloch vectors R, S and correlation matrix T of a state."""

    R: np.ndarray
    S: np.ndarray
    T: np.ndarray


def validate(m):
    """Check the density-matrix axioms and return the state as complex128.

    Raises NonHermitian, TraceNotOne or NotPositive (reporting the worst
    eigenvalue) when a check fails.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise StateFormatError(f"expected a 4x4 matrix, got shape {m.shape}")
    dev = np.max(np.abs(m - m.conj().T))
    if dev > HERMITICITY_TOL:
        raise NonHermitian(f"state deviates from Hermitian by {dev:.3e}")
    tr = m.trace()
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr:.12g}, expected 1")
    w, _ = hermitian_eig(m)
    if w[0] < -POSITIVITY_TOL:
        raise NotPositive(
            f"state has negative eigenvalue {w[0]:.12g}", worst_eigenvalue=float(w[0])
        )
    return m.copy()


def hs_decompose(rho):
    """Pauli decomposition: R_i = Tr(rho sigma_i x I), etc."""
    coeff = np.einsum("aij,ji->a", _PRODUCT_BASIS, rho).real.reshape(4, 4)
    return HilbertSchmidt(
        R=coeff[1:, 0].copy(), S=coeff[0, 1:].copy(), T=coeff[1:, 1:].copy()
    )


def hs_compose(R, S, T, check=True):
    """Rebuild a state from Bloch vectors and a correlation matrix.

    With check=True (default) the result is verified positive
    semidefinite; NotPositive is raised when the coefficients do not
    define a state.
    """
    coeff = np.empty((4, 4))
    coeff[0, 0] = 1.0
    coeff[1:, 0] = np.asarray(R, dtype=float)
    coeff[0, 1:] = np.asarray(S, dtype=float)
    coeff[1:, 1:] = np.asarray(T, dtype=float)
    rho = np.einsum("a,aij->ij", coeff.ravel(), _PRODUCT_BASIS) / 4.0
    if check:
        w, _ = hermitian_eig(rho)
        if w[0] < -POSITIVITY_TOL:
            raise NotPositive(
                f"coefficients give negative eigenvalue {w[0]:.12g}",
                worst_eigenvalue=float(w[0]),
            )
    return rho


def partial_transpose(rho):
    """Partial transpose on the second qubit."""
    return (
        np.asarray(rho, dtype=complex)
        .reshape(2, 2, 2, 2)
        .transpose(0, 3, 2, 1)
        .reshape(4, 4)
        .copy()
    )


def make_bell(k):
    """Projector onto the k-th Bell state, k = 1..4 (phi+-, psi+-)."""
    if k not in (1, 2, 3, 4):
        raise OutOfRange(f"Bell index must be 1..4, got {k}")
    ket = BELL_KETS[k - 1]
    return np.outer(ket, ket.conj())


def make_werner(p):
    """p |phi+><phi+| + (1 - p) I/4 for p in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"Werner parameter must lie in [0, 1], got {p}")
    return p * make_bell(1) + (1.0 - p) * np.eye(4, dtype=complex) / 4.0


def make_pure_schmidt(a):
    """Projector onto a |00> + sqrt(1 - a^2) |11> for a in [0, 1]."""
    if not 0.0 <= a <= 1.0:
        raise OutOfRange(f"Schmidt coefficient must lie in [0, 1], got {a}")
    ket = np.zeros(4, dtype=complex)
    ket[0] = a
    ket[3] = np.sqrt(1.0 - a * a)
    return np.outer(ket, ket.conj())


def sample_random_state(seed, kind="ginibre-mixed"):
    """Draw a random state, deterministically for a fixed seed.

    kind='ginibre-mixed' normalizes G G^dag for a complex standard
    normal G (Hilbert-Schmidt measure, full rank almost surely);
    kind='haar-pure' projects onto a Haar-random ket.
    """
    rng = np.random.default_rng(seed)
    if kind == "ginibre-mixed":
        g = (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))) / np.sqrt(2.0)
        rho = g @ g.conj().T
        return rho / rho.trace().real
    if kind == "haar-pure":
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        v /= np.linalg.norm(v)
        return np.outer(v, v.conj())
    raise ValueError(f"unknown sampling kind {kind!r}")


def random_unitary(n, seed):
    """Haar-random n x n unitary (QR of a Ginibre matrix, phases fixed)."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


# --- JSON state format (shared with the CLI) -------------------------------
#
# {"schema_version": 1, "matrix": [[[re, im] x4] x4]}
# {"schema_version": 1, "hs": {"R": [..3], "S": [..3], "T": [[..3] x3]}}
#
# Exactly one of "matrix" / "hs" must be present.


def state_to_json(rho):
    rho = np.asarray(rho, dtype=complex)
    return {
        "schema_version": 1,
        "matrix": [
            [[float(rho[i, j].real), float(rho[i, j].imag)] for j in range(4)]
            for i in range(4)
        ],
    }


def state_from_json(obj):
    """Parse the JSON state format into a 4x4 matrix (not yet validated)."""
    if not isinstance(obj, dict):
        raise StateFormatError("state document must be a JSON object")
    version = obj.get("schema_version", 1)
    if version != 1:
        raise StateFormatError(f"unsupported schema_version {version!r}")
    has_matrix = "matrix" in obj
    has_hs = "hs" in obj
    if has_matrix == has_hs:
        raise StateFormatError("exactly one of 'matrix' or 'hs' is required")
    if has_matrix:
        raw = obj["matrix"]
        try:
            arr = np.asarray(raw, dtype=float)
        except (TypeError, ValueError) as exc:
            raise StateFormatError(f"bad matrix payload: {exc}") from exc
        if arr.shape != (4, 4, 2):
            raise StateFormatError(
                f"matrix must be 4x4 pairs [re, im], got shape {arr.shape}"
            )
        return arr[..., 0] + 1j * arr[..., 1]
    hs = obj["hs"]
    if not isinstance(hs, dict) or set(hs) != {"R", "S", "T"}:
        raise StateFormatError("'hs' must hold exactly the keys R, S, T")
    try:
        R = np.asarray(hs["R"], dtype=float)
        S = np.asarray(hs["S"], dtype=float)
        T = np.asarray(hs["T"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFormatError(f"bad hs payload: {exc}") from exc
    if R.shape != (3,) or S.shape != (3,) or T.shape != (3, 3):
        raise StateFormatError("hs payload must have R, S of length 3 and T 3x3")
    return hs_compose(R, S, T, check=False)


def read_state_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"invalid JSON: {exc}") from exc
    return state_from_json(obj)


def write_state_file(path, rho):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_json(rho), fh, indent=2)
        fh.write("\n")


# re-export the spin-flip Pauli for concurrence users
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)
