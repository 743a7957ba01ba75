"""Optimal-state families and optimality certification.

For a fixed value of linear entropy, CHSH value or concurrence, the
states reaching the largest maximal fidelity with zero deviation have
all three canonical correlation magnitudes equal:

    linear entropy l in [0, 8/9):   t = sqrt(1 - l),    F = (1 + t)/2
    CHSH value b in (2, 2 sqrt 2]:  t = b / (2 sqrt 2), F = (1 + t)/2
    concurrence c in (0, 1]:        t = (2c + 1)/3,     F = (2 + c)/3

Local-vector constraints differ per property: zero for linear entropy,
unconstrained for CHSH, opposite pair (r + s = 0 in the canonical
frame) for concurrence.  The concurrence certificates run through the
partial-transpose eigenvector characterization: fidelity saturates the
concurrence bound exactly when the minimal eigenvector of rho^Gamma is
maximally entangled.
"""

from dataclasses import dataclass

import numpy as np

from .canonical import canonicalize, compose_canonical
from .errors import (
    MismatchedProperty,
    NotEntangled,
    OutOfRange,
    PreconditionFailed,
)
from .kernel import hermitian_eig
from .metrics import UNIVERSAL_TOL, fidelity_deviation, max_fidelity
from .properties import chsh, concurrence, linear_entropy
from .states import partial_transpose

LINEAR_ENTROPY = "linear_entropy"
CHSH_B = "chsh_b"
CONCURRENCE = "concurrence"
KINDS = (LINEAR_ENTROPY, CHSH_B, CONCURRENCE)

TWO_ROOT2 = 2.0 * np.sqrt(2.0)
PROPERTY_MATCH_TOL = 1e-6
CONDITION_TOL = 1e-7
MAX_ENTANGLED_TOL = 1e-7


@dataclass
class OptimalFamilySpec:
    kind: str
    value: float
    t_abs_target: np.ndarray
    f_largest: float
    local_vector_constraint: str  # must_be_zero | unconstrained | r_plus_s_zero


@dataclass
class OptimalityVerdict:
    is_largest_max_fidelity: bool
    is_zero_deviation: bool
    is_optimal: bool
    witness: dict


@dataclass
class SaturationCheck:
    saturates: bool
    lambda_min: float
    eigvec_max_entangled: bool
    eigvec: np.ndarray


def _check_range(kind, value):
    if kind == LINEAR_ENTROPY:
        if not 0.0 <= value < 8.0 / 9.0:
            raise OutOfRange(f"L must lie in [0, 8/9), got {value}")
    elif kind == CHSH_B:
        if not 2.0 < value <= TWO_ROOT2 + 1e-12:
            raise OutOfRange(f"B must lie in (2, 2*sqrt(2)], got {value}")
    elif kind == CONCURRENCE:
        if not 0.0 < value <= 1.0:
            raise OutOfRange(f"C must lie in (0, 1], got {value}")
    else:
        raise ValueError(f"unknown property kind {kind!r}")


def largest_max_fidelity(kind, value):
    """Closed-form largest maximal fidelity for a fixed property value."""
    _check_range(kind, value)
    if kind == LINEAR_ENTROPY:
        return 0.5 * (1.0 + np.sqrt(1.0 - value))
    if kind == CHSH_B:
        return 0.5 * (1.0 + value / TWO_ROOT2)
    return (2.0 + value) / 3.0


def target_t_abs(kind, value):
    _check_range(kind, value)
    if kind == LINEAR_ENTROPY:
        t = np.sqrt(1.0 - value)
    elif kind == CHSH_B:
        t = value / TWO_ROOT2
    else:
        t = (2.0 * value + 1.0) / 3.0
    return np.full(3, t)


def measure_property(rho, kind):
    if kind == LINEAR_ENTROPY:
        return linear_entropy(rho)
    if kind == CHSH_B:
        return chsh(rho)[1]
    if kind == CONCURRENCE:
        return concurrence(rho)
    raise ValueError(f"unknown property kind {kind!r}")


def optimal_for_linear_entropy(l):
    """Optimal family member for linear entropy l: R = S = 0, all t equal."""
    spec = OptimalFamilySpec(
        kind=LINEAR_ENTROPY,
        value=float(l),
        t_abs_target=target_t_abs(LINEAR_ENTROPY, l),
        f_largest=float(largest_max_fidelity(LINEAR_ENTROPY, l)),
        local_vector_constraint="must_be_zero",
    )
    rho = compose_canonical(np.zeros(3), np.zeros(3), spec.t_abs_target)
    return spec, rho


def optimal_for_chsh(b):
    """Optimal family member for CHSH value b (zero-vector representative)."""
    spec = OptimalFamilySpec(
        kind=CHSH_B,
        value=float(b),
        t_abs_target=target_t_abs(CHSH_B, b),
        f_largest=float(largest_max_fidelity(CHSH_B, b)),
        local_vector_constraint="unconstrained",
    )
    rho = compose_canonical(np.zeros(3), np.zeros(3), spec.t_abs_target)
    return spec, rho


def optimal_for_concurrence(c, r=None):
    """Optimal family member for concurrence c; optional local vector r.

    The family has s = -r; positivity of the requested member is
    enforced, raising NotPositive rather than clamping.
    """
    spec = OptimalFamilySpec(
        kind=CONCURRENCE,
        value=float(c),
        t_abs_target=target_t_abs(CONCURRENCE, c),
        f_largest=float(largest_max_fidelity(CONCURRENCE, c)),
        local_vector_constraint="r_plus_s_zero",
    )
    r = np.zeros(3) if r is None else np.asarray(r, dtype=float)
    rho = compose_canonical(r, -r, spec.t_abs_target)
    return spec, rho


def check_optimal(rho, kind, value):
    """Certify whether rho is optimal for the given property value.

    The claimed value must match the measured property within 1e-6
    (MismatchedProperty otherwise).  The verdict decomposes into the
    largest-maximal-fidelity flag (closed-form comparison, tolerance
    1e-7) and the zero-deviation flag.
    """
    _check_range(kind, value)
    measured = measure_property(rho, kind)
    if abs(measured - value) > PROPERTY_MATCH_TOL:
        raise MismatchedProperty(
            f"claimed {kind} = {value:.12g} but measured {measured:.12g}"
        )
    form = canonicalize(rho)
    f_rho = max_fidelity(form)
    delta = fidelity_deviation(form)
    f_target = largest_max_fidelity(kind, value)
    sum_t = float(np.sum(form.t_abs))
    if kind == CONCURRENCE:
        largest = abs(sum_t - (2.0 * value + 1.0)) < CONDITION_TOL
    else:
        largest = f_rho > f_target - CONDITION_TOL
    zero_dev = delta < UNIVERSAL_TOL
    witness = {
        "kind": kind,
        "value": float(value),
        "f_rho": float(f_rho),
        "f_largest": float(f_target),
        "delta": float(delta),
        "t_abs": [float(x) for x in form.t_abs],
        "sum_t_abs": sum_t,
        "largest_max_fidelity": bool(largest),
        "zero_deviation": bool(zero_dev),
    }
    if not largest:
        witness["failed"] = "maximal fidelity below the closed-form optimum"
    elif not zero_dev:
        witness["failed"] = "deviation nonzero"
    return OptimalityVerdict(
        is_largest_max_fidelity=bool(largest),
        is_zero_deviation=bool(zero_dev),
        is_optimal=bool(largest and zero_dev),
        witness=witness,
    )


def _reduced_bloch_distance(vec):
    """Trace distances of both one-qubit marginals of a ket from I/2."""
    psi = vec.reshape(2, 2)
    rho_a = psi @ psi.conj().T
    rho_b = psi.T @ psi.conj()
    dists = []
    for red in (rho_a, rho_b):
        m = red - 0.5 * np.eye(2)
        # Hermitian 2x2: eigenvalues from trace/determinant
        half_tr = m.trace().real / 2.0
        det = np.linalg.det(m).real
        disc = np.sqrt(max(half_tr * half_tr - det, 0.0))
        dists.append(abs(half_tr + disc) / 2.0 + abs(half_tr - disc) / 2.0)
    return max(dists)


def check_fidelity_concurrence_saturation(rho):
    """Does the fidelity-concurrence bound saturate for this state?

    Diagonalizes the partial transpose and tests whether the eigenvector
    of the minimal eigenvalue is maximally entangled (both marginals
    within trace distance 1e-7 of I/2).  Requires concurrence > 0.
    """
    c = concurrence(rho)
    if c <= 0.0:
        raise NotEntangled("state has zero concurrence")
    w, v = hermitian_eig(partial_transpose(rho))
    lam_min = float(w[0])
    vec = v[:, 0]
    max_ent = _reduced_bloch_distance(vec) < MAX_ENTANGLED_TOL
    return SaturationCheck(
        saturates=bool(max_ent),
        lambda_min=lam_min,
        eigvec_max_entangled=bool(max_ent),
        eigvec=vec.copy(),
    )


def unitary_covariance_check(rho, u, v, tol=1e-8, transformed_eigvec=None):
    """Verify covariance of the minimal-eigenvalue equation under u (x) v.

    For a saturating state with rho^Gamma |psi> = lambda_min |psi>, the
    rotated state (u x v) rho (u x v)^dag must have the same lambda_min
    with eigenvector (u x conj(v)) |psi>.  An explicit eigenvector can
    be injected for negative controls.
    """
    sat = check_fidelity_concurrence_saturation(rho)
    if not sat.saturates:
        raise PreconditionFailed("state does not saturate the concurrence bound")
    uv = np.kron(u, v)
    rho2 = uv @ rho @ uv.conj().T
    pt2 = partial_transpose(rho2)
    w2, _ = hermitian_eig(pt2)
    if abs(w2[0] - sat.lambda_min) > tol:
        return False
    psi2 = (
        np.kron(u, np.conj(v)) @ sat.eigvec
        if transformed_eigvec is None
        else np.asarray(transformed_eigvec, dtype=complex)
    )
    residual = np.linalg.norm(pt2 @ psi2 - sat.lambda_min * psi2)
    return bool(residual <= tol)
