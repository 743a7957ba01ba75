"""Teleportation-protocol oracle.

The channel is simulated literally: Bell measurement on (input x first
resource qubit) as explicit 8x8 projector sandwiches, then the matched
Pauli correction on the remaining qubit.  The outcome/correction pairing
is pinned by requiring that a |phi+> resource teleports every input
perfectly: phi+ -> I, phi- -> Z, psi+ -> X, psi- -> Y.

Per-input fidelity is an exact quadratic in the Bloch vector, so its
Haar averages <f> and <f^2> are integrated exactly by any spherical
design of strength >= 4; the default rule is the 12-vertex icosahedron
(a 5-design).

With that correction pinning, the member of a local-unitary orbit that
maximizes the average fidelity is not the canonical representative
itself (whose sign pattern is singlet-aligned) but its image under a
pi-rotation of the second qubit about y; ``protocol_state`` builds it.
Feeding that state to ``fidelity_stats`` reproduces the closed-form
maximal fidelity and deviation.
"""

from dataclasses import dataclass

import numpy as np

from .canonical import canonical_state
from .errors import DesignTooWeak, OutOfRange
from .kernel import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, rotation_to_spin
from .states import BELL_KETS

_BELL_PROJ = np.stack([np.outer(k, k.conj()) for k in BELL_KETS])
_CORRECTIONS = np.stack([ID2, SIGMA_Z, SIGMA_X, SIGMA_Y])
_BELL_TENS = BELL_KETS.reshape(4, 2, 2)
_SIGMA_STACK = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])

# adjoint unitary of the y pi-rotation diag(-1, 1, -1)
_ADAPT_U2 = rotation_to_spin(np.diag([-1.0, 1.0, -1.0]))
_ADAPT = np.kron(ID2, _ADAPT_U2)


@dataclass
class QuadratureRule:
    nodes: np.ndarray  # (N, 3) unit vectors
    weights: np.ndarray  # (N,) positive, summing to 1
    design_strength: int


@dataclass
class FidelityStats:
    mean: float
    second_moment: float
    deviation: float
    method: str  # "design-exact" or "monte-carlo"
    n_samples: int = None
    std_error: float = None


def icosahedron_rule():
    """The 12 icosahedron vertices with equal weights (a spherical 5-design)."""
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    base = []
    for a in (-1.0, 1.0):
        for b in (-phi, phi):
            base.append((0.0, a, b))
            base.append((a, b, 0.0))
            base.append((b, 0.0, a))
    nodes = np.array(base) / np.sqrt(1.0 + phi * phi)
    weights = np.full(len(nodes), 1.0 / len(nodes))
    return QuadratureRule(nodes=nodes, weights=weights, design_strength=5)


def bloch_state(n):
    """Pure qubit density matrix (I + n.sigma)/2 for a unit Bloch vector."""
    n = np.asarray(n, dtype=float)
    return 0.5 * (ID2 + n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z)


def teleport_channel(resource, n):
    """Run the protocol for one input; returns (output state, fidelity).

    Literal implementation: joint = psi (x) resource on three qubits,
    each Bell outcome k contributes sigma_k Tr_12[(P_k x I) joint
    (P_k x I)] sigma_k to the averaged output.
    """
    psi = bloch_state(n)
    joint = np.kron(psi, np.asarray(resource, dtype=complex))
    out = np.zeros((2, 2), dtype=complex)
    for k in range(4):
        proj8 = np.kron(_BELL_PROJ[k], ID2)
        sandwiched = proj8 @ joint @ proj8
        cond = np.einsum("abcabd->cd", sandwiched.reshape(2, 2, 2, 2, 2, 2))
        out += _CORRECTIONS[k] @ cond @ _CORRECTIONS[k]
    fidelity = float(np.trace(out @ psi).real)
    return out, fidelity


def _fidelities(resource, nodes):
    """Vectorized per-input fidelities for a batch of Bloch vectors."""
    nodes = np.asarray(nodes, dtype=float)
    psi = 0.5 * (
        ID2[None, :, :] + np.einsum("nk,kij->nij", nodes, _SIGMA_STACK)
    )
    rho4 = np.asarray(resource, dtype=complex).reshape(2, 2, 2, 2)
    cond = np.einsum(
        "kab,nax,bcyd,kxy->nkcd",
        _BELL_TENS.conj(),
        psi,
        rho4,
        _BELL_TENS,
        optimize=True,
    )
    out = np.einsum("kuc,nkcd,kdv->nuv", _CORRECTIONS, cond, _CORRECTIONS)
    return np.einsum("nuv,nvu->n", out, psi).real


def fidelity_stats(resource, rule=None):
    """Exact <f> and <f^2> by spherical-design quadrature."""
    if rule is None:
        rule = icosahedron_rule()
    if rule.design_strength < 4:
        raise DesignTooWeak(
            f"need design strength >= 4 for exact second moments, "
            f"got {rule.design_strength}"
        )
    f = _fidelities(resource, rule.nodes)
    mean = float(rule.weights @ f)
    m2 = float(rule.weights @ (f * f))
    # centered second pass; algebraically m2 - mean^2 but without the
    # catastrophic cancellation on zero-deviation resources
    var = float(rule.weights @ (f - mean) ** 2)
    return FidelityStats(
        mean=mean,
        second_moment=m2,
        deviation=float(np.sqrt(max(var, 0.0))),
        method="design-exact",
    )


def fidelity_stats_mc(resource, n_samples, seed):
    """Monte-Carlo estimate over uniformly random inputs (seed-pinned)."""
    if n_samples < 100:
        raise ValueError("need at least 100 samples")
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    collected = []
    remaining = n_samples
    while remaining > 0:
        chunk = min(remaining, 16384)
        v = rng.standard_normal((chunk, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        f = _fidelities(resource, v)
        total += f.sum()
        total_sq += (f * f).sum()
        collected.append(f)
        remaining -= chunk
    mean = total / n_samples
    m2 = total_sq / n_samples
    var = max(sum(float(np.sum((f - mean) ** 2)) for f in collected) / n_samples, 0.0)
    std_error = float(np.sqrt(var / n_samples))
    return FidelityStats(
        mean=float(mean),
        second_moment=float(m2),
        deviation=float(np.sqrt(var)),
        method="monte-carlo",
        n_samples=int(n_samples),
        std_error=std_error,
    )


def protocol_state(form):
    """Orbit representative that the pinned protocol actually maximizes.

    Rotating the second qubit by pi about y flips the first and third
    correlation signs of the canonical state, aligning its sign pattern
    with the phi+ based corrections.
    """
    rho_c = canonical_state(form, check=False)
    return _ADAPT @ rho_c @ _ADAPT.conj().T


# --- brute-force verifiers for the constrained optimizations ---------------


def grid_verify_linear_entropy_optimum(l, resolution=2000):
    """Exhaustive (theta, phi) scan of the fixed-linear-entropy problem.

    The correlation magnitudes are parametrized on the sphere of radius
    A = sqrt(3 (1 - l)); returns (best t magnitudes, best sum, argmax
    angles).  The analytic optimum sits at theta = arctan(sqrt 2),
    phi = pi/4 with all magnitudes sqrt(1 - l).
    """
    if not 0.0 <= l < 8.0 / 9.0:
        raise OutOfRange(f"linear entropy must lie in [0, 8/9), got {l}")
    if resolution < 100:
        raise ValueError("resolution must be at least 100")
    amp = np.sqrt(3.0 * (1.0 - l))
    half_pi = 0.5 * np.pi
    # interior lattice of the open square (0, pi/2)^2
    theta = half_pi * np.arange(1, resolution) / resolution
    phi = half_pi * np.arange(1, resolution) / resolution
    sin_t = np.sin(theta)[:, None]
    cos_t = np.cos(theta)[:, None]
    trig_phi = (np.cos(phi) + np.sin(phi))[None, :]
    objective = amp * (sin_t * trig_phi + cos_t)
    flat = int(np.argmax(objective))
    it, ip = divmod(flat, len(phi))
    th, ph = float(theta[it]), float(phi[ip])
    best_t = amp * np.array(
        [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)]
    )
    return best_t, float(objective[it, ip]), (th, ph)


def grid_verify_chsh_optimum(b, resolution=2000):
    """Scan the fixed-CHSH problem: constrained pair plus third-magnitude sweep.

    The two largest magnitudes are sqrt(M) (cos theta, sin theta) with
    M = (b/2)^2; the third is swept up to min of the pair.  Returns
    (best t magnitudes descending, best sum); the optimum has all three
    equal to b / (2 sqrt 2) at theta = pi/4.
    """
    two_r2 = 2.0 * np.sqrt(2.0)
    if not 2.0 < b <= two_r2 + 1e-12:
        raise OutOfRange(f"CHSH value must lie in (2, 2*sqrt(2)], got {b}")
    if resolution < 100:
        raise ValueError("resolution must be at least 100")
    root_m = b / 2.0
    half_pi = 0.5 * np.pi
    # interior lattice of (0, pi/2); the kink of the objective at pi/4
    # falls on the grid whenever the resolution is even
    theta = half_pi * np.arange(1, resolution) / resolution
    ta = root_m * np.cos(theta)
    tb = root_m * np.sin(theta)
    cap = np.minimum(ta, tb)
    frac = np.arange(1, resolution + 1) / resolution
    objective = (ta + tb)[:, None] + cap[:, None] * frac[None, :]
    flat = int(np.argmax(objective))
    it, iu = divmod(flat, resolution)
    third = float(cap[it] * frac[iu])
    best_t = np.sort(np.array([ta[it], tb[it], third]))[::-1]
    return best_t, float(objective[it, iu])
