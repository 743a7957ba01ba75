"""State-property measures: linear entropy, Bell-CHSH, concurrence,
negativity.

The Bell-CHSH quantity M is the sum of the two largest squared singular
values of the correlation matrix; the maximal mean value of the CHSH
observable is B = 2 sqrt(M), with violation exactly when M > 1.
"""

from dataclasses import dataclass

import numpy as np

from .kernel import hermitian_eig, svd3_special
from .states import SPIN_FLIP, hs_decompose, partial_transpose

SQRT_CLAMP = 1e-12


@dataclass
class PropertyReport:
    linear_entropy: float
    chsh_m: float
    chsh_b: float
    concurrence: float
    negativity: float


def linear_entropy(rho):
    """Normalized linear entropy (4/3)(1 - Tr rho^2): 0 pure, 1 maximally mixed."""
    purity = np.trace(rho @ rho).real
    return float(4.0 / 3.0 * (1.0 - purity))


def chsh(rho):
    """Return (M, B) for the Bell-CHSH criterion."""
    t = hs_decompose(rho).T
    _, d, _ = svd3_special(t)
    m = float(d[0] * d[0] + d[1] * d[1])
    return m, float(2.0 * np.sqrt(m))


def concurrence(rho):
    """Wootters concurrence from the spin-flipped spectrum.

    Uses the Hermitian reformulation: the eigenvalues of
    sqrt(rho) (Y x Y) rho* (Y x Y) sqrt(rho) match those of the usual
    non-Hermitian product, and tiny eigenvalues are clamped to zero
    before the square roots.
    """
    rho = np.asarray(rho, dtype=complex)
    w, v = hermitian_eig(rho)
    sq = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    flipped = SPIN_FLIP @ rho.conj() @ SPIN_FLIP
    lam, _ = hermitian_eig(sq @ flipped @ sq)
    lam = np.clip(lam, 0.0, None)
    lam[lam < SQRT_CLAMP] = 0.0
    a = np.sort(np.sqrt(lam))[::-1]
    return float(max(0.0, a[0] - a[1] - a[2] - a[3]))


def negativity(rho):
    """N = max(0, -2 lambda_min(rho^Gamma))."""
    w, _ = hermitian_eig(partial_transpose(rho))
    return float(max(0.0, -2.0 * w[0]))


def property_report(rho):
    m, b = chsh(rho)
    return PropertyReport(
        linear_entropy=linear_entropy(rho),
        chsh_m=m,
        chsh_b=b,
        concurrence=concurrence(rho),
        negativity=negativity(rho),
    )
