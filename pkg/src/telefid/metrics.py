"""Closed-form maximal fidelity and fidelity deviation.

Both quantities are functions of the canonical correlation magnitudes
and the sign of det T:

    det T <= 0:  F = (1 + sum(t)/3) / 2
                 Delta = sqrt(sum_{i<j} (t_i - t_j)^2) / (3 sqrt(10))
    det T  > 0:  F = (1 + max_k (t_i + t_j - t_k)/3) / 2
                 Delta = min_k sqrt((t_i - t_j)^2 + (t_i + t_k)^2
                                    + (t_j + t_k)^2) / (3 sqrt(10))

where {i, j} always denotes the pair complementary to k.  A state is
useful when F exceeds the classical bound 2/3 and universal when its
deviation vanishes.
"""

from dataclasses import dataclass

import numpy as np

from .canonical import canonicalize

CLASSICAL_BOUND = 2.0 / 3.0
UNIVERSAL_TOL = 1e-9

_NORM = 3.0 * np.sqrt(10.0)
# the three (i, j | k) splittings of {0, 1, 2}
_SPLITS = ((1, 2, 0), (0, 2, 1), (0, 1, 2))


@dataclass
class TeleportMetrics:
    f_max: float
    delta: float
    det_class: str
    useful: bool
    universal: bool


def max_fidelity(form):
    t = form.t_abs
    if form.det_class in ("negative", "zero"):
        return 0.5 * (1.0 + (t[0] + t[1] + t[2]) / 3.0)
    best = max(t[i] + t[j] - t[k] for i, j, k in _SPLITS)
    return 0.5 * (1.0 + best / 3.0)


def fidelity_deviation(form):
    t = form.t_abs
    if form.det_class in ("negative", "zero"):
        acc = (t[0] - t[1]) ** 2 + (t[0] - t[2]) ** 2 + (t[1] - t[2]) ** 2
        return float(np.sqrt(acc)) / _NORM
    best = min(
        (t[i] - t[j]) ** 2 + (t[i] + t[k]) ** 2 + (t[j] + t[k]) ** 2
        for i, j, k in _SPLITS
    )
    return float(np.sqrt(best)) / _NORM


def assess(rho):
    """Canonicalize and evaluate both formulas plus the two flags."""
    form = canonicalize(rho)
    f = max_fidelity(form)
    delta = fidelity_deviation(form)
    return TeleportMetrics(
        f_max=float(f),
        delta=float(delta),
        det_class=form.det_class,
        useful=bool(f > CLASSICAL_BOUND),
        universal=bool(delta < UNIVERSAL_TOL),
    )
