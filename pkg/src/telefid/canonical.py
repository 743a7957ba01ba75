"""Canonical form of a two-qubit state.

A product unitary U1 (x) U2 turns any state into a representative whose
correlation matrix is diag(lam_i * t_abs_i) with t_abs descending and
the sign pattern fixed by det T: all -1 when det T <= 0, and (-1, -1,
+1) when det T > 0 (the +1 sits on the smallest magnitude).  For
maximally entangled inputs this representative is the singlet.
"""

from dataclasses import dataclass, field

import numpy as np

from .kernel import ID2, rotation_to_spin, svd3_special
from .states import hs_compose, hs_decompose

DET_ZERO_TOL = 1e-12
DEGENERACY_TOL = 1e-6

_FLIP12 = np.diag([-1.0, -1.0, 1.0])  # proper rotation flipping two signs


def _eye3():
    return np.eye(3)


def _eye2c():
    return ID2.copy()


@dataclass
class CanonicalForm:
    """Canonical parameters plus the witnessing local rotations/unitaries."""

    r: np.ndarray
    s: np.ndarray
    t_abs: np.ndarray
    lam: np.ndarray
    det_class: str  # "negative" | "zero" | "positive"
    o1: np.ndarray = field(default_factory=_eye3)
    o2: np.ndarray = field(default_factory=_eye3)
    u1: np.ndarray = field(default_factory=_eye2c)
    u2: np.ndarray = field(default_factory=_eye2c)
    degenerate: bool = False

    def diag_t(self):
        """Signed diagonal of the canonical correlation matrix."""
        return self.lam * self.t_abs


def _pair_sign_gauge(o1, o2, r0, s0):
    """Flip (o1, o2) row pairs so canonical r, s get invariant signs.

    Flipping row k of both rotations negates (r_k, s_k) while leaving
    the diagonal correlations untouched; an even number of flips keeps
    both factors proper.  Driving the choice by the leading sign of each
    (r_k, s_k) pair makes the gauge independent of which orbit member
    was canonicalized, up to t_abs degeneracies.
    """
    flips = []
    for k in range(3):
        lead = r0[k] if abs(r0[k]) > 1e-9 else (s0[k] if abs(s0[k]) > 1e-9 else 0.0)
        if lead < 0.0:
            flips.append(k)
    if len(flips) % 2 == 1:
        if 2 in flips:
            flips.remove(2)
        else:
            flips.append(2)
    for k in flips:
        o1[k, :] *= -1.0
        o2[k, :] *= -1.0
        r0[k] = -r0[k]
        s0[k] = -s0[k]


def canonicalize(rho):
    """Construct the canonical form of a valid state."""
    form = hs_decompose(rho)
    o1s, d, o2s = svd3_special(form.T)
    det_t = d[0] * d[1] * d[2]
    if det_t < -DET_ZERO_TOL:
        det_class = "negative"
    elif det_t > DET_ZERO_TOL:
        det_class = "positive"
    else:
        det_class = "zero"
    # flipping the first two rows of o1 turns diag(d1, d2, d3) into
    # diag(-d1, -d2, d3), which realizes the sign rules in every class
    o1 = _FLIP12 @ o1s
    o2 = o2s.copy()
    r0 = o1 @ form.R
    s0 = o2 @ form.S
    _pair_sign_gauge(o1, o2, r0, s0)
    t_abs = np.array([d[0], d[1], abs(d[2])])
    if det_class == "positive":
        lam = np.array([-1.0, -1.0, 1.0])
    else:
        lam = np.array([-1.0, -1.0, -1.0])
    gaps = (t_abs[0] - t_abs[1], t_abs[1] - t_abs[2])
    return CanonicalForm(
        r=r0,
        s=s0,
        t_abs=t_abs,
        lam=lam,
        det_class=det_class,
        o1=o1,
        o2=o2,
        u1=rotation_to_spin(o1.T),
        u2=rotation_to_spin(o2.T),
        degenerate=bool(min(gaps) < DEGENERACY_TOL),
    )


def canonical_state(form, check=True):
    """Density matrix of a canonical form; NotPositive if inconsistent."""
    return hs_compose(form.r, form.s, np.diag(form.diag_t()), check=check)


def compose_canonical(r, s, t_abs, lam=(-1.0, -1.0, -1.0), check=True):
    """Build the state with local vectors r, s and correlations lam*t_abs."""
    diag = np.asarray(lam, dtype=float) * np.asarray(t_abs, dtype=float)
    return hs_compose(r, s, np.diag(diag), check=check)


def form_to_dict(form):
    """JSON-ready summary of a canonical form."""
    return {
        "t_abs": [float(x) for x in form.t_abs],
        "lambda": [int(x) for x in form.lam],
        "det_class": form.det_class,
        "r": [float(x) for x in form.r],
        "s": [float(x) for x in form.s],
        "degenerate": bool(form.degenerate),
    }
