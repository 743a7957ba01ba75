"""Shared helpers for the test suite.  All randomness is seed-pinned."""

import numpy as np
import pytest

import telefid as tf


def ginibre_states(n, seed0):
    return [tf.sample_random_state(seed0 + i, "ginibre-mixed") for i in range(n)]


def haar_pure_states(n, seed0):
    return [tf.sample_random_state(seed0 + i, "haar-pure") for i in range(n)]


def product_pure_state(seed):
    """Random product state; its correlation matrix has rank one."""
    rng = np.random.default_rng(seed)
    kets = []
    for _ in range(2):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        kets.append(v / np.linalg.norm(v))
    ket = np.kron(kets[0], kets[1])
    return np.outer(ket, ket.conj())


def conjugate_local(rho, u, v):
    uv = np.kron(u, v)
    return uv @ rho @ uv.conj().T


@pytest.fixture(scope="session")
def dominance_ensemble():
    """10^4 Ginibre-random states shared by the heavyweight checks."""
    return ginibre_states(10_000, seed0=500_000)
