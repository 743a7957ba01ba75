"""Kernel contracts: Hermitian eigensolver, special 3x3 SVD, SU(2) lift."""

import numpy as np
import pytest

import telefid as tf
from telefid.errors import NonHermitian
from telefid.kernel import available_backends

BACKENDS = available_backends()


def _random_hermitian(rng, n=4):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


@pytest.mark.parametrize("backend", BACKENDS)
def test_eig_identity_quarter(backend):
    w, v = tf.hermitian_eig(np.eye(4) / 4.0, backend=backend)
    assert np.allclose(w, 0.25, atol=1e-12)
    assert np.allclose(v.conj().T @ v, np.eye(4), atol=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_eig_bell_projector(backend):
    w, _ = tf.hermitian_eig(tf.make_bell(1), backend=backend)
    assert np.allclose(w, [0.0, 0.0, 0.0, 1.0], atol=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_eig_partial_transpose_of_bell(backend):
    pt = tf.partial_transpose(tf.make_bell(1))
    w, _ = tf.hermitian_eig(pt, backend=backend)
    assert np.allclose(w, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_eig_rejects_non_hermitian():
    m = np.eye(4, dtype=complex)
    m[0, 1] = 1e-6
    with pytest.raises(NonHermitian):
        tf.hermitian_eig(m)


@pytest.mark.parametrize("backend", BACKENDS)
def test_eig_residuals_and_trace(backend):
    rng = np.random.default_rng(11)
    for _ in range(200):
        h = _random_hermitian(rng)
        w, v = tf.hermitian_eig(h, backend=backend)
        assert np.all(np.diff(w) >= -1e-12)
        assert abs(w.sum() - h.trace().real) < 1e-9
        assert np.max(np.abs(h @ v - v * w)) < 1e-9
        assert np.max(np.abs(v.conj().T @ v - np.eye(4))) < 1e-9


def test_eig_deterministic_phase():
    rng = np.random.default_rng(3)
    h = _random_hermitian(rng)
    w1, v1 = tf.hermitian_eig(h)
    w2, v2 = tf.hermitian_eig(h.copy())
    assert np.array_equal(w1, w2)
    assert np.array_equal(v1, v2)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("n", [2, 8])
def test_eig_other_sizes(backend, n):
    rng = np.random.default_rng(13 + n)
    h = _random_hermitian(rng, n=n)
    w, v = tf.hermitian_eig(h, backend=backend)
    assert np.max(np.abs(h @ v - v * w)) < 1e-9
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-9


@pytest.mark.parametrize("backend", BACKENDS)
def test_svd3_identity(backend):
    o1, d, o2 = tf.svd3_special(np.eye(3), backend=backend)
    assert np.allclose(d, 1.0, atol=1e-14)
    assert tf.is_rotation(o1) and tf.is_rotation(o2)
    assert np.allclose(o1 @ np.eye(3) @ o2.T, np.diag(d), atol=1e-14)


@pytest.mark.parametrize("backend", BACKENDS)
def test_svd3_absorbs_negative_determinant(backend):
    t = np.diag([1.0, -1.0, 1.0])
    o1, d, o2 = tf.svd3_special(t, backend=backend)
    assert np.allclose(d, [1.0, 1.0, -1.0], atol=1e-14)
    assert tf.is_rotation(o1) and tf.is_rotation(o2)
    assert np.max(np.abs(o1 @ t @ o2.T - np.diag(d))) < 1e-14


@pytest.mark.parametrize("backend", BACKENDS)
def test_svd3_reconstruction_ensemble(backend):
    # 10^4 random matrices with entries in [-1, 1]
    rng = np.random.default_rng(29)
    worst = 0.0
    for _ in range(10_000):
        t = rng.uniform(-1.0, 1.0, (3, 3))
        o1, d, o2 = tf.svd3_special(t, backend=backend)
        worst = max(worst, np.max(np.abs(o1.T @ np.diag(d) @ o2 - t)))
        assert d[0] >= d[1] >= abs(d[2]) - 1e-12
        assert np.sign(d[2]) in (0.0, np.sign(np.linalg.det(t)))
    assert worst < 1e-9


def test_svd3_backends_agree_on_values():
    if len(BACKENDS) < 2:
        pytest.skip("only one backend available")
    rng = np.random.default_rng(31)
    for _ in range(200):
        t = rng.uniform(-1.0, 1.0, (3, 3))
        d_sets = [tf.svd3_special(t, backend=b)[1] for b in BACKENDS]
        assert np.allclose(d_sets[0], d_sets[1], atol=1e-10)


def test_svd3_rank_deficient_inputs():
    for t in (
        np.zeros((3, 3)),
        np.diag([1.0, 0.0, 0.0]),
        np.diag([0.7, 0.7, 0.0]),
        np.outer([1.0, 2.0, -1.0], [0.5, 0.0, 0.25]),
    ):
        o1, d, o2 = tf.svd3_special(t)
        assert tf.is_rotation(o1) and tf.is_rotation(o2)
        assert np.max(np.abs(o1.T @ np.diag(d) @ o2 - t)) < 1e-12


def test_rotation_to_spin_identity():
    u = tf.rotation_to_spin(np.eye(3))
    assert np.allclose(u, np.eye(2), atol=1e-14)


def test_rotation_to_spin_pi_about_z():
    o = np.diag([-1.0, -1.0, 1.0])
    u = tf.rotation_to_spin(o)
    expected = np.diag([np.exp(-0.5j * np.pi), np.exp(0.5j * np.pi)])
    assert np.allclose(u, expected, atol=1e-12) or np.allclose(u, -expected, atol=1e-12)


def test_rotation_to_spin_adjoint_round_trip():
    # U (n.sigma) U^dag must equal (o.T n).sigma on all three axes
    rng = np.random.default_rng(37)
    paulis = (tf.kernel.SIGMA_X, tf.kernel.SIGMA_Y, tf.kernel.SIGMA_Z)
    for _ in range(100):
        o1, _, _ = tf.svd3_special(rng.standard_normal((3, 3)))
        u = tf.rotation_to_spin(o1)
        assert tf.is_special_unitary(u)
        for i in range(3):
            target = sum(o1.T[j, i] * paulis[j] for j in range(3))
            assert np.max(np.abs(u @ paulis[i] @ u.conj().T - target)) < 1e-9


def test_rotation_to_spin_rejects_improper():
    with pytest.raises(ValueError):
        tf.rotation_to_spin(np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(ValueError):
        tf.rotation_to_spin(np.ones((3, 3)))


def test_backend_name_reported():
    assert tf.backend_name() in BACKENDS
