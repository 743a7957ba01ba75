"""Closed-form fidelity metrics against hand computations and the oracle."""

import numpy as np
import pytest

import telefid as tf
from telefid.canonical import CanonicalForm
from telefid.metrics import fidelity_deviation, max_fidelity

from conftest import conjugate_local, ginibre_states

ROOT90 = 3.0 * np.sqrt(10.0)


def _bare_form(t_abs, det_class):
    lam = [-1.0, -1.0, 1.0] if det_class == "positive" else [-1.0, -1.0, -1.0]
    return CanonicalForm(
        r=np.zeros(3),
        s=np.zeros(3),
        t_abs=np.asarray(t_abs, dtype=float),
        lam=np.array(lam),
        det_class=det_class,
    )


def test_max_fidelity_table():
    assert max_fidelity(_bare_form([1, 1, 1], "negative")) == pytest.approx(1.0)
    for p in (0.1, 0.5, 0.9):
        assert max_fidelity(_bare_form([p, p, p], "negative")) == pytest.approx((1 + p) / 2)
    assert max_fidelity(_bare_form([0.3, 0.3, 0.3], "positive")) == pytest.approx(0.55)
    assert max_fidelity(_bare_form([0.3, 0.3, 0.3], "positive")) <= 2 / 3


def test_fidelity_deviation_table():
    assert fidelity_deviation(_bare_form([0.7, 0.7, 0.7], "negative")) == pytest.approx(0.0)
    for c in (0.2, 0.6, 0.95):
        got = fidelity_deviation(_bare_form([1.0, c, c], "negative"))
        assert got == pytest.approx((1 - c) * np.sqrt(2) / ROOT90, abs=1e-12)
    got = fidelity_deviation(_bare_form([1.0, 1.0, 0.0], "zero"))
    assert got == pytest.approx(np.sqrt(2) / ROOT90, abs=1e-12)


def test_positive_det_permutations_match_sorted_shortcut():
    rng = np.random.default_rng(17)
    for _ in range(200):
        t = np.sort(rng.uniform(0.0, 1.0, 3))[::-1]
        form = _bare_form(t, "positive")
        assert max_fidelity(form) == pytest.approx(
            0.5 * (1 + (t[0] + t[1] - t[2]) / 3), abs=1e-12
        )
        shortcut = np.sqrt(
            (t[0] - t[1]) ** 2 + (t[0] + t[2]) ** 2 + (t[1] + t[2]) ** 2
        ) / ROOT90
        assert fidelity_deviation(form) == pytest.approx(shortcut, abs=1e-12)


def test_assess_examples():
    met = tf.assess(tf.make_bell(1))
    assert met.f_max == pytest.approx(1.0, abs=1e-12)
    assert met.delta == pytest.approx(0.0, abs=1e-12)
    assert met.useful and met.universal

    met = tf.assess(tf.make_werner(0.5))
    assert met.f_max == pytest.approx(0.75, abs=1e-12)
    assert met.useful and met.universal

    met = tf.assess(np.eye(4) / 4.0)
    assert met.f_max == pytest.approx(0.5, abs=1e-12)
    assert not met.useful and met.universal


def test_useful_iff_sum_exceeds_one():
    for rho in ginibre_states(150, seed0=2100):
        met = tf.assess(rho)
        form = tf.canonicalize(rho)
        assert met.useful == (met.f_max > 2 / 3)
        if form.det_class == "negative":
            assert met.useful == (form.t_abs.sum() > 1.0)
        else:
            assert met.f_max <= 2 / 3 + 1e-12


def test_witness_family_det_negative_but_not_useful():
    rho = tf.compose_canonical(np.zeros(3), np.zeros(3), [0.5, 0.25, 0.2])
    tf.validate(rho)
    met = tf.assess(rho)
    assert met.det_class == "negative"
    assert not met.useful


def test_local_unitary_invariance_of_metrics():
    for i, rho in enumerate(ginibre_states(50, seed0=2200)):
        met1 = tf.assess(rho)
        u = tf.random_unitary(2, 31_000 + i)
        v = tf.random_unitary(2, 32_000 + i)
        met2 = tf.assess(conjugate_local(rho, u, v))
        assert met2.f_max == pytest.approx(met1.f_max, abs=1e-9)
        assert met2.delta == pytest.approx(met1.delta, abs=1e-9)


def test_bound_chain():
    for rho in ginibre_states(200, seed0=2300):
        met = tf.assess(rho)
        assert met.delta**2 <= met.f_max * (1 - met.f_max) + 1e-12
        assert met.delta**2 <= 0.25 + 1e-12


def test_oracle_equivalence_sample():
    # the full three-class x 1200-state run lives in the acceptance suite
    states = ginibre_states(60, seed0=2400)
    states.append(tf.compose_canonical(np.zeros(3), np.zeros(3), [0.6, 0.3, 0.0]))
    for rho in states:
        met = tf.assess(rho)
        stats = tf.fidelity_stats(tf.protocol_state(tf.canonicalize(rho)))
        assert stats.mean == pytest.approx(met.f_max, abs=1e-9)
        assert stats.deviation == pytest.approx(met.delta, abs=1e-9)
