#!/usr/bin/env python
"""Benchmark the numba kernels against the numpy (LAPACK) fallback.

Times the two hot kernels in isolation and the full analysis pipeline
(canonicalize + metrics + properties) that dominates ensemble runs.

    python bench/bench_kernels.py [--n 2000]
"""

import argparse
import time

import numpy as np

import telefid as tf
from telefid.kernel import available_backends
from telefid.metrics import fidelity_deviation, max_fidelity


def _time(label, fn, reps):
    fn()  # warm-up (numba compilation, caches)
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    per_call = (time.perf_counter() - start) / reps
    print(f"  {label:<28} {per_call * 1e6:10.1f} us/call")
    return per_call


def bench_backend(backend, n):
    rng = np.random.default_rng(123)
    herms = []
    for _ in range(64):
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        herms.append(0.5 * (a + a.conj().T))
    mats3 = [rng.uniform(-1.0, 1.0, (3, 3)) for _ in range(64)]
    states = [tf.sample_random_state(s, "ginibre-mixed") for s in range(64)]

    print(f"backend: {backend}")
    idx = iter(range(10**9))

    def eig_call():
        tf.hermitian_eig(herms[next(idx) % 64], backend=backend)

    def svd_call():
        tf.svd3_special(mats3[next(idx) % 64], backend=backend)

    t_eig = _time("hermitian_eig (4x4)", eig_call, n)
    t_svd = _time("svd3_special", svd_call, n)
    return t_eig, t_svd, states


def bench_pipeline(states, n):
    def pipeline():
        rho = states[pipeline.i % len(states)]
        pipeline.i += 1
        form = tf.canonicalize(rho)
        max_fidelity(form)
        fidelity_deviation(form)
        tf.concurrence(rho)
        tf.negativity(rho)

    pipeline.i = 0
    return _time("analysis pipeline / state", pipeline, n)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2000, help="calls per measurement")
    args = parser.parse_args()

    results = {}
    states = None
    for backend in available_backends():
        t_eig, t_svd, states = bench_backend(backend, args.n)
        results[backend] = (t_eig, t_svd)

    # the pipeline runs on the active default backend (TELEFID_KERNEL)
    print(f"pipeline backend: {tf.backend_name()}")
    bench_pipeline(states, min(args.n, 500))

    if len(results) == 2:
        eig_ratio = results["numpy"][0] / results["numba"][0]
        svd_ratio = results["numpy"][1] / results["numba"][1]
        print(f"speedup numba vs numpy: eig x{eig_ratio:.2f}, svd3 x{svd_ratio:.2f}")


if __name__ == "__main__":
    main()
