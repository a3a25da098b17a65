"""Time the numba kernels against their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is warmed up
once (so numba compilation is excluded) and then timed as the best of several
repeats. Results from the two paths are compared before timing.
"""

import argparse
import time

import numpy as np

from majorana_hybrid import kernels
from majorana_hybrid.core import build_fock, monomial


def best_of(fn, repeats):
    fn()
    times = []
    for _ in range(repeats):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def random_ring_batch(rng, batch, d, cols):
    A = rng.integers(-3, 4, size=(batch, d, cols, 4)).astype(np.int64)
    k = rng.integers(0, 4, size=batch).astype(np.int64)
    return A, k


def cases(rng, modes, batch):
    space = build_fock(2 * modes)
    d = space.dimension
    idx = np.array([1, 2, 2 * modes - 1, 2 * modes], dtype=np.int64)
    dest, ipow = monomial(space, (1, 2))
    dest = np.asarray(dest)
    ipow = np.asarray(ipow)
    U = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    A, k = random_ring_batch(rng, batch, d, d)
    yield "monomial_action", (modes, idx), kernels.monomial_action_nb, kernels.monomial_action_np
    yield "apply_monomial_left", (U, dest, ipow, 0.6, 0.8), kernels.apply_monomial_left_nb, kernels.apply_monomial_left_np
    yield "ring_monomial_step", (A, k, dest, ipow, 1), kernels.ring_monomial_step_nb, kernels.ring_monomial_step_np
    yield "ring_reduce", (2 * A, k + 2), kernels.ring_reduce_nb, kernels.ring_reduce_np
    yield "ring_canonical", (A,), kernels.ring_canonical_nb, kernels.ring_canonical_np
    yield "ring_matmul", (A[0], A[1]), kernels.ring_matmul_nb, kernels.ring_matmul_np


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.allclose(a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--modes", type=int, default=4, help="fermion modes (Fock dimension 2**modes)")
    ap.add_argument("--batch", type=int, default=2048, help="batch size for ring kernels")
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, call_args, nb, npf in cases(rng, args.modes, args.batch):
        if not same(nb(*call_args), npf(*call_args)):
            raise SystemExit(f"{name}: numba and numpy results differ")
        t_nb = best_of(lambda: nb(*call_args), args.repeats)
        t_np = best_of(lambda: npf(*call_args), args.repeats)
        print(f"{name:<22}{t_nb * 1e3:>12.3f}{t_np * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
