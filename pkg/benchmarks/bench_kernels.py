"""Compare the numba kernels with their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``. The first jit call is timed
separately so compilation does not pollute the steady-state numbers.
"""

import argparse
import time

import numpy as np

from qchromatic import kernels
from qchromatic.core import TypeVector, enumerate_types
from qchromatic.designs import twin_prime_design
from qchromatic.representation import _bitsets, rep_from_family


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases(size):
    rng = np.random.default_rng(0)
    v = rng.integers(0, 2**20, size=size, dtype=np.uint64)
    s = rng.integers(0, 2**20, size=2000, dtype=np.uint64)
    yield "residue_counts_bits", (v, s)

    dv = rng.integers(0, 3, size=(size // 4, 9))
    ds = rng.integers(0, 3, size=(500, 9))
    yield "residue_counts_digits", (dv, ds, 3)

    rep = rep_from_family(twin_prime_design(5))
    words = _bitsets(np.arange(size, dtype=np.int64), rep.n)
    yield "flat_rows", (words, rep.blockmasks(), rep.dimension)


def convolution_case():
    from qchromatic import spectrum

    gen = TypeVector((6, 6, 6))
    types = list(enumerate_types(3, 18))

    def run():
        spectrum.residue_counts.cache_clear()
        for t in types:
            spectrum.residue_counts(t, gen)

    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    print(f"{'kernel':24} {'numpy s':>10} {'jit s':>10} {'first jit s':>12} {'speedup':>8}")
    for name, argv in cases(args.size):
        jit = getattr(kernels, f"{name}_jit")
        ref = getattr(kernels, f"{name}_numpy")
        first = best_of(lambda: jit(*argv), 1)
        t_jit = best_of(lambda: jit(*argv), args.repeat)
        t_np = best_of(lambda: ref(*argv), args.repeat)
        assert np.array_equal(jit(*argv), ref(*argv))
        print(f"{name:24} {t_np:10.4f} {t_jit:10.4f} {first:12.4f} {t_np / t_jit:8.1f}")

    saved = (kernels.class_step, kernels.last_class)
    run = convolution_case()
    timings = {}
    try:
        for flavour in ("numpy", "jit"):
            kernels.class_step = getattr(kernels, f"class_step_{flavour}")
            kernels.last_class = getattr(kernels, f"last_class_{flavour}")
            run()
            timings[flavour] = best_of(run, args.repeat)
    finally:
        kernels.class_step, kernels.last_class = saved
    print(f"{'type convolution O_18,3':24} {timings['numpy']:10.4f} {timings['jit']:10.4f} {'-':>12} "
          f"{timings['numpy'] / timings['jit']:8.1f}")


if __name__ == "__main__":
    main()
