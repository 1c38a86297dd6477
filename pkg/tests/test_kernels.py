import os
import subprocess
import sys

import numpy as np
import pytest

from qchromatic import kernels
from qchromatic.core import TypeVector
from qchromatic.spectrum import residue_counts_reference

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


def test_backend_reflects_flag():
    assert kernels.backend() == ("numba" if kernels.USE_JIT else "numpy")


@needs_numba
def test_residue_counts_bits_flavours_agree():
    rng = np.random.default_rng(0)
    v = rng.integers(0, 2**20, size=300, dtype=np.uint64)
    s = rng.integers(0, 2**20, size=77, dtype=np.uint64)
    assert np.array_equal(kernels.residue_counts_bits_jit(v, s), kernels.residue_counts_bits_numpy(v, s))


@needs_numba
@pytest.mark.parametrize("p", [3, 5])
def test_residue_counts_digits_flavours_agree(p):
    rng = np.random.default_rng(p)
    v = rng.integers(0, p, size=(200, 7))
    s = rng.integers(0, p, size=(50, 7))
    a = kernels.residue_counts_digits_jit(v, s, p)
    b = kernels.residue_counts_digits_numpy(v, s, p)
    assert np.array_equal(a, b)
    brute = np.stack([((v @ s.T) % p == r).sum(axis=1) for r in range(p)], axis=1)
    assert np.array_equal(a, brute)


@needs_numba
def test_flat_rows_flavours_agree():
    rng = np.random.default_rng(1)
    v = rng.integers(0, 2**63, size=(100, 2), dtype=np.uint64)
    b = rng.integers(0, 2**63, size=(9, 2), dtype=np.uint64)
    a = kernels.flat_rows_jit(v, b, 12)
    c = kernels.flat_rows_numpy(v, b, 12)
    assert np.array_equal(a, c)
    assert (a[:, 9:] == 1).all()


@needs_numba
def test_convolution_flavours_agree():
    from qchromatic import spectrum

    saved = (kernels.class_step, kernels.last_class)
    try:
        results = []
        for flavour in ("jit", "numpy"):
            kernels.class_step = getattr(kernels, f"class_step_{flavour}")
            kernels.last_class = getattr(kernels, f"last_class_{flavour}")
            spectrum.residue_counts.cache_clear()
            results.append([spectrum.residue_counts(TypeVector(v), TypeVector(g))
                            for v, g in [((3, 4, 5), (4, 4, 4)), ((1, 1, 10), (4, 4, 4)), ((6, 6), (10, 2)),
                                         ((2, 3, 1, 0, 4), (2, 2, 2, 2, 2))]])
        assert results[0] == results[1]
        assert results[0][0] == residue_counts_reference(TypeVector((3, 4, 5)), TypeVector((4, 4, 4)))
    finally:
        kernels.class_step, kernels.last_class = saved
        spectrum.residue_counts.cache_clear()


def test_numpy_fallback_selected_by_env():
    code = ("from qchromatic import kernels, full_spectrum\n"
            "from qchromatic.families import orthogonality_graph\n"
            "print(kernels.backend(), full_spectrum(orthogonality_graph(3, 2)).bound)\n")
    env = dict(os.environ, QCHROMATIC_DISABLE_JIT="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "6"]
