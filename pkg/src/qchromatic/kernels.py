"""Hot inner loops, each in a numba and a pure-numpy flavour.

Set ``QCHROMATIC_DISABLE_JIT=1`` (or run without numba installed) to route
every public kernel to its numpy twin. Both flavours are always importable
under ``*_jit`` / ``*_numpy`` names so the benchmark and the tests can compare
them directly.

Integer work that can overflow is done modulo primes below 2^31 so that a
product of two residues plus an accumulator stays inside int64.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("QCHROMATIC_DISABLE_JIT", "").strip().lower() in {"1", "true", "yes"}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USE_JIT = HAVE_NUMBA and not _DISABLED


def backend() -> str:
    return "numba" if USE_JIT else "numpy"


# ---------------------------------------------------------------------------
# Multimodular type convolution (one symbol class at a time)


@njit(cache=True)
def class_step_jit(states, comps, shifts, g, strides, fact, invfact, moduli, p, c):
    nstates = states.shape[0]
    nmod = moduli.shape[0]
    ncomp = comps.shape[0]
    out = np.zeros_like(states)
    used = np.empty(p, np.int64)
    w = np.empty(nmod, np.int64)
    for idx in range(nstates):
        live = False
        for r in range(p):
            for q in range(nmod):
                if states[idx, r, q] != 0:
                    live = True
        if not live:
            continue
        rem = idx
        for j in range(p):
            used[j] = rem // strides[j]
            rem -= used[j] * strides[j]
        for k in range(ncomp):
            off = 0
            ok = True
            for j in range(p):
                if used[j] + comps[k, j] > g[j]:
                    ok = False
                    break
                off += comps[k, j] * strides[j]
            if not ok:
                continue
            for q in range(nmod):
                m = moduli[q]
                x = fact[c, q]
                for j in range(p):
                    x = x * invfact[comps[k, j], q] % m
                w[q] = x
            dst = idx + off
            for r in range(p):
                nr = (r + shifts[k]) % p
                for q in range(nmod):
                    s = states[idx, r, q]
                    if s != 0:
                        out[dst, nr, q] = (out[dst, nr, q] + s * w[q]) % moduli[q]
    return out


def class_step_numpy(states, comps, shifts, g, strides, fact, invfact, moduli, p, c):
    nstates = states.shape[0]
    used = (np.arange(nstates)[:, None] // strides[None, :]) % (g + 1)[None, :]
    live = np.nonzero(states.any(axis=(1, 2)))[0]
    out = np.zeros_like(states)
    for k in range(comps.shape[0]):
        m = comps[k]
        ok = live[np.all(used[live] + m[None, :] <= g[None, :], axis=1)]
        if ok.size == 0:
            continue
        w = fact[c].copy()
        for j in range(p):
            w = w * invfact[m[j]] % moduli
        dst = ok + int(m @ strides)
        contrib = states[ok] * w[None, None, :] % moduli[None, None, :]
        contrib = np.roll(contrib, int(shifts[k]), axis=1)
        out[dst] = (out[dst] + contrib) % moduli[None, None, :]
    return out


@njit(cache=True)
def last_class_jit(states, g, strides, fact, invfact, moduli, p, c, sym):
    nstates = states.shape[0]
    nmod = moduli.shape[0]
    counts = np.zeros((p, nmod), np.int64)
    used = np.empty(p, np.int64)
    for idx in range(nstates):
        rem = idx
        for j in range(p):
            used[j] = rem // strides[j]
            rem -= used[j] * strides[j]
        total = 0
        shift = 0
        for j in range(p):
            total += g[j] - used[j]
            shift += j * (g[j] - used[j])
        if total != c:
            continue
        shift = (sym * shift) % p
        for q in range(nmod):
            m = moduli[q]
            x = fact[c, q]
            for j in range(p):
                x = x * invfact[g[j] - used[j], q] % m
            for r in range(p):
                s = states[idx, r, q]
                if s != 0:
                    nr = (r + shift) % p
                    counts[nr, q] = (counts[nr, q] + s * x) % m
    return counts


def last_class_numpy(states, g, strides, fact, invfact, moduli, p, c, sym):
    nstates = states.shape[0]
    used = (np.arange(nstates)[:, None] // strides[None, :]) % (g + 1)[None, :]
    m = g[None, :] - used
    sel = np.nonzero((m.sum(axis=1) == c) & states.any(axis=(1, 2)))[0]
    counts = np.zeros((p, moduli.shape[0]), np.int64)
    if sel.size == 0:
        return counts
    m = m[sel]
    w = np.broadcast_to(fact[c], (sel.size, moduli.shape[0])).copy()
    for j in range(p):
        w = w * invfact[m[:, j]] % moduli[None, :]
    shift = (sym * (m @ np.arange(p))) % p
    for r in range(p):
        contrib = states[sel, r, :] * w % moduli[None, :]
        dest = (r + shift) % p
        for a in range(p):
            rows = contrib[dest == a]
            if rows.size:
                counts[a] = (counts[a] + rows.sum(axis=0) % moduli) % moduli
    return counts


# ---------------------------------------------------------------------------
# Brute-force character residue counts


@njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def residue_counts_bits_jit(vbits, sbits):
    out = np.zeros((vbits.shape[0], 2), np.int64)
    for i in range(vbits.shape[0]):
        odd = 0
        v = vbits[i]
        for k in range(sbits.shape[0]):
            odd += _popcount64(v & sbits[k]) & np.uint64(1)
        out[i, 1] = odd
        out[i, 0] = sbits.shape[0] - odd
    return out


def residue_counts_bits_numpy(vbits, sbits, chunk=4096):
    out = np.zeros((vbits.shape[0], 2), np.int64)
    for lo in range(0, vbits.shape[0], chunk):
        block = vbits[lo : lo + chunk, None] & sbits[None, :]
        odd = (np.bitwise_count(block) & 1).sum(axis=1)
        out[lo : lo + chunk, 1] = odd
        out[lo : lo + chunk, 0] = sbits.shape[0] - odd
    return out


@njit(cache=True)
def residue_counts_digits_jit(vdigits, sdigits, p):
    nv, n = vdigits.shape
    out = np.zeros((nv, p), np.int64)
    for i in range(nv):
        for k in range(sdigits.shape[0]):
            acc = 0
            for j in range(n):
                acc += vdigits[i, j] * sdigits[k, j]
            out[i, acc % p] += 1
    return out


def residue_counts_digits_numpy(vdigits, sdigits, p, chunk=2048):
    out = np.zeros((vdigits.shape[0], p), np.int64)
    st = sdigits.T.astype(np.int64)
    for lo in range(0, vdigits.shape[0], chunk):
        res = (vdigits[lo : lo + chunk].astype(np.int64) @ st) % p
        for a in range(p):
            out[lo : lo + chunk, a] = (res == a).sum(axis=1)
    return out


# ---------------------------------------------------------------------------
# Flat representation rows


@njit(cache=True)
def flat_rows_jit(vwords, bwords, dim):
    out = np.ones((vwords.shape[0], dim), np.int8)
    for i in range(vwords.shape[0]):
        for k in range(bwords.shape[0]):
            acc = np.uint64(0)
            for w in range(vwords.shape[1]):
                acc += _popcount64(vwords[i, w] & bwords[k, w])
            if acc & np.uint64(1):
                out[i, k] = -1
    return out


def flat_rows_numpy(vwords, bwords, dim):
    """Rows of (-1)^{|v & B_k|} for k < len(bwords), padded with +1 to ``dim``.

    Vertices and blocks are multiword bitsets of shape (count, words).
    """
    out = np.ones((vwords.shape[0], dim), np.int8)
    odd = np.bitwise_count(vwords[:, None, :] & bwords[None, :, :]).sum(axis=2) & 1
    out[:, : bwords.shape[0]] = 1 - 2 * odd.astype(np.int8)
    return out


if USE_JIT:
    class_step = class_step_jit
    last_class = last_class_jit
    residue_counts_bits = residue_counts_bits_jit
    residue_counts_digits = residue_counts_digits_jit
    flat_rows = flat_rows_jit
else:
    class_step = class_step_numpy
    last_class = last_class_numpy
    residue_counts_bits = residue_counts_bits_numpy
    residue_counts_digits = residue_counts_digits_numpy
    flat_rows = flat_rows_numpy
