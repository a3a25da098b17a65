"""Hot numeric kernels, each with a numba implementation and a numpy fallback.

Two families live here:

* Majorana monomials. A product of Majorana operators maps every Fock basis
  state to exactly one basis state times a power of ``i``; it is stored as a
  ``(dest, ipow)`` pair of integer arrays instead of a dense matrix.
* Exact arithmetic in ``Z[zeta][1/sqrt2]`` with ``zeta = exp(i pi/4)``. An
  entry is four integer coefficients of ``1, zeta, zeta^2, zeta^3`` and a
  matrix shares one ``sqrt2`` denominator exponent ``k``. Batches carry shape
  ``(B, rows, cols, 4)`` plus ``k`` of shape ``(B,)``.

The public functions at the bottom dispatch on ``_backend.USE_NUMBA``; the
``*_nb`` and ``*_np`` variants stay importable for benchmarking.
"""

import numpy as np

from . import _backend
from ._backend import njit

# zeta^r * (a0, a1, a2, a3): new[t] = ROT_SIGN[r, t] * a[ROT_SRC[r, t]]
ROT_SRC = np.zeros((8, 4), dtype=np.int64)
ROT_SIGN = np.zeros((8, 4), dtype=np.int64)
for _r in range(8):
    for _t in range(4):
        _i = (_t - _r) % 8
        if _i < 4:
            ROT_SRC[_r, _t], ROT_SIGN[_r, _t] = _i, 1
        else:
            ROT_SRC[_r, _t], ROT_SIGN[_r, _t] = (_t + 4 - _r) % 8, -1

# structure constants of multiplication mod zeta^4 + 1
MUL = np.zeros((4, 4, 4), dtype=np.int64)
for _i in range(4):
    for _j in range(4):
        _e = _i + _j
        if _e < 4:
            MUL[_i, _j, _e] = 1
        else:
            MUL[_i, _j, _e - 4] = -1

ZETA_POWERS = np.exp(1j * np.pi / 4 * np.arange(4))

# lexicographic packing of one ring entry; coefficients must stay below this
_LEX_OFFSET = 1 << 14
_LEX_BASE = 1 << 15


# ---------------------------------------------------------------- monomials

@njit
def monomial_action_nb(num_modes, indices):
    dim = 1 << num_modes
    dest = np.empty(dim, dtype=np.int64)
    ipow = np.empty(dim, dtype=np.int64)
    for j in range(dim):
        state = j
        ph = 0
        for t in range(indices.shape[0]):
            idx = indices[t]
            q = (idx - 1) // 2
            low = state & ((1 << q) - 1)
            par = 0
            while low:
                par ^= 1
                low &= low - 1
            ph += 2 * par
            if idx % 2 == 0:
                # Y-type: Y|0> = i|1>, Y|1> = -i|0>
                ph += 1 if ((state >> q) & 1) == 0 else 3
            state ^= 1 << q
        dest[j] = state
        ipow[j] = ph % 4
    return dest, ipow


def monomial_action_np(num_modes, indices):
    dim = 1 << num_modes
    state = np.arange(dim, dtype=np.int64)
    ph = np.zeros(dim, dtype=np.int64)
    for idx in np.asarray(indices, dtype=np.int64):
        q = (int(idx) - 1) // 2
        low = state & ((1 << q) - 1)
        par = np.zeros(dim, dtype=np.int64)
        for b in range(q):
            par ^= (low >> b) & 1
        ph += 2 * par
        if idx % 2 == 0:
            ph += np.where(((state >> q) & 1) == 0, 1, 3)
        state = state ^ (1 << q)
    return state, ph % 4


@njit
def apply_monomial_left_nb(U, dest, ipow, c, s):
    n, m = U.shape
    out = np.empty_like(U)
    phases = np.array([1.0 + 0j, 1j, -1.0 + 0j, -1j])
    for j in range(n):
        for col in range(m):
            out[j, col] = c * U[j, col]
    for j in range(n):
        f = s * phases[ipow[j]]
        row = dest[j]
        for col in range(m):
            out[row, col] += f * U[j, col]
    return out


def apply_monomial_left_np(U, dest, ipow, c, s):
    out = c * U
    out[dest] += (s * (1j ** ipow))[:, None] * U
    return out


# ---------------------------------------------------------------- exact ring

@njit
def _reduce_one_nb(A, b, k):
    rows, cols = A.shape[1], A.shape[2]
    while k > 0:
        ok = True
        for r in range(rows):
            for c in range(cols):
                if (A[b, r, c, 0] - A[b, r, c, 2]) % 2 != 0 or (A[b, r, c, 1] - A[b, r, c, 3]) % 2 != 0:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
        for r in range(rows):
            for c in range(cols):
                a0, a1, a2, a3 = A[b, r, c, 0], A[b, r, c, 1], A[b, r, c, 2], A[b, r, c, 3]
                A[b, r, c, 0] = (a1 - a3) // 2
                A[b, r, c, 1] = (a0 + a2) // 2
                A[b, r, c, 2] = (a1 + a3) // 2
                A[b, r, c, 3] = (a2 - a0) // 2
        k -= 1
    return k


@njit
def ring_reduce_nb(A, k):
    A = A.copy()
    k = k.copy()
    for b in range(A.shape[0]):
        k[b] = _reduce_one_nb(A, b, k[b])
    return A, k


def _halve_np(a):
    a0, a1, a2, a3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    return np.stack([(a1 - a3) >> 1, (a0 + a2) >> 1, (a1 + a3) >> 1, (a2 - a0) >> 1], axis=-1)


def ring_reduce_np(A, k):
    A = A.copy()
    k = k.copy()
    axes = tuple(range(1, A.ndim - 1))
    while True:
        odd = ((A[..., 0] ^ A[..., 2]) | (A[..., 1] ^ A[..., 3])) & 1
        sel = ~np.any(odd, axis=axes) & (k > 0)
        if not sel.any():
            return A, k
        if sel.all():
            A = _halve_np(A)
        else:
            A[sel] = _halve_np(A[sel])
        k[sel] -= 1


@njit
def ring_monomial_step_nb(A, k, dest, ipow, sign):
    """Batch ``(I + sign*P) A / sqrt2`` for a row monomial ``P``."""
    B, rows, cols = A.shape[0], A.shape[1], A.shape[2]
    out = A.copy()
    for b in range(B):
        for j in range(rows):
            r = 2 * ipow[j]
            row = dest[j]
            for c in range(cols):
                for t in range(4):
                    i = (t - r) % 8
                    if i < 4:
                        out[b, row, c, t] += sign * A[b, j, c, i]
                    else:
                        out[b, row, c, t] -= sign * A[b, j, c, (t + 4 - r) % 8]
    k2 = k + 1
    for b in range(B):
        k2[b] = _reduce_one_nb(out, b, k2[b])
    return out, k2


def ring_monomial_step_np(A, k, dest, ipow, sign):
    ipow = np.asarray(ipow)
    moved = np.empty_like(A)
    for p in range(4):
        rows = np.nonzero(ipow == p)[0]
        if rows.size:
            # multiplying by i**p permutes and negates the zeta coefficients
            moved[:, rows] = A[:, rows][..., ROT_SRC[2 * p]] * ROT_SIGN[2 * p]
    out = A.copy()
    out[:, dest] += moved if sign == 1 else -moved
    return ring_reduce_np(out, k + 1)


@njit
def ring_canonical_nb(A):
    """Rotate every element by the zeta power that makes its first nonzero entry lexicographically minimal."""
    B, rows, cols = A.shape[0], A.shape[1], A.shape[2]
    out = A.copy()
    rots = np.zeros(B, dtype=np.int64)
    for b in range(B):
        fr, fc = -1, -1
        for r in range(rows):
            for c in range(cols):
                if A[b, r, c, 0] != 0 or A[b, r, c, 1] != 0 or A[b, r, c, 2] != 0 or A[b, r, c, 3] != 0:
                    fr, fc = r, c
                    break
            if fr >= 0:
                break
        if fr < 0:
            continue
        best = 0
        bestv = np.zeros(4, dtype=np.int64)
        cand = np.zeros(4, dtype=np.int64)
        for rr in range(8):
            for t in range(4):
                i = (t - rr) % 8
                if i < 4:
                    cand[t] = A[b, fr, fc, i]
                else:
                    cand[t] = -A[b, fr, fc, (t + 4 - rr) % 8]
            better = rr == 0
            if not better:
                for t in range(4):
                    if cand[t] < bestv[t]:
                        better = True
                        break
                    if cand[t] > bestv[t]:
                        break
            if better:
                best = rr
                for t in range(4):
                    bestv[t] = cand[t]
        rots[b] = best
        if best:
            for r in range(rows):
                for c in range(cols):
                    for t in range(4):
                        i = (t - best) % 8
                        if i < 4:
                            out[b, r, c, t] = A[b, r, c, i]
                        else:
                            out[b, r, c, t] = -A[b, r, c, (t + 4 - best) % 8]
    return out, rots


def ring_rotate_np(A, rots):
    """Multiply element ``b`` of the batch by ``zeta**rots[b]``."""
    src = ROT_SRC[rots]  # (B, 4)
    sgn = ROT_SIGN[rots]
    shape = (A.shape[0],) + (1,) * (A.ndim - 2) + (4,)
    idx = np.broadcast_to(src.reshape(shape), A.shape)
    return np.take_along_axis(A, idx, axis=-1) * sgn.reshape(shape)


def ring_canonical_np(A):
    B = A.shape[0]
    flat = A.reshape(B, -1, 4)
    nz = np.any(flat != 0, axis=2)
    first = np.argmax(nz, axis=1)
    entry = flat[np.arange(B), first]  # (B, 4)
    cands = entry[:, ROT_SRC] * ROT_SIGN[None]  # (B, 8, 4)
    if np.abs(cands).max(initial=0) >= _LEX_OFFSET:
        raise OverflowError("ring coefficient too large for lexicographic packing")
    packed = np.zeros(cands.shape[:2], dtype=np.int64)
    for t in range(4):
        packed = packed * _LEX_BASE + (cands[..., t] + _LEX_OFFSET)
    rots = np.argmin(packed, axis=1).astype(np.int64)
    rots[~nz.any(axis=1)] = 0
    return ring_rotate_np(A, rots), rots


@njit
def ring_matmul_nb(A, B):
    rows, inner, cols = A.shape[0], A.shape[1], B.shape[1]
    out = np.zeros((rows, cols, 4), dtype=np.int64)
    for r in range(rows):
        for m in range(inner):
            a0, a1, a2, a3 = A[r, m, 0], A[r, m, 1], A[r, m, 2], A[r, m, 3]
            if a0 == 0 and a1 == 0 and a2 == 0 and a3 == 0:
                continue
            for c in range(cols):
                b0, b1, b2, b3 = B[m, c, 0], B[m, c, 1], B[m, c, 2], B[m, c, 3]
                out[r, c, 0] += a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1
                out[r, c, 1] += a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2
                out[r, c, 2] += a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3
                out[r, c, 3] += a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
    return out


def ring_matmul_np(A, B):
    return np.einsum("rmi,mcj,ijt->rct", A, B, MUL)


def ring_to_complex(A, k):
    """Float view of an exact matrix (or batch, with ``k`` broadcast over the leading axis)."""
    z = A @ ZETA_POWERS
    k = np.asarray(k)
    return z / np.sqrt(2.0) ** k.reshape(k.shape + (1,) * (z.ndim - k.ndim))


# ---------------------------------------------------------------- float keys

def float_keys(U, projective, grid=2.0 ** 20, tol=1e-6):
    """Byte keys for a batch of complex arrays, rounded to a ``1/grid`` lattice.

    With ``projective`` set, each element is first rotated so its first entry
    of modulus above ``tol`` (row-major) is real and positive.
    """
    B = U.shape[0]
    flat = U.reshape(B, -1)
    if projective:
        big = np.abs(flat) > tol
        first = np.argmax(big, axis=1)
        lead = flat[np.arange(B), first]
        flat = flat * (np.abs(lead) / np.where(lead == 0, 1, lead))[:, None]
    ints = np.rint(np.concatenate([flat.real, flat.imag], axis=1) * grid).astype(np.int64)
    ints[ints == 0] = 0
    return [row.tobytes() for row in ints]


# ---------------------------------------------------------------- dispatch

if _backend.USE_NUMBA:
    monomial_action = monomial_action_nb
    apply_monomial_left = apply_monomial_left_nb
    ring_reduce = ring_reduce_nb
    ring_monomial_step = ring_monomial_step_nb
    ring_canonical = ring_canonical_nb
    ring_matmul_raw = ring_matmul_nb
else:
    monomial_action = monomial_action_np
    apply_monomial_left = apply_monomial_left_np
    ring_reduce = ring_reduce_np
    ring_monomial_step = ring_monomial_step_np
    ring_canonical = ring_canonical_np
    ring_matmul_raw = ring_matmul_np


def ring_matmul(A, ka, B, kb):
    """Exact product of two matrices; returns ``(C, kc)`` in reduced form."""
    C = ring_matmul_raw(np.ascontiguousarray(A, dtype=np.int64), np.ascontiguousarray(B, dtype=np.int64))
    C, kc = ring_reduce(C[None], np.array([ka + kb], dtype=np.int64))
    return C[0], int(kc[0])
