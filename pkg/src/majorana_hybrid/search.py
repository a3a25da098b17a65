"""Exhaustive exploration of the finite group generated by braids.

Elements are kept exactly in ``Z[zeta][1/sqrt2]`` (see :mod:`kernels`) so a
finished enumeration doubles as a proof: a target absent from a closed group
cannot be produced by any braid word. A float mode with rounded keys exists for
cross-checking, and a compact Clifford mode handles the 8-Majorana group whose
dense exact storage would not fit in memory.

Words are lists of signed braid indices read as an operator product, so
``[2, -3]`` means ``B_2 B_3^{-1}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .core import FockSpace, build_fock, monomial
from .encoding import PHASE_EPS, Encoding
from .errors import BadParams, CapExceeded, DimensionMismatch, NonCommutingGenerators

DEFAULT_ELEMENT_CAP = 2_000_000
_CHUNK = 4096


def image_size_formula(num_majoranas: int) -> int:
    """Closed-form braid-image size for ``2n`` Majoranas."""
    n = num_majoranas // 2
    exp = 2 * n - 1 if n % 2 == 0 else 2 * n
    return (1 << exp) * math.factorial(2 * n)


@dataclass
class GroupEnumeration:
    num_majoranas: int
    generators: tuple
    mode: str
    order_projective: int
    order_linear: int
    completed: bool
    # exact mode with keep_elements: int16 coefficients (B, d, d, 4) and exponents (B,)
    elements: np.ndarray | None = field(default=None, repr=False)
    exponents: np.ndarray | None = field(default=None, repr=False)

    def formula_report(self) -> dict:
        expected = image_size_formula(self.num_majoranas)
        return {
            "formula": expected,
            "projective_matches": self.order_projective == expected,
            "linear_matches": self.order_linear == expected,
        }

    def to_document(self) -> dict:
        doc = {
            "num_majoranas": self.num_majoranas,
            "generators": [f"B{g}" for g in self.generators],
            "mode": self.mode,
            "order_projective": self.order_projective,
            "order_linear": self.order_linear,
            "completed": self.completed,
        }
        doc.update(self.formula_report())
        return doc


@dataclass(frozen=True)
class NotFound:
    """Search gave up: ``exhausted`` means the whole group was visited, so no word exists."""

    depth: int
    exhausted: bool
    explored: int


# ---------------------------------------------------------------- generators

def _default_generators(num_majoranas: int) -> tuple:
    return tuple(range(1, num_majoranas))


def _check_generators(num_majoranas: int, generators) -> tuple:
    gens = _default_generators(num_majoranas) if generators is None else tuple(int(g) for g in generators)
    if not gens:
        raise BadParams("need at least one generator")
    for g in gens:
        if not 1 <= g <= num_majoranas - 1:
            raise BadParams(f"braid B{g} does not exist on {num_majoranas} Majoranas")
    if len(set(gens)) != len(gens):
        raise BadParams(f"repeated generator in {gens}")
    return gens


def _letters(gens: tuple) -> list:
    """Generators and inverses in tie-break order ``B1, B1^-1, B2, ...``."""
    return [s * g for g in gens for s in (1, -1)]


def _braid_monomial(space: FockSpace, alpha: int, restrict: Encoding | None, transpose: bool):
    dest, ipow = monomial(space, (alpha, alpha + 1))
    dest = np.asarray(dest, dtype=np.int64)
    ipow = np.asarray(ipow, dtype=np.int64)
    if restrict is not None:
        phys = restrict.physical_indices
        # braids conserve parity, so code-space states map to code-space states
        dest = dest[phys] >> 1
        ipow = ipow[phys]
    if transpose:
        tdest = np.empty_like(dest)
        tipow = np.empty_like(ipow)
        tdest[dest] = np.arange(dest.size)
        tipow[dest] = ipow
        dest, ipow = tdest, tipow
    return dest, ipow


def _identity_exact(d: int, cols: int | None = None):
    cols = d if cols is None else cols
    A = np.zeros((1, d, cols, 4), dtype=np.int64)
    for i in range(min(d, cols)):
        A[0, i, i, 0] = 1
    return A, np.zeros(1, dtype=np.int64)


def linear_keys(A: np.ndarray, k: np.ndarray) -> list:
    """Byte key per exact element; equal keys mean equal matrices."""
    if A.size and np.abs(A).max() > np.iinfo(np.int16).max:
        raise OverflowError("ring coefficients exceed the int16 key range")
    flat = np.concatenate([A.reshape(A.shape[0], -1), k[:, None]], axis=1).astype(np.int16)
    n = flat.shape[1] * 2
    buf = flat.tobytes()
    return [buf[i * n:(i + 1) * n] for i in range(flat.shape[0])]


def projective_keys(A, k) -> list:
    """Byte key per exact element that ignores a global ``zeta`` power."""
    canon, _ = kernels.ring_canonical(np.ascontiguousarray(A))
    return linear_keys(canon, k)


def _chunks(n: int, size: int = _CHUNK):
    for lo in range(0, n, size):
        yield lo, min(n, lo + size)


# ---------------------------------------------------------------- enumeration

def _angle_ok(angle) -> Fraction | None:
    if isinstance(angle, Fraction) or isinstance(angle, int):
        return Fraction(angle)
    return None


def enumerate_group(space: FockSpace | int, generators: Sequence[int] | None = None, mode: str = "exact",
                    element_cap: int = DEFAULT_ELEMENT_CAP, angle=Fraction(1, 4),
                    keep_elements: bool = False) -> GroupEnumeration:
    """Close the identity under the generators and their inverses.

    ``mode`` is ``"exact"``, ``"float"`` or ``"clifford"``. ``angle`` is the
    rotation angle of every generator (a Fraction means a multiple of pi);
    exact and clifford modes accept only the braid angle pi/4. Raises
    :class:`CapExceeded` with a partial result once more than ``element_cap``
    linear elements have been found.
    """
    if isinstance(space, int):
        space = build_fock(space)
    gens = _check_generators(space.num_majoranas, generators)
    exact_angle = _angle_ok(angle)
    if mode in ("exact", "clifford") and exact_angle not in (Fraction(1, 4), Fraction(-1, 4)):
        raise BadParams(f"{mode} mode needs the braid angle pi/4, got {angle!r}")
    if mode == "exact":
        return _enumerate_exact(space, gens, element_cap, keep_elements)
    if mode == "float":
        theta = float(exact_angle) * math.pi if exact_angle is not None else float(angle)
        return _enumerate_float(space, gens, element_cap, theta)
    if mode == "clifford":
        return _enumerate_clifford(space, gens, element_cap)
    raise BadParams(f"unknown enumeration mode {mode!r}")


def _enumerate_exact(space, gens, cap, keep):
    d = space.dimension
    steps = [(_braid_monomial(space, abs(g), None, False), 1 if g > 0 else -1) for g in _letters(gens)]
    A, k = _identity_exact(d)
    linear = set(linear_keys(A, k))
    projective = set(projective_keys(A, k))
    kept_A, kept_k = [A.astype(np.int16)], [k]
    frontier = (A, k)

    def partial():
        return GroupEnumeration(space.num_majoranas, gens, "exact", len(projective), len(linear), False)

    while frontier[0].shape[0]:
        new_A, new_k = [], []
        for lo, hi in _chunks(frontier[0].shape[0]):
            fa, fk = frontier[0][lo:hi], frontier[1][lo:hi]
            for (dest, ipow), sign in steps:
                out, ok = kernels.ring_monomial_step(fa, fk, dest, ipow, sign)
                fresh = []
                for i, key in enumerate(linear_keys(out, ok)):
                    if key not in linear:
                        linear.add(key)
                        fresh.append(i)
                if not fresh:
                    continue
                sel_A, sel_k = out[fresh], ok[fresh]
                projective.update(projective_keys(sel_A, sel_k))
                new_A.append(sel_A)
                new_k.append(sel_k)
                if keep:
                    kept_A.append(sel_A.astype(np.int16))
                    kept_k.append(sel_k)
                if len(linear) > cap:
                    raise CapExceeded(f"enumeration passed {cap} elements", partial=partial())
        if not new_A:
            break
        frontier = (np.concatenate(new_A), np.concatenate(new_k))
    result = GroupEnumeration(space.num_majoranas, gens, "exact", len(projective), len(linear), True)
    if keep:
        result.elements = np.concatenate(kept_A)
        result.exponents = np.concatenate(kept_k)
    return result


def _float_step(U, dest, ipow, c, s):
    B, d, _ = U.shape
    flat = np.ascontiguousarray(U.transpose(1, 0, 2)).reshape(d, B * d)
    out = kernels.apply_monomial_left(flat, dest, ipow, c, s)
    return out.reshape(d, B, d).transpose(1, 0, 2)


def _enumerate_float(space, gens, cap, theta):
    d = space.dimension
    c = math.cos(theta)
    steps = [(_braid_monomial(space, abs(g), None, False), math.sin(theta) * (1 if g > 0 else -1))
             for g in _letters(gens)]
    frontier = np.eye(d, dtype=complex)[None]
    linear = set(kernels.float_keys(frontier, projective=False))
    projective = set(kernels.float_keys(frontier, projective=True))
    while frontier.shape[0]:
        new = []
        for lo, hi in _chunks(frontier.shape[0]):
            f = frontier[lo:hi]
            for (dest, ipow), s in steps:
                out = _float_step(f, dest, ipow, c, s)
                fresh = []
                for i, key in enumerate(kernels.float_keys(out, projective=False)):
                    if key not in linear:
                        linear.add(key)
                        fresh.append(i)
                if fresh:
                    sel = out[fresh]
                    projective.update(kernels.float_keys(sel, projective=True))
                    new.append(sel)
                if len(linear) > cap:
                    partial = GroupEnumeration(space.num_majoranas, gens, "float", len(projective), len(linear), False)
                    raise CapExceeded(f"enumeration passed {cap} elements", partial=partial)
        if not new:
            break
        frontier = np.concatenate(new)
    return GroupEnumeration(space.num_majoranas, gens, "float", len(projective), len(linear), True)


# ---------------------------------------------------------------- clifford mode
#
# A braid conjugates Majoranas into signed Majoranas, so an element is fixed up to
# a scalar by its signed permutation. The scalar is pinned by tracking the first
# column exactly and recording which zeta power canonicalizes it. All scalars in
# the group are 8th roots of unity, so (permutation, power) identifies an element.

_PERM_BITS = 5


def _pack(perm: np.ndarray, rot: np.ndarray) -> np.ndarray:
    """``perm`` holds signed 1-based targets, shape (B, M)."""
    code = np.where(perm < 0, (-perm - 1) | 16, perm - 1).astype(np.int64)
    key = np.zeros(perm.shape[0], dtype=np.int64)
    for j in range(perm.shape[1]):
        key = (key << _PERM_BITS) | code[:, j]
    return (key << 3) | rot


def _perm_step(perm: np.ndarray, alpha: int, sign: int) -> np.ndarray:
    # B_alpha: gamma_alpha -> gamma_{alpha+1}, gamma_{alpha+1} -> -gamma_alpha; the inverse flips both signs
    out = perm.copy()
    mag = np.abs(perm)
    sgn = np.sign(perm)
    out[mag == alpha] = (sgn * (alpha + 1) * sign)[mag == alpha]
    out[mag == alpha + 1] = (-sgn * alpha * sign)[mag == alpha + 1]
    return out


def _enumerate_clifford(space, gens, cap):
    m = space.num_majoranas
    if m * _PERM_BITS + 3 > 63:
        raise BadParams(f"clifford mode supports at most 12 Majoranas, got {m}")
    d = space.dimension
    steps = [(abs(g), 1 if g > 0 else -1, _braid_monomial(space, abs(g), None, False)) for g in _letters(gens)]
    perm = np.arange(1, m + 1, dtype=np.int64)[None]
    v, k = _identity_exact(d, cols=1)
    _, rot = kernels.ring_canonical(v)
    visited = np.sort(_pack(perm, rot))
    frontier = (perm, v.astype(np.int16), k)

    def partial():
        return GroupEnumeration(m, gens, "clifford", len(np.unique(visited >> 3)), len(visited), False)

    while frontier[0].shape[0]:
        level_keys, level_perm, level_v, level_k = [], [], [], []
        for lo, hi in _chunks(frontier[0].shape[0], 1 << 15):
            fp = frontier[0][lo:hi]
            fv = frontier[1][lo:hi].astype(np.int64)
            fk = frontier[2][lo:hi]
            for alpha, sign, (dest, ipow) in steps:
                p2 = _perm_step(fp, alpha, sign)
                v2, k2 = kernels.ring_monomial_step(fv, fk, dest, ipow, sign)
                _, r2 = kernels.ring_canonical(v2)
                keys = _pack(p2, r2)
                keys, first = np.unique(keys, return_index=True)
                pos = np.searchsorted(visited, keys)
                pos[pos == visited.size] = 0
                fresh = visited[pos] != keys if visited.size else np.ones(keys.size, dtype=bool)
                if not fresh.any():
                    continue
                idx = first[fresh]
                level_keys.append(keys[fresh])
                level_perm.append(p2[idx])
                level_v.append(v2[idx].astype(np.int16))
                level_k.append(k2[idx])
            if level_keys:
                # fold this chunk's discoveries in so later chunks skip them
                keys = np.concatenate(level_keys)
                keys, first = np.unique(keys, return_index=True)
                level_keys = [keys]
                level_perm = [np.concatenate(level_perm)[first]]
                level_v = [np.concatenate(level_v)[first]]
                level_k = [np.concatenate(level_k)[first]]
                pending = np.union1d(visited, keys)
                if pending.size > cap:
                    visited = pending
                    raise CapExceeded(f"enumeration passed {cap} elements", partial=partial())
        if not level_keys:
            break
        visited = np.union1d(visited, level_keys[0])
        frontier = (level_perm[0], level_v[0], level_k[0])
    projective = np.unique(visited >> 3).size
    return GroupEnumeration(m, gens, "clifford", int(projective), int(visited.size), True)


# ---------------------------------------------------------------- word search

def _fidelity_batch(T_conj: np.ndarray, U: np.ndarray) -> np.ndarray:
    return np.abs(np.einsum("ij,bij->b", T_conj, U)) / T_conj.shape[0]


def search_word(enc: Encoding, target: np.ndarray, max_depth: int, generators: Sequence[int] | None = None,
                eps: float = PHASE_EPS, element_cap: int = DEFAULT_ELEMENT_CAP):
    """Shortest braid word whose logical restriction equals ``target`` up to phase.

    Breadth-first over words; ties go to the lexicographically first word in
    the letter order ``B1, B1^-1, B2, ...``. Returns the word (a list of signed
    braid indices) or :class:`NotFound`.
    """
    target = np.asarray(target, dtype=complex)
    d = enc.logical_dimension
    if target.shape != (d, d):
        raise DimensionMismatch(f"target is {target.shape}, logical space is {d}x{d}")
    gens = _check_generators(enc.num_majoranas, generators)
    letters = _letters(gens)
    # elements are stored transposed: appending a letter on the right is then a left step
    steps = [_braid_monomial(enc.space, abs(g), enc, True) for g in letters]
    signs = [1 if g > 0 else -1 for g in letters]
    T_conj = target.T.conj()

    A, k = _identity_exact(d)
    seen = set(projective_keys(A, k))
    parent = [-1]
    letter = [0]
    if _fidelity_batch(T_conj, kernels.ring_to_complex(A, k))[0] >= 1 - eps:
        return []
    frontier_A, frontier_k, frontier_ids = A, k, np.array([0])
    depth = 0
    while depth < max_depth and frontier_A.shape[0]:
        depth += 1
        new_A, new_k, new_ids = [], [], []
        for lo, hi in _chunks(frontier_A.shape[0]):
            fa, fk, fid = frontier_A[lo:hi], frontier_k[lo:hi], frontier_ids[lo:hi]
            # candidates ordered (parent, letter) so the first hit is shortlex-minimal
            outs = [kernels.ring_monomial_step(fa, fk, dest, ipow, s) for (dest, ipow), s in zip(steps, signs)]
            cand_A = np.stack([o[0] for o in outs], axis=1).reshape((-1,) + fa.shape[1:])
            cand_k = np.stack([o[1] for o in outs], axis=1).reshape(-1)
            cand_parent = np.repeat(fid, len(letters))
            cand_letter = np.tile(np.array(letters), fa.shape[0])
            fresh = []
            for i, key in enumerate(projective_keys(cand_A, cand_k)):
                if key not in seen:
                    seen.add(key)
                    fresh.append(i)
            if not fresh:
                continue
            fresh = np.array(fresh)
            base = len(parent)
            parent.extend(cand_parent[fresh].tolist())
            letter.extend(cand_letter[fresh].tolist())
            fid_new = base + np.arange(fresh.size)
            fids = _fidelity_batch(T_conj, kernels.ring_to_complex(cand_A[fresh], cand_k[fresh]))
            hit = np.nonzero(fids >= 1 - eps)[0]
            if hit.size:
                return _word(parent, letter, int(fid_new[hit[0]]))
            new_A.append(cand_A[fresh])
            new_k.append(cand_k[fresh])
            new_ids.append(fid_new)
            if len(parent) > element_cap:
                raise CapExceeded(f"search passed {element_cap} elements",
                                  partial=NotFound(depth, False, len(parent)))
        if not new_A:
            return NotFound(depth, True, len(parent))
        frontier_A, frontier_k, frontier_ids = np.concatenate(new_A), np.concatenate(new_k), np.concatenate(new_ids)
    # one more expansion would tell whether the group is closed; report the bound honestly
    return NotFound(depth, frontier_A.shape[0] == 0, len(parent))


def _word(parent, letter, node) -> list:
    out = []
    while node > 0:
        out.append(letter[node])
        node = parent[node]
    return out[::-1]


def exhaustive_search(enc: Encoding, target, generators=None, eps: float = PHASE_EPS,
                      element_cap: int = DEFAULT_ELEMENT_CAP):
    """Search without a depth bound, so a miss proves the target unreachable."""
    return search_word(enc, target, max_depth=1 << 30, generators=generators, eps=eps, element_cap=element_cap)


def word_to_strings(word: Sequence[int]) -> list:
    return [f"B{g}" if g > 0 else f"B{-g}^-1" for g in word]


def word_unitary(enc: Encoding, word: Sequence[int]) -> np.ndarray:
    """Logical restriction of ``B_{w1} ... B_{wn}`` in floating point."""
    d = enc.logical_dimension
    U = np.eye(d, dtype=complex)
    c = math.cos(math.pi / 4)
    for g in reversed(word):
        dest, ipow = _braid_monomial(enc.space, abs(g), enc, False)
        U = kernels.apply_monomial_left(U, dest, ipow, c, c if g > 0 else -c)
    return U


# ---------------------------------------------------------------- orbits

@dataclass
class Orbit:
    states: list
    words: list
    completed: bool

    @property
    def count(self) -> int:
        return len(self.states)

    def amplitude_counts(self, tol: float = 1e-9) -> list:
        return sorted({int(np.count_nonzero(np.abs(s) > tol)) for s in self.states})

    def contains(self, state: np.ndarray, eps: float = PHASE_EPS) -> list | None:
        """Word reaching ``state`` up to phase, or None."""
        state = np.asarray(state, dtype=complex)
        state = state / np.linalg.norm(state)
        for s, w in zip(self.states, self.words):
            if abs(np.vdot(s, state)) >= 1 - eps:
                return w
        return None


def orbit_states(enc: Encoding, initial_state: int = 0, generators: Sequence[int] | None = None,
                 element_cap: int = DEFAULT_ELEMENT_CAP) -> Orbit:
    """All states reachable from a logical basis state, up to global phase.

    Words record the operator product that maps ``|initial_state>`` to each
    state; every state is reached by a shortest word.
    """
    d = enc.logical_dimension
    if not 0 <= int(initial_state) < d:
        raise BadParams(f"basis state {initial_state} outside [0, {d})")
    gens = _check_generators(enc.num_majoranas, generators)
    letters = _letters(gens)
    steps = [_braid_monomial(enc.space, abs(g), enc, False) for g in letters]
    signs = [1 if g > 0 else -1 for g in letters]

    v = np.zeros((1, d, 1, 4), dtype=np.int64)
    v[0, int(initial_state), 0, 0] = 1
    k = np.zeros(1, dtype=np.int64)
    seen = set(projective_keys(v, k))
    vecs, ks, words = [v[0]], [0], [[]]
    frontier = (v, k, [[]])
    while frontier[0].shape[0]:
        new_v, new_k, new_w = [], [], []
        fv, fk, fw = frontier
        for (dest, ipow), s, g in zip(steps, signs, letters):
            out, ok = kernels.ring_monomial_step(fv, fk, dest, ipow, s)
            for i, key in enumerate(projective_keys(out, ok)):
                if key in seen:
                    continue
                seen.add(key)
                new_v.append(out[i])
                new_k.append(ok[i])
                new_w.append([g] + fw[i])
                if len(seen) > element_cap:
                    states = [kernels.ring_to_complex(a[:, 0], kk) for a, kk in zip(vecs + new_v, ks + new_k)]
                    raise CapExceeded(f"orbit passed {element_cap} states",
                                      partial=Orbit(states, words + new_w, False))
        if not new_v:
            break
        vecs += new_v
        ks += new_k
        words += new_w
        frontier = (np.stack(new_v), np.array(new_k, dtype=np.int64), new_w)
    states = [kernels.ring_to_complex(a[:, 0], kk) for a, kk in zip(vecs, ks)]
    return Orbit(states, words, True)


def certify_state_absent(enc: Encoding, target_state: np.ndarray, element_cap: int = DEFAULT_ELEMENT_CAP,
                         eps: float = PHASE_EPS) -> dict:
    """Certificate that ``target_state`` is not reachable from ``|0...0>``.

    A closed orbit settles the question directly. If the orbit is cut off by
    the cap, the nonzero-amplitude counts of the visited states are compared
    with the target's count instead and the certificate says so.
    """
    target_state = np.asarray(target_state, dtype=complex)
    nnz = int(np.count_nonzero(np.abs(target_state) > 1e-9))
    try:
        orbit = orbit_states(enc, 0, element_cap=element_cap)
        method = "orbit-exhaustive"
    except CapExceeded as exc:
        orbit = exc.partial
        method = "amplitude-count"
    counts = orbit.amplitude_counts()
    found = orbit.contains(target_state, eps)
    if method == "orbit-exhaustive":
        absent = found is None
    else:
        absent = found is None and nnz not in counts
    return {
        "target": _vector_doc(target_state),
        "generators": [f"B{g}" for g in _default_generators(enc.num_majoranas)],
        "exhausted": {"method": method, "orbit_size": orbit.count, "orbit_complete": orbit.completed,
                      "amplitude_counts": counts, "target_amplitude_count": nnz},
        "result": "absent" if absent else "present",
        "word": None if found is None else word_to_strings(found),
        "timestamp": _now(),
    }


# ---------------------------------------------------------------- diagonal certificates

def _exact_generator(enc: Encoding, alpha: int):
    """Logical restriction of ``B_alpha`` as an exact matrix ``(A, k)``."""
    d = enc.logical_dimension
    dest, ipow = _braid_monomial(enc.space, alpha, enc, False)
    A, k = _identity_exact(d)
    out, ok = kernels.ring_monomial_step(A, k, dest, ipow, 1)
    return out[0], int(ok[0])


def _exact_power(A, k, p):
    d = A.shape[0]
    R, rk = _identity_exact(d)
    R, rk = R[0], 0
    for _ in range(p):
        R, rk = kernels.ring_matmul(R, rk, A, k)
    return R, rk


def check_diagonal_impossibility(enc: Encoding, target_diag, diagonal_generators: Sequence[int] = None,
                                 exponent_range: Sequence[int] = range(4), eps: float = PHASE_EPS) -> dict:
    """Try every product of powers of commuting braids against a diagonal target.

    The default generators are the odd braids ``B1, B3, ...``, which are
    diagonal and pairwise commuting. The certificate records every exponent
    tuple that reproduces the target up to phase; ``first`` is the
    lexicographically smallest.
    """
    d = enc.logical_dimension
    target = np.asarray(target_diag, dtype=complex)
    if target.ndim == 2:
        target = np.diag(target)
    if target.shape != (d,):
        raise DimensionMismatch(f"target has {target.shape[0]} entries, logical space has {d}")
    gens = tuple(range(1, enc.num_majoranas, 2)) if diagonal_generators is None else tuple(diagonal_generators)
    gens = _check_generators(enc.num_majoranas, gens)
    mats = [_exact_generator(enc, g) for g in gens]
    for (i, (A, ka)), (j, (B, kb)) in itertools.combinations(enumerate(mats), 2):
        AB, kab = kernels.ring_matmul(A, ka, B, kb)
        BA, kba = kernels.ring_matmul(B, kb, A, ka)
        if kab != kba or not np.array_equal(AB, BA):
            raise NonCommutingGenerators(f"B{gens[i]} and B{gens[j]} do not commute")
    exps = [int(e) for e in exponent_range]
    powers = [{e: _exact_power(A, k, e) for e in exps} for A, k in mats]
    found = []
    combos = 0
    tnorm = target / np.abs(target)
    for combo in itertools.product(exps, repeat=len(gens)):
        combos += 1
        R, rk = _identity_exact(d)
        R, rk = R[0], 0
        for p, e in zip(powers, combo):
            R, rk = kernels.ring_matmul(R, rk, *p[e])
        U = kernels.ring_to_complex(R, rk)
        if np.max(np.abs(U - np.diag(np.diag(U)))) > eps:
            continue
        if abs(np.vdot(tnorm, np.diag(U))) / d >= 1 - eps:
            found.append(list(combo))
    return {
        "target": _vector_doc(target),
        "generators": [f"B{g}" for g in gens],
        "exhausted": {"exponents": exps, "combinations": combos},
        "result": "found" if found else "absent",
        "first": found[0] if found else None,
        "found": found,
        "timestamp": _now(),
    }


# ---------------------------------------------------------------- certificates

def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _vector_doc(v) -> list:
    return [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in np.asarray(v, dtype=complex).reshape(-1)]


def search_certificate(enc: Encoding, target_name: str, result, generators=None) -> dict:
    gens = _check_generators(enc.num_majoranas, generators)
    doc = {
        "target": target_name,
        "generators": [f"B{g}" for g in gens],
        "exhausted": {"num_majoranas": enc.num_majoranas, "num_logical": enc.num_logical},
        "timestamp": _now(),
    }
    if isinstance(result, NotFound):
        doc["exhausted"].update({"depth": result.depth, "elements": result.explored,
                                 "group_closed": result.exhausted})
        doc["result"] = "absent" if result.exhausted else "not-found"
    else:
        doc["result"] = "found"
        doc["word"] = word_to_strings(result)
    return doc
