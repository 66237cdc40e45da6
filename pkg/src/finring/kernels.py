"""Hot inner loops: canonical relabeling, structure-constant search, hom search.

Each kernel has a plain implementation (``*_py``) and, when numba is enabled,
a compiled twin. The public names at the bottom pick one according to
``finring._accel.USE_NUMBA``. The canonical-form kernel additionally has a
vectorized numpy path that does not share code with the loop version.
"""
from itertools import permutations

import numpy as np

from finring._accel import USE_NUMBA, njit


# --------------------------------------------------------------------------
# canonical relabeling
# --------------------------------------------------------------------------

def _canonical_sigma_py(add, mul):
    # sigma maps new label -> old label, 0 fixed; permutations of 1..n-1 are
    # visited in lexicographic order and the first minimizer is kept.
    n = add.shape[0]
    nn = n * n
    sigma = np.arange(n)
    pi = np.arange(n)
    best_sigma = sigma.copy()
    best = np.empty(2 * nn, dtype=np.int64)
    for t in range(2 * nn):
        if t < nn:
            best[t] = add[t // n, t % n]
        else:
            best[t] = mul[(t - nn) // n, (t - nn) % n]
    if n <= 2:
        return best_sigma
    while True:
        # next permutation of sigma[1:]
        k = n - 2
        while k >= 1 and sigma[k] > sigma[k + 1]:
            k -= 1
        if k < 1:
            break
        m = n - 1
        while sigma[m] < sigma[k]:
            m -= 1
        tmp = sigma[k]
        sigma[k] = sigma[m]
        sigma[m] = tmp
        lo = k + 1
        hi = n - 1
        while lo < hi:
            tmp = sigma[lo]
            sigma[lo] = sigma[hi]
            sigma[hi] = tmp
            lo += 1
            hi -= 1
        for i in range(n):
            pi[sigma[i]] = i
        better = False
        for t in range(2 * nn):
            if t < nn:
                v = pi[add[sigma[t // n], sigma[t % n]]]
            else:
                u = t - nn
                v = pi[mul[sigma[u // n], sigma[u % n]]]
            if better:
                best[t] = v
            elif v < best[t]:
                better = True
                best[t] = v
            elif v > best[t]:
                break
        if better:
            best_sigma[:] = sigma
    return best_sigma


def _canonical_sigma_numpy(add, mul, chunk=40320):
    n = add.shape[0]
    if n <= 2:
        return np.arange(n)
    best_row = None
    best_sigma = None
    it = permutations(range(1, n))
    while True:
        block = [p for _, p in zip(range(chunk), it)]
        if not block:
            break
        tail = np.array(block, dtype=np.int64)
        sigma = np.hstack([np.zeros((len(tail), 1), dtype=np.int64), tail])
        pi = np.argsort(sigma, axis=1)
        rows = np.arange(len(sigma))[:, None, None]
        s_i = sigma[:, :, None]
        s_j = sigma[:, None, :]
        new_add = pi[rows, add[s_i, s_j]]
        new_mul = pi[rows, mul[s_i, s_j]]
        flat = np.concatenate([new_add.reshape(len(sigma), -1), new_mul.reshape(len(sigma), -1)], axis=1)
        if best_row is not None:
            flat = np.vstack([best_row[None, :], flat])
            sigma = np.vstack([best_sigma[None, :], sigma])
        # lexsort is stable, so ties keep the earliest permutation
        order = np.lexsort(flat.T[::-1])
        best_row = flat[order[0]]
        best_sigma = sigma[order[0]]
    return best_sigma


# --------------------------------------------------------------------------
# structure constants on a generating set
# --------------------------------------------------------------------------

def _gen_product(x, k, consts, coords, add, smul, g, left):
    # left=True: x * e_k ; left=False: e_k * x. -1 when undetermined.
    acc = 0
    for l in range(g):
        c = coords[x, l]
        if c == 0:
            continue
        cell = consts[l * g + k] if left else consts[k * g + l]
        if cell < 0:
            return -1
        acc = add[acc, smul[c, cell]]
    return acc


def _structure_search_py(add, smul, coords, cand, ncand, g, cap):
    cells = g * g
    consts = -np.ones(cells, dtype=np.int64)
    choice = -np.ones(cells, dtype=np.int64)
    out = np.empty((cap, cells), dtype=np.int64)
    count = 0
    p = 0
    while p >= 0:
        choice[p] += 1
        if choice[p] >= ncand[p]:
            consts[p] = -1
            choice[p] = -1
            p -= 1
            continue
        consts[p] = cand[p, choice[p]]
        ok = True
        for i in range(g):
            for j in range(g):
                ij = consts[i * g + j]
                if ij < 0:
                    continue
                for k in range(g):
                    jk = consts[j * g + k]
                    if jk < 0:
                        continue
                    lhs = _gen_product(ij, k, consts, coords, add, smul, g, True)
                    if lhs < 0:
                        continue
                    rhs = _gen_product(jk, i, consts, coords, add, smul, g, False)
                    if rhs < 0:
                        continue
                    if lhs != rhs:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            continue
        if p == cells - 1:
            if count == out.shape[0]:
                bigger = np.empty((2 * out.shape[0], cells), dtype=np.int64)
                bigger[:count] = out[:count]
                out = bigger
            out[count] = consts
            count += 1
        else:
            p += 1
    return out[:count]


# --------------------------------------------------------------------------
# homomorphisms by generator images
# --------------------------------------------------------------------------

def _hom_search_py(add_r, mul_r, add_s, mul_s, smul_s, coords, level, gen_ok,
                   fixed, require_injective, unit_r, unit_s, limit):
    # gen_ok[l, y] == 1 when y may be the image of generator l.
    n_r = add_r.shape[0]
    n_s = add_s.shape[0]
    g = coords.shape[1]
    img = -np.ones(g, dtype=np.int64)
    f = -np.ones(n_r, dtype=np.int64)
    f[0] = 0
    used = np.zeros(n_s, dtype=np.int64)
    used[0] = 1
    cap = 64
    out = np.empty((cap, n_r), dtype=np.int64)
    count = 0
    if g == 0:
        ok = fixed[0] < 0 or fixed[0] == 0
        if ok and unit_r >= 0 and unit_s >= 0 and unit_s != 0:
            ok = False
        if ok:
            out[0] = f
            count = 1
        return out[:count]
    p = 0
    while p >= 0:
        # undo level p before trying the next image
        for x in range(n_r):
            if level[x] == p + 1 and f[x] >= 0:
                used[f[x]] -= 1
                f[x] = -1
        img[p] += 1
        while img[p] < n_s and gen_ok[p, img[p]] == 0:
            img[p] += 1
        if img[p] >= n_s:
            img[p] = -1
            p -= 1
            continue
        ok = True
        for x in range(n_r):
            if level[x] != p + 1:
                continue
            acc = 0
            for l in range(p + 1):
                c = coords[x, l]
                if c != 0:
                    acc = add_s[acc, smul_s[c, img[l]]]
            if fixed[x] >= 0 and fixed[x] != acc:
                ok = False
            if require_injective and used[acc] > 0:
                ok = False
            f[x] = acc
            used[acc] += 1
            if not ok:
                break
        if ok:
            for x in range(n_r):
                if level[x] > p + 1 or f[x] < 0:
                    continue
                for y in range(n_r):
                    if level[y] > p + 1 or f[y] < 0:
                        continue
                    if level[x] != p + 1 and level[y] != p + 1:
                        continue
                    if f[add_r[x, y]] != add_s[f[x], f[y]]:
                        ok = False
                        break
                    z = mul_r[x, y]
                    if level[z] <= p + 1 and f[z] >= 0 and f[z] != mul_s[f[x], f[y]]:
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            continue
        if p == g - 1:
            if unit_r >= 0 and unit_s >= 0 and f[unit_r] != unit_s:
                continue
            if count == out.shape[0]:
                bigger = np.empty((2 * out.shape[0], n_r), dtype=np.int64)
                bigger[:count] = out[:count]
                out = bigger
            out[count] = f
            count += 1
            if limit > 0 and count >= limit:
                break
        else:
            p += 1
    return out[:count]


_canonical_sigma_jit = njit(_canonical_sigma_py)
_gen_product_jit = njit(_gen_product)
_structure_search_jit = None
_hom_search_jit = njit(_hom_search_py)

if USE_NUMBA:
    import numba

    # the structure search calls a helper, which must itself be compiled
    _gen_product = _gen_product_jit
    _structure_search_jit = numba.njit(cache=True)(_structure_search_py)


def canonical_sigma(add, mul, method=None):
    """Relabeling (new -> old) giving the lexicographically least tables.

    ``method`` is ``"numba"``, ``"loop"`` (uncompiled loop kernel) or
    ``"numpy"``; the default follows the global switch.
    """
    add = np.ascontiguousarray(add, dtype=np.int64)
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    if method is None:
        method = "numba" if USE_NUMBA else "numpy"
    if method == "numba":
        return _canonical_sigma_jit(add, mul)
    if method == "loop":
        return _canonical_sigma_py(add, mul)
    return _canonical_sigma_numpy(add, mul)


def structure_search(add, smul, coords, cand, ncand, g):
    """All associative structure-constant assignments, in DFS order."""
    args = (np.ascontiguousarray(add, dtype=np.int64), np.ascontiguousarray(smul, dtype=np.int64),
            np.ascontiguousarray(coords, dtype=np.int64), np.ascontiguousarray(cand, dtype=np.int64),
            np.ascontiguousarray(ncand, dtype=np.int64), g, 256)
    if _structure_search_jit is not None:
        return _structure_search_jit(*args)
    return _structure_search_py(*args)


def hom_search(add_r, mul_r, add_s, mul_s, smul_s, coords, level, gen_ok,
               fixed, require_injective, unit_r, unit_s, limit):
    """Maps determined by generator images that pass every constraint."""
    args = tuple(np.ascontiguousarray(a, dtype=np.int64)
                 for a in (add_r, mul_r, add_s, mul_s, smul_s, coords, level, gen_ok, fixed))
    args = args + (bool(require_injective), int(unit_r), int(unit_s), int(limit))
    if USE_NUMBA:
        return _hom_search_jit(*args)
    return _hom_search_py(*args)
