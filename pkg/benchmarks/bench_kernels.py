"""Compare the numba kernels with their fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--skip-slow]

The fallback for canonical labeling is a vectorized numpy pass over all
permutations; the two search kernels fall back to the same loop code run
by the interpreter. Every pair is checked for identical output.
"""
import argparse
import time
from itertools import product
from math import gcd

import numpy as np

from finring import kernels
from finring.catalog import abelian_groups, generate_rings
from finring.morphisms import additive_generators, generator_coordinates
from finring.ring import matrix_ring, relabel


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def structure_args(cyclic_orders):
    g = next(g for g in abelian_groups(int(np.prod(cyclic_orders))) if g.cyclic_orders == cyclic_orders)
    n, k = g.order, len(g.cyclic_orders)
    top = max(g.cyclic_orders)
    smul = np.zeros((top + 1, n), dtype=np.int64)
    for z in range(1, top + 1):
        smul[z] = g.table[smul[z - 1], np.arange(n)]
    cand = np.zeros((k * k, n), dtype=np.int64)
    ncand = np.zeros(k * k, dtype=np.int64)
    for i, j in product(range(k), repeat=2):
        ok = np.flatnonzero(smul[gcd(g.cyclic_orders[i], g.cyclic_orders[j])] == 0)
        cand[i * k + j, :len(ok)] = ok
        ncand[i * k + j] = len(ok)
    return (g.table, smul, g.coords(), cand, ncand, k, 256)


def hom_args(R, S):
    gens = additive_generators(R)
    coords, level = generator_coordinates(R, gens)
    gen_ok = np.ones((len(gens), S.order), dtype=np.int64)
    fixed = -np.ones(R.order, dtype=np.int64)
    arrays = (R.add, R.mul, S.add, S.mul, S.scalar_table, coords, level, gen_ok, fixed)
    return tuple(np.ascontiguousarray(a, dtype=np.int64) for a in arrays) + (False, -1, -1, 0)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-slow", action="store_true", help="skip the interpreted structure search")
    args = parser.parse_args(argv)
    if not kernels.USE_NUMBA:
        raise SystemExit("numba is disabled (FINRING_DISABLE_NUMBA); nothing to compare")

    rows = []
    R8 = next(R for R in generate_rings(8) if R.unit is not None)
    R8 = relabel(R8, [0, 7, 6, 5, 4, 3, 2, 1])
    add, mul = np.ascontiguousarray(R8.add), np.ascontiguousarray(R8.mul)
    kernels.canonical_sigma(add, mul, method="numba")  # compile
    t_fast, a = best_of(lambda: kernels.canonical_sigma(add, mul, method="numba"), args.repeat)
    t_np, b = best_of(lambda: kernels.canonical_sigma(add, mul, method="numpy"), args.repeat)
    t_loop, c = best_of(lambda: kernels.canonical_sigma(add, mul, method="loop"), 1)
    assert np.array_equal(a, b) and np.array_equal(a, c)
    rows.append(("canonical form, order 8", t_fast, [("numpy", t_np), ("loop", t_loop)]))

    sargs = structure_args((2, 2, 2))
    kernels._structure_search_jit(*sargs)
    t_fast, a = best_of(lambda: kernels._structure_search_jit(*sargs), args.repeat)
    others = []
    if not args.skip_slow:
        t_py, b = best_of(lambda: kernels._structure_search_py(*sargs), 1)
        assert np.array_equal(a, b)
        others.append(("loop", t_py))
    rows.append((f"structure search Z2^3 ({len(a)} tables)", t_fast, others))

    M2 = matrix_ring(2, 2)
    hargs = hom_args(M2, M2)
    kernels._hom_search_jit(*hargs)
    t_fast, a = best_of(lambda: kernels._hom_search_jit(*hargs), args.repeat)
    t_py, b = best_of(lambda: kernels._hom_search_py(*hargs), 1)
    assert np.array_equal(a, b)
    rows.append((f"End(M2(Z2)) hom search ({len(a)} homs)", t_fast, [("loop", t_py)]))

    print(f"{'kernel':<40} {'numba':>10} {'fallback':>22}")
    for name, fast, slow in rows:
        desc = ", ".join(f"{k} {t * 1e3:.1f} ms (x{t / fast:.0f})" for k, t in slow) or "skipped"
        print(f"{name:<40} {fast * 1e3:>8.2f}ms   {desc}")


if __name__ == "__main__":
    main()
