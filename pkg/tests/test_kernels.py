"""The compiled kernels, their uncompiled loop form and the numpy path agree."""
import os
import subprocess
import sys

import numpy as np
import pytest

from finring import kernels
from finring.catalog import abelian_groups, structure_constant_tables
from finring.morphisms import additive_generators, generator_coordinates
from finring.ring import relabel

numba_only = pytest.mark.skipif(not kernels.USE_NUMBA, reason="numba disabled")


def _tables(R):
    return np.ascontiguousarray(R.add), np.ascontiguousarray(R.mul)


def test_canonical_paths_agree(catalog):
    for e in catalog.entries[::3]:
        R = e.ring
        if R.order > 7:
            continue
        S = relabel(R, [0] + list(range(R.order - 1, 0, -1)))
        add, mul = _tables(S)
        ref = kernels.canonical_sigma(add, mul, method="numpy")
        assert np.array_equal(kernels.canonical_sigma(add, mul, method="loop"), ref)
        if kernels.USE_NUMBA:
            assert np.array_equal(kernels.canonical_sigma(add, mul, method="numba"), ref)


def test_canonical_order8_numpy_vs_default(catalog):
    R = next(e.ring for e in catalog.entries if e.ring.order == 8 and e.unital)
    add, mul = _tables(relabel(R, [0, 3, 1, 2, 7, 5, 6, 4]))
    assert np.array_equal(kernels.canonical_sigma(add, mul, method="numpy"),
                          kernels.canonical_sigma(add, mul))


@numba_only
def test_structure_search_paths_agree(monkeypatch):
    groups = abelian_groups(4) + abelian_groups(6) + abelian_groups(8)[:2]
    fast = [structure_constant_tables(g) for g in groups]
    monkeypatch.setattr(kernels, "_structure_search_jit", None)
    slow = [structure_constant_tables(g) for g in groups]
    for a, b in zip(fast, slow):
        assert len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))


@numba_only
def test_hom_search_paths_agree(rings):
    R, S = rings["K4"], rings["M2"]
    gens = additive_generators(R)
    coords, level = generator_coordinates(R, gens)
    n_s = S.order
    gen_ok = np.ones((len(gens), n_s), dtype=np.int64)
    fixed = -np.ones(R.order, dtype=np.int64)
    smul = np.ascontiguousarray(S.scalar_table)
    args = (R.add, R.mul, S.add, S.mul, smul, coords, level, gen_ok, fixed, False, -1, -1, 0)
    args = tuple(np.ascontiguousarray(a) if isinstance(a, np.ndarray) else a for a in args)
    fast = kernels._hom_search_jit(*args)
    slow = kernels._hom_search_py(*args)
    assert np.array_equal(fast, slow)


def test_env_flag_disables_numba():
    code = "from finring import kernels; print(kernels.USE_NUMBA)"
    env = dict(os.environ, FINRING_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "False"
