"""Small rings up to isomorphism, plus named larger constructions.

Rings of order <= 8 are generated exhaustively: for every abelian group,
structure constants on its standard generators are searched with
associativity pruning, then deduplicated by canonical form. Order-16 rings
are too many to enumerate, so a fixed set of named constructions is
injected instead (matrix ring, field, products, Dorroh extensions).
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from math import gcd

import numpy as np
import sympy

from finring import kernels
from finring.extensions import dorroh_extension, multiplier_ring
from finring.morphisms import find_isomorphism
from finring.ring import (
    DEFAULT_CANON_BOUND,
    FiniteRing,
    RingError,
    canonical_form,
    cyclic_ring,
    direct_product,
    find_unit,
    galois_field,
    is_non_degenerate,
    matrix_ring,
    read_ring,
    ring_id,
    validate_ring,
    write_ring,
)
from finring.subsets import Subset, enumerate_ideals, enumerate_subgroups, is_idempotent_ring

DEFAULT_GENERATION_BOUND = 8
GROUP_BOUND = 16
INDEX_NAME = "index"


@dataclass(frozen=True)
class AbelianGroup:
    """Z_{n_1} x ... x Z_{n_k} (prime-power n_i); element index is the mixed
    radix number of its coordinates, first coordinate most significant."""

    cyclic_orders: tuple[int, ...]
    table: np.ndarray

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def coords(self) -> np.ndarray:
        if not self.cyclic_orders:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(np.unravel_index(np.arange(self.order), self.cyclic_orders), dtype=np.int64).T

    def generators(self) -> list[int]:
        k = len(self.cyclic_orders)
        return [int(np.ravel_multi_index(tuple(int(i == j) for j in range(k)), self.cyclic_orders)) for i in range(k)]


def _partitions(k: int, largest: int | None = None):
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield (first,) + rest


def abelian_groups(order: int) -> list[AbelianGroup]:
    if order < 1 or order > GROUP_BOUND:
        raise RingError("BOUND_EXCEEDED", f"group order {order} outside 1..{GROUP_BOUND}")
    factors = sorted(sympy.factorint(order).items())
    per_prime = [[tuple(p ** e for e in part) for part in _partitions(k)] for p, k in factors]
    out = []
    for choice in product(*per_prime):
        orders = tuple(n for block in choice for n in block)
        if orders:
            grid = np.array(np.unravel_index(np.arange(order), orders)).T
            summed = (grid[:, None, :] + grid[None, :, :]) % np.array(orders)
            table = np.ravel_multi_index(tuple(np.moveaxis(summed, -1, 0)), orders)
        else:
            table = np.zeros((1, 1), dtype=np.int64)
        out.append(AbelianGroup(orders, np.asarray(table, dtype=np.int64)))
    return out


def enumerate_abelian_groups(order: int) -> list[np.ndarray]:
    """One addition table per isomorphism class of abelian groups."""
    return [g.table for g in abelian_groups(order)]


def structure_constant_tables(group: AbelianGroup) -> list[np.ndarray]:
    """Multiplication tables of all associative bilinear products on ``group``."""
    n = group.order
    k = len(group.cyclic_orders)
    if k == 0:
        return [np.zeros((1, 1), dtype=np.int64)]
    add = group.table
    coords = group.coords()
    top = max(group.cyclic_orders)
    smul = np.zeros((top + 1, n), dtype=np.int64)
    for z in range(1, top + 1):
        smul[z] = add[smul[z - 1], np.arange(n)]
    cand = np.zeros((k * k, n), dtype=np.int64)
    ncand = np.zeros(k * k, dtype=np.int64)
    for i, j in product(range(k), repeat=2):
        # e_i e_j must be killed by the orders of both e_i and e_j
        q = gcd(group.cyclic_orders[i], group.cyclic_orders[j])
        ok = np.flatnonzero(smul[q] == 0)
        cand[i * k + j, :len(ok)] = ok
        ncand[i * k + j] = len(ok)
    sols = kernels.structure_search(add, smul, coords, cand, ncand, k)
    tables = []
    for consts in sols:
        mul = np.zeros((n, n), dtype=np.int64)
        for i, j in product(range(k), repeat=2):
            c = int(consts[i * k + j])
            if c == 0:
                continue
            q = gcd(group.cyclic_orders[i], group.cyclic_orders[j])
            coef = (coords[:, i][:, None] * coords[:, j][None, :]) % q
            mul = add[mul, smul[coef, c]]
        tables.append(mul)
    return tables


def _canonical_key(R: FiniteRing) -> tuple:
    return (R.order, tuple(R.add.ravel().tolist()), tuple(R.mul.ravel().tolist()))


def _rings_on_group(args) -> list[FiniteRing]:
    group, canon_bound = args
    seen = {}
    for mul in structure_constant_tables(group):
        checked = validate_ring(group.table, mul)
        if not isinstance(checked, FiniteRing):
            raise RingError("FATAL", f"structure search produced an invalid ring: {checked.codes()}")
        canon, _ = canonical_form(checked, bound=canon_bound)
        seen.setdefault(canon.key(), canon)
    return list(seen.values())


def generate_rings(order: int, bound: int = DEFAULT_GENERATION_BOUND, jobs: int = 1,
                   canon_bound: int = DEFAULT_CANON_BOUND) -> list[FiniteRing]:
    """All rings of the given order up to isomorphism, in canonical form,
    sorted by their canonical tables."""
    if order > bound:
        raise RingError("BOUND_EXCEEDED", f"order {order} exceeds generation bound {bound}")
    if order > canon_bound:
        raise RingError("BOUND_EXCEEDED", f"order {order} exceeds canonicalization bound {canon_bound}")
    work = [(g, canon_bound) for g in abelian_groups(order)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_rings_on_group, work))
    else:
        parts = [_rings_on_group(w) for w in work]
    rings = {}
    for part in parts:
        for R in part:
            rings.setdefault(R.key(), R)
    return sorted(rings.values(), key=_canonical_key)


# --------------------------------------------------------------------------
# entries
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CatalogEntry:
    ring: FiniteRing
    idempotent: bool
    unital: bool
    non_degenerate: bool
    ideals: tuple[Subset, ...]
    id: str
    canonical: bool
    name: str = ""

    def flags(self) -> list[str]:
        out = [f for f, on in (("idempotent", self.idempotent), ("unital", self.unital),
                               ("non_degenerate", self.non_degenerate)) if on]
        if not self.canonical:
            out.append("named")
        return out


def annotate_entry(ring: FiniteRing, canon_bound: int = DEFAULT_CANON_BOUND, name: str = "") -> CatalogEntry:
    """Canonicalize when the order allows it and record the ring's properties.

    Rings above ``canon_bound`` keep their given labeling; their id then
    hashes those tables.
    """
    canonical = ring.order <= canon_bound
    if canonical:
        ring, _ = canonical_form(ring, bound=canon_bound)
    ideals = tuple(enumerate_ideals(ring, bound=max(GROUP_BOUND, ring.order)))
    return CatalogEntry(
        ring=ring,
        idempotent=is_idempotent_ring(ring),
        unital=find_unit(ring) is not None,
        non_degenerate=is_non_degenerate(ring)[0],
        ideals=ideals,
        id=ring_id(ring),
        canonical=canonical,
        name=name or ring.name,
    )


def _invariants(R: FiniteRing) -> tuple:
    sq = np.diagonal(R.mul)
    return (
        R.order,
        tuple(sorted(R.additive_orders.tolist())),
        R.unit is not None,
        is_idempotent_ring(R),
        int((sq == np.arange(R.order)).sum()),
        int((sq == 0).sum()),
        int((R.mul == 0).sum()),
        len(enumerate_subgroups(R, bound=max(GROUP_BOUND, R.order))),
        len(enumerate_ideals(R, bound=max(GROUP_BOUND, R.order))),
        bool((R.mul == R.mul.T).all()),
    )


def named_constructions(generated: list[FiniteRing], order: int = 16) -> list[FiniteRing]:
    """Named rings of the given order, in a fixed order, isomorphic duplicates removed."""
    cands = []
    if order == 16:
        cands += [matrix_ring(2, 2), galois_field(2, (1, 1, 0, 0, 1)), cyclic_ring(16)]
    idem = [R for R in generated if is_idempotent_ring(R)]
    for i, A in enumerate(idem):
        for B in idem[i:]:
            if A.order * B.order == order and A.order > 1 and B.order > 1:
                P = direct_product(A, B)
                cands.append(FiniteRing(P.add, P.mul, name=f"product {ring_id(A)} x {ring_id(B)}"))
    for R in generated:
        e = R.additive_exponent
        if R.order > 1 and order % R.order == 0 and (order // R.order) % e == 0:
            D = dorroh_extension(R, order // R.order)
            cands.append(FiniteRing(D.ring.add, D.ring.mul, name=f"Dorroh({ring_id(R)},{D.modulus})"))
    for R in generated:
        if is_non_degenerate(R)[0]:
            M = multiplier_ring(R)
            if M.ring.order == order:
                cands.append(FiniteRing(M.ring.add, M.ring.mul, name=f"M({ring_id(R)})"))
    kept: list[FiniteRing] = []
    buckets: dict[tuple, list[FiniteRing]] = {}
    for R in cands:
        if R.order != order:
            continue
        key = _invariants(R)
        bucket = buckets.setdefault(key, [])
        if any(find_isomorphism(R, other, bound=max(16, order)) is not None for other in bucket):
            continue
        bucket.append(R)
        kept.append(R)
    return kept


@dataclass
class Catalog:
    entries: list[CatalogEntry]

    def rings(self, max_order: int | None = None) -> list[FiniteRing]:
        return [e.ring for e in self.entries if max_order is None or e.ring.order <= max_order]

    def by_id(self, ident: str) -> CatalogEntry:
        for e in self.entries:
            if e.id == ident:
                return e
        raise KeyError(ident)

    def find(self, R: FiniteRing, canon_bound: int = DEFAULT_CANON_BOUND) -> CatalogEntry | None:
        """The entry isomorphic to R, if any."""
        for e in self.entries:
            if e.ring.order == R.order and find_isomorphism(R, e.ring, canon_bound=canon_bound,
                                                            bound=max(16, R.order)) is not None:
                return e
        return None

    def add(self, R: FiniteRing, canon_bound: int = DEFAULT_CANON_BOUND) -> tuple[CatalogEntry, bool]:
        """Append R unless an isomorphic entry exists; returns (entry, added)."""
        hit = self.find(R, canon_bound)
        if hit is not None:
            return hit, False
        entry = annotate_entry(R, canon_bound)
        self.entries.append(entry)
        return entry, True

    def save(self, directory) -> None:
        os.makedirs(directory, exist_ok=True)
        lines = []
        for e in self.entries:
            fname = f"{e.id}.ring"
            write_ring(e.ring, os.path.join(directory, fname))
            flags = ",".join(e.flags()) or "-"
            lines.append(f"{e.id} {e.ring.order} {flags} {fname}")
        with open(os.path.join(directory, INDEX_NAME), "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(line + "\n" for line in lines))

    @classmethod
    def load(cls, directory, canon_bound: int = DEFAULT_CANON_BOUND) -> Catalog:
        entries = []
        with open(os.path.join(directory, INDEX_NAME), encoding="utf-8") as fh:
            for line in fh:
                if not line.strip() or line.startswith("#"):
                    continue
                ident, order, flags, fname = line.split()
                R = read_ring(os.path.join(directory, fname))
                if R.order != int(order):
                    raise RingError("SHAPE", f"{fname}: order {R.order} does not match index ({order})")
                e = annotate_entry(R, canon_bound)
                if e.id != ident:
                    raise RingError("SHAPE", f"{fname}: id {e.id} does not match index ({ident})")
                entries.append(e)
        return cls(entries)


def build_catalog(max_order: int = DEFAULT_GENERATION_BOUND, named_orders=(16,), jobs: int = 1,
                  canon_bound: int = DEFAULT_CANON_BOUND) -> Catalog:
    """Generated rings of orders 1..max_order, then named constructions."""
    generated = []
    for n in range(1, max_order + 1):
        generated += generate_rings(n, bound=max_order, jobs=jobs, canon_bound=canon_bound)
    entries = [annotate_entry(R, canon_bound) for R in generated]
    for n in named_orders:
        if n > max_order:
            for R in named_constructions(generated, n):
                entries.append(annotate_entry(R, canon_bound, name=R.name))
    return Catalog(entries)
