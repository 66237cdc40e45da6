"""Unitizations: the Dorroh extension over Z_m and the multiplier ring.

Also the two comparison maps out of the Dorroh ring and into the multiplier
ring for a unital ring S containing R as an ideal.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from finring.morphisms import (
    HomConstraint,
    HomViolation,
    RingHom,
    additive_generators,
    check_hom,
    enumerate_homs,
    find_isomorphism,
    generator_coordinates,
)
from finring.ring import FiniteRing, RingError, find_unit, is_non_degenerate, validate_ring
from finring.subsets import Subset, induced_ring, is_ideal_mask

DEFAULT_MULTIPLIER_BOUND = 16


@dataclass(frozen=True, eq=False)
class DorrohRing:
    base: FiniteRing
    modulus: int
    ring: FiniteRing
    iota: RingHom

    def encode(self, r: int, z: int) -> int:
        return r * self.modulus + z % self.modulus

    def decode(self, x: int) -> tuple[int, int]:
        return divmod(x, self.modulus)


@dataclass(frozen=True, order=True)
class Multiplier:
    """Pair of self-maps with rho(r)*s == r*lam(s) for all r, s."""

    rho: tuple[int, ...]
    lam: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class MultiplierRing:
    base: FiniteRing
    elements: tuple[Multiplier, ...]
    ring: FiniteRing
    iota: RingHom

    def index(self, m: Multiplier) -> int:
        return self._lookup[m]

    @property
    def _lookup(self) -> dict:
        lk = self.__dict__.get("_lk")
        if lk is None:
            lk = {m: i for i, m in enumerate(self.elements)}
            object.__setattr__(self, "_lk", lk)
        return lk


def _require_hom(f, R, S, what) -> RingHom:
    h = check_hom(f, R, S)
    if isinstance(h, HomViolation):
        raise RingError("HOM_FAIL", f"{what} fails {h.kind} at {h.witness}", h.witness)
    return h


def dorroh_extension(R: FiniteRing, m: int | None = None) -> DorrohRing:
    """R x Z_m with (r,z)(s,w) = (rs + z.s + w.r, zw); pair (r, z) is index r*m + z.

    ``m`` must be a positive multiple of the additive exponent of R (default:
    the exponent itself) so that z.s only depends on z mod m.
    """
    e = R.additive_exponent
    if m is None:
        m = e
    if m < 1 or m % e:
        raise RingError("BAD_MODULUS", f"modulus {m} is not a positive multiple of the additive exponent {e}")
    n = R.order
    r = np.repeat(np.arange(n), m)
    z = np.tile(np.arange(m), n)
    sc = R.scalar_table
    zr = z % e
    # pairs indexed [x, y]
    rs = R.mul[np.ix_(r, r)]
    zs = sc[zr[:, None], r[None, :]]
    wr = sc[zr[None, :], r[:, None]]
    first = R.add[R.add[rs, zs], wr]
    second = (z[:, None] * z[None, :]) % m
    mul = first * m + second
    add = R.add[np.ix_(r, r)] * m + (z[:, None] + z[None, :]) % m
    checked = validate_ring(add, mul)
    if not isinstance(checked, FiniteRing):
        raise RingError("HOM_FAIL", f"Dorroh tables fail {checked.codes()}")
    ring = FiniteRing(checked.add, checked.mul, name=f"Dorroh({R.name or R.order},{m})")
    if find_unit(ring) != 1 % m:
        raise RingError("HOM_FAIL", "(0,1) is not the unit")
    iota = _require_hom([x * m for x in range(n)], R, ring, "iota")
    if not iota.injective or not is_ideal_mask(ring, iota.image_mask()):
        raise RingError("HOM_FAIL", "image of iota is not an injective ideal copy")
    return DorrohRing(R, m, ring, iota)


def element_multiplier(R: FiniteRing, r: int) -> Multiplier:
    """(x -> x*r, x -> r*x)."""
    return Multiplier(tuple(int(v) for v in R.mul[:, r]), tuple(int(v) for v in R.mul[r, :]))


def is_compatible(R: FiniteRing, rho, lam) -> bool:
    rho = np.asarray(rho)
    lam = np.asarray(lam)
    return bool((R.mul[rho, :] == R.mul[:, lam]).all())


def solve_rho(R: FiniteRing, lam) -> np.ndarray | None:
    """The rho making (rho, lam) compatible, or None.

    Needs R non-degenerate: then rows of the multiplication table are
    distinct, so rho(r) is pinned down by the row r*lam(.).
    """
    rows = {R.mul[x].tobytes(): x for x in range(R.order)}
    target = R.mul[:, np.asarray(lam)]
    rho = np.empty(R.order, dtype=np.int64)
    for x in range(R.order):
        y = rows.get(target[x].tobytes())
        if y is None:
            return None
        rho[x] = y
    return rho


def additive_self_maps(R: FiniteRing) -> list[np.ndarray]:
    """Every additive endomorphism of (R, +), via generator images."""
    gens = additive_generators(R)
    coords, _ = generator_coordinates(R, gens)
    choices = [[y for y in range(R.order) if R.additive_orders[x] % R.additive_orders[y] == 0] for x in gens]
    out = []
    for imgs in product(*choices):
        f = np.zeros(R.order, dtype=np.int64)
        for x in range(1, R.order):
            acc = 0
            for ci, gi in zip(coords[x], imgs):
                if ci:
                    acc = int(R.add[acc, R.scalar_table[ci, gi]])
            f[x] = acc
        if (f[R.add] == R.add[np.ix_(f, f)]).all():
            out.append(f)
    return out


def multiplier_ring(R: FiniteRing, bound: int = DEFAULT_MULTIPLIER_BOUND) -> MultiplierRing:
    """All multipliers of a non-degenerate R, as a ring with (rho,lam)*(rho',lam') = (rho' o rho, lam o lam')."""
    ok, witness = is_non_degenerate(R)
    if not ok:
        raise RingError("DEGENERATE", f"element {witness[0]} has {witness[1]} = 0", witness)
    if R.order > bound:
        raise RingError("BOUND_EXCEEDED", f"order {R.order} exceeds multiplier bound {bound}")
    found = []
    for lam in additive_self_maps(R):
        rho = solve_rho(R, lam)
        if rho is not None:
            found.append(Multiplier(tuple(int(v) for v in rho), tuple(int(v) for v in lam)))
    elements = tuple(sorted(found))
    return _assemble(R, elements)


def _assemble(R: FiniteRing, elements) -> MultiplierRing:
    lookup = {m: i for i, m in enumerate(elements)}
    k = len(elements)
    rho = np.array([m.rho for m in elements], dtype=np.int64)
    lam = np.array([m.lam for m in elements], dtype=np.int64)
    add = np.empty((k, k), dtype=np.int64)
    mul = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            s = Multiplier(tuple(int(v) for v in R.add[rho[i], rho[j]]), tuple(int(v) for v in R.add[lam[i], lam[j]]))
            p = Multiplier(tuple(int(v) for v in rho[j][rho[i]]), tuple(int(v) for v in lam[i][lam[j]]))
            add[i, j] = lookup[s]
            mul[i, j] = lookup[p]
    checked = validate_ring(add, mul)
    if not isinstance(checked, FiniteRing):
        raise RingError("HOM_FAIL", f"multiplier tables fail {checked.codes()}")
    ring = FiniteRing(checked.add, checked.mul, name=f"M({R.name or R.order})")
    ident = Multiplier(tuple(range(R.order)), tuple(range(R.order)))
    if find_unit(ring) != lookup[ident]:
        raise RingError("HOM_FAIL", "(id, id) is not the unit")
    iota = _require_hom([lookup[element_multiplier(R, r)] for r in range(R.order)], R, ring, "iota")
    if not iota.injective or not is_ideal_mask(ring, iota.image_mask()):
        raise RingError("HOM_FAIL", "image of iota is not an injective ideal copy")
    return MultiplierRing(R, elements, ring, iota)


def is_left_module_map(R: FiniteRing, rho) -> bool:
    """rho(s*r) == s*rho(r) for all r, s."""
    rho = np.asarray(rho)
    return bool((rho[R.mul] == R.mul[:, rho]).all())


def is_right_module_map(R: FiniteRing, lam) -> bool:
    """lam(r*s) == lam(r)*s for all r, s."""
    lam = np.asarray(lam)
    return bool((lam[R.mul] == R.mul[lam, :]).all())


def _check_ideal_embedding(S: FiniteRing, embed: RingHom) -> None:
    if not embed.injective:
        raise RingError("HOM_FAIL", "embedding is not injective")
    if not is_ideal_mask(S, embed.image_mask()):
        raise RingError("HOM_FAIL", "image of the embedding is not an ideal")


def canonical_d(D: DorrohRing, S: FiniteRing, embed: RingHom) -> RingHom:
    """(r, z) -> embed(r) + z.1_S."""
    if S.unit is None:
        raise RingError("NO_UNIT", "target ring has no unit")
    _check_ideal_embedding(S, embed)
    one = S.unit
    f = []
    for x in range(D.ring.order):
        r, z = D.decode(x)
        f.append(int(S.add[embed.map[r], S.scalar_table[z % S.additive_exponent, one]]))
    return _require_hom(f, D.ring, S, "d")


def canonical_m(S: FiniteRing, embed: RingHom, M: MultiplierRing | None = None) -> RingHom:
    """s -> (x -> x*s, x -> s*x), computed on the embedded copy of R."""
    R = embed.domain
    if M is None:
        M = multiplier_ring(R)
    _check_ideal_embedding(S, embed)
    back = -np.ones(S.order, dtype=np.int64)
    back[list(embed.map)] = np.arange(R.order)
    e = np.array(embed.map, dtype=np.int64)
    f = []
    for s in range(S.order):
        rho = back[S.mul[e, s]]
        lam = back[S.mul[s, e]]
        m = Multiplier(tuple(int(v) for v in rho), tuple(int(v) for v in lam))
        if m not in M._lookup:
            raise RingError("HOM_FAIL", f"element {s} does not give a multiplier", (s, s))
        f.append(M.index(m))
    return _require_hom(f, S, M.ring, "m")


@dataclass
class UniversalReport:
    d_exists: bool
    d_fixes_embedding: bool
    d_count_restricted: int
    d_count_unrestricted: int
    m_applicable: bool
    m_exists: bool = False
    m_fixes_embedding: bool = False
    m_count_restricted: int = 0
    m_count_unrestricted: int = 0
    notes: tuple[str, ...] = ()

    def lines(self) -> list[tuple[str, str]]:
        out = [
            ("d_exists", str(self.d_exists).lower()),
            ("d_restricts_to_embed", str(self.d_fixes_embedding).lower()),
            ("d_count_reading_a", str(self.d_count_restricted)),
            ("d_count_reading_b", str(self.d_count_unrestricted)),
            ("m_applicable", str(self.m_applicable).lower()),
        ]
        if self.m_applicable:
            out += [
                ("m_exists", str(self.m_exists).lower()),
                ("m_restricts_to_iota", str(self.m_fixes_embedding).lower()),
                ("m_count_reading_a", str(self.m_count_restricted)),
                ("m_count_reading_b", str(self.m_count_unrestricted)),
            ]
        out += [("note", n) for n in self.notes]
        return out


def verify_universal_property(R: FiniteRing, S: FiniteRing, embed: RingHom, modulus: int | None = None) -> UniversalReport:
    """Existence and uniqueness of d: R' -> S and m: S -> M(R).

    Uniqueness is counted under two readings: (a) unital homs that restrict
    to the given embedding on R, (b) unital homs with no restriction.
    """
    if modulus is None:
        modulus = R.additive_exponent * S.additive_orders[S.unit] // np.gcd(R.additive_exponent, S.additive_orders[S.unit])
    D = dorroh_extension(R, int(modulus))
    d = canonical_d(D, S, embed)
    d_fix = all(d.map[D.iota.map[r]] == embed.map[r] for r in range(R.order))
    fixed = {D.iota.map[r]: embed.map[r] for r in range(R.order)}
    a = enumerate_homs(D.ring, S, HomConstraint(fixed_points=fixed, require_unital=True))
    b = enumerate_homs(D.ring, S, HomConstraint(require_unital=True))
    report = UniversalReport(True, d_fix, len(a), len(b), False)
    ok, _ = is_non_degenerate(R)
    if not ok:
        report.notes = ("multiplier side inapplicable: base ring is degenerate",)
        return report
    M = multiplier_ring(R)
    m = canonical_m(S, embed, M)
    report.m_applicable = True
    report.m_exists = True
    report.m_fixes_embedding = all(m.map[embed.map[r]] == M.iota.map[r] for r in range(R.order))
    fixed = {embed.map[r]: M.iota.map[r] for r in range(R.order)}
    report.m_count_restricted = len(enumerate_homs(S, M.ring, HomConstraint(fixed_points=fixed, require_unital=True)))
    report.m_count_unrestricted = len(enumerate_homs(S, M.ring, HomConstraint(require_unital=True)))
    return report


def ideal_copy_is_base(ring: FiniteRing, iota: RingHom) -> bool:
    """Image of ``iota`` is an ideal whose induced ring is isomorphic to the base."""
    mask = iota.image_mask()
    if not is_ideal_mask(ring, mask):
        return False
    sub, _ = induced_ring(Subset(ring, mask))
    return find_isomorphism(iota.domain, sub) is not None
