"""Ring homomorphisms between finite rings: checking, enumeration, isomorphism."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from finring import kernels
from finring.ring import DEFAULT_CANON_BOUND, FiniteRing, RingError, canonical_form
from finring.subsets import closure_mask

DEFAULT_HOM_BOUND = 16
MAX_GENERATORS = 4


@dataclass(frozen=True, eq=False)
class RingHom:
    domain: FiniteRing
    codomain: FiniteRing
    map: tuple[int, ...]

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def unital(self) -> bool:
        u, v = self.domain.unit, self.codomain.unit
        return u is not None and v is not None and self.map[u] == v

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        if not isinstance(other, RingHom):
            return NotImplemented
        return self.map == other.map and self.domain == other.domain and self.codomain == other.codomain

    def __hash__(self):
        return hash(self.map)

    def image_mask(self) -> int:
        m = 0
        for y in self.map:
            m |= 1 << y
        return m


@dataclass(frozen=True)
class HomViolation:
    """Why a candidate map is not a homomorphism. ``kind`` is one of
    RANGE, ZERO, ADD, MUL; ``witness`` the offending pair (x, y)."""

    kind: str
    witness: tuple[int, int]


@dataclass(frozen=True)
class HomConstraint:
    fixed_points: dict = field(default_factory=dict)
    require_unital: bool = False
    require_injective: bool = False


def check_hom(f, R: FiniteRing, S: FiniteRing) -> RingHom | HomViolation:
    """Exhaustively test additivity and multiplicativity of ``f``."""
    fm = np.asarray(f, dtype=np.int64)
    if fm.shape != (R.order,):
        raise RingError("SHAPE", f"map must have length {R.order}")
    if fm.min() < 0 or fm.max() >= S.order:
        bad = int(np.flatnonzero((fm < 0) | (fm >= S.order))[0])
        return HomViolation("RANGE", (bad, bad))
    if fm[0] != 0:
        return HomViolation("ZERO", (0, 0))
    bad = fm[R.add] != S.add[np.ix_(fm, fm)]
    if bad.any():
        x, y = np.argwhere(bad)[0]
        return HomViolation("ADD", (int(x), int(y)))
    bad = fm[R.mul] != S.mul[np.ix_(fm, fm)]
    if bad.any():
        x, y = np.argwhere(bad)[0]
        return HomViolation("MUL", (int(x), int(y)))
    return RingHom(R, S, tuple(int(v) for v in fm))


def compose(g: RingHom, f: RingHom) -> RingHom:
    """g after f."""
    return RingHom(f.domain, g.codomain, tuple(g.map[y] for y in f.map))


def identity_hom(R: FiniteRing) -> RingHom:
    return RingHom(R, R, tuple(range(R.order)))


def additive_generators(R: FiniteRing) -> tuple[int, ...]:
    """Lexicographically first smallest set generating (R, +)."""
    hit = R._cache.get("generators")
    if hit is not None:
        return hit
    full = R.full_mask()
    gens = ()
    if R.order > 1:
        found = None
        for k in range(1, R.order):
            for combo in combinations(range(1, R.order), k):
                mask = 0
                for g in combo:
                    mask |= 1 << g
                if closure_mask(R, mask) == full:
                    found = combo
                    break
            if found:
                break
        gens = found
    R._cache["generators"] = gens
    return gens


def generator_coordinates(R: FiniteRing, gens) -> tuple[np.ndarray, np.ndarray]:
    """One coordinate vector per element and its 'level'.

    Coordinates are found in colexicographic order, so an element of the
    subgroup spanned by the first k generators gets zeros beyond k. The level
    is one plus the last nonzero coordinate (0 for the zero element).
    """
    g = len(gens)
    orders = [int(R.additive_orders[x]) for x in gens]
    coords = -np.ones((R.order, max(g, 1)), dtype=np.int64)
    coords[0] = 0
    seen = {0}
    for rev in product(*[range(o) for o in reversed(orders)]):
        c = rev[::-1]
        x = 0
        for gi, ci in zip(gens, c):
            x = int(R.add[x, R.scalar_table[ci, gi]])
        if x not in seen:
            seen.add(x)
            coords[x, :g] = c
    level = np.zeros(R.order, dtype=np.int64)
    for x in range(1, R.order):
        nz = np.flatnonzero(coords[x, :g])
        level[x] = nz[-1] + 1
    return coords[:, :g], level


def enumerate_homs(R: FiniteRing, S: FiniteRing, constraint: HomConstraint | None = None,
                   bound: int = DEFAULT_HOM_BOUND, limit: int = 0) -> list[RingHom]:
    """All homomorphisms R -> S meeting ``constraint``.

    Images are assigned to a minimal additive generating set of R and
    extended additively; partial assignments that already break additivity,
    multiplicativity, injectivity or a fixed point are pruned. Results come
    in lexicographic order of the generator images.
    """
    c = constraint or HomConstraint()
    if R.order > bound or S.order > bound:
        raise RingError("BOUND_EXCEEDED", f"orders {R.order}, {S.order} exceed hom bound {bound}")
    gens = additive_generators(R)
    if len(gens) > MAX_GENERATORS:
        raise RingError("BOUND_EXCEEDED", f"{len(gens)} additive generators exceed {MAX_GENERATORS}")
    coords, level = generator_coordinates(R, gens)
    fixed = -np.ones(R.order, dtype=np.int64)
    for x, y in c.fixed_points.items():
        if not (0 <= x < R.order and 0 <= y < S.order):
            raise RingError("SHAPE", f"fixed point {x}->{y} out of range")
        fixed[x] = y
    if fixed[0] > 0:
        return []
    unit_r = unit_s = -1
    if c.require_unital:
        if R.unit is None or S.unit is None:
            raise RingError("NO_UNIT", "unital homs need units on both sides")
        unit_r, unit_s = R.unit, S.unit
    gen_ok = np.zeros((max(len(gens), 1), S.order), dtype=np.int64)
    for l, x in enumerate(gens):
        gen_ok[l] = R.additive_orders[x] % S.additive_orders == 0
    # scalar rows up to the largest coordinate used
    top = max([int(R.additive_orders[x]) for x in gens], default=1)
    smul = np.zeros((top, S.order), dtype=np.int64)
    for z in range(1, top):
        smul[z] = S.add[smul[z - 1], np.arange(S.order)]
    maps = kernels.hom_search(R.add, R.mul, S.add, S.mul, smul, coords, level, gen_ok,
                              fixed, c.require_injective, unit_r, unit_s, limit)
    return [RingHom(R, S, tuple(int(v) for v in row)) for row in maps]


def find_isomorphism(R: FiniteRing, S: FiniteRing, canon_bound: int = DEFAULT_CANON_BOUND,
                     bound: int = DEFAULT_HOM_BOUND, method: str = "auto") -> RingHom | None:
    """A ring isomorphism R -> S, or None.

    ``method="auto"`` compares canonical forms when both orders are within
    ``canon_bound`` and otherwise searches injective homs directly.
    """
    if R.order != S.order:
        return None
    if R.additive_exponent != S.additive_exponent or (R.unit is None) != (S.unit is None):
        return None
    if sorted(R.additive_orders) != sorted(S.additive_orders):
        return None
    if method == "canonical" or (method == "auto" and R.order <= canon_bound):
        cr, pr = canonical_form(R, bound=max(canon_bound, R.order) if method == "canonical" else canon_bound)
        cs, ps = canonical_form(S, bound=max(canon_bound, S.order) if method == "canonical" else canon_bound)
        if cr != cs:
            return None
        inv_s = np.argsort(ps)
        return RingHom(R, S, tuple(int(inv_s[pr[x]]) for x in range(R.order)))
    homs = enumerate_homs(R, S, HomConstraint(require_injective=True), bound=bound, limit=1)
    return homs[0] if homs else None


def format_hom(f: RingHom) -> str:
    return f"hom {len(f.map)}: " + " ".join(str(v) for v in f.map)


def parse_hom(text: str) -> list[int]:
    head, _, body = text.strip().partition(":")
    parts = head.split()
    if len(parts) != 2 or parts[0] != "hom":
        raise RingError("SHAPE", f"bad hom text {text!r}")
    vals = [int(t) for t in body.split()]
    if len(vals) != int(parts[1]):
        raise RingError("SHAPE", f"hom declares {parts[1]} images, lists {len(vals)}")
    return vals
