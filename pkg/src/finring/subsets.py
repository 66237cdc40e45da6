"""Subsets of a finite ring as bitmasks: closures, products, ideals."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from finring.ring import FiniteRing, RingError

DEFAULT_IDEAL_BOUND = 16


def members_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(elements) -> int:
    m = 0
    for x in elements:
        m |= 1 << int(x)
    return m


@dataclass(frozen=True)
class Subset:
    parent: FiniteRing
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.parent.order:
            raise ValueError(f"mask {self.mask:#x} has bits outside 0..{self.parent.order - 1}")

    @classmethod
    def of(cls, parent: FiniteRing, elements) -> Subset:
        return cls(parent, mask_of(elements))

    @classmethod
    def full(cls, parent: FiniteRing) -> Subset:
        return cls(parent, parent.full_mask())

    @classmethod
    def zero(cls, parent: FiniteRing) -> Subset:
        return cls(parent, 1)

    def members(self) -> list[int]:
        return members_of(self.mask)

    def __len__(self):
        return bin(self.mask).count("1")

    def __contains__(self, x):
        return bool(self.mask >> int(x) & 1)

    def __le__(self, other: Subset) -> bool:
        return self.mask & ~other.mask == 0

    def __repr__(self):
        return f"Subset({self.members()})"


@dataclass(frozen=True)
class SubsetClass:
    is_additive_subgroup: bool
    is_subring: bool
    is_left_ideal: bool
    is_right_ideal: bool
    is_ideal: bool


# --------------------------------------------------------------------------
# mask-level primitives, memoized on the ring
# --------------------------------------------------------------------------

def _memo(R: FiniteRing, name: str) -> dict:
    return R._cache.setdefault(name, {})


def _cyclic_mask(R: FiniteRing, g: int) -> int:
    memo = _memo(R, "cyclic")
    if g not in memo:
        m, y = 1, g
        while y != 0:
            m |= 1 << y
            y = int(R.add[y, g])
        memo[g] = m
    return memo[g]


def _sumset(R: FiniteRing, a: int, b: int) -> int:
    out = 0
    bs = members_of(b)
    for x in members_of(a):
        row = R.add[x]
        for y in bs:
            out |= 1 << int(row[y])
    return out


def closure_mask(R: FiniteRing, mask: int) -> int:
    """Smallest additive subgroup containing ``mask``."""
    memo = _memo(R, "closure")
    hit = memo.get(mask)
    if hit is not None:
        return hit
    h = 1
    for g in members_of(mask):
        if not h >> g & 1:
            h = _sumset(R, h, _cyclic_mask(R, g))
    memo[mask] = h
    return h


def product_mask(R: FiniteRing, a: int, b: int) -> int:
    """Additive closure of all products x*y with x in a, y in b."""
    memo = _memo(R, "product")
    key = (a, b)
    hit = memo.get(key)
    if hit is not None:
        return hit
    xs = np.array(members_of(a), dtype=np.int64)
    ys = np.array(members_of(b), dtype=np.int64)
    raw = 0
    if len(xs) and len(ys):
        for v in np.unique(R.mul[np.ix_(xs, ys)]):
            raw |= 1 << int(v)
    out = closure_mask(R, raw)
    memo[key] = out
    return out


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def additive_closure(A: Subset) -> Subset:
    return Subset(A.parent, closure_mask(A.parent, A.mask))


def subset_product(A: Subset, B: Subset) -> Subset:
    """The subgroup generated by all a*b; finite sums of products, as in RR."""
    if A.parent is not B.parent and A.parent != B.parent:
        raise RingError("PARENT_MISMATCH", "subsets live in different rings")
    return Subset(A.parent, product_mask(A.parent, A.mask, B.mask))


def triple_product(A: Subset, B: Subset, C: Subset) -> Subset:
    """(AB)C, which equals A(BC) for additively closed products."""
    return subset_product(subset_product(A, B), C)


def classify_subset(A: Subset) -> SubsetClass:
    R = A.parent
    a = A.mask
    full = R.full_mask()
    subgroup = closure_mask(R, a) == a
    inside = lambda m: m & ~a == 0  # noqa: E731
    subring = subgroup and inside(product_mask(R, a, a))
    left = inside(product_mask(R, full, a))
    right = inside(product_mask(R, a, full))
    return SubsetClass(subgroup, subring, left, right, subgroup and left and right)


def is_subring_mask(R: FiniteRing, a: int) -> bool:
    return closure_mask(R, a) == a and product_mask(R, a, a) & ~a == 0


def is_ideal_mask(R: FiniteRing, a: int, within: int | None = None) -> bool:
    """Two-sided ideal test; ``within`` restricts the multiplying ring to a
    subring of R (ideal of the induced ring)."""
    if within is None:
        within = R.full_mask()
    if a & ~within:
        return False
    if closure_mask(R, a) != a:
        return False
    return product_mask(R, within, a) & ~a == 0 and product_mask(R, a, within) & ~a == 0


def is_idempotent(A: Subset) -> bool:
    if not is_subring_mask(A.parent, A.mask):
        raise RingError("NOT_SUBRING", f"{A} is not a subring")
    return product_mask(A.parent, A.mask, A.mask) == A.mask


def is_idempotent_ring(R: FiniteRing) -> bool:
    full = R.full_mask()
    return product_mask(R, full, full) == full


def enumerate_subgroups(R: FiniteRing, bound: int = DEFAULT_IDEAL_BOUND) -> list[int]:
    """Masks of all additive subgroups, ascending."""
    if R.order > bound:
        raise RingError("BOUND_EXCEEDED", f"order {R.order} exceeds subgroup bound {bound}")
    memo = R._cache.get("subgroups")
    if memo is not None:
        return memo
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for h in frontier:
            for g in range(1, R.order):
                if h >> g & 1:
                    continue
                k = _sumset(R, h, _cyclic_mask(R, g))
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    out = sorted(seen)
    R._cache["subgroups"] = out
    return out


def enumerate_subrings(R: FiniteRing, bound: int = DEFAULT_IDEAL_BOUND) -> list[int]:
    return [h for h in enumerate_subgroups(R, bound) if product_mask(R, h, h) & ~h == 0]


def enumerate_ideals(R: FiniteRing, bound: int = DEFAULT_IDEAL_BOUND) -> list[Subset]:
    """All two-sided ideals in ascending bitmask order."""
    return [Subset(R, h) for h in enumerate_subgroups(R, bound) if is_ideal_mask(R, h)]


def induced_ring(A: Subset) -> tuple[FiniteRing, np.ndarray]:
    """The subring A as a ring on 0..|A|-1 plus the index map into the parent.

    New index i stands for the i-th smallest member, so 0 maps to 0.
    """
    R = A.parent
    if not is_subring_mask(R, A.mask):
        raise RingError("NOT_SUBRING", f"{A} is not a subring")
    emb = np.array(A.members(), dtype=np.int64)
    back = -np.ones(R.order, dtype=np.int64)
    back[emb] = np.arange(len(emb))
    add = back[R.add[np.ix_(emb, emb)]]
    mul = back[R.mul[np.ix_(emb, emb)]]
    return FiniteRing(add, mul), emb


def decompose_element(A: Subset, r: int) -> list[tuple[int, int]] | None:
    """Pairs (a_i, b_i) from A with r = sum a_i*b_i, or None when r is not in AA.

    Breadth-first over the number of summands, pairs in lexicographic order,
    so the witness is a shortest one and is reproducible.
    """
    R = A.parent
    elems = A.members()
    pairs = [(a, b) for a in elems for b in elems]
    reached = {0: []}
    frontier = [0]
    while frontier and r not in reached:
        nxt = []
        for x in frontier:
            for a, b in pairs:
                y = int(R.add[x, R.mul[a, b]])
                if y not in reached:
                    reached[y] = reached[x] + [(a, b)]
                    nxt.append(y)
        frontier = nxt
    return reached.get(r)


def replay_decomposition(R: FiniteRing, pairs) -> int:
    acc = 0
    for a, b in pairs:
        acc = int(R.add[acc, R.mul[a, b]])
    return acc


# --------------------------------------------------------------------------
# text form
# --------------------------------------------------------------------------

def format_subset(A: Subset) -> str:
    m = A.members()
    return f"subset {len(m)}: " + " ".join(str(x) for x in m)


def parse_subset(text: str, parent: FiniteRing) -> Subset:
    head, _, body = text.strip().partition(":")
    parts = head.split()
    if len(parts) != 2 or parts[0] != "subset":
        raise RingError("SHAPE", f"bad subset text {text!r}")
    elems = [int(t) for t in body.split()]
    if len(elems) != int(parts[1]):
        raise RingError("SHAPE", f"subset declares {parts[1]} elements, lists {len(elems)}")
    if any(x < 0 or x >= parent.order for x in elems):
        raise RingError("SHAPE", "subset element out of range")
    if elems != sorted(set(elems)):
        raise RingError("SHAPE", "subset indices must be strictly ascending")
    return Subset.of(parent, elems)
