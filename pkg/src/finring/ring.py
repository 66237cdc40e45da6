"""Finite rings given by addition and multiplication tables on {0, ..., n-1}.

Element 0 is always the additive zero. Negation, scalar multiples and the
additive exponent are derived from the addition table.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from finring import kernels

DEFAULT_CANON_BOUND = 8

VIOLATION_CODES = (
    "ZERO_NOT_AT_0",
    "NOT_ABELIAN",
    "NO_INVERSE",
    "ADD_ASSOC_FAIL",
    "MUL_ASSOC_FAIL",
    "DISTRIB_FAIL",
)


class RingError(Exception):
    """Error carrying a stable machine-readable code."""

    def __init__(self, code: str, message: str = "", witness=None):
        self.code = code
        self.witness = witness
        super().__init__(f"{code}: {message}" if message else code)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[tuple[str, tuple[int, int, int]], ...] = ()

    def codes(self) -> list[str]:
        return [code for code, _ in self.violations]


def _readonly(table) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A ring on {0, ..., n-1}. Construct through :func:`validate_ring` or
    :func:`ring_from_tables` unless the tables are known to be valid."""

    add: np.ndarray
    mul: np.ndarray
    name: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "add", _readonly(self.add))
        object.__setattr__(self, "mul", _readonly(self.mul))

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def key(self) -> tuple:
        return (self.order, self.add.tobytes(), self.mul.tobytes())

    def __eq__(self, other):
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteRing{label} order={self.order}>"

    @cached_property
    def neg(self) -> np.ndarray:
        return np.argmin(self.add, axis=1)

    @cached_property
    def additive_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        for x in range(1, n):
            k, y = 1, x
            while y != 0:
                y = self.add[y, x]
                k += 1
            orders[x] = k
        return orders

    @cached_property
    def additive_exponent(self) -> int:
        m = 1
        for k in self.additive_orders:
            m = m * int(k) // gcd(m, int(k))
        return m

    @cached_property
    def scalar_table(self) -> np.ndarray:
        """Row z holds z.x for z in 0..additive_exponent (rows reduce mod exponent)."""
        m = self.additive_exponent
        tab = np.zeros((m + 1, self.order), dtype=np.int64)
        for z in range(1, m + 1):
            tab[z] = self.add[tab[z - 1], np.arange(self.order)]
        return tab

    def scalar(self, z: int, x: int) -> int:
        return int(self.scalar_table[z % self.additive_exponent, x])

    @cached_property
    def unit(self) -> int | None:
        return find_unit(self)

    def full_mask(self) -> int:
        return (1 << self.order) - 1


def ring_from_tables(add, mul, name: str = "") -> FiniteRing:
    """Validate and return a ring, raising ``RingError`` on any violation."""
    result = validate_ring(add, mul)
    if isinstance(result, ValidationReport):
        code, witness = result.violations[0]
        raise RingError(code, f"witness {witness}", witness)
    if name:
        object.__setattr__(result, "name", name)
    return result


def _first(mask: np.ndarray) -> tuple[int, int, int]:
    idx = tuple(int(v) for v in np.argwhere(mask)[0])
    return idx + (0,) * (3 - len(idx))


def validate_ring(add, mul) -> FiniteRing | ValidationReport:
    """Check every ring axiom exhaustively.

    Returns the ring when all axioms hold, otherwise a report with the first
    witness (in C order) for each violated axiom family. Witnesses are padded
    to three indices with zeros.
    """
    a = np.asarray(add)
    m = np.asarray(mul)
    if a.ndim != 2 or m.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != m.shape or a.shape[0] == 0:
        raise RingError("SHAPE", f"tables must be n x n, got {a.shape} and {m.shape}")
    n = a.shape[0]
    if not (np.issubdtype(a.dtype, np.integer) and np.issubdtype(m.dtype, np.integer)):
        raise RingError("SHAPE", "table entries must be integers")
    if a.min() < 0 or a.max() >= n or m.min() < 0 or m.max() >= n:
        raise RingError("SHAPE", f"table entries must lie in 0..{n - 1}")
    a = a.astype(np.int64)
    m = m.astype(np.int64)
    idx = np.arange(n)
    violations = []

    bad = (a[0] != idx) | (a[:, 0] != idx)
    if bad.any():
        violations.append(("ZERO_NOT_AT_0", _first(bad)))
    bad = a != a.T
    if bad.any():
        violations.append(("NOT_ABELIAN", _first(bad)))
    bad = ~((a == 0) & (a.T == 0)).any(axis=1)
    if bad.any():
        violations.append(("NO_INVERSE", _first(bad)))

    # (x+y)+z vs x+(y+z), indexed [x, y, z]
    lhs = a[a[:, :, None], idx[None, None, :]]
    rhs = a[idx[:, None, None], a[None, :, :]]
    bad = lhs != rhs
    if bad.any():
        violations.append(("ADD_ASSOC_FAIL", _first(bad)))

    lhs = m[m[:, :, None], idx[None, None, :]]
    rhs = m[idx[:, None, None], m[None, :, :]]
    bad = lhs != rhs
    if bad.any():
        violations.append(("MUL_ASSOC_FAIL", _first(bad)))

    # x(y+z) = xy+xz and (y+z)x = yx+zx, both indexed [x, y, z]
    left_l = m[idx[:, None, None], a[None, :, :]]
    left_r = a[m[:, :, None], m[:, None, :]]
    right_l = m[a[None, :, :], idx[:, None, None]]
    right_r = a[m.T[:, :, None], m.T[:, None, :]]
    bad = (left_l != left_r) | (right_l != right_r)
    if bad.any():
        violations.append(("DISTRIB_FAIL", _first(bad)))

    if violations:
        return ValidationReport(False, tuple(violations))
    return FiniteRing(a, m)


def replay_violation(add, mul, code: str, witness) -> bool:
    """True when ``witness`` really breaks the axiom named by ``code``."""
    a = np.asarray(add)
    m = np.asarray(mul)
    n = a.shape[0]
    x, y, z = (int(v) for v in witness)
    if code == "ZERO_NOT_AT_0":
        return a[0, x] != x or a[x, 0] != x
    if code == "NOT_ABELIAN":
        return a[x, y] != a[y, x]
    if code == "NO_INVERSE":
        return not any(a[x, t] == 0 and a[t, x] == 0 for t in range(n))
    if code == "ADD_ASSOC_FAIL":
        return a[a[x, y], z] != a[x, a[y, z]]
    if code == "MUL_ASSOC_FAIL":
        return m[m[x, y], z] != m[x, m[y, z]]
    if code == "DISTRIB_FAIL":
        return m[x, a[y, z]] != a[m[x, y], m[x, z]] or m[a[y, z], x] != a[m[y, x], m[z, x]]
    raise ValueError(f"unknown violation code {code}")


def find_unit(R: FiniteRing) -> int | None:
    """The two-sided multiplicative identity, if there is one."""
    idx = np.arange(R.order)
    hits = np.flatnonzero((R.mul == idx[None, :]).all(axis=1) & (R.mul == idx[:, None]).all(axis=0))
    if len(hits) == 0:
        return None
    assert len(hits) == 1
    return int(hits[0])


def additive_exponent(R: FiniteRing) -> int:
    return R.additive_exponent


def is_non_degenerate(R: FiniteRing) -> tuple[bool, tuple[int, str] | None]:
    """``(True, None)`` or ``(False, (r, side))`` with side ``"rR"`` or ``"Rr"``."""
    for r in range(1, R.order):
        if not R.mul[r].any():
            return False, (r, "rR")
        if not R.mul[:, r].any():
            return False, (r, "Rr")
    return True, None


def direct_product(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    """Componentwise ring on pairs; pair (i, j) has index i*|S| + j."""
    ns = S.order

    def combine(tr, ts):
        big = tr[:, None, :, None] * ns + ts[None, :, None, :]
        n = R.order * ns
        return big.reshape(n, n)

    return FiniteRing(combine(R.add, S.add), combine(R.mul, S.mul))


def relabel(R: FiniteRing, perm) -> FiniteRing:
    """Ring with element x renamed to ``perm[x]``; ``perm[0]`` must be 0."""
    pi = np.asarray(perm, dtype=np.int64)
    sigma = np.argsort(pi)
    add = pi[R.add[np.ix_(sigma, sigma)]]
    mul = pi[R.mul[np.ix_(sigma, sigma)]]
    return FiniteRing(add, mul)


def canonical_form(R: FiniteRing, bound: int = DEFAULT_CANON_BOUND, method=None) -> tuple[FiniteRing, np.ndarray]:
    """Lexicographically least relabeling of ``(add, mul)`` with 0 fixed.

    Returns the canonical ring and ``perm`` with ``perm[old] = new``.
    """
    if R.order > bound:
        raise RingError("BOUND_EXCEEDED", f"order {R.order} exceeds canonicalization bound {bound}")
    cached = R._cache.get(("canon", method))
    if cached is not None:
        return cached
    sigma = kernels.canonical_sigma(R.add, R.mul, method=method)
    perm = np.argsort(sigma)
    result = (relabel(R, perm), perm)
    R._cache[("canon", method)] = result
    return result


def ring_id(R: FiniteRing) -> str:
    """Stable short hash of the stored tables."""
    h = hashlib.sha256(format_ring(R).encode()).hexdigest()
    return h[:12]


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------

def format_ring(R: FiniteRing) -> str:
    lines = [f"ring {R.order}", "add"]
    lines += [" ".join(str(int(v)) for v in row) for row in R.add]
    lines.append("mul")
    lines += [" ".join(str(int(v)) for v in row) for row in R.mul]
    return "\n".join(lines) + "\n"


def parse_ring_tables(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse the ring text format into raw tables (no axiom checks)."""
    rows = []
    for raw in text.split("\n"):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows or rows[0].split()[0] != "ring" or len(rows[0].split()) != 2:
        raise RingError("SHAPE", "first line must be 'ring <n>'")
    try:
        n = int(rows[0].split()[1])
    except ValueError:
        raise RingError("SHAPE", "ring order must be an integer") from None
    if n < 1 or len(rows) != 2 * n + 3 or rows[1] != "add" or rows[n + 2] != "mul":
        raise RingError("SHAPE", f"expected 'add' and 'mul' blocks of {n} rows")
    try:
        add = np.array([[int(t) for t in r.split()] for r in rows[2:n + 2]])
        mul = np.array([[int(t) for t in r.split()] for r in rows[n + 3:]])
    except ValueError:
        raise RingError("SHAPE", "table entries must be integers") from None
    if add.shape != (n, n) or mul.shape != (n, n):
        raise RingError("SHAPE", f"each table row must have {n} entries")
    return add, mul


def parse_ring(text: str) -> FiniteRing:
    return ring_from_tables(*parse_ring_tables(text))


def read_ring(path) -> FiniteRing:
    with open(path, encoding="utf-8") as fh:
        return parse_ring(fh.read())


def write_ring(R: FiniteRing, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_ring(R))


# --------------------------------------------------------------------------
# small named rings
# --------------------------------------------------------------------------

def cyclic_ring(n: int) -> FiniteRing:
    """The integers mod n."""
    i = np.arange(n)
    return FiniteRing((i[:, None] + i[None, :]) % n, (i[:, None] * i[None, :]) % n, name=f"Z{n}")


def zero_ring(n: int) -> FiniteRing:
    """Cyclic group of order n with all products zero."""
    i = np.arange(n)
    return FiniteRing((i[:, None] + i[None, :]) % n, np.zeros((n, n), dtype=np.int64), name=f"zero{n}")


def matrix_ring(k: int, p: int) -> FiniteRing:
    """Full k x k matrices over Z_p; entries read row-major as base-p digits,
    most significant first."""
    size = p ** (k * k)
    mats = np.array(np.unravel_index(np.arange(size), (p,) * (k * k))).T.reshape(size, k, k)
    weights = p ** np.arange(k * k - 1, -1, -1)

    def encode(arr):
        return (arr.reshape(arr.shape[:-2] + (k * k,)) % p) @ weights

    add = encode(mats[:, None] + mats[None, :])
    mul = encode(np.einsum("aij,bjk->abik", mats, mats))
    return FiniteRing(add, mul, name=f"M{k}(Z{p})")


def galois_field(p: int, modulus: tuple[int, ...]) -> FiniteRing:
    """GF(p^d) from a monic irreducible ``modulus`` (coefficients low to high,
    leading 1 included); elements are coefficient vectors, low degree first in
    the base-p digits, least significant first."""
    d = len(modulus) - 1
    size = p ** d

    def digits(x):
        return [(x // p ** i) % p for i in range(d)]

    def value(v):
        return sum(int(c) * p ** i for i, c in enumerate(v))

    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for x in range(size):
        dx = digits(x)
        for y in range(size):
            dy = digits(y)
            add[x, y] = value([(a + b) % p for a, b in zip(dx, dy)])
            prod = [0] * (2 * d - 1)
            for i, a in enumerate(dx):
                for j, b in enumerate(dy):
                    prod[i + j] += a * b
            for top in range(2 * d - 2, d - 1, -1):
                c = prod[top] % p
                if c:
                    for i, mc in enumerate(modulus):
                        prod[top - d + i] -= c * mc
            mul[x, y] = value([c % p for c in prod[:d]])
    return FiniteRing(add, mul, name=f"GF({size})")
