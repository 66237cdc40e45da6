"""Enlargements, joint-enlargement search and the ideal/Morita harnesses.

Two idempotent rings count as Morita equivalent here exactly when some ring
is an enlargement of (copies of) both. A search over a finite candidate list
can prove equivalence by exhibiting a witness; coming up empty is only
evidence, bounded by the candidates scanned.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from finring.morphisms import DEFAULT_HOM_BOUND, RingHom, find_isomorphism
from finring.ring import DEFAULT_CANON_BOUND, FiniteRing, RingError
from finring.subsets import (
    Subset,
    enumerate_subrings,
    induced_ring,
    is_ideal_mask,
    is_idempotent_ring,
    is_subring_mask,
    product_mask,
)

DEFAULT_SEARCH_BOUND = 16


class InconsistencyError(RingError):
    """A harness met an outcome its theorem forbids; always a bug here."""

    def __init__(self, message: str):
        super().__init__("FATAL", message)


def _tri(R: FiniteRing, a: int, b: int, c: int) -> int:
    return product_mask(R, product_mask(R, a, b), c)


@dataclass(frozen=True)
class EnlargementWitness:
    ambient: FiniteRing
    inner: Subset
    tst_equals_t: bool
    sts_equals_s: bool
    is_subring: bool

    @property
    def valid(self) -> bool:
        return self.tst_equals_t and self.sts_equals_s and self.is_subring


@dataclass(frozen=True)
class JointEnlargement:
    ambient: FiniteRing
    copy_a: Subset
    copy_b: Subset
    iso_a: RingHom
    iso_b: RingHom


def is_enlargement(T: FiniteRing, S: Subset) -> EnlargementWitness:
    """Does T = TST and S = STS hold?"""
    full = T.full_mask()
    s = S.mask
    return EnlargementWitness(
        T, S,
        tst_equals_t=_tri(T, full, s, full) == full,
        sts_equals_s=_tri(T, s, full, s) == s,
        is_subring=is_subring_mask(T, s),
    )


def is_joint_enlargement(T: FiniteRing, copy_a: Subset, copy_b: Subset, A: FiniteRing, B: FiniteRing,
                         canon_bound: int = DEFAULT_CANON_BOUND,
                         hom_bound: int = DEFAULT_HOM_BOUND) -> JointEnlargement | None:
    for copy in (copy_a, copy_b):
        if not is_enlargement(T, copy).valid:
            return None
    ra, _ = induced_ring(copy_a)
    rb, _ = induced_ring(copy_b)
    iso_a = find_isomorphism(A, ra, canon_bound=canon_bound, bound=hom_bound)
    if iso_a is None:
        return None
    iso_b = find_isomorphism(B, rb, canon_bound=canon_bound, bound=hom_bound)
    if iso_b is None:
        return None
    return JointEnlargement(T, copy_a, copy_b, iso_a, iso_b)


def enlargement_subrings(T: FiniteRing, bound: int = DEFAULT_SEARCH_BOUND) -> list[tuple[int, FiniteRing]]:
    """Subrings C of T with T = TCT and C = CTC, ascending by mask, with
    their induced rings."""
    hit = T._cache.get("enlargement_subrings")
    if hit is not None:
        return hit
    full = T.full_mask()
    out = []
    # T = TCT forces T = TT
    if is_idempotent_ring(T):
        for c in enumerate_subrings(T, bound):
            if _tri(T, full, c, full) == full and _tri(T, c, full, c) == c:
                out.append((c, induced_ring(Subset(T, c))[0]))
    T._cache["enlargement_subrings"] = out
    return out


def _first_copy(T, X, canon_bound, hom_bound, bound):
    for mask, sub in enlargement_subrings(T, bound):
        if sub.order != X.order or sub.additive_exponent != X.additive_exponent:
            continue
        if find_isomorphism(X, sub, canon_bound=canon_bound, bound=hom_bound) is not None:
            return mask
    return None


def _match_candidate(args):
    A, B, T, canon_bound, hom_bound, bound = args
    if T.order > bound:
        return ("skipped", None, None)
    if T.order < max(A.order, B.order):
        return ("none", None, None)
    ma = _first_copy(T, A, canon_bound, hom_bound, bound)
    if ma is None:
        return ("none", None, None)
    mb = _first_copy(T, B, canon_bound, hom_bound, bound)
    if mb is None:
        return ("none", None, None)
    return ("found", ma, mb)


@dataclass
class SearchResult:
    witness: JointEnlargement | None
    candidate_index: int | None
    scanned: int
    bound: int
    skipped: list[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        if self.witness is not None:
            return "proof (witness)"
        return f"evidence (bound {self.bound})"


def search_joint_enlargement(A: FiniteRing, B: FiniteRing, candidates, bound: int = DEFAULT_SEARCH_BOUND,
                             canon_bound: int = DEFAULT_CANON_BOUND, hom_bound: int = DEFAULT_HOM_BOUND,
                             jobs: int = 1) -> SearchResult:
    """First candidate (in list order) that is a joint enlargement of A and B.

    Candidates above ``bound`` are skipped with a note. With ``jobs > 1`` the
    candidates are checked in worker processes; the returned witness is still
    the first one in list order.
    """
    cands = list(candidates)
    work = [(A, B, T, canon_bound, hom_bound, bound) for T in cands]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_match_candidate, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        outcomes = []
        for item in work:
            outcomes.append(_match_candidate(item))
            if outcomes[-1][0] == "found":
                break
    skipped = []
    for i, (status, ma, mb) in enumerate(outcomes):
        T = cands[i]
        if status == "skipped":
            skipped.append(f"candidate {i} (order {T.order}) BOUND_EXCEEDED")
        elif status == "found":
            witness = is_joint_enlargement(T, Subset(T, ma), Subset(T, mb), A, B, canon_bound, hom_bound)
            if witness is None:
                raise InconsistencyError(f"candidate {i} matched but its witness does not replay")
            return SearchResult(witness, i, i + 1, bound, skipped)
    return SearchResult(None, None, len(outcomes), bound, skipped)


# --------------------------------------------------------------------------
# harnesses
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealProductReport:
    ideal: Subset
    is_ideal: bool
    is_idempotent: bool
    rsr: Subset
    sss: Subset

    @property
    def preconditions(self) -> bool:
        return self.is_ideal and self.is_idempotent

    @property
    def rsr_in_s(self) -> bool:
        return self.rsr <= self.ideal

    @property
    def sss_in_rsr(self) -> bool:
        return self.sss <= self.rsr

    @property
    def equal(self) -> bool:
        return self.rsr.mask == self.ideal.mask


def verify_lemma_ideal_product(R: FiniteRing, S: Subset) -> IdealProductReport:
    """RSR versus S, with the two inclusions RSR <= S and SSS <= RSR.

    When S is an idempotent ideal a mismatch raises ``InconsistencyError``.
    """
    full = R.full_mask()
    s = S.mask
    ideal = is_ideal_mask(R, s)
    idem = ideal and product_mask(R, s, s) == s
    report = IdealProductReport(S, ideal, idem, Subset(R, _tri(R, full, s, full)), Subset(R, _tri(R, s, s, s)))
    if report.preconditions and not (report.rsr_in_s and report.sss_in_rsr and report.equal):
        raise InconsistencyError(f"RSR != S for idempotent ideal {S.members()}")
    return report


CHAIN_LABELS = ("R", "RTR", "R(TST)R", "RT(RSR)TR", "(RTR)S(RTR)", "RSR", "S")


@dataclass(frozen=True)
class ChainReport:
    failed_preconditions: tuple[str, ...]
    links: tuple[tuple[str, int], ...] = ()
    equalities: tuple[bool, ...] = ()

    @property
    def applicable(self) -> bool:
        return not self.failed_preconditions

    @property
    def holds(self) -> bool:
        return self.applicable and all(self.equalities) and self.links[0][1] == self.links[-1][1]


def chain_preconditions(T: FiniteRing, r: int, s: int) -> tuple[str, ...]:
    full = T.full_mask()
    failed = []
    if not is_subring_mask(T, r):
        failed.append("R_SUBRING")
    elif not is_ideal_mask(T, s, within=r):
        failed.append("S_IDEAL_OF_R")
    if "R_SUBRING" not in failed and product_mask(T, r, r) != r:
        failed.append("R_IDEMPOTENT")
    if is_subring_mask(T, s):
        if product_mask(T, s, s) != s:
            failed.append("S_IDEMPOTENT")
    elif "S_IDEAL_OF_R" not in failed:
        failed.append("S_IDEAL_OF_R")
    if _tri(T, full, s, full) != full:
        failed.append("T_EQ_TST")
    if _tri(T, r, full, r) != r:
        failed.append("R_EQ_RTR")
    return tuple(failed)


def verify_chain(T: FiniteRing, copy_r: Subset, copy_s: Subset) -> ChainReport:
    """Evaluate R = RTR = R(TST)R = RT(RSR)TR = (RTR)S(RTR) = RSR = S link by link.

    Hypotheses (all inside T): R an idempotent subring, S an idempotent ideal
    of R, T = TST and R = RTR. If any fails the chain is not evaluated.
    """
    r, s = copy_r.mask, copy_s.mask
    failed = chain_preconditions(T, r, s)
    if failed:
        return ChainReport(failed)
    P = lambda a, b: product_mask(T, a, b)  # noqa: E731
    t = T.full_mask()
    rtr = P(P(r, t), r)
    tst = P(P(t, s), t)
    rsr = P(P(r, s), r)
    links = (
        r,
        rtr,
        P(P(r, tst), r),
        P(P(P(P(r, t), rsr), t), r),
        P(P(rtr, s), rtr),
        rsr,
        s,
    )
    eq = tuple(links[i] == links[i + 1] for i in range(len(links) - 1))
    report = ChainReport((), tuple(zip(CHAIN_LABELS, links)), eq)
    if not report.holds:
        raise InconsistencyError(f"chain breaks for R={copy_r.members()} S={copy_s.members()}")
    return report


@dataclass
class TheoremReport:
    r_idempotent: bool
    s_ideal: bool
    s_idempotent: bool
    s_proper: bool
    s_zero: bool
    verdict: str
    search: SearchResult | None = None

    @property
    def preconditions(self) -> bool:
        return self.r_idempotent and self.s_ideal and self.s_idempotent


def verify_theorem_instance(R: FiniteRing, S: Subset, candidates, bound: int = DEFAULT_SEARCH_BOUND,
                            canon_bound: int = DEFAULT_CANON_BOUND, hom_bound: int = DEFAULT_HOM_BOUND,
                            jobs: int = 1) -> TheoremReport:
    """Look for a joint enlargement of R and its ideal S among ``candidates``.

    Verdicts: PRECONDITIONS_FAIL, NONE_FOUND (S proper, nothing found),
    CONSISTENT_EQUAL (S = R), FATAL (S proper yet a witness exists).
    """
    full = R.full_mask()
    s = S.mask
    r_idem = is_idempotent_ring(R)
    s_ideal = is_ideal_mask(R, s)
    s_idem = s_ideal and product_mask(R, s, s) == s
    report = TheoremReport(r_idem, s_ideal, s_idem, s != full, s == 1, "PRECONDITIONS_FAIL")
    if not report.preconditions:
        return report
    sub, _ = induced_ring(S)
    result = search_joint_enlargement(R, sub, candidates, bound=bound, canon_bound=canon_bound,
                                      hom_bound=hom_bound, jobs=jobs)
    report.search = result
    if result.witness is None:
        report.verdict = "NONE_FOUND"
    elif report.s_proper:
        report.verdict = "FATAL"
    else:
        report.verdict = "CONSISTENT_EQUAL"
    return report
