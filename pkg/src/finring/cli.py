"""Command line entry point. Every subcommand prints a ``key: value`` report.

Exit codes: 0 for OK or EVIDENCE, 1 for FAIL, 2 for FATAL, 3 for usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from finring.catalog import Catalog, build_catalog
from finring.extensions import dorroh_extension, multiplier_ring
from finring.morita import (
    DEFAULT_SEARCH_BOUND,
    is_enlargement,
    search_joint_enlargement,
    verify_theorem_instance,
)
from finring.morphisms import DEFAULT_HOM_BOUND, format_hom
from finring.ring import (
    DEFAULT_CANON_BOUND,
    RingError,
    canonical_form,
    is_non_degenerate,
    parse_ring_tables,
    read_ring,
    ring_id,
    validate_ring,
    write_ring,
)
from finring.subsets import enumerate_ideals, format_subset, is_idempotent, is_idempotent_ring, parse_subset

EXIT_CODES = {"OK": 0, "EVIDENCE": 0, "FAIL": 1, "FATAL": 2}
USAGE_EXIT = 3


@dataclass
class Report:
    status: str = "OK"
    lines: list[tuple[str, str]] = field(default_factory=list)
    usage: bool = False

    @property
    def exit_code(self) -> int:
        return USAGE_EXIT if self.usage else EXIT_CODES[self.status]

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = str(value).lower()
        self.lines.append((key, str(value)))

    def render(self, quiet: bool = False) -> str:
        out = [f"status: {self.status}"]
        if not quiet:
            out += [f"{k}: {v}" for k, v in self.lines]
        return "\n".join(out) + "\n"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _bounds(p):
    p.add_argument("--canon-bound", type=int, default=DEFAULT_CANON_BOUND)
    p.add_argument("--hom-bound", type=int, default=DEFAULT_HOM_BOUND)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="finring", description=__doc__)
    parser.add_argument("--quiet", action="store_true", help="print only the status line")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("validate", help="check ring axioms")
    p.add_argument("--in", dest="inp", required=True)

    p = sub.add_parser("analyze", help="unit, exponent, idempotency, non-degeneracy, canonical id")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--max-order", type=int, default=DEFAULT_SEARCH_BOUND)
    _bounds(p)

    p = sub.add_parser("ideals", help="list two-sided ideals")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--max-order", type=int, default=DEFAULT_SEARCH_BOUND)

    p = sub.add_parser("dorroh", help="Dorroh extension over Z_m")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("multiplier", help="multiplier ring of a non-degenerate ring")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-order", type=int, default=DEFAULT_SEARCH_BOUND)

    p = sub.add_parser("enlargement", help="test T = TST and S = STS")
    p.add_argument("--ambient", required=True)
    p.add_argument("--subset", required=True)

    p = sub.add_parser("search", help="bounded joint-enlargement search")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--max-order", type=int, default=DEFAULT_SEARCH_BOUND)
    p.add_argument("--jobs", type=int, default=1)
    _bounds(p)

    p = sub.add_parser("theorem-check", help="idempotent ring versus its idempotent ideal")
    p.add_argument("--ring", required=True)
    p.add_argument("--ideal", required=True)
    p.add_argument("--catalog", required=True)
    p.add_argument("--max-order", type=int, default=DEFAULT_SEARCH_BOUND)
    p.add_argument("--jobs", type=int, default=1)
    _bounds(p)

    p = sub.add_parser("catalog", help="generate or extend a ring catalog")
    csub = p.add_subparsers(dest="action", parser_class=_Parser)
    g = csub.add_parser("generate")
    g.add_argument("--max-order", type=int, default=8)
    g.add_argument("--named-order", type=int, action="append", default=None,
                   help="orders of injected named constructions (default 16)")
    g.add_argument("--out", required=True)
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("--canon-bound", type=int, default=DEFAULT_CANON_BOUND)
    a = csub.add_parser("add")
    a.add_argument("--in", dest="inp", required=True)
    a.add_argument("--out", required=True)
    a.add_argument("--canon-bound", type=int, default=DEFAULT_CANON_BOUND)
    return parser


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _cmd_validate(args, rep):
    with open(args.inp, encoding="utf-8") as fh:
        add, mul = parse_ring_tables(fh.read())
    result = validate_ring(add, mul)
    rep.add("order", add.shape[0])
    if not hasattr(result, "order"):
        rep.status = "FAIL"
        rep.add("valid", False)
        for code, w in result.violations:
            rep.add("violation", f"{code} {w[0]} {w[1]} {w[2]}")
        return
    rep.add("valid", True)
    rep.add("unit", "none" if result.unit is None else result.unit)
    rep.add("additive_exponent", result.additive_exponent)


def _cmd_analyze(args, rep):
    R = read_ring(args.inp)
    rep.add("order", R.order)
    rep.add("unit", "none" if R.unit is None else R.unit)
    rep.add("additive_exponent", R.additive_exponent)
    rep.add("idempotent", is_idempotent_ring(R))
    ok, witness = is_non_degenerate(R)
    rep.add("non_degenerate", ok)
    if not ok:
        rep.add("degenerate_witness", f"{witness[0]} {witness[1]}")
    rep.add("ideals", len(enumerate_ideals(R, bound=args.max_order)))
    rep.add("id", ring_id(R))
    if R.order <= args.canon_bound:
        rep.add("canonical_id", ring_id(canonical_form(R, bound=args.canon_bound)[0]))
    else:
        rep.add("canonical_id", f"none (order exceeds bound {args.canon_bound})")


def _cmd_ideals(args, rep):
    R = read_ring(args.inp)
    ideals = enumerate_ideals(R, bound=args.max_order)
    rep.add("count", len(ideals))
    for S in ideals:
        rep.add("ideal", f"{format_subset(S)} | idempotent={str(is_idempotent(S)).lower()}")


def _cmd_dorroh(args, rep):
    R = read_ring(args.inp)
    D = dorroh_extension(R, args.modulus)
    write_ring(D.ring, args.out)
    rep.add("order", D.ring.order)
    rep.add("modulus", D.modulus)
    rep.add("unit", D.ring.unit)
    rep.add("iota", format_hom(D.iota))
    rep.add("out", args.out)


def _cmd_multiplier(args, rep):
    R = read_ring(args.inp)
    M = multiplier_ring(R, bound=args.max_order)
    write_ring(M.ring, args.out)
    rep.add("order", M.ring.order)
    rep.add("unit", M.ring.unit)
    rep.add("iota", format_hom(M.iota))
    rep.add("out", args.out)


def _cmd_enlargement(args, rep):
    T = read_ring(args.ambient)
    S = parse_subset(args.subset, T)
    w = is_enlargement(T, S)
    rep.add("subset", format_subset(S))
    rep.add("is_subring", w.is_subring)
    rep.add("tst_equals_t", w.tst_equals_t)
    rep.add("sts_equals_s", w.sts_equals_s)
    rep.add("enlargement", w.valid)


def _search_lines(rep, result, cands, entries):
    if result.witness is None:
        rep.add("joint_enlargement", f"none (bound {result.bound})")
        rep.add("label", result.label)
        rep.add("candidates_scanned", result.scanned)
    else:
        w = result.witness
        rep.add("joint_enlargement", "found (proof)")
        rep.add("ambient", entries[result.candidate_index].id)
        rep.add("ambient_order", w.ambient.order)
        rep.add("candidate_index", result.candidate_index)
        rep.add("copy_a", format_subset(w.copy_a))
        rep.add("copy_b", format_subset(w.copy_b))
        rep.add("iso_a", format_hom(w.iso_a))
        rep.add("iso_b", format_hom(w.iso_b))
    for note in result.skipped:
        rep.add("skipped", note)


def _catalog_candidates(path):
    entries = Catalog.load(path).entries
    return entries, [e.ring for e in entries]


def _cmd_search(args, rep):
    A = read_ring(args.a)
    B = read_ring(args.b)
    entries, cands = _catalog_candidates(args.catalog)
    result = search_joint_enlargement(A, B, cands, bound=args.max_order, canon_bound=args.canon_bound,
                                      hom_bound=args.hom_bound, jobs=args.jobs)
    rep.status = "OK" if result.witness is not None else "EVIDENCE"
    _search_lines(rep, result, cands, entries)


def _cmd_theorem(args, rep):
    R = read_ring(args.ring)
    S = parse_subset(args.ideal, R)
    entries, cands = _catalog_candidates(args.catalog)
    tr = verify_theorem_instance(R, S, cands, bound=args.max_order, canon_bound=args.canon_bound,
                                 hom_bound=args.hom_bound, jobs=args.jobs)
    rep.add("ideal", format_subset(S))
    rep.add("r_idempotent", tr.r_idempotent)
    rep.add("s_ideal", tr.s_ideal)
    rep.add("s_idempotent", tr.s_idempotent)
    rep.add("s_proper", tr.s_proper)
    rep.add("s_zero", tr.s_zero)
    rep.add("verdict", tr.verdict)
    if tr.search is not None:
        _search_lines(rep, tr.search, cands, entries)
    rep.status = {"PRECONDITIONS_FAIL": "FAIL", "NONE_FOUND": "EVIDENCE",
                  "CONSISTENT_EQUAL": "OK", "FATAL": "FATAL"}[tr.verdict]


def _cmd_catalog(args, rep):
    if args.action == "generate":
        named = tuple(args.named_order) if args.named_order else (16,)
        cat = build_catalog(max_order=args.max_order, named_orders=named, jobs=args.jobs,
                            canon_bound=args.canon_bound)
        cat.save(args.out)
        rep.add("entries", len(cat.entries))
        counts = {}
        for e in cat.entries:
            counts[e.ring.order] = counts.get(e.ring.order, 0) + 1
        for n in sorted(counts):
            rep.add(f"order_{n}", counts[n])
        rep.add("out", args.out)
    elif args.action == "add":
        R = read_ring(args.inp)
        if os.path.exists(os.path.join(args.out, "index")):
            cat = Catalog.load(args.out, args.canon_bound)
        else:
            cat = Catalog([])
        entry, added = cat.add(R, args.canon_bound)
        if added:
            cat.save(args.out)
        rep.add("id", entry.id)
        rep.add("added", added)
        rep.add("flags", ",".join(entry.flags()) or "-")
        rep.add("entries", len(cat.entries))
    else:
        raise UsageError("catalog needs an action: generate or add")


COMMANDS = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "ideals": _cmd_ideals,
    "dorroh": _cmd_dorroh,
    "multiplier": _cmd_multiplier,
    "enlargement": _cmd_enlargement,
    "search": _cmd_search,
    "theorem-check": _cmd_theorem,
    "catalog": _cmd_catalog,
}


def dispatch(argv) -> tuple[Report, bool]:
    """Run one subcommand; returns the report and the quiet flag."""
    parser = build_parser()
    rep = Report()
    quiet = "--quiet" in argv
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing subcommand")
        COMMANDS[args.command](args, rep)
    except UsageError as exc:
        rep = Report("FAIL", [("error", f"usage: {exc}")], usage=True)
    except RingError as exc:
        rep.status = "FATAL" if exc.code == "FATAL" else "FAIL"
        rep.add("error", str(exc))
    except OSError as exc:
        rep.status = "FAIL"
        rep.add("error", f"IO: {exc.strerror}: {exc.filename}")
    return rep, quiet


def main(argv=None) -> int:
    rep, quiet = dispatch(sys.argv[1:] if argv is None else list(argv))
    sys.stdout.write(rep.render(quiet))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
