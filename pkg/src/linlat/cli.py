"""Command line entry point: ``linlat <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import claims as claims_mod
from .corpus import build_corpus, CorpusSpec, format_corpus, enumerate_lattices, named
from .errors import EquivalenceViolation, LatticeError, NotModular, ParseError, TheoremViolated
from .monoid import (
    congruence_delta,
    congruence_nabla,
    full_endo_monoid,
    generate_submonoid,
    is_regular,
    quotient,
)
from .morphisms import enumerate_endomorphisms
from .properties import analyze
from .textio import parse_morphisms, read_lattices

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_THEOREM = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, text=None, records=()):
    if args.format == "records":
        for r in records:
            print(json.dumps(r, sort_keys=True))
    elif text is not None:
        print(text)


def load_inputs(source):
    """A path to a lattice file, or ``named:<example>``."""
    if source.startswith("named:"):
        key = source.split(":", 1)[1]
        try:
            return [named(key)]
        except LatticeError:
            raise KeyError(f"unknown named example {key!r}") from None
    return read_lattices(source)


def monoids_for_policy(L, policy):
    if policy.startswith("file:"):
        path = policy.split(":", 1)[1]
        with open(path) as fh:
            text = fh.read()
        gens = [f for f in parse_morphisms(text, {L.name: L}) if f.lattice is L]
        return [generate_submonoid(L, gens, name=os.path.basename(path))]
    return claims_mod.monoids_for(L, policy)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args):
    status = EXIT_OK
    for path in args.paths:
        for L in load_inputs(path):
            line = f"ok {L.name} n={L.n} modular={'true' if L.modular else 'false'}"
            if L.degenerate:
                line += " degenerate"
            if args.require_modular and not L.modular:
                a, b, x = L.modular_witness
                print(f"{path}: {L.name} is not modular (a={L.names[a]}, b={L.names[b]}, x={L.names[x]})",
                      file=sys.stderr)
                status = EXIT_INVALID
                continue
            print(line)
    return status


def cmd_analyze(args):
    for L in load_inputs(args.path):
        if not L.modular:
            raise NotModular(f"{L.name} is not modular")
        for m in monoids_for_policy(L, args.monoid):
            rep = analyze(L, m)
            recs = list(rep.records())
            if args.no_timing:
                for r in recs:
                    r.pop("time_ms", None)
            _emit(args, rep.text(), recs)
    return EXIT_OK


def cmd_endos(args):
    for L in load_inputs(args.path):
        # composites of linear maps are linear only in the modular case
        if L.modular:
            m = full_endo_monoid(L)
            maps, labels = m.elements, [m.label(i) for i in range(m.n)]
        else:
            m = None
            maps = enumerate_endomorphisms(L)
            labels = [f"e{i}" for i in range(len(maps))]
        if args.format == "records":
            for i, f in enumerate(maps):
                print(json.dumps({"schema": 1, "kind": "endomorphism", "lattice": L.name, "index": i,
                                  "label": labels[i], "map": f.describe(),
                                  "kernel": L.names[f.kernel], "image": L.names[f.image]}, sort_keys=True))
            continue
        print(f"lattice {L.name}")
        for i, f in enumerate(maps):
            print(f"{labels[i]:>4} {f.describe()}  ker={L.names[f.kernel]} img={L.names[f.image]}")
        print(f"count {len(maps)}")
        if m is not None:
            print(m.dump())
        else:
            print("no table: not closed under composition (lattice is not modular)")
    return EXIT_OK


def cmd_quotient(args):
    rel = congruence_delta if args.rel == "delta" else congruence_nabla
    for L in load_inputs(args.path):
        if not L.modular:
            raise NotModular(f"{L.name} is not modular")
        for m in monoids_for_policy(L, args.monoid):
            cong = rel(L, m, method=args.method)
            q = quotient(m, cong)
            reg = q.is_regular()
            if args.format == "records":
                print(json.dumps({"schema": 1, "kind": "quotient", "lattice": L.name, "monoid": m.name,
                                  "relation": args.rel, "classes": q.class_labels(),
                                  "table": [list(r) for r in q.table], "regular": bool(reg),
                                  "monoid_regular": bool(is_regular(m))}, sort_keys=True))
                continue
            print(f"lattice {L.name}")
            print(cong.dump())
            print(q.dump())
            print(f"regular {'true' if reg else 'false'}")
    return EXIT_OK


def _selected_claims(args):
    if not args.claims or args.claims == "all":
        return claims_mod.claim_ids()
    ids = [c.strip() for c in args.claims.split(",") if c.strip()]
    unknown = [c for c in ids if c not in claims_mod.REGISTRY]
    if unknown:
        raise KeyError(f"unknown claims: {', '.join(unknown)}")
    return ids


def _report_checks(args, checks):
    if args.format == "records":
        for c in checks:
            print(json.dumps(c.record(), sort_keys=True))
    else:
        cur = None
        for c in checks:
            if (c.lattice, c.monoid) != cur:
                cur = (c.lattice, c.monoid)
                print(f"lattice {c.lattice} monoid {c.monoid}")
            print("  " + c.line())
    fails = [c for c in checks if c.verdict == claims_mod.FAIL]
    return EXIT_THEOREM if fails else EXIT_OK


def cmd_check(args):
    ids = _selected_claims(args)
    checks = []
    for L in load_inputs(args.path):
        if not L.modular:
            checks.extend(claims_mod.gated_checks(L, ids))
            continue
        for m in monoids_for_policy(L, args.monoid):
            checks.extend(claims_mod.run_all(L, m, ids))
    return _report_checks(args, checks)


def _sweep_lattice(L, policy, ids):
    return claims_mod.sweep_lattice(L, policy, ids)


def _sweep_one(payload):
    from .textio import parse_lattice

    text, policy, ids = payload
    return _sweep_lattice(parse_lattice(text), policy, ids)


def cmd_sweep(args):
    from .textio import format_lattice

    ids = _selected_claims(args)
    spec = CorpusSpec(max_n=args.max_n, modular_only=args.modular, min_n=args.min_n,
                      files=tuple(args.corpus or ()))
    lattices = build_corpus(spec)
    jobs = args.jobs or int(os.environ.get("LINLAT_JOBS", "1"))
    if jobs > 1:
        payloads = [(format_lattice(L), args.monoid, ids) for L in lattices]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sweep_one, payloads))
    else:
        results = [_sweep_lattice(L, args.monoid, ids) for L in lattices]
    checks = [c for r in results for c in r]
    checks.sort(key=lambda c: (c.lattice, c.monoid, c.claim))
    fails = [c for c in checks if c.verdict == claims_mod.FAIL]
    if args.format == "records":
        for c in checks:
            print(json.dumps(c.record(), sort_keys=True))
    else:
        monoids = len({(c.lattice, c.monoid) for c in checks})
        print(f"sweep lattices={len(lattices)} monoids={monoids} checks={len(checks)} "
              f"failures={len(fails)}")
        counts = {}
        for c in checks:
            counts.setdefault(c.claim, {}).setdefault(c.verdict, 0)
            counts[c.claim][c.verdict] += 1
        for cid in ids:
            v = counts.get(cid, {})
            print(f"  {cid:24s} pass={v.get('pass', 0)} unmet={v.get('hypotheses_not_met', 0)} "
                  f"fail={v.get('fail', 0)}")
        for c in fails:
            print(f"FAIL {c.lattice} {c.monoid} {c.line()}")
    return EXIT_THEOREM if fails else EXIT_OK


def cmd_corpus(args):
    lats = []
    for n in range(args.min_n, args.max_n + 1):
        lats.extend(enumerate_lattices(n, args.modular))
    text = format_corpus(lats, args.max_n, args.modular)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {len(lats)} lattices to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_claims(args):
    if args.action == "list":
        for cid, cl in claims_mod.REGISTRY.items():
            print(f"{cid:24s} {cl.title}")
        return EXIT_OK
    if not args.id:
        raise KeyError("claims describe needs a claim id")
    if args.id not in claims_mod.REGISTRY:
        raise KeyError(f"unknown claim {args.id!r}")
    cl = claims_mod.REGISTRY[args.id]
    print(f"{cl.id}: {cl.title}")
    print(f"hypotheses: {', '.join(cl.hypotheses)}")
    print(cl.statement)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="linlat", description="Finite lattices, linear endomorphisms and their monoids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "records"], default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add = sub.add_parser

    def add_parser(name, **kw):
        return add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def monoid_flag(sp):
        sp.add_argument("--monoid", default="full", help="full | generated:<k> | file:<path>")

    sp = sub.add_parser("validate", help="parse and validate lattice files")
    sp.add_argument("paths", nargs="+")
    sp.add_argument("--require-modular", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("analyze", help="property report")
    sp.add_argument("path")
    sp.add_argument("--no-timing", action="store_true", help="omit timings from records")
    monoid_flag(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("endos", help="list linear endomorphisms and the Cayley table")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_endos)

    sp = sub.add_parser("quotient", help="congruence classes and quotient monoid")
    sp.add_argument("path")
    sp.add_argument("--rel", choices=["delta", "nabla"], default="delta")
    sp.add_argument("--method", choices=["both", "naive", "shortcut"], default="both")
    monoid_flag(sp)
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("check", help="run claims on one input")
    sp.add_argument("path")
    sp.add_argument("--claims", default="all")
    monoid_flag(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("sweep", help="run claims over a generated corpus")
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--min-n", type=int, default=2)
    sp.add_argument("--modular", action="store_true", help="modular lattices only")
    sp.add_argument("--corpus", action="append", help="extra corpus file (repeatable)")
    sp.add_argument("--claims", default="all")
    sp.add_argument("--jobs", type=int, default=0)
    monoid_flag(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("corpus", help="generate a lattice corpus")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--min-n", type=int, default=1)
    sp.add_argument("--modular", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("claims", help="list or describe registered claims")
    sp.add_argument("action", choices=["list", "describe"])
    sp.add_argument("id", nargs="?")
    sp.set_defaults(func=cmd_claims)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LatticeError as e:
        print(f"invalid: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (TheoremViolated, EquivalenceViolation) as e:
        print(f"THEOREM VIOLATED: {e}", file=sys.stderr)
        return EXIT_THEOREM
    except KeyError as e:
        print(f"error: {e.args[0] if e.args else e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
