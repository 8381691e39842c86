"""Command-line interface.

Exit codes: 0 affirmative, 1 negative verdict (with witness) or failed
verification, 2 inconclusive within the search bounds, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from isotonian import campaigns, kernels, toric
from isotonian.cycles import (DEFAULT_MAX_LEN, CycleError, chordless_proper_cycles, proper_cycles,
                              witness_for)
from isotonian.homs import MapConditionError, enumerate_hom, parse_map
from isotonian.poset import PosetError, classify
from isotonian.posetfile import BUILTIN_NAMES, PosetSyntaxError, builtin, format_poset, read_posets
from isotonian.segre import component_analysis
from isotonian.special import ChordlessCycleError, SpecialError, decompose
from isotonian.toric import (DEFAULT_MAX_DEGREE, Binomial, DegreeMismatch, MonomialOfMaps,
                             enumerate_fiber, generation_report, in_ideal)

EXIT_OK, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


class Context:
    def __init__(self, files):
        self.named = {}
        for path in files or ():
            try:
                posets = read_posets(path)
            except OSError as e:
                raise UsageError(f"cannot read {path}: {e.strerror}") from None
            self.named.update(posets)

    def poset(self, name):
        if name in self.named:
            return self.named[name]
        P = builtin(name)
        if P is None:
            raise UsageError(f"unknown poset {name!r} (built-ins: {', '.join(BUILTIN_NAMES)})")
        return P


def _report_line(rep, kind):
    D = rep.max_degree
    v = rep.verdict(kind)
    if v is True:
        return f"YES (up to degree {D})", EXIT_OK
    if v is False:
        if kind == "quadratic":
            w = rep.witnesses["quadratic"]
        else:
            w = rep.witnesses["squarefree"]
        return f"NO (witness fiber at degree {w['degree']})", EXIT_NO
    return (f"INCONCLUSIVE (checked up to degree {rep.checked_up_to}; {rep.inconclusive_reason})",
            EXIT_INCONCLUSIVE)


def cmd_hom(args, ctx):
    P, Q = ctx.poset(args.P), ctx.poset(args.Q)
    maps = enumerate_hom(P, Q)
    if args.json:
        out = {"source": P.name, "target": Q.name, "count": len(maps)}
        if args.list:
            out["maps"] = [phi.serialize() for phi in maps]
        print(_dump(out))
    else:
        print(len(maps))
        if args.list:
            for phi in maps:
                print(phi.serialize())
    return EXIT_OK


def _caps(args):
    return {"threads": args.threads, "max_monomials": args.max_monomials,
            "max_fibers": args.max_fibers, "max_fiber_size": args.max_fiber_size}


def cmd_gens(args, ctx):
    P, Q = ctx.poset(args.P), ctx.poset(args.Q)
    if args.components:
        res = component_analysis(P, Q, args.max_degree, direct=True, **_caps(args))
        if args.json:
            print(_dump(res.as_dict()))
        else:
            for C, r in zip(res.components, res.per_component):
                print(f"component {' '.join(C.elements)}: min generation degree "
                      f"{r.min_gen_degree}, quadratic {_word(r.verdict('quadratic'))}, "
                      f"squarefree {_word(r.verdict('squarefree'))}")
            print(f"combined: quadratic {_word(res.quadratic)}, squarefree {_word(res.squarefree)}")
            for n in res.notes:
                print("note:", n)
        return EXIT_OK if res.quadratic else (EXIT_NO if res.quadratic is False else EXIT_INCONCLUSIVE)
    rep = generation_report(P, Q, args.max_degree, **_caps(args))
    if args.json:
        print(_dump(rep.as_dict()))
    else:
        print(f"|Hom({P.name},{Q.name})| = {rep.hom_size}")
        for s in rep.degrees:
            print(f"degree {s.degree}: {s.monomials} monomials, {s.fibers} fibers "
                  f"({s.nontrivial_fibers} nontrivial, largest {s.largest_fiber}), "
                  f"move degree needed {s.max_move_degree}")
        print(f"min generation degree up to {rep.checked_up_to}: {rep.min_gen_degree}")
        print("quadratic:", _report_line(rep, "quadratic")[0])
        print("squarefree:", _report_line(rep, "squarefree")[0])
    return EXIT_OK if rep.conclusive else EXIT_INCONCLUSIVE


def _word(v):
    return {True: "yes", False: "no", None: "undecided"}[v]


def cmd_check(args, ctx):
    P, Q = ctx.poset(args.P), ctx.poset(args.Q)
    rep = generation_report(P, Q, args.max_degree, **_caps(args))
    line, code = _report_line(rep, args.kind)
    if args.json:
        print(_dump({"property": args.kind, "verdict": _word(rep.verdict(args.kind)),
                     "max_degree": args.max_degree, "report": rep.as_dict()}))
    else:
        print(line)
        if code == EXIT_NO:
            w = rep.witnesses[args.kind]
            print(f"fiber members: {len(w['members'])}, components: {len(w['components'])}")
            for m in w["members"]:
                print("  " + " * ".join(f"[{x}]" for x in m))
    return code


def cmd_cycles(args, ctx):
    Q = ctx.poset(args.Q)
    if args.max_len % 2 or args.max_len < 6:
        raise UsageError("--max-len must be even and at least 6")
    chordless = chordless_proper_cycles(Q, args.max_len)
    listing = proper_cycles(Q, args.max_len, min_len=6) if args.all_proper else chordless
    complete = len(Q) <= args.max_len
    if args.json:
        print(_dump({
            "poset": Q.name,
            "max_len": args.max_len,
            "search_complete": complete,
            "chordless_proper": [c.serialize() for c in chordless],
            **({"proper": [c.serialize() for c in listing]} if args.all_proper else {}),
        }))
    else:
        by_len = {}
        for c in chordless:
            by_len.setdefault(len(c), []).append(c)
        if not chordless:
            print(f"no chordless proper cycle of length 6..{args.max_len}")
        for L in sorted(by_len):
            n = len(by_len[L])
            print(f"{n} chordless proper cycle{'s' if n != 1 else ''} of length {L}")
            for c in by_len[L]:
                print("  " + " ".join(c.seq))
        if args.all_proper:
            for c in listing:
                ch = c.serialize()["chord"]
                tag = f"chord q{ch[0]} <= q{ch[1]}" if ch else "chordless"
                print(f"proper {' '.join(c.seq)}: {tag}")
        if not complete:
            print(f"(cycles longer than {args.max_len} not searched)")
    if chordless:
        return EXIT_NO
    return EXIT_OK if complete else EXIT_INCONCLUSIVE


def _parse_monomial(P, Q, text):
    maps = [parse_map(P, Q, part) for part in text.split(";") if part.strip()]
    if not maps:
        raise UsageError("empty monomial")
    return MonomialOfMaps(maps)


def cmd_decompose(args, ctx):
    P, Q = ctx.poset(args.P), ctx.poset(args.Q)
    seed = _parse_monomial(P, Q, args.fiber_seed)
    if args.minus is not None:
        minus = _parse_monomial(P, Q, args.minus)
    else:
        fiber = enumerate_fiber(seed)
        others = [m for m in fiber.members if m != seed]
        if not others:
            raise UsageError("the fiber of the seed is a singleton; nothing to decompose")
        minus = others[-1]
    f = Binomial(seed, minus)
    if not in_ideal(f):
        raise UsageError("the two monomials have different multidegrees")
    comb = decompose(f, args.target)
    ok = comb.verify(args.target) and comb.is_path()
    if args.json:
        out = comb.serialize(args.target)
        out["seed"] = [phi.serialize() for phi in seed]
        out["shape"] = args.target
        print(_dump(out))
    else:
        print("seed:", "; ".join(phi.serialize() for phi in seed))
        print("minus:", "; ".join(phi.serialize() for phi in minus))
        print(f"{len(comb.terms)} {args.target} term(s), verified: {'yes' if ok else 'no'}")
        for t in comb.terms:
            print(f"  {t.coefficient} * ({t.part})")
    return EXIT_OK if ok else EXIT_NO


def cmd_witness(args, ctx):
    P, Q = ctx.poset(args.P), ctx.poset(args.Q)
    c = classify(P)
    if c.is_antichain or not c.components_all_rooted_or_corooted:
        raise UsageError("P must not be an antichain and its components must be rooted or co-rooted")
    cycles = chordless_proper_cycles(Q, args.max_len)
    if not cycles:
        print(f"no chordless proper cycle of length 6..{args.max_len}; no witness")
        return EXIT_OK if len(Q) <= args.max_len else EXIT_INCONCLUSIVE
    cyc = cycles[0]
    f = witness_for(P, cyc)
    out = {"cycle": list(cyc.seq), "binomial": f.serialize(), "degree": f.degree,
           "in_ideal": in_ideal(f)}
    if args.verify:
        rep = generation_report(P, Q, f.degree, **_caps(args))
        out["quadratic_up_to_degree"] = rep.verdict("quadratic")
    if args.json:
        print(_dump(out))
    else:
        print("cycle:", " ".join(cyc.seq))
        print(f"degree {f.degree} binomial in J: {f}")
        if args.verify:
            print(f"quadratic up to degree {f.degree}: {_word(out['quadratic_up_to_degree'])}")
    return EXIT_NO


def cmd_verify(args, ctx):
    targets = None
    if args.targets:
        targets = [ctx.poset(n) for n in args.targets.split(",")]
    res = campaigns.theorem_campaign(args.p_family, args.max_q_size, args.max_degree,
                                     args.max_len, threads=args.threads, targets=targets)
    if args.json:
        print(_dump(res))
    else:
        print(f"{res['instances']} instances ({', '.join(res['family'])} against {res['targets']} "
              f"posets), degree <= {res['max_degree']}, cycles <= {res['max_len']}")
        print(f"mismatches: {res['mismatches']}, inconclusive: {res['inconclusive']}, "
              f"non-quadratic: {res['non_quadratic']}, squarefree failures: {res['squarefree_failures']}")
    if res["mismatches"] or res["squarefree_failures"]:
        return EXIT_NO
    return EXIT_INCONCLUSIVE if res["inconclusive"] else EXIT_OK


def cmd_random(args, ctx):
    if args.kind == "decompose":
        res = campaigns.random_campaign(args.seed, args.count, args.max_degree)
    else:
        res = campaigns.hom_product_campaign(args.seed, args.count)
    if args.json:
        print(_dump(res))
    else:
        print(f"{res['campaign']} seed {args.seed}: {res['count']} instances, {res['failures']} failures")
    return EXIT_NO if res["failures"] else EXIT_OK


def cmd_show(args, ctx):
    P = ctx.poset(args.P)
    c = classify(P)
    if args.json:
        print(_dump({"name": P.name, "elements": list(P.elements),
                     "covers": [f"{a}<{b}" for a, b in P.covers], "classification": c.as_dict()}))
        return EXIT_OK
    sys.stdout.write(format_poset(P))
    for p in P.elements:
        ups = P.upper_covers(p)
        if ups:
            print(f"  {p} < {' '.join(ups)}")
    for k, v in c.as_dict().items():
        print(f"{k}: {_word(v)}")
    return EXIT_OK


def build_parser():
    ap = _Parser(prog="isotonian", description="Isotone maps, toric fibers and poset cycles.")
    ap.add_argument("--posets", action="append", metavar="FILE", help="poset file (repeatable)")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--backend-info", action="store_true", help="print the kernel backend and exit")
    # the global options are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--posets", action="append", metavar="FILE", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--max-monomials", type=int, default=toric.MAX_MONOMIALS_PER_DEGREE,
                      help="give up (inconclusive) above this many monomials in one degree")
    caps.add_argument("--max-fibers", type=int, default=toric.MAX_FIBERS_PER_DEGREE)
    caps.add_argument("--max-fiber-size", type=int, default=toric.MAX_FIBER_SIZE)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("hom", parents=[common], help="count (and list) isotone maps P -> Q")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--list", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("gens", parents=[common, caps], help="generation report from fiber graphs")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--components", action="store_true", help="analyse each connected component")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gens)

    p = sub.add_parser("check", parents=[common, caps], help="quadratic or squarefree generation verdict")
    p.add_argument("kind", choices=("quadratic", "squarefree"))
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cycles", parents=[common], help="chordless proper cycles of Q")
    p.add_argument("Q")
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--all-proper", action="store_true", help="also list proper cycles with their chords")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("decompose", parents=[common], help="certificate writing a binomial through special, "
                                         "squarefree or quadratic ones")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--fiber-seed", required=True, metavar="MAPS",
                   help="plus monomial: maps separated by ';', each like 'p0->a1, p1->b2'")
    p.add_argument("--minus", metavar="MAPS", help="minus monomial (default: last other fiber member)")
    p.add_argument("--target", choices=("special", "squarefree", "quadratic"), required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("witness", parents=[common, caps], help="non-quadratic relation from a chordless proper cycle")
    p.add_argument("P")
    p.add_argument("Q")
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--verify", action="store_true", help="confirm with the fiber graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify-theorem", parents=[common], help="fiber verdicts against the chord condition, exhaustively")
    p.add_argument("--max-q-size", type=int, default=5)
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--p-family", default="chain2",
                   help="chain2, rooted-small, or comma-separated poset names")
    p.add_argument("--targets", help="comma-separated Q names instead of all small posets")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", parents=[common], help="seeded random campaigns")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--kind", choices=("decompose", "hom-product"), default="decompose")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("show", parents=[common], help="print a poset and its classification")
    p.add_argument("P")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_show)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.backend_info:
        print(kernels.BACKEND)
        return EXIT_OK
    if not args.command:
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        ap.error("--threads must be positive")
    try:
        ctx = Context(args.posets)
        return args.func(args, ctx)
    except (UsageError, PosetSyntaxError, PosetError, MapConditionError, CycleError,
            SpecialError, DegreeMismatch, ValueError) as e:
        if isinstance(e, ChordlessCycleError):
            print(f"error: {e}", file=sys.stderr)
            return EXIT_NO
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
