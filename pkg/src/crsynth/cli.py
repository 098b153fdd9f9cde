"""Command-line interface: ``crsynth <command> ...``.

Exit codes: 0 success, 1 property violation or disagreement, 2 input
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import formats
from .errors import BudgetExceeded, InputError, NotAperiodicError
from .lang import compile_regex, dfa_member, syntactic_morphism
from .monoid import evaluate, is_aperiodic
from .rees import rees_from_trace, sigma_iso
from .rewrite import classify_system, irreducibles, is_confluent, normal_form, quotient
from .synth import Budgets, member, synthesize, verify_synthesis
from .words import Alphabet, format_word

OK, VIOLATION, INPUT_ERROR, BUDGET = 0, 1, 2, 3


def _letters(spec: str) -> list[str]:
    """``"bc"`` or ``"b,c"`` to a letter list."""
    if "," in spec:
        return [s.strip() for s in spec.split(",") if s.strip()]
    return list(spec)


def _word(A: Alphabet, text: str):
    if text in ("", "1"):
        return A.empty
    if A.single_char:
        return A.word(text)
    return A.word(text.replace(",", " ").split())


def _budgets(args) -> Budgets:
    return Budgets(args.max_alphabet, args.max_rules, args.max_irr)


def _emit(obj):
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _language(args):
    A = Alphabet(_letters(args.alphabet))
    D = compile_regex(args.regex, A)
    phi, _ = syntactic_morphism(D)
    return A, D, phi


def _synth(args, phi):
    pivots = {"": _letters(args.pivot_order)} if args.pivot_order else None
    return synthesize(phi, pivots, _budgets(args))


def cmd_synth(args) -> int:
    _, _, phi = _language(args)
    trace = _synth(args, phi)
    S = trace.result
    irr = irreducibles(S, args.max_irr)
    if irr.status == "budget_exceeded":
        raise BudgetExceeded(f"IRR(S) exceeds {args.max_irr} words")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(formats.trace_to_json(trace), fh, indent=1, ensure_ascii=False)
            fh.write("\n")
    longest = format_word(irr.words[-1]) if irr.finite and irr.words else None
    summary = {
        "rules": formats.rule_texts(S),
        "rule_count": len(S),
        "irreducible_count": irr.count if irr.finite else irr.status,
        "longest_irreducible": longest,
        "levels": trace.sizes(),
        "monoid_size": len(phi.target),
    }
    status = OK
    if args.verify:
        rep = verify_synthesis(trace, max_length=args.check_length)
        summary["verification"] = rep.as_dict()
        status = OK if rep.ok else VIOLATION
    if args.format == "json":
        _emit(summary)
        return status
    print(f"syntactic monoid: {len(phi.target)} elements")
    print(f"rules ({len(S)}):")
    for r in summary["rules"]:
        print(f"  {r}")
    print(f"|IRR(S)| = {summary['irreducible_count']}")
    print(f"longest irreducible: {longest}")
    print("levels:")
    for row in summary["levels"]:
        extra = ""
        if row["case"] == "recursive":
            extra = f" pivot={row['pivot']} |K|={row['irr_base']} |M_c|={row['local']}"
        print(f"  {row['path']}: {row['case']} |A|={row['alphabet']} |M|={row['monoid']}"
              f" rules={row['rules']}{extra}")
    if args.verify:
        print("verification: " + ("ok" if status == OK else "; ".join(rep.failures())))
    return status


def check_report(S, phi=None) -> dict:
    """The property report printed by ``crsynth check``."""
    cls = classify_system(S)
    out = {
        "length_reducing": cls["length_reducing"],
        "subword_reducing": cls["subword_reducing"],
        "confluent": None,
        "counterexample": None,
        "irr": None,
        "aperiodic_quotient": None,
        "rule_compatibility": None,
    }
    if cls["length_witness"] is not None:
        out["length_witness"] = str(cls["length_witness"])
    if cls["subword_witness"] is not None:
        out["subword_witness"] = str(cls["subword_witness"])
    if phi is not None:
        if phi.source != S.alphabet:
            raise InputError("morphism alphabet differs from the system's alphabet")
        out["rule_compatibility"] = all(evaluate(phi, r.lhs) == evaluate(phi, r.rhs)
                                        for r in S.rules)
    if not cls["length_reducing"]:
        return out
    conf = is_confluent(S)
    out["confluent"] = conf.confluent
    if not conf:
        cp = conf.counterexample
        a, b = conf.normal_forms
        out["counterexample"] = {"word": format_word(cp.superposition), "overlap": cp.overlap,
                                 "normal_forms": [format_word(a), format_word(b)]}
    irr = irreducibles(S)
    out["irr"] = {"status": irr.status, "count": irr.count if irr.finite else None}
    if irr.finite and conf:
        M, _ = quotient(S)
        out["aperiodic_quotient"] = bool(is_aperiodic(M))
    return out


_CHECK_NAMES = {
    "length_reducing": lambda r: r["length_reducing"],
    "subword_reducing": lambda r: r["subword_reducing"],
    "confluent": lambda r: bool(r["confluent"]),
    "finite_irr": lambda r: bool(r["irr"]) and r["irr"]["status"] == "finite",
    "aperiodic_quotient": lambda r: bool(r["aperiodic_quotient"]),
    "rule_compatibility": lambda r: bool(r["rule_compatibility"]),
}


def cmd_check(args) -> int:
    S = formats.load_system(args.system)
    phi = formats.load_morphism(args.hom, seed=args.seed) if args.hom else None
    report = check_report(S, phi)
    wanted = ["length_reducing", "confluent"] + (["rule_compatibility"] if phi else [])
    for name in args.require or ():
        if name not in wanted:
            wanted.append(name)
    failed = [n for n in wanted if not _CHECK_NAMES[n](report)]
    report["requested"] = wanted
    report["failed"] = failed
    _emit(report)
    return VIOLATION if failed else OK


def cmd_member(args) -> int:
    A, D, phi = _language(args)
    w = _word(A, args.word)
    verdicts = {}
    if args.via in ("dfa", "both"):
        verdicts["dfa"] = dfa_member(D, w)
    nf = None
    if args.via in ("crs", "both"):
        trace = _synth(args, phi)
        nf = normal_form(w, trace.result)
        verdicts["crs"] = member(phi, trace, w)
    agree = len(set(verdicts.values())) == 1
    if args.format == "json":
        out = dict(verdicts)
        if nf is not None:
            out["normal_form"] = format_word(nf)
        out["agree"] = agree
        _emit(out)
    else:
        for k, v in verdicts.items():
            extra = f" (normal form {format_word(nf)})" if k == "crs" else ""
            print(f"{k}: {str(v).lower()}{extra}")
        if not agree:
            print("disagreement between dfa and crs", file=sys.stderr)
    return OK if agree else VIOLATION


def cmd_quotient(args) -> int:
    S = formats.load_system(args.system)
    conf = is_confluent(S)
    if not conf:
        a, b = conf.normal_forms
        print(f"not confluent: {conf.counterexample.overlap} has normal forms "
              f"{format_word(a)} and {format_word(b)}", file=sys.stderr)
        return VIOLATION
    irr = irreducibles(S, args.max_irr)
    if irr.status == "budget_exceeded":
        raise BudgetExceeded(f"IRR(S) exceeds {args.max_irr} words")
    if not irr.finite:
        print("IRR(S) is infinite: the quotient is not finite", file=sys.stderr)
        return VIOLATION
    M, _ = quotient(S, args.max_irr)
    if args.format == "text":
        print(M.format_table())
    else:
        _emit(formats.monoid_to_json(M))
    return OK


def cmd_nf(args) -> int:
    S = formats.load_system(args.system)
    w = _word(S.alphabet, args.word)
    nf, tr = normal_form(w, S, trace=True)
    if args.format == "json":
        out = {"word": format_word(w), "normal_form": format_word(nf), "step_count": len(tr)}
        if args.trace:
            out["steps"] = [{"position": s.position, "rule": str(S.rules[s.rule_index]),
                             "word": format_word(s.word)} for s in tr.steps]
        _emit(out)
        return OK
    print(format_word(nf))
    if args.trace:
        print(f"{len(tr)} step(s):")
        for s in tr.steps:
            print(f"  at {s.position} apply {S.rules[s.rule_index]}  =>  {format_word(s.word)}")
    return OK


def cmd_rees(args) -> int:
    trace = formats.load_trace(args.trace)
    E = rees_from_trace(trace)
    Ms, _ = quotient(trace.result)
    iso = sigma_iso(Ms, E, trace)
    P, Q = E.P, E.Q
    out = {
        "isomorphic": iso.isomorphic,
        "P": list(P.elements),
        "Q": list(Q.elements),
        "rho": {P.elements[u]: Q.elements[q] for u, q in enumerate(E.rho)},
        "sizes": {"quotient": len(Ms), "P": len(P), "Q": len(Q), "E": len(E.monoid)},
    }
    if iso:
        out["mapping"] = {Ms.elements[i]: E.monoid.elements[x] for i, x in enumerate(iso.mapping)}
    else:
        out["counterexample"] = iso.counterexample
    _emit(out)
    return OK if iso else VIOLATION


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all()
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    return OK if passed == len(results) else VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crsynth",
                                description="Synthesize and check Church-Rosser rewriting systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def budget_opts(sp):
        sp.add_argument("--max-alphabet", type=int, default=64)
        sp.add_argument("--max-rules", type=int, default=10**5)
        sp.add_argument("--max-irr", type=int, default=10**6)

    def common(sp, fmt="text"):
        sp.add_argument("--format", choices=["json", "text"], default=fmt)
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for sampled associativity checks on large tables")

    def lang_opts(sp):
        sp.add_argument("--regex", required=True, help="star-free expression")
        sp.add_argument("--alphabet", required=True, help='letters, e.g. "bc" or "b,c"')
        sp.add_argument("--pivot-order", help="top-level pivot preference, e.g. c or c,b")

    sp = sub.add_parser("synth", help="synthesize a system for a language")
    lang_opts(sp)
    sp.add_argument("--out", help="write the synthesis trace JSON here")
    sp.add_argument("--verify", action="store_true", help="also run the verification checks")
    sp.add_argument("--check-length", type=int, default=8)
    budget_opts(sp)
    common(sp)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("check", help="report properties of a system file")
    sp.add_argument("system")
    sp.add_argument("--hom", help="morphism JSON to test rule compatibility against")
    sp.add_argument("--require", action="append", choices=sorted(_CHECK_NAMES),
                    help="additional property that must hold (repeatable)")
    common(sp, "json")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("member", help="decide membership of a word")
    lang_opts(sp)
    sp.add_argument("--word", required=True, help='the word; "1" or "" is the empty word')
    sp.add_argument("--via", choices=["dfa", "crs", "both"], default="both")
    budget_opts(sp)
    common(sp)
    sp.set_defaults(func=cmd_member)

    sp = sub.add_parser("quotient", help="print the quotient monoid of a system")
    sp.add_argument("system")
    sp.add_argument("--max-irr", type=int, default=10**6)
    common(sp, "json")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("nf", help="normal form of a word")
    sp.add_argument("system")
    sp.add_argument("--word", required=True)
    sp.add_argument("--trace", action="store_true", help="list the rewrite steps")
    common(sp)
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("rees", help="check the Rees-extension isomorphism for a trace")
    sp.add_argument("trace")
    common(sp, "json")
    sp.set_defaults(func=cmd_rees)

    sp = sub.add_parser("selftest", help="run the acceptance criteria")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotAperiodicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
