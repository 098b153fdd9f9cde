"""The exit criteria as runnable checks, shared by ``crsynth selftest`` and the test suite."""

from __future__ import annotations

import subprocess
import sys
import time
from dataclasses import dataclass
from itertools import product

from .lang import compile_regex, dfa_member, syntactic_morphism
from .monoid import FiniteMonoid, Morphism, is_aperiodic, local_divisor
from .rees import rees_from_trace, rees_power, rees_power_closed_form, sigma_iso
from .rewrite import RewriteSystem, classify_system, irreducibles, is_confluent, normal_form, quotient
from .synth import member, synthesize, verify_synthesis
from .words import Alphabet, all_words, format_word

# irreducible count printed alongside the (bc)+ construction; enumeration gives 57
STATED_IRR_COUNT = 65

EIGHT_RULE_SYSTEM = [("bbb", "bb"), ("bbc", "bb"), ("cbb", "bb"), ("ccc", "bb"),
                     ("ccb", "bb"), ("bcc", "bb"), ("bcb", "b"), ("cbc", "c")]

# star-free expressions over at most two letters, syntactic monoids of size <= 6
CORPUS = [
    ("(bc)+", "bc"), ("b*", "bc"), ("b*c", "bc"), ("(b|c)*c", "bc"), ("~(0)", "bc"),
    ("1", "bc"), ("0", "bc"), ("b", "bc"), ("bc", "bc"), ("b*c*", "bc"), ("c(b|c)*", "bc"),
    ("(b|c)*b(b|c)*", "bc"), ("~((b|c)*bb(b|c)*)", "bc"), ("b|c", "bc"), ("(bc)*", "bc"),
    ("b+", "bc"), ("~(1)", "bc"), ("b?c?", "bc"), ("(b|c)*bc(b|c)*", "bc"), ("b*cb*", "bc"),
    ("(b|c)*cb", "bc"), ("~(0)c~(0)&~(0)b~(0)", "bc"), ("bb", "bc"), ("aa+", "a"), ("a?", "a"),
]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return (f"[{mark}] #{self.number} {self.title} ({self.seconds:.2f}s / {self.limit:g}s)"
                f"{': ' + self.detail if self.detail else ''}")


class _Checks:
    def __init__(self):
        self.failures = []
        self.notes = []

    def expect(self, cond, message):
        if not cond:
            self.failures.append(message)
        return cond


def _run(number, title, limit, fn) -> CriterionResult:
    chk = _Checks()
    t0 = time.perf_counter()
    try:
        fn(chk)
    except Exception as exc:  # a crash is a failed criterion, reported with its message
        chk.failures.append(f"{type(exc).__name__}: {exc}")
    dt = time.perf_counter() - t0
    chk.expect(dt < limit, f"runtime {dt:.2f}s over {limit}s")
    detail = "; ".join(chk.failures + chk.notes)
    return CriterionResult(number, title, not chk.failures, detail, dt, limit)


def _rules(S):
    return {(format_word(r.lhs), format_word(r.rhs)) for r in S.rules}


def criterion_1(chk):
    A = Alphabet("bc")
    S = RewriteSystem.from_pairs(A, [("cbc", "c")])
    cls = classify_system(S)
    chk.expect(cls["length_reducing"] and cls["subword_reducing"], "classification wrong")
    chk.expect(bool(is_confluent(S)), "not confluent")
    chk.expect(irreducibles(S).status == "infinite", "IRR not infinite")
    for k in range(1, 11):
        nf = normal_form(A.word("bc" * k), S)
        chk.expect(str(nf) == "bc", f"nf((bc)^{k}) = {nf}")


def criterion_2(chk):
    A = Alphabet("bc")
    S = RewriteSystem.from_pairs(A, EIGHT_RULE_SYSTEM)
    conf = is_confluent(S)
    if not chk.expect(bool(conf), "not confluent"):
        a, b = conf.normal_forms
        chk.failures[-1] += (f" (critical pair on {conf.counterexample.superposition}:"
                             f" normal forms {a} and {b})")
    irr = irreducibles(S)
    got = sorted(str(w) for w in irr) if irr.finite else irr.status
    chk.expect(got == sorted(["1", "b", "c", "bb", "bc", "cb", "cc"]), f"IRR(S) = {got}")
    cls = classify_system(S)
    chk.expect(not cls["subword_reducing"] and cls["subword_witness"] is not None,
               "expected subword_reducing = false with a witness")
    if cls["subword_witness"] is not None:
        chk.notes.append(f"subword witness {cls['subword_witness']}")
    if conf:
        M, _ = quotient(S)
        chk.expect(len(M) == 7 and bool(is_aperiodic(M)), "quotient not 7-element aperiodic")
    else:
        chk.expect(False, "quotient undefined for a non-confluent system")


def forced_pivot_trace():
    A = Alphabet("bc")
    phi, _ = syntactic_morphism(compile_regex("(bc)+", A))
    return synthesize(phi, {"": ["c"]})


def criterion_3(chk):
    tr = forced_pivot_trace()
    chk.expect(_rules(tr.base_trace.result) == {("bbb", "bb")}, "R differs")
    chk.expect(_rules(tr.code_trace.result) == {
        ("(c)(c)", "(c)"), ("(bc)", "1"), ("(bbc)(bbc)", "(bbc)"), ("(c)(bbc)(c)", "(c)")},
        f"T differs: {_rules(tr.code_trace.result)}")
    chk.expect(_rules(tr.lifted) == {("ccc", "cc"), ("cbc", "c"), ("cbbcbbc", "cbbc"),
                                     ("ccbbcc", "cc")}, "T-hat differs")
    irr = irreducibles(tr.result)
    chk.expect(irr.finite, "IRR(S) not finite")
    longest = str(irr.words[-1])
    chk.expect(longest == "bbcbbccbbcbb", f"longest irreducible {longest}")
    chk.expect(sum(len(w) == len(longest) for w in irr) == 1, "longest irreducible not unique")
    q = irreducibles(tr.code_trace.result).count
    law = 3 + 9 * q
    chk.expect(irr.count == law, f"|IRR(S)| = {irr.count} but 3 + 9*|IRR(T)| = {law}")
    note = f"|IRR(S)| = {irr.count} (enumerated) = 3 + 9*{q}; stated count {STATED_IRR_COUNT}"
    if irr.count != STATED_IRR_COUNT:
        note += " [documented discrepancy, not a failure]"
    chk.notes.append(note)


def criterion_4(chk):
    C = Alphabet("c")
    U1 = FiniteMonoid(["1", "0"], 0, [[0, 1], [1, 1]])
    phi = Morphism(C, U1, [1])
    tr = synthesize(phi)
    chk.expect(_rules(tr.result) == {("cc", "c")}, f"S = {tr.result}")
    M, _ = quotient(tr.result)
    chk.expect(len(M) == 2, f"|quotient| = {len(M)}")
    rep = verify_synthesis(tr)
    chk.expect(rep.ok, f"verification failed: {rep.failures()}")


def corpus_traces():
    out = []
    for expr, letters in CORPUS:
        A = Alphabet(letters)
        D = compile_regex(expr, A)
        phi, _ = syntactic_morphism(D)
        out.append((expr, A, D, phi, synthesize(phi)))
    return out


def criterion_5(chk, traces=None):
    chk.expect(len(CORPUS) >= 15, "corpus too small")
    for needed in ["(bc)+", "b*", "b*c", "(b|c)*c", "~(0)", "1"]:
        chk.expect(needed in [e for e, _ in CORPUS], f"{needed} missing from corpus")
    traces = traces if traces is not None else corpus_traces()
    for expr, A, D, phi, tr in traces:
        chk.expect(len(A) <= 2 and len(phi.target) <= 6, f"{expr}: outside corpus bounds")
        rep = verify_synthesis(tr)
        chk.expect(rep.ok, f"{expr}: {rep.failures()}")
        for w in all_words(A, 8):
            if member(phi, tr, w) != dfa_member(D, w):
                chk.expect(False, f"{expr}: member disagrees with DFA on {w}")
                break


def _local_divisor_ok(chk, M, c, label):
    ld = local_divisor(M, c)
    L = ld.monoid
    t = M.table
    n = len(M)
    if c != M.neutral:
        chk.expect(len(L) < n, f"{label}: |M_c| = {len(L)} not < |M| = {n}")
    chk.expect(bool(is_aperiodic(L)), f"{label}: M_c not aperiodic")
    chk.expect(L.elements[L.neutral] == M.elements[c], f"{label}: neutral is not c")
    carrier = ld.inclusion
    pos = {m: i for i, m in enumerate(carrier)}
    for i, a in enumerate(carrier):
        xs = [x for x in range(n) if t[x, c] == a]
        for j, b in enumerate(carrier):
            ys = [y for y in range(n) if t[c, y] == b]
            vals = {int(t[t[x, c], y]) for x in xs for y in ys}
            if len(vals) != 1 or pos.get(vals.pop(), -1) != L.table[i, j]:
                chk.expect(False, f"{label}: ∘ ill-defined at ({M.elements[a]}, {M.elements[b]})")
                return
    # associativity is verified exhaustively by the FiniteMonoid constructor (|M_c| <= 64)


def criterion_6(chk, traces=None):
    A = Alphabet("bc")
    phi, _ = syntactic_morphism(compile_regex("(bc)+", A))
    M = phi.target
    c = M.index("c")
    Mc = local_divisor(M, c).monoid
    chk.expect(set(Mc.elements) == {"c", "0"} and Mc.elements[Mc.neutral] == "c",
               f"M_c = {Mc.elements}")
    for x in range(len(M)):
        if x != M.neutral:
            _local_divisor_ok(chk, M, x, f"(bc)+ at {M.elements[x]}")
    traces = traces if traces is not None else corpus_traces()
    seen = set()
    for expr, *_, tr in traces:
        for path, node in tr.levels():
            target = node.morphism.target
            key = (target.elements, target.table.tobytes())
            if key in seen:
                continue
            seen.add(key)
            for x in range(len(target)):
                if x != target.neutral:
                    _local_divisor_ok(chk, target, x, f"{expr} {path or 'top'} at {target.elements[x]}")


def criterion_7(chk, traces=None):
    traces = traces if traces is not None else corpus_traces()
    recursive = 0
    for expr, *_, tr in traces:
        if not tr.recursive:
            continue
        recursive += 1
        E = rees_from_trace(tr)
        Ms, _ = quotient(tr.result)
        iso = sigma_iso(Ms, E, tr)
        chk.expect(bool(iso), f"{expr}: sigma not an isomorphism {iso.counterexample}")
        p, q = len(E.P), len(E.Q)
        chk.expect(len(Ms) == p + p * p * q, f"{expr}: |A*/S| = {len(Ms)} != {p}+{p}^2*{q}")
        chk.expect(bool(is_aperiodic(E.monoid)), f"{expr}: E(rho) not aperiodic")
        for x in range(p, len(E.monoid)):
            for n in range(1, 7):
                if rees_power(E, x, n) != rees_power_closed_form(E, x, n):
                    chk.expect(False, f"{expr}: power closed form fails at {E.monoid.elements[x]}^{n}")
                    break
    chk.expect(recursive > 0, "no recursive traces in the corpus")


def criterion_8(chk):
    proc = subprocess.run([sys.executable, "-m", "crsynth", "synth", "--regex", "(aa)*",
                           "--alphabet", "a"], capture_output=True, text=True)
    chk.expect(proc.returncode == 2, f"exit code {proc.returncode}")
    chk.expect("not aperiodic" in proc.stderr and "witness" in proc.stderr,
               f"stderr: {proc.stderr.strip()}")


CRITERIA = [
    (1, "system {cbc -> c}", 1.0, criterion_1),
    (2, "eight-rule system over {b, c}", 1.0, criterion_2),
    (3, "(bc)+ with top pivot c, end to end", 5.0, criterion_3),
    (4, "one-letter fixture {cc -> c}", 1.0, criterion_4),
    (5, "corpus synthesis + membership", 60.0, criterion_5),
    (6, "local divisor properties", 5.0, criterion_6),
    (7, "Rees-extension isomorphism", 30.0, criterion_7),
    (8, "rejection of (aa)*", 1.0, criterion_8),
]


def run_criterion(number: int) -> CriterionResult:
    for k, title, limit, fn in CRITERIA:
        if k == number:
            # corpus synthesis time is charged to each corpus-based criterion
            return _run(k, title, limit, fn)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [run_criterion(k) for k, *_ in CRITERIA]
