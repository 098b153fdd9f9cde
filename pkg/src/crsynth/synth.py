"""Recursive synthesis of subword-reducing Church-Rosser systems.

Given ``phi: A* -> M`` with ``M`` finite aperiodic, build a finite,
confluent, subword-reducing system ``S`` whose finite quotient ``A*/S``
factorizes ``phi``. If ``phi`` is trivial, ``S = {a -> 1}``. Otherwise pick
a pivot letter ``c`` with ``phi(c) != 1`` and

* recurse on ``phi`` restricted to ``B = A - {c}``, giving ``R``;
* read ``K = IRR(R)·c`` as a new alphabet and map ``ûc`` to ``c·phi(û)·c``
  in the local divisor ``M_c`` (strictly smaller than ``M``);
* recurse on that morphism over ``K``, giving ``T``;
* return ``S = R ∪ {c·l -> c·r : (l, r) in T}``.

The recursion decreases ``(|M|, |A|)`` lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import BudgetExceeded, InputError, NotAperiodicError
from .monoid import LocalDivisor, Morphism, evaluate, is_aperiodic, local_divisor
from .rewrite import (RewriteSystem, Rule, classify_system, critical_pairs, irreducibles,
                      is_confluent, normal_form, quotient)
from .words import Alphabet, Word, all_words, decode_over_code, derive_code_alphabet, expand


@dataclass(frozen=True)
class Budgets:
    max_alphabet: int = 64
    max_rules: int = 10**5
    max_irr: int = 10**6

    def __post_init__(self):
        if min(self.max_alphabet, self.max_rules, self.max_irr) <= 0:
            raise InputError("budgets must be positive")


@dataclass(frozen=True, eq=True)
class SynthesisTrace:
    """One node of the recursion tree.

    Trivial nodes only carry ``alphabet``, ``morphism`` and ``result``.
    Recursive nodes also carry the pivot, the base sub-trace (producing
    ``R`` over ``B``), the code alphabet ``K``, the local divisor, the
    induced morphism over ``K``, the code sub-trace (producing ``T``) and
    the lifted system ``T̂`` over ``A``.
    """

    alphabet: Alphabet
    morphism: Morphism
    case: str  # "trivial" | "recursive"
    result: RewriteSystem
    pivot: str | None = None
    base_trace: SynthesisTrace | None = None
    code: Alphabet | None = None
    local: LocalDivisor | None = None
    induced: Morphism | None = None
    code_trace: SynthesisTrace | None = None
    lifted: RewriteSystem | None = None

    @property
    def recursive(self) -> bool:
        return self.case == "recursive"

    @property
    def system(self) -> RewriteSystem:
        return self.result

    def levels(self, path: str = ""):
        """Yield ``(path, node)`` for every node, pre-order."""
        yield path, self
        if self.recursive:
            yield from self.base_trace.levels(_join(path, "base"))
            yield from self.code_trace.levels(_join(path, "code"))

    def sizes(self) -> list[dict]:
        out = []
        for path, node in self.levels():
            row = {"path": path or "top", "case": node.case, "alphabet": len(node.alphabet),
                   "monoid": len(node.morphism.target), "rules": len(node.result)}
            if node.recursive:
                row.update(pivot=node.pivot, irr_base=len(node.code), local=len(node.local.monoid))
            out.append(row)
        return out


def _join(path, step):
    return f"{path}.{step}" if path else step


PivotPolicy = Mapping[str, Sequence[str]]


def choose_pivot(phi: Morphism, order: Sequence[str] | None = None) -> str:
    """First letter (in ``order`` or alphabet order) whose image is not neutral."""
    neutral = phi.target.neutral
    if phi.is_trivial:
        raise InputError("morphism has trivial image; no pivot exists")
    if order is None:
        return next(a for a, x in zip(phi.source.letters, phi.images) if x != neutral)
    for a in order:
        if a in phi.source and phi.image(a) != neutral:
            return a
    raise InputError(f"no letter of the pivot order {list(order)} has a non-neutral image")


def induced_code_morphism(R: RewriteSystem, c: str, phi: Morphism,
                          irr: Sequence[Word] | None = None, local: LocalDivisor | None = None):
    """``K = IRR(R)·c`` as an alphabet and ``ψ(ûc) = c·phi(û)·c`` into ``M_c``.

    ``R`` is over ``B = A - {c}``; ``phi`` over ``A``. Returns ``(K, ψ, M_c)``.
    """
    A = phi.source
    if irr is None:
        res = irreducibles(R)
        if not res.finite:
            raise InputError(f"IRR(R) is {res.status}")
        irr = res.words
    cw = A.word((c,))
    K = derive_code_alphabet(A, [u.over(A) + cw for u in irr])
    M = phi.target
    pc = phi.image(c)
    if local is None:
        local = local_divisor(M, pc)
    images = []
    for u in irr:
        m = M.mul(M.mul(pc, evaluate(phi, u.over(A))), pc)
        images.append(local.local_index(m))
    return K, Morphism(K, local.monoid, images), local


def lift_system(T: RewriteSystem, c: str) -> RewriteSystem:
    """``{c·l -> c·r}`` over the base of ``T``'s code alphabet."""
    K = T.alphabet
    if K.base is None:
        raise InputError("T must be over a code alphabet")
    A = K.base
    cw = A.word((c,))
    rules = [Rule(cw + expand(r.lhs, A), cw + expand(r.rhs, A)) for r in T.rules]
    return RewriteSystem(A, rules)


def _dedupe(rules):
    seen, out = set(), []
    for r in rules:
        key = (r.lhs.letters, r.rhs.letters)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def synthesize(phi: Morphism, pivots: PivotPolicy | None = None,
               budgets: Budgets = Budgets()) -> SynthesisTrace:
    """Run the recursive construction; ``pivots`` maps recursion paths to letter orders.

    Paths: ``""`` is the top level, ``"base"`` / ``"code"`` its two children,
    ``"code.base"`` and so on below. Unlisted paths use alphabet order.
    """
    rep = is_aperiodic(phi.target)
    if not rep:
        w = phi.target.elements[rep.witness]
        raise NotAperiodicError(f"target monoid is not aperiodic (witness element {w!r})", w)
    return _synth(phi, pivots or {}, budgets, "")


def _synth(phi: Morphism, pivots, budgets: Budgets, path: str) -> SynthesisTrace:
    A = phi.source
    where = path or "top"
    if len(A) > budgets.max_alphabet:
        raise BudgetExceeded(f"alphabet of size {len(A)} at {where} exceeds {budgets.max_alphabet}",
                             path)
    if phi.is_trivial:
        S = RewriteSystem(A, [Rule(A.word((a,)), A.empty) for a in A.letters])
        return SynthesisTrace(A, phi, "trivial", S)
    c = choose_pivot(phi, pivots.get(path))
    B = A.restrict([a for a in A.letters if a != c])
    base = _synth(phi.restrict(B), pivots, budgets, _join(path, "base"))
    R = base.result
    irr = irreducibles(R, budgets.max_irr)
    if irr.status == "budget_exceeded":
        raise BudgetExceeded(f"IRR(R) has {irr.count} words at {where}", path)
    if not irr.finite:
        raise InputError(f"IRR(R) is infinite at {where}; base recursion failed")
    if len(irr.words) > budgets.max_alphabet:
        raise BudgetExceeded(f"code alphabet of size {len(irr.words)} at {where} exceeds "
                             f"{budgets.max_alphabet}", path)
    K, psi, local = induced_code_morphism(R, c, phi, irr.words)
    code = _synth(psi, pivots, budgets, _join(path, "code"))
    lifted = lift_system(code.result, c)
    rules = _dedupe([Rule(r.lhs.over(A), r.rhs.over(A)) for r in R.rules] + list(lifted.rules))
    if len(rules) > budgets.max_rules:
        raise BudgetExceeded(f"{len(rules)} rules at {where} exceed {budgets.max_rules}", path)
    S = RewriteSystem(A, rules)
    return SynthesisTrace(A, phi, "recursive", S, c, base, K, local, psi, code, lifted)


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: dict[str, Check] = field(default_factory=dict)
    irreducible_count: int | None = None
    longest_irreducible: Word | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def __bool__(self):
        return self.ok

    def failures(self) -> list[str]:
        return [f"{k}: {c.detail}" for k, c in self.checks.items() if not c.passed]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": {k: {"passed": c.passed, "detail": c.detail} for k, c in self.checks.items()},
            "irreducible_count": self.irreducible_count,
            "longest_irreducible": None if self.longest_irreducible is None
            else str(self.longest_irreducible),
        }


def _bounded_words(A: Alphabet, max_length: int, max_words: int | None):
    if max_words is not None and len(A) > 1:
        total, n = 1, 0
        while n < max_length and total + len(A) ** (n + 1) <= max_words:
            n += 1
            total += len(A) ** n
        max_length = n
    return all_words(A, max_length)


def verify_system(S: RewriteSystem, phi: Morphism, max_length: int = 8,
                  max_words: int | None = None, irr_budget: int = 10**6) -> VerificationReport:
    """Subword reduction, confluence, rule compatibility, finite aperiodic
    quotient, and refinement ``phi(w) = phi(nf(w))`` on all short words."""
    rep = VerificationReport()
    cls = classify_system(S)
    w = cls["subword_witness"]
    rep.checks["subword_reducing"] = Check(cls["subword_reducing"],
                                           "" if w is None else f"witness rule {w}")
    if not cls["length_reducing"]:
        rep.checks["confluent"] = Check(False, f"not length-reducing: {cls['length_witness']}")
        return rep
    conf = is_confluent(S)
    if conf:
        rep.checks["confluent"] = Check(True, f"{conf.pairs_checked} critical pairs joinable")
    else:
        a, b = conf.normal_forms
        rep.checks["confluent"] = Check(
            False, f"{conf.counterexample.overlap}: normal forms {a} != {b}")
    bad = [r for r in S.rules if evaluate(phi, r.lhs) != evaluate(phi, r.rhs)]
    rep.checks["rule_compatibility"] = Check(not bad, "" if not bad else f"phi differs on {bad[0]}")
    irr = irreducibles(S, irr_budget)
    if irr.finite and conf:
        M, _ = quotient(S, irr_budget)
        ap = is_aperiodic(M)
        rep.irreducible_count = irr.count
        rep.longest_irreducible = irr.words[-1] if irr.words else None
        rep.checks["finite_aperiodic_quotient"] = Check(
            bool(ap), f"|A*/S| = {len(M)}" + ("" if ap else ", not aperiodic"))
    elif irr.finite:
        rep.irreducible_count = irr.count
        rep.checks["finite_aperiodic_quotient"] = Check(False, "quotient undefined (not confluent)")
    else:
        rep.checks["finite_aperiodic_quotient"] = Check(False, f"IRR(S) is {irr.status}")
    mismatch = None
    for u in _bounded_words(S.alphabet, max_length, max_words):
        if evaluate(phi, u) != evaluate(phi, normal_form(u, S)):
            mismatch = u
            break
    rep.checks["refinement"] = Check(mismatch is None, "" if mismatch is None
                                     else f"phi(w) != phi(nf(w)) for w = {mismatch}")
    return rep


def verify_synthesis(trace: SynthesisTrace, max_length: int = 8, deep: bool = False,
                     max_words: int | None = None) -> VerificationReport:
    """All system-level checks plus the structural facts of a recursive step.

    With ``deep=True`` every node of the recursion tree is verified; word
    enumeration at derived levels is capped by ``max_words`` (default 4096).
    """
    rep = verify_system(trace.result, trace.morphism, max_length, max_words)
    if trace.recursive:
        _structural_checks(trace, rep)
    if deep:
        for path, node in trace.levels():
            if not path:
                continue
            sub = verify_system(node.result, node.morphism, max_length,
                                max_words if max_words is not None else 4096)
            if node.recursive:
                _structural_checks(node, sub)
            for k, c in sub.checks.items():
                rep.checks[f"{path}/{k}"] = c
    return rep


def _structural_checks(trace: SynthesisTrace, rep: VerificationReport):
    A, c = trace.alphabet, trace.pivot
    R = trace.base_trace.result
    r_lhs = [r.lhs.letters for r in R.rules]
    t_lhs = [r.lhs.letters for r in trace.lifted.rules]
    clash = None
    for x in r_lhs:
        for y in t_lhs:
            if _overlap_or_contain(x, y):
                clash = (x, y)
                break
        if clash:
            break
    rep.checks["no_cross_overlap"] = Check(
        clash is None, "" if clash is None else f"lhs {''.join(clash[0])} meets {''.join(clash[1])}")

    phi, psi, K = trace.morphism, trace.induced, trace.code
    M = phi.target
    bad = None
    cw = A.word((c,))
    for k in K.letters:
        lhs = trace.local.inclusion[psi.image(k)]
        rhs = evaluate(phi, cw + K.expansion(k))
        if lhs != rhs:
            bad = k
            break
    rep.checks["psi_well_defined"] = Check(
        bad is None, "" if bad is None else f"psi({K.expansion(bad)}) disagrees with phi")

    irr = irreducibles(trace.result)
    if irr.finite:
        irr_r = {w.letters for w in irreducibles(R)}
        offender = None
        for w in irr:
            segs = _split_at(w.letters, c)
            if any(s not in irr_r for s in segs):
                offender = w
                break
            if len(segs) > 1:
                middle = Word(A, w.letters[len(segs[0]):len(w) - len(segs[-1])])
                if decode_over_code(middle[1:], K) is None:
                    offender = w
                    break
        rep.checks["irreducible_shape"] = Check(
            offender is None, "" if offender is None else f"{offender} not of shape û0 c û1 ... c ûm")


def _split_at(letters, c):
    segs, cur = [], []
    for a in letters:
        if a == c:
            segs.append(tuple(cur))
            cur = []
        else:
            cur.append(a)
    segs.append(tuple(cur))
    return segs


def _overlap_or_contain(x, y):
    for k in range(1, min(len(x), len(y))):
        if x[-k:] == y[:k] or y[-k:] == x[:k]:
            return True
    short, long_ = (x, y) if len(x) <= len(y) else (y, x)
    return any(long_[i:i + len(short)] == short for i in range(len(long_) - len(short) + 1))


def member(L: Morphism, trace: SynthesisTrace, w: Word) -> bool:
    """``w ∈ L`` decided by rewriting ``w`` to its normal form first."""
    if L.accepting is None:
        raise InputError("language morphism needs an accepting set")
    if w.alphabet != trace.alphabet:
        raise InputError("word not over the trace's alphabet")
    return evaluate(L, normal_form(w, trace.result)) in L.accepting
