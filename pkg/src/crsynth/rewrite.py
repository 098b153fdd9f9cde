"""Semi-Thue systems: normal forms, critical pairs, irreducible words, quotients."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import BudgetExceeded, InputError
from .words import Alphabet, Word, format_word, is_subword

DEFAULT_IRR_BUDGET = 10**6


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word

    def __post_init__(self):
        if self.lhs.alphabet != self.rhs.alphabet:
            raise InputError("rule sides over different alphabets")
        if self.lhs.letters == self.rhs.letters:
            raise InputError(f"trivial rule {self}")

    def __str__(self):
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


@dataclass(frozen=True)
class ReductionStep:
    position: int
    rule_index: int
    word: Word


@dataclass(frozen=True)
class ReductionTrace:
    start: Word
    steps: tuple[ReductionStep, ...]

    def __len__(self):
        return len(self.steps)


class RewriteSystem:
    """A finite ordered list of rules over an alphabet.

    Rule order fixes tie-breaking in :func:`normal_form`. The trie used for
    matching is built lazily and cached.
    """

    def __init__(self, alphabet: Alphabet, rules: Iterable[Rule] = ()):
        self.alphabet = alphabet
        rules = tuple(rules)
        seen = set()
        for r in rules:
            if r.lhs.alphabet != alphabet:
                raise InputError(f"rule {r} not over the system's alphabet")
            key = (r.lhs.letters, r.rhs.letters)
            if key in seen:
                raise InputError(f"duplicate rule {r}")
            seen.add(key)
        self.rules = rules

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Iterable[tuple]) -> RewriteSystem:
        """Build from ``(lhs, rhs)`` pairs given as strings or token sequences."""
        return cls(alphabet, [Rule(alphabet.word(l), alphabet.word(r)) for l, r in pairs])

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __eq__(self, other):
        if not isinstance(other, RewriteSystem):
            return NotImplemented
        return self.alphabet == other.alphabet and self.rules == other.rules

    def __hash__(self):
        return hash(self.rules)

    def __repr__(self):
        return "RewriteSystem({" + ", ".join(map(str, self.rules)) + "})"

    def rule_set(self) -> set[tuple[tuple[str, ...], tuple[str, ...]]]:
        return {(r.lhs.letters, r.rhs.letters) for r in self.rules}

    @cached_property
    def is_length_reducing(self) -> bool:
        return all(len(r.lhs) > len(r.rhs) for r in self.rules)

    @cached_property
    def _trie(self):
        sigma = len(self.alphabet)
        children = [dict()]
        term = [-1]
        for k, r in enumerate(self.rules):
            node = 0
            for a in r.lhs.codes():
                nxt = children[node].get(a)
                if nxt is None:
                    nxt = len(children)
                    children[node][a] = nxt
                    children.append({})
                    term.append(-1)
                node = nxt
            if term[node] < 0:
                term[node] = k
        trans = [-1] * (len(children) * sigma)
        for node, ch in enumerate(children):
            for a, t in ch.items():
                trans[node * sigma + a] = t
        return children, trans, term

    @cached_property
    def _rewriter(self):
        _, trans, term = self._trie
        return kernels.make_rewriter(
            trans, term, len(self.alphabet),
            [len(r.lhs) for r in self.rules], [r.rhs.codes() for r in self.rules])

    def reduce_codes(self, codes: Sequence[int]) -> tuple[int, ...]:
        """Normal form on integer letter codes (no checks, no trace)."""
        return self._rewriter.reduce(codes, False)[0]

    def is_irreducible(self, w: Word) -> bool:
        _, trans, term = self._trie
        sigma = len(self.alphabet)
        codes = w.codes()
        if term[0] >= 0:
            return False
        for i in range(len(codes)):
            node = 0
            for a in codes[i:]:
                node = trans[node * sigma + a]
                if node < 0:
                    break
                if term[node] >= 0:
                    return False
        return True


def classify_system(S: RewriteSystem) -> dict:
    """Length- and subword-reduction flags, with the first failing rule as witness."""
    length_witness = next((r for r in S.rules if len(r.lhs) <= len(r.rhs)), None)
    # lhs != rhs is a Rule invariant, so a subword rhs is strictly shorter
    subword_witness = next((r for r in S.rules if not is_subword(r.rhs, r.lhs)), None)
    return {
        "length_reducing": length_witness is None,
        "subword_reducing": subword_witness is None,
        "length_witness": length_witness,
        "subword_witness": subword_witness,
    }


def _require_length_reducing(S: RewriteSystem):
    if not S.is_length_reducing:
        bad = next(r for r in S.rules if len(r.lhs) <= len(r.rhs))
        raise InputError(f"system is not length-reducing (rule {bad}); termination not guaranteed")


def normal_form(w: Word, S: RewriteSystem, trace: bool = False):
    """The irreducible descendant of ``w``.

    Strategy: rewrite at the leftmost position where some lhs starts; among
    the rules matching there take the longest lhs, then the lowest index.
    With ``trace=True`` returns ``(word, ReductionTrace)``.
    """
    if w.alphabet != S.alphabet:
        raise InputError("word and system over different alphabets")
    _require_length_reducing(S)
    codes, steps = S._rewriter.reduce(w.codes(), trace)
    letters = S.alphabet.letters
    result = Word(S.alphabet, [letters[a] for a in codes])
    if not trace:
        return result
    recorded = []
    cur = list(w.letters)
    for pos, k in steps:
        rule = S.rules[k]
        cur[pos:pos + len(rule.lhs)] = rule.rhs.letters
        recorded.append(ReductionStep(pos, k, Word(S.alphabet, cur)))
    return result, ReductionTrace(w, tuple(recorded))


def one_step_reducts(w: Word, S: RewriteSystem) -> list[tuple[int, int, Word]]:
    """Every ``(position, rule index, result)`` of a single rewriting step."""
    out = []
    letters = w.letters
    for k, r in enumerate(S.rules):
        l = r.lhs.letters
        n = len(l)
        for i in range(len(letters) - n + 1):
            if letters[i:i + n] == l:
                out.append((i, k, Word(w.alphabet, letters[:i] + r.rhs.letters + letters[i + n:])))
    return out


@dataclass(frozen=True)
class CriticalPair:
    left: Word
    right: Word
    superposition: Word
    rules: tuple[int, int]
    kind: str  # "overlap" or "inclusion"
    offset: int

    @property
    def overlap(self) -> str:
        i, j = self.rules
        if self.kind == "overlap":
            return f"rules {i},{j} overlap in {format_word(self.superposition)} at offset {self.offset}"
        return f"lhs of rule {j} inside lhs of rule {i} at offset {self.offset}"


def critical_pairs(S: RewriteSystem) -> list[CriticalPair]:
    """All critical pairs from suffix/prefix overlaps and lhs inclusions."""
    alpha = S.alphabet
    pairs = []
    rules = S.rules
    for i, ri in enumerate(rules):
        li = ri.lhs.letters
        for j, rj in enumerate(rules):
            lj = rj.lhs.letters
            # proper suffix of li == proper prefix of lj
            for k in range(1, min(len(li), len(lj))):
                if li[len(li) - k:] == lj[:k]:
                    sup = li + lj[k:]
                    pairs.append(CriticalPair(
                        Word(alpha, ri.rhs.letters + lj[k:]),
                        Word(alpha, li[:len(li) - k] + rj.rhs.letters),
                        Word(alpha, sup), (i, j), "overlap", len(li) - k))
            if i != j and len(lj) <= len(li):
                for p in range(len(li) - len(lj) + 1):
                    if li[p:p + len(lj)] == lj:
                        pairs.append(CriticalPair(
                            Word(alpha, ri.rhs.letters),
                            Word(alpha, li[:p] + rj.rhs.letters + li[p + len(lj):]),
                            Word(alpha, li), (i, j), "inclusion", p))
    return pairs


@dataclass(frozen=True)
class ConfluenceReport:
    confluent: bool
    pairs_checked: int
    counterexample: CriticalPair | None = None
    normal_forms: tuple[Word, Word] | None = None

    def __bool__(self):
        return self.confluent


def is_confluent(S: RewriteSystem) -> ConfluenceReport:
    """Decide confluence by joinability of all critical pairs.

    Length reduction gives termination, so local confluence suffices.
    """
    _require_length_reducing(S)
    pairs = critical_pairs(S)
    for cp in pairs:
        a = S.reduce_codes(cp.left.codes())
        b = S.reduce_codes(cp.right.codes())
        if a != b:
            letters = S.alphabet.letters
            nfs = (Word(S.alphabet, [letters[x] for x in a]),
                   Word(S.alphabet, [letters[x] for x in b]))
            return ConfluenceReport(False, len(pairs), cp, nfs)
    return ConfluenceReport(True, len(pairs))


# -- irreducible words -------------------------------------------------------

@dataclass(frozen=True)
class Irreducibles:
    """Outcome of enumerating IRR(S)."""

    status: str  # "finite" | "infinite" | "budget_exceeded"
    words: tuple[Word, ...] | None = None
    count: int | None = None

    @property
    def finite(self) -> bool:
        return self.status == "finite"

    def __iter__(self):
        if self.words is None:
            raise InputError(f"irreducible set is {self.status}")
        return iter(self.words)

    def __len__(self):
        if self.count is None:
            raise InputError(f"irreducible set is {self.status}")
        return self.count


def avoidance_automaton(S: RewriteSystem):
    """Dictionary-matching automaton restricted to states that avoid every lhs.

    Returns ``(delta, sigma, states)``: ``delta[s * sigma + a]`` is the live
    successor or -1, states renumbered so that the root is 0; ``states`` is
    the number of live states (0 when the empty word is a lhs).
    """
    children, _, term = S._trie
    sigma = len(S.alphabet)
    n = len(children)
    fail = [0] * n
    dead = [t >= 0 for t in term]
    goto = [[0] * sigma for _ in range(n)]
    order = []
    queue = deque()
    for a in range(sigma):
        t = children[0].get(a)
        if t is None:
            goto[0][a] = 0
        else:
            goto[0][a] = t
            fail[t] = 0
            queue.append(t)
    while queue:
        s = queue.popleft()
        order.append(s)
        dead[s] = dead[s] or dead[fail[s]]
        for a in range(sigma):
            t = children[s].get(a)
            if t is None:
                goto[s][a] = goto[fail[s]][a]
            else:
                goto[s][a] = t
                fail[t] = goto[fail[s]][a]
                queue.append(t)
    if dead[0]:
        return [], sigma, 0
    # live states reachable from the root, numbered in BFS order
    number = {0: 0}
    bfs = deque([0])
    while bfs:
        s = bfs.popleft()
        for a in range(sigma):
            t = goto[s][a]
            if not dead[t] and t not in number:
                number[t] = len(number)
                bfs.append(t)
    delta = [-1] * (len(number) * sigma)
    for s, i in number.items():
        for a in range(sigma):
            t = goto[s][a]
            if not dead[t]:
                delta[i * sigma + a] = number[t]
    return delta, sigma, len(number)


def _count_paths(delta, sigma, nstates):
    """Number of paths from state 0, or ``None`` if a cycle is reachable."""
    indeg = [0] * nstates
    for t in delta:
        if t >= 0:
            indeg[t] += 1
    topo = [s for s in range(nstates) if indeg[s] == 0]
    k = 0
    while k < len(topo):
        s = topo[k]
        k += 1
        for a in range(sigma):
            t = delta[s * sigma + a]
            if t >= 0:
                indeg[t] -= 1
                if indeg[t] == 0:
                    topo.append(t)
    if len(topo) < nstates:
        return None  # every live state is reachable, so any cycle is reachable
    count = [1] * nstates
    for s in reversed(topo):
        base = s * sigma
        count[s] = 1 + sum(count[delta[base + a]] for a in range(sigma) if delta[base + a] >= 0)
    return count[0]


def irreducibles(S: RewriteSystem, budget: int = DEFAULT_IRR_BUDGET) -> Irreducibles:
    """IRR(S): finite iff the avoidance automaton is acyclic; shortlex output."""
    delta, sigma, nstates = avoidance_automaton(S)
    if nstates == 0:
        return Irreducibles("finite", (), 0)
    total = _count_paths(delta, sigma, nstates)
    if total is None:
        return Irreducibles("infinite")
    if total > budget:
        return Irreducibles("budget_exceeded", None, total)
    letters = S.alphabet.letters
    alpha = S.alphabet
    words = tuple(Word(alpha, [letters[a] for a in p])
                  for p in kernels.enumerate_paths(delta, sigma, 0))
    return Irreducibles("finite", words, total)


def quotient(S: RewriteSystem, budget: int = DEFAULT_IRR_BUDGET):
    """The finite monoid ``A*/S`` on IRR(S) and the canonical morphism onto it.

    Products are computed from the right action of letters on normal forms,
    which is well defined because ``S`` is confluent.
    """
    from .monoid import FiniteMonoid, Morphism

    _require_length_reducing(S)
    irr = irreducibles(S, budget)
    if irr.status == "infinite":
        raise InputError("IRR(S) is infinite; the quotient is not a finite monoid")
    if irr.status == "budget_exceeded":
        raise BudgetExceeded(f"IRR(S) has {irr.count} elements, over budget {budget}")
    conf = is_confluent(S)
    if not conf:
        raise InputError(f"system is not confluent: {conf.counterexample.overlap}")
    words = irr.words
    index = {w.codes(): i for i, w in enumerate(words)}
    n = len(words)
    sigma = len(S.alphabet)
    right = np.empty((n, max(sigma, 1)), dtype=np.int64)
    for i, w in enumerate(words):
        c = w.codes()
        for a in range(sigma):
            right[i, a] = index[S.reduce_codes(c + (a,))]
    table = np.empty((n, n), dtype=np.int64)
    cur_all = np.arange(n, dtype=np.int64)
    for j, w in enumerate(words):
        cur = cur_all
        for a in w.codes():
            cur = right[cur, a]
        table[:, j] = cur
    names = [format_word(w) for w in words]
    M = FiniteMonoid(names, index[()], table, representatives=words)
    images = [index[S.reduce_codes((a,))] for a in range(sigma)]
    return M, Morphism(S.alphabet, M, images)
