"""Expressions to minimal complete DFAs and syntactic morphisms.

Grammar (lowest to highest precedence)::

    union   := inter ('|' inter)*
    inter   := concat ('&' concat)*
    concat  := unary+
    unary   := '~' unary | postfix
    postfix := atom ('*' | '+' | '?')*
    atom    := letter | '1' | '0' | '(' union ')'

``1`` denotes the empty word, ``0`` the empty language and ``~`` the
complement with respect to ``A*``. Whitespace is ignored.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Union

from .errors import InputError
from .monoid import AperiodicityReport, Morphism, is_aperiodic, transition_monoid
from .words import Alphabet, Word


class ExpressionSyntaxError(InputError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class EmptySet:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Letter:
    token: str


@dataclass(frozen=True)
class Concat:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Union_:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Intersection:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Complement:
    inner: "Expr"


@dataclass(frozen=True)
class Star:
    inner: "Expr"


@dataclass(frozen=True)
class Plus:
    inner: "Expr"


@dataclass(frozen=True)
class Optional_:
    inner: "Expr"


Expr = Union[EmptySet, Epsilon, Letter, Concat, Union_, Intersection, Complement, Star, Plus,
             Optional_]


class _Parser:
    def __init__(self, text, alphabet):
        self.toks = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.pos = 0
        self.alphabet = alphabet
        self.end = len(text)

    def peek(self):
        return self.toks[self.pos][1] if self.pos < len(self.toks) else None

    def where(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else self.end

    def take(self):
        ch = self.toks[self.pos][1]
        self.pos += 1
        return ch

    def parse(self):
        e = self.union()
        if self.peek() is not None:
            raise ExpressionSyntaxError(f"unexpected {self.peek()!r}", self.where())
        return e

    def union(self):
        e = self.inter()
        while self.peek() == "|":
            self.take()
            e = Union_(e, self.inter())
        return e

    def inter(self):
        e = self.concat()
        while self.peek() == "&":
            self.take()
            e = Intersection(e, self.concat())
        return e

    def concat(self):
        e = self.unary()
        while self.peek() is not None and self.peek() not in "|&)*+?":
            e = Concat(e, self.unary())
        return e

    def unary(self):
        if self.peek() == "~":
            self.take()
            return Complement(self.unary())
        return self.postfix()

    def postfix(self):
        e = self.atom()
        while self.peek() is not None and self.peek() in "*+?":
            op = self.take()
            e = Star(e) if op == "*" else Plus(e) if op == "+" else Optional_(e)
        return e

    def atom(self):
        ch = self.peek()
        at = self.where()
        if ch is None:
            raise ExpressionSyntaxError("unexpected end of expression", at)
        if ch == "(":
            self.take()
            e = self.union()
            if self.peek() != ")":
                raise ExpressionSyntaxError("expected ')'", self.where())
            self.take()
            return e
        if ch == "1":
            self.take()
            return Epsilon()
        if ch == "0":
            self.take()
            return EmptySet()
        if ch in "|&)*+?~":
            raise ExpressionSyntaxError(f"unexpected {ch!r}", at)
        if ch not in self.alphabet:
            raise ExpressionSyntaxError(f"letter {ch!r} not in alphabet", at)
        self.take()
        return Letter(ch)


def parse_expression(text: str, alphabet: Alphabet) -> Expr:
    if not alphabet.single_char:
        raise InputError("expressions need an alphabet of single-character letters")
    for reserved in "01()|&~*+?":
        if reserved in alphabet:
            raise InputError(f"{reserved!r} is reserved and cannot be a letter")
    return _Parser(text, alphabet).parse()


@dataclass(frozen=True)
class Dfa:
    """Complete DFA: states ``0..states-1``, ``delta[q][a]`` by letter index."""

    alphabet: Alphabet
    states: int
    initial: int
    finals: frozenset[int]
    delta: tuple[tuple[int, ...], ...]

    def run(self, codes) -> int:
        q = self.initial
        d = self.delta
        for a in codes:
            q = d[q][a]
        return q


def dfa_member(D: Dfa, w: Word) -> bool:
    if w.alphabet != D.alphabet:
        raise InputError("word not over the DFA's alphabet")
    return D.run(w.codes()) in D.finals


def _explore(alphabet, start, step, accepting):
    """Build a DFA by exploring hashable states from ``start``."""
    sigma = len(alphabet)
    number = {start: 0}
    order = [start]
    delta = []
    k = 0
    while k < len(order):
        s = order[k]
        k += 1
        row = []
        for a in range(sigma):
            t = step(s, a)
            if t not in number:
                number[t] = len(order)
                order.append(t)
            row.append(number[t])
        delta.append(tuple(row))
    finals = frozenset(i for i, s in enumerate(order) if accepting(s))
    return Dfa(alphabet, len(order), 0, finals, tuple(delta))


def minimize(D: Dfa) -> Dfa:
    """Moore partition refinement on reachable states; BFS-canonical numbering."""
    sigma = len(D.alphabet)
    reach = _explore(D.alphabet, D.initial, lambda q, a: D.delta[q][a], lambda q: q in D.finals)
    n = reach.states
    cls = [1 if q in reach.finals else 0 for q in range(n)]
    while True:
        sig = [(cls[q],) + tuple(cls[reach.delta[q][a]] for a in range(sigma)) for q in range(n)]
        ids = {}
        new = [ids.setdefault(s, len(ids)) for s in sig]
        if len(ids) == len(set(cls)):
            break
        cls = new
    # quotient, then renumber from the initial class
    rep = {}
    for q in range(n):
        rep.setdefault(cls[q], q)
    return _explore(D.alphabet, cls[0], lambda c, a: cls[reach.delta[rep[c]][a]],
                    lambda c: rep[c] in reach.finals)


def _compile(e, alphabet) -> Dfa:
    sigma = len(alphabet)
    if isinstance(e, EmptySet):
        return Dfa(alphabet, 1, 0, frozenset(), (tuple([0] * sigma),))
    if isinstance(e, Epsilon):
        return Dfa(alphabet, 2, 0, frozenset({0}), (tuple([1] * sigma), tuple([1] * sigma)))
    if isinstance(e, Letter):
        k = alphabet.index(e.token)
        row0 = tuple(1 if a == k else 2 for a in range(sigma))
        sink = tuple([2] * sigma)
        return Dfa(alphabet, 3, 0, frozenset({1}), (row0, sink, sink))
    if isinstance(e, (Union_, Intersection)):
        d1, d2 = _compile(e.left, alphabet), _compile(e.right, alphabet)
        if isinstance(e, Union_):
            acc = lambda s: s[0] in d1.finals or s[1] in d2.finals
        else:
            acc = lambda s: s[0] in d1.finals and s[1] in d2.finals
        return minimize(_explore(alphabet, (d1.initial, d2.initial),
                                 lambda s, a: (d1.delta[s[0]][a], d2.delta[s[1]][a]), acc))
    if isinstance(e, Complement):
        d = _compile(e.inner, alphabet)
        return Dfa(alphabet, d.states, d.initial, frozenset(range(d.states)) - d.finals, d.delta)
    if isinstance(e, Concat):
        d1, d2 = _compile(e.left, alphabet), _compile(e.right, alphabet)

        def enter(q1, rest):
            return frozenset(rest | {d2.initial}) if q1 in d1.finals else frozenset(rest)

        def step(s, a):
            q1 = d1.delta[s[0]][a]
            return (q1, enter(q1, {d2.delta[q][a] for q in s[1]}))

        start = (d1.initial, enter(d1.initial, set()))
        return minimize(_explore(alphabet, start, step, lambda s: bool(s[1] & d2.finals)))
    if isinstance(e, (Star, Plus)):
        d = _compile(e.inner, alphabet)

        def close(qs):
            return frozenset(qs | {d.initial}) if qs & d.finals else frozenset(qs)

        def step(s, a):
            return (False, close({d.delta[q][a] for q in s[1]}))

        # the start flag marks the empty prefix, accepted only by the star
        start = (True, frozenset({d.initial}))
        empty_ok = isinstance(e, Star)
        acc = lambda s: (s[0] and empty_ok) or bool(s[1] & d.finals)
        return minimize(_explore(alphabet, start, step, acc))
    if isinstance(e, Optional_):
        return _compile(Union_(e.inner, Epsilon()), alphabet)
    raise TypeError(f"not an expression node: {e!r}")


def compile_dfa(e: Expr, alphabet: Alphabet) -> Dfa:
    """Minimal complete DFA for ``e`` (sink state retained)."""
    return minimize(_compile(e, alphabet))


def compile_regex(text: str, alphabet: Alphabet) -> Dfa:
    return compile_dfa(parse_expression(text, alphabet), alphabet)


def syntactic_morphism(D: Dfa) -> tuple[Morphism, AperiodicityReport]:
    """Transition monoid of the (minimal) DFA with its accepting set."""
    _, phi = transition_monoid(D)
    return phi, is_aperiodic(phi.target)


def distinguishable_pairs_ok(D: Dfa) -> bool:
    """True if no two distinct states of ``D`` are equivalent."""
    n, sigma = D.states, len(D.alphabet)
    dist = [[(p in D.finals) != (q in D.finals) for q in range(n)] for p in range(n)]
    changed = True
    while changed:
        changed = False
        for p in range(n):
            for q in range(p + 1, n):
                if not dist[p][q] and any(dist[D.delta[p][a]][D.delta[q][a]]
                                          or dist[D.delta[q][a]][D.delta[p][a]]
                                          for a in range(sigma)):
                    dist[p][q] = dist[q][p] = True
                    changed = True
    return all(dist[p][q] for p in range(n) for q in range(p + 1, n))
