"""Finite monoids by multiplication table, morphisms from free monoids,
local divisors, and transition monoids of complete DFAs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import InputError
from .words import Alphabet, Word, format_word

EXHAUSTIVE_ASSOC_LIMIT = 64
ASSOC_SAMPLES = 10_000


class FiniteMonoid:
    """Elements ``0..n-1`` with display names, a neutral index and a table.

    ``table[x, y]`` is the index of ``x·y``. Construction checks the neutral
    element and associativity (exhaustively up to 64 elements, otherwise on
    ``ASSOC_SAMPLES`` seeded random triples).
    """

    def __init__(self, elements: Sequence[str], neutral: int, table,
                 representatives: Sequence[Word] | None = None, *, check: bool = True,
                 seed: int = 0):
        self.elements = tuple(elements)
        self.neutral = int(neutral)
        table = np.array(table, dtype=np.int64)
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise InputError("element names must be distinct")
        if n == 0:
            raise InputError("a monoid has at least one element")
        if table.shape != (n, n):
            raise InputError(f"table must be {n}x{n}, got {table.shape}")
        if table.min() < 0 or table.max() >= n:
            raise InputError("table entries out of range")
        if not 0 <= self.neutral < n:
            raise InputError("neutral index out of range")
        table.setflags(write=False)
        self.table = table
        self.representatives = tuple(representatives) if representatives is not None else None
        self._names = {name: i for i, name in enumerate(self.elements)}
        if check:
            ident = np.arange(n)
            if not (np.array_equal(table[self.neutral], ident)
                    and np.array_equal(table[:, self.neutral], ident)):
                raise InputError(f"{self.elements[self.neutral]!r} is not a two-sided identity")
            bad = associativity_violation(self, seed=seed)
            if bad is not None:
                x, y, z = (self.elements[i] for i in bad)
                raise InputError(f"table not associative at ({x}, {y}, {z})")

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return (self.elements == other.elements and self.neutral == other.neutral
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.elements, self.neutral))

    def __repr__(self):
        return f"FiniteMonoid({list(self.elements)})"

    def index(self, name: str) -> int:
        try:
            return self._names[name]
        except KeyError:
            raise InputError(f"no element named {name!r}") from None

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def product(self, xs: Iterable[int]) -> int:
        acc = self.neutral
        t = self.table
        for x in xs:
            acc = t[acc, x]
        return int(acc)

    def power(self, x: int, n: int) -> int:
        acc = self.neutral
        for _ in range(n):
            acc = self.table[acc, x]
        return int(acc)

    def format_table(self) -> str:
        width = max(len(e) for e in self.elements)
        rows = [" " * width + " | " + " ".join(e.rjust(width) for e in self.elements)]
        for i, e in enumerate(self.elements):
            rows.append(e.rjust(width) + " | " + " ".join(
                self.elements[j].rjust(width) for j in self.table[i]))
        return "\n".join(rows)


def associativity_violation(M: FiniteMonoid, seed: int = 0):
    n = len(M)
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        return kernels.find_nonassociative(M.table)
    rng = np.random.default_rng(seed)
    x, y, z = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
    t = M.table
    bad = np.nonzero(t[t[x, y], z] != t[x, t[y, z]])[0]
    if len(bad):
        k = bad[0]
        return int(x[k]), int(y[k]), int(z[k])
    return None


@dataclass(frozen=True)
class Morphism:
    """A letter-to-element map from ``source*`` into a finite monoid."""

    source: Alphabet
    target: FiniteMonoid
    images: tuple[int, ...]
    accepting: frozenset[int] | None = None

    def __init__(self, source, target, images, accepting=None):
        images = tuple(int(x) for x in images)
        if len(images) != len(source):
            raise InputError("every letter needs an image")
        if any(not 0 <= x < len(target) for x in images):
            raise InputError("letter image out of range")
        if accepting is not None:
            accepting = frozenset(int(x) for x in accepting)
            if any(not 0 <= x < len(target) for x in accepting):
                raise InputError("accepting set not inside the target monoid")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "accepting", accepting)

    def image(self, letter: str) -> int:
        return self.images[self.source.index(letter)]

    def evaluate_codes(self, codes: Iterable[int]) -> int:
        t = self.target.table
        im = self.images
        acc = self.target.neutral
        for a in codes:
            acc = t[acc, im[a]]
        return int(acc)

    @property
    def is_trivial(self) -> bool:
        return all(x == self.target.neutral for x in self.images)

    def restrict(self, sub: Alphabet) -> Morphism:
        return Morphism(sub, self.target, [self.image(a) for a in sub.letters], self.accepting)

    def accepts(self, w: Word) -> bool:
        if self.accepting is None:
            raise InputError("morphism has no accepting set")
        return evaluate(self, w) in self.accepting


def evaluate(phi: Morphism, w: Word) -> int:
    if w.alphabet != phi.source:
        raise InputError("word not over the morphism's source alphabet")
    return phi.evaluate_codes(w.codes())


@dataclass(frozen=True)
class AperiodicityReport:
    aperiodic: bool
    exponent: int | None = None   # least n with x^n = x^(n+1) for all x
    witness: int | None = None    # an element in a non-trivial cyclic group

    def __bool__(self):
        return self.aperiodic


def is_aperiodic(M: FiniteMonoid) -> AperiodicityReport:
    n = len(M)
    exponent = 0
    for x in range(n):
        powers = [M.neutral]
        for _ in range(n + 1):
            powers.append(M.mul(powers[-1], x))
        if powers[n] != powers[n + 1]:
            return AperiodicityReport(False, witness=x)
        k = next(i for i in range(n + 1) if powers[i] == powers[i + 1])
        exponent = max(exponent, k)
    return AperiodicityReport(True, exponent=exponent)


def units(M: FiniteMonoid) -> frozenset[int]:
    t = M.table
    e = M.neutral
    return frozenset(x for x in range(len(M))
                     if any(t[x, y] == e and t[y, x] == e for y in range(len(M))))


def idempotents(M: FiniteMonoid) -> frozenset[int]:
    return frozenset(x for x in range(len(M)) if M.table[x, x] == x)


@dataclass(frozen=True)
class LocalDivisor:
    """``(cM ∩ Mc, ∘)`` as a standalone monoid plus its inclusion into ``M``.

    ``inclusion[i]`` is the index in ``M`` of local element ``i``; element
    names are inherited from ``M``.
    """

    monoid: FiniteMonoid
    inclusion: tuple[int, ...]
    parent: FiniteMonoid
    pivot: int

    def local_index(self, m: int) -> int:
        try:
            return self.inclusion.index(m)
        except ValueError:
            raise InputError(f"{self.parent.elements[m]!r} is not in cM ∩ Mc") from None


def local_divisor(M: FiniteMonoid, c: int) -> LocalDivisor:
    """The local divisor of ``M`` at ``c``: ``xc ∘ cy = xcy`` with neutral ``c``."""
    t = M.table
    n = len(M)
    left = set(int(v) for v in t[c, :])    # cM
    right = set(int(v) for v in t[:, c])   # Mc
    carrier = sorted(left & right)
    # beta = c * y_beta; then alpha ∘ beta = alpha * y_beta
    y_for = {}
    for y in range(n):
        y_for.setdefault(int(t[c, y]), y)
    pos = {m: i for i, m in enumerate(carrier)}
    table = np.empty((len(carrier), len(carrier)), dtype=np.int64)
    for i, a in enumerate(carrier):
        for j, b in enumerate(carrier):
            table[i, j] = pos[int(t[a, y_for[b]])]
    names = [M.elements[m] for m in carrier]
    reps = [M.representatives[m] for m in carrier] if M.representatives else None
    local = FiniteMonoid(names, pos[c], table, reps)
    return LocalDivisor(local, tuple(carrier), M, c)


def transition_monoid(dfa):
    """Monoid of state transformations of a complete DFA and the letter morphism.

    Elements are discovered breadth-first in shortlex order, so each is named
    by its shortlex-least representative; a zero element of a non-trivial
    monoid is named ``"0"``. The accepting set contains the transformations
    mapping the initial state into a final state.
    """
    alpha = dfa.alphabet
    nq = dfa.states
    delta = dfa.delta
    for q in range(nq):
        if len(delta[q]) != len(alpha) or any(t is None or not 0 <= t < nq for t in delta[q]):
            raise InputError(f"DFA is not complete at state {q}")
    letter_maps = [tuple(delta[q][a] for q in range(nq)) for a in range(len(alpha))]
    identity = tuple(range(nq))
    found = {identity: 0}
    elems = [identity]
    reps = [()]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        f = elems[i]
        for a, g in enumerate(letter_maps):
            h = tuple(g[s] for s in f)  # apply f, then the letter
            if h not in found:
                found[h] = len(elems)
                elems.append(h)
                reps.append(reps[i] + (a,))
                queue.append(len(elems) - 1)
    n = len(elems)
    arr = np.array(elems, dtype=np.int64).reshape(n, nq)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        # row i: (f_i then f_j) for all j, i.e. f_j[f_i[q]]
        composed = arr[:, arr[i]]
        for j in range(n):
            table[i, j] = found[tuple(composed[j].tolist())]
    words = [Word(alpha, [alpha.letters[a] for a in r]) for r in reps]
    names = [format_word(w) for w in words]
    if n > 1:
        for z in range(n):
            if all(table[z, x] == z and table[x, z] == z for x in range(n)):
                names[z] = "0"
                break
    M = FiniteMonoid(names, 0, table, words)
    images = [found[g] for g in letter_maps]
    accepting = [i for i, f in enumerate(elems) if f[dfa.initial] in dfa.finals]
    return M, Morphism(alpha, M, images, accepting)
