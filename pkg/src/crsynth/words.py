"""Alphabets, words, and code alphabets whose letters stand for words."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import InputError


class Alphabet:
    """An ordered finite set of letter tokens.

    A *derived* alphabet has a ``base`` alphabet and maps each of its letters
    to a nonempty word over that base (``expansion``). Letter order is the
    order given at construction and drives every tie-break in the package.
    """

    __slots__ = ("letters", "base", "_expansion", "_index", "_hash")

    def __init__(self, letters: Iterable[str], base: Alphabet | None = None,
                 expansion: Sequence[Sequence[str]] | None = None):
        letters = tuple(letters)
        if len(set(letters)) != len(letters):
            raise InputError(f"duplicate letters in alphabet {letters!r}")
        for a in letters:
            if not isinstance(a, str) or not a:
                raise InputError(f"letter tokens must be nonempty strings, got {a!r}")
        if (base is None) != (expansion is None):
            raise InputError("expansion must be given exactly when base is given")
        if base is not None:
            expansion = tuple(tuple(w) for w in expansion)
            if len(expansion) != len(letters):
                raise InputError("one expansion per letter required")
            if len(set(expansion)) != len(expansion):
                raise InputError("expansions must be pairwise distinct")
            for w in expansion:
                if not w:
                    raise InputError("expansions must be nonempty words")
                for t in w:
                    if t not in base:
                        raise InputError(f"expansion letter {t!r} not in base alphabet")
        self.letters = letters
        self.base = base
        self._expansion = expansion
        self._index = {a: i for i, a in enumerate(letters)}
        self._hash = hash((letters, expansion, base))

    # -- basic protocol -----------------------------------------------------
    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, token):
        return token in self._index

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Alphabet):
            return NotImplemented
        return (self._hash == other._hash and self.letters == other.letters
                and self._expansion == other._expansion and self.base == other.base)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.base is None:
            return f"Alphabet({list(self.letters)!r})"
        return f"Alphabet({list(self.letters)!r}, derived)"

    # -- lookups --------------------------------------------------------------
    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise InputError(f"letter {token!r} not in alphabet {list(self.letters)}") from None

    @property
    def is_derived(self) -> bool:
        return self.base is not None

    @property
    def single_char(self) -> bool:
        """True if every token is one character (words print as plain strings)."""
        return all(len(a) == 1 for a in self.letters)

    def expansion(self, token: str) -> Word:
        if self.base is None:
            raise InputError("alphabet has no base")
        return Word(self.base, self._expansion[self.index(token)])

    def word(self, spec: str | Sequence[str] = ()) -> Word:
        """Build a word from a string of single-char tokens or a token sequence."""
        letters = tuple(spec)
        for a in letters:
            if a not in self._index:
                raise InputError(f"letter {a!r} not in alphabet {list(self.letters)}")
        return Word(self, letters)

    @property
    def empty(self) -> Word:
        return Word(self, ())

    def restrict(self, letters: Iterable[str]) -> Alphabet:
        """Sub-alphabet keeping ``letters`` (in this alphabet's order)."""
        keep = set(letters)
        for a in keep:
            self.index(a)
        kept = [a for a in self.letters if a in keep]
        if self.base is None:
            return Alphabet(kept)
        return Alphabet(kept, self.base, [self._expansion[self._index[a]] for a in kept])

    def depth(self) -> int:
        d, a = 0, self
        while a.base is not None:
            d, a = d + 1, a.base
        return d

    def bottom(self) -> Alphabet:
        a = self
        while a.base is not None:
            a = a.base
        return a


class Word:
    """An immutable finite sequence of letters of one alphabet."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Sequence[str] = ()):
        self.alphabet = alphabet
        self.letters = tuple(letters)

    def __len__(self):
        return len(self.letters)

    @property
    def length(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.letters[item])
        return self.letters[item]

    def __add__(self, other):
        if isinstance(other, str):
            other = self.alphabet.word((other,))
        if not isinstance(other, Word):
            return NotImplemented
        _check_same(self, other)
        return Word(self.alphabet, self.letters + other.letters)

    def __radd__(self, other):
        if isinstance(other, str):
            return self.alphabet.word((other,)) + self
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self):
        return hash(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def codes(self) -> tuple[int, ...]:
        idx = self.alphabet._index
        return tuple(idx[a] for a in self.letters)

    def shortlex_key(self):
        return (len(self.letters), self.codes())

    def over(self, alphabet: Alphabet) -> Word:
        """The same letter sequence, re-tagged as a word over ``alphabet``."""
        return alphabet.word(self.letters)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def format_word(w: Word, empty: str = "1") -> str:
    """Render a word; derived letters print as their parenthesised expansion."""
    if not w.letters:
        return empty
    alpha = w.alphabet
    if alpha.base is None:
        if alpha.single_char:
            return "".join(w.letters)
        return " ".join(w.letters)
    return "".join("(" + format_word(alpha.expansion(a)) + ")" for a in w.letters)


def _check_same(u: Word, v: Word):
    if u.alphabet != v.alphabet:
        raise InputError("words over different alphabets")


def is_factor(u: Word, v: Word) -> bool:
    _check_same(u, v)
    n, m = len(u), len(v)
    if n == 0:
        return True
    a, b = u.letters, v.letters
    return any(b[i:i + n] == a for i in range(m - n + 1))


def is_subword(u: Word, v: Word) -> bool:
    """Scattered-subsequence embedding of ``u`` into ``v`` (greedy)."""
    _check_same(u, v)
    it = iter(v.letters)
    return all(a in it for a in u.letters)


def derive_code_alphabet(base: Alphabet, codewords: Sequence[Word]) -> Alphabet:
    """A fresh alphabet ``k0, k1, ...`` whose letters expand to ``codewords``."""
    expansion = []
    for w in codewords:
        if w.alphabet != base:
            raise InputError("codeword not over the base alphabet")
        if not w.letters:
            raise InputError("codewords must be nonempty")
        expansion.append(w.letters)
    if len(set(expansion)) != len(expansion):
        raise InputError("duplicate codewords")
    return Alphabet([f"k{i}" for i in range(len(expansion))], base, expansion)


def expand(w: Word, to: Alphabet | None = None) -> Word:
    """Replace derived letters by their expansions.

    By default flattens through the whole chain of bases; with ``to`` given,
    stops once the word is over that alphabet (which must be on the chain).
    """
    if to is None and w.alphabet.base is None:
        raise InputError("alphabet has no base")
    cur = w
    while cur.alphabet.base is not None and cur.alphabet != to:
        alpha = cur.alphabet
        exp = alpha._expansion
        idx = alpha._index
        out = []
        for a in cur.letters:
            out.extend(exp[idx[a]])
        cur = Word(alpha.base, out)
    if to is not None and cur.alphabet != to:
        raise InputError("target alphabet is not a base of the word's alphabet")
    return cur


def decode_over_code(w: Word, code: Alphabet) -> Word | None:
    """Factorise ``w`` over a code alphabet of the shape ``IRR(R)·c``.

    Every codeword ends with the same letter ``c`` and contains no other
    ``c``, so the factorisation is found by cutting after each ``c``.
    Returns ``None`` if ``w`` is not in ``code*``.
    """
    if code.base is None or w.alphabet != code.base:
        raise InputError("code alphabet must be derived from the word's alphabet")
    exp = code._expansion
    if not exp:
        raise InputError("empty code alphabet")
    c = exp[0][-1]
    for cw in exp:
        if cw[-1] != c or c in cw[:-1]:
            raise InputError("code alphabet is not of the shape IRR(R)c")
    lookup = {cw: a for a, cw in zip(code.letters, exp)}
    out, start = [], 0
    letters = w.letters
    for i, a in enumerate(letters):
        if a == c:
            tok = lookup.get(letters[start:i + 1])
            if tok is None:
                return None
            out.append(tok)
            start = i + 1
    if start != len(letters):
        return None
    return Word(code, out)


def all_words(alphabet: Alphabet, max_length: int, min_length: int = 0) -> Iterator[Word]:
    """All words of length in ``[min_length, max_length]`` in shortlex order."""
    from itertools import product

    for n in range(min_length, max_length + 1):
        for t in product(alphabet.letters, repeat=n):
            yield Word(alphabet, t)


def shortlex_sorted(words: Iterable[Word]) -> list[Word]:
    return sorted(words, key=Word.shortlex_key)
