import pytest

from crsynth import Alphabet, RewriteSystem, compile_regex, syntactic_morphism, synthesize
from crsynth.acceptance import EIGHT_RULE_SYSTEM, forced_pivot_trace


def all_reducts(w, S):
    """Every one-step reduct of ``w`` at every position by every rule (no strategy)."""
    out = set()
    letters = w.letters
    for r in S.rules:
        l = r.lhs.letters
        for i in range(len(letters) - len(l) + 1):
            if letters[i:i + len(l)] == l:
                out.add(letters[:i] + r.rhs.letters + letters[i + len(l):])
    return out


def terminal_words(w, S):
    """Ends of all maximal reduction paths from ``w``, by graph search."""
    seen, stack, ends = {w.letters}, [w.letters], set()
    A = S.alphabet
    while stack:
        cur = stack.pop()
        nxt = all_reducts(A.word(cur), S)
        if not nxt:
            ends.add(cur)
        for x in nxt:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return ends


@pytest.fixture
def bc():
    return Alphabet("bc")


@pytest.fixture
def cbc_system(bc):
    return RewriteSystem.from_pairs(bc, [("cbc", "c")])


@pytest.fixture
def eight_rules(bc):
    return RewriteSystem.from_pairs(bc, EIGHT_RULE_SYSTEM)


@pytest.fixture(scope="session")
def bcplus():
    A = Alphabet("bc")
    D = compile_regex("(bc)+", A)
    phi, _ = syntactic_morphism(D)
    return A, D, phi


@pytest.fixture(scope="session")
def forced_trace():
    return forced_pivot_trace()


@pytest.fixture(scope="session")
def trace_default(bcplus):
    return synthesize(bcplus[2])
