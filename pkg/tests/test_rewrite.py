import pytest
from hypothesis import given, settings, strategies as st

from crsynth.errors import BudgetExceeded, InputError
from crsynth.monoid import evaluate
from crsynth.rewrite import (RewriteSystem, Rule, classify_system, critical_pairs, irreducibles,
                             is_confluent, normal_form, one_step_reducts, quotient)
from crsynth.words import Alphabet, all_words, is_factor

from conftest import all_reducts, terminal_words


def test_rule_rejects_trivial_and_mixed():
    A = Alphabet("bc")
    with pytest.raises(InputError):
        Rule(A.word("b"), A.word("b"))
    with pytest.raises(InputError):
        Rule(A.word("b"), Alphabet("ab").word("a"))


def test_system_rejects_duplicate_rules():
    A = Alphabet("bc")
    with pytest.raises(InputError):
        RewriteSystem.from_pairs(A, [("bb", "b"), ("bb", "b")])


def test_classify_cbc(cbc_system):
    cls = classify_system(cbc_system)
    assert cls["length_reducing"] and cls["subword_reducing"]
    assert cls["length_witness"] is None and cls["subword_witness"] is None


def test_classify_eight_rules_witness(eight_rules):
    cls = classify_system(eight_rules)
    assert cls["length_reducing"]
    assert not cls["subword_reducing"]
    # ccc -> bb is the first rule whose rhs is not a scattered subword
    assert str(cls["subword_witness"]) == "ccc -> bb"


def test_classify_not_length_reducing():
    A = Alphabet("ab")
    S = RewriteSystem.from_pairs(A, [("ab", "ba")])
    cls = classify_system(S)
    assert not cls["length_reducing"] and not cls["subword_reducing"]
    with pytest.raises(InputError):
        normal_form(A.word("ab"), S)
    with pytest.raises(InputError):
        is_confluent(S)


@pytest.mark.parametrize("k", range(1, 11))
def test_bc_powers_reduce_to_bc(cbc_system, bc, k):
    assert str(normal_form(bc.word("bc" * k), cbc_system)) == "bc"


def test_cbc_confluent_irr_infinite(cbc_system):
    assert is_confluent(cbc_system)
    assert irreducibles(cbc_system).status == "infinite"


def test_ab_ba_not_confluent():
    # aba reduces to aa and to a; both irreducible
    A = Alphabet("ab")
    S = RewriteSystem.from_pairs(A, [("ab", "a"), ("ba", "b")])
    rep = is_confluent(S)
    assert not rep
    assert {str(w) for w in rep.normal_forms} == {"a", "aa"}
    ends = terminal_words(rep.counterexample.superposition, S)
    assert ends == {w.letters for w in rep.normal_forms}


def test_eight_rules_irreducibles(eight_rules):
    irr = irreducibles(eight_rules)
    assert irr.finite
    assert [str(w) for w in irr] == ["1", "b", "c", "bb", "bc", "cb", "cc"]


def test_eight_rules_confluence_against_graph_oracle(eight_rules, bc):
    # the system as printed is not confluent; the reducer agrees with the brute-force graph
    rep = is_confluent(eight_rules)
    ends = terminal_words(bc.word("ccbc"), eight_rules)
    assert len(ends) > 1
    assert not rep
    found = {w.letters for w in rep.normal_forms}
    assert found <= terminal_words(rep.counterexample.superposition, eight_rules)


def test_eight_rules_quotient_refused(eight_rules):
    with pytest.raises(InputError, match="not confluent"):
        quotient(eight_rules)


def test_critical_pairs_kinds():
    A = Alphabet("bc")
    S = RewriteSystem.from_pairs(A, [("bcb", "b"), ("cb", "c")])
    kinds = {cp.kind for cp in critical_pairs(S)}
    assert kinds == {"overlap", "inclusion"}


def test_trace_records_steps(forced_trace):
    S = forced_trace.result
    nf, tr = normal_form(S.alphabet.word("ccbbcc"), S, trace=True)
    assert str(nf) == "cc"
    assert len(tr) == 1
    assert str(S.rules[tr.steps[0].rule_index]) == "ccbbcc -> cc"


def test_strategy_leftmost_then_longest():
    A = Alphabet("ab")
    S = RewriteSystem.from_pairs(A, [("ab", "a"), ("aab", "b"), ("bb", "b")])
    nf, tr = normal_form(A.word("aabbb"), S, trace=True)
    first = tr.steps[0]
    assert first.position == 0 and first.rule_index == 1


def test_quotient_small_cases():
    a = Alphabet("a")
    M, pi = quotient(RewriteSystem.from_pairs(a, [("a", "")]))
    assert len(M) == 1
    c = Alphabet("c")
    M, pi = quotient(RewriteSystem.from_pairs(c, [("cc", "c")]))
    assert M.elements == ("1", "c")
    assert M.table.tolist() == [[0, 1], [1, 1]]


def test_quotient_budget(forced_trace):
    S = forced_trace.result
    irr = irreducibles(S)
    assert irr.finite
    with pytest.raises(BudgetExceeded):
        quotient(S, budget=irr.count - 1)
    assert irreducibles(S, budget=irr.count - 1).status == "budget_exceeded"


def test_quotient_homomorphism(forced_trace):
    S = forced_trace.result
    M, pi = quotient(S)
    ws = list(all_words(S.alphabet, 6))
    for u in ws[:120]:
        for v in ws[::7]:
            assert evaluate(pi, u + v) == M.mul(evaluate(pi, u), evaluate(pi, v))


def test_quotient_elements_are_normal_forms(forced_trace):
    S = forced_trace.result
    M, pi = quotient(S)
    for w in all_words(S.alphabet, 7):
        assert M.elements[evaluate(pi, w)] == str(normal_form(w, S))


def test_irreducibles_factor_closed(forced_trace):
    S = forced_trace.result
    irr = irreducibles(S)
    assert irr.count == 57
    assert str(irr.words[-1]) == "bbcbbccbbcbb"
    words = set(irr.words)
    for w in irr:
        for i in range(len(w)):
            for j in range(i, len(w) + 1):
                assert w[i:j] in words


def test_irreducibles_match_brute_force(forced_trace):
    S = forced_trace.result
    brute = [w for w in all_words(S.alphabet, 12) if S.is_irreducible(w)]
    assert brute == list(irreducibles(S).words)


def test_idempotent_letter_irreducibles():
    A = Alphabet("a")
    irr = irreducibles(RewriteSystem(A, [Rule(A.word("aa"), A.word("a"))]))
    assert [str(w) for w in irr] == ["1", "a"]


# strategy independence: every maximal path of the full reduction graph ends at normal_form

SYSTEMS = [
    ("bc", [("cbc", "c")]),
    ("bc", [("bbb", "bb"), ("ccc", "cc"), ("cbc", "c"), ("cbbcbbc", "cbbc"), ("ccbbcc", "cc")]),
    ("abc", [("aa", "a"), ("bb", "b"), ("cc", ""), ("bab", "b"), ("aba", "a")]),
    ("abc", [("aa", "a"), ("bb", "b"), ("cc", "c"), ("ab", "a")]),
]


@pytest.mark.parametrize("letters,pairs", SYSTEMS)
def test_strategy_independence_exhaustive(letters, pairs):
    A = Alphabet(letters)
    S = RewriteSystem.from_pairs(A, pairs)
    assert is_confluent(S)
    for w in all_words(A, 8 if len(A) <= 2 else 6):
        ends = terminal_words(w, S)
        assert ends == {normal_form(w, S).letters}, str(w)


def test_one_step_reducts_match_oracle(forced_trace):
    S = forced_trace.result
    for w in all_words(S.alphabet, 7):
        got = {r.letters for _, _, r in one_step_reducts(w, S)}
        assert got == all_reducts(w, S)


system_strategy = st.lists(
    st.tuples(st.text("bc", min_size=1, max_size=4), st.text("bc", max_size=3)),
    min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(system_strategy, st.text("bc", max_size=9))
def test_random_systems_confluence_decision(pairs, wtext):
    # keep length-reducing, deduplicated rules
    pairs = list(dict.fromkeys((l, r) for l, r in pairs if len(r) < len(l)))
    if not pairs:
        return
    A = Alphabet("bc")
    S = RewriteSystem.from_pairs(A, pairs)
    w = A.word(wtext)
    nf = normal_form(w, S)
    assert S.is_irreducible(nf)
    assert normal_form(nf, S) == nf
    ends = terminal_words(w, S)
    assert nf.letters in ends
    if is_confluent(S):
        assert ends == {nf.letters}


@settings(max_examples=60, deadline=None)
@given(st.text("bc", max_size=14))
def test_normal_form_idempotent(wtext):
    A = Alphabet("bc")
    S = RewriteSystem.from_pairs(A, [("bbb", "bb"), ("ccc", "cc"), ("cbc", "c"),
                                     ("cbbcbbc", "cbbc"), ("ccbbcc", "cc")])
    nf = normal_form(A.word(wtext), S)
    assert normal_form(nf, S) == nf
    assert not any(is_factor(r.lhs, nf) for r in S.rules)
