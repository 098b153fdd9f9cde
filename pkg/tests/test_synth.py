import pytest

from crsynth.acceptance import CORPUS
from crsynth.errors import BudgetExceeded, InputError, NotAperiodicError
from crsynth.lang import compile_regex, dfa_member, syntactic_morphism
from crsynth.monoid import FiniteMonoid, Morphism, evaluate
from crsynth.rewrite import RewriteSystem, irreducibles, normal_form, quotient
from crsynth.synth import (Budgets, choose_pivot, induced_code_morphism, lift_system, member,
                           synthesize, verify_synthesis, verify_system)
from crsynth.words import Alphabet, all_words, format_word


def rules(S):
    return {(format_word(r.lhs), format_word(r.rhs)) for r in S.rules}


def test_forced_base_system(forced_trace):
    assert forced_trace.pivot == "c"
    assert rules(forced_trace.base_trace.result) == {("bbb", "bb")}


def test_forced_code_alphabet(forced_trace):
    K = forced_trace.code
    assert [format_word(K.expansion(k)) for k in K.letters] == ["c", "bc", "bbc"]
    psi = forced_trace.induced
    local = forced_trace.local.monoid
    # (bc) goes to the local neutral c; (c) and (bbc) to 0
    assert [local.elements[x] for x in psi.images] == ["0", "c", "0"]


def test_forced_code_system(forced_trace):
    assert rules(forced_trace.code_trace.result) == {
        ("(c)(c)", "(c)"), ("(bc)", "1"), ("(bbc)(bbc)", "(bbc)"), ("(c)(bbc)(c)", "(c)")}


def test_forced_lift_and_result(forced_trace):
    assert rules(forced_trace.lifted) == {("ccc", "cc"), ("cbc", "c"), ("cbbcbbc", "cbbc"),
                                          ("ccbbcc", "cc")}
    S = forced_trace.result
    assert [str(r) for r in S.rules][0] == "bbb -> bb"  # R before the lifted rules
    assert len(S) == 5


def test_forced_irreducible_count(forced_trace):
    irr = irreducibles(forced_trace.result)
    q = irreducibles(forced_trace.code_trace.result).count
    assert irr.count == 3 + 9 * q == 57
    assert str(irr.words[-1]) == "bbcbbccbbcbb"


def test_default_pivot_is_letter_swap_of_forced(bcplus, trace_default, forced_trace):
    # (bc)+ with pivot b is the b<->c mirror of the forced-c run on the same monoid
    assert trace_default.pivot == "b"
    swap = str.maketrans("bc", "cb")
    mirrored = {(l.translate(swap), r.translate(swap)) for l, r in rules(forced_trace.result)}
    assert rules(trace_default.result) == mirrored


def test_one_letter_fixture():
    C = Alphabet("c")
    U1 = FiniteMonoid(["1", "0"], 0, [[0, 1], [1, 1]])
    tr = synthesize(Morphism(C, U1, [1]))
    assert rules(tr.result) == {("cc", "c")}
    M, _ = quotient(tr.result)
    assert len(M) == 2
    assert verify_synthesis(tr, deep=True).ok


def test_trivial_base_case():
    A = Alphabet("a")
    phi, _ = syntactic_morphism(compile_regex("~(0)", A))
    tr = synthesize(phi)
    assert tr.case == "trivial"
    assert rules(tr.result) == {("a", "1")}
    assert verify_synthesis(tr).ok


def test_empty_word_language_is_not_trivial():
    # {1} over {a} has syntactic monoid {1, 0}, so the trivial case does not apply
    A = Alphabet("a")
    phi, _ = syntactic_morphism(compile_regex("1", A))
    tr = synthesize(phi)
    assert rules(tr.result) == {("aa", "a")}
    assert member(phi, tr, A.empty) and not member(phi, tr, A.word("aaa"))


def test_not_aperiodic_rejected():
    A = Alphabet("a")
    phi, _ = syntactic_morphism(compile_regex("(aa)*", A))
    with pytest.raises(NotAperiodicError) as info:
        synthesize(phi)
    assert info.value.witness == "a"


def test_pivot_policy(bcplus):
    phi = bcplus[2]
    assert choose_pivot(phi) == "b"
    assert choose_pivot(phi, ["c", "b"]) == "c"
    with pytest.raises(InputError):
        choose_pivot(phi.restrict(Alphabet([])))
    with pytest.raises(InputError):
        synthesize(phi, {"": ["x"]})


def test_budget_reports_path(bcplus):
    with pytest.raises(BudgetExceeded) as info:
        synthesize(bcplus[2], {"": ["c"]}, Budgets(max_alphabet=2))
    assert info.value.path == ""
    with pytest.raises(BudgetExceeded):
        synthesize(bcplus[2], {"": ["c"]}, Budgets(max_rules=3))
    with pytest.raises(InputError):
        Budgets(max_irr=0)


def test_lift_requires_code_alphabet():
    A = Alphabet("bc")
    with pytest.raises(InputError):
        lift_system(RewriteSystem.from_pairs(A, [("bb", "b")]), "c")


def test_induced_morphism_matches_phi(forced_trace):
    phi = forced_trace.morphism
    R = forced_trace.base_trace.result
    K, psi, local = induced_code_morphism(R, "c", phi)
    assert K == forced_trace.code
    A = phi.source
    for k in K.letters:
        m = evaluate(phi, A.word("c") + K.expansion(k))
        assert local.inclusion[psi.image(k)] == m


@pytest.mark.parametrize("word,expected", [("bcbcbc", True), ("", False), ("bbcbb", False),
                                           ("bcb", False), ("bcbc", True)])
def test_member_cases(forced_trace, bcplus, word, expected):
    A, D, phi = bcplus
    w = A.word(word)
    assert member(phi, forced_trace, w) is expected
    assert dfa_member(D, w) is expected


def test_bcbcbc_normal_form(forced_trace, bcplus):
    assert str(normal_form(bcplus[0].word("bcbcbc"), forced_trace.result)) == "bc"


def test_deep_verification(forced_trace):
    rep = verify_synthesis(forced_trace, deep=True)
    assert rep.ok, rep.failures()
    assert rep.irreducible_count == 57
    assert any(k.startswith("code.") for k in rep.checks)


def test_verify_catches_incompatible_rule(bcplus):
    A, _, phi = bcplus
    S = RewriteSystem.from_pairs(A, [("bb", "b"), ("cc", "c")])
    rep = verify_system(S, phi)
    assert not rep.checks["rule_compatibility"].passed
    assert not rep.ok


def test_verify_reports_non_confluence(bcplus, eight_rules):
    rep = verify_system(eight_rules, bcplus[2])
    assert not rep.checks["confluent"].passed
    assert not rep.checks["subword_reducing"].passed


@pytest.mark.parametrize("expr,letters", CORPUS)
def test_corpus_member_agrees_with_dfa(expr, letters):
    A = Alphabet(letters)
    D = compile_regex(expr, A)
    phi, _ = syntactic_morphism(D)
    tr = synthesize(phi)
    rep = verify_synthesis(tr)
    assert rep.ok, rep.failures()
    for w in all_words(A, 8):
        assert member(phi, tr, w) == dfa_member(D, w), str(w)


@pytest.mark.parametrize("expr,letters", CORPUS)
def test_corpus_deep_verification(expr, letters):
    A = Alphabet(letters)
    phi, _ = syntactic_morphism(compile_regex(expr, A))
    rep = verify_synthesis(synthesize(phi), deep=True, max_words=2000)
    assert rep.ok, rep.failures()


def test_refinement_on_pairs(forced_trace, bcplus):
    # equal normal forms imply equal images
    phi = bcplus[2]
    S = forced_trace.result
    seen = {}
    for w in all_words(S.alphabet, 8):
        nf = normal_form(w, S).letters
        x = evaluate(phi, w)
        assert seen.setdefault(nf, x) == x


def test_synthesis_is_deterministic(bcplus):
    phi = bcplus[2]
    assert synthesize(phi, {"": ["c"]}).result == synthesize(phi, {"": ["c"]}).result
