import json

import pytest
from hypothesis import given, settings, strategies as st

from crsynth import formats
from crsynth.acceptance import CORPUS
from crsynth.errors import InputError
from crsynth.lang import compile_regex, syntactic_morphism
from crsynth.rewrite import RewriteSystem, quotient
from crsynth.synth import synthesize
from crsynth.words import Alphabet, derive_code_alphabet


def test_system_json_shape(forced_trace):
    obj = formats.system_to_json(forced_trace.result)
    assert obj["alphabet"] == ["b", "c"]
    assert obj["rules"][0] == {"lhs": "bbb", "rhs": "bb"}


def test_empty_word_serialization():
    A = Alphabet("a")
    S = RewriteSystem.from_pairs(A, [("a", "")])
    assert formats.system_to_json(S)["rules"] == [{"lhs": "a", "rhs": ""}]
    assert formats.system_to_text(S) == "alphabet: a\na -> 1\n"


def test_system_text_round_trip(eight_rules):
    text = formats.system_to_text(eight_rules)
    assert formats.system_from_text(text) == eight_rules


def test_text_parsing_comments_and_inferred_alphabet():
    S = formats.system_from_text("# comment\ncbc -> c  # trailing\n\n")
    assert S.alphabet.letters == ("b", "c")
    assert [str(r) for r in S.rules] == ["cbc -> c"]
    with pytest.raises(InputError):
        formats.system_from_text("cbc => c")


def test_malformed_json_inputs():
    with pytest.raises(InputError):
        formats.system_from_json({"rules": []})
    with pytest.raises(InputError):
        formats.monoid_from_json({"elements": ["1"], "neutral": 0})
    with pytest.raises(InputError):
        formats.monoid_from_json({"elements": ["1", "a"], "neutral": 0, "table": [[0, 0], [1, 1]]})


def test_load_system_detects_format(tmp_path, eight_rules):
    j = tmp_path / "s.json"
    j.write_text(json.dumps(formats.system_to_json(eight_rules)))
    t = tmp_path / "s.txt"
    t.write_text(formats.system_to_text(eight_rules))
    assert formats.load_system(j) == formats.load_system(t) == eight_rules
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(InputError):
        formats.load_system(bad)


def test_monoid_round_trip(forced_trace):
    M, _ = quotient(forced_trace.result)
    obj = formats.monoid_to_json(M)
    assert formats.monoid_from_json(json.loads(json.dumps(obj))) == M


def test_morphism_round_trip(bcplus):
    phi = bcplus[2]
    obj = json.loads(json.dumps(formats.morphism_to_json(phi)))
    assert obj["images"] == {"b": "b", "c": "c"}
    assert obj["accepting"] == ["bc"]
    assert formats.morphism_from_json(obj) == phi


def test_derived_alphabet_round_trip():
    A = Alphabet("bc")
    K = derive_code_alphabet(A, [A.word("c"), A.word("bc")])
    obj = formats.alphabet_to_json(K)
    assert obj == {"letters": ["k0", "k1"], "expansion": {"k0": "c", "k1": "bc"}}
    assert formats.alphabet_from_json(obj, A) == K
    with pytest.raises(InputError):
        formats.alphabet_from_json(obj)


def test_multichar_words_are_token_lists():
    A = Alphabet("bc")
    K = derive_code_alphabet(A, [A.word("c"), A.word("bc")])
    w = K.word(["k1", "k0"])
    assert formats.word_to_json(w) == ["k1", "k0"]
    assert formats.word_from_json(["k1", "k0"], K) == w
    with pytest.raises(InputError):
        formats.word_from_json("k1", K)


@pytest.mark.parametrize("expr,letters", CORPUS)
def test_trace_round_trip(expr, letters):
    phi, _ = syntactic_morphism(compile_regex(expr, Alphabet(letters)))
    tr = synthesize(phi)
    obj = formats.trace_to_json(tr)
    text = json.dumps(obj, sort_keys=True)
    back = formats.trace_from_json(json.loads(text))
    assert back == tr
    assert json.dumps(formats.trace_to_json(back), sort_keys=True) == text


def test_trace_file_round_trip(tmp_path, forced_trace):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(formats.trace_to_json(forced_trace)))
    assert formats.load_trace(p) == forced_trace


rule_lists = st.lists(st.tuples(st.text("abc", min_size=1, max_size=5), st.text("abc", max_size=4)),
                      max_size=6)


@settings(max_examples=80, deadline=None)
@given(rule_lists)
def test_random_system_round_trips(pairs):
    pairs = list(dict.fromkeys((l, r) for l, r in pairs if l != r))
    S = RewriteSystem.from_pairs(Alphabet("abc"), pairs)
    assert formats.system_from_json(json.loads(json.dumps(formats.system_to_json(S)))) == S
    assert formats.system_from_text(formats.system_to_text(S)) == S
