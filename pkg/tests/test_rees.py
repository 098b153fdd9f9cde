import pytest

from crsynth.acceptance import corpus_traces
from crsynth.errors import InputError
from crsynth.monoid import FiniteMonoid, is_aperiodic
from crsynth.rees import (ReesExtension, build_rees, rees_from_trace, rees_power,
                          rees_power_closed_form, sigma_iso)
from crsynth.rewrite import quotient

U1 = FiniteMonoid(["1", "0"], 0, [[0, 1], [1, 1]])
TRIV = FiniteMonoid(["1"], 0, [[0]])


@pytest.fixture(scope="module")
def recursive_nodes():
    out = []
    for expr, *_, tr in corpus_traces():
        for path, node in tr.levels():
            if node.recursive:
                out.append((f"{expr}@{path or 'top'}", node))
    return out


def test_forced_trace_rees(forced_trace):
    E = rees_from_trace(forced_trace)
    assert [str(w) for w in E.P.representatives] == ["1", "b", "bb"]
    assert len(E.Q) == 6
    assert len(E.monoid) == 3 + 9 * 6
    Ms, _ = quotient(forced_trace.result)
    iso = sigma_iso(Ms, E, forced_trace)
    assert iso
    names = dict(zip(Ms.elements, (E.monoid.elements[x] for x in iso.mapping)))
    assert names["bb"] == "bb"
    assert names["c"] == "(1,1,1)"
    assert names["bcb"] == "(b,1,b)"


def test_triple_index_layout():
    E = build_rees(U1, U1, [1, 0])
    p, q = len(E.P), len(E.Q)
    assert len(E.monoid) == p + p * p * q
    for u in range(p):
        for k in range(q):
            for v in range(p):
                x = E.triple(u, k, v)
                assert E.decode(x) == ("T", u, k, v)
    assert E.decode(1) == ("P", 1)
    assert E.c == 1


def test_multiplication_laws():
    E = build_rees(U1, U1, [1, 0])
    M, P = E.monoid, E.P
    for u in range(2):
        for q in range(2):
            for v in range(2):
                t = E.triple(u, q, v)
                for x in range(2):
                    assert M.mul(x, t) == E.triple(P.mul(x, u), q, v)
                    assert M.mul(t, x) == E.triple(u, q, P.mul(v, x))
                    for r in range(2):
                        for y in range(2):
                            mid = E.Q.mul(E.Q.mul(q, E.rho[P.mul(v, x)]), r)
                            assert M.mul(t, E.triple(x, r, y)) == E.triple(u, mid, y)


def test_build_rees_validation():
    with pytest.raises(InputError):
        build_rees(U1, U1, [0])
    with pytest.raises(InputError):
        build_rees(U1, U1, [0, 5])


def test_trivial_trace_has_no_extension():
    from crsynth.lang import compile_regex, syntactic_morphism
    from crsynth.synth import synthesize
    from crsynth.words import Alphabet

    phi, _ = syntactic_morphism(compile_regex("~(0)", Alphabet("bc")))
    with pytest.raises(InputError):
        rees_from_trace(synthesize(phi))


def test_all_recursive_nodes(recursive_nodes):
    assert recursive_nodes
    for label, node in recursive_nodes:
        E = rees_from_trace(node)
        Ms, _ = quotient(node.result)
        assert sigma_iso(Ms, E, node), label
        p, q = len(E.P), len(E.Q)
        assert len(Ms) == p + p * p * q, label
        assert is_aperiodic(E.monoid), label


def test_closed_form_powers(recursive_nodes):
    for label, node in recursive_nodes:
        E = rees_from_trace(node)
        for x in range(len(E.monoid)):
            for n in range(1, 7):
                assert rees_power(E, x, n) == rees_power_closed_form(E, x, n), (label, x, n)


def test_power_zero_on_triple_rejected(forced_trace):
    E = rees_from_trace(forced_trace)
    with pytest.raises(InputError):
        rees_power(E, len(E.P), 0)
    assert rees_power(E, 1, 0) == E.P.neutral
    with pytest.raises(InputError):
        rees_power_closed_form(E, 1, 0)


def test_wrong_rho_breaks_isomorphism(forced_trace):
    E = rees_from_trace(forced_trace)
    Ms, _ = quotient(forced_trace.result)
    rho = list(E.rho)
    rho[1] = rho[0]
    bad = build_rees(E.P, E.Q, rho)
    rep = sigma_iso(Ms, bad, forced_trace)
    assert not rep
    assert rep.counterexample["reason"] in {"not a homomorphism", "not injective"}


def test_rees_extension_record():
    E = build_rees(TRIV, U1, [1])
    assert isinstance(E, ReesExtension)
    assert len(E.monoid) == 1 + 2
    assert is_aperiodic(E.monoid)
