"""JSON and text file formats for systems, monoids, morphisms and traces.

Words are JSON strings when every letter of their alphabet is a single
character, otherwise JSON lists of letter tokens. The empty word is ``""``
(or ``[]``) in JSON and ``1`` in text.
"""

from __future__ import annotations

import json

from .errors import InputError
from .monoid import FiniteMonoid, LocalDivisor, Morphism
from .rewrite import RewriteSystem, Rule
from .synth import SynthesisTrace
from .words import Alphabet, Word, format_word


def word_to_json(w: Word):
    if w.alphabet.single_char:
        return "".join(w.letters)
    return list(w.letters)


def word_from_json(obj, alphabet: Alphabet) -> Word:
    if isinstance(obj, str):
        if not alphabet.single_char and obj:
            raise InputError("words over multi-character alphabets must be token lists")
        return alphabet.word(obj)
    if isinstance(obj, list):
        return alphabet.word(obj)
    raise InputError(f"not a word: {obj!r}")


def alphabet_to_json(A: Alphabet):
    if A.base is None:
        return list(A.letters)
    return {"letters": list(A.letters),
            "expansion": {a: word_to_json(A.expansion(a)) for a in A.letters}}


def alphabet_from_json(obj, base: Alphabet | None = None) -> Alphabet:
    if isinstance(obj, str):
        return Alphabet(list(obj))
    if isinstance(obj, list):
        if base is not None:
            raise InputError("derived alphabet needs an expansion map")
        return Alphabet(obj)
    if isinstance(obj, dict):
        letters = obj["letters"]
        exp = obj.get("expansion")
        if exp is None:
            return Alphabet(letters)
        if base is None:
            raise InputError("expansion given but no base alphabet in context")
        return Alphabet(letters, base, [word_from_json(exp[a], base).letters for a in letters])
    raise InputError(f"not an alphabet: {obj!r}")


def rules_to_json(S: RewriteSystem):
    return [{"lhs": word_to_json(r.lhs), "rhs": word_to_json(r.rhs)} for r in S.rules]


def system_to_json(S: RewriteSystem) -> dict:
    return {"alphabet": alphabet_to_json(S.alphabet), "rules": rules_to_json(S)}


def system_from_json(obj, alphabet: Alphabet | None = None) -> RewriteSystem:
    try:
        A = alphabet if alphabet is not None else alphabet_from_json(obj["alphabet"])
        rules = [Rule(word_from_json(r["lhs"], A), word_from_json(r["rhs"], A))
                 for r in obj["rules"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed system JSON: {exc}") from None
    return RewriteSystem(A, rules)


def system_to_text(S: RewriteSystem) -> str:
    head = "alphabet: " + " ".join(S.alphabet.letters)
    return "\n".join([head] + [str(r) for r in S.rules]) + "\n"


def system_from_text(text: str) -> RewriteSystem:
    """Lines ``lhs -> rhs`` (``1`` is the empty word), optional ``alphabet:`` line, ``#`` comments."""
    letters = None
    pairs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            spec = line[len("alphabet:"):].split()
            letters = spec if len(spec) > 1 else list(spec[0]) if spec else []
            continue
        if "->" not in line:
            raise InputError(f"line {lineno}: expected 'lhs -> rhs'")
        l, r = (s.strip() for s in line.split("->", 1))
        pairs.append(("" if l == "1" else l, "" if r == "1" else r))
    if letters is None:
        letters = sorted({ch for l, r in pairs for ch in l + r})
    A = Alphabet(letters)
    return RewriteSystem.from_pairs(A, pairs)


def load_system(path) -> RewriteSystem:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None
        return system_from_json(obj)
    return system_from_text(text)


def monoid_to_json(M: FiniteMonoid) -> dict:
    return {"elements": list(M.elements), "neutral": M.neutral, "table": M.table.tolist()}


def monoid_from_json(obj, seed: int = 0) -> FiniteMonoid:
    try:
        return FiniteMonoid(obj["elements"], obj["neutral"], obj["table"], seed=seed)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed monoid JSON: {exc}") from None


def morphism_to_json(phi: Morphism, include_alphabet: bool = True) -> dict:
    M = phi.target
    out = {}
    if include_alphabet:
        out["alphabet"] = alphabet_to_json(phi.source)
    out["monoid"] = monoid_to_json(M)
    out["images"] = {a: M.elements[x] for a, x in zip(phi.source.letters, phi.images)}
    out["accepting"] = None if phi.accepting is None else [
        M.elements[x] for x in sorted(phi.accepting)]
    return out


def morphism_from_json(obj, alphabet: Alphabet | None = None, seed: int = 0) -> Morphism:
    try:
        A = alphabet if alphabet is not None else alphabet_from_json(obj["alphabet"])
        M = monoid_from_json(obj["monoid"], seed)
        images = [M.index(obj["images"][a]) for a in A.letters]
        acc = obj.get("accepting")
        accepting = None if acc is None else [M.index(x) for x in acc]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed morphism JSON: {exc}") from None
    return Morphism(A, M, images, accepting)


def load_morphism(path, seed: int = 0) -> Morphism:
    with open(path, encoding="utf-8") as fh:
        try:
            return morphism_from_json(json.load(fh), seed=seed)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None


def trace_to_json(tr: SynthesisTrace) -> dict:
    out = {
        "case": tr.case,
        "alphabet": alphabet_to_json(tr.alphabet),
        "morphism": morphism_to_json(tr.morphism, include_alphabet=False),
        "result": rules_to_json(tr.result),
    }
    if tr.recursive:
        out.update({
            "pivot": tr.pivot,
            "base_trace": trace_to_json(tr.base_trace),
            "code": alphabet_to_json(tr.code),
            "local": {"monoid": monoid_to_json(tr.local.monoid),
                      "inclusion": list(tr.local.inclusion)},
            "induced": morphism_to_json(tr.induced, include_alphabet=False),
            "code_trace": trace_to_json(tr.code_trace),
            "lifted": rules_to_json(tr.lifted),
        })
    return out


def trace_from_json(obj, alphabet: Alphabet | None = None) -> SynthesisTrace:
    try:
        A = alphabet if alphabet is not None else alphabet_from_json(obj["alphabet"])
        phi = morphism_from_json(obj["morphism"], A)
        S = system_from_json({"rules": obj["result"]}, A)
        if obj["case"] == "trivial":
            return SynthesisTrace(A, phi, "trivial", S)
        c = obj["pivot"]
        B = A.restrict([a for a in A.letters if a != c])
        base = trace_from_json(obj["base_trace"], B)
        K = alphabet_from_json(obj["code"], A)
        local_m = monoid_from_json(obj["local"]["monoid"])
        local = LocalDivisor(local_m, tuple(obj["local"]["inclusion"]), phi.target,
                             phi.image(c))
        psi = morphism_from_json(obj["induced"], K)
        code = trace_from_json(obj["code_trace"], K)
        lifted = system_from_json({"rules": obj["lifted"]}, A)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed trace JSON: {exc}") from None
    return SynthesisTrace(A, phi, "recursive", S, c, base, K, local, psi, code, lifted)


def load_trace(path) -> SynthesisTrace:
    with open(path, encoding="utf-8") as fh:
        try:
            return trace_from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON: {exc}") from None


def rule_texts(S: RewriteSystem) -> list[str]:
    return [f"{format_word(r.lhs)} -> {format_word(r.rhs)}" for r in S.rules]
