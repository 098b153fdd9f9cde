"""Rees-extension monoids ``E(ρ)`` and the isomorphism ``A*/S ≅ E(ρ)``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .monoid import FiniteMonoid
from .rewrite import irreducibles, quotient
from .synth import SynthesisTrace
from .words import Word, decode_over_code

MAX_CARRIER = 20_000


@dataclass(frozen=True)
class ReesExtension:
    """``P ⊎ (P × Q × P)`` with triple products sandwiching ``ρ`` of the middle.

    Index layout: ``0..|P|-1`` are the ``P`` elements; the triple
    ``(u, q, v)`` sits at ``|P| + (u·|Q| + q)·|P| + v``.
    """

    P: FiniteMonoid
    Q: FiniteMonoid
    rho: tuple[int, ...]
    monoid: FiniteMonoid

    def triple(self, u: int, q: int, v: int) -> int:
        p = len(self.P)
        return p + (u * len(self.Q) + q) * p + v

    def decode(self, x: int):
        """``("P", u)`` or ``("T", u, q, v)`` for an element index."""
        p, nq = len(self.P), len(self.Q)
        if x < p:
            return ("P", x)
        x -= p
        v = x % p
        uq = x // p
        return ("T", uq // nq, uq % nq, v)

    def is_triple(self, x: int) -> bool:
        return x >= len(self.P)

    @property
    def c(self) -> int:
        """``ρ(1)``, the sandwich element of ``Q``."""
        return self.rho[self.P.neutral]


def build_rees(P: FiniteMonoid, Q: FiniteMonoid, rho) -> ReesExtension:
    """Materialise ``E(ρ)`` with the three multiplication laws."""
    rho = tuple(rho)
    p, nq = len(P), len(Q)
    if len(rho) != p:
        raise InputError("rho must be total on P")
    if any(not 0 <= x < nq for x in rho):
        raise InputError("rho values must lie in Q")
    size = p + p * p * nq
    if size > MAX_CARRIER:
        raise InputError(f"E(rho) would have {size} elements (limit {MAX_CARRIER})")
    Pt, Qt = P.table, Q.table
    r = np.array(rho, dtype=np.int64)
    U, Qi, V = (a.ravel() for a in np.meshgrid(np.arange(p), np.arange(nq), np.arange(p),
                                               indexing="ij"))

    def idx(u, q, v):
        return p + (u * nq + q) * p + v

    table = np.empty((size, size), dtype=np.int64)
    table[:p, :p] = Pt
    xs = np.arange(p)
    table[:p, p:] = idx(Pt[xs[:, None], U[None, :]], Qi[None, :], V[None, :])
    table[p:, :p] = idx(U[:, None], Qi[:, None], Pt[V[:, None], xs[None, :]])
    # (u,q,v)(x,r,y) = (u, q·ρ(vx)·r, y)
    mid = Qt[Qt[Qi[:, None], r[Pt[V[:, None], U[None, :]]]], Qi[None, :]]
    table[p:, p:] = idx(U[:, None], mid, V[None, :])
    names = list(P.elements) + [f"({P.elements[u]},{Q.elements[q]},{P.elements[v]})"
                                for u, q, v in zip(U, Qi, V)]
    M = FiniteMonoid(names, P.neutral, table)
    return ReesExtension(P, Q, rho, M)


def rees_from_trace(trace: SynthesisTrace) -> ReesExtension:
    """``P = B*/R``, ``Q = K*/T`` and ``ρ(û) = [ûc]_T`` for a recursive node."""
    if not trace.recursive:
        raise InputError("trivial trace: no pivot, no Rees extension")
    R = trace.base_trace.result
    T = trace.code_trace.result
    P, _ = quotient(R)
    Q, _ = quotient(T)
    K = trace.code
    q_index = {w.letters: i for i, w in enumerate(Q.representatives)}
    # P is IRR(R) in shortlex order, which is also the order of K's letters
    rho = []
    for i, u in enumerate(P.representatives):
        if K.expansion(K.letters[i]).letters != u.letters + (trace.pivot,):
            raise InputError("code alphabet does not follow IRR(R) in shortlex order")
        nf = T.reduce_codes((i,))
        rho.append(q_index[tuple(K.letters[a] for a in nf)])
    return build_rees(P, Q, rho)


@dataclass(frozen=True)
class IsoReport:
    isomorphic: bool
    mapping: tuple[int, ...] | None = None
    counterexample: dict | None = None

    def __bool__(self):
        return self.isomorphic


def sigma_map(quotient_s: FiniteMonoid, E: ReesExtension, trace: SynthesisTrace) -> list[int]:
    """σ on every irreducible of ``S``: c-free words go to ``P``, others to triples."""
    c = trace.pivot
    K = trace.code
    A = trace.alphabet
    p_index = {w.letters: i for i, w in enumerate(E.P.representatives)}
    out = []
    for w in quotient_s.representatives:
        letters = w.letters
        if c not in letters:
            out.append(p_index[letters])
            continue
        first = letters.index(c)
        last = len(letters) - 1 - letters[::-1].index(c)
        u0, ulast = letters[:first], letters[last + 1:]
        inner = decode_over_code(Word(A, letters[first + 1:last + 1]), K)
        if inner is None:
            raise InputError(f"{w} does not factor over the code alphabet")
        q = E.Q.product(E.rho[K.index(k)] for k in inner.letters)
        out.append(E.triple(p_index[u0], q, p_index[ulast]))
    return out


def sigma_iso(quotient_s: FiniteMonoid, E: ReesExtension, trace: SynthesisTrace) -> IsoReport:
    """Check that σ is a bijective homomorphism ``A*/S -> E(ρ)``."""
    if quotient_s.representatives is None:
        raise InputError("quotient monoid must carry its irreducible representatives")
    try:
        sigma = sigma_map(quotient_s, E, trace)
    except (KeyError, InputError) as exc:
        return IsoReport(False, counterexample={"reason": f"sigma undefined: {exc}"})
    names_s, names_e = quotient_s.elements, E.monoid.elements
    if len(set(sigma)) != len(sigma) or len(sigma) != len(E.monoid):
        seen = {}
        for i, s in enumerate(sigma):
            if s in seen:
                return IsoReport(False, counterexample={
                    "reason": "not injective", "x": names_s[seen[s]], "y": names_s[i],
                    "image": names_e[s]})
            seen[s] = i
        return IsoReport(False, counterexample={
            "reason": "not surjective", "sizes": [len(sigma), len(E.monoid)]})
    sig = np.array(sigma, dtype=np.int64)
    lhs = sig[quotient_s.table]                 # σ(x·y)
    rhs = E.monoid.table[sig[:, None], sig[None, :]]   # σ(x)·σ(y)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        return IsoReport(False, counterexample={
            "reason": "not a homomorphism", "x": names_s[x], "y": names_s[y],
            "sigma(xy)": names_e[lhs[x, y]], "sigma(x)sigma(y)": names_e[rhs[x, y]]})
    if sigma[quotient_s.neutral] != E.monoid.neutral:
        return IsoReport(False, counterexample={"reason": "neutral not preserved"})
    return IsoReport(True, tuple(sigma))


def rees_power(E: ReesExtension, x: int, n: int) -> int:
    """``x^n`` by repeated multiplication."""
    if n < 0 or (n == 0 and E.is_triple(x)):
        raise InputError("triple elements only have positive powers")
    return E.monoid.power(x, n)


def rees_power_closed_form(E: ReesExtension, x: int, n: int) -> int:
    """``(u,q,v)^n = (u, (q·ρ(vu))^(n-1)·q, v)``; ``P`` elements use ``P``'s power."""
    if n < 1:
        raise InputError("closed form needs n >= 1")
    d = E.decode(x)
    if d[0] == "P":
        return E.P.power(d[1], n)
    _, u, q, v = d
    Q = E.Q
    step = Q.mul(q, E.rho[E.P.mul(v, u)])
    return E.triple(u, Q.mul(Q.power(step, n - 1), q), v)
