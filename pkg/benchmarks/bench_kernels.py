"""Compare the compiled and pure-Python kernels on the three hot paths.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

import argparse
import json
import random
import time
from itertools import product

import numpy as np

from crsynth import kernels
from crsynth.lang import compile_regex, syntactic_morphism
from crsynth.rewrite import RewriteSystem, avoidance_automaton, quotient
from crsynth.synth import synthesize
from crsynth.words import Alphabet


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(seed=0):
    rng = random.Random(seed)
    A = Alphabet("bc")
    phi, _ = syntactic_morphism(compile_regex("(bc)+", A))
    S = synthesize(phi, {"": ["c"]}).result
    _, trans, term = S._trie
    rw_args = (trans, term, 2, [len(r.lhs) for r in S.rules], [r.rhs.codes() for r in S.rules])
    words = [tuple(rng.randrange(2) for _ in range(2000)) for _ in range(50)]

    # every word of length 12 is a lhs, so IRR is all shorter words
    S2 = RewriteSystem.from_pairs(A, [("".join(t), "".join(t[:-1]))
                                      for t in product("bc", repeat=12)])
    delta, sigma, _ = avoidance_automaton(S2)

    M, _ = quotient(S)
    table = np.ascontiguousarray(M.table, dtype=np.int64)

    def rewrite(name):
        rw = kernels.make_rewriter(*rw_args, name=name)
        return lambda: [rw.reduce(w, False) for w in words]

    def enumerate_(name):
        return lambda: kernels.enumerate_paths(delta, sigma, 0, name=name)

    def assoc(name):
        return lambda: kernels.find_nonassociative(table, name=name)

    return [
        ("normal form, 50 words of length 2000", rewrite),
        ("enumerate IRR (4095 words)", enumerate_),
        (f"associativity, {len(M)}-element table", assoc),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    names = kernels.available()
    rows = []
    for label, make in workloads():
        row = {"workload": label}
        for name in names:
            row[name] = best_of(make(name), args.repeat)
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':42s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for row in rows:
        cells = "".join(f"{row[n] * 1e3:10.2f}ms" for n in names)
        sp = f"{row['speedup']:9.1f}x" if "speedup" in row else ""
        print(f"{row['workload']:42s}{cells}  {sp}")


if __name__ == "__main__":
    main()
