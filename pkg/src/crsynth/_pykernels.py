"""Pure-Python implementations of the hot kernels.

Same API as the compiled ``_ckernels`` extension; used when the extension is
not built or when ``CRSYNTH_PURE_PYTHON=1`` is set.
"""

NAME = "python"


class Rewriter:
    """Leftmost / longest-lhs / lowest-index rewriting over integer codes.

    ``trans[node * sigma + letter]`` is the trie child (or -1);
    ``term[node]`` the lowest rule index whose lhs spells ``node`` (or -1).
    """

    def __init__(self, trans, term, sigma, lhs_len, rhs):
        self.trans = list(trans)
        self.term = list(term)
        self.sigma = int(sigma)
        self.lhs_len = list(lhs_len)
        self.rhs = [tuple(r) for r in rhs]
        self.maxlen = max(self.lhs_len, default=0)

    def reduce(self, word, record=False):
        trans, term, sigma = self.trans, self.term, self.sigma
        lhs_len, rhs = self.lhs_len, self.rhs
        back = max(self.maxlen - 1, 0)
        w = list(word)
        steps = [] if record else None
        i = 0
        n = len(w)
        while i <= n:
            node, best, j = 0, term[0], i
            while j < n:
                node = trans[node * sigma + w[j]]
                if node < 0:
                    break
                j += 1
                if term[node] >= 0:
                    best = term[node]
            if best < 0:
                i += 1
                continue
            w[i:i + lhs_len[best]] = rhs[best]
            n = len(w)
            if record:
                steps.append((i, best))
            i = max(0, i - back)
        return tuple(w), steps


def enumerate_paths(delta, sigma, root):
    """All label sequences of paths from ``root`` in an acyclic automaton.

    ``delta[state * sigma + letter]`` is the successor or -1. Output is in
    shortlex order: level by level, extending each prefix in letter order.
    """
    out = []
    level = [((), root)]
    while level:
        out.extend(w for w, _ in level)
        nxt = []
        for w, s in level:
            base = s * sigma
            for a in range(sigma):
                t = delta[base + a]
                if t >= 0:
                    nxt.append((w + (a,), t))
        level = nxt
    return out


def find_nonassociative(table):
    """First triple ``(x, y, z)`` with ``(xy)z != x(yz)``, or ``None``."""
    rows = [list(map(int, r)) for r in table]
    n = len(rows)
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            rxy = rows[rx[y]]
            ry = rows[y]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    return (x, y, z)
    return None
