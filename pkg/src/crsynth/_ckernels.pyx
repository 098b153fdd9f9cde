# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled versions of the hot kernels (see ``_pykernels`` for the contract)."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

NAME = "cython"


cdef class Rewriter:
    cdef long long *trans
    cdef long long *term
    cdef long long *lhs_len
    cdef long long *rhs_flat
    cdef long long *rhs_off
    cdef long long *rhs_len
    cdef Py_ssize_t sigma, nnodes, nrules, maxlen

    def __cinit__(self, trans, term, sigma, lhs_len, rhs):
        cdef Py_ssize_t i, k, total
        self.sigma = sigma
        self.nnodes = len(term)
        self.nrules = len(lhs_len)
        total = 0
        for r in rhs:
            total += len(r)
        self.trans = <long long *> PyMem_Malloc(max(len(trans), 1) * sizeof(long long))
        self.term = <long long *> PyMem_Malloc(max(self.nnodes, 1) * sizeof(long long))
        self.lhs_len = <long long *> PyMem_Malloc(max(self.nrules, 1) * sizeof(long long))
        self.rhs_off = <long long *> PyMem_Malloc(max(self.nrules, 1) * sizeof(long long))
        self.rhs_len = <long long *> PyMem_Malloc(max(self.nrules, 1) * sizeof(long long))
        self.rhs_flat = <long long *> PyMem_Malloc(max(total, 1) * sizeof(long long))
        if (not self.trans or not self.term or not self.lhs_len or not self.rhs_off
                or not self.rhs_len or not self.rhs_flat):
            raise MemoryError()
        for i in range(len(trans)):
            self.trans[i] = trans[i]
        for i in range(self.nnodes):
            self.term[i] = term[i]
        self.maxlen = 0
        k = 0
        for i in range(self.nrules):
            self.lhs_len[i] = lhs_len[i]
            if lhs_len[i] > self.maxlen:
                self.maxlen = lhs_len[i]
            r = rhs[i]
            self.rhs_off[i] = k
            self.rhs_len[i] = len(r)
            for x in r:
                self.rhs_flat[k] = x
                k += 1

    def __dealloc__(self):
        PyMem_Free(self.trans)
        PyMem_Free(self.term)
        PyMem_Free(self.lhs_len)
        PyMem_Free(self.rhs_off)
        PyMem_Free(self.rhs_len)
        PyMem_Free(self.rhs_flat)

    def reduce(self, word, bint record=False):
        cdef Py_ssize_t n = len(word)
        cdef Py_ssize_t cap = n if n > 0 else 1
        cdef long long *w = <long long *> PyMem_Malloc(cap * sizeof(long long))
        cdef Py_ssize_t i, j, k, node, best, L, R, back, shift
        cdef long long *rp
        if not w:
            raise MemoryError()
        steps = [] if record else None
        try:
            for i in range(n):
                w[i] = word[i]
            back = self.maxlen - 1 if self.maxlen > 0 else 0
            i = 0
            while i <= n:
                node = 0
                best = self.term[0]
                j = i
                while j < n:
                    node = self.trans[node * self.sigma + w[j]]
                    if node < 0:
                        break
                    j += 1
                    if self.term[node] >= 0:
                        best = self.term[node]
                if best < 0:
                    i += 1
                    continue
                L = self.lhs_len[best]
                R = self.rhs_len[best]
                if R > L:
                    raise ValueError("rule increases length")
                rp = self.rhs_flat + self.rhs_off[best]
                for k in range(R):
                    w[i + k] = rp[k]
                shift = L - R
                if shift:
                    for k in range(i + L, n):
                        w[k - shift] = w[k]
                    n -= shift
                if record:
                    steps.append((i, best))
                i = i - back if i > back else 0
            return tuple([w[k] for k in range(n)]), steps
        finally:
            PyMem_Free(w)


def enumerate_paths(delta_in, Py_ssize_t sigma, Py_ssize_t root):
    cdef Py_ssize_t m = len(delta_in)
    cdef long long *delta = <long long *> PyMem_Malloc(max(m, 1) * sizeof(long long))
    cdef Py_ssize_t i, a, s, t, base
    if not delta:
        raise MemoryError()
    try:
        for i in range(m):
            delta[i] = delta_in[i]
        out = []
        words = [()]
        states = [root]
        while words:
            out.extend(words)
            nwords = []
            nstates = []
            for i in range(len(words)):
                s = states[i]
                w = words[i]
                base = s * sigma
                for a in range(sigma):
                    t = delta[base + a]
                    if t >= 0:
                        nwords.append(w + (a,))
                        nstates.append(t)
            words = nwords
            states = nstates
        return out
    finally:
        PyMem_Free(delta)


def find_nonassociative(const long long[:, ::1] table):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t x, y, z, xy
    for x in range(n):
        for y in range(n):
            xy = table[x, y]
            for z in range(n):
                if table[xy, z] != table[x, table[y, z]]:
                    return (x, y, z)
    return None
