# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: transducer runs and scaled BS(1, n) coordinates."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def mealy_run(const int64_t[:, ::1] img, const int64_t[:, ::1] nxt,
              const int64_t[::1] ready, int64_t state,
              const int64_t[::1] word, int64_t[::1] out):
    cdef Py_ssize_t pos, n = word.shape[0]
    cdef int64_t e
    for pos in range(n):
        if not ready[state]:
            return state, pos
        e = word[pos]
        out[pos] = img[state, e]
        state = nxt[state, e]
    return state, n


def mealy_run_many(const int64_t[:, ::1] img, const int64_t[:, ::1] nxt,
                   const int64_t[::1] ready, const int64_t[::1] states,
                   const int64_t[:, ::1] words, int64_t[:, ::1] out,
                   int64_t[::1] finals, Py_ssize_t start):
    cdef Py_ssize_t i, j, n = states.shape[0], L = words.shape[1]
    cdef int64_t s, e
    for i in range(start, n):
        s = states[i]
        for j in range(L):
            if not ready[s]:
                finals[i] = s
                return i
            e = words[i, j]
            out[i, j] = img[s, e]
            s = nxt[s, e]
        finals[i] = s
    return -1


def bs_sigma_scaled(int64_t n, int64_t scale,
                    const int64_t[::1] qa, const int64_t[::1] la,
                    const int64_t[::1] m, const int64_t[::1] qb,
                    const int64_t[::1] lb, int64_t[::1] out_q, int64_t[::1] out_k):
    cdef Py_ssize_t i, rows = qa.shape[0]
    cdef int64_t a, b, e, j
    cdef int64_t pw[64]
    pw[0] = 1
    for j in range(1, 64):
        pw[j] = pw[j - 1] * n
    for i in range(rows):
        a = la[i]
        b = lb[i]
        e = scale + a - b
        if e < 0 or scale + a >= 64:
            raise ValueError("scale out of range")
        out_q[i] = pw[scale] * qa[i] + pw[scale + a] * m[i] - pw[e] * qb[i]
        out_k[i] = a - b


def count_identity(const int64_t[::1] q, const int64_t[::1] k):
    cdef Py_ssize_t i, c = 0, n = q.shape[0]
    for i in range(n):
        if q[i] == 0 and k[i] == 0:
            c += 1
    out = np.empty(c, dtype=np.int64)
    cdef int64_t[::1] o = out
    c = 0
    for i in range(n):
        if q[i] == 0 and k[i] == 0:
            o[c] = i
            c += 1
    return out
