"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Signatures and results match the compiled module exactly; the test suite
runs both against each other.
"""
from __future__ import annotations

import numpy as np


def mealy_run(img, nxt, ready, state, word, out):
    """Run the transducer from ``state`` over ``word``, writing into ``out``.

    Returns ``(state, pos)``; ``pos < len(word)`` means ``state`` has no row
    yet and the caller must expand it and resume at ``pos``.
    """
    img_l, nxt_l, ready_l = img.tolist(), nxt.tolist(), ready.tolist()
    w = word.tolist()
    for pos in range(len(w)):
        if not ready_l[state]:
            return state, pos
        e = w[pos]
        out[pos] = img_l[state][e]
        state = nxt_l[state][e]
    return state, len(w)


def mealy_run_many(img, nxt, ready, states, words, out, finals, start):
    """Batch of equal-length runs.  Returns -1 when every row from ``start``
    on finished, otherwise the first row index blocked on an unexpanded
    state (stored in ``finals[i]``)."""
    img_l, nxt_l, ready_l = img.tolist(), nxt.tolist(), ready.tolist()
    st = states.tolist()
    ws = words.tolist()
    n = len(st)
    for i in range(start, n):
        s = st[i]
        row = ws[i]
        o = []
        for e in row:
            if not ready_l[s]:
                finals[i] = s
                return i
            o.append(img_l[s][e])
            s = nxt_l[s][e]
        if o:
            out[i, :] = o
        finals[i] = s
    return -1


def bs_sigma_scaled(n, scale, qa, la, m, qb, lb, out_q, out_k):
    """Scaled coordinates of ``bs(alpha) Z^m bs(beta)^-1`` in BS(1, n).

    The first coordinate is multiplied by ``n**scale`` so it stays an
    integer; requires ``scale >= lb[i] - la[i]`` for every row.
    """
    qa_l, la_l, m_l, qb_l, lb_l = qa.tolist(), la.tolist(), m.tolist(), qb.tolist(), lb.tolist()
    for i in range(len(qa_l)):
        a, b = la_l[i], lb_l[i]
        e = scale + a - b
        if e < 0:
            raise ValueError("scale too small")
        out_q[i] = (n ** scale) * qa_l[i] + (n ** (scale + a)) * m_l[i] - (n ** e) * qb_l[i]
        out_k[i] = a - b


def count_identity(q, k):
    """Indices where the scaled BS element is the identity."""
    return np.flatnonzero((np.asarray(q) == 0) & (np.asarray(k) == 0))
