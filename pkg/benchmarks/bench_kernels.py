"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--rows 20000] [--len 16] [--repeat 5]

Both backends get identical inputs; outputs are checked for equality before
timings are reported.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from selfsim import _kernels_py
from selfsim.fixtures import odometer

try:
    from selfsim import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def mealy_inputs(rows, length, rng):
    act = odometer(3)
    table = act.machine
    grp = act.group
    for g in grp.ball(6):
        table.expand(table.state(g))
    img, nxt, ready = table.arrays()
    # keep only states whose successors are expanded so no run blocks
    closed = [s for s in range(len(ready)) if ready[s] and ready[nxt[s]].all()]
    states = rng.choice(closed, size=rows).astype(np.int64)
    words = rng.integers(0, 3, size=(rows, length), dtype=np.int64)
    # close the table over every state reachable along the sampled words
    table.run_many(states, words)
    return table.arrays(), states, words


def bench_mealy(impl, arrays, states, words):
    img, nxt, ready = arrays
    out = np.zeros_like(words)
    finals = np.zeros(len(states), dtype=np.int64)
    assert impl.mealy_run_many(img, nxt, ready, states, words, out, finals, 0) == -1
    return out, finals


def bs_inputs(rows, rng, n=2, max_len=8):
    la = rng.integers(0, max_len + 1, size=rows, dtype=np.int64)
    lb = rng.integers(0, max_len + 1, size=rows, dtype=np.int64)
    qa = (rng.integers(0, 1 << 40, size=rows, dtype=np.int64) % (n ** la)).astype(np.int64)
    qb = (rng.integers(0, 1 << 40, size=rows, dtype=np.int64) % (n ** lb)).astype(np.int64)
    m = rng.integers(-16, 17, size=rows, dtype=np.int64)
    return n, int(lb.max()), qa, la, m, qb, lb


def bench_bs(impl, args):
    n, scale, qa, la, m, qb, lb = args
    out_q = np.empty(len(qa), dtype=np.int64)
    out_k = np.empty(len(qa), dtype=np.int64)
    impl.bs_sigma_scaled(n, scale, qa, la, m, qb, lb, out_q, out_k)
    return out_q, out_k, impl.count_identity(out_q, out_k)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=20000)
    ap.add_argument("--len", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    rng = np.random.default_rng(a.seed)

    impls = [("python", _kernels_py)] + ([("cython", _compiled)] if _compiled else [])
    arrays, states, words = mealy_inputs(a.rows, a.len, rng)
    bsargs = bs_inputs(a.rows, rng)
    cases = [
        (f"mealy_run_many  rows={a.rows} len={a.len}", lambda k: bench_mealy(k, arrays, states, words)),
        (f"bs_sigma_scaled rows={a.rows}", lambda k: bench_bs(k, bsargs)),
    ]
    print(f"{'kernel':<36}{'backend':<10}{'best (ms)':>12}{'speedup':>10}")
    for label, fn in cases:
        ref = fn(_kernels_py)
        base = None
        for name, impl in impls:
            res = fn(impl)
            for x, y in zip(ref, res):
                if not np.array_equal(np.asarray(x), np.asarray(y)):
                    raise SystemExit(f"{label}: {name} disagrees with python")
            t = best_of(lambda: fn(impl), a.repeat)
            base = base or t
            print(f"{label:<36}{name:<10}{t * 1e3:>12.2f}{base / t:>9.1f}x")
    if not _compiled:
        print("compiled extension not available; only the fallback was timed")


if __name__ == "__main__":
    main()
