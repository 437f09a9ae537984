import os
import subprocess
import sys

import numpy as np
import pytest

from selfsim import _kernels_py, kernels
from selfsim.fixtures import odometer, two_vertex_swap

try:
    from selfsim import _kernels as compiled
except ImportError:  # pragma: no cover - depends on the build
    compiled = None

IMPLS = [_kernels_py] + ([compiled] if compiled else [])


def machine(action, radius):
    t = action.machine
    for g in action.group.ball(radius):
        t.expand(t.state(g))
    return t


@pytest.mark.parametrize("make", [lambda: odometer(3), two_vertex_swap])
def test_mealy_parity(make):
    a = make()
    t = machine(a, 4)
    rng = np.random.default_rng(0)
    n = 300
    img, nxt, ready = t.arrays()
    states = rng.integers(0, len(ready), size=n).astype(np.int64)
    words = rng.integers(0, a.graph.num_edges, size=(n, 6)).astype(np.int64)
    results = []
    for impl in IMPLS:
        out = np.zeros_like(words)
        finals = np.full(n, -7, dtype=np.int64)
        blocked = impl.mealy_run_many(img, nxt, ready, states, words, out, finals, 0)
        results.append((blocked, out.copy(), finals.copy()))
    for r in results[1:]:
        assert r[0] == results[0][0]
        stop = n if r[0] < 0 else r[0]
        assert np.array_equal(r[1][:stop], results[0][1][:stop])
        assert np.array_equal(r[2][:stop + (r[0] >= 0)], results[0][2][:stop + (r[0] >= 0)])


def test_mealy_single_parity():
    a = odometer(2)
    t = machine(a, 3)
    img, nxt, ready = t.arrays()
    word = np.array([1, 1, 0, 1], dtype=np.int64)
    outs = []
    for impl in IMPLS:
        out = np.zeros(4, dtype=np.int64)
        state, pos = impl.mealy_run(img, nxt, ready, t.state(1), word, out)
        outs.append((state, pos, tuple(out)))
    assert len(set(outs)) == 1
    assert outs[0][2] == (0, 0, 1, 1)


def test_run_many_matches_action():
    a = odometer(3)
    rng = np.random.default_rng(1)
    elems = a.group.ball(5)
    words = rng.integers(0, 3, size=(50, 5)).astype(np.int64)
    gs = [elems[i] for i in rng.integers(0, len(elems), size=50)]
    out, finals = a.machine.run_many([a.machine.state(g) for g in gs], words)
    for g, w, o, f in zip(gs, words, out, finals):
        img, phi = a.act_word(g, tuple(int(x) for x in w))
        assert tuple(o) == img and a.machine.states[f] == phi


def test_bs_sigma_parity():
    rng = np.random.default_rng(2)
    n, rows = 3, 500
    la = rng.integers(0, 5, size=rows).astype(np.int64)
    lb = rng.integers(0, 5, size=rows).astype(np.int64)
    qa = np.array([rng.integers(0, n ** k) for k in la], dtype=np.int64)
    qb = np.array([rng.integers(0, n ** k) for k in lb], dtype=np.int64)
    m = rng.integers(-10, 11, size=rows).astype(np.int64)
    res = []
    for impl in IMPLS:
        oq, ok = np.empty(rows, np.int64), np.empty(rows, np.int64)
        impl.bs_sigma_scaled(n, int(lb.max()), qa, la, m, qb, lb, oq, ok)
        res.append((oq, ok, np.asarray(impl.count_identity(oq, ok))))
    for r in res[1:]:
        for x, y in zip(r, res[0]):
            assert np.array_equal(x, y)


def test_scale_too_small_raises():
    one = np.ones(1, dtype=np.int64)
    zero = np.zeros(1, dtype=np.int64)
    for impl in IMPLS:
        with pytest.raises(ValueError):
            impl.bs_sigma_scaled(2, 0, zero, zero, zero, zero, one * 2,
                                 np.empty(1, np.int64), np.empty(1, np.int64))


def test_pure_fallback_selected_by_env():
    code = ("from selfsim import kernels; from selfsim.fixtures import odometer; "
            "from selfsim.ugroup import check_idempotent_pure, sigma_bs; a = odometer(2); "
            "print(kernels.BACKEND, check_idempotent_pure(a, sigma_bs(a), 3, 6).status.value)")
    env = dict(os.environ, SELFSIM_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    assert out == ["python", "ok"]


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")
    if compiled is not None:
        assert kernels.BACKEND == "cython" or os.environ.get("SELFSIM_PURE")
