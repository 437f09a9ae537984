"""Universal groups: presentations, concrete target groups and the map σ.

``U(S)`` is never built as a quotient.  It appears through an emitted
presentation and through concrete groups with a solvable word problem
(free groups, free-by-G semidirect products and ``BS(1, n)``).
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from . import kernels
from .action import SelfSimilarAction, odometer_order
from .graph import Path
from .groups import FreeGroup, GroupBackend, Integers, PresentationUnavailable
from .isg import ZERO, InverseSemigroup, Triple
from .verdict import Status, Verdict

Element = Hashable


# -- BS(1, n) -----------------------------------------------------------------------


class BSElement(NamedTuple):
    """``(q, k)`` with ``q = q_num · n^(-q_exp)`` in lowest terms."""

    q_num: int
    q_exp: int
    k: int


class BaumslagSolitar(GroupBackend):
    """``BS(1, n) = Z[1/n] ⋊ Z`` with ``(q,k)(q',k') = (q + n^k q', k + k')``.

    Generators ``a = (0, 1)`` and ``Z = (1, 0)``; relation ``Z = a^-1 Z^n a``.
    """

    def __init__(self, n: int, names: Sequence[str] = ("a", "Z")):
        if n < 2:
            raise ValueError("BS(1, n) needs n >= 2")
        self.n = n
        self.generator_names = tuple(names)
        self.identity = BSElement(0, 0, 0)
        self._gens = [BSElement(0, 0, 1), BSElement(1, 0, 0)]
        self.generators = tuple(self._gens)

    def make(self, num: int, exp: int, k: int) -> BSElement:
        n = self.n
        if num == 0:
            return BSElement(0, 0, k)
        while exp > 0 and num % n == 0:
            num //= n
            exp -= 1
        while exp < 0:
            num *= n
            exp += 1
        return BSElement(num, exp, k)

    def letter(self, i, sign):
        g = self._gens[i]
        return g if sign > 0 else self.inv(g)

    def mul(self, a, b):
        n = self.n
        # n^k · q'
        if a.k >= 0:
            bn, be = b.q_num * n ** a.k, b.q_exp
        else:
            bn, be = b.q_num, b.q_exp - a.k
        e = max(a.q_exp, be)
        num = a.q_num * n ** (e - a.q_exp) + bn * n ** (e - be)
        return self.make(num, e, a.k + b.k)

    def inv(self, a):
        # (-n^-k q, -k)
        if a.k >= 0:
            return self.make(-a.q_num, a.q_exp + a.k, -a.k)
        return self.make(-a.q_num * self.n ** (-a.k), a.q_exp, -a.k)

    def factor(self, g):
        # (num n^-e, k) = a^-e Z^num a^(e+k)
        out = [(0, -1)] * g.q_exp
        out += [(1, 1 if g.q_num > 0 else -1)] * abs(g.q_num)
        m = g.q_exp + g.k
        out += [(0, 1 if m > 0 else -1)] * abs(m)
        return _free_reduce(out)

    def render(self, g):
        q = str(g.q_num) if g.q_exp == 0 else f"{g.q_num}/{self.n}^{g.q_exp}"
        return f"({q}, {g.k})"

    def parse(self, text):
        t = text.strip()
        if t.startswith("("):
            q, k = (p.strip() for p in t[1:-1].split(","))
            if "/" in q:
                num, den = q.split("/")
                base, _, exp = den.partition("^")
                if int(base) != self.n:
                    raise ValueError(f"denominator must be a power of {self.n}")
                return self.make(int(num), int(exp or 1), int(k))
            return self.make(int(q), 0, int(k))
        return super().parse(text)

    def relations(self):
        return [([(1, 1)], [(0, -1)] + [(1, 1)] * self.n + [(0, 1)])]

    def params(self):
        return {"n": self.n}

    def coords(self, g: BSElement) -> tuple[float, int]:
        return g.q_num / self.n ** g.q_exp, g.k


def _free_reduce(word: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for x in word:
        if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
            out.pop()
        else:
            out.append(x)
    return out


# -- free-by-G -----------------------------------------------------------------------


class FreeSemidirect(GroupBackend):
    """``F(E^1) ⋊ G`` where ``G`` permutes the free generators.

    Elements are ``(reduced word, g)`` with ``(w, g)(w', g') = (w · g(w'), gg')``.
    """

    def __init__(self, letters: Sequence[str], group: GroupBackend,
                 permute: Callable[[Element, int], int]):
        self.free = FreeGroup(letters)
        self.base = group
        self.permute = permute
        self.generator_names = tuple(letters) + tuple(group.generator_names)
        self.identity = ((), group.identity)
        self.generators = tuple(((i + 1,), group.identity) for i in range(len(letters))) + \
            tuple(((), g) for g in group.generators)

    def _act(self, g, w):
        if g == self.base.identity:
            return w
        return tuple((self.permute(g, abs(x) - 1) + 1) * (1 if x > 0 else -1) for x in w)

    def mul(self, a, b):
        return (FreeGroup.reduce(a[0] + self._act(a[1], b[0])), self.base.mul(a[1], b[1]))

    def inv(self, a):
        gi = self.base.inv(a[1])
        return (self._act(gi, self.free.inv(a[0])), gi)

    def letter(self, i, sign):
        k = len(self.free.generators)
        if i < k:
            return ((i + 1) * sign,), self.base.identity
        return (), self.base.letter(i - k, sign)

    def factor(self, g):
        k = len(self.free.generators)
        return self.free.factor(g[0]) + [(i + k, s) for i, s in self.base.factor(g[1])]

    def render(self, g):
        w = self.free.render(g[0])
        return w if g[1] == self.base.identity else f"{w} · {self.base.render(g[1])}"

    def relations(self):
        raise PresentationUnavailable("semidirect target has no emitted presentation")


# -- free-group words (one-vertex alphabets) -----------------------------------------


def reduce_word(word: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Free reduction of ``(letter, ±1)`` words."""
    return tuple(_free_reduce(word))


def invert_word(word: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    return tuple((x, -s) for x, s in reversed(word))


def multiply_words(u, v) -> tuple[tuple[int, int], ...]:
    return reduce_word(list(u) + list(v))


def alpha_beta_shape(word: Sequence[tuple[int, int]]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """``(α, β)`` with ``word = αβ⁻¹`` after reduction, or None."""
    w = reduce_word(word)
    i = 0
    while i < len(w) and w[i][1] > 0:
        i += 1
    if any(s > 0 for _, s in w[i:]):
        return None
    alpha = tuple(x for x, _ in w[:i])
    beta = tuple(x for x, _ in reversed(w[i:]))
    return alpha, beta


def shape_word(alpha: Sequence[int], beta: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return reduce_word([(x, 1) for x in alpha] + [(x, -1) for x in reversed(beta)])


# -- presentations -------------------------------------------------------------------


@dataclass
class Presentation:
    generators: list[str]
    relations: list[tuple[list[str], list[str]]]
    group_relations: int = 0
    meta: dict[str, Any] = field(default_factory=dict)

    def to_text(self) -> str:
        def side(w):
            return " ".join(w) if w else "1"
        lines = ["generators: " + ", ".join(self.generators), "relations:"]
        lines += [f"  {side(l)} = {side(r)}" for l, r in self.relations]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"generators": self.generators,
                           "relations": [{"lhs": l, "rhs": r} for l, r in self.relations],
                           "group_relations": self.group_relations}, indent=2,
                          ensure_ascii=False)


def _symbols(action: SelfSimilarAction, edge_fmt: str, gen_fmt: str):
    es = [edge_fmt.format(e=name) for name in action.graph.edges]
    us = [gen_fmt.format(g=name) for name in action.group.generator_names]
    return es, us


def _u_word(us: list[str], letters) -> list[str]:
    return [us[i] if s > 0 else us[i] + "^-1" for i, s in letters]


def eval_s_word(S: InverseSemigroup, word: list[tuple[str, int, int]], v: int):
    """Evaluate a word of ``("s", e, 1)`` / ``("u", i, ±1)`` letters in ``S`` at source vertex ``v``.

    ``u_g`` is the sum of its vertex pieces, so the word is read right to left
    and each ``u`` letter contributes the piece over the current range.
    """
    act, grp = S.action, S.group
    t = Triple(Path(v, v, ()), grp.identity, Path(v, v, ()))
    for kind, i, sign in reversed(word):
        if t is ZERO:
            return ZERO
        if kind == "s":
            d = act.graph.source_of[i]
            t = S.multiply(Triple(act.graph.path((i,)), grp.identity, Path(d, d, ())), t)
        else:
            t = S.multiply(S.vertex_unit(grp.letter(i, sign), t.alpha.r), t)
    return t


def emit_presentation(action: SelfSimilarAction, edge_fmt: str = "s_{e}",
                      gen_fmt: str = "u_{g}") -> Presentation:
    """Generators ``s_e``, ``u_g``; relations ``u_g s_e = s_{ge} u_{φ(g,e)}`` and
    the relations of ``G``.  Each relation is checked in ``S`` before emission.
    """
    grp = action.group
    S = InverseSemigroup(action)
    es, us = _symbols(action, edge_fmt, gen_fmt)
    rels: list[tuple[list[str], list[str]]] = []
    for i, _ in enumerate(grp.generators):
        g = grp.letter(i, 1)
        for e in range(action.graph.num_edges):
            ge, phi = action.edge_step(g, e)
            phi_letters = grp.factor(phi)
            lw = [("u", i, 1), ("s", e, 1)]
            rw = [("s", ge, 1)] + [("u", j, s) for j, s in phi_letters]
            v = action.graph.source_of[e]
            lhs, rhs = eval_s_word(S, lw, v), eval_s_word(S, rw, v)
            if lhs is ZERO or lhs != rhs:
                raise AssertionError(f"relation for ({grp.render(g)}, {action.graph.edges[e]}) fails in S")
            rels.append(([us[i], es[e]], [es[ge]] + _u_word(us, phi_letters)))
    g_rels = grp.relations()
    for l, r in g_rels:
        for v in range(action.graph.num_vertices):
            lv = eval_s_word(S, [("u", i, s) for i, s in l], v)
            rv = eval_s_word(S, [("u", i, s) for i, s in r], v)
            if lv != rv:
                raise AssertionError("group relation fails in S")
        rels.append((_u_word(us, l), _u_word(us, r)))
    return Presentation(es + us, rels, len(g_rels), {"action": action.name})


# -- σ backends ----------------------------------------------------------------------


class Sigma:
    """``σ(α, g, β) = w(α) · h(g) · w(β)⁻¹`` into a concrete group.

    ``edge_images[e]`` is ``σ(S_e)`` and ``hom`` sends ``G`` to the target.
    """

    def __init__(self, action: SelfSimilarAction, target: GroupBackend,
                 edge_images: Sequence[Element], hom: Callable[[Element], Element], name: str):
        self.action = action
        self.target = target
        self.edge_images = list(edge_images)
        self.hom = hom
        self.name = name
        self._wcache: dict[tuple[int, ...], Element] = {}

    def path_value(self, edges: tuple[int, ...]) -> Element:
        v = self._wcache.get(edges)
        if v is None:
            t = self.target
            v = t.identity
            for e in edges:
                v = t.mul(v, self.edge_images[e])
            self._wcache[edges] = v
        return v

    def __call__(self, s: Triple) -> Element:
        if s is ZERO:
            raise ValueError("σ is undefined on 0")
        t = self.target
        a, g, b = s
        return t.mul(t.mul(self.path_value(a.edges), self.hom(g)), t.inv(self.path_value(b.edges)))

    def fast_identity_mask(self, alphas, ms, betas):  # pragma: no cover - overridden
        return None


class BSSigma(Sigma):
    """The odometer's ``σ``: edge ``i ↦ (i, 1)``, ``z^m ↦ (m, 0)``."""

    def __init__(self, action: SelfSimilarAction, n: int):
        bs = BaumslagSolitar(n)
        super().__init__(action, bs, [bs.make(i, 0, 1) for i in range(n)],
                         lambda m: bs.make(m, 0, 0), f"bs(1,{n})")
        self.n = n

    def number(self, edges: Sequence[int]) -> int:
        """``n_α``: base-n value with powers increasing left to right."""
        return sum(e * self.n ** j for j, e in enumerate(edges))

    def identity_mask(self, qa, la, m, qb, lb) -> np.ndarray:
        """Vectorized test ``σ(α, z^m, β) = 1`` through the compiled kernel."""
        scale = int(lb.max()) if len(lb) else 0
        out_q = np.empty(len(qa), dtype=np.int64)
        out_k = np.empty(len(qa), dtype=np.int64)
        kernels.bs_sigma_scaled(self.n, scale, qa, la, m, qb, lb, out_q, out_k)
        mask = np.zeros(len(qa), dtype=bool)
        mask[kernels.count_identity(out_q, out_k)] = True
        return mask


def sigma_bs(action: SelfSimilarAction) -> BSSigma:
    n = odometer_order(action)
    if n is None:
        raise ValueError(f"{action.name}: σ into BS(1, n) needs an odometer action")
    return BSSigma(action, n)


def _cocycle_is_generator(action: SelfSimilarAction) -> bool:
    grp = action.group
    for i, row in enumerate(action.cocycles):
        g = grp.letter(i, 1)
        if any(c != g for c in row):
            return False
    return True


def sigma_semidirect(action: SelfSimilarAction) -> Sigma:
    """For actions with ``φ(g, e) = g``: target ``F(E^1) ⋊ G``."""
    if not _cocycle_is_generator(action):
        raise ValueError(f"{action.name}: semidirect σ needs φ(g, e) = g")
    grp = action.group
    target = FreeSemidirect(list(action.graph.edges), grp, lambda g, e: action.edge_step(g, e)[0])
    imgs = [((e + 1,), grp.identity) for e in range(action.graph.num_edges)]
    return Sigma(action, target, imgs, lambda g: ((), g), "free-semidirect")


def sigma_collapsing(action: SelfSimilarAction) -> Sigma:
    """Every edge to the single letter ``x`` and every group element to 1.

    ``σ(α, g, β) = x^(|α|-|β|)`` is a prehomomorphism for any action and is
    never idempotent pure once some edge has a sibling.  Negative tests use it.
    """
    free = FreeGroup(["x"])
    return Sigma(action, free, [(1,)] * action.graph.num_edges, lambda g: (), "collapsing")


def sigma_for(action: SelfSimilarAction) -> Sigma | None:
    """The natural σ backend for a fixture, if one is known."""
    if odometer_order(action) is not None:
        return sigma_bs(action)
    if _cocycle_is_generator(action):
        return sigma_semidirect(action)
    return None


SIGMA_BACKENDS = {
    "bs": sigma_bs,
    "semidirect": sigma_semidirect,
    "collapsing": sigma_collapsing,
}


# -- checks --------------------------------------------------------------------------


def _group_range(action: SelfSimilarAction, radius: int) -> list[Element]:
    return action.group.ball(radius)


def check_idempotent_pure(action: SelfSimilarAction, sigma: Sigma, path_len: int = 4,
                          radius: int = 16, fast: bool = True) -> Verdict:
    """``σ(s) = 1 ⟺ s`` idempotent, over ``|α|, |β| ≤ path_len`` and ``g ∈ ball(radius)``.

    For ``Z`` the ball is ``|m| ≤ radius``.  The BS backend on a one-vertex
    graph uses the compiled kernel; everything else walks triples in ``S``.
    """
    bounds = {"path_len": path_len, "radius": radius}
    S = InverseSemigroup(action)
    if fast and isinstance(sigma, BSSigma) and action.graph.num_vertices == 1:
        return _pure_bs_fast(action, sigma, path_len, radius, bounds)
    one = sigma.target.identity
    count = 0
    for s in S.triples(path_len, radius):
        count += 1
        trivial = sigma(s) == one
        idem = S.multiply(s, s) == s
        if trivial != idem:
            return Verdict("idempotent_pure", Status.VIOLATED, bounds,
                           {"s": S.render(s), "sigma": sigma.target.render(sigma(s)),
                            "idempotent": idem}, {"elements": count, "sigma": sigma.name})
    return Verdict("idempotent_pure", Status.OK, bounds, None,
                   {"elements": count, "sigma": sigma.name})


def _pure_bs_fast(action, sigma: BSSigma, path_len, radius, bounds) -> Verdict:
    words = [p.edges for p in action.graph.paths_upto(path_len)]
    nums = np.array([sigma.number(w) for w in words], dtype=np.int64)
    lens = np.array([len(w) for w in words], dtype=np.int64)
    ms = np.arange(-radius, radius + 1, dtype=np.int64)
    W, M = len(words), len(ms)
    ia, im, ib = np.meshgrid(np.arange(W), np.arange(M), np.arange(W), indexing="ij")
    ia, im, ib = ia.ravel(), im.ravel(), ib.ravel()
    trivial = sigma.identity_mask(nums[ia], lens[ia], ms[im], nums[ib], lens[ib])
    # candidates for either side are multiplied out in S; any other triple
    # is neither σ-trivial nor of the idempotent shape (α, 1, α)
    idem_shape = (ms[im] == 0) & (ia == ib)
    S = InverseSemigroup(action)
    paths = action.graph.paths_upto(path_len)
    idem = np.zeros(len(ia), dtype=bool)
    for j in np.flatnonzero(trivial | idem_shape):
        s = Triple(paths[ia[j]], int(ms[im[j]]), paths[ib[j]])
        idem[j] = S.multiply(s, s) == s
    bad = np.flatnonzero(trivial != idem)
    info = {"elements": int(len(ia)), "sigma": sigma.name, "kernel": kernels.BACKEND,
            "identity_hits": int(trivial.sum())}
    if len(bad):
        j = bad[0]
        s = Triple(paths[ia[j]], int(ms[im[j]]), paths[ib[j]])
        return Verdict("idempotent_pure", Status.VIOLATED, bounds,
                       {"s": S.render(s), "sigma": sigma.target.render(sigma(s)),
                        "idempotent": bool(idem[j])}, info)
    return Verdict("idempotent_pure", Status.OK, bounds, None, info)


def check_prehomomorphism(action: SelfSimilarAction, sigma: Sigma, path_len: int = 4,
                          radius: int = 16, brute_path: int = 2, brute_radius: int = 3,
                          samples: int = 20_000, seed: int = 0) -> Verdict:
    """``σ(st) = σ(s)σ(t)`` for nonzero products within the bounds.

    For ``σ = w(α) h(g) w(β)⁻¹`` the law for ``s = (α,g,β)``, ``t = (βγ',h,ν)``
    cancels down to ``h(g) w(γ') = w(gγ') h(φ(g,γ'))``, and the other case to
    the same identity for ``(h⁻¹, β')``.  Every core within the bounds is
    checked, which settles all pairs exactly.  All pairs at the smaller
    ``brute_*`` bounds and a seeded sample at the full bounds are also
    multiplied out directly.
    """
    bounds = {"path_len": path_len, "radius": radius}
    S = InverseSemigroup(action)
    T = sigma.target
    grp = action.group
    ball = grp.ball(radius)
    cores = 0
    for g in ball:
        for p in action.graph.paths_upto(path_len):
            if p.is_vertex:
                continue
            gp, phi = action.act_restrict(g, p)
            lhs = T.mul(sigma.hom(g), sigma.path_value(p.edges))
            rhs = T.mul(sigma.path_value(gp.edges), sigma.hom(phi))
            cores += 1
            if lhs != rhs:
                return Verdict("prehomomorphism", Status.VIOLATED, bounds,
                               {"g": grp.render(g), "path": action.graph.render_path(p)},
                               {"cores": cores})

    def check_pair(s, t):
        st = S.multiply(s, t)
        if st is ZERO:
            return None
        if sigma(st) != T.mul(sigma(s), sigma(t)):
            return {"s": S.render(s), "t": S.render(t)}
        return False

    small = list(S.triples(brute_path, brute_radius))
    pairs = 0
    for s in small:
        for t in small:
            w = check_pair(s, t)
            if w is None:
                continue
            pairs += 1
            if w:
                return Verdict("prehomomorphism", Status.VIOLATED, bounds, w, {"cores": cores})
    rng = random.Random(seed)
    paths = action.graph.paths_upto(path_len)
    sampled = 0
    for _ in range(samples):
        a, b, n = rng.choice(paths), rng.choice(paths), rng.choice(paths)
        g, h = rng.choice(ball), rng.choice(ball)
        # make t's range path comparable with β so the product is nonzero
        cut = rng.randint(0, len(b))
        c = action.graph.path(b.edges[:cut], b.r) if cut else Path(b.r, b.r, ())
        ext = [q for q in action.graph.paths_from(c.d, rng.randint(0, path_len - cut))]
        if ext:
            q = rng.choice(ext)
            c = Path(c.r, q.d, c.edges + q.edges)
        if a.d != action.vertex_act(g, b.d) or c.d != action.vertex_act(h, n.d):
            continue
        w = check_pair(Triple(a, g, b), Triple(c, h, n))
        if w is None:
            continue
        sampled += 1
        if w:
            return Verdict("prehomomorphism", Status.VIOLATED, bounds, w, {"cores": cores})
    return Verdict("prehomomorphism", Status.OK, bounds, None,
                   {"cores": cores, "brute_pairs": pairs, "sampled_pairs": sampled,
                    "sigma": sigma.name})


def odometer_presentation_check(n: int) -> Verdict:
    """Every emitted odometer relation and ``Z = a_0^-1 Z^n a_0`` hold in BS(1, n)."""
    from .fixtures import odometer
    act = odometer(n)
    sig = sigma_bs(act)
    bs = sig.target
    pres = emit_presentation(act)
    values = {f"s_{i}": sig.edge_images[i] for i in range(n)}
    values["u_z"] = bs.make(1, 0, 0)

    def ev(word):
        v = bs.identity
        for tok in word:
            inv = tok.endswith("^-1")
            x = values[tok[:-3] if inv else tok]
            v = bs.mul(v, bs.inv(x) if inv else x)
        return v

    failures = [(l, r) for l, r in pres.relations if ev(l) != ev(r)]
    a0, Z = values["s_0"], values["u_z"]
    reduced = bs.mul(bs.mul(bs.inv(a0), bs.power(Z, n)), a0) == Z
    last = bs.mul(Z, values[f"s_{n - 1}"]) == bs.mul(a0, Z)
    info = {"relations": len(pres.relations), "reduced_relation": reduced, "wraparound": last}
    bounds = {"n": n}
    if failures or not reduced or not last:
        return Verdict("bs_presentation", Status.VIOLATED, bounds,
                       {"failed": [" ".join(l) + " = " + " ".join(r) for l, r in failures]}, info)
    return Verdict("bs_presentation", Status.OK, bounds, None, info)


def generation_check(sigma: Sigma, radius: int = 3) -> Verdict:
    """The σ-images of ``s_e`` and of the generators of ``G`` reach the
    target's own generators within ``radius`` letters."""
    act = sigma.action
    T = sigma.target
    gens = list(sigma.edge_images) + [sigma.hom(act.group.letter(i, 1))
                                      for i in range(len(act.group.generators))]
    step = gens + [T.inv(g) for g in gens]
    seen = {T.identity}
    frontier = [T.identity]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for g in step:
                y = T.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    want = [T.letter(i, 1) for i in range(len(T.generators))]
    missing = [T.render(w) for w in want if w not in seen]
    bounds = {"radius": radius}
    if missing:
        return Verdict("generation", Status.UNRESOLVED, bounds, missing, {"ball": len(seen)})
    return Verdict("generation", Status.OK, bounds, None, {"ball": len(seen)})


def bs_word_value(bs: BaumslagSolitar, word: Sequence[int]) -> BSElement:
    """Value of a positive word in ``a_i = (i, 1)``."""
    v = bs.identity
    for i in word:
        v = bs.mul(v, bs.make(i, 0, 1))
    return v


def _ab(word: Sequence[int]) -> str:
    return "".join("ab"[i] for i in word) or "∅"


def bs_claim_check(alpha: Sequence[int], beta: Sequence[int], nu: Sequence[int],
                   omega: Sequence[int], n: int = 2) -> Verdict:
    """If ``αβ⁻¹ = νω⁻¹`` then ``|α|-|β| = |ν|-|ω|`` and the longer side's
    initial segments agree.  Words are lists of letters ``0..n-1``."""
    bs = BaumslagSolitar(n)
    lhs = bs.mul(bs_word_value(bs, alpha), bs.inv(bs_word_value(bs, beta)))
    rhs = bs.mul(bs_word_value(bs, nu), bs.inv(bs_word_value(bs, omega)))
    bounds = {"n": n}
    info = {"equal": lhs == rhs}
    if lhs != rhs:
        return Verdict("bs_claim", Status.OK, bounds, None, info)
    d1, d2 = len(alpha) - len(beta), len(nu) - len(omega)
    ok = d1 == d2
    if ok and d1 > 0:
        ok = tuple(alpha[:d1]) == tuple(nu[:d1])
    if ok and d1 < 0:
        ok = tuple(beta[:-d1]) == tuple(omega[:-d1])
    if ok:
        return Verdict("bs_claim", Status.OK, bounds, None, info)
    return Verdict("bs_claim", Status.VIOLATED, bounds,
                   {"alpha": _ab(alpha), "beta": _ab(beta), "nu": _ab(nu), "omega": _ab(omega)}, info)


def bs_claim_scan(max_len: int = 4, n: int = 2) -> Verdict:
    """Exhaustive claim check over all words of length ``≤ max_len``."""
    bs = BaumslagSolitar(n)
    words = [tuple(w) for L in range(max_len + 1)
             for w in np.ndindex(*(n,) * L)] if max_len else [()]
    vals = {w: bs_word_value(bs, w) for w in words}
    groups: dict[BSElement, list[tuple]] = {}
    for a in words:
        for b in words:
            groups.setdefault(bs.mul(vals[a], bs.inv(vals[b])), []).append((a, b))
    checked = 0
    for reps in groups.values():
        a, b = reps[0]
        for nu, om in reps[1:]:
            checked += 1
            v = bs_claim_check(a, b, nu, om, n)
            if v.violated:
                return Verdict("bs_claim", Status.VIOLATED, {"max_len": max_len, "n": n},
                               v.witness, {"pairs": checked})
    return Verdict("bs_claim", Status.OK, {"max_len": max_len, "n": n}, None,
                   {"pairs": checked, "classes": len(groups)})


def u_power_as_shape(k: int, n: int = 2, max_len: int = 12) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Equal-length words ``α, β`` with ``αβ⁻¹ = σ(U^k)``, found by search."""
    bs = BaumslagSolitar(n)
    target = bs.make(k, 0, 0)
    for L in range(max_len + 1):
        if n ** L <= abs(k):
            continue
        for b_digits in np.ndindex(*(n,) * L):
            nb = sum(d * n ** j for j, d in enumerate(b_digits))
            na = nb + k
            if 0 <= na < n ** L:
                a_digits = tuple((na // n ** j) % n for j in range(L))
                b = tuple(b_digits)
                if bs.mul(bs_word_value(bs, a_digits), bs.inv(bs_word_value(bs, b))) == target:
                    return a_digits, b
    return None
