"""Transformation groupoids, groupoids of germs, and sampled isomorphism checks."""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Hashable, NamedTuple, Sequence

from .action import SelfSimilarAction
from .graph import BoundaryPoint, Graph, Path, primitive_cycles, render_point
from .groups import FreeGroup
from .isg import ZERO, InverseSemigroup, Triple
from .paction import Conflict, InducedIndex, PartialMap, UniversalAction
from .ugroup import Sigma
from .verdict import Status, Verdict

Element = Hashable


class Germ(NamedTuple):
    """``(g, x)`` with ``x`` in the domain of ``θ_g``."""

    g: Element
    x: BoundaryPoint


class SGerm(NamedTuple):
    """``[s, x]`` with ``x ∈ D_{s*s} = βΣ``."""

    s: Triple
    x: BoundaryPoint


class TransformationGroupoid:
    """``G ⋉_θ X`` for a partial action given as ``theta(g, x) -> point | None``."""

    def __init__(self, group, theta: Callable[[Element, BoundaryPoint], BoundaryPoint | None]):
        self.group = group
        self.theta = theta

    def valid(self, p: Germ) -> bool:
        return self.theta(p.g, p.x) is not None

    def r(self, p: Germ) -> BoundaryPoint:
        y = self.theta(p.g, p.x)
        if y is None:
            raise ValueError("not a germ: point outside the domain")
        return y

    def d(self, p: Germ) -> BoundaryPoint:
        return p.x

    def unit(self, x: BoundaryPoint) -> Germ:
        return Germ(self.group.identity, x)

    def inverse(self, p: Germ) -> Germ:
        return Germ(self.group.inv(p.g), self.r(p))

    def compose(self, p: Germ, q: Germ) -> Germ | None:
        """``(g, x)(h, y) = (gh, y)`` when ``θ_h(y) = x``; None otherwise."""
        if self.theta(q.g, q.x) != p.x:
            return None
        return Germ(self.group.mul(p.g, q.g), q.x)


def germ_compose(G: TransformationGroupoid, p: Germ, q: Germ) -> Germ | None:
    return G.compose(p, q)


# -- germs of S ----------------------------------------------------------------------


def s_theta(action: SelfSimilarAction, s: Triple, x: BoundaryPoint) -> BoundaryPoint | None:
    return PartialMap(action, [s]).apply(x)


def sgerm_compose(S: InverseSemigroup, p: SGerm, q: SGerm) -> SGerm | None:
    if s_theta(S.action, q.s, q.x) != p.x:
        return None
    return SGerm(S.multiply(p.s, q.s), q.x)


def sgerm_inverse(S: InverseSemigroup, p: SGerm) -> SGerm:
    return SGerm(S.star(p.s), s_theta(S.action, p.s, p.x))


@dataclass
class GermEquality:
    status: str          # "equal" | "distinct" | "unknown"
    witness: object = None
    depth: int = 0


def sgerm_equal(S: InverseSemigroup, p: SGerm, q: SGerm, depth: int = 8) -> GermEquality:
    """Decide ``[s, x] = [t, y]`` by searching ``e = (x↾k, 1, x↾k)`` for ``k ≤ depth``.

    Distinctness is certified by different base points or different images.
    """
    if p.x != q.x:
        return GermEquality("distinct", "base points differ", depth)
    act = S.action
    if s_theta(act, p.s, p.x) != s_theta(act, q.s, q.x):
        return GermEquality("distinct", "images differ", depth)
    for k in range(depth + 1):
        e = S.point_idempotent(p.x, k)
        a, b = S.multiply(p.s, e), S.multiply(q.s, e)
        if a is not ZERO and a == b:
            return GermEquality("equal", S.render(e), depth)
    return GermEquality("unknown", None, depth)


# -- sampling ------------------------------------------------------------------------


class PointSampler:
    """Random eventually periodic points inside a cylinder."""

    def __init__(self, graph: Graph, rng: random.Random, depth: int = 8, max_cycle: int = 2):
        self.graph = graph
        self.rng = rng
        self.depth = depth
        self.cycles = {}
        for v in range(graph.num_vertices):
            k = max_cycle
            cs = primitive_cycles(graph, v, k)
            while not cs and k < 2 * graph.num_vertices + 2:
                k += 1
                cs = primitive_cycles(graph, v, k)
            self.cycles[v] = cs

    def point(self, cyl: Path) -> BoundaryPoint:
        gr, rng = self.graph, self.rng
        edges = list(cyl.edges)
        v = cyl.d
        for _ in range(rng.randint(0, max(0, self.depth - len(edges)))):
            e = rng.choice(gr.successors(v))
            edges.append(e)
            v = gr.source_of[e]
        return BoundaryPoint(tuple(edges), rng.choice(self.cycles[v]))


def _by_beta(triples, key: Callable | None = None) -> dict:
    out = defaultdict(list)
    for t in triples:
        k = (t.beta.r, t.beta.edges) if key is None else (t.beta.r, t.beta.edges, key(t))
        out[k].append(t)
    return out


def _covering(buckets: dict, graph: Graph, x: BoundaryPoint, max_len: int, value=None) -> list:
    r = graph.range_of[x.letter(0)]
    out = []
    for k in range(max_len + 1):
        key = (r, x.prefix(k)) if value is None else (r, x.prefix(k), value)
        out.extend(buckets.get(key, ()))
    return out


def groupoid_axioms_check(G: TransformationGroupoid, chains: Sequence[tuple[Germ, Germ, Germ]]) -> Verdict:
    """Associativity, range/source, unit and inverse laws on composable triples."""
    grp = G.group
    bounds = {"samples": len(chains)}

    def fail(law, p):
        return Verdict("groupoid_axioms", Status.VIOLATED, bounds,
                       {"law": law, "g": grp.render(p.g), "x": str(p.x)})

    for a, b, c in chains:
        ab, bc = G.compose(a, b), G.compose(b, c)
        if ab is None or bc is None:
            return fail("composable", a)
        if G.compose(ab, c) != G.compose(a, bc):
            return fail("associativity", a)
        if G.r(ab) != G.r(a) or G.d(ab) != G.d(b):
            return fail("range_source", a)
        for p in (a, b, c):
            inv = G.inverse(p)
            if G.compose(inv, p) != G.unit(G.d(p)) or G.compose(p, inv) != G.unit(G.r(p)):
                return fail("inverse", p)
            if G.compose(G.unit(G.r(p)), p) != p or G.compose(p, G.unit(G.d(p))) != p:
                return fail("unit", p)
    return Verdict("groupoid_axioms", Status.OK, bounds)


def universal_groupoid(ua: UniversalAction) -> TransformationGroupoid:
    def theta(g, x):
        return ua.theta(g).apply(x)
    return TransformationGroupoid(ua.sigma.target, theta)


def sample_chains(ua: UniversalAction, n: int, depth: int, seed: int,
                  max_len: int = 4) -> list[tuple[Germ, Germ, Germ]]:
    """Composable triples ``(a, b, c)`` in the universal-action groupoid."""
    rng = random.Random(seed)
    act = ua.action
    sampler = PointSampler(act.graph, rng, depth)
    triples = [t for ts in ua.index.values() for t in ts]
    buckets = _by_beta(triples)
    S = InverseSemigroup(act)
    chains = []
    while len(chains) < n:
        t = rng.choice(triples)
        y = sampler.point(t.beta)
        seq = [(t, Germ(ua.sigma(t), y))]
        x = s_theta(act, t, y)
        for _ in range(2):
            s = rng.choice(_covering(buckets, act.graph, x, max_len))
            seq.append((s, Germ(ua.sigma(s), x)))
            x = s_theta(act, s, x)
        (tc, c), (tb, b), (ta, a) = seq
        # composites are σ-preimages too, possibly beyond the enumeration bounds
        for u in (S.multiply(tb, tc), S.multiply(ta, tb), S.multiply(S.multiply(ta, tb), tc)):
            ua.add_preimage(u)
        chains.append((a, b, c))
    return chains


def germ_iso_check(action: SelfSimilarAction, sigma: Sigma, samples: int = 500,
                   depth: int = 8, seed: int = 0, path_len: int = 4, radius: int = 16,
                   ua: UniversalAction | None = None) -> Verdict:
    """``[s, ξ] ↦ (σ(s), ξ)`` respects composition, inverses and units on sampled
    germs, lands in the universal-action groupoid, and is injective on the
    σ-fibre of each sample."""
    bounds = {"samples": samples, "depth": depth, "path_len": path_len, "radius": radius}
    ua = ua or UniversalAction(action, sigma, path_len, radius, depth)
    S = InverseSemigroup(action)
    T = sigma.target
    rng = random.Random(seed)
    sampler = PointSampler(action.graph, rng, depth)
    triples = [t for ts in ua.index.values() for t in ts]
    buckets = _by_beta(triples)
    value = {t: g for g, ts in ua.index.items() for t in ts}
    fibres = _by_beta(triples, value.__getitem__)
    counts = defaultdict(int)

    def fail(law, **w):
        return Verdict("germ_iso", Status.VIOLATED, bounds, {"law": law, **w}, dict(counts))

    def psi_image_ok(p: SGerm) -> bool:
        g = sigma(p.s)
        try:
            y = ua.theta(g).apply(p.x)
        except Conflict:
            return False
        return y is not None and y == s_theta(action, p.s, p.x)

    for _ in range(samples):
        t = rng.choice(triples)
        y = sampler.point(t.beta)
        q = SGerm(t, y)
        x = s_theta(action, t, y)
        s = rng.choice(_covering(buckets, action.graph, x, path_len))
        p = SGerm(s, x)
        # injectivity on the fibre of σ(s) over x
        for u in _covering(fibres, action.graph, x, path_len, value[s]):
            if u == s:
                continue
            res = sgerm_equal(S, p, SGerm(u, x), depth)
            counts["fibre_" + res.status] += 1
            if res.status == "distinct":
                return fail("injective", s=S.render(s), t=S.render(u),
                            x=render_point(action.graph, x), reason=res.witness)
        for g in (p, q):
            if not psi_image_ok(g):
                return fail("image", s=S.render(g.s), x=render_point(action.graph, g.x))
        pq = sgerm_compose(S, p, q)
        if pq is None:
            return fail("composable", s=S.render(s), t=S.render(t))
        if (sigma(pq.s), pq.x) != (T.mul(sigma(s), sigma(t)), y):
            return fail("composition", s=S.render(s), t=S.render(t))
        inv = sgerm_inverse(S, p)
        if (sigma(inv.s), inv.x) != (T.inv(sigma(s)), s_theta(action, s, x)):
            return fail("inverse", s=S.render(s))
        e = S.point_idempotent(x, rng.randint(0, depth))
        if sigma(e) != T.identity:
            return fail("unit", e=S.render(e))
        counts["pairs"] += 1
    return Verdict("germ_iso", Status.OK, bounds, None, dict(counts))


# -- Φ : F(E¹) ⋉ Σ → U ⋉ Σ ---------------------------------------------------------


def _shape_to_free(a: Path, b: Path) -> tuple[int, ...]:
    return FreeGroup.reduce([e + 1 for e in a.edges] + [-(e + 1) for e in reversed(b.edges)])


def phi_iso_check(action: SelfSimilarAction, sigma: Sigma, bound: int = 6, depth: int = 8,
                  samples: int = 500, seed: int = 0, exhaust_radius: int = 2) -> Verdict:
    """``Φ(αβ⁻¹, βx) = (φ(αβ⁻¹), βx)`` against the induced action.

    On sampled composable pairs of Quigg–Raeburn germs: Φ lands in the induced
    groupoid, is multiplicative, and is injective on the fibre of each sample.
    Surjectivity: every sampled induced germ has a preimage, and ``σ(U_g)`` is in
    the image of ``φ`` for ``g`` in a small ball (via exhausting witnesses).
    """
    from .paction import exhausting_surjectivity_witness
    bounds = {"bound": bound, "depth": depth, "samples": samples}
    idx = InducedIndex(action, sigma, bound, depth)
    T = sigma.target
    gr = action.graph
    rng = random.Random(seed)
    sampler = PointSampler(gr, rng, depth)
    one = action.group.identity
    pieces = [t for ts in idx.index.values() for t in ts]
    buckets = _by_beta(pieces)
    counts = defaultdict(int)

    def fail(law, **w):
        return Verdict("phi_iso", Status.VIOLATED, bounds, {"law": law, **w}, dict(counts))

    def qr(t: Triple, y):
        return y.shift(len(t.beta.edges)).prepend(t.alpha.edges)

    def induced(h, y):
        try:
            return idx.theta(h).map.apply(y)
        except Conflict:
            return None

    for _ in range(samples):
        t2 = rng.choice(pieces)
        y = sampler.point(t2.beta)
        x = qr(t2, y)
        t1 = rng.choice(_covering(buckets, gr, x, bound))
        h1, h2 = sigma(t1), sigma(t2)
        for t, pt in ((t1, x), (t2, y)):
            if induced(sigma(t), pt) != qr(t, pt):
                return fail("image", word=idx_render(gr, t), x=render_point(gr, pt))
        # product in the free group and its image
        w = FreeGroup.reduce(_shape_to_free(t1.alpha, t1.beta) + _shape_to_free(t2.alpha, t2.beta))
        phi_w = T.identity
        for letter in w:
            e = abs(letter) - 1
            v = sigma(Triple(gr.path((e,)), one, gr.vertex_path(gr.source_of[e])))
            phi_w = T.mul(phi_w, v if letter > 0 else T.inv(v))
        if phi_w != T.mul(h1, h2):
            return fail("homomorphism", w1=idx_render(gr, t1), w2=idx_render(gr, t2))
        z = qr(t1, x)
        if len(w) <= bound:
            counts["products_checked"] += 1
            if induced(phi_w, y) != z:
                return fail("product_germ", w1=idx_render(gr, t1), w2=idx_render(gr, t2))
        # injectivity: other shapes with the same φ-value covering y
        for u in _covering(buckets, gr, y, bound):
            if u != t2 and sigma(u) == h2 and _shape_to_free(u.alpha, u.beta) != \
                    _shape_to_free(t2.alpha, t2.beta):
                return fail("injective", w=idx_render(gr, t2), w_prime=idx_render(gr, u),
                            x=render_point(gr, y))
        # surjectivity at (h2, y): some shape of value h2 is defined at y
        if not any(sigma(u) == h2 for u in _covering(buckets, gr, y, bound)):
            return fail("surjective", h=T.render(h2), x=render_point(gr, y))
        counts["pairs"] += 1
    reached = 0
    for g in action.group.ball(exhaust_radius):
        try:
            ga, a = exhausting_surjectivity_witness(action, g, bound, sigma)
        except ValueError:
            continue
        u = InverseSemigroup(action).vertex_unit(g, a.r)
        if sigma(u) != sigma(Triple(ga, one, a)):
            return fail("exhausting", g=action.group.render(g))
        reached += 1
    counts["unitaries_in_image"] = reached
    return Verdict("phi_iso", Status.OK, bounds, None, dict(counts))


def idx_render(graph: Graph, t: Triple) -> str:
    a = graph.render_path(t.alpha) if t.alpha.edges else "∅"
    b = graph.render_path(t.beta) if t.beta.edges else "∅"
    return f"{a}·({b})⁻¹"


def slice_check(action: SelfSimilarAction, maps: dict, depth: int = 8) -> Verdict:
    """For each ``θ_h`` and each domain piece, ``r`` is injective on the
    depth-``k`` sample points of the piece (``d`` is injective trivially)."""
    from .paction import points_in
    checked = 0
    for h, m in maps.items():
        for t in m.pieces:
            pts = points_in(action.graph, t.beta, depth)
            imgs = [m.apply(x) for x in pts]
            checked += len(pts)
            if len(set(imgs)) != len(pts):
                return Verdict("slice", Status.VIOLATED, {"depth": depth},
                               {"piece": str(t)}, {"points": checked})
    return Verdict("slice", Status.OK, {"depth": depth}, None, {"points": checked})
