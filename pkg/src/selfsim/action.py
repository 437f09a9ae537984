"""Self-similar graph actions ``(G, E, φ)``.

The action is given on generators only: a vertex permutation, an edge
permutation and a cocycle value ``φ(g, e)`` per generator.  Inverse
generators are derived (``g⁻¹e`` is the unique preimage and
``φ(g⁻¹, e) = φ(g, g⁻¹e)⁻¹``); arbitrary elements act through their
factorization into generators, and paths through the recursion
``g(eα) = (ge) φ(g, e)α``.

Everything past the generator tables goes through a :class:`RestrictionTable`,
a lazily grown Mealy machine whose states are group elements.
"""
from __future__ import annotations

import itertools
from typing import Any, Hashable, Iterable, Sequence

import numpy as np

from . import kernels
from .graph import BoundaryPoint, Graph, Path
from .groups import GroupBackend
from .verdict import Status, Verdict

Element = Hashable

MAX_CYCLE_PASSES = 10_000


class ActionError(ValueError):
    pass


class SelfSimilarAction:
    """Generator tables for a self-similar graph action.

    ``vertex_images[i][v]``, ``edge_images[i][e]`` and ``cocycles[i][e]``
    describe generator ``i`` of ``group``.
    """

    def __init__(self, graph: Graph, group: GroupBackend,
                 vertex_images: Sequence[Sequence[int]],
                 edge_images: Sequence[Sequence[int]],
                 cocycles: Sequence[Sequence[Element]], name: str = ""):
        self.graph = graph
        self.group = group
        self.name = name
        ngen = len(group.generators)
        if not (len(vertex_images) == len(edge_images) == len(cocycles) == ngen):
            raise ActionError("one table row set per generator is required")
        self.vertex_images = tuple(tuple(row) for row in vertex_images)
        self.edge_images = tuple(tuple(row) for row in edge_images)
        self.cocycles = tuple(tuple(row) for row in cocycles)
        self._inv_vertex = []
        self._inv_edge = []
        for i in range(ngen):
            vi, ei = self.vertex_images[i], self.edge_images[i]
            if len(vi) != graph.num_vertices or sorted(vi) != list(range(graph.num_vertices)):
                raise ActionError(
                    f"generator {group.generator_names[i]!r} is not a bijection of E^0")
            if len(ei) != graph.num_edges or sorted(ei) != list(range(graph.num_edges)):
                raise ActionError(
                    f"generator {group.generator_names[i]!r} is not a bijection of E^1")
            if len(self.cocycles[i]) != graph.num_edges:
                raise ActionError("cocycle table must cover every edge")
            inv_v = [0] * graph.num_vertices
            for v, w in enumerate(vi):
                inv_v[w] = v
            inv_e = [0] * graph.num_edges
            for e, f in enumerate(ei):
                inv_e[f] = e
            self._inv_vertex.append(tuple(inv_v))
            self._inv_edge.append(tuple(inv_e))
        self._vcache: dict[tuple[Element, int], int] = {}
        self._ecache: dict[tuple[Element, int], tuple[int, Element]] = {}
        self.machine = RestrictionTable(self)
        defects = self.generator_defects()
        if defects:
            raise ActionError("; ".join(defects))

    # -- generator level ------------------------------------------------------

    def _gen_edge(self, i: int, sign: int, e: int) -> tuple[int, Element]:
        if sign > 0:
            return self.edge_images[i][e], self.cocycles[i][e]
        f = self._inv_edge[i][e]
        return f, self.group.inv(self.cocycles[i][f])

    def _gen_vertex(self, i: int, sign: int, v: int) -> int:
        return self.vertex_images[i][v] if sign > 0 else self._inv_vertex[i][v]

    def edge_step(self, g: Element, e: int) -> tuple[int, Element]:
        """``(ge, φ(g, e))`` computed from a factorization of ``g``."""
        key = (g, e)
        hit = self._ecache.get(key)
        if hit is not None:
            return hit
        grp = self.group
        cur, c = e, grp.identity
        for i, s in reversed(grp.factor(g)):
            cur, phi = self._gen_edge(i, s, cur)
            c = grp.mul(phi, c)
        self._ecache[key] = (cur, c)
        return cur, c

    def vertex_act(self, g: Element, v: int) -> int:
        key = (g, v)
        hit = self._vcache.get(key)
        if hit is None:
            hit = v
            for i, s in reversed(self.group.factor(g)):
                hit = self._gen_vertex(i, s, hit)
            self._vcache[key] = hit
        return hit

    # -- paths and points -------------------------------------------------------

    def act_restrict(self, g: Element, p: Path) -> tuple[Path, Element]:
        """``(gα, φ(g, α))``."""
        if not p.edges:
            w = self.vertex_act(g, p.r)
            return Path(w, w, ()), g
        m = self.machine
        out, s = m.run(m.state(g), p.edges)
        src = self.graph.source_of
        return Path(self.graph.range_of[out[0]], src[out[-1]], out), m.states[s]

    def act(self, g: Element, p: Path) -> Path:
        return self.act_restrict(g, p)[0]

    def restrict(self, g: Element, p: Path) -> Element:
        return self.act_restrict(g, p)[1]

    def act_word(self, g: Element, word: tuple[int, ...]) -> tuple[tuple[int, ...], Element]:
        """Action on arbitrary edge sequences (paths of the collapsed graph)."""
        m = self.machine
        out, s = m.run(m.state(g), word)
        return out, m.states[s]

    def act_point(self, g: Element, x: BoundaryPoint) -> BoundaryPoint:
        """Exact image of an eventually periodic point.

        Terminates when the restrictions met at the start of each cycle pass
        repeat, which holds for every finite-state action.
        """
        m = self.machine
        head, s = m.run(m.state(g), x.head)
        seen: dict[int, int] = {}
        passes: list[tuple[int, ...]] = []
        while s not in seen:
            if len(passes) > MAX_CYCLE_PASSES:
                raise ActionError("restrictions along the point do not become periodic")
            seen[s] = len(passes)
            o, s = m.run(s, x.cycle)
            passes.append(o)
        j = seen[s]
        pre = tuple(itertools.chain.from_iterable(passes[:j]))
        cyc = tuple(itertools.chain.from_iterable(passes[j:]))
        return BoundaryPoint(head + pre, cyc)

    def act_prefix(self, g: Element, x: BoundaryPoint | Sequence[int], k: int) -> tuple[int, ...]:
        """First ``k`` letters of ``gx``; ``x`` may be a point or a finite prefix stream."""
        pre = x.prefix(k) if isinstance(x, BoundaryPoint) else tuple(x)[:k]
        if len(pre) < k:
            raise ValueError("prefix stream shorter than requested depth")
        m = self.machine
        return m.run(m.state(g), pre)[0]

    # -- derived actions --------------------------------------------------------

    def collapse(self) -> "SelfSimilarAction":
        """The induced self-similar group on the one-vertex collapse."""
        g = self.graph.collapse()
        if g is self.graph:
            return self
        n = len(self.group.generators)
        return SelfSimilarAction(g, self.group, [(0,)] * n, self.edge_images, self.cocycles,
                                 name=(self.name + "~") if self.name else "")

    def with_tables(self, vertex_images=None, edge_images=None, cocycles=None) -> "SelfSimilarAction":
        return SelfSimilarAction(
            self.graph, self.group,
            self.vertex_images if vertex_images is None else vertex_images,
            self.edge_images if edge_images is None else edge_images,
            self.cocycles if cocycles is None else cocycles, name=self.name)

    def generator_defects(self) -> list[str]:
        """Generator-level equivariance and vertex compatibility (E4-E6 on E^1)."""
        out = []
        gr, grp = self.graph, self.group
        for i, name in enumerate(grp.generator_names):
            for e in range(gr.num_edges):
                f = self.edge_images[i][e]
                if gr.range_of[f] != self.vertex_images[i][gr.range_of[e]]:
                    out.append(f"r({name}·{gr.edges[e]}) != {name}·r({gr.edges[e]})")
                if gr.source_of[f] != self.vertex_images[i][gr.source_of[e]]:
                    out.append(f"d({name}·{gr.edges[e]}) != {name}·d({gr.edges[e]})")
                phi = self.cocycles[i][e]
                for v in range(gr.num_vertices):
                    if self.vertex_act(phi, v) != self.vertex_images[i][v]:
                        out.append(f"φ({name},{gr.edges[e]}) moves vertex "
                                   f"{gr.vertices[v]!r} differently from {name}")
                        break
        return out

    def render_path(self, p: Path) -> str:
        return self.graph.render_path(p)


class RestrictionTable:
    """Mealy machine over group elements: state ``g`` reading edge ``e``
    outputs ``ge`` and moves to ``φ(g, e)``.

    Rows are filled from the action on first use.  ``materialize`` fills a
    fixed set of states up front; ``set_edge``/``set_vertex`` overwrite single
    entries (used to seed corruptions for the axiom checker).
    """

    def __init__(self, action: SelfSimilarAction):
        self.action = action
        self.states: list[Element] = []
        self.index: dict[Element, int] = {}
        self.img: list[list[int]] = []
        self.nxt: list[list[int]] = []
        self.vimg: list[list[int]] = []
        self.ready: list[int] = []
        self._arrays = None

    @classmethod
    def materialize(cls, action: SelfSimilarAction, elements: Iterable[Element]) -> "RestrictionTable":
        t = cls(action)
        for g in elements:
            t.expand(t.state(g))
        return t

    def state(self, g: Element) -> int:
        s = self.index.get(g)
        if s is None:
            s = len(self.states)
            self.index[g] = s
            self.states.append(g)
            self.img.append([])
            self.nxt.append([])
            self.vimg.append([])
            self.ready.append(0)
            self._arrays = None
        return s

    def expand(self, s: int) -> None:
        if self.ready[s]:
            return
        a, g = self.action, self.states[s]
        row_img, row_nxt = [], []
        for e in range(a.graph.num_edges):
            f, phi = a.edge_step(g, e)
            row_img.append(f)
            row_nxt.append(self.state(phi))
        self.img[s] = row_img
        self.nxt[s] = row_nxt
        self.vimg[s] = [a.vertex_act(g, v) for v in range(a.graph.num_vertices)]
        self.ready[s] = 1
        self._arrays = None

    def set_edge(self, g: Element, e: int, image: int | None = None, cocycle: Element | None = None) -> None:
        s = self.state(g)
        self.expand(s)
        if image is not None:
            self.img[s][e] = image
        if cocycle is not None:
            self.nxt[s][e] = self.state(cocycle)
        self._arrays = None

    def set_vertex(self, g: Element, v: int, image: int) -> None:
        s = self.state(g)
        self.expand(s)
        self.vimg[s][v] = image

    def run(self, s: int, word: Sequence[int]) -> tuple[tuple[int, ...], int]:
        out = []
        img, nxt, ready = self.img, self.nxt, self.ready
        for e in word:
            if not ready[s]:
                self.expand(s)
            out.append(img[s][e])
            s = nxt[s][e]
        return tuple(out), s

    def vertex(self, s: int, v: int) -> int:
        if not self.ready[s]:
            self.expand(s)
        return self.vimg[s][v]

    def arrays(self):
        if self._arrays is None:
            n, E = len(self.states), self.action.graph.num_edges
            img = np.zeros((n, E), dtype=np.int64)
            nxt = np.zeros((n, E), dtype=np.int64)
            ready = np.asarray(self.ready, dtype=np.int64)
            for s in range(n):
                if self.ready[s]:
                    img[s] = self.img[s]
                    nxt[s] = self.nxt[s]
            self._arrays = (img, nxt, ready)
        return self._arrays

    def run_many(self, states: Sequence[int], words: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Run each state over the matching row of ``words`` (all one length)."""
        st = np.ascontiguousarray(states, dtype=np.int64)
        w = np.ascontiguousarray(words, dtype=np.int64)
        if w.ndim != 2:
            raise ValueError("words must be a 2-d array")
        out = np.zeros_like(w)
        finals = np.zeros(len(st), dtype=np.int64)
        start = 0
        while True:
            img, nxt, ready = self.arrays()
            blocked = kernels.mealy_run_many(img, nxt, ready, st, w, out, finals, start)
            if blocked < 0:
                return out, finals
            self.expand(int(finals[blocked]))
            # new states may have appeared; indices in st stay valid
            start = blocked


# -- decision procedures -----------------------------------------------------------


def _words_upto(n_letters: int, depth: int) -> list[tuple[int, ...]]:
    return [w for k in range(depth + 1) for w in itertools.product(range(n_letters), repeat=k)]


def axioms_report(action: SelfSimilarAction, depth: int = 4, radius: int = 3,
                  table: RestrictionTable | None = None) -> Verdict:
    """Exhaustive check of (E1)-(E8) and (SS1)-(SS8).

    Group elements range over the ball of ``radius``, paths and words over
    lengths ``<= depth``.  All values are read from ``table`` (by default
    the restriction table materialized over the ball of ``2*radius``), so a
    corrupted entry shows up as a broken identity.
    """
    grp, gr = action.group, action.graph
    ball = grp.ball(radius)
    if table is None:
        table = RestrictionTable.materialize(action, grp.ball(2 * radius))
    bounds = {"radius": radius, "depth": depth}
    idx = {g: table.state(g) for g in ball}
    one = grp.identity

    def run(g, word):
        out, s = table.run(table.state(g), word)
        return out, table.states[s]

    def fail(axiom, **w):
        wit = {"axiom": axiom}
        for k, v in w.items():
            if k in ("g", "h"):
                wit[k] = grp.render(v)
            elif k in ("path", "word", "prefix", "suffix"):
                wit[k] = gr.render_path(v) if isinstance(v, Path) else " ".join(gr.edges[e] for e in v)
            else:
                wit[k] = v
        return Verdict("axioms", Status.VIOLATED, bounds, wit)

    paths = gr.paths_upto(depth)

    def act_path(g, p):
        if not p.edges:
            w = table.vertex(table.state(g), p.r)
            return Path(w, w, ()), g
        out, h = run(g, p.edges)
        return Path(gr.range_of[out[0]], gr.source_of[out[-1]], out), h

    # bijectivity on each E^n and E^0
    for g in ball:
        s = idx[g]
        if sorted(table.vertex(s, v) for v in range(gr.num_vertices)) != list(range(gr.num_vertices)):
            return fail("bijective", g=g, level=0)
        for n in range(1, depth + 1):
            imgs = [run(g, p.edges)[0] for p in gr.paths(n)]
            if len(set(imgs)) != len(imgs):
                return fail("bijective", g=g, level=n)

    cache = {}
    for g in ball:
        for p in paths:
            cache[g, p] = act_path(g, p)

    def act_any(g, p):
        hit = cache.get((g, p))
        if hit is None:
            hit = cache[g, p] = act_path(g, p)
        return hit

    for g in ball:
        for p in paths:
            gp, phi = cache[g, p]
            # E3
            if not p.edges and phi != g:
                return fail("E3", g=g, path=p)
            # E4, E5
            if gp.r != table.vertex(idx[g], p.r):
                return fail("E4", g=g, path=p)
            if gp.d != table.vertex(idx[g], p.d):
                return fail("E5", g=g, path=p)
            # E6
            sp = table.state(phi)
            for v in range(gr.num_vertices):
                if table.vertex(sp, v) != table.vertex(idx[g], v):
                    return fail("E6", g=g, path=p, vertex=gr.vertices[v])
            # E7, E8 over every split α = α1 α2
            for k in range(1, len(p.edges)):
                a1 = Path(p.r, gr.source_of[p.edges[k - 1]], p.edges[:k])
                a2 = Path(a1.d, p.d, p.edges[k:])
                ga1, phi1 = act_any(g, a1)
                pa2, phi12 = act_any(phi1, a2)
                if ga1.edges + pa2.edges != gp.edges:
                    return fail("E7", g=g, prefix=a1, suffix=a2)
                if phi12 != phi:
                    return fail("E8", g=g, prefix=a1, suffix=a2)
        for h in ball:
            gh = grp.mul(g, h)
            for p in paths:
                hp, phi_h = cache[h, p]
                ghp, phi_gh = act_any(gh, p)
                g_hp, phi_g = act_any(g, hp)
                if ghp != g_hp:
                    return fail("E1", g=g, h=h, path=p)
                if phi_gh != grp.mul(phi_g, phi_h):
                    return fail("E2", g=g, h=h, path=p)

    # (SS1)-(SS8) on the collapsed action: every edge word counts as a path
    words = _words_upto(gr.num_edges, depth)
    wc = {}

    def aw(g, w):
        hit = wc.get((g, w))
        if hit is None:
            hit = wc[g, w] = run(g, w)
        return hit

    for w in words:
        out, phi = aw(one, w)
        if out != w:
            return fail("SS1", word=w)
        if phi != one:
            return fail("SS7", word=w)
    for g in ball:
        if aw(g, ())[0] != ():
            return fail("SS3", g=g)
        if aw(g, ())[1] != g:
            return fail("SS5", g=g)
        for w in words:
            gw, phi = aw(g, w)
            for k in range(1, len(w)):
                v, u = w[:k], w[k:]
                gv, phi_v = aw(g, v)
                pu, phi_vu = aw(phi_v, u)
                if gv + pu != gw:
                    return fail("SS4", g=g, prefix=v, suffix=u)
                if phi_vu != phi:
                    return fail("SS6", g=g, prefix=v, suffix=u)
            for h in ball:
                gh = grp.mul(g, h)
                hw, phi_h = aw(h, w)
                ghw, phi_gh = aw(gh, w)
                g_hw, phi_g = aw(g, hw)
                if ghw != g_hw:
                    return fail("SS2", g=g, h=h, word=w)
                if phi_gh != grp.mul(phi_g, phi_h):
                    return fail("SS8", g=g, h=h, word=w)
    return Verdict("axioms", Status.OK, bounds,
                   info={"elements": len(ball), "paths": len(paths), "words": len(words)})


def is_pseudo_free(action: SelfSimilarAction, radius: int = 4, path_len: int = 4) -> Verdict:
    """Bounded search for ``g ≠ 1`` and ``e`` with ``ge = e`` and ``φ(g, e) = 1``.

    The path form (``gw = w``, ``φ(g, w) = 1``) is searched as well, to
    ``path_len``; ``info["path_level"]`` holds its outcome and
    ``info["agree"]`` whether the two forms gave the same answer.
    """
    grp, gr = action.group, action.graph
    ball = [g for g in grp.ball(radius) if g != grp.identity]
    bounds = {"radius": radius, "path_len": path_len}
    edge_wit = None
    for g in ball:
        for e in range(gr.num_edges):
            f, phi = action.edge_step(g, e)
            if f == e and phi == grp.identity:
                edge_wit = {"g": grp.render(g), "edge": gr.edges[e]}
                break
        if edge_wit:
            break
    path_wit = None
    for n in range(1, path_len + 1):
        for p in gr.paths(n):
            for g in ball:
                q, phi = action.act_restrict(g, p)
                if q == p and phi == grp.identity:
                    path_wit = {"g": grp.render(g), "path": gr.render_path(p)}
                    break
            if path_wit:
                break
        if path_wit:
            break
    info = {"path_level": "violated" if path_wit else "ok",
            "agree": (edge_wit is None) == (path_wit is None)}
    if path_wit:
        info["path_witness"] = path_wit
    if edge_wit:
        return Verdict("pseudo_free", Status.VIOLATED, bounds, edge_wit, info)
    return Verdict("pseudo_free", Status.OK, bounds, None, info)


def exhausting_witness(action: SelfSimilarAction, g: Element, path_len: int) -> Path | None:
    """Shortest (then lexicographically least) ``α`` with ``φ(g, α) = 1``."""
    grp, gr = action.group, action.graph
    for n in range(path_len + 1):
        for p in gr.paths(n):
            if action.restrict(g, p) == grp.identity:
                return p
    return None


def is_exhausting(action: SelfSimilarAction, radius: int = 4, path_len: int = 4) -> Verdict:
    grp, gr = action.group, action.graph
    bounds = {"radius": radius, "path_len": path_len}
    witnesses: dict[str, str] = {}
    missing = []
    for g in grp.ball(radius):
        p = exhausting_witness(action, g, path_len)
        if p is None:
            missing.append(grp.render(g))
        else:
            witnesses[grp.render(g)] = gr.render_path(p)
    if missing:
        return Verdict("exhausting", Status.UNRESOLVED, bounds, missing, {"witnesses": witnesses})
    return Verdict("exhausting", Status.OK, bounds, witnesses)


def odometer_order(action: SelfSimilarAction) -> int | None:
    """``n`` when the action is the n-odometer on R_n (edges named 0..n-1)."""
    from .groups import Integers
    gr = action.graph
    if not isinstance(action.group, Integers) or gr.num_vertices != 1:
        return None
    n = gr.num_edges
    if n < 2 or list(gr.edges) != [str(i) for i in range(n)]:
        return None
    for i in range(n):
        want_img = (i + 1) % n
        want_phi = 1 if i == n - 1 else 0
        if action.edge_images[0][i] != want_img or action.cocycles[0][i] != want_phi:
            return None
    return n

