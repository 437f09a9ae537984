"""Partial dynamics on the infinite path space ``Σ_E``.

Clopen sets are finite unions of cylinders ``αΣ``; partial maps are finite
lists of prefix-rewriting pieces ``βx ↦ α(gx)``, stored as triples of ``S``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .action import SelfSimilarAction
from .graph import BoundaryPoint, Graph, GraphError, Path, concat, sample_points, strip_prefix
from .groups import trivial_group
from .isg import ZERO, InverseSemigroup, Triple
from .ugroup import BaumslagSolitar, BSElement, Sigma, alpha_beta_shape

Element = Hashable


class Conflict(Exception):
    """Two pieces of one ``θ_g`` disagree on their common domain."""

    def __init__(self, witness: dict):
        super().__init__(f"pieces disagree: {witness}")
        self.witness = witness


class NotInImage(Exception):
    """The group element has no ``αβ⁻¹`` form, so its domain is empty."""


# -- clopen sets -------------------------------------------------------------------


def _parent(graph: Graph, p: Path) -> Path:
    if len(p.edges) == 1:
        return Path(p.r, p.r, ())
    es = p.edges[:-1]
    return Path(p.r, graph.source_of[es[-1]], es)


def _proper_prefixes(p: Path) -> Iterable[tuple[int, tuple[int, ...]]]:
    for k in range(len(p.edges)):
        yield p.r, p.edges[:k]


def _is_prefix(p: Path, q: Path) -> bool:
    return strip_prefix(p, q) is not None


class ClopenSet:
    """``⋃ αΣ`` over a canonical antichain of prefixes."""

    __slots__ = ("graph", "prefixes")

    def __init__(self, graph: Graph, prefixes: Iterable[Path] = ()):
        self.graph = graph
        self.prefixes = self._canon(prefixes)

    @classmethod
    def full(cls, graph: Graph) -> "ClopenSet":
        return cls(graph, [graph.vertex_path(v) for v in range(graph.num_vertices)])

    @classmethod
    def empty(cls, graph: Graph) -> "ClopenSet":
        return cls(graph, ())

    def _canon(self, prefixes: Iterable[Path]) -> frozenset[Path]:
        gr = self.graph
        ps = set(prefixes)
        while True:
            keys = {(p.r, p.edges) for p in ps}
            ps = {p for p in ps if not any(k in keys for k in _proper_prefixes(p))}
            kids: dict[Path, set[Path]] = defaultdict(set)
            for p in ps:
                if p.edges:
                    kids[_parent(gr, p)].add(p)
            merged = False
            for par, ks in kids.items():
                if len(ks) == len(gr.successors(par.d)):
                    ps -= ks
                    ps.add(par)
                    merged = True
            if not merged:
                return frozenset(ps)

    # -- queries ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, ClopenSet) and self.prefixes == other.prefixes

    def __hash__(self) -> int:
        return hash(self.prefixes)

    def is_empty(self) -> bool:
        return not self.prefixes

    def is_full(self) -> bool:
        return self == ClopenSet.full(self.graph)

    def contains(self, x: BoundaryPoint) -> bool:
        r = self.graph.range_of[x.letter(0)]
        return any(p.r == r and x.startswith(p.edges) for p in self.prefixes)

    __contains__ = contains

    def depth(self) -> int:
        return max((len(p.edges) for p in self.prefixes), default=0)

    def cylinders(self, k: int) -> set[Path]:
        """Length-``k`` paths whose cylinder lies inside the set (``k ≥ depth``)."""
        out = set()
        for p in self.prefixes:
            if len(p.edges) > k:
                continue
            for q in self.graph.paths_from(p.d, k - len(p.edges)):
                out.add(concat(p, q))
        return out

    # -- Boolean algebra -------------------------------------------------------

    def union(self, other: "ClopenSet") -> "ClopenSet":
        return ClopenSet(self.graph, self.prefixes | other.prefixes)

    __or__ = union

    def intersection(self, other: "ClopenSet") -> "ClopenSet":
        out = []
        for p in self.prefixes:
            for q in other.prefixes:
                if _is_prefix(p, q):
                    out.append(q)
                elif _is_prefix(q, p):
                    out.append(p)
        return ClopenSet(self.graph, out)

    __and__ = intersection

    def complement(self) -> "ClopenSet":
        k = self.depth()
        covered = self.cylinders(k)
        return ClopenSet(self.graph, [p for p in self.graph.paths(k) if p not in covered])

    def difference(self, other: "ClopenSet") -> "ClopenSet":
        return self & other.complement()

    def render(self) -> str:
        gr = self.graph
        items = sorted(self.prefixes, key=lambda p: (len(p.edges), p.r, p.edges))
        if self.is_full():
            return "Σ"
        if not items:
            return "∅"
        return " ∪ ".join(f"{gr.render_path(p) if p.edges else '@' + gr.vertices[p.r]}Σ"
                          for p in items)

    def __repr__(self) -> str:
        return f"ClopenSet({self.render()})"


# -- partial maps ------------------------------------------------------------------


class PartialMap:
    """Finitely many pieces ``(α, g, β)``, each sending ``βx`` to ``α(gx)``."""

    def __init__(self, action: SelfSimilarAction, pieces: Iterable[Triple] = ()):
        self.action = action
        self.pieces = tuple(dict.fromkeys(pieces))

    @classmethod
    def identity(cls, action: SelfSimilarAction) -> "PartialMap":
        one = action.group.identity
        vs = [action.graph.vertex_path(v) for v in range(action.graph.num_vertices)]
        return cls(action, [Triple(v, one, v) for v in vs])

    @property
    def domain(self) -> ClopenSet:
        return ClopenSet(self.action.graph, [t.beta for t in self.pieces])

    @property
    def codomain(self) -> ClopenSet:
        return ClopenSet(self.action.graph, [t.alpha for t in self.pieces])

    def apply(self, x: BoundaryPoint) -> BoundaryPoint | None:
        r = self.action.graph.range_of[x.letter(0)]
        for a, g, b in self.pieces:
            if b.r == r and x.startswith(b.edges):
                y = self.action.act_point(g, x.shift(len(b.edges)))
                return y.prepend(a.edges)
        return None

    __call__ = apply

    def inverse(self) -> "PartialMap":
        return PartialMap(self.action, [Triple(b, self.action.group.inv(g), a)
                                        for a, g, b in self.pieces])

    def compose(self, other: "PartialMap") -> "PartialMap":
        """``self ∘ other`` on the largest domain where it makes sense."""
        S = InverseSemigroup(self.action)
        out = []
        for t in other.pieces:
            for s in self.pieces:
                st = S.multiply(s, t)
                if st is not ZERO:
                    out.append(st)
        return PartialMap(self.action, out)

    def is_injective(self) -> bool:
        """In-cylinders and out-cylinders are pairwise disjoint."""
        for side in ("alpha", "beta"):
            ps = [getattr(t, side) for t in self.pieces]
            for i, p in enumerate(ps):
                for q in ps[i + 1:]:
                    if _is_prefix(p, q) or _is_prefix(q, p):
                        return False
        return True

    def render(self) -> str:
        gr, grp = self.action.graph, self.action.group

        def rp(p):
            if p.edges or gr.num_vertices == 1:
                return gr.render_path(p)
            return "@" + gr.vertices[p.r]
        rows = [f"{rp(b)}x ↦ {rp(a)}·({grp.render(g)}x)" for a, g, b in self.pieces]
        return "\n".join(rows) if rows else "(empty)"


@dataclass
class FunctionMap:
    """A partial map given by a closed-form rule on a clopen domain."""

    domain: ClopenSet
    codomain: ClopenSet
    fn: Callable[[BoundaryPoint], BoundaryPoint]
    label: str = ""

    def apply(self, x: BoundaryPoint) -> BoundaryPoint | None:
        return self.fn(x) if self.domain.contains(x) else None

    __call__ = apply


def points_in(graph: Graph, cyl: Path, depth: int) -> list[BoundaryPoint]:
    """Eventually periodic sample points of ``cyl Σ`` down to ``depth``."""
    pts = []
    k = max(0, depth - len(cyl.edges))
    for q in graph.paths_from(cyl.d, k):
        base = concat(cyl, q)
        for x in sample_points(graph, 0):
            if graph.range_of[x.letter(0)] == base.d:
                pts.append(x.prepend(base.edges))
    return list(dict.fromkeys(pts))


def maps_agree(f, g, points: Iterable[BoundaryPoint]) -> BoundaryPoint | None:
    """First point where the two partial maps differ (definedness included)."""
    for x in points:
        if f.apply(x) != g.apply(x):
            return x
    return None


# -- partial action tables -----------------------------------------------------------


@dataclass
class PartialActionTable:
    """``h ↦ θ_h`` for finitely many group elements; missing entries are empty."""

    group: object
    graph: Graph
    maps: dict = field(default_factory=dict)

    def theta(self, h):
        return self.maps.get(h)

    def apply(self, h, x: BoundaryPoint) -> BoundaryPoint | None:
        m = self.maps.get(h)
        return None if m is None else m.apply(x)


def axioms_partial_action(tbl: PartialActionTable, points: Sequence[BoundaryPoint],
                          elements: Sequence | None = None):
    """``D_1 = Σ``, ``θ_1 = id``, ``θ_{h⁻¹} = θ_h⁻¹`` and ``θ_g∘θ_h ⊂ θ_{gh}`` on sample points."""
    from .verdict import Status, Verdict
    grp = tbl.group
    elements = list(tbl.maps) if elements is None else list(elements)
    bounds = {"points": len(points), "elements": len(elements)}
    one = grp.identity

    def fail(law, **w):
        return Verdict("partial_action", Status.VIOLATED, bounds, {"law": law, **w})

    for x in points:
        if tbl.apply(one, x) != x:
            return fail("theta_1", point=str(x))
    for h in elements:
        hi = grp.inv(h)
        for x in points:
            y = tbl.apply(h, x)
            if y is not None and tbl.apply(hi, y) != x:
                return fail("inverse", h=grp.render(h), point=str(x))
    checked = 0
    for g in elements:
        for h in elements:
            gh = grp.mul(g, h)
            for x in points:
                y = tbl.apply(h, x)
                if y is None:
                    continue
                z = tbl.apply(g, y)
                if z is None:
                    continue
                checked += 1
                if tbl.apply(gh, x) != z:
                    return fail("containment", g=grp.render(g), h=grp.render(h), point=str(x))
    return Verdict("partial_action", Status.OK, bounds, None, {"compositions": checked})


# -- merging σ-preimages -------------------------------------------------------------


def _merge_pieces(action: SelfSimilarAction, triples: Iterable[Triple], depth: int,
                  render) -> list[Triple]:
    """Maximal pieces of a union of ``θ_s``; overlaps must agree."""
    S = InverseSemigroup(action)
    one = action.group.identity
    kept: list[Triple] = []
    for t in sorted(triples, key=lambda t: len(t.beta.edges)):
        for k in kept:
            if not _is_prefix(k.beta, t.beta):
                continue
            e = Triple(t.beta, one, t.beta)
            if S.multiply(k, e) != t:
                pts = points_in(action.graph, t.beta, depth)
                f, g = PartialMap(action, [k]), PartialMap(action, [t])
                x = maps_agree(f, g, pts)
                if x is not None:
                    raise Conflict({"s": render(k), "t": render(t),
                                    "prefix": action.graph.render_path(t.beta) or "∅",
                                    "point": str(x)})
            break
        else:
            kept.append(t)
    return kept


class UniversalAction:
    """``θ_g = ⋃ θ_s`` over ``σ(s) = g``, searched within ``path_len`` and ``radius``."""

    def __init__(self, action: SelfSimilarAction, sigma: Sigma, path_len: int = 4,
                 radius: int = 16, depth: int = 8):
        self.action = action
        self.sigma = sigma
        self.depth = depth
        self.bounds = {"path_len": path_len, "radius": radius}
        self.S = InverseSemigroup(action)
        index: dict = defaultdict(list)
        triples = sorted(self.S.triples(path_len, radius),
                         key=lambda t: (len(t.alpha.edges) + len(t.beta.edges),
                                        t.alpha.edges, t.beta.edges))
        for t in triples:
            index[sigma(t)].append(t)
        self.index = dict(index)
        self._cache: dict = {}

    def preimages(self, g) -> list[Triple]:
        return self.index.get(g, [])

    def add_preimage(self, t: Triple) -> None:
        """Register a triple found outside the enumeration (e.g. a product)."""
        g = self.sigma(t)
        lst = self.index.setdefault(g, [])
        if t not in lst:
            lst.append(t)
            self._cache.pop(g, None)

    def theta(self, g) -> PartialMap:
        m = self._cache.get(g)
        if m is None:
            pieces = _merge_pieces(self.action, self.preimages(g), self.depth, self.S.render)
            m = self._cache[g] = PartialMap(self.action, pieces)
        return m

    def table(self, elements: Iterable) -> PartialActionTable:
        tbl = PartialActionTable(self.sigma.target, self.action.graph)
        for g in elements:
            m = self.theta(g)
            if m.pieces:
                tbl.maps[g] = m
        return tbl


def universal_action(action: SelfSimilarAction, sigma: Sigma, g, path_len: int = 4,
                     radius: int = 16, depth: int = 8) -> tuple[ClopenSet, PartialMap]:
    m = UniversalAction(action, sigma, path_len, radius, depth).theta(g)
    return m.domain, m


# -- the odometer in closed form -----------------------------------------------------


def lam(n: int, x: BoundaryPoint, power: int = 1) -> BoundaryPoint:
    """The adding machine ``λ^power``: find the first digit that is not ``n-1``,
    raise it, zero the digits before it.  ``(n-1)^∞ ↦ 0^∞``."""
    step = 1 if power >= 0 else -1
    top, low = (n - 1, 0) if step > 0 else (0, n - 1)
    for _ in range(abs(power)):
        span = len(x.head) + len(x.cycle)
        i = next((j for j in range(span) if x.letter(j) != top), None)
        if i is None:
            x = BoundaryPoint((), (low,))
        else:
            x = x.shift(i + 1).prepend((low,) * i + (x.letter(i) + step,))
    return x


def bs_shape_value(n: int, alpha: Sequence[int], beta: Sequence[int]) -> BSElement:
    """``αβ⁻¹`` in BS(1, n) with ``a_i = (i, 1)``."""
    bs = BaumslagSolitar(n)
    va = bs.make(sum(e * n ** j for j, e in enumerate(alpha)), 0, len(alpha))
    vb = bs.make(sum(e * n ** j for j, e in enumerate(beta)), 0, len(beta))
    return bs.mul(va, bs.inv(vb))


def _digits(n: int, value: int, length: int) -> tuple[int, ...]:
    return tuple((value // n ** j) % n for j in range(length))


def odometer_action(n: int, g: BSElement) -> FunctionMap:
    """Closed-form ``θ_g`` for the n-odometer.

    ``g = (q, k)``.  For ``k ≥ 0`` and integral ``q``, ``g = α_g Z^c`` with
    ``n_{α_g} = q mod n^k``: domain ``Σ``, ``x ↦ α_g λ^c(x)``.  For ``k < 0``
    the inverse has that form, ``g⁻¹ = β_g Z^c``: domain ``β_gΣ`` and
    ``β_g x ↦ λ^{-c}(x)``.  Any other ``g`` is outside the image of ``σ``.
    """
    gr = Graph.rose(n)
    bs = BaumslagSolitar(n)
    full = ClopenSet.full(gr)

    def split(h: BSElement):
        if h.q_exp != 0:
            raise NotInImage(bs.render(g))
        r = h.q_num % n ** h.k
        return _digits(n, r, h.k), (h.q_num - r) // n ** h.k

    if g.k >= 0:
        ag, c = split(g)
        cod = ClopenSet(gr, [gr.path(ag)]) if ag else full
        return FunctionMap(full, cod, lambda x: lam(n, x, c).prepend(ag), f"{ag}·λ^{c}")
    bg, c = split(bs.inv(g))
    dom = ClopenSet(gr, [gr.path(bg)])
    return FunctionMap(dom, full, lambda x: lam(n, x.shift(len(bg)), -c), f"λ^{-c}·{bg}⁻¹")


# -- Quigg–Raeburn and induced actions ---------------------------------------------


def _free_action(graph: Graph) -> SelfSimilarAction:
    return SelfSimilarAction(graph, trivial_group(), [], [], [], name="free")


def quigg_raeburn(graph: Graph, word: Sequence[tuple[int, int]]) -> PartialMap:
    """``θ_{αβ⁻¹}(βx) = αx`` for a free-group word over the edges."""
    act = _free_action(graph)
    one = act.group.identity
    shape = alpha_beta_shape(word)
    if shape is None:
        return PartialMap(act, [])
    alpha, beta = shape
    if not alpha and not beta:
        return PartialMap.identity(act)
    try:
        a = graph.path(alpha) if alpha else None
        b = graph.path(beta) if beta else None
    except GraphError:
        return PartialMap(act, [])
    if a is None:
        a = graph.vertex_path(b.d)
    if b is None:
        b = graph.vertex_path(a.d)
    if a.d != b.d:
        return PartialMap(act, [])
    return PartialMap(act, [Triple(a, one, b)])


@dataclass
class InducedAction:
    h: object
    bound: int
    domain: ClopenSet
    map: PartialMap
    stabilized: bool
    words: int
    growth: list = field(default_factory=list)


def shape_pairs(graph: Graph, bound: int) -> Iterable[tuple[Path, Path]]:
    """Reduced ``(α, β)`` with ``d(α) = d(β)`` and ``|α| + |β| ≤ bound``, by total
    length then lexicographically."""
    by_len = [graph.paths(k) for k in range(bound + 1)]
    by_len = [list(p) for p in by_len]
    for total in range(bound + 1):
        for la in range(total + 1):
            lb = total - la
            for a in by_len[la]:
                for b in by_len[lb]:
                    if a.d != b.d:
                        continue
                    if a.edges and b.edges and a.edges[-1] == b.edges[-1]:
                        continue
                    if not a.edges and not b.edges and a != b:
                        continue
                    yield a, b


class InducedIndex:
    """``φ``-values of all reduced ``αβ⁻¹`` up to ``bound``; ``φ(e) = σ(S_e)``."""

    def __init__(self, action: SelfSimilarAction, sigma: Sigma, bound: int, depth: int = 8):
        self.action = action
        self.sigma = sigma
        self.bound = bound
        self.depth = depth
        one = action.group.identity
        self.index: dict = defaultdict(list)
        self.words = 0
        for a, b in shape_pairs(action.graph, bound):
            t = Triple(a, one, b)
            self.words += 1
            self.index[sigma(t)].append(t)
        self._cache: dict = {}

    def phi(self, a: Path, b: Path):
        return self.sigma(Triple(a, self.action.group.identity, b))

    def theta(self, h) -> InducedAction:
        r = self._cache.get(h)
        if r is None:
            r = self._cache[h] = self._build(h)
        return r

    def _build(self, h) -> InducedAction:
        act, bound = self.action, self.bound
        hits = self.index.get(h, [])
        S = InverseSemigroup(act)
        growth = []
        dom = ClopenSet.empty(act.graph)
        for level in range(bound + 1):
            new = [t.beta for t in hits if len(t.alpha.edges) + len(t.beta.edges) == level]
            if new:
                dom = dom | ClopenSet(act.graph, new)
            growth.append(dom)
        pieces = _merge_pieces(act, hits, self.depth, S.render)
        m = PartialMap(act, pieces)
        half = growth[(bound + 1) // 2] if bound else growth[0]
        stabilized = dom.is_full() or dom == half
        return InducedAction(h, bound, m.domain, m, stabilized, self.words, growth)


def induced_action(action: SelfSimilarAction, sigma: Sigma, h, bound: int,
                   depth: int = 8) -> InducedAction:
    """``E_h = ⋃ D`` over reduced ``αβ⁻¹`` with ``φ(αβ⁻¹) = h``.

    ``φ`` sends each edge ``e`` to ``σ(S_e)``.  ``domain`` is where ``θ_h``
    is defined (the union of ``βΣ``), approximated at the given bound.  It is
    flagged ``stabilized`` when it is all of ``Σ`` or did not grow over the
    upper half of the bound.
    """
    return InducedIndex(action, sigma, bound, depth).theta(h)


def exhausting_surjectivity_witness(action: SelfSimilarAction, g, path_len: int = 4,
                                    sigma: Sigma | None = None) -> tuple[Path, Path]:
    """``(gα, α)`` with ``φ(g, α) = 1``, so ``σ(U_g) = σ(S_{gα} S*_α)``.

    Checks ``U_g S_α S*_{gα} = S_{gα} S*_{gα}`` in ``S`` (and the σ identity when
    a backend is given) before returning.
    """
    from .action import exhausting_witness
    alpha = exhausting_witness(action, g, path_len)
    if alpha is None:
        raise ValueError(f"no exhausting witness for {action.group.render(g)} within {path_len}")
    S = InverseSemigroup(action)
    one = action.group.identity
    ga = action.act(g, alpha)
    u = S.vertex_unit(g, alpha.r)
    sa = S.S(alpha)
    sga_star = S.star(S.S(ga))
    prod = S.multiply(S.multiply(u, sa), sga_star)
    if prod != Triple(ga, one, ga):
        raise AssertionError("U_g S_α S*_{gα} is not S_{gα} S*_{gα}")
    if sigma is not None:
        T = sigma.target
        lhs = sigma(u)
        rhs = T.mul(sigma(S.S(ga)), T.inv(sigma(sa)))
        if lhs != rhs:
            raise AssertionError("σ(U_g) differs from σ(S_{gα} S*_α)")
    return ga, alpha
