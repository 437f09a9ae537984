"""The inverse semigroup ``S_{G,E}`` and the Zappa–Szép monoid ``E* ⋈ G``."""
from __future__ import annotations

from typing import Hashable, Iterator, NamedTuple

from .action import SelfSimilarAction
from .graph import BoundaryPoint, Path, concat, q_map, strip_prefix
from .verdict import Status, Verdict

Element = Hashable


class Triple(NamedTuple):
    alpha: Path
    g: Element
    beta: Path


class _Zero:
    __slots__ = ()

    def __repr__(self) -> str:
        return "0"

    def __reduce__(self):
        return "ZERO"


ZERO = _Zero()


class ZSPair(NamedTuple):
    alpha: tuple[int, ...]
    g: Element


class InverseSemigroup:
    """``S_{G,E}``: triples ``(α, g, β)`` with ``d(α) = g d(β)``, plus ``ZERO``."""

    def __init__(self, action: SelfSimilarAction):
        self.action = action
        self.graph = action.graph
        self.group = action.group
        self._collapsed: InverseSemigroup | None = None

    # -- construction -----------------------------------------------------------

    def triple(self, alpha: Path, g: Element, beta: Path) -> Triple:
        if alpha.d != self.action.vertex_act(g, beta.d):
            raise ValueError("triple violates d(α) = g d(β)")
        return Triple(alpha, g, beta)

    def parse(self, text: str) -> Triple:
        """Parse ``(alpha, g, beta)``; paths as in :meth:`Graph.parse_path`."""
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"triple {text!r} must be parenthesized")
        parts = [p.strip() for p in body[1:-1].split(",")]
        if len(parts) != 3:
            raise ValueError(f"triple {text!r} needs three components")
        a = self._parse_path(parts[0])
        b = self._parse_path(parts[2])
        g = self.group.parse(parts[1])
        return self.triple(a, g, b)

    def _parse_path(self, s: str) -> Path:
        if s in ("", "∅"):
            return self.graph.path(())
        return self.graph.parse_path(s)

    def render(self, s) -> str:
        if s is ZERO:
            return "0"
        a, g, b = s
        return f"({self.graph.render_path(a)}, {self.group.render(g)}, {self.graph.render_path(b)})"

    def vertex_unit(self, g: Element, v: int) -> Triple:
        """``(g·v, g, v)``: the part of ``u_g`` living over vertex ``v``."""
        w = self.action.vertex_act(g, v)
        return Triple(Path(w, w, ()), g, Path(v, v, ()))

    def S(self, p: Path) -> Triple:
        """``S_α = (α, 1, d(α))``."""
        return Triple(p, self.group.identity, Path(p.d, p.d, ()))

    # -- operations ---------------------------------------------------------------

    def multiply(self, s, t):
        if s is ZERO or t is ZERO:
            return ZERO
        a, g, b = s
        c, h, n = t
        act = self.action
        grp = self.group
        rest = strip_prefix(b, c)
        if rest is not None:                       # γ = β γ'
            gc, phi = act.act_restrict(g, rest)
            return Triple(concat(a, gc), grp.mul(phi, h), n)
        rest = strip_prefix(c, b)
        if rest is not None:                       # β = γ β'
            hb, phi = act.act_restrict(grp.inv(h), rest)
            return Triple(a, grp.mul(g, grp.inv(phi)), concat(n, hb))
        return ZERO

    def star(self, s):
        if s is ZERO:
            return ZERO
        a, g, b = s
        return Triple(b, self.group.inv(g), a)

    def is_idempotent(self, s) -> bool:
        return self.multiply(s, s) == s

    def leq(self, s, t) -> bool:
        """Natural order: ``s ≤ t`` iff ``s = s s* t``."""
        return self.multiply(self.multiply(s, self.star(s)), t) == s

    # -- enumeration --------------------------------------------------------------

    def triples(self, path_len: int, radius: int) -> Iterator[Triple]:
        gr, act = self.graph, self.action
        paths = gr.paths_upto(path_len)
        ball = self.group.ball(radius)
        for a in paths:
            for g in ball:
                for b in paths:
                    if a.d == act.vertex_act(g, b.d):
                        yield Triple(a, g, b)

    def idempotents(self, path_len: int) -> list[Triple]:
        one = self.group.identity
        return [Triple(p, one, p) for p in self.graph.paths_upto(path_len)]

    def comparable_idempotents(self, beta: Path, path_len: int) -> Iterator[Triple]:
        """Idempotents ``(γ, 1, γ)`` with ``γ`` a prefix or an extension of ``β``."""
        one = self.group.identity
        gr = self.graph
        yield Triple(Path(beta.r, beta.r, ()), one, Path(beta.r, beta.r, ()))
        for k in range(1, len(beta.edges) + 1):
            p = Path(beta.r, gr.source_of[beta.edges[k - 1]], beta.edges[:k])
            yield Triple(p, one, p)
        for n in range(1, path_len - len(beta.edges) + 1):
            for ext in gr.paths_from(beta.d, n):
                p = concat(beta, ext)
                yield Triple(p, one, p)

    # -- collapse -----------------------------------------------------------------

    @property
    def collapsed(self) -> "InverseSemigroup":
        if self._collapsed is None:
            c = self.action.collapse()
            self._collapsed = self if c is self.action else InverseSemigroup(c)
        return self._collapsed

    def iota(self, s):
        """``(α, g, β) ↦ (Q(α), g, Q(β))`` into the collapsed semigroup."""
        if s is ZERO:
            return ZERO
        a, g, b = s
        return Triple(q_map(a), g, q_map(b))

    # -- germs and filters ----------------------------------------------------------

    def point_idempotent(self, x: BoundaryPoint, k: int) -> Triple:
        """``(x↾k, 1, x↾k)``."""
        pre = x.prefix(k)
        if not pre:
            v = self.graph.range_of[x.letter(0)]
            p = Path(v, v, ())
        else:
            p = Path(self.graph.range_of[pre[0]], self.graph.source_of[pre[-1]], pre)
        return Triple(p, self.group.identity, p)


# -- Zappa–Szép ----------------------------------------------------------------------


def zs_multiply(action: SelfSimilarAction, p: ZSPair, q: ZSPair) -> ZSPair:
    """``(α, g)(β, h) = (α gβ, φ(g, β) h)``; one-vertex graphs only."""
    if action.graph.num_vertices != 1:
        raise ValueError("Zappa–Szép product needs a one-vertex graph")
    gb, phi = action.act_word(p.g, q.alpha)
    return ZSPair(p.alpha + gb, action.group.mul(phi, q.g))


def zs_pairs(action: SelfSimilarAction, path_len: int, radius: int) -> list[ZSPair]:
    gr = action.graph
    words = [p.edges for p in gr.paths_upto(path_len)]
    return [ZSPair(w, g) for w in words for g in action.group.ball(radius)]


def _render_zs(act: SelfSimilarAction, p: ZSPair) -> dict:
    return {"alpha": " ".join(act.graph.edges[e] for e in p.alpha) or "∅",
            "g": act.group.render(p.g)}


def is_cancellative(action: SelfSimilarAction, radius: int = 4, path_len: int = 4) -> Verdict:
    """Bounded search for failures of left or right cancellation in ``E* ⋈ G``.

    Multi-vertex actions are collapsed first.  The search is reduced without
    loss: ``(α,g)(β,h) = (α',g')(β,h)`` forces ``|α| = |α'|``, hence
    ``α = α'``, ``gβ = g'β`` and ``φ(g,β) = φ(g',β)``, so right cancellation
    fails inside the bounds iff some ``β`` admits two such ``g``.  On the left,
    ``(β,h)(α,g) = (β,h)(α',g')`` needs ``hα = hα'``.
    """
    act = action.collapse()
    grp = act.group
    bounds = {"radius": radius, "path_len": path_len}
    words = [p.edges for p in act.graph.paths_upto(path_len)]
    ball = grp.ball(radius)
    one = grp.identity
    right_wit = left_wit = None
    for b in words:
        seen: dict = {}
        for g in ball:
            key = act.act_word(g, b)
            other = seen.setdefault(key, g)
            if other is not g:
                right_wit = {"p": _render_zs(act, ZSPair((), other)),
                             "p_prime": _render_zs(act, ZSPair((), g)),
                             "q": _render_zs(act, ZSPair(b, one))}
                break
        if right_wit:
            break
    for h in ball:
        seen = {}
        for w in words:
            img = act.act_word(h, w)[0]
            other = seen.setdefault(img, w)
            if other is not w:
                left_wit = {"p": _render_zs(act, ZSPair(other, one)),
                            "p_prime": _render_zs(act, ZSPair(w, one)),
                            "q": _render_zs(act, ZSPair((), h))}
                break
        if left_wit:
            break
    info = {"left": "violated" if left_wit else "ok", "right": "violated" if right_wit else "ok",
            "pairs": len(words) * len(ball)}
    if left_wit or right_wit:
        wit = dict(side="right", **right_wit) if right_wit else dict(side="left", **left_wit)
        return Verdict("cancellative", Status.VIOLATED, bounds, wit, info)
    return Verdict("cancellative", Status.OK, bounds, None, info)


def cancellation_failures(action: SelfSimilarAction, radius: int, path_len: int) -> dict:
    """Brute-force count of colliding products over all pairs; a test oracle."""
    act = action.collapse()
    pairs = zs_pairs(act, path_len, radius)
    out = {"left": 0, "right": 0}
    for q in pairs:
        right = {zs_multiply(act, p, q) for p in pairs}
        left = {zs_multiply(act, q, p) for p in pairs}
        out["right"] += len(pairs) - len(right)
        out["left"] += len(pairs) - len(left)
    return out


def is_estar_unitary(action: SelfSimilarAction, radius: int = 4, path_len: int = 4,
                     exhaustive: bool = False) -> Verdict:
    """Bounded search for ``s`` and idempotent ``e`` with ``se`` a nonzero
    idempotent but ``s`` not idempotent.

    Only idempotents comparable with ``β`` can give ``se ≠ 0``.  Unless
    ``exhaustive`` is set, two further cases are skipped: when ``e`` sits above
    ``β`` the product is ``s`` itself, and a product ``(α gγ', φ, βγ')`` can
    only be idempotent when ``|α| = |β|``.
    """
    S = InverseSemigroup(action)
    bounds = {"radius": radius, "path_len": path_len}
    one = action.group.identity
    gr = action.graph
    checked = 0
    paths = gr.paths_upto(path_len)
    ball = action.group.ball(radius)
    for a in paths:
        for g in ball:
            for b in paths:
                if a.d != action.vertex_act(g, b.d):
                    continue
                if g == one and a == b:
                    continue
                if not exhaustive and len(a) != len(b):
                    continue
                s = Triple(a, g, b)
                if exhaustive:
                    es = S.comparable_idempotents(b, path_len)
                else:
                    es = (Triple(p, one, p) for n in range(1, path_len - len(b) + 1)
                          for p in gr.extensions(b, n))
                for e in es:
                    se = S.multiply(s, e)
                    checked += 1
                    if se is not ZERO and se.g == one and se.alpha == se.beta:
                        return Verdict("estar_unitary", Status.VIOLATED, bounds,
                                       {"s": S.render(s), "e": S.render(e), "se": S.render(se)},
                                       {"products": checked})
    return Verdict("estar_unitary", Status.OK, bounds, None, {"products": checked})
