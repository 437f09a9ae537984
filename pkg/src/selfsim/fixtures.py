"""Small self-similar actions used throughout the tests and the CLI."""
from __future__ import annotations

from .action import SelfSimilarAction
from .graph import Graph
from .groups import FiniteGroup, Integers, trivial_group


def odometer(n: int = 2) -> SelfSimilarAction:
    """The adding machine: ``z·i = i+1`` with carry ``φ(z, n-1) = z``."""
    if n < 2:
        raise ValueError("odometer needs n >= 2")
    g = Graph.rose(n)
    imgs = [tuple((i + 1) % n for i in range(n))]
    coc = [tuple(1 if i == n - 1 else 0 for i in range(n))]
    return SelfSimilarAction(g, Integers("z"), [(0,)], imgs, coc, name=f"odometer-{n}")


def z2_trivial(n: int = 2) -> SelfSimilarAction:
    """Z/2 acting trivially on R_n with trivial cocycle (not pseudo-free)."""
    grp = FiniteGroup.cyclic(2, "t")
    g = Graph.rose(n)
    return SelfSimilarAction(g, grp, [(0,)], [tuple(range(n))], [(grp.identity,) * n],
                             name="z2-trivial")


def z_static(n: int = 2) -> SelfSimilarAction:
    """Z fixing every edge with ``φ(z, e) = z`` (pseudo-free, not exhausting)."""
    g = Graph.rose(n)
    return SelfSimilarAction(g, Integers("z"), [(0,)], [tuple(range(n))], [(1,) * n],
                             name="z-static")


def two_vertex_swap() -> SelfSimilarAction:
    """Z/2 swapping the two vertices of a four-edge graph.

    Edges ``a: v←v``, ``b: w←w``, ``c: v←w``, ``d: w←v`` (written ``r←d``);
    the generator swaps ``a↔b`` and ``c↔d`` with ``φ(t, ·) = t``.
    """
    gr = Graph.from_edges(["v", "w"], {"a": ("v", "v"), "b": ("w", "w"),
                                       "c": ("v", "w"), "d": ("w", "v")})
    grp = FiniteGroup.cyclic(2, "t")
    t = grp.generators[0]
    return SelfSimilarAction(gr, grp, [(1, 0)], [(1, 0, 3, 2)], [(t, t, t, t)],
                             name="two-vertex-swap")


def free_cuntz(n: int = 2) -> SelfSimilarAction:
    """Trivial group on R_n: the Cuntz inverse semigroup."""
    return SelfSimilarAction(Graph.rose(n), trivial_group(), [], [], [], name=f"cuntz-{n}")


FIXTURES = {
    "odometer-2": lambda: odometer(2),
    "odometer-3": lambda: odometer(3),
    "odometer-4": lambda: odometer(4),
    "z2-trivial": z2_trivial,
    "z-static": z_static,
    "two-vertex-swap": two_vertex_swap,
    "cuntz-2": free_cuntz,
}
