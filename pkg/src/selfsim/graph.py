"""Finite directed graphs, finite paths and eventually periodic infinite paths.

Paths read left to right: ``x1 x2 ... xn`` is composable when
``d(x_i) == r(x_{i+1})``.  A path carries its range ``r`` and source ``d``
so that length-0 paths at different vertices stay distinct.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence


class Path(NamedTuple):
    r: int
    d: int
    edges: tuple[int, ...]

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """A finite directed graph ``(E^0, E^1, r, d)`` with dense internal ids.

    ``vertices`` and ``edges`` hold the opaque names from the input; every
    other method works with their positions.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    range_of: tuple[int, ...]
    source_of: tuple[int, ...]
    _vindex: dict = field(init=False, repr=False, compare=False)
    _eindex: dict = field(init=False, repr=False, compare=False)
    _out: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        if len(set(self.edges)) != len(self.edges):
            raise GraphError("duplicate edge id")
        if not (len(self.range_of) == len(self.source_of) == len(self.edges)):
            raise GraphError("range/source maps must cover every edge")
        nv = len(self.vertices)
        for e, (r, d) in enumerate(zip(self.range_of, self.source_of)):
            if not (0 <= r < nv and 0 <= d < nv):
                raise GraphError(f"edge {self.edges[e]!r} has an endpoint outside E^0")
        object.__setattr__(self, "_vindex", {v: i for i, v in enumerate(self.vertices)})
        object.__setattr__(self, "_eindex", {e: i for i, e in enumerate(self.edges)})
        # edges that may follow a path ending at vertex v, i.e. r(e) == v
        out = [[] for _ in range(nv)]
        for e, r in enumerate(self.range_of):
            out[r].append(e)
        object.__setattr__(self, "_out", tuple(tuple(x) for x in out))

    @classmethod
    def from_edges(cls, vertices: Sequence[str], edges: dict[str, tuple[str, str]]) -> "Graph":
        """Build from ``{edge: (r, d)}`` using vertex and edge names."""
        vindex = {v: i for i, v in enumerate(vertices)}
        names = tuple(edges)
        try:
            rng = tuple(vindex[edges[e][0]] for e in names)
            src = tuple(vindex[edges[e][1]] for e in names)
        except KeyError as exc:
            raise GraphError(f"unknown vertex {exc.args[0]!r}") from None
        return cls(tuple(vertices), names, rng, src)

    @classmethod
    def rose(cls, n: int) -> "Graph":
        """R_n: one vertex and ``n`` loops named ``0..n-1``."""
        return cls(("v",), tuple(str(i) for i in range(n)), (0,) * n, (0,) * n)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def vertex_id(self, name: str) -> int:
        try:
            return self._vindex[name]
        except KeyError:
            raise GraphError(f"unknown vertex {name!r}") from None

    def edge_id(self, name: str) -> int:
        try:
            return self._eindex[name]
        except KeyError:
            raise GraphError(f"unknown edge {name!r}") from None

    def successors(self, v: int) -> tuple[int, ...]:
        """Edges ``e`` with ``r(e) == v`` (those that can extend a path ending at v)."""
        return self._out[v]

    # -- paths -------------------------------------------------------------

    def vertex_path(self, v: int) -> Path:
        return Path(v, v, ())

    def path(self, edges: Iterable[int], vertex: int | None = None) -> Path:
        """Validated path from edge ids; ``vertex`` anchors a length-0 path."""
        es = tuple(edges)
        if not es:
            if vertex is None:
                if self.num_vertices != 1:
                    raise GraphError("length-0 path needs an anchoring vertex")
                vertex = 0
            return Path(vertex, vertex, ())
        for a, b in zip(es, es[1:]):
            if self.source_of[a] != self.range_of[b]:
                raise GraphError(
                    f"edges {self.edges[a]!r},{self.edges[b]!r} are not composable")
        if vertex is not None and vertex != self.range_of[es[0]]:
            raise GraphError("anchor vertex differs from the range of the path")
        return Path(self.range_of[es[0]], self.source_of[es[-1]], es)

    def parse_path(self, text: str) -> Path:
        """Parse a path written as edge names.

        Whitespace separates names; a single token over single-character edge
        names is split into characters.  A vertex is written ``@name``; the
        empty string is the unique vertex of a one-vertex graph.
        """
        text = text.strip()
        if text.startswith("@"):
            return self.vertex_path(self.vertex_id(text[1:]))
        return self.path(self._tokens(text))

    def _tokens(self, text: str) -> list[int]:
        toks = text.split()
        if len(toks) == 1 and toks[0] not in self._eindex and all(len(e) == 1 for e in self.edges):
            toks = list(toks[0])
        return [self.edge_id(t) for t in toks]

    def render_path(self, p: Path) -> str:
        if not p.edges:
            return "∅" if self.num_vertices == 1 else "@" + self.vertices[p.r]
        sep = "" if all(len(e) == 1 for e in self.edges) else " "
        return sep.join(self.edges[e] for e in p.edges)

    def paths(self, n: int) -> Iterator[Path]:
        """All paths of length exactly ``n`` in lexicographic edge order."""
        if n == 0:
            for v in range(self.num_vertices):
                yield self.vertex_path(v)
            return
        stack = [((e,), self.source_of[e]) for e in reversed(range(self.num_edges))]
        while stack:
            es, d = stack.pop()
            if len(es) == n:
                yield Path(self.range_of[es[0]], d, es)
                continue
            for e in reversed(self._out[d]):
                stack.append((es + (e,), self.source_of[e]))

    def paths_upto(self, n: int) -> list[Path]:
        return [p for k in range(n + 1) for p in self.paths(k)]

    def extensions(self, p: Path, n: int) -> Iterator[Path]:
        """Paths ``q`` of length ``n`` with ``r(q) == d(p)``."""
        for q in self.paths_from(p.d, n):
            yield q

    def paths_from(self, v: int, n: int) -> Iterator[Path]:
        if n == 0:
            yield self.vertex_path(v)
            return
        for e in self._out[v]:
            for rest in self.paths_from(self.source_of[e], n - 1):
                yield Path(v, rest.d, (e,) + rest.edges)

    def validate(self, boundary_ready: bool = False) -> list[str]:
        """Defects of the graph; empty means ok.

        With ``boundary_ready`` every vertex must receive and emit an edge
        (no sources, no sinks).
        """
        defects = []
        if boundary_ready:
            for v, name in enumerate(self.vertices):
                source = v not in self.range_of
                sink = v not in self.source_of
                if source and sink:
                    defects.append(f"vertex {name!r} is source and sink")
                elif source:
                    defects.append(f"vertex {name!r} is a source")
                elif sink:
                    defects.append(f"vertex {name!r} is a sink")
        return defects

    def collapse(self) -> "Graph":
        """The one-vertex graph on the same edges."""
        if self.num_vertices == 1:
            return self
        n = self.num_edges
        return Graph(("∅",), self.edges, (0,) * n, (0,) * n)


def concat(a: Path, b: Path) -> Path | None:
    """``ab`` when ``r(b) == d(a)``, else None (not the zero of S)."""
    if b.r != a.d:
        return None
    if not a.edges:
        return b
    if not b.edges:
        return a
    return Path(a.r, b.d, a.edges + b.edges)


def strip_prefix(p: Path, q: Path) -> Path | None:
    """``q'`` with ``q == p q'``, or None when ``p`` is not a prefix of ``q``."""
    if q.r != p.r:
        return None
    n = len(p.edges)
    if q.edges[:n] != p.edges:
        return None
    if n == len(q.edges):
        return Path(p.d, p.d, ())
    rest = q.edges[n:]
    return Path(p.d, q.d, rest)


def q_map(p: Path) -> Path:
    """Length-preserving map into the collapsed graph; vertices go to ∅."""
    return Path(0, 0, p.edges)


# -- infinite paths ------------------------------------------------------------


def _primitive_root(cycle: tuple[int, ...]) -> tuple[int, ...]:
    n = len(cycle)
    for k in range(1, n + 1):
        if n % k == 0 and cycle[:k] * (n // k) == cycle:
            return cycle[:k]
    return cycle


@dataclass(frozen=True, slots=True)
class BoundaryPoint:
    """The eventually periodic infinite path ``head cycle cycle ...``.

    Instances are kept in a normal form (primitive cycle, shortest head), so
    ``==`` is exact equality of infinite paths.
    """

    head: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        head, cycle = tuple(self.head), _primitive_root(tuple(self.cycle))
        while head and head[-1] == cycle[-1]:
            head = head[:-1]
            cycle = cycle[-1:] + cycle[:-1]
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "cycle", cycle)

    def prefix(self, k: int) -> tuple[int, ...]:
        h = self.head
        if k <= len(h):
            return h[:k]
        need = k - len(h)
        reps = -(-need // len(self.cycle))
        return h + (self.cycle * reps)[:need]

    def letter(self, i: int) -> int:
        if i < len(self.head):
            return self.head[i]
        return self.cycle[(i - len(self.head)) % len(self.cycle)]

    def shift(self, k: int) -> "BoundaryPoint":
        """The tail after removing the first ``k`` letters."""
        if k <= len(self.head):
            return BoundaryPoint(self.head[k:], self.cycle)
        j = (k - len(self.head)) % len(self.cycle)
        return BoundaryPoint((), self.cycle[j:] + self.cycle[:j])

    def prepend(self, edges: tuple[int, ...]) -> "BoundaryPoint":
        return BoundaryPoint(tuple(edges) + self.head, self.cycle)

    def startswith(self, edges: tuple[int, ...]) -> bool:
        return self.prefix(len(edges)) == tuple(edges)


def point_range(graph: Graph, x: BoundaryPoint) -> int:
    return graph.range_of[x.letter(0)]


def check_point(graph: Graph, x: BoundaryPoint) -> None:
    """Raise GraphError unless ``x`` is a genuine infinite path of ``graph``."""
    seq = x.head + x.cycle + x.cycle[:1]
    for a, b in zip(seq, seq[1:]):
        if graph.source_of[a] != graph.range_of[b]:
            raise GraphError("point is not a composable infinite path")


def parse_point(graph: Graph, text: str) -> BoundaryPoint:
    """Parse ``HEAD(CYCLE)`` where both parts are edge-name sequences."""
    text = text.strip()
    if not text.endswith(")") or "(" not in text:
        raise GraphError(f"point {text!r} must look like HEAD(CYCLE)")
    i = text.index("(")
    head = graph._tokens(text[:i]) if text[:i].strip() else []
    cycle = graph._tokens(text[i + 1:-1])
    x = BoundaryPoint(tuple(head), tuple(cycle))
    check_point(graph, x)
    return x


def render_point(graph: Graph, x: BoundaryPoint) -> str:
    sep = "" if all(len(e) == 1 for e in graph.edges) else " "
    h = sep.join(graph.edges[e] for e in x.head)
    c = sep.join(graph.edges[e] for e in x.cycle)
    return f"{h}({c})"


def primitive_cycles(graph: Graph, v: int, max_len: int) -> list[tuple[int, ...]]:
    """Closed primitive paths at ``v`` of length ``1..max_len``."""
    out = []
    for n in range(1, max_len + 1):
        for p in graph.paths_from(v, n):
            if p.d == v and _primitive_root(p.edges) == p.edges:
                out.append(p.edges)
    return out


def sample_points(graph: Graph, depth: int, tail_len: int = 1) -> list[BoundaryPoint]:
    """Eventually periodic test points: every length-``depth`` path followed by
    each shortest closed tail available at its endpoint.

    ``tail_len`` caps the cycle length; when no cycle of that length exists
    at a vertex the shortest available one is used.
    """
    tails: dict[int, list[tuple[int, ...]]] = {}
    for v in range(graph.num_vertices):
        found: list[tuple[int, ...]] = []
        k = tail_len
        while not found and k <= max(tail_len, 2 * graph.num_vertices + 2):
            found = primitive_cycles(graph, v, k)
            k += 1
        tails[v] = found
    pts = []
    for p in graph.paths(depth):
        v = p.d
        for c in tails[v]:
            pts.append(BoundaryPoint(p.edges, c))
    # the same infinite path can arise twice (w c^∞ with w ending in c)
    return list(dict.fromkeys(pts))


def all_words(alphabet: int, n: int) -> Iterator[tuple[int, ...]]:
    """Words of length exactly ``n`` over ``range(alphabet)``, lexicographic."""
    return itertools.product(range(alphabet), repeat=n)
