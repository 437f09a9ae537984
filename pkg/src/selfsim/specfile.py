"""YAML action specifications.

A spec names the graph, the group backend, and one row per (generator, edge)
giving the image edge and the cocycle word::

    name: odometer-2
    graph:
      vertices: [v]
      edges:
        "0": {r: v, d: v}
        "1": {r: v, d: v}
    group: {backend: integers, params: {generator: z}}
    tables:
      - {generator: z, edge: "0", image: "1", cocycle: "1"}
      - {generator: z, edge: "1", image: "0", cocycle: z}

Optional sections: ``vertex_tables`` (rows ``{generator, vertex, image}``,
default identity), ``sigma`` (``auto``, ``bs``, ``semidirect``, ``collapsing``)
and ``expected`` (verdict name to status).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Any

import yaml

from .action import ActionError, SelfSimilarAction
from .graph import Graph, GraphError
from .groups import make_backend


class SpecError(ValueError):
    def __init__(self, where: str, message: str, line: int | None = None, source: str = "<spec>"):
        loc = f"{source}:{line}: " if line else f"{source}: "
        super().__init__(f"{loc}{where}: {message}")
        self.where = where
        self.line = line


class _LineLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader, node, deep=False):
    mapping = yaml.SafeLoader.construct_mapping(loader, node, deep=True)
    mapping["__line__"] = node.start_mark.line + 1
    return mapping


_LineLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


@dataclass
class ActionSpec:
    action: SelfSimilarAction
    sigma: str = "auto"
    expected: dict[str, str] = field(default_factory=dict)
    raw: dict = field(default_factory=dict)


def _strip(obj):
    if isinstance(obj, dict):
        return {k: _strip(v) for k, v in obj.items() if k != "__line__"}
    if isinstance(obj, list):
        return [_strip(v) for v in obj]
    return obj


def loads(text: str, source: str = "<spec>") -> ActionSpec:
    try:
        doc = yaml.load(text, Loader=_LineLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise SpecError("yaml", str(getattr(exc, "problem", exc)),
                        mark.line + 1 if mark else None, source) from None
    if not isinstance(doc, dict):
        raise SpecError("document", "expected a mapping at top level", None, source)

    def need(obj: dict, key: str, where: str):
        if not isinstance(obj, dict) or key not in obj:
            raise SpecError(f"{where}.{key}" if where else key, "missing field",
                            obj.get("__line__") if isinstance(obj, dict) else None, source)
        return obj[key]

    def err(where, msg, obj=None):
        line = obj.get("__line__") if isinstance(obj, dict) else None
        return SpecError(where, msg, line, source)

    gsec = need(doc, "graph", "")
    vertices = [str(v) for v in need(gsec, "vertices", "graph")]
    edges_raw = need(gsec, "edges", "graph")
    if not isinstance(edges_raw, dict):
        raise err("graph.edges", "expected a mapping of edge name to {r, d}", gsec)
    edges = {}
    for name, ends in edges_raw.items():
        if name == "__line__":
            continue
        where = f"graph.edges.{name}"
        r, d = str(need(ends, "r", where)), str(need(ends, "d", where))
        for k, v in (("r", r), ("d", d)):
            if v not in vertices:
                raise err(f"{where}.{k}", f"unknown vertex {v!r}", ends)
        edges[str(name)] = (r, d)
    try:
        graph = Graph.from_edges(vertices, edges)
    except GraphError as exc:
        raise err("graph", str(exc), gsec) from None
    defects = graph.validate(boundary_ready=True)
    if defects:
        raise err("graph", "; ".join(defects), gsec)

    gr = need(doc, "group", "")
    params = _strip(gr.get("params", {}) or {})
    try:
        group = make_backend(str(need(gr, "backend", "group")), params)
    except (ValueError, KeyError, TypeError) as exc:
        raise err("group", str(exc), gr) from None

    gen_index = {name: i for i, name in enumerate(group.generator_names)}
    ng, ne = len(gen_index), graph.num_edges
    edge_img: list[list[int | None]] = [[None] * ne for _ in range(ng)]
    coc: list[list[Any]] = [[None] * ne for _ in range(ng)]
    rows = doc.get("tables") or []
    for k, row in enumerate(rows):
        where = f"tables[{k}]"
        gname = str(need(row, "generator", where))
        if gname not in gen_index:
            raise err(f"{where}.generator", f"unknown generator {gname!r}", row)
        i = gen_index[gname]
        ename = str(need(row, "edge", where))
        iname = str(need(row, "image", where))
        try:
            e, img = graph.edge_id(ename), graph.edge_id(iname)
        except GraphError as exc:
            raise err(f"{where}.edge" if ename not in graph.edges else f"{where}.image",
                      str(exc), row) from None
        if edge_img[i][e] is not None:
            raise err(where, f"duplicate row for ({gname}, {ename})", row)
        try:
            phi = group.parse(str(need(row, "cocycle", where)))
        except (ValueError, KeyError) as exc:
            raise err(f"{where}.cocycle", str(exc), row) from None
        edge_img[i][e], coc[i][e] = img, phi
    for i, gname in enumerate(group.generator_names):
        for e in range(ne):
            if edge_img[i][e] is None:
                raise err("tables", f"no row for ({gname}, {graph.edges[e]})", doc)

    vimg = [list(range(graph.num_vertices)) for _ in range(ng)]
    for k, row in enumerate(doc.get("vertex_tables") or []):
        where = f"vertex_tables[{k}]"
        gname = str(need(row, "generator", where))
        if gname not in gen_index:
            raise err(f"{where}.generator", f"unknown generator {gname!r}", row)
        try:
            v = graph.vertex_id(str(need(row, "vertex", where)))
            w = graph.vertex_id(str(need(row, "image", where)))
        except GraphError as exc:
            raise err(where, str(exc), row) from None
        vimg[gen_index[gname]][v] = w

    name = str(doc.get("name", ""))
    try:
        action = SelfSimilarAction(graph, group, [tuple(r) for r in vimg],
                                   [tuple(r) for r in edge_img], [tuple(r) for r in coc], name=name)
    except ActionError as exc:
        raise err("tables", str(exc), doc) from None
    sigma = str(doc.get("sigma", "auto"))
    if sigma not in ("auto", "bs", "semidirect", "collapsing", "none"):
        raise err("sigma", f"unknown σ backend {sigma!r}", doc)
    expected = {str(k): str(v) for k, v in _strip(doc.get("expected") or {}).items()}
    return ActionSpec(action, sigma, expected, _strip(doc))


def load(path: str | FsPath) -> ActionSpec:
    p = FsPath(path)
    return loads(p.read_text(encoding="utf-8"), source=str(p))


def dumps(action: SelfSimilarAction, sigma: str = "auto", expected: dict | None = None) -> str:
    """Render an action as a spec document (inverse of :func:`loads`)."""
    gr, grp = action.graph, action.group
    doc: dict[str, Any] = {"name": action.name}
    doc["graph"] = {
        "vertices": list(gr.vertices),
        "edges": {gr.edges[e]: {"r": gr.vertices[gr.range_of[e]], "d": gr.vertices[gr.source_of[e]]}
                  for e in range(gr.num_edges)},
    }
    doc["group"] = {"backend": grp.name, "params": grp.params()}
    rows = []
    for i, gname in enumerate(grp.generator_names):
        for e in range(gr.num_edges):
            rows.append({"generator": gname, "edge": gr.edges[e],
                         "image": gr.edges[action.edge_images[i][e]],
                         "cocycle": grp.render(action.cocycles[i][e])})
    doc["tables"] = rows
    vrows = []
    for i, gname in enumerate(grp.generator_names):
        for v in range(gr.num_vertices):
            w = action.vertex_images[i][v] if action.vertex_images else v
            if w != v:
                vrows.append({"generator": gname, "vertex": gr.vertices[v], "image": gr.vertices[w]})
    if vrows:
        doc["vertex_tables"] = vrows
    if sigma != "auto":
        doc["sigma"] = sigma
    if expected:
        doc["expected"] = dict(expected)
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True)
