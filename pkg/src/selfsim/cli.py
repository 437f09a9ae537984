"""Command line: ``selfsim {check,present,act,orbit,export} SPEC``."""
from __future__ import annotations

import argparse
import json
import sys
from collections import deque
from typing import Sequence

from . import __version__
from .action import axioms_report, is_exhausting, is_pseudo_free
from .graph import GraphError, parse_point, render_point
from .groups import PresentationUnavailable
from .isg import InverseSemigroup, is_cancellative, is_estar_unitary
from .paction import PartialMap, UniversalAction
from .specfile import ActionSpec, SpecError, load
from .ugroup import SIGMA_BACKENDS, check_idempotent_pure, emit_presentation, sigma_for
from .verdict import Status

SCHEMA = "v1"


def _sigma(spec: ActionSpec):
    if spec.sigma == "none":
        return None
    if spec.sigma == "auto":
        return sigma_for(spec.action)
    return SIGMA_BACKENDS[spec.sigma](spec.action)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False, default=str)


def cmd_check(spec: ActionSpec, args) -> int:
    act = spec.action
    bounds = {"radius": args.radius, "path_len": args.pathlen, "depth": args.depth}
    verdicts = [axioms_report(act, depth=args.pathlen, radius=min(args.radius, 3)),
                is_pseudo_free(act, args.radius, args.pathlen),
                is_exhausting(act, args.radius, args.pathlen),
                is_cancellative(act, args.radius, args.pathlen),
                is_estar_unitary(act, args.radius, args.pathlen)]
    sigma = _sigma(spec)
    if sigma is not None:
        verdicts.append(check_idempotent_pure(act, sigma, args.pathlen, args.radius))
    triangle = {v.check: v.violated for v in verdicts
                if v.check in ("pseudo_free", "cancellative", "estar_unitary")}
    consistent = len(set(triangle.values())) == 1
    mismatches = {k: {"expected": want, "got": v.status.value}
                  for v in verdicts for k, want in spec.expected.items()
                  if k == v.check and want != v.status.value}
    violated = any(v.violated for v in verdicts)
    report = {"schema": SCHEMA, "action": act.name, "bounds": bounds,
              "sigma": sigma.name if sigma else None,
              "verdicts": {v.check: v.to_json() for v in verdicts},
              "triangle_consistent": consistent, "expected_mismatches": mismatches}
    if args.json:
        print(_dump(report))
    else:
        print(f"{act.name or '<unnamed>'}  radius={args.radius} pathlen={args.pathlen}")
        for v in verdicts:
            print(f"  {v}")
        print(f"  triangle: {'consistent' if consistent else 'INCONSISTENT'}")
        for k, m in mismatches.items():
            print(f"  expected {k}={m['expected']}, got {m['got']}")
        for v in verdicts:
            if v.status in (Status.UNRESOLVED, Status.UNKNOWN):
                print(f"warning: {v.check} is {v.status.value} within the bounds", file=sys.stderr)
    return 1 if violated else 0


def cmd_present(spec: ActionSpec, args) -> int:
    try:
        pres = emit_presentation(spec.action, args.edge_symbol, args.group_symbol)
    except PresentationUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(pres.to_json() if args.json else pres.to_text(), end="" if not args.json else "\n")
    return 0


def cmd_act(spec: ActionSpec, args) -> int:
    act = spec.action
    x = parse_point(act.graph, args.point)
    sep = "" if all(len(e) == 1 for e in act.graph.edges) else " "
    if args.triple:
        s = InverseSemigroup(act).parse(args.triple)
        y = PartialMap(act, [s]).apply(x)
    elif args.universal:
        sigma = _sigma(spec)
        if sigma is None:
            print("error: no σ backend for this action", file=sys.stderr)
            return 2
        ua = UniversalAction(act, sigma, args.pathlen, args.radius, args.depth)
        y = ua.theta(sigma.target.parse(args.universal)).apply(x)
    else:
        g = act.group.parse(args.element or "1")
        y = act.act_point(g, x)
    if y is None:
        out = {"point": args.point, "defined": False}
        print(_dump(out) if args.json else "undefined")
        return 0
    prefix = sep.join(act.graph.edges[e] for e in y.prefix(args.depth))
    if args.json:
        print(_dump({"point": args.point, "defined": True, "prefix": prefix,
                     "image": render_point(act.graph, y)}))
    else:
        print(prefix)
    return 0


def cmd_orbit(spec: ActionSpec, args) -> int:
    act = spec.action
    grp = act.group
    x = parse_point(act.graph, args.point)
    names = args.generators.split(",") if args.generators else list(grp.generator_names)
    gens = []
    for name in names:
        g = grp.parse(name.strip())
        gens += [(name.strip(), g), (name.strip() + "^-1", grp.inv(g))]
    seen = {x: "1"}
    order = [x]
    frontier = deque([(x, 0)])
    while frontier:
        y, k = frontier.popleft()
        if k >= args.steps:
            continue
        for name, g in gens:
            z = act.act_point(g, y)
            if z not in seen:
                w = seen[y]
                seen[z] = name if w == "1" else f"{name} {w}"
                order.append(z)
                frontier.append((z, k + 1))
    sep = "" if all(len(e) == 1 for e in act.graph.edges) else " "
    rows = [{"word": seen[p], "prefix": sep.join(act.graph.edges[e] for e in p.prefix(args.depth)),
             "point": render_point(act.graph, p)} for p in order]
    if args.json:
        print(_dump({"orbit": rows, "steps": args.steps}))
    else:
        for r in rows:
            print(f"{r['prefix']}  {r['word']}")
    return 0


def restriction_closure(action, limit: int = 10_000):
    grp = action.group
    states = [grp.letter(i, 1) for i in range(len(grp.generator_names))] or [grp.identity]
    seen = set(states)
    edges = []
    i = 0
    while i < len(states):
        s = states[i]
        i += 1
        for e in range(action.graph.num_edges):
            ge, phi = action.edge_step(s, e)
            edges.append((s, e, ge, phi))
            if phi not in seen:
                if len(seen) >= limit:
                    raise RuntimeError("restriction closure exceeds the state limit")
                seen.add(phi)
                states.append(phi)
    return states, edges


def cmd_export(spec: ActionSpec, args) -> int:
    act = spec.action
    grp, gr = act.group, act.graph
    states, edges = restriction_closure(act)
    ids = {s: f"q{k}" for k, s in enumerate(states)}

    def q(s):
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
    lines = [f"digraph {q(act.name or 'action')} {{", "  rankdir=LR;"]
    for s in states:
        lines.append(f"  {ids[s]} [label={q(grp.render(s))}];")
    for s, e, ge, phi in edges:
        lines.append(f"  {ids[s]} -> {ids[phi]} [label={q(gr.edges[e] + '/' + gr.edges[ge])}];")
    lines.append("}")
    print("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", help="action specification (YAML)")
    common.add_argument("--radius", type=int, default=4, help="group ball radius (default 4)")
    common.add_argument("--pathlen", type=int, default=4, help="path length bound (default 4)")
    common.add_argument("--depth", type=int, default=8, help="prefix depth for points (default 8)")
    common.add_argument("--seed", type=int, default=0, help="sampling seed")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="selfsim", description="Self-similar graph actions toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="run the decision procedures")
    pr = sub.add_parser("present", parents=[common], help="emit the universal-group presentation")
    pr.add_argument("--edge-symbol", default="s_{e}")
    pr.add_argument("--group-symbol", default="u_{g}")
    pa = sub.add_parser("act", parents=[common], help="act on an infinite path")
    pa.add_argument("--point", required=True, help="HEAD(CYCLE)")
    grp = pa.add_mutually_exclusive_group()
    grp.add_argument("--element", help="group element word")
    grp.add_argument("--triple", help="semigroup element (alpha, g, beta)")
    grp.add_argument("--universal", help="element of the σ target group")
    po = sub.add_parser("orbit", parents=[common], help="list an orbit")
    po.add_argument("--point", required=True)
    po.add_argument("--generators", help="comma-separated generator words")
    po.add_argument("--steps", type=int, default=3)
    sub.add_parser("export", parents=[common], help="DOT of the restriction automaton")
    return p


COMMANDS = {"check": cmd_check, "present": cmd_present, "act": cmd_act,
            "orbit": cmd_orbit, "export": cmd_export}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load(args.spec)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](spec, args)
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
