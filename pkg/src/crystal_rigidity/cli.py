"""Command-line interface.

Exit codes: 0 when the input is in the requested class (or the command
succeeded), 1 when it is not, 2 on input errors.  Edge ids in reports are
1-indexed in file order.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import __version__
from .colored_graph import (
    ColoredGraph,
    GraphError,
    ParseError,
    PlaneRealization,
    lift_fragment,
    parse_colored_graph,
)
from .direction_networks import generic_rank
from .rigidity import RigidityError, realize_generic_framework
from .sparsity import (
    FAMILY_NAMES,
    SparsityReport,
    cone_circuit_structure_ok,
    find_laman_circuit,
    generalized_cone_check,
    laman_check,
    one_one_check,
    two_two_check,
)

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2
MAX_RENDER_VERTICES = 20_000
SCALE = 10.0
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


class InputError(Exception):
    pass


def _ids(ids: Sequence[int]) -> str:
    return " ".join(str(i + 1) for i in ids) if ids else "-"


def _load(path: str) -> ColoredGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return parse_colored_graph(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _restrict(g: ColoredGraph, spec: Optional[str]) -> tuple[ColoredGraph, list[int]]:
    if not spec:
        return g, list(range(g.m))
    try:
        ids = [int(x) - 1 for x in spec.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad edge list {spec!r}") from None
    if any(not 0 <= i < g.m for i in ids) or len(set(ids)) != len(ids):
        raise InputError(f"edge ids must be distinct and in 1..{g.m}")
    return g.edge_subgraph(ids), ids


def _header(out: TextIO, argv_echo: str, g: ColoredGraph) -> None:
    print(f"command: {argv_echo}", file=out)
    print(f"group: {'cone' if g.cone else 'gamma'} {g.k}", file=out)
    print(f"vertices: {g.n}", file=out)
    print(f"edges: {g.m}", file=out)


def _run_class(g: ColoredGraph, cls: str) -> SparsityReport:
    cone_only = cls.startswith("cone")
    if cone_only and not g.cone:
        raise InputError(f"--class {cls} needs a cone graph")
    if not cone_only and g.cone:
        raise InputError(f"--class {cls} needs a gamma graph")
    if cls in ("g11", "cone11"):
        return one_one_check(g)
    if cls in ("g22", "cone22"):
        return two_two_check(g)
    if cls in ("laman", "conelaman"):
        return laman_check(g)
    return generalized_cone_check(g)[cls]


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    g = _load(args.path)
    cls = args.cls or ("conelaman" if g.cone else "laman")
    sub, ids = _restrict(g, args.edges)
    rep = _run_class(sub, cls)
    echo = f"check {args.path} --class {cls}" + (f" --edges {_ids(ids)}" if args.edges else "")
    _header(out, echo, sub)
    print(f"{FAMILY_NAMES[cls]}: {'yes' if rep.verdict else 'no'}", file=out)
    print(f"sparse: {'yes' if rep.sparse else 'no'}", file=out)
    print(f"required-edges: {rep.required}", file=out)
    if rep.witness is not None:
        print(f"witness: {_ids([ids[i] for i in rep.witness])}", file=out)
        if rep.witness_bound is not None:
            print(f"witness-edges: {len(rep.witness)}", file=out)
            print(f"witness-bound: {rep.witness_bound}", file=out)
    if rep.decomposition:
        for j, part in enumerate(rep.decomposition, start=1):
            print(f"part-{j}: {_ids([ids[i] for i in part])}", file=out)
    return EXIT_OK if rep.verdict else EXIT_NO


def cmd_rank(args: argparse.Namespace, out: TextIO) -> int:
    g = _load(args.path)
    rep = generic_rank(g, seed=args.seed, trials=args.trials)
    _header(out, f"rank {args.path} --seed {args.seed} --trials {args.trials}", g)
    print(f"field: {rep.field_name} (p = 2^127-1)", file=out)
    print(f"seed: {args.seed}", file=out)
    print(f"trials: {rep.trials} of {args.trials} ({' '.join(map(str, rep.ranks))})", file=out)
    print(f"rank {rep.rank} / {rep.rows} rows, nullity {rep.nullity}", file=out)
    print(f"columns: {rep.cols}", file=out)
    print(f"false-negative-bound-per-trial: 2^{rep.bound_log2:.1f}", file=out)
    return EXIT_OK


def _realize(args: argparse.Namespace, g: ColoredGraph):
    try:
        return realize_generic_framework(g, seed=args.seed)
    except RigidityError as exc:
        raise _NotInClass(str(exc)) from None


class _NotInClass(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def cmd_realize(args: argparse.Namespace, out: TextIO) -> int:
    g = _load(args.path)
    _header(out, f"realize {args.path} --seed {args.seed}", g)
    fw = _realize(args, g)
    print(f"seed: {args.seed}", file=out)
    for i, p in enumerate(fw.points, start=1):
        print(f"vertex {i}: {_fmt(p[0])} {_fmt(p[1])}", file=out)
    if not g.cone:
        print(f"v1: {_fmt(fw.v1[0])} {_fmt(fw.v1[1])}", file=out)
        print(f"v2: {_fmt(fw.v2[0])} {_fmt(fw.v2[1])}", file=out)
    for e, length in enumerate(fw.lengths or (), start=1):
        print(f"length {e}: {_fmt(length)}", file=out)
    return EXIT_OK


def render_svg(g: ColoredGraph, real: PlaneRealization, box: tuple[int, int, int, int]) -> tuple[str, int, int]:
    frag = lift_fragment(g, box, realization=real)
    pos = frag.positions or ()
    xs = [p[0] for p in pos] or [0.0]
    ys = [p[1] for p in pos] or [0.0]
    pad = 1.0
    x0, y0 = min(xs) - pad, min(ys) - pad
    w, h = (max(xs) - min(xs) + 2 * pad) * SCALE, (max(ys) - min(ys) + 2 * pad) * SCALE

    def sx(x: float) -> float:
        return (x - x0) * SCALE

    def sy(y: float) -> float:
        return h - (y - y0) * SCALE

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2f}" height="{h:.2f}" viewBox="0 0 {w:.2f} {h:.2f}">',
        '<g stroke="#444" stroke-width="0.6">',
    ]
    for a, b, _eid in frag.edges:
        pa, pb = pos[a], pos[b]
        parts.append(f'<line x1="{sx(pa[0]):.2f}" y1="{sy(pa[1]):.2f}" x2="{sx(pb[0]):.2f}" y2="{sy(pb[1]):.2f}"/>')
    parts.append("</g>")
    parts.append("<g>")
    for (i, gm), p in zip(frag.vertices, pos):
        color = PALETTE[i % len(PALETTE)]
        parts.append(
            f'<circle cx="{sx(p[0]):.2f}" cy="{sy(p[1]):.2f}" r="1.5" fill="{color}" '
            f'data-fiber="{i + 1}" data-element="{gm.t[0]},{gm.t[1]},{gm.r}"/>'
        )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n", len(frag.vertices), len(frag.edges)


def cmd_render(args: argparse.Namespace, out: TextIO) -> int:
    g = _load(args.path)
    x0, x1, y0, y1 = args.box
    if x0 > x1 or y0 > y1:
        raise InputError(f"empty box {args.box}")
    cells = 1 if g.cone else (x1 - x0 + 1) * (y1 - y0 + 1)
    if cells * g.k * g.n > MAX_RENDER_VERTICES:
        raise InputError(f"box too large: {cells * g.k * g.n} vertices (limit {MAX_RENDER_VERTICES})")
    if not args.out:
        raise InputError("render needs --out")
    fw = _realize(args, g)
    real = PlaneRealization(g.k, tuple(fw.points), fw.v1, fw.v2)
    svg, nv, ne = render_svg(g, real, (x0, x1, y0, y1))
    try:
        Path(args.out).write_text(svg)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    _header(out, f"render {args.path} --seed {args.seed} --box {x0} {x1} {y0} {y1} --out {args.out}", g)
    print(f"lift-vertices: {nv}", file=out)
    print(f"lift-edges: {ne}", file=out)
    print(f"svg: {args.out}", file=out)
    return EXIT_OK


def cmd_circuit(args: argparse.Namespace, out: TextIO) -> int:
    g = _load(args.path)
    _header(out, f"circuit {args.path}", g)
    circ = find_laman_circuit(g)
    if circ is None:
        print("circuit: none", file=out)
        return EXIT_NO
    print(f"circuit: {_ids(circ)}", file=out)
    print(f"circuit-edges: {len(circ)}", file=out)
    if g.cone:
        print(f"cone-circuit-structure: {'ok' if cone_circuit_structure_ok(g, circ) else 'violated'}", file=out)
    return EXIT_OK


def cmd_selftest(args: argparse.Namespace, out: TextIO) -> int:
    from .acceptance import CRITERIA, criterion_9
    from .finite_field import injected

    only = sorted(set(args.only)) if args.only else sorted(CRITERIA)
    if any(c not in CRITERIA for c in only):
        raise InputError(f"criteria must be in 1..{len(CRITERIA)}")
    print(f"command: selftest --seed {args.seed} --scale {args.scale}"
          + (f" --inject {args.inject}" if args.inject else ""), file=out)
    failed = 0
    start = time.perf_counter()
    with injected(*([args.inject] if args.inject else [])):
        for c in only:
            if c == 9:
                res = criterion_9(args.seed, args.scale, max_m=args.max_m)
            else:
                res = CRITERIA[c](args.seed, args.scale)
            print(res.line(timing=False), file=out)
            for ex in res.examples:
                print("    " + ex.replace("\n", "\n    ").rstrip(), file=out)
            print(f"criterion {c}: {res.seconds:.1f}s", file=sys.stderr)
            failed += not res.passed
    print(f"failed: {failed}", file=out)
    print(f"runtime: {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return EXIT_NO if failed else EXIT_OK


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crystal-rigidity", description="Rigidity of crystallographic and cone frameworks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("check", help="decide a sparsity class")
    c.add_argument("path")
    c.add_argument("--class", dest="cls", choices=sorted(FAMILY_NAMES))
    c.add_argument("--edges", help="restrict to these 1-indexed edge ids")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("rank", help="exact generic rank of the direction network")
    r.add_argument("path")
    r.add_argument("--seed", type=_seed, default=0)
    r.add_argument("--trials", type=int, default=3)
    r.set_defaults(func=cmd_rank)

    z = sub.add_parser("realize", help="faithful real realization of a Laman graph")
    z.add_argument("path")
    z.add_argument("--seed", type=_seed, default=0)
    z.set_defaults(func=cmd_realize)

    d = sub.add_parser("render", help="SVG of a lift fragment")
    d.add_argument("path")
    d.add_argument("--seed", type=_seed, default=0)
    d.add_argument("--box", type=int, nargs=4, default=(-1, 1, -1, 1), metavar=("X0", "X1", "Y0", "Y1"))
    d.add_argument("--out")
    d.set_defaults(func=cmd_render)

    k = sub.add_parser("circuit", help="find a Laman circuit")
    k.add_argument("path")
    k.set_defaults(func=cmd_circuit)

    s = sub.add_parser("selftest", help="run the acceptance suite")
    s.add_argument("--seed", type=_seed, default=0)
    s.add_argument("--scale", type=float, default=1.0, help="fraction of the full instance counts")
    s.add_argument("--max-m", type=int, default=12, help="largest graph for the subgraph rank sweep")
    s.add_argument("--only", type=int, nargs="+")
    s.add_argument("--inject", choices=("r4-sign",), help="run with a deliberate defect")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _NotInClass as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO


if __name__ == "__main__":
    sys.exit(main())
