"""Command-line interface.

Verbs: ``cover build``, ``trees count``, ``metrics profile``,
``embed export``, ``tower build``, ``suite run``.

Exit codes: 0 = success / all checks pass, 1 = mathematical violations
found, 2 = usage or I/O error.  The environment variable ``HOMCOVER_OUT``
names a default output directory; relative ``--out`` paths are resolved
against it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from .boxspace import DEFAULT_TOWER_CAP, build_tower
from .cover import CoverGraph, build_zm_cover
from .embed import embed_point_l1
from .errors import HomcoverError, ParseError
from .graph import DEFAULT_SIZE_CAP, graph_document, load_graph
from .harness import SuiteConfig, run_suite
from .metrics import compression_profile
from .trees import DEFAULT_TREE_CAP, _tree_from_edge_set, tree_counts

OUT_DIR_ENV = "HOMCOVER_OUT"


def _resolve_out(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _read_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write_text(path: str, text: str) -> None:
    _resolve_out(path).write_text(text, encoding="utf-8")


def _frac_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# -- cover document round-trip ---------------------------------------------


def cover_document(c: CoverGraph) -> dict:
    doc = graph_document(c.graph)
    doc["base"] = graph_document(c.base)
    doc["m"] = c.m
    doc["cotree"] = list(c.cotree)
    return doc


def load_cover(doc: dict, size_cap: int = DEFAULT_SIZE_CAP) -> CoverGraph:
    for key in ("base", "m", "cotree"):
        if key not in doc:
            raise ParseError(f"cover document missing {key!r}")
    base = load_graph(doc["base"])
    cotree = set(doc["cotree"])
    tree_edges = [e for e in range(base.edge_count) if e not in cotree]
    tree = _tree_from_edge_set(base, tree_edges)
    c = build_zm_cover(base, int(doc["m"]), tree=tree, size_cap=size_cap)
    rebuilt = graph_document(c.graph)
    if rebuilt["vertices"] != doc["vertices"] or rebuilt["edges"] != doc["edges"]:
        raise ParseError("cover document does not match its base/m/cotree data")
    return c


# -- subcommand implementations ---------------------------------------------


def _cmd_cover_build(args) -> int:
    g = load_graph(_read_json(args.graph))
    tree = None
    if args.tree != "auto":
        ids = [int(t) for t in args.tree.split(",")]
        tree = _tree_from_edge_set(g, ids)
    c = build_zm_cover(g, args.m, tree=tree, size_cap=args.size_cap)
    text = json.dumps(cover_document(c), sort_keys=True) + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_trees_count(args) -> int:
    g = load_graph(_read_json(args.graph))
    tc = tree_counts(g)
    body: dict = {"total": tc.total}
    if args.per_edge:
        body.update({"avoiding": list(tc.avoiding), "constant": tc.constant,
                     "N": tc.common})
    text = json.dumps(body, sort_keys=True) + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_metrics_profile(args) -> int:
    c = load_cover(_read_json(args.cover), size_cap=args.size_cap)
    n = c.graph.vertex_count
    if n <= args.samples:
        sources = None
    else:
        import random
        sources = sorted(random.Random(args.seed).sample(range(n), args.samples))
    prof = compression_profile(c, sources, mode=args.mode)
    rows = ["t,pairs,min,max"]
    for r in prof.rows:
        rows.append(f"{r.t},{r.pair_count},{_frac_str(r.min_val)},{_frac_str(r.max_val)}")
    text = "\n".join(rows) + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_embed_export(args) -> int:
    c = load_cover(_read_json(args.cover), size_cap=args.size_cap)
    n = c.graph.vertex_count
    if args.format == "json":
        vectors = {str(x): [[coord, d] for coord, d in embed_point_l1(c, x).entries]
                   for x in range(n)}
        layout = embed_point_l1(c, 0).block_layout
        body = {"m": c.m, "blocks": [list(b) for b in layout],
                "dim": c.base.edge_count * c.m, "vectors": vectors}
        text = json.dumps(body, sort_keys=True) + "\n"
    else:
        layout = embed_point_l1(c, 0).block_layout
        blocks = ";".join(f"{name}:{start}:{width}" for name, start, width in layout)
        lines = [f"# m={c.m} dim={c.base.edge_count * c.m} blocks={blocks}"]
        for x in range(n):
            vec = embed_point_l1(c, x)
            parts = [str(x)] + [f"{coord}:{d}" for coord, d in vec.entries]
            lines.append(",".join(parts))
        text = "\n".join(lines) + "\n"
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_tower_build(args) -> int:
    tower = build_tower(args.rank, args.m, args.levels, size_cap=args.cap)
    out_dir = _resolve_out(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {"rank": tower.rank, "m": tower.m,
                "truncated": tower.truncated, "levels": []}
    for lvl in tower.levels:
        gv = lvl.girth_value
        manifest["levels"].append({
            "level": lvl.level,
            "vertices": lvl.graph.vertex_count,
            "edges": lvl.graph.edge_count,
            "girth": None if gv is math.inf else int(gv),
        })
        doc = graph_document(lvl.graph)
        (out_dir / f"level{lvl.level}.json").write_text(
            json.dumps(doc, sort_keys=True) + "\n", encoding="utf-8")
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    sys.stdout.write(f"wrote {len(tower.levels)} levels to {out_dir}\n")
    return 0


def _cmd_suite_run(args) -> int:
    cfg = SuiteConfig(
        graphs=tuple(args.graphs.split(",")),
        m=args.m,
        seed=args.seed,
        samples=args.samples,
        size_cap=args.size_cap,
        tree_cap=args.tree_cap,
        checks=tuple(c for c in args.checks.split(",") if c) if args.checks else (),
        threads=args.threads,
        fault=args.fault,
    )
    report = run_suite(cfg)
    if args.out:
        _write_text(args.out, report.to_json())
    else:
        sys.stdout.write(report.to_json())
    sys.stdout.write(report.summary() + "\n")
    return 0 if report.passed else 1


# -- parser ------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP)
    p.add_argument("--tree-cap", type=int, default=DEFAULT_TREE_CAP)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homcover")
    groups = parser.add_subparsers(dest="group", required=True)

    cover = groups.add_parser("cover").add_subparsers(dest="verb", required=True)
    p = cover.add_parser("build")
    p.add_argument("--graph", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tree", default="auto",
                   help="'auto' or comma-separated spanning-tree edge ids")
    _add_common(p)
    p.set_defaults(func=_cmd_cover_build)

    trees = groups.add_parser("trees").add_subparsers(dest="verb", required=True)
    p = trees.add_parser("count")
    p.add_argument("--graph", required=True)
    p.add_argument("--per-edge", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_trees_count)

    metrics = groups.add_parser("metrics").add_subparsers(dest="verb", required=True)
    p = metrics.add_parser("profile")
    p.add_argument("--cover", required=True)
    p.add_argument("--mode", choices=("dq", "l2"), default="dq")
    p.add_argument("--samples", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=_cmd_metrics_profile)

    embed = groups.add_parser("embed").add_subparsers(dest="verb", required=True)
    p = embed.add_parser("export")
    p.add_argument("--cover", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_embed_export)

    tower = groups.add_parser("tower").add_subparsers(dest="verb", required=True)
    p = tower.add_parser("build")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_TOWER_CAP)
    p.add_argument("--out-dir", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_tower_build)

    suite = groups.add_parser("suite").add_subparsers(dest="verb", required=True)
    p = suite.add_parser("run")
    p.add_argument("--graphs", default="doubled_edge,k4,c5,petersen")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--checks",
                   default="compare,conglifts,isometry,treeavg,l2,"
                           "girth_growth,ne_constant")
    p.add_argument("--fault", default=None,
                   help="inject a fault into the named check (self-test)")
    _add_common(p)
    p.set_defaults(func=_cmd_suite_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (HomcoverError, ValueError, IndexError, OSError) as exc:
        # ParseError and JSONDecodeError are ValueError subclasses
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
