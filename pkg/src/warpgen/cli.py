"""Command-line entry points.

Subcommands: generate (cbf / ram), distance, classify, sweep, export.
Errors print a diagnostic to stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import io as formats
from .cbf import CbfParams, generate_dataset as generate_cbf
from .classify import SweepSpec, knn1_loo_score, run_sweep
from .distances import DistanceKind, distance
from .ram import RamParams, generate_dataset as generate_ram


def _default_jobs() -> int:
    return os.cpu_count() or 1


def _parse_axis(text: str):
    name, sep, values = text.partition("=")
    if not sep or not name or not values:
        raise ValueError(f"bad axis {text!r}, expected NAME=v1,v2,...")
    return name, tuple(formats._parse_value(v) for v in values.split(","))


def _parse_fixed(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name or not value:
        raise ValueError(f"bad fixed parameter {text!r}, expected NAME=VALUE")
    return name, formats._parse_value(value)


def _cmd_generate(args) -> int:
    if args.generator == "cbf":
        params = CbfParams(
            length=args.length,
            dim=args.dim,
            classes=args.classes,
            class_size=args.class_size,
            seed=args.seed,
        )
        dataset = generate_cbf(params)
    else:
        params = RamParams(
            length=args.length,
            dim=args.dim,
            radius=args.radius,
            distortion=args.distortion,
            classes=args.classes,
            class_size=args.class_size,
            seed=args.seed,
        )
        dataset = generate_ram(params)
    formats.write_dataset(dataset, args.out)
    print(
        f"wrote {len(dataset)} series of dimensionality "
        f"{dataset.dimensionality} to {args.out}"
    )
    return 0


def _cmd_distance(args) -> int:
    dataset = formats.read_dataset(args.file)
    for name, index in (("--a", args.a), ("--b", args.b)):
        if not 0 <= index < len(dataset):
            raise ValueError(
                f"{name} index {index} out of range for {len(dataset)} records"
            )
    kind = DistanceKind.parse(args.kind)
    value = distance(kind, dataset.items[args.a].series, dataset.items[args.b].series)
    print(repr(value))
    return 0


def _cmd_classify(args) -> int:
    dataset = formats.read_dataset(args.file)
    kind = DistanceKind.parse(args.kind)
    score = knn1_loo_score(dataset, kind, jobs=args.jobs)
    print(repr(score))
    return 0


def _cmd_sweep(args) -> int:
    kinds = [DistanceKind.parse(k) for k in args.kind.split(",")]
    if len(kinds) != len(set(kinds)):
        raise ValueError(f"duplicate distance kind in {args.kind!r}")
    axes = tuple(_parse_axis(a) for a in args.axis or [])
    fixed = dict(_parse_fixed(f) for f in args.fixed or [])
    out = Path(args.out)
    for kind in kinds:
        spec = SweepSpec(
            generator=args.generator,
            kind=kind,
            axes=axes,
            fixed=fixed,
            replicates=args.replicates,
            seed=args.seed,
        )
        table = run_sweep(spec, jobs=args.jobs)
        if len(kinds) == 1:
            path = out
        else:
            path = out.with_name(f"{out.stem}_{kind.value}{out.suffix}")
        formats.write_scores(table, path)
        rows = int(table.scores.size)
        print(f"wrote {rows} {kind.value} scores to {path}")
    return 0


def _cmd_export(args) -> int:
    table = formats.read_scores(args.infile)
    formats.export_heatmap(table, args.out)
    print(f"wrote heatmap to {args.out}")
    return 0


def _add_generate_options(parser, ram: bool) -> None:
    parser.add_argument("--length", type=int, required=True, help="points per series")
    parser.add_argument("--dim", type=int, required=True, help="dimensionality")
    if ram:
        parser.add_argument("--radius", type=float, required=True, help="bounding ball radius")
        parser.add_argument(
            "--distortion", type=float, required=True, help="space distortion bound"
        )
    parser.add_argument("--classes", type=int, required=True, help="number of classes")
    parser.add_argument(
        "--class-size", type=int, required=True, dest="class_size", help="series per class"
    )
    parser.add_argument("--seed", type=int, required=True, help="master seed")
    parser.add_argument("--out", required=True, help="output dataset path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="warpgen",
        description="Synthetic multidimensional time series: generators, "
        "elastic distances, 1-NN benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_generate = sub.add_parser("generate", help="generate a labeled dataset")
    gen_sub = p_generate.add_subparsers(dest="generator", required=True)
    p_cbf = gen_sub.add_parser("cbf", help="cylinder / bell / funnel dataset")
    _add_generate_options(p_cbf, ram=False)
    p_cbf.set_defaults(handler=_cmd_generate)
    p_ram = gen_sub.add_parser("ram", help="random accelerated motion dataset")
    _add_generate_options(p_ram, ram=True)
    p_ram.set_defaults(handler=_cmd_generate)

    p_distance = sub.add_parser("distance", help="distance between two stored series")
    p_distance.add_argument("--kind", required=True, help="euclidean, dtw, erp, or dk")
    p_distance.add_argument("--file", required=True, help="dataset path")
    p_distance.add_argument("--a", type=int, required=True, help="first record index")
    p_distance.add_argument("--b", type=int, required=True, help="second record index")
    p_distance.set_defaults(handler=_cmd_distance)

    p_classify = sub.add_parser("classify", help="1-NN leave-one-out score of a dataset")
    p_classify.add_argument("--kind", required=True, help="euclidean, dtw, erp, or dk")
    p_classify.add_argument("--file", required=True, help="dataset path")
    p_classify.add_argument("--jobs", type=int, default=_default_jobs(), help="worker threads")
    p_classify.set_defaults(handler=_cmd_classify)

    p_sweep = sub.add_parser("sweep", help="score a grid of generator parameters")
    p_sweep.add_argument("--generator", required=True, choices=("cbf", "ram"))
    p_sweep.add_argument(
        "--kind", required=True, help="distance kind, or several separated by commas"
    )
    p_sweep.add_argument(
        "--axis", action="append", metavar="NAME=v1,v2,...", help="swept parameter (1 or 2)"
    )
    p_sweep.add_argument(
        "--fixed", action="append", metavar="NAME=VALUE", help="fixed parameter"
    )
    p_sweep.add_argument("--replicates", type=int, required=True, help="datasets per cell")
    p_sweep.add_argument("--seed", type=int, required=True, help="master seed")
    p_sweep.add_argument("--out", required=True, help="output score table path")
    p_sweep.add_argument("--jobs", type=int, default=_default_jobs(), help="worker threads")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_export = sub.add_parser("export", help="render stored results")
    export_sub = p_export.add_subparsers(dest="target", required=True)
    p_heatmap = export_sub.add_parser("heatmap", help="SVG heatmap of a 2-axis score table")
    p_heatmap.add_argument("--in", dest="infile", required=True, help="score table path")
    p_heatmap.add_argument("--out", required=True, help="output SVG path")
    p_heatmap.set_defaults(handler=_cmd_export)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())
