"""File formats: JSON-lines datasets, CSV score tables, SVG heatmaps.

All writers are canonical: the same object always serializes to the same
bytes, and parse-then-write reproduces a well-formed file exactly.
"""

from __future__ import annotations

import itertools
import json
from pathlib import Path

import numpy as np

from .classify import ScoreTable
from .core import DatasetMeta, LabeledDataset, LabeledSeries
from .distances import DistanceKind

FORMAT_VERSION = 1


class ParseError(ValueError):
    """Malformed input file; the message names the offending line."""


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _load_json(text: str, lineno: int):
    def reject_constant(token):
        raise ValueError(f"non-finite number {token}")

    try:
        return json.loads(text, parse_constant=reject_constant)
    except ValueError as exc:
        raise ParseError(f"line {lineno}: {exc}") from None


def dataset_to_text(dataset: LabeledDataset) -> str:
    header = {
        "format_version": FORMAT_VERSION,
        "generator": dataset.meta.generator,
        "params": dataset.meta.params,
        "seed": dataset.meta.seed,
        "prng": dataset.meta.prng,
        "dimensionality": dataset.dimensionality,
    }
    lines = [_dump_json(header)]
    for index, item in enumerate(dataset.items):
        record = {"label": item.label, "index": index, "series": item.series.tolist()}
        lines.append(_dump_json(record))
    return "\n".join(lines) + "\n"


def write_dataset(dataset: LabeledDataset, destination) -> None:
    """Write one dataset as a header line plus one JSON record per series."""
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dataset_to_text(dataset))


def _require(record: dict, key: str, lineno: int):
    if key not in record:
        raise ParseError(f"line {lineno}: missing field {key!r}")
    return record[key]


def read_dataset(source) -> LabeledDataset:
    """Inverse of write_dataset; round-trips bit-exactly."""
    lines = Path(source).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ParseError("line 1: empty file, expected a header")
    header = _load_json(lines[0], 1)
    if not isinstance(header, dict):
        raise ParseError("line 1: header must be a JSON object")
    version = _require(header, "format_version", 1)
    if version != FORMAT_VERSION:
        raise ParseError(
            f"line 1: unsupported format_version {version!r}, expected {FORMAT_VERSION}"
        )
    generator = _require(header, "generator", 1)
    params = _require(header, "params", 1)
    seed = _require(header, "seed", 1)
    prng = _require(header, "prng", 1)
    dim = _require(header, "dimensionality", 1)
    if not isinstance(generator, str) or not isinstance(params, dict):
        raise ParseError("line 1: bad generator or params field")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ParseError(f"line 1: seed must be an integer, got {seed!r}")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"line 1: bad dimensionality {dim!r}")

    items = []
    for lineno, line in enumerate(lines[1:], start=2):
        record = _load_json(line, lineno)
        if not isinstance(record, dict):
            raise ParseError(f"line {lineno}: record must be a JSON object")
        label = _require(record, "label", lineno)
        index = _require(record, "index", lineno)
        series = _require(record, "series", lineno)
        if not isinstance(label, str) or not label:
            raise ParseError(f"line {lineno}: label must be a non-empty string")
        if index != len(items):
            raise ParseError(f"line {lineno}: index {index!r}, expected {len(items)}")
        try:
            values = np.asarray(series, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"line {lineno}: bad series ({exc})") from None
        if values.ndim != 2 or values.shape[0] < 1:
            raise ParseError(f"line {lineno}: series must be a non-empty list of points")
        if values.shape[1] != dim:
            raise ParseError(
                f"line {lineno}: series dimensionality {values.shape[1]} != {dim}"
            )
        if not np.all(np.isfinite(values)):
            raise ParseError(f"line {lineno}: series contains non-finite values")
        items.append(LabeledSeries(label, values))
    if not items:
        raise ParseError("line 2: dataset contains no records")
    meta = DatasetMeta(generator=generator, params=params, seed=seed, prng=prng)
    return LabeledDataset(items=items, dimensionality=dim, meta=meta)


def _format_value(value) -> str:
    # integers stay integers; everything else uses the shortest float repr
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def scores_to_text(table: ScoreTable) -> str:
    fixed = " ".join(f"{k}={_format_value(v)}" for k, v in sorted(table.fixed.items()))
    lines = [
        f"# format_version: {FORMAT_VERSION}",
        f"# generator: {table.generator}",
        f"# distance: {table.kind.value}",
        f"# seed: {table.master_seed}",
        f"# replicates: {table.replicates}",
        f"# fixed: {fixed}",
    ]
    columns = list(table.axis_names)
    columns += [f"rep{r}" for r in range(table.replicates)]
    columns.append("mean")
    lines.append(",".join(columns))
    shape = tuple(len(v) for v in table.axis_values)
    for idx in itertools.product(*(range(s) for s in shape)):
        cells = [_format_value(table.axis_values[a][i]) for a, i in enumerate(idx)]
        reps = table.rep_scores[idx]
        cells += [_format_value(float(r)) for r in reps]
        cells.append(_format_value(float(np.mean(reps))))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_scores(table: ScoreTable, destination) -> None:
    """Write a score table as CSV with a `#` metadata preamble.

    Rows are ordered lexicographically by axis value indices, so the file
    is deterministic for a given table.
    """
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(scores_to_text(table))


def _preamble_field(lines, lineno: int, key: str) -> str:
    if lineno > len(lines):
        raise ParseError(f"line {lineno}: missing '# {key}:' entry")
    line = lines[lineno - 1]
    prefix = f"# {key}:"
    if not line.startswith(prefix):
        raise ParseError(f"line {lineno}: expected '# {key}:', got {line!r}")
    return line[len(prefix):].strip()


def read_scores(source) -> ScoreTable:
    """Inverse of write_scores; re-serializing the result is byte-identical."""
    lines = Path(source).read_text(encoding="utf-8").splitlines()
    version = _preamble_field(lines, 1, "format_version")
    if version != str(FORMAT_VERSION):
        raise ParseError(f"line 1: unsupported format_version {version!r}, expected {FORMAT_VERSION}")
    generator = _preamble_field(lines, 2, "generator")
    kind = DistanceKind.parse(_preamble_field(lines, 3, "distance"))
    seed = int(_preamble_field(lines, 4, "seed"))
    replicates = int(_preamble_field(lines, 5, "replicates"))
    fixed_text = _preamble_field(lines, 6, "fixed")
    fixed = {}
    for pair in fixed_text.split():
        key, _, value = pair.partition("=")
        if not _:
            raise ParseError(f"line 6: bad fixed entry {pair!r}")
        fixed[key] = _parse_value(value)

    if len(lines) < 8:
        raise ParseError(f"line {len(lines) + 1}: missing column header or data rows")
    columns = lines[6].split(",")
    rep_columns = [c for c in columns if c.startswith("rep")]
    if columns[-1] != "mean" or len(rep_columns) != replicates:
        raise ParseError(f"line 7: bad column header {lines[6]!r}")
    n_axes = len(columns) - replicates - 1
    if not 1 <= n_axes <= 2:
        raise ParseError(f"line 7: expected 1 or 2 axis columns, found {n_axes}")
    axis_names = tuple(columns[:n_axes])

    rows = []
    for lineno, line in enumerate(lines[7:], start=8):
        cells = line.split(",")
        if len(cells) != len(columns):
            raise ParseError(f"line {lineno}: expected {len(columns)} cells, got {len(cells)}")
        try:
            axis_vals = tuple(_parse_value(c) for c in cells[:n_axes])
            reps = [float(c) for c in cells[n_axes:n_axes + replicates]]
            mean = float(cells[-1])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if abs(mean - float(np.mean(reps))) > 1e-9:
            raise ParseError(f"line {lineno}: mean column does not match replicate scores")
        rows.append((axis_vals, reps))
    if not rows:
        raise ParseError("line 8: score table has no rows")

    # reconstruct each axis as the ordered unique values of its column
    axis_values = []
    for a in range(n_axes):
        seen = []
        for axis_vals, _ in rows:
            if axis_vals[a] not in seen:
                seen.append(axis_vals[a])
        axis_values.append(tuple(seen))
    shape = tuple(len(v) for v in axis_values)
    expected = list(itertools.product(*(range(s) for s in shape)))
    if len(rows) != len(expected):
        raise ParseError(f"line {len(lines)}: expected {len(expected)} rows, got {len(rows)}")
    rep_scores = np.empty(shape + (replicates,))
    for (axis_vals, reps), idx in zip(rows, expected):
        want = tuple(axis_values[a][i] for a, i in enumerate(idx))
        if axis_vals != want:
            raise ParseError(f"rows are not in lexicographic axis order (saw {axis_vals}, expected {want})")
        rep_scores[idx] = reps
    return ScoreTable(
        generator=generator,
        kind=kind,
        axis_names=axis_names,
        axis_values=tuple(axis_values),
        fixed=fixed,
        master_seed=seed,
        replicates=replicates,
        rep_scores=rep_scores,
    )


RAMP_LOW = (68, 1, 84)
RAMP_HIGH = (253, 231, 37)

CELL_W = 56
CELL_H = 32
MARGIN_LEFT = 88
MARGIN_TOP = 40
MARGIN_RIGHT = 16
MARGIN_BOTTOM = 52


def _ramp_color(score: float) -> str:
    rgb = (
        int(round((1.0 - score) * lo + score * hi))
        for lo, hi in zip(RAMP_LOW, RAMP_HIGH)
    )
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def heatmap_svg(table: ScoreTable) -> str:
    """Render a two-axis score table as a standalone SVG string."""
    if len(table.axis_names) != 2:
        raise ValueError(
            f"heatmap export requires exactly 2 axes, table has {len(table.axis_names)}"
        )
    xs, ys = table.axis_values
    scores = table.scores
    width = MARGIN_LEFT + CELL_W * len(xs) + MARGIN_RIGHT
    height = MARGIN_TOP + CELL_H * len(ys) + MARGIN_BOTTOM
    fixed = " ".join(f"{k}={_format_value(v)}" for k, v in sorted(table.fixed.items()))
    title = f"{table.generator} / {table.kind.value} 1-NN score ({fixed})"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{width // 2}" y="24" font-family="sans-serif" font-size="14" '
        f'text-anchor="middle">{title}</text>',
    ]
    for i in range(len(xs)):
        for j in range(len(ys)):
            x = MARGIN_LEFT + i * CELL_W
            y = MARGIN_TOP + j * CELL_H
            color = _ramp_color(float(scores[i, j]))
            parts.append(
                f'<rect class="cell" x="{x}" y="{y}" width="{CELL_W}" height="{CELL_H}" '
                f'fill="{color}"/>'
            )
    for i, value in enumerate(xs):
        cx = MARGIN_LEFT + i * CELL_W + CELL_W // 2
        cy = MARGIN_TOP + CELL_H * len(ys) + 18
        parts.append(
            f'<text x="{cx}" y="{cy}" font-family="sans-serif" font-size="12" '
            f'text-anchor="middle">{_format_value(value)}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_LEFT + CELL_W * len(xs) // 2}" '
        f'y="{MARGIN_TOP + CELL_H * len(ys) + 40}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle">{table.axis_names[0]}</text>'
    )
    for j, value in enumerate(ys):
        cx = MARGIN_LEFT - 8
        cy = MARGIN_TOP + j * CELL_H + CELL_H // 2 + 4
        parts.append(
            f'<text x="{cx}" y="{cy}" font-family="sans-serif" font-size="12" '
            f'text-anchor="end">{_format_value(value)}</text>'
        )
    parts.append(
        f'<text x="16" y="{MARGIN_TOP + CELL_H * len(ys) // 2}" font-family="sans-serif" '
        f'font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 16 {MARGIN_TOP + CELL_H * len(ys) // 2})">'
        f'{table.axis_names[1]}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def export_heatmap(table: ScoreTable, destination) -> None:
    """Write the SVG heatmap; identical tables yield byte-identical files."""
    with open(destination, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(heatmap_svg(table))
