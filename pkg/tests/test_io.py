import json

import numpy as np
import pytest

from warpgen.cbf import CbfParams
from warpgen.cbf import generate_dataset as generate_cbf
from warpgen.classify import ScoreTable, SweepSpec, run_sweep
from warpgen.core import DatasetMeta, LabeledDataset, LabeledSeries, as_series
from warpgen.distances import DistanceKind
from warpgen.io import (
    ParseError,
    export_heatmap,
    heatmap_svg,
    read_dataset,
    read_scores,
    write_dataset,
    write_scores,
)
from warpgen.ram import RamParams
from warpgen.ram import generate_dataset as generate_ram


@pytest.fixture(scope="module")
def cbf_dataset():
    return generate_cbf(CbfParams(length=125, dim=3, classes=27, class_size=5, seed=17))


@pytest.fixture(scope="module")
def score_table():
    spec = SweepSpec(
        generator="cbf",
        kind=DistanceKind.EUCLIDEAN,
        axes=(("class_size", (2, 3)), ("classes", (2, 3, 4))),
        fixed={"length": 8, "dim": 2},
        replicates=2,
        seed=23,
    )
    return run_sweep(spec)


class TestDatasetRoundtrip:
    def test_cbf_roundtrip_exact(self, cbf_dataset, tmp_path):
        path = tmp_path / "cbf.jsonl"
        write_dataset(cbf_dataset, path)
        back = read_dataset(path)
        assert back == cbf_dataset
        assert back.meta.generator == "cbf"
        assert back.meta.seed == 17
        assert back.meta.prng == "pcg64"
        assert back.meta.params == cbf_dataset.meta.params

    def test_second_serialization_byte_identical(self, cbf_dataset, tmp_path):
        first = tmp_path / "a.jsonl"
        second = tmp_path / "b.jsonl"
        write_dataset(cbf_dataset, first)
        write_dataset(read_dataset(first), second)
        assert first.read_bytes() == second.read_bytes()

    def test_ram_roundtrip_exact(self, tmp_path):
        ds = generate_ram(RamParams(
            length=30, dim=2, radius=12.5, distortion=1.25,
            classes=3, class_size=2, seed=29,
        ))
        path = tmp_path / "ram.jsonl"
        write_dataset(ds, path)
        back = read_dataset(path)
        assert back == ds
        assert back.meta.params["radius"] == 12.5

    def test_record_count(self, cbf_dataset, tmp_path):
        path = tmp_path / "c.jsonl"
        write_dataset(cbf_dataset, path)
        lines = path.read_text().splitlines()
        assert len(lines) == 1 + 135


def _write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture
def small_file(tmp_path):
    ds = generate_cbf(CbfParams(length=8, dim=2, classes=3, class_size=2, seed=1))
    path = tmp_path / "small.jsonl"
    write_dataset(ds, path)
    return path


class TestDatasetParseErrors:
    def test_unsupported_version(self, small_file):
        lines = small_file.read_text().splitlines()
        header = json.loads(lines[0])
        header["format_version"] = 2
        lines[0] = json.dumps(header)
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="unsupported format_version"):
            read_dataset(small_file)

    def test_wrong_dimensionality_names_line(self, small_file):
        lines = small_file.read_text().splitlines()
        record = json.loads(lines[3])
        record["series"] = [[0.0], [1.0]]
        lines[3] = json.dumps(record)
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="line 4"):
            read_dataset(small_file)

    def test_non_finite_rejected(self, small_file):
        lines = small_file.read_text().splitlines()
        record = json.loads(lines[2])
        record["series"][0][0] = None
        lines[2] = json.dumps(record).replace("null", "NaN")
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="line 3"):
            read_dataset(small_file)

    def test_malformed_json_names_line(self, small_file):
        lines = small_file.read_text().splitlines()
        lines[2] = '{"label": "cc", "index"'
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="line 3"):
            read_dataset(small_file)

    def test_index_mismatch(self, small_file):
        lines = small_file.read_text().splitlines()
        record = json.loads(lines[1])
        record["index"] = 5
        lines[1] = json.dumps(record)
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="line 2"):
            read_dataset(small_file)

    def test_missing_field(self, small_file):
        lines = small_file.read_text().splitlines()
        record = json.loads(lines[1])
        del record["series"]
        lines[1] = json.dumps(record)
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="missing field"):
            read_dataset(small_file)

    def test_empty_label(self, small_file):
        lines = small_file.read_text().splitlines()
        record = json.loads(lines[1])
        record["label"] = ""
        lines[1] = json.dumps(record)
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="label"):
            read_dataset(small_file)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        with pytest.raises(ParseError, match="line 1"):
            read_dataset(path)

    def test_header_only(self, small_file):
        lines = small_file.read_text().splitlines()
        _write_lines(small_file, lines[:1])
        with pytest.raises(ParseError, match="no records"):
            read_dataset(small_file)

    def test_ragged_series(self, small_file):
        lines = small_file.read_text().splitlines()
        record = json.loads(lines[1])
        record["series"] = [[0.0, 1.0], [2.0]]
        lines[1] = json.dumps(record)
        _write_lines(small_file, lines)
        with pytest.raises(ParseError, match="line 2"):
            read_dataset(small_file)


class TestScoresRoundtrip:
    def test_row_and_column_counts(self, score_table, tmp_path):
        path = tmp_path / "s.csv"
        write_scores(score_table, path)
        lines = path.read_text().splitlines()
        preamble = [l for l in lines if l.startswith("#")]
        data = [l for l in lines if not l.startswith("#")]
        assert len(preamble) == 6
        assert data[0] == "class_size,classes,rep0,rep1,mean"
        assert len(data) == 1 + 6  # header + 2 * 3 cells

    def test_mean_column(self, score_table, tmp_path):
        path = tmp_path / "s.csv"
        write_scores(score_table, path)
        for line in path.read_text().splitlines()[7:]:
            cells = line.split(",")
            reps = [float(c) for c in cells[2:4]]
            assert abs(float(cells[4]) - sum(reps) / len(reps)) <= 1e-12

    def test_parse_then_write_byte_identical(self, score_table, tmp_path):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        write_scores(score_table, first)
        parsed = read_scores(first)
        assert parsed == score_table
        write_scores(parsed, second)
        assert first.read_bytes() == second.read_bytes()

    def test_rows_in_lexicographic_order(self, score_table, tmp_path):
        path = tmp_path / "s.csv"
        write_scores(score_table, path)
        data = path.read_text().splitlines()[7:]
        keys = [tuple(line.split(",")[:2]) for line in data]
        assert keys == [
            ("2", "2"), ("2", "3"), ("2", "4"), ("3", "2"), ("3", "3"), ("3", "4"),
        ]


class TestScoresParseErrors:
    @pytest.fixture
    def csv_path(self, score_table, tmp_path):
        path = tmp_path / "s.csv"
        write_scores(score_table, path)
        return path

    def test_unsupported_version(self, csv_path):
        lines = csv_path.read_text().splitlines()
        lines[0] = "# format_version: 2"
        _write_lines(csv_path, lines)
        with pytest.raises(ParseError, match="unsupported"):
            read_scores(csv_path)

    def test_missing_preamble_entry(self, csv_path):
        lines = csv_path.read_text().splitlines()
        del lines[3]
        _write_lines(csv_path, lines)
        with pytest.raises(ParseError):
            read_scores(csv_path)

    def test_mean_mismatch(self, csv_path):
        lines = csv_path.read_text().splitlines()
        cells = lines[7].split(",")
        cells[-1] = "0.123"
        lines[7] = ",".join(cells)
        _write_lines(csv_path, lines)
        with pytest.raises(ParseError, match="mean"):
            read_scores(csv_path)

    def test_out_of_order_rows(self, csv_path):
        lines = csv_path.read_text().splitlines()
        lines[7], lines[8] = lines[8], lines[7]
        _write_lines(csv_path, lines)
        with pytest.raises(ParseError, match="order|rows"):
            read_scores(csv_path)

    def test_bad_cell_count(self, csv_path):
        lines = csv_path.read_text().splitlines()
        lines[7] += ",9"
        _write_lines(csv_path, lines)
        with pytest.raises(ParseError, match="cells"):
            read_scores(csv_path)


def craft_table(rep_scores, replicates=1):
    return ScoreTable(
        generator="cbf",
        kind=DistanceKind.DTW,
        axis_names=("class_size", "dim"),
        axis_values=(tuple(range(2, 2 + rep_scores.shape[0])), tuple(range(1, 1 + rep_scores.shape[1]))),
        fixed={"length": 125, "classes": 27},
        master_seed=3,
        replicates=replicates,
        rep_scores=rep_scores,
    )


class TestHeatmap:
    def test_cell_count(self, tmp_path):
        table = craft_table(np.linspace(0.0, 1.0, 16).reshape(4, 4, 1))
        path = tmp_path / "h.svg"
        export_heatmap(table, path)
        svg = path.read_text()
        assert svg.count('class="cell"') == 16

    def test_ramp_endpoints(self):
        table = craft_table(np.array([[[0.0], [1.0]], [[0.5], [0.25]]]))
        svg = heatmap_svg(table)
        assert "#440154" in svg  # score 0
        assert "#fde725" in svg  # score 1

    def test_axis_ticks_and_title(self):
        table = craft_table(np.zeros((2, 3, 1)))
        svg = heatmap_svg(table)
        assert "class_size" in svg and "dim" in svg
        assert "cbf" in svg and "dtw" in svg
        for tick in ("2", "3", "1"):
            assert f">{tick}</text>" in svg

    def test_deterministic_bytes(self, tmp_path):
        table = craft_table(np.linspace(0.0, 1.0, 6).reshape(2, 3, 1))
        twin = craft_table(np.linspace(0.0, 1.0, 6).reshape(2, 3, 1))
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        export_heatmap(table, a)
        export_heatmap(twin, b)
        assert a.read_bytes() == b.read_bytes()

    def test_requires_two_axes(self, tmp_path):
        table = ScoreTable(
            generator="ram",
            kind=DistanceKind.ERP,
            axis_names=("distortion",),
            axis_values=((1.0, 2.0),),
            fixed={"length": 10, "dim": 1, "radius": 5, "classes": 2, "class_size": 2},
            master_seed=0,
            replicates=1,
            rep_scores=np.zeros((2, 1)),
        )
        with pytest.raises(ValueError, match="exactly 2 axes"):
            export_heatmap(table, tmp_path / "h.svg")

    def test_sweep_to_svg_pipeline(self, score_table, tmp_path):
        csv = tmp_path / "s.csv"
        svg = tmp_path / "s.svg"
        write_scores(score_table, csv)
        export_heatmap(read_scores(csv), svg)
        assert svg.read_text().count('class="cell"') == 6


class TestHandwrittenDataset:
    def test_varying_lengths_roundtrip(self, tmp_path):
        # record lengths may differ; only dimensionality is uniform
        items = [
            LabeledSeries("a", as_series(np.arange(6.0).reshape(3, 2))),
            LabeledSeries("b", as_series(np.arange(10.0).reshape(5, 2))),
        ]
        ds = LabeledDataset(
            items=items, dimensionality=2,
            meta=DatasetMeta(generator="ram", params={"length": 3}, seed=0),
        )
        path = tmp_path / "mixed.jsonl"
        write_dataset(ds, path)
        assert read_dataset(path) == ds
