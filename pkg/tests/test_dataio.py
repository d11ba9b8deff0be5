"""CSV/JSON persistence tests."""

import json
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freqsynth import (
    Dataset,
    EvalReport,
    TransferMatrix,
    load_csv,
    load_generator_config,
    load_registry,
    save_csv,
    save_matrix_csv,
    save_periodogram_csv,
    save_reports_csv,
    save_reports_json,
    save_table_csv,
    scaled_periodogram,
)
from freqsynth.errors import (
    DuplicateId,
    EmptyDataset,
    MissingHeader,
    NonNumericCell,
    RaggedRows,
    UnknownSamplingRate,
)


def write(path, text):
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


class TestCsvRoundTrip:
    def test_small_example(self, tmp_path):
        ds = Dataset(
            values=np.array([[1.5, -2.0, 3.25], [0.0, 7.5, -1.125]]),
            channel_names=("alpha", "beta"),
        )
        path = str(tmp_path / "small.csv")
        save_csv(ds, path)
        back = load_csv(path)
        assert back.values.shape == (2, 3)
        assert np.array_equal(back.values, ds.values)
        assert back.channel_names == ("alpha", "beta")

    @settings(max_examples=30, deadline=None)
    @given(
        d=st.integers(min_value=1, max_value=4),
        n=st.integers(min_value=1, max_value=20),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    def test_round_trip_property(self, d, n, seed):
        import tempfile

        vals = np.random.default_rng(seed).normal(scale=1e3, size=(d, n))
        ds = Dataset(values=vals, channel_names=tuple(f"c{i}" for i in range(d)))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "rt.csv")
            save_csv(ds, path)
            back = load_csv(path)
        assert back.values.shape == ds.values.shape
        assert np.max(np.abs(back.values - ds.values)) <= 1e-12 * np.max(
            np.abs(ds.values)
        )

    def test_one_by_one(self, tmp_path):
        ds = Dataset(values=np.array([[4.25]]), channel_names=("only",))
        path = str(tmp_path / "tiny.csv")
        save_csv(ds, path)
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert len(lines) == 2
        assert lines[0] == "date,only"

    def test_unicode_names(self, tmp_path):
        ds = Dataset(
            values=np.array([[1.0, 2.0]]), channel_names=("température",)
        )
        path = str(tmp_path / "uni.csv")
        save_csv(ds, path)
        assert load_csv(path).channel_names == ("température",)

    def test_date_column_is_index(self, tmp_path):
        ds = Dataset(values=np.array([[5.0, 6.0, 7.0]]), channel_names=("x",))
        path = str(tmp_path / "idx.csv")
        save_csv(ds, path)
        with open(path, encoding="utf-8") as f:
            rows = f.read().splitlines()[1:]
        assert [r.split(",")[0] for r in rows] == ["0", "1", "2"]

    def test_calendar_dates_ignored_on_load(self, tmp_path):
        path = str(tmp_path / "cal.csv")
        write(path, "date,x\n2020-01-01,1.5\n2020-01-02,2.5\n")
        ds = load_csv(path)
        assert np.array_equal(ds.values, [[1.5, 2.5]])

    def test_rate_tag_passthrough(self, tmp_path):
        ds = Dataset(values=np.array([[1.0, 2.0]]), channel_names=("x",))
        path = str(tmp_path / "rate.csv")
        save_csv(ds, path)
        assert load_csv(path, rate="1h").rate == "1h"

    def test_no_stray_temp_files(self, tmp_path):
        ds = Dataset(values=np.array([[1.0, 2.0]]), channel_names=("x",))
        save_csv(ds, str(tmp_path / "a.csv"))
        assert sorted(os.listdir(tmp_path)) == ["a.csv"]


class TestLoadErrors:
    def test_empty_file(self, tmp_path):
        path = str(tmp_path / "empty.csv")
        write(path, "")
        with pytest.raises(MissingHeader):
            load_csv(path)

    def test_single_column_header(self, tmp_path):
        path = str(tmp_path / "one.csv")
        write(path, "date\n0\n")
        with pytest.raises(MissingHeader):
            load_csv(path)

    def test_numeric_first_row(self, tmp_path):
        path = str(tmp_path / "nohdr.csv")
        write(path, "0,1.5\n1,2.5\n")
        with pytest.raises(MissingHeader):
            load_csv(path)

    def test_header_only(self, tmp_path):
        path = str(tmp_path / "hdr.csv")
        write(path, "date,x\n")
        with pytest.raises(EmptyDataset):
            load_csv(path)

    def test_ragged_row_coordinates(self, tmp_path):
        path = str(tmp_path / "ragged.csv")
        write(path, "date,x,y\n0,1,2\n1,3\n")
        with pytest.raises(RaggedRows) as exc:
            load_csv(path)
        assert exc.value.row == 2

    def test_non_numeric_cell_coordinates(self, tmp_path):
        # bad value in data row 5, absolute column 2 (first channel)
        path = str(tmp_path / "bad.csv")
        body = "".join(f"{i},{float(i)}\n" for i in range(4))
        write(path, "date,x\n" + body + "4,oops\n")
        with pytest.raises(NonNumericCell) as exc:
            load_csv(path)
        assert (exc.value.row, exc.value.col) == (5, 2)

    def test_save_empty_dataset(self, tmp_path):
        ds = Dataset(values=np.empty((0, 0)), channel_names=())
        with pytest.raises(EmptyDataset):
            save_csv(ds, str(tmp_path / "never.csv"))
        assert not os.listdir(tmp_path)


class TestRegistry:
    def test_parse_and_rate(self, tmp_path):
        path = str(tmp_path / "reg.json")
        write(
            path,
            json.dumps(
                [
                    {"id": "etth1", "rate": "1h", "sector": "Energy"},
                    {"id": "traffic", "rate": "1h", "path": "traffic.csv"},
                ]
            ),
        )
        entries = load_registry(path)
        assert [e.id for e in entries] == ["etth1", "traffic"]
        assert entries[0].rate == "1h"
        assert entries[0].sector == "Energy"
        from freqsynth import freq_from_sampling_rate

        assert freq_from_sampling_rate(entries[0].rate).omega_bar == 1 / 24

    def test_duplicate_id(self, tmp_path):
        path = str(tmp_path / "dup.json")
        write(
            path,
            json.dumps([{"id": "x", "rate": "1h"}, {"id": "x", "rate": "1d"}]),
        )
        with pytest.raises(DuplicateId):
            load_registry(path)

    def test_unknown_rate(self, tmp_path):
        path = str(tmp_path / "badrate.json")
        write(path, json.dumps([{"id": "x", "rate": "3h"}]))
        with pytest.raises(UnknownSamplingRate):
            load_registry(path)

    def test_custom_rate_ok(self, tmp_path):
        path = str(tmp_path / "custom.json")
        write(path, json.dumps([{"id": "x", "rate": "custom:36"}]))
        assert load_registry(path)[0].rate == "custom:36"


class TestGeneratorConfigFile:
    def test_subset_plus_overrides(self, tmp_path):
        path = str(tmp_path / "cfg.json")
        write(path, json.dumps({"omega_bar": 0.05, "h": 2, "n": 512}))
        cfg = load_generator_config(path, seed=9)
        assert (cfg.omega_bar, cfg.h, cfg.n, cfg.seed) == (0.05, 2, 512, 9)
        assert cfg.m == 100

    def test_override_beats_file(self, tmp_path):
        path = str(tmp_path / "cfg2.json")
        write(path, json.dumps({"omega_bar": 0.05, "h": 2}))
        assert load_generator_config(path, h=4).h == 4

    def test_none_override_ignored(self, tmp_path):
        path = str(tmp_path / "cfg3.json")
        write(path, json.dumps({"omega_bar": 0.05, "h": 2}))
        assert load_generator_config(path, h=None).h == 2

    def test_unknown_key_rejected(self, tmp_path):
        path = str(tmp_path / "cfg4.json")
        write(path, json.dumps({"omega_bar": 0.05, "bogus": 1}))
        with pytest.raises(ValueError):
            load_generator_config(path)


class TestReportAndTableWriters:
    def _reports(self):
        return [
            EvalReport(
                dataset="d1", horizon=96, mse=0.5, mae=0.25, model="ridge", seed=3
            ),
            EvalReport(dataset="d2", horizon=192, mse=1.5, mae=0.75, model="naive"),
        ]

    def test_reports_json(self, tmp_path):
        path = str(tmp_path / "r.json")
        save_reports_json(self._reports(), path)
        docs = json.loads(open(path, encoding="utf-8").read())
        assert len(docs) == 2
        assert docs[0]["dataset"] == "d1"
        assert docs[0]["mse"] == 0.5
        assert docs[1]["seed"] is None

    def test_reports_csv_header(self, tmp_path):
        path = str(tmp_path / "r.csv")
        save_reports_csv(self._reports(), path)
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[0] == "dataset,horizon,mse,mae,model,seed"
        assert len(lines) == 3

    def test_periodogram_csv(self, tmp_path):
        p = scaled_periodogram(np.sin(2 * np.pi * np.arange(64) / 8))
        path = str(tmp_path / "p.csv")
        save_periodogram_csv(p, path)
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[0] == "frequency,power"
        assert len(lines) == len(p) + 1
        freqs = np.array([float(l.split(",")[0]) for l in lines[1:]])
        powers = np.array([float(l.split(",")[1]) for l in lines[1:]])
        assert np.max(np.abs(freqs - p.freqs)) < 1e-9
        assert np.max(np.abs(powers - p.powers)) < 1e-9 * max(p.powers.max(), 1)

    def test_matrix_csv(self, tmp_path):
        tm = TransferMatrix(
            train_ids=("a", "b"),
            test_ids=("a", "b"),
            raw=np.array([[0.1, 0.2], [0.3, 0.4]]),
            scaled=np.array([[0.0, 1.0], [1.0, 0.0]]),
        )
        path = str(tmp_path / "m.csv")
        save_matrix_csv(tm, path, kind="scaled")
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[0].split(",")[1:] == ["a", "b"]
        assert lines[1].split(",")[0] == "a"
        with pytest.raises(ValueError):
            save_matrix_csv(tm, path, kind="nope")

    def test_table_csv(self, tmp_path):
        path = str(tmp_path / "t.csv")
        save_table_csv([(0, 0.5), (1, 1.5)], ["count", "mse"], path)
        lines = open(path, encoding="utf-8").read().splitlines()
        assert lines[0] == "count,mse"
        assert lines[1].startswith("0,")
