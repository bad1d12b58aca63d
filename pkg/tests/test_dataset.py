import numpy as np
import pytest

from proxauth.dataset import COLUMNS, Dataset, Sample
from proxauth.errors import EmptyInputError, ValidationError

ROWS = [
    [1, 1, 2412, -65, 1, 1],
    [2, 3, 2437, -72, 2, 1],
    [1, 2, 2462, -80, 1, 0],
    [2, 2, 2462, -55, 3, 0],
]


def test_basic_accessors():
    ds = Dataset(ROWS)
    assert len(ds) == 4
    assert ds.class_counts() == {1: 2, 0: 2}
    assert ds.features.shape == (4, 5)
    assert ds.features.dtype == np.float64
    assert list(ds.labels) == [1, 1, 0, 0]
    assert ds.sample_at(0) == Sample(1, 1, 2412, -65, 1, 1)
    assert ds.sample_at(0).as_row() == (1, 1, 2412, -65, 1, 1)


def test_rows_are_read_only():
    ds = Dataset(ROWS)
    with pytest.raises(ValueError):
        ds.rows[0, 0] = 99


def test_wrong_column_count_rejected():
    with pytest.raises(ValidationError):
        Dataset([[1, 2, 3]])


def test_subset_and_concat():
    ds = Dataset(ROWS)
    head = ds.subset([0, 1])
    tail = ds.subset([2, 3])
    assert len(head) == 2
    assert Dataset.concat([head, tail]) == ds
    assert len(Dataset.concat([])) == 0


def test_csv_round_trip(tmp_path):
    ds = Dataset(ROWS)
    path = tmp_path / "d.csv"
    ds.to_csv(path)
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(COLUMNS)
    assert Dataset.from_csv(path) == ds
    assert Dataset.load(path) == ds


def test_jsonl_round_trip(tmp_path):
    ds = Dataset(ROWS)
    path = tmp_path / "d.jsonl"
    ds.to_jsonl(path)
    assert Dataset.from_jsonl(path) == ds
    assert Dataset.load(path) == ds


def test_empty_dataset_keeps_schema(tmp_path):
    ds = Dataset([])
    assert len(ds) == 0
    assert ds.rows.shape == (0, len(COLUMNS))
    path = tmp_path / "empty.csv"
    ds.to_csv(path)
    assert path.read_text() == ",".join(COLUMNS) + "\n"
    assert len(Dataset.from_csv(path)) == 0


def test_empty_file_rejected(tmp_path):
    path = tmp_path / "e.csv"
    path.write_text("")
    with pytest.raises(EmptyInputError):
        Dataset.from_csv(path)


def test_bad_header_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c,d,e,f\n1,2,3,4,5,6\n")
    with pytest.raises(ValidationError):
        Dataset.from_csv(path)


def test_jsonl_missing_field_rejected(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"RPi": 1, "SSID": 2}\n')
    with pytest.raises(ValidationError):
        Dataset.from_jsonl(path)
