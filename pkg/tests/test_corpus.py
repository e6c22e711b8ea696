"""Ingestion, label collapsing, statistics, and stratified split tests."""

import random

import pytest

from lexfilter.corpus import (
    CorpusStats,
    Document,
    RawRecord,
    SplitSpec,
    corpus_stats,
    load_csv,
    read_documents_csv,
    read_split_manifest,
    stratified_split,
    to_binary,
    write_documents_csv,
    write_split_manifest,
)
from lexfilter.errors import DataError


def write_csv(path, rows, header="class,tweet"):
    path.write_text(header + "\n" + "\n".join(rows) + "\n", encoding="utf-8")
    return path


class TestLoadCsv:
    def test_basic_load(self, tmp_path):
        path = write_csv(tmp_path / "c.csv", ['0,"hate text"', '1,"offensive text"', '2,"fine text"'])
        result = load_csv(path)
        assert len(result.records) == 3
        assert result.skipped == 0
        assert [r.raw_class for r in result.records] == [0, 1, 2]

    def test_missing_text_skipped_and_counted(self, tmp_path):
        path = write_csv(tmp_path / "c.csv", ['0,"keep me"', "1,", '2,"also keep"'])
        result = load_csv(path)
        assert len(result.records) == 2
        assert result.skipped == 1

    def test_unknown_class_skipped(self, tmp_path):
        path = write_csv(tmp_path / "c.csv", ['0,"a"', '9,"b"', 'x,"c"'])
        result = load_csv(path)
        assert len(result.records) == 1
        assert result.skipped == 2

    def test_embedded_newline_in_quoted_field(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text('class,tweet\n0,"line one\nline two"\n1,"plain"\n', encoding="utf-8")
        result = load_csv(path)
        assert len(result.records) == 2
        assert "\n" in result.records[0].text

    def test_header_only_is_zero_valid_rows(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("class,tweet\n", encoding="utf-8")
        with pytest.raises(DataError, match="zero valid rows"):
            load_csv(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="not found"):
            load_csv(tmp_path / "absent.csv")

    def test_missing_column(self, tmp_path):
        path = write_csv(tmp_path / "c.csv", ['0,"hello"'], header="class,body")
        with pytest.raises(DataError, match="tweet"):
            load_csv(path)

    def test_custom_column_names(self, tmp_path):
        path = write_csv(tmp_path / "c.csv", ['0,"hello"'], header="label,text")
        result = load_csv(path, class_column="label", text_column="text")
        assert len(result.records) == 1

    def test_row_ids_are_positional(self, tmp_path):
        path = write_csv(tmp_path / "c.csv", ['0,"a"', "1,", '2,"b"'])
        result = load_csv(path)
        assert [r.row_id for r in result.records] == [0, 1]


class TestToBinary:
    def test_hate_maps_to_positive(self):
        docs = to_binary([RawRecord(0, 0, "x")])
        assert docs[0].label == 1

    def test_offensive_maps_to_positive(self):
        docs = to_binary([RawRecord(0, 1, "x")])
        assert docs[0].label == 1

    def test_neither_maps_to_negative(self):
        docs = to_binary([RawRecord(0, 2, "x")])
        assert docs[0].label == 0

    def test_collapse_total_and_surjective(self):
        docs = to_binary([RawRecord(i, c, "x") for i, c in enumerate([0, 1, 2])])
        assert {d.label for d in docs} == {0, 1}

    def test_doc_ids_in_input_order(self):
        records = [RawRecord(5, 2, "a"), RawRecord(9, 0, "b")]
        docs = to_binary(records)
        assert [d.doc_id for d in docs] == [0, 1]


class TestCorpusStats:
    def test_four_doc_fixture(self):
        records = [RawRecord(0, 0, "h"), RawRecord(1, 1, "o1"), RawRecord(2, 1, "o2"), RawRecord(3, 2, "n")]
        stats = corpus_stats(records)
        assert stats.per_raw_class_fraction == (0.25, 0.5, 0.25)
        assert stats.per_binary_class_fraction == (0.25, 0.75)

    def test_single_doc(self):
        stats = corpus_stats([RawRecord(0, 2, "x")])
        assert stats.per_raw_class_fraction == (0.0, 0.0, 1.0)
        assert stats.per_binary_class_fraction == (1.0, 0.0)

    def test_fractions_sum_to_one(self):
        rng = random.Random(1)
        records = [RawRecord(i, rng.choice([0, 1, 2]), "x") for i in range(137)]
        stats = corpus_stats(records)
        assert sum(stats.per_raw_class_fraction) == pytest.approx(1.0, abs=1e-9)
        assert sum(stats.per_binary_class_fraction) == pytest.approx(1.0, abs=1e-9)

    def test_documents_input_has_no_raw_fractions(self):
        stats = corpus_stats([Document(0, "x", 1), Document(1, "y", 0)])
        assert stats.per_raw_class_fraction is None
        assert stats.per_binary_class_fraction == (0.5, 0.5)

    def test_empty_raises(self):
        with pytest.raises(DataError):
            corpus_stats([])

    def test_json_keys(self):
        stats = CorpusStats(total=4, per_raw_class_fraction=(0.25, 0.5, 0.25),
                            per_binary_class_fraction=(0.25, 0.75), skipped=1)
        assert set(stats.to_dict()) == {"total", "raw_fractions", "binary_fractions", "skipped"}


def make_docs(n_pos, n_neg):
    docs = [Document(i, f"pos {i}", 1) for i in range(n_pos)]
    docs += [Document(n_pos + i, f"neg {i}", 0) for i in range(n_neg)]
    return docs


class TestStratifiedSplit:
    def test_80_20_arithmetic(self):
        train, test = stratified_split(make_docs(80, 20), SplitSpec(test_fraction=0.2, seed=1))
        test_pos = sum(1 for d in test if d.label == 1)
        test_neg = sum(1 for d in test if d.label == 0)
        assert (test_pos, test_neg) == (16, 4)
        assert len(train) == 80

    def test_same_seed_identical_membership(self):
        docs = make_docs(50, 30)
        a = stratified_split(docs, SplitSpec(seed=77))
        b = stratified_split(docs, SplitSpec(seed=77))
        assert [d.doc_id for d in a[0]] == [d.doc_id for d in b[0]]
        assert [d.doc_id for d in a[1]] == [d.doc_id for d in b[1]]

    def test_different_seed_differs(self):
        docs = make_docs(200, 100)
        a = stratified_split(docs, SplitSpec(seed=1))
        b = stratified_split(docs, SplitSpec(seed=2))
        assert {d.doc_id for d in a[1]} != {d.doc_id for d in b[1]}

    def test_partition_property(self):
        rng = random.Random(3)
        for _ in range(20):
            docs = make_docs(rng.randint(2, 60), rng.randint(2, 60))
            spec = SplitSpec(test_fraction=rng.uniform(0.05, 0.9), seed=rng.randint(0, 999))
            train, test = stratified_split(docs, spec)
            train_ids = {d.doc_id for d in train}
            test_ids = {d.doc_id for d in test}
            assert train_ids.isdisjoint(test_ids)
            assert train_ids | test_ids == {d.doc_id for d in docs}
            assert len(train) + len(test) == len(docs)

    def test_stratification_within_tolerance(self):
        rng = random.Random(4)
        for _ in range(20):
            n_pos, n_neg = rng.randint(5, 200), rng.randint(5, 200)
            fraction = rng.uniform(0.1, 0.5)
            _, test = stratified_split(make_docs(n_pos, n_neg), SplitSpec(test_fraction=fraction, seed=0))
            for label, n_class in ((1, n_pos), (0, n_neg)):
                got = sum(1 for d in test if d.label == label) / n_class
                assert abs(got - fraction) <= 1.0 / n_class + 1e-12

    def test_input_order_does_not_change_membership(self):
        docs = make_docs(40, 25)
        spec = SplitSpec(seed=9)
        _, test_a = stratified_split(docs, spec)
        shuffled = docs[:]
        random.Random(0).shuffle(shuffled)
        _, test_b = stratified_split(shuffled, spec)
        assert {d.doc_id for d in test_a} == {d.doc_id for d in test_b}

    def test_each_class_contributes_at_least_one(self):
        train, test = stratified_split(make_docs(2, 2), SplitSpec(test_fraction=0.2, seed=0))
        assert sum(1 for d in test if d.label == 1) == 1
        assert sum(1 for d in test if d.label == 0) == 1

    def test_small_class_raises(self):
        with pytest.raises(DataError):
            stratified_split(make_docs(5, 1), SplitSpec(seed=0))

    def test_unstratified_split(self):
        docs = make_docs(50, 50)
        train, test = stratified_split(docs, SplitSpec(test_fraction=0.3, seed=0, stratified=False))
        assert len(test) == 30
        assert len(train) == 70

    def test_output_preserves_input_order(self):
        docs = make_docs(30, 30)
        train, test = stratified_split(docs, SplitSpec(seed=5))
        assert [d.doc_id for d in train] == sorted(d.doc_id for d in train)
        assert [d.doc_id for d in test] == sorted(d.doc_id for d in test)


class TestSplitSpecValidation:
    def test_fraction_bounds(self):
        with pytest.raises(ValueError):
            SplitSpec(test_fraction=0.0)
        with pytest.raises(ValueError):
            SplitSpec(test_fraction=1.0)


class TestFileFormats:
    def test_documents_csv_round_trip(self, tmp_path):
        docs = [Document(0, 'she said "hi"\nand left', 1), Document(1, "plain", 0)]
        path = tmp_path / "docs.csv"
        write_documents_csv(docs, path)
        assert read_documents_csv(path) == docs

    def test_manifest_round_trip(self, tmp_path):
        docs = make_docs(3, 2)
        path = tmp_path / "manifest.csv"
        write_split_manifest(docs, path)
        assert read_split_manifest(path) == [d.doc_id for d in docs]
        assert path.read_text().splitlines()[0] == "doc_id,label"

    def test_documents_csv_byte_stable(self, tmp_path):
        docs = make_docs(4, 4)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_documents_csv(docs, a)
        write_documents_csv(docs, b)
        assert a.read_bytes() == b.read_bytes()
