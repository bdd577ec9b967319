import json

import pytest

from locus_mcda import (
    Chromosome,
    GAReport,
    ParseError,
    RankedOrder,
    RankEntry,
    ValidationError,
    classify,
    conditions_of,
    ElectreThresholds,
    flows,
    load_criteria,
    load_flow_table,
    load_matrix,
    load_pi_matrix,
    load_portfolio,
    rank_promethee_i,
    rank_promethee_ii,
    screen,
    write_matrix,
    write_report,
    write_text_atomic,
)
from locus_mcda import data_io as dio


class TestLoadMatrix:
    def test_bundled_case_study(self, med10):
        assert len(med10.alternatives) == 10
        assert len(med10.criteria) == 10
        assert med10.value("Algeria", "C_Infra1") == 1086.3

    def test_no_alternatives(self, tmp_path, med10_criteria):
        path = tmp_path / "empty.csv"
        header = "alternative," + ",".join(c.id for c in med10_criteria)
        path.write_text(header + "\n")
        with pytest.raises(ParseError, match="no alternatives"):
            load_matrix(path, med10_criteria)

    def test_bad_cell_names_row_and_column(self, tmp_path, med10_criteria):
        source = dio.fixture_path("med10.csv").read_text().splitlines()
        source[3] = source[3].replace("5636.4", "abc")
        path = tmp_path / "bad.csv"
        path.write_text("\n".join(source) + "\n")
        with pytest.raises(ParseError, match=r"row 4.*C_Infra1.*abc"):
            load_matrix(path, med10_criteria)

    def test_duplicate_alternative(self, tmp_path, med10_criteria):
        source = dio.fixture_path("med10.csv").read_text().splitlines()
        source.append(source[1])
        path = tmp_path / "dup.csv"
        path.write_text("\n".join(source) + "\n")
        with pytest.raises(ParseError, match="duplicate alternative"):
            load_matrix(path, med10_criteria)

    def test_missing_column(self, tmp_path, med10_criteria):
        path = tmp_path / "narrow.csv"
        path.write_text("alternative,C_Infra1\nAlgeria,1.0\n")
        with pytest.raises(ParseError, match="missing criterion columns"):
            load_matrix(path, med10_criteria)

    def test_column_order_is_free(self, tmp_path, med10_criteria, med10):
        rows = dio.fixture_path("med10.csv").read_text().splitlines()
        cells = [line.split(",") for line in rows]
        permuted = [[row[0]] + row[1:][::-1] for row in cells]
        path = tmp_path / "permuted.csv"
        path.write_text("\n".join(",".join(row) for row in permuted) + "\n")
        assert load_matrix(path, med10_criteria) == med10


class TestLoadPiMatrix:
    def test_bundled_grid(self, med10_pi):
        assert med10_pi.size == 10
        assert med10_pi.value("Algeria", "France") == 0.7

    def test_out_of_range_entry(self, tmp_path):
        path = tmp_path / "pi.csv"
        path.write_text("pi,a,b\na,-,1.3\nb,0.2,-\n")
        with pytest.raises(ParseError, match=r"outside \[0, 1\]"):
            load_pi_matrix(path)

    def test_missing_row_label(self, tmp_path):
        path = tmp_path / "pi.csv"
        path.write_text("pi,a,b\n,0,0.5\nb,0.2,-\n")
        with pytest.raises(ParseError, match="missing row label"):
            load_pi_matrix(path)

    def test_non_square(self, tmp_path):
        path = tmp_path / "pi.csv"
        path.write_text("pi,a,b\na,-,0.5\n")
        with pytest.raises(ParseError, match="not square"):
            load_pi_matrix(path)

    def test_label_mismatch(self, tmp_path):
        path = tmp_path / "pi.csv"
        path.write_text("pi,a,b\nb,-,0.5\na,0.2,-\n")
        with pytest.raises(ParseError, match="does not match"):
            load_pi_matrix(path)


class TestLoadCriteria:
    def test_unknown_kind(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"criteria": [{"id": "x", "pref_fn": {"kind": "zigzag"}}]}))
        with pytest.raises(ParseError, match="zigzag"):
            load_criteria(path)

    def test_bad_condition_keys(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"criteria": [{"id": "x", "condition": {"low": 1}}]}))
        with pytest.raises(ParseError, match="unknown condition keys"):
            load_criteria(path)

    def test_duplicate_ids(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"criteria": [{"id": "x"}, {"id": "x"}]}))
        with pytest.raises(ParseError, match="duplicate criterion ids"):
            load_criteria(path)

    def test_defaults(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"criteria": [{"id": "x", "direction": "min"}]}))
        (crit,) = load_criteria(path)
        assert crit.weight == 1.0
        assert crit.pref_fn.kind.value == "usual"
        assert crit.condition is None


class TestLoadPortfolio:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(
            json.dumps({"mu": [0.1, 0.2], "cov": [[0.04, 0.0], [0.0, 0.04]], "target_return": 0.15})
        )
        spec = load_portfolio(path)
        assert spec.mu == (0.1, 0.2)
        assert spec.target_return == 0.15

    def test_missing_keys(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps({"mu": [0.1]}))
        with pytest.raises(ParseError):
            load_portfolio(path)


class TestWriteReport:
    def test_same_input_same_bytes(self, med10, med10_pi):
        table = flows(med10_pi)
        relations = classify(med10, ElectreThresholds())
        screening = screen(med10, conditions_of(med10))
        for result in (table, rank_promethee_ii(table), rank_promethee_i(table), relations, screening):
            for fmt in ("table", "csv", "json"):
                assert write_report(result, fmt) == write_report(result, fmt)

    def test_flow_precision_is_six_decimals(self, med10_pi):
        text = write_report(flows(med10_pi), "table")
        algeria = next(line for line in text.splitlines() if line.startswith("Algeria"))
        for token in ("0.555556", "0.477778", "0.077778"):
            assert token in algeria

    def test_flow_csv_roundtrips_through_loader(self, tmp_path, med10_pi):
        text = write_report(flows(med10_pi), "csv")
        path = tmp_path / "flows.csv"
        path.write_text(text)
        again = write_report(load_flow_table(path), "csv")
        assert again == text

    def test_unknown_format_rejected(self, med10_pi):
        with pytest.raises(ValidationError):
            write_report(flows(med10_pi), "yaml")

    def test_empty_history_gives_header_only_section(self):
        report = GAReport(
            best_chromosome=Chromosome((1.0,)),
            best_fitness=0.5,
            history=(),
            final_ranking=RankedOrder((RankEntry("candidate_1", 1),)),
            final_net_flows={"candidate_1": 0.5},
            best_profile_by_criterion={"c0": 1.0},
            cache_stats=(0, 1),
        )
        text = write_report(report, "table")
        section = text.split("history\n", 1)[1]
        assert section.splitlines()[0].split() == ["generation", "best", "mean"]
        assert section.splitlines()[1] == ""

    def test_json_is_valid_json(self, med10_pi):
        payload = json.loads(write_report(flows(med10_pi), "json"))
        assert payload["flows"][0]["alternative"] == "Algeria"


class TestMatrixRoundTrip:
    def test_load_write_load_is_identity(self, med10, med10_criteria, tmp_path):
        text = write_matrix(med10)
        path = tmp_path / "again.csv"
        path.write_text(text)
        assert load_matrix(path, med10_criteria) == med10


class TestAtomicWrite:
    def test_writes_and_leaves_no_temp(self, tmp_path):
        path = tmp_path / "out.txt"
        write_text_atomic(path, "hello\n")
        assert path.read_text() == "hello\n"
        assert list(tmp_path.iterdir()) == [path]

    def test_overwrites_existing(self, tmp_path):
        path = tmp_path / "out.txt"
        path.write_text("old")
        write_text_atomic(path, "new\n")
        assert path.read_text() == "new\n"


class TestFlowDeltaReport:
    def test_identical_tables_report_nothing(self, med10_pi):
        table = flows(med10_pi)
        text = dio.flow_delta_report(table, table)
        assert text == "alternative,phi_plus_computed,phi_plus_printed,delta\n"
