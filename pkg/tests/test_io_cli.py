import json

import pytest

from anonarray import ParseError
from anonarray.cli import main
from anonarray.io import (
    load_array,
    load_constraints,
    load_schema,
    parse_array,
    parse_constraints,
    parse_schema,
    serialize_array,
    serialize_constraints,
    serialize_schema,
)

from conftest import FIXTURES


@pytest.fixture(scope="module")
def schema():
    return load_schema(FIXTURES / "university_schema.json")


class TestDocuments:
    def test_schema_round_trip(self, schema):
        assert parse_schema(serialize_schema(schema)) == schema

    def test_array_round_trip(self, schema):
        array = load_array(FIXTURES / "array_b.csv", schema)
        assert array.n_rows == 12
        assert array.row_labels[0] == "1"
        assert parse_array(serialize_array(array), schema) == array

    def test_array_without_id_column(self, schema):
        array = load_array(FIXTURES / "array_a.csv", schema)
        text = "\n".join(
            line.split(",", 1)[1] for line in serialize_array(array).splitlines()
        )
        again = parse_array(text, schema)
        assert again.rows == array.rows
        assert again.row_labels is None

    def test_constraints_round_trip(self, schema):
        cons, allowed = load_constraints(
            FIXTURES / "university_constraints.json", schema
        )
        assert len(cons.hard) == 2
        assert len(cons.soft) == 1
        assert allowed is None
        again, _ = parse_constraints(serialize_constraints(cons, schema), schema)
        assert again == cons

    def test_unknown_label_is_error_with_location(self, schema):
        text = "Role,Job,Department,Semester\nfaculty,instructor,CS,Winter\n"
        with pytest.raises(ParseError) as exc:
            parse_array(text, schema, filename="bad.csv")
        assert exc.value.line == 2
        assert "Winter" in str(exc.value)
        assert "bad.csv" in str(exc.value)

    def test_reordered_columns_rejected(self, schema):
        text = "Job,Role,Department,Semester\ninstructor,faculty,CS,Spring\n"
        with pytest.raises(ParseError):
            parse_array(text, schema)

    def test_allowed_column_sets(self, schema):
        doc = json.dumps(
            {"hard": [], "allowed_column_sets": [["Role", "Job"], ["Job", "Semester"]]}
        )
        _, allowed = parse_constraints(doc, schema)
        assert allowed == [(0, 1), (1, 3)]

    def test_overlapping_kinds_rejected(self, schema):
        doc = json.dumps(
            {
                "hard": [[["Role", "faculty"], ["Job", "grader"]]],
                "soft": [[["Role", "faculty"], ["Job", "grader"]]],
            }
        )
        with pytest.raises(ParseError):
            parse_constraints(doc, schema)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCliVerify:
    def test_array_b_r2(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            FIXTURES / "university_schema.json",
            FIXTURES / "array_b.csv",
            FIXTURES / "university_constraints.json",
            "--t",
            "2",
        )
        assert code == 0
        assert "r = 2" in out

    def test_array_a_target_violated(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            FIXTURES / "university_schema.json",
            FIXTURES / "array_a.csv",
            FIXTURES / "university_constraints.json",
            "--t",
            "2",
            "--r",
            "2",
        )
        assert code == 2
        assert "grader" in out and "CS" in out

    def test_halfspace_clean(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            FIXTURES / "binary3_schema.json",
            FIXTURES / "halfspace_array.csv",
            FIXTURES / "halfspace_constraints.json",
            "--t",
            "2",
        )
        assert code == 0
        assert "r = 2" in out

    def test_hard_violation_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        text = (FIXTURES / "halfspace_array.csv").read_text().replace(
            "1,0,0", "0,0,0", 1
        )
        bad.write_text(text)
        code, out, _ = run(
            capsys,
            "verify",
            FIXTURES / "binary3_schema.json",
            bad,
            FIXTURES / "halfspace_constraints.json",
            "--t",
            "2",
        )
        assert code == 3
        assert "hard violation" in out

    def test_json_output(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            FIXTURES / "university_schema.json",
            FIXTURES / "array_b.csv",
            FIXTURES / "university_constraints.json",
            "--t",
            "2",
            "--json",
        )
        doc = json.loads(out)
        assert doc["format_version"] == 1
        assert doc["r"] == 2

    def test_parse_error_exit_1(self, capsys, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        code, _, err = run(
            capsys, "verify", broken, FIXTURES / "array_a.csv", "--t", "2"
        )
        assert code == 1
        assert "broken.json" in err


class TestCliProfile:
    def test_array_b(self, capsys):
        code, out, _ = run(
            capsys,
            "profile",
            FIXTURES / "university_schema.json",
            FIXTURES / "array_b.csv",
            FIXTURES / "university_constraints.json",
            "--json",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["entries"] == [
            {"t": 1, "r": 4},
            {"t": 2, "r": 2},
            {"t": 3, "r": 1},
        ]


class TestCliHomogeneity:
    @pytest.mark.parametrize(
        "fixture,expected",
        [
            ("full_factorial.csv", "min 0.5 max 0.5 global 0.5"),
            ("fractional_replicated.csv", "min 0.583333 max 0.583333 global 0.583333"),
            ("two_groups.csv", "min 0.5 max 1.5 global 0.75"),
        ],
    )
    def test_table_scores(self, capsys, fixture, expected):
        code, out, _ = run(
            capsys,
            "homogeneity",
            FIXTURES / "binary3_schema.json",
            FIXTURES / fixture,
            "--t",
            "2",
        )
        assert code == 0
        assert out.splitlines()[0] == expected

    def test_hypergraph_export(self, capsys, tmp_path):
        out_file = tmp_path / "graph.json"
        code, _, _ = run(
            capsys,
            "homogeneity",
            FIXTURES / "binary3_schema.json",
            FIXTURES / "two_groups.csv",
            "--t",
            "2",
            "--hypergraph",
            "json",
            "--hypergraph-out",
            out_file,
        )
        assert code == 0
        doc = json.loads(out_file.read_text())
        assert len(doc["edges"]) == 6

    def test_closeness_dump(self, capsys):
        code, out, _ = run(
            capsys,
            "homogeneity",
            FIXTURES / "binary3_schema.json",
            FIXTURES / "two_groups.csv",
            "--t",
            "2",
            "--closeness",
            "--json",
        )
        doc = json.loads(out)
        assert doc["closeness"][0][1] == "1.5"
        assert doc["closeness"][0][0] == "0"


class TestCliConstruct:
    def test_pad_array_a(self, capsys, tmp_path):
        out_file = tmp_path / "padded.csv"
        code, out, _ = run(
            capsys,
            "construct",
            FIXTURES / "university_schema.json",
            FIXTURES / "array_a.csv",
            FIXTURES / "university_constraints.json",
            "--r",
            "2",
            "--t",
            "2",
            "--seed",
            "0",
            "--json",
            "-o",
            out_file,
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["rows"] == 12
        assert doc["padding_count"] == 6
        assert doc["achieved_r"] == 2
        schema = load_schema(FIXTURES / "university_schema.json")
        padded = load_array(out_file, schema)
        assert padded.n_rows == 12

    def test_infeasible_exit_5(self, capsys):
        code, _, err = run(
            capsys,
            "construct",
            FIXTURES / "binary3_schema.json",
            "-",
            FIXTURES / "pair_block_constraints.json",
            "--r",
            "2",
            "--t",
            "2",
        )
        assert code == 5
        assert "a3" in err

    def test_already_satisfied(self, capsys, tmp_path):
        out_file = tmp_path / "same.csv"
        code, out, _ = run(
            capsys,
            "construct",
            FIXTURES / "university_schema.json",
            FIXTURES / "array_b.csv",
            FIXTURES / "university_constraints.json",
            "--r",
            "2",
            "--t",
            "2",
            "--json",
            "-o",
            out_file,
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["padding_count"] == 0
        assert doc["rows"] == 12

    def test_budget_exit_4(self, capsys):
        code, _, _ = run(
            capsys,
            "construct",
            FIXTURES / "university_schema.json",
            FIXTURES / "array_a.csv",
            FIXTURES / "university_constraints.json",
            "--r",
            "2",
            "--t",
            "2",
            "--max-rows",
            "8",
        )
        assert code == 4

    def test_same_seed_same_output(self, capsys, tmp_path):
        outputs = []
        for name in ("one.csv", "two.csv"):
            out_file = tmp_path / name
            run(
                capsys,
                "construct",
                FIXTURES / "university_schema.json",
                FIXTURES / "array_a.csv",
                FIXTURES / "university_constraints.json",
                "--r",
                "2",
                "--t",
                "2",
                "--seed",
                "11",
                "-o",
                out_file,
            )
            outputs.append(out_file.read_bytes())
        assert outputs[0] == outputs[1]


class TestCliConstraintsDerive:
    def test_pair_block(self, capsys):
        code, out, _ = run(
            capsys,
            "constraints-derive",
            FIXTURES / "binary3_schema.json",
            FIXTURES / "pair_block_constraints.json",
            "--t",
            "2",
            "--json",
        )
        doc = json.loads(out)
        assert code == 5
        assert doc["implicit_hard"] == [[["a1", "0"]]]
        assert doc["feasible"] is False

    def test_promoted_feasible(self, capsys):
        code, out, _ = run(
            capsys,
            "constraints-derive",
            FIXTURES / "binary3_schema.json",
            FIXTURES / "halfspace_constraints.json",
            "--t",
            "2",
            "--json",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["feasible"] is True
