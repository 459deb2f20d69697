import json
import math
import subprocess
import sys

import pytest

from alphaleak import dist, make_channel
from alphaleak.cli import (
    Measure,
    ReportRow,
    emit_csv,
    format_number,
    main,
    parse_alphas,
    parse_measures,
    run_measure,
)
from alphaleak.errors import DimensionMismatch, ParseError, ValidationError
from alphaleak.problem import ProblemSpec, dump_problem, parse_problem, problem_from_dict
from conftest import FIXTURES

BSC = str(FIXTURES / "bsc_uniform.json")
IDENTITY3 = str(FIXTURES / "identity3_uniform.json")


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "alphaleak", *args],
                          capture_output=True, text=True, timeout=300)


def render(rows, tmp_path):
    out = tmp_path / "out.csv"
    emit_csv(rows, str(out))
    return out.read_bytes().decode()


def write_doc(tmp_path, doc, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_parse_canonical_fixture():
    spec = parse_problem(BSC)
    assert spec.prior.probs.tolist() == [0.5, 0.5]
    assert spec.channel.rows.tolist() == [[0.75, 0.25], [0.25, 0.75]]
    assert spec.attr_channel is None and spec.name == "bsc-0.25-uniform"


def test_invalid_prior_names_the_field():
    with pytest.raises(ValidationError) as exc:
        problem_from_dict({"prior": [0.5, 0.6], "channel": [[1, 0], [0, 1]]})
    assert exc.value.field == "prior"


def test_channel_row_count_mismatch():
    with pytest.raises(DimensionMismatch) as exc:
        problem_from_dict({"prior": [0.5, 0.5], "channel": [[1, 0]]})
    assert exc.value.field == "channel" and "row count" in str(exc.value)


@pytest.mark.parametrize("doc", [
    [0.5, 0.5],
    {"prior": [0.5, 0.5]},
    {"prior": [0.5, 0.5], "channel": [[1, 0], [0, 1]], "extra": 1},
    {"prior": ["a", "b"], "channel": [[1, 0], [0, 1]]},
    {"prior": [0.5, 0.5], "channel": [1, 0]},
    {"prior": [0.5, 0.5], "channel": [[1, 0], [0, 1]], "labels_u": ["u"]},
])
def test_malformed_documents(doc):
    with pytest.raises(ParseError):
        problem_from_dict(doc)


def test_unreadable_and_malformed_files(tmp_path):
    with pytest.raises(ParseError):
        parse_problem(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{prior: ")
    with pytest.raises(ParseError):
        parse_problem(str(bad))


def test_round_trip(tmp_path):
    attr = make_channel([[0.9, 0.1], [0.2, 0.8], [0.5, 0.5]], ("a", "b", "c"), ("u0", "u1"))
    main_ch = make_channel([[0.5, 0.5], [0.1, 0.9], [1.0, 0.0]], ("a", "b", "c"), ("lo", "hi"))
    spec = ProblemSpec(dist([0.2, 0.3, 0.5], ("a", "b", "c")), main_ch, attr, "round-trip")
    path = tmp_path / "spec.json"
    dump_problem(spec, str(path))
    back = parse_problem(str(path))
    assert back.name == spec.name and back.prior == spec.prior
    assert back.channel.rows.tolist() == spec.channel.rows.tolist()
    assert back.channel.output_labels == ("lo", "hi")
    assert back.attr_channel.rows.tolist() == attr.rows.tolist()


def test_parse_flags():
    assert parse_alphas("inf, 2,0.5,2") == [0.5, 2.0, math.inf]
    for bad in ("", "-1", "two", "nan"):
        with pytest.raises(ParseError):
            parse_alphas(bad)
    assert parse_measures("sibson,pml") == {Measure.SIBSON, Measure.PML}
    with pytest.raises(ParseError):
        parse_measures("shannon")


def test_number_format():
    assert format_number(math.log(1.25)) == "0.223143551314"
    assert format_number(-0.0) == "0"
    assert format_number(math.inf) == "inf"
    assert format_number(float("nan")) == "nan"


def test_emit_empty_rows(tmp_path):
    assert render([], tmp_path) == "alpha,measure,y,value_nats,value_bits\n"


def test_emit_sibson_row(tmp_path):
    rows = run_measure(parse_problem(BSC), [2.0], {Measure.SIBSON})
    assert len(rows) == 1 and rows[0].value_nats == pytest.approx(0.223144, abs=1e-6)
    assert render(rows, tmp_path).splitlines()[1] == "2,sibson,,0.223143551314,0.321928094887"


def test_emit_pml_rows(tmp_path):
    lines = render(run_measure(parse_problem(BSC), [0.5], {Measure.PML}), tmp_path).splitlines()
    assert lines[1:] == ["inf,pml,y0,0.405465108108,0.584962500721",
                         "inf,pml,y1,0.405465108108,0.584962500721"]


def test_bits_column_is_exact_division():
    for r in run_measure(parse_problem(BSC), [0, 0.5, 2, math.inf], set(Measure)):
        assert isinstance(r, ReportRow) and r.value_bits == r.value_nats / math.log(2)


def test_identity_fixture_gives_log3():
    rows = run_measure(parse_problem(IDENTITY3), [0.5, 1, 2, math.inf], {Measure.SIBSON})
    assert [r.alpha for r in rows] == ["0.5", "1", "2", "inf"]
    for r in rows:
        assert abs(r.value_nats - math.log(3)) <= 1e-12


def test_maximal_leakage_row():
    (row,) = run_measure(parse_problem(BSC), [math.inf], {Measure.MAXIMAL_LEAKAGE})
    assert (format_number(row.value_nats), format_number(row.value_bits)) == \
        ("0.405465108108", "0.584962500721")
    assert row.value_nats == pytest.approx(0.405465, abs=1e-6)


def test_rows_sorted_by_measure_alpha_y():
    rows = run_measure(parse_problem(BSC), [2, 0, math.inf, 0.5], set(Measure) - {Measure.ALPHA_LEAKAGE})
    order = [m for m in Measure]
    keys = [(order.index(r.measure), float(r.alpha), r.y or "") for r in rows]
    assert keys == sorted(keys)


def test_alpha_leakage_skips_extended_orders(caplog):
    rows = run_measure(parse_problem(BSC), [0, 2, math.inf], {Measure.ALPHA_LEAKAGE})
    assert [r.alpha for r in rows] == ["2"]
    assert "alpha_leakage" in caplog.text


def test_measure_output_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.csv"
        assert main(["measure", "--input", BSC, "--measures", ",".join(m.value for m in Measure),
                     "--output", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0].startswith(b"alpha,measure,y,value_nats,value_bits\n")


def test_adversary_rows(tmp_path):
    path = tmp_path / "adv.csv"
    assert main(["adversary", "--input", BSC, "--alphas", "2", "--output", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "alpha,y,leakage_nats,x0,x1"
    assert lines[1] == "2,y0,0.223143551314,0.9,0.1"


def test_cli_measure_subprocess():
    res = run_cli("measure", "--input", BSC, "--alphas", "2", "--measures", "sibson")
    assert res.returncode == 0
    assert res.stdout == "alpha,measure,y,value_nats,value_bits\n2,sibson,,0.223143551314,0.321928094887\n"


@pytest.mark.parametrize("args", [
    ("measure", "--input", "/nonexistent/problem.json"),
    ("measure", "--input", BSC, "--alphas", "x"),
    ("measure",),
    ("measure", "--input", BSC, "--measures", "nope"),
    ("verify", "--input", BSC, "--grid-res", "2/7"),
])
def test_cli_input_errors_exit_1(args):
    res = run_cli(*args)
    assert res.returncode == 1 and res.stdout == ""
    assert res.stderr.strip()


def test_cli_invalid_document_exit_1(tmp_path):
    path = write_doc(tmp_path, {"prior": [0.5, 0.6], "channel": [[1, 0], [0, 1]]})
    res = run_cli("measure", "--input", path)
    assert res.returncode == 1 and "prior" in res.stderr


def test_verify_without_trials_passes(tmp_path):
    out = tmp_path / "report.txt"
    assert main(["verify", "--input", BSC, "--trials", "0", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines and all(line.split("\t")[1] == "PASS" for line in lines)


def test_verify_report_is_deterministic():
    a = run_cli("verify", "--input", IDENTITY3, "--trials", "2", "--seed", "9")
    b = run_cli("verify", "--input", IDENTITY3, "--trials", "2", "--seed", "9")
    assert a.returncode == b.returncode == 0 and a.stdout == b.stdout


def test_fault_injection_exits_2():
    res = run_cli("verify", "--input", BSC, "--trials", "0", "--fault", "maximizer")
    assert res.returncode == 2
    assert "Prop1-equality" in res.stderr
    assert "Prop1-equality\tFAIL" in res.stdout
