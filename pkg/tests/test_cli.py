import json

import pytest

from senary.cli import EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out


def test_count_box_naive(capsys):
    code, out = run(capsys, "count", "--box", "10", "--stable-output")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "bound,method,count,seconds"
    assert out.splitlines()[1] == "10,naive,421088,0.000"


def test_count_height_torsor_primitive(capsys):
    code, out = run(capsys, "count", "--height", "1", "--method", "torsor", "--primitive")
    assert code == EXIT_OK
    row = out.splitlines()[1].split(",")
    assert row[0] == "1" and row[1] == "torsor-primitive" and row[2] == "28"


def test_count_both_methods_cross_validate(capsys):
    code, out = run(capsys, "count", "--box", "5", "--method", "both", "--stable-output")
    assert code == EXIT_OK
    rows = out.splitlines()[1:]
    assert len(rows) == 2
    assert rows[0].split(",")[2] == rows[1].split(",")[2] == "26200"


def test_count_both_methods_primitive(capsys):
    code, out = run(
        capsys, "count", "--height", "64", "--primitive", "--method", "both", "--stable-output"
    )
    assert code == EXIT_OK
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert {r[1] for r in rows} == {"naive-primitive", "torsor-primitive"}
    assert rows[0][2] == rows[1][2] == "6148"


def test_count_zero_bound_is_usage_error(capsys):
    code, _ = run(capsys, "count", "--box", "0")
    assert code == EXIT_USAGE


def test_count_requires_a_bound(capsys):
    code, _ = run(capsys, "count")
    assert code == EXIT_USAGE


def test_unknown_subcommand_is_usage_error(capsys):
    code, _ = run(capsys, "frobnicate")
    assert code == EXIT_USAGE


def test_json_format(capsys):
    code, out = run(capsys, "--format", "json", "--stable-output", "count", "--box", "2")
    assert code == EXIT_OK
    obj = json.loads(out.splitlines()[0])
    assert obj["count"] == 928 and obj["method"] == "naive"


def test_output_is_byte_identical_across_runs(capsys):
    _, first = run(capsys, "count", "--box", "6", "--method", "both", "--stable-output")
    _, second = run(capsys, "count", "--box", "6", "--method", "both", "--stable-output")
    assert first == second


def test_threads_do_not_change_counts(capsys, monkeypatch):
    _, serial = run(capsys, "count", "--box", "6", "--stable-output")
    monkeypatch.setenv("SENARY_THREADS", "2")
    _, parallel = run(capsys, "count", "--box", "6", "--stable-output")
    assert serial == parallel


def test_verify_bijection(capsys):
    code, out = run(capsys, "verify", "bijection", "--pmax", "3")
    assert code == EXIT_OK
    lines = [json.loads(l) for l in out.splitlines()]
    assert all(l["ok"] for l in lines)
    assert lines[-1]["check"] == "bijection-negative-control"


def test_verify_mobius(capsys):
    code, out = run(capsys, "verify", "mobius", "--bmax", "64")
    assert code == EXIT_OK
    assert all(json.loads(l)["discrepancy"] == 0 for l in out.splitlines())


def test_verify_factor_identity(capsys):
    code, _ = run(capsys, "verify", "factor-identity", "--pmax", "1000")
    assert code == EXIT_OK


def test_verify_tg_series(capsys):
    code, _ = run(capsys, "verify", "tg-series", "--degree", "4")
    assert code == EXIT_OK


def test_verify_theorem3_single_edge(capsys):
    code, _ = run(
        capsys, "verify", "theorem3", "--graph", "r=2;edges=1-2", "--s", "2,2", "--n", "1000"
    )
    assert code == EXIT_OK


def test_verify_fp_counts(capsys):
    code, out = run(capsys, "verify", "fp-counts", "--pmax", "3")
    assert code == EXIT_OK
    assert all(json.loads(l)["ok"] for l in out.splitlines())


def test_verify_lift(capsys):
    code, _ = run(capsys, "verify", "lift", "--pmax", "3")
    assert code == EXIT_OK


def test_constants_alpha(capsys):
    code, out = run(capsys, "constants", "alpha")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["name"] == "alpha" and obj["exact"] == "1/3888"


def test_constants_euler(capsys):
    code, out = run(capsys, "constants", "euler", "--prime-limit", "10000")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert 0 < obj["value"] < 1


def test_constants_nonconvergent_exit_code(capsys):
    from senary.cli import EXIT_NONCONVERGENT

    code, out = run(capsys, "constants", "mu-infinity", "--tolerance", "0.01", "--budget", "10")
    assert code == EXIT_NONCONVERGENT
    obj = json.loads(out)  # strict JSON: non-finite best estimates become null
    assert obj["error"] == "nonconvergent" and obj["best_value"] is None
    code, out = run(
        capsys, "constants", "mu-infinity", "--tolerance", "0.01", "--budget", "200000"
    )
    assert code == EXIT_NONCONVERGENT
    obj = json.loads(out)
    # a coarse level fits this budget, so the best estimate is emitted and its
    # error bar still brackets the target
    assert abs(obj["best_value"] - 282.0616408143365) <= obj["error_estimate"]


def test_constants_leading_v(capsys):
    code, out = run(capsys, "constants", "leading-v", "--prime-limit", "10000")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["name"] == "leading_V"


def test_graph_b_vector(capsys):
    code, out = run(capsys, "graph", "b-vector")
    assert code == EXIT_OK
    assert json.loads(out)["b"] == [1, 0, -9, 16, -9, 0, 1]


def test_graph_euler_exact(capsys):
    code, out = run(capsys, "graph", "euler", "--p", "2", "--s", "1,1,1,1,1,1")
    assert code == EXIT_OK
    assert json.loads(out)["exact"] == "13/64"


def test_graph_xi(capsys):
    code, out = run(capsys, "graph", "xi", "--graph", "r=2;edges=1-2", "--s", "2,2")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["value"] == pytest.approx(0.9239384, abs=1e-5)


def test_output_file(tmp_path, capsys):
    path = tmp_path / "rows.csv"
    code, out = run(capsys, "--output", str(path), "count", "--box", "1", "--stable-output")
    assert code == EXIT_OK and out == ""
    assert path.read_text().splitlines()[1] == "1,naive,56,0.000"
