import json

import pytest

from qdyson import __version__
from qdyson.cli import main
from qdyson.dyson import CTQuery, Report, Violation, constant_term
from qdyson.qseries import QLaurent, QRat


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- eval ----------------------------------------------------------------------


def test_eval_qdyson_value(capsys):
    code, out, _ = run(capsys, "eval", "--v", "0,0", "--lambda", "", "--a", "1,1")
    assert code == 0
    assert out == "1 + q\n"


def test_eval_weight_mismatch_prints_zero(capsys):
    code, out, _ = run(capsys, "eval", "--v", "1,0", "--lambda", "2", "--a", "1,1")
    assert code == 0
    assert out == "0\n"


def test_eval_single_variable(capsys):
    code, out, _ = run(capsys, "eval", "--v", "1", "--lambda", "1", "--a", "2")
    assert code == 0
    assert out == "1 + q\n"


def test_eval_json_round_trips(capsys):
    code, out, _ = run(capsys, "eval", "--v", "1,0", "--lambda", "1", "--a", "2,1", "--json")
    assert code == 0
    value = QLaurent.from_json(json.loads(out))
    assert value == constant_term(CTQuery(1, (1, 0), (1,), (2, 1), 0))


@pytest.mark.parametrize(
    "argv",
    [
        ("eval", "--v", "1,0", "--lambda", "1,2", "--a", "1,1"),  # unsorted parts
        ("eval", "--v", "1,0", "--lambda", "1", "--a", "1,-1"),  # negative weight
        ("eval", "--v", "1,0", "--lambda", "1", "--a", "1"),  # length mismatch
        ("eval", "--v", "x", "--lambda", "", "--a", "1"),  # not integers
        ("eval", "--v", "", "--lambda", "", "--a", ""),  # empty v
        ("eval", "--v", "1,0", "--lambda", "1", "--a", "1,1", "--m", "9"),  # bad m
    ],
)
def test_eval_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert not out
    assert err


# -- verify --------------------------------------------------------------------


def test_verify_qdyson_passes(capsys):
    code, out, err = run(capsys, "verify", "--suite", "qdyson", "--n", "2", "--max-a", "3")
    assert code == 0
    assert out == "suite qdyson: checked 64, violations 0\n"
    assert "elapsed" in err


def test_verify_unknown_suite_is_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "--suite", "nosuch")
    assert code == 2


def test_verify_json_is_deterministic(capsys):
    args = ("verify", "--suite", "cyclic", "--json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["suite"] == "cyclic"
    assert payload["violations"] == []
    assert "elapsed_s" not in payload


def test_verify_violation_exit_code(capsys, monkeypatch):
    import qdyson.cli as cli_module

    def fake_suite(n, a_max, workers=1):
        bad = Violation(CTQuery(0, (0,), (), (0,), 0), QRat.zero(), QLaurent.one())
        return Report(checked=1, violations=[bad])

    monkeypatch.setattr(cli_module, "qdyson_suite", fake_suite)
    code, out, _ = run(capsys, "verify", "--suite", "qdyson")
    assert code == 1
    assert "violations 1" in out


def test_verify_threads_env_override(capsys, monkeypatch):
    monkeypatch.setenv("QDYSON_THREADS", "2")
    code, _, _ = run(capsys, "verify", "--suite", "qdyson", "--n", "1", "--max-a", "2")
    assert code == 0
    monkeypatch.setenv("QDYSON_THREADS", "not-a-number")
    code, _, err = run(capsys, "verify", "--suite", "qdyson", "--n", "1", "--max-a", "2")
    assert code == 2
    assert "QDYSON_THREADS" in err


# -- scan ----------------------------------------------------------------------


def test_scan_writes_deterministic_file(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    args = ("scan", "--n", "1", "--max-weight", "3", "--max-a", "2", "--out", str(out_path))
    code, summary1, _ = run(capsys, *args)
    assert code == 0
    first = out_path.read_bytes()
    doc = json.loads(first)
    assert doc["engine"] == __version__
    assert doc["results"]
    # every recorded value is nonzero and matches a fresh evaluation
    for row in doc["results"][:5]:
        query = CTQuery.from_json(row["query"])
        assert QLaurent.from_json(row["value"]) == constant_term(query)
        assert row["value"]["terms"]

    code, summary2, err2 = run(capsys, *args)
    assert code == 0
    assert out_path.read_bytes() == first
    assert summary2 == summary1  # stdout is byte-identical across reruns
    assert "computed 0" in err2  # second run served fully from cache


def test_scan_ignores_stale_cache(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    args = ("scan", "--n", "1", "--max-weight", "2", "--max-a", "1", "--out", str(out_path))
    run(capsys, *args)
    good = out_path.read_bytes()
    doc = json.loads(good)
    doc["signature"] = "0" * 64
    out_path.write_text(json.dumps(doc))
    code, _, err = run(capsys, *args)
    assert code == 0
    assert out_path.read_bytes() == good
    assert "cached 0" in err  # stale cache was not trusted


def test_scan_stdout_mode(capsys):
    code, out, _ = run(capsys, "scan", "--n", "1", "--max-weight", "1", "--max-a", "1")
    assert code == 0
    doc = json.loads(out)
    assert [row["query"]["v"] for row in doc["results"]] == [[0, 0], [0, 1], [1, 0]]


def test_scan_weight_zero_box(capsys, tmp_path):
    out_path = tmp_path / "zero.json"
    code, _, _ = run(
        capsys, "scan", "--n", "1", "--max-weight", "0", "--max-a", "1", "--out", str(out_path)
    )
    assert code == 0
    doc = json.loads(out_path.read_bytes())
    assert len(doc["results"]) == 1
    assert doc["results"][0]["query"]["v"] == [0, 0]


def test_scan_unwritable_path(capsys, tmp_path):
    code, _, err = run(
        capsys, "scan", "--n", "1", "--max-weight", "1", "--max-a", "1", "--out", str(tmp_path)
    )
    assert code == 2
    assert err
