import io
import json
import subprocess
import sys


from stirling_dirichlet.cli import dumps, run

KEYS = ["id", "eq", "params", "lhs", "rhs", "closed_form", "abs_diff",
        "digits_agreed", "terms_used", "tail_estimate", "status"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_special_catalan_half():
    code, out, _ = call("verify", "--id", "catalan_half_special", "--k", "0", "--digits", "30")
    assert code == 0
    assert "= 1/6" in out
    assert "status       verified" in out


def test_seq_and_table_examples():
    assert call("seq", "derangement", "--count", "5")[1] == "1, 0, 1, 2, 9\n"
    assert call("table", "stirling1", "--n", "5", "--k", "3")[1] == "35\n"
    assert call("seq", "harmonic", "--count", "4", "--output", "json")[1] == '["0", "1", "3/2", "11/6"]\n'
    assert call("seq", "hyperharmonic", "--count", "3", "--r", "1")[1] == "0, 1, 5/2\n"
    rows = json.loads(call("table", "stirling1", "--n", "3", "--output", "json")[1])
    assert rows == [["1"], ["0", "1"], ["0", "1", "1"], ["0", "2", "3", "1"]]


def test_json_schema_and_round_trip():
    code, out, _ = call("verify", "--id", "binomial_r", "--k", "3", "--r", "1", "--output", "json")
    assert code == 0
    obj = json.loads(out)
    assert list(obj) == KEYS
    assert obj["eq"] == "(24)" and obj["params"] == {"k": 3, "r": 1}
    assert obj["closed_form"] == "0.9375"
    assert obj["status"] == "verified"
    for key in ("lhs", "rhs", "abs_diff", "tail_estimate"):
        assert isinstance(obj[key], str)
    assert dumps(json.loads(out)) + "\n" == out


def test_json_decimal_strings_follow_digits():
    _, out, _ = call("verify", "--id", "catalan_beta", "--k", "0", "--digits", "40", "--output", "json")
    obj = json.loads(out)
    assert obj["lhs"].startswith("1.227411277760218762331071514167")
    assert len(obj["lhs"].replace(".", "")) == 40


def test_exit_codes():
    assert call("verify", "--id", "zeta_stirling", "--k", "2")[0] == 0
    # an unconverged series is a report status, not a process error
    code, out, _ = call("verify", "--id", "unit_sum", "--k", "5", "--max-terms", "996")
    assert code == 0 and "budget-exhausted" in out
    for argv in (
        ("verify", "--id", "hyperharmonic", "--k", "1", "--r", "1"),
        ("verify", "--id", "no_such_identity", "--k", "1"),
        ("verify", "--id", "zeta_stirling", "--k", "2", "--digits", "5"),
        ("verify", "--id", "zeta_stirling", "--k", "2", "--max-terms", "9"),
        ("verify", "--id", "zeta_stirling", "--k", "2", "--r", "x"),
        ("verify", "--k", "2"),
        ("frobnicate",),
        ("table", "stirling1", "--n", "-1"),
    ):
        code, out, err = call(*argv)
        assert code == 2, argv
        assert out == ""


def test_failed_exit_code(monkeypatch):
    from stirling_dirichlet.identity_catalog import records
    from stirling_dirichlet.identity_catalog.sides import exact_side

    record = records.REGISTRY["zeta_stirling"]
    broken = records.IdentityRecord(**{**{f: getattr(record, f) for f in (
        "id", "eq", "parameters", "predicate", "predicate_text", "lhs", "rhs", "lhs_text", "rhs_text",
        "closed_form", "tier", "specials", "notes")}, "rhs": lambda p, ctx, tol: exact_side(2, ctx)})
    monkeypatch.setitem(records.REGISTRY, "zeta_stirling", broken)
    code, out, _ = call("verify", "--id", "zeta_stirling", "--k", "2", "--output", "json")
    assert code == 1
    assert json.loads(out)["status"] == "failed"


def test_max_terms_notation():
    for text in ("1000", "1e3", "10**3"):
        code, out, _ = call("verify", "--id", "unit_sum", "--k", "5", "--max-terms", text, "--output", "json")
        assert code == 0
        assert json.loads(out)["terms_used"] == 1000


def test_list():
    code, out, _ = call("list", "--output", "json")
    lines = [json.loads(s) for s in out.splitlines()]
    assert len(lines) == 23
    hyper = next(x for x in lines if x["id"] == "hyperharmonic")
    assert hyper["eq"] == "(11)" and hyper["predicate"] == "k > r >= 0"
    assert "unit_sum" in call("list")[1]


def test_report_all_streams_indexed_json():
    code, out, _ = call("report-all", "--ids", "zeta_tail", "aux_sum_2n3", "--jobs", "2", "--output", "json")
    assert code == 0
    objs = [json.loads(s) for s in out.splitlines()]
    assert sorted(o["index"] for o in objs) == list(range(5))
    assert all(list(o)[1:] == KEYS for o in objs)
    assert all(o["status"] == "verified" for o in objs)
    code, out, _ = call("report-all", "--ids", "aux_sum_2n3")
    assert "verified: 1" in out and "total: 1" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stirling_dirichlet", "table", "stirling1", "--n", "4", "--k", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "11\n"
    proc = subprocess.run([sys.executable, "-m", "stirling_dirichlet", "verify"], capture_output=True, text=True)
    assert proc.returncode == 2 and "usage" in proc.stderr
