"""Command-line interface: subcommands, exit codes, JSON mode."""

from __future__ import annotations

import json

import pytest

from siflab import fixtures as F
from siflab.cli import main
from siflab.fixtures import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out), err


# ------------------------------------------------------------------- check


def test_check_plain_properties(capsys):
    path = str(fixture_path("lo_equals_li_8"))
    for prop in ("sep", "gni", "rgni", "dgni"):
        code, out, _ = run(capsys, "check", "--property", prop, "--system", path)
        assert code == 0 and "holds" in out
    path = str(fixture_path("li_equals_hi_8"))
    for prop in ("sep", "gni", "rgni", "dgni"):
        code, out, _ = run(capsys, "check", "--property", prop, "--system", path)
        assert code == 1 and "fails" in out


def test_check_json_shape(capsys):
    path = str(fixture_path("dgni_not_sep_15"))
    code, obj, _ = run_json(capsys, "check", "--property", "dgni", "--system", path)
    assert code == 0
    assert obj == {"property": "dgni", "path": path, "traces": 15, "holds": True}


def test_check_nos_uses_strategy_files(capsys):
    code, out, _ = run(capsys, "check", "--property", "nos", "--system", str(fixture_path("nos_two_trace")))
    assert code == 0 and "holds" in out
    code, _, _ = run(capsys, "check", "--property", "nos", "--system", str(fixture_path("nos_false_pair")))
    assert code == 1


def test_check_psp_uses_event_files(capsys):
    code, _, _ = run(capsys, "check", "--property", "psp", "--system", str(fixture_path("psp_insert_ok")))
    assert code == 0
    code, _, _ = run(capsys, "check", "--property", "psp", "--system", str(fixture_path("psp_insert_missing")))
    assert code == 1


def test_check_wrong_file_kind_is_an_input_error(capsys):
    code, _, err = run(capsys, "check", "--property", "nos", "--system", str(fixture_path("lo_equals_li_8")))
    assert code == 2 and err.startswith("error:")


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "--property", "sep", "--system", "/nonexistent.json")
    assert code == 2 and err.startswith("error:")


def test_check_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    code, _, err = run(capsys, "check", "--property", "sep", "--system", str(bad))
    assert code == 2 and "JSON" in err


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "--property", "bogus", "--system", "x.json"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


# ----------------------------------------------------------------- closure


def test_closure_type(capsys):
    path = str(fixture_path("lo_equals_li_8"))
    code, out, _ = run(capsys, "closure", "--type", "1:2/1:2", "--system", path)
    assert code == 0 and "yes" in out
    path = str(fixture_path("li_equals_hi_8"))
    code, out, _ = run(capsys, "closure", "--type", "1:2/1:2", "--system", path)
    assert code == 1 and "no" in out


def test_closure_gen_conj(capsys):
    path = str(fixture_path("dgni_not_sep_15"))
    code, _, _ = run(capsys, "closure", "--gen-conj", "1:2/0:2", "1:2/1:0", "--system", path)
    assert code == 0
    path = str(fixture_path("gni_not_dgni_4"))
    code, _, _ = run(capsys, "closure", "--gen-conj", "1:2/0:2", "1:2/1:0", "--system", path)
    assert code == 1


def test_closure_requires_a_subject(capsys):
    code, _, err = run(capsys, "closure", "--system", str(fixture_path("zl_pair")))
    assert code == 2 and "error:" in err


def test_closure_bad_type_literal(capsys):
    code, _, err = run(capsys, "closure", "--type", "3:0/0:0", "--system", str(fixture_path("zl_pair")))
    assert code == 2 and "error:" in err


# --------------------------------------------------------------- represent


def test_represent_standard_universe(capsys):
    code, obj, _ = run_json(capsys, "represent", "--property", "sep")
    assert code == 0
    assert obj["universe_traces"] == 16 and obj["universe_systems"] == 65535
    assert sorted(obj["types"]) == ["1:2/1:2", "2:1/2:1"]
    code, obj, _ = run_json(capsys, "represent", "--property", "gni")
    assert sorted(obj["types"]) == ["1:2/0:2", "2:1/0:1"]


def test_represent_single_type_counterexample(capsys):
    code, obj, _ = run_json(
        capsys, "represent", "--property", "gni", "--type", "1:2/1:2"
    )
    assert code == 1
    assert obj["types"] == [] and "1:2/1:2" in obj["counterexamples"]


def test_represent_universe_params(capsys):
    code, obj, _ = run_json(
        capsys,
        "represent",
        "--property",
        "sep",
        "--universe-params",
        "alphabet-size=1",
        "max-cycle=1",
    )
    assert code == 0 and obj["universe_traces"] == 1


def test_represent_param_validation(capsys):
    code, _, err = run(capsys, "represent", "--property", "sep", "--universe-params", "nope")
    assert code == 2
    code, _, err = run(capsys, "represent", "--property", "sep", "--universe-params", "size=3")
    assert code == 2
    code, _, err = run(capsys, "represent", "--property", "sep", "--universe-params", "cap=x")
    assert code == 2
    code, _, err = run(capsys, "represent", "--property", "nos")
    assert code == 2
    # a universe too large for the sweep is reported, not attempted
    code, _, err = run(
        capsys, "represent", "--property", "sep", "--universe-params", "max-cycle=2"
    )
    assert code == 2 and "64" in err


# ------------------------------------------------------------------ refute


def test_refute_full_pool_all_81(capsys):
    pool = [
        str(fixture_path(n))
        for n in ("dgni_not_sep_15", "li_equals_hi_8", "ho_equals_li_8", "lo_equals_hi_8")
    ]
    code, obj, _ = run_json(capsys, "refute", "--property", "dgni", "--pool", *pool)
    assert code == 0
    assert obj["all_refuted"] is True
    assert len(obj["entries"]) == 81
    assert all(e["status"] != "unrefuted" for e in obj["entries"])


def test_refute_partial_pool_leaves_survivors(capsys):
    pool = [str(fixture_path("li_equals_hi_8"))]
    code, obj, _ = run_json(capsys, "refute", "--property", "sep", "--pool", *pool)
    assert code == 1
    assert obj["all_refuted"] is False
    survivors = [e["type"] for e in obj["entries"] if e["status"] == "unrefuted"]
    assert "1:2/1:2" in survivors


def test_refute_nos_pool(capsys):
    pool = [str(fixture_path("nos_two_trace")), str(fixture_path("nos_false_pair"))]
    code, obj, _ = run_json(capsys, "refute", "--property", "nos", "--pool", *pool)
    assert code == 0 and obj["all_refuted"] is True


def test_refute_rejects_unknown_property(capsys):
    code, _, err = run(capsys, "refute", "--property", "psp", "--pool", str(fixture_path("zl_pair")))
    assert code == 2 and "error:" in err


# -------------------------------------------------------------- strategies


def test_strategies_generate_exact(tmp_path, capsys):
    protocols = tmp_path / "protocols.json"
    protocols.write_text(json.dumps(F.echo_protocols()))
    out_file = tmp_path / "generated.json"
    code, obj, _ = run_json(
        capsys,
        "strategies",
        "generate",
        "--protocols",
        str(protocols),
        "--mode",
        "exact",
        "--out",
        str(out_file),
    )
    assert code == 0
    assert obj["families"] == {"H": 2} and obj["injective"] is True
    assert obj["system"] is None and out_file.exists()
    # the written file is loadable and NOS-checkable through the CLI
    code, _, _ = run(capsys, "check", "--property", "nos", "--system", str(out_file))
    assert code == 0


def test_strategies_generate_inline_output(tmp_path, capsys):
    protocols = tmp_path / "protocols.json"
    protocols.write_text(json.dumps(F.echo_protocols()))
    code, obj, _ = run_json(
        capsys, "strategies", "generate", "--protocols", str(protocols), "--mode", "bounded:2"
    )
    assert code == 0
    assert obj["out"] is None and obj["system"] is not None
    assert obj["mode"] == "bounded:2"


def test_strategies_generate_bad_mode(tmp_path, capsys):
    protocols = tmp_path / "protocols.json"
    protocols.write_text(json.dumps(F.echo_protocols()))
    code, _, err = run(capsys, "strategies", "generate", "--protocols", str(protocols), "--mode", "sideways")
    assert code == 2 and "error:" in err


# ---------------------------------------------------------------------- zl


def test_zl_q_search_found(capsys):
    code, obj, _ = run_json(
        capsys,
        "zl",
        "q-search",
        "--target",
        str(fixture_path("zl_target_singleton")),
        "--universe",
        str(fixture_path("zl_universe_sync")),
    )
    assert code == 0 and obj["found"] is True
    assert obj["accepted_classes"]


def test_zl_q_search_none(capsys):
    code, obj, _ = run_json(
        capsys,
        "zl",
        "q-search",
        "--target",
        str(fixture_path("zl_target_disjunction")),
        "--universe",
        str(fixture_path("zl_universe_sync")),
    )
    assert code == 1 and obj == {"found": False, "accepted_classes": None}
    code, out, _ = run(
        capsys,
        "zl",
        "q-search",
        "--target",
        str(fixture_path("zl_target_disjunction")),
        "--universe",
        str(fixture_path("zl_universe_sync")),
    )
    assert code == 1 and out.strip() == "NONE"


def test_zl_q_search_async(capsys):
    code, obj, _ = run_json(
        capsys,
        "zl",
        "q-search",
        "--target",
        str(fixture_path("zl_target_async")),
        "--universe",
        str(fixture_path("zl_universe_async")),
    )
    assert code == 0 and obj["found"] is True


# ------------------------------------------------------------ verify-paper


def test_verify_paper_single_result(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "EX1")
    assert code == 0
    assert "PASS" in out and "EX1" in out


def test_verify_paper_only_list_json(capsys):
    code, obj, _ = run_json(capsys, "verify-paper", "--only", "EX2,EX1,EX2")
    assert code == 0
    assert [e["id"] for e in obj["results"]] == ["EX1", "EX2"]
    assert all(e["passed"] for e in obj["results"])


def test_verify_paper_unknown_id(capsys):
    code, _, err = run(capsys, "verify-paper", "--only", "EX999")
    assert code == 2 and "error:" in err
