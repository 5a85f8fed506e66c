import json

import pytest

from twistgate.cli import (
    STATUS_CHECK_FAILED,
    STATUS_OK,
    STATUS_UNSUPPORTED,
    build_parser,
    main,
    run,
)

RESULT_SCHEMA = {
    "type": "object",
    "required": ["status", "command", "payload"],
    "properties": {
        "status": {"enum": ["ok", "check-failed", "unsupported-input"]},
        "command": {"type": "string"},
        "payload": {"type": "object"},
    },
}


def run_json(capsys, argv):
    result = run(argv + ["--json"])
    captured = capsys.readouterr()
    document = json.loads(captured.out)
    try:
        import jsonschema

        jsonschema.validate(document, RESULT_SCHEMA)
    except ImportError:
        assert set(RESULT_SCHEMA["required"]) <= set(document)
    return result, document


class TestCurveInfo:
    def test_text_output(self, capsys):
        result = run(["curve-info", "--label", "15a1"])
        out = capsys.readouterr().out
        assert result.status == STATUS_OK
        assert result.exit_code == 0
        assert "Delta = 50625" in out
        assert "111284641/50625" in out

    def test_json_roundtrip(self, capsys):
        result, doc = run_json(capsys, ["curve-info", "--label", "15a1"])
        assert result.status == STATUS_OK
        assert doc["payload"]["delta"] == 50625
        assert doc["payload"]["j"] == "111284641/50625"
        assert doc["payload"]["delta_factored"] == "3^4 * 5^4"

    def test_explicit_coefficients(self, capsys):
        result, doc = run_json(capsys, ["curve-info", "--curve", "1,0,0,-4,-1"])
        assert doc["payload"]["delta"] == 3969

    def test_unknown_label(self, capsys):
        result = run(["curve-info", "--label", "99z9"])
        assert result.status == STATUS_UNSUPPORTED
        assert result.exit_code == 2
        assert "error" in capsys.readouterr().err


class TestReduction:
    def test_split_at_5(self, capsys):
        result, doc = run_json(capsys, ["reduction", "--p", "5", "--label", "15a1"])
        assert doc["payload"]["kind"] == "mult-split"
        assert doc["payload"]["points"] == 5

    def test_p2_is_unsupported_input(self, capsys):
        result = run(["reduction", "--p", "2", "--label", "15a1"])
        assert result.exit_code == 2


class TestRootNumber:
    def test_ledger(self, capsys):
        result, doc = run_json(capsys, ["root-number", "--label", "15a1"])
        assert doc["payload"]["value"] == 1
        places = {f["place"]: (f["sign"], f["case"]) for f in doc["payload"]["local_factors"]}
        assert places["inf"] == (-1, "archimedean")
        assert places["3"] == (1, "nonsplit-mult")
        assert places["5"] == (-1, "split-mult")

    def test_twist_13_prints_minus_one(self, capsys):
        result = run(["root-number", "--label", "15a1", "--twist", "13"])
        out = capsys.readouterr().out
        assert result.status == STATUS_OK
        assert "-1" in out
        assert "agrees" in out

    def test_invalid_twist_rejected(self, capsys):
        result = run(["root-number", "--label", "15a1", "--twist", "7"])
        assert result.exit_code == 2


class TestTwistRootCheck:
    def test_small_sweep(self, capsys):
        result, doc = run_json(capsys, ["twist-root-check", "--dmax", "60", "--label", "15a1"])
        assert result.status == STATUS_OK
        assert doc["payload"]["mismatches"] == []
        assert doc["payload"]["instances"] > 0


class TestLValue:
    def test_15a1(self, capsys):
        result, doc = run_json(capsys, ["lvalue", "--label", "15a1"])
        assert doc["payload"]["verdict"] == "NonzeroEvidence"
        assert doc["payload"]["value"].startswith("0.350150760583")
        assert "evidence" in doc["payload"]["note"]

    def test_twist_and_terms(self, capsys):
        result, doc = run_json(
            capsys, ["lvalue", "--label", "15a1", "--twist", "17", "--terms", "1500"]
        )
        assert doc["payload"]["conductor"] == 4335
        assert doc["payload"]["terms_used"] == 1500


class TestSerreCheck:
    def test_pass(self, capsys):
        result, doc = run_json(capsys, ["serre-check", "--ell", "5", "--label", "15a1"])
        assert result.status == STATUS_OK
        assert doc["payload"]["overall"] is True
        assert doc["payload"]["aux_prime"]["q"] == 7
        assert doc["payload"]["aux_prime"]["points"] == 8

    def test_failing_curve_exits_1(self, capsys):
        result = run(["serre-check", "--ell", "3", "--curve", "1,0,0,0,8"])
        assert result.status == STATUS_CHECK_FAILED
        assert result.exit_code == 1

    def test_ell_2_unsupported(self, capsys):
        result = run(["serre-check", "--ell", "2", "--label", "15a1"])
        assert result.exit_code == 2


class TestSearch:
    def test_search(self, capsys):
        result, doc = run_json(capsys, ["search", "--p", "5", "--r", "2", "--bound", "100"])
        assert [17, 61] in doc["payload"]["tuples"]
        assert doc["payload"]["count"] == 6


class TestCheckHypothesis:
    def test_verified(self, capsys):
        result, doc = run_json(capsys, ["check-hypothesis", "--p", "5", "--d", "17"])
        assert result.status == STATUS_OK
        assert result.exit_code == 0
        assert doc["payload"]["overall"] == "Verified*"
        assert len(doc["payload"]["characters"]) == 2

    def test_not_admissible_exits_1(self, capsys):
        result = run(["check-hypothesis", "--p", "5", "--d", "13"])
        assert result.status == STATUS_CHECK_FAILED
        assert result.exit_code == 1


class TestDescentCheck:
    def test_lemma_sum(self, capsys):
        result, doc = run_json(
            capsys, ["descent-check", "--lemma", "sum", "--k", "2", "--n", "1", "--r", "1"]
        )
        assert result.status == STATUS_OK
        assert doc["payload"]["all_passed"] is True
        assert doc["payload"]["modules_checked"] == 2

    def test_lemma_tmw(self, capsys):
        result, doc = run_json(
            capsys, ["descent-check", "--lemma", "tmw", "--d", "17", "--height", "50"]
        )
        assert result.status == STATUS_OK
        assert doc["payload"]["points_found"] >= 4
        assert doc["payload"]["all_passed"] is True

    def test_missing_flags(self, capsys):
        result = run(["descent-check", "--lemma", "sum"])
        assert result.exit_code == 2


class TestUsage:
    def test_bad_usage_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["curve-info"])  # no curve selected
        assert excinfo.value.code == 2

    def test_main_returns_exit_code(self, capsys):
        assert main(["curve-info", "--label", "15a1"]) == 0

    def test_parser_builds(self):
        build_parser()
