"""Tests for the command line and job runner."""
import json
import sys
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.cli import JobSpec, main, parse_family, parse_module, run, verify_lemmas
from src.config import AppConfig, LimitsConfig
from src.errors import InvalidInput
from src.grp import cyclic, symmetric


def run_json(capsys, *argv: str):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


# ============================================================================
# Job specifications
# ============================================================================


def test_job_spec_defaults():
    spec = JobSpec(subcommand="group")
    assert spec.group == "C2"
    assert spec.format == "json"
    assert spec.budget is None


def test_job_spec_rejects_inverted_window():
    with pytest.raises(ValidationError):
        JobSpec(subcommand="tate", window=(2, 1))


def test_job_spec_rejects_bad_schedules():
    with pytest.raises(ValidationError):
        JobSpec(subcommand="tate", schedule=[3, 1])
    with pytest.raises(ValidationError):
        JobSpec(subcommand="tate", schedule=[2])
    with pytest.raises(ValidationError):
        JobSpec(subcommand="tate", window=(-4, 0), schedule=[1, 3])
    assert JobSpec(subcommand="tate", window=(-4, 0), schedule=[4, 5]).schedule == [4, 5]


def test_job_spec_rejects_short_bar_truncation():
    with pytest.raises(ValidationError):
        JobSpec(subcommand="cathom", d_bar=1)


def test_parse_family():
    g = cyclic(4)
    assert [h.order for h in parse_family(g, "proper")] == [1, 2]
    assert [h.order for h in parse_family(g, "trivial")] == [1]
    assert [h.order for h in parse_family(g, "1")] == [2]
    with pytest.raises(InvalidInput):
        parse_family(g, "7")
    with pytest.raises(InvalidInput):
        parse_family(g, "sylow")


def test_parse_module():
    g = symmetric(3)
    assert parse_module(g, "trivial").rank == 1
    assert parse_module(g, "regular").rank == 6
    assert parse_module(g, "coset:0").rank == 6
    with pytest.raises(InvalidInput):
        parse_module(g, "coset:9")
    with pytest.raises(InvalidInput):
        parse_module(g, "sign")


# ============================================================================
# Subcommands
# ============================================================================


def test_group_subcommand(capsys):
    code, out = run_json(capsys, "group", "--group", "S3")
    assert code == 0
    assert out["order"] == 6
    assert [c["order"] for c in out["subgroup_classes"]] == [1, 2, 3, 6]
    assert out["p_group"] is None


def test_burnside_of_c2(capsys):
    code, out = run_json(capsys, "burnside", "--group", "C2")
    assert code == 0
    # [G/e]·[G/e] = 2[G/e]
    assert out["table"]["0"]["0"] == [2, 0]
    assert out["report"]["passed"]


def test_spans_match_prediction(capsys):
    code, out = run_json(capsys, "spans", "--group", "S3")
    assert code == 0
    assert out["report"]["passed"]
    assert out["ranks"]["3,3"] == 4


def test_mackey_check_regular_module(capsys):
    code, out = run_json(capsys, "mackey-check", "--group", "C3", "--module", "regular")
    assert code == 0
    assert out["ranks"] == [3, 1]


def test_cathom_of_c3(capsys):
    code, out = run_json(capsys, "cathom", "--group", "C3", "--d-bar", "4")
    assert code == 0
    assert out["window"] == [0, 2]
    assert out["homology"] == {"0": "Z", "1": "Z/3", "2": "0"}
    assert out["cohomology"] == {"0": "Z", "1": "0", "2": "Z/3"}


def test_derived_burnside_of_c2(capsys):
    code, out = run_json(capsys, "derived-burnside", "--group", "C2", "--d-bar", "5")
    assert code == 0
    assert out["homology"] == {"0": "Z^2", "1": "Z/2", "2": "0", "3": "Z/2"}
    assert out["window"] == [0, 3]


def test_classical_tate(capsys):
    code, out = run_json(capsys, "tate", "classical", "--group", "C3", "--window=-1..1")
    assert code == 0
    assert out["groups"] == {"-1": "0", "0": "Z/3", "1": "0"}
    assert out["window"] == [-1, 1]


def test_classical_tate_needs_cyclic_group(capsys):
    code, out = run_json(capsys, "tate", "classical", "--group", "S3")
    assert code == 1
    assert out["error"]["error"] == "InvalidInput"


def test_generalized_tate_of_s3_vanishes(capsys):
    code, out = run_json(
        capsys, "tate", "generalized", "--group", "S3", "--family", "proper", "--window=0..0", "--schedule", "1,2"
    )
    assert code == 0
    assert out["groups"] == {"0": "0"}
    assert out["l_stages"] == [1, 2]


def test_generalized_tate_rejects_schedule_below_window(capsys):
    code, out = run_json(
        capsys, "tate", "generalized", "--group", "C2", "--family", "trivial", "--window=-4..0", "--schedule", "1,3"
    )
    assert code == 1
    assert out["error"]["error"] == "InvalidInput"


def test_schedule_is_checked_against_configured_window(capsys):
    code = run(JobSpec(subcommand="tate", group="C2", family="trivial", schedule=[1, 3]))
    out = json.loads(capsys.readouterr().out)
    assert code == 1
    assert out["error"]["error"] == "InvalidInput"
    assert out["error"]["details"]["window"] == [-3, 3]


def test_tcomplex_reports_adaptedness(capsys):
    code, out = run_json(capsys, "tcomplex", "--group", "C2", "--d-bar", "4", "--n-max", "4")
    assert code == 0
    assert out["report"]["passed"]
    assert out["f"] == [0, 1, 0]
    assert "window" in out


def test_phi_carries_window(capsys):
    code, out = run_json(capsys, "phi", "--group", "C2", "--d-bar", "3", "--n-max", "3")
    assert code == 0
    assert out["coefficients"] == "inflation"
    assert "window" in out and "tate" in out


def test_bredon_sign_sphere(capsys):
    code, out = run_json(capsys, "bredon", "--group", "C2", "--representation", "sign")
    assert code == 0
    free, fixed = out["orbits"]
    assert free["homology"] == {"0": "0", "1": "Z"}
    assert fixed["homology"] == {"0": "Z"}
    assert [o["fixed_dimension"] for o in out["orbits"]] == [1, 0]


# ============================================================================
# Errors and exit codes
# ============================================================================


def test_unknown_group_exits_one(capsys):
    code, out = run_json(capsys, "group", "--group", "Q8")
    assert code == 1
    assert out["error"]["error"] == "InvalidInput"


def test_inverted_window_exits_one(capsys):
    code, out = run_json(capsys, "tate", "classical", "--group", "C2", "--window=2..1")
    assert code == 1
    assert out["error"]["message"] == "Invalid job specification"


def test_budget_exceeded_exits_two(capsys):
    code, out = run_json(capsys, "bredon", "--group", "S3", "--representation", "regular", "--budget", "100")
    assert code == 2
    assert out["error"]["error"] == "BudgetExceeded"
    assert out["error"]["details"]["budget"] == 100


def test_group_too_large_for_cli(capsys, mocker):
    mocker.patch("src.cli.jobs.get_config", return_value=AppConfig(limits=LimitsConfig(cli_max_group_order=4)))
    code, out = run_json(capsys, "group", "--group", "S3")
    assert code == 1
    assert out["error"]["error"] == "GroupTooLarge"
    assert out["error"]["details"] == {"order": 6, "bound": 4}


def test_unsupported_representation_exits_one(capsys):
    code, out = run_json(capsys, "bredon", "--group", "C3", "--representation", "sign")
    assert code == 1
    assert out["error"]["error"] == "UnsupportedRepresentation"


# ============================================================================
# Output
# ============================================================================


def test_output_file(tmp_path: Path, capsys):
    target = tmp_path / "out" / "burnside.json"
    code = main(["burnside", "--group", "C3", "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["subcommand"] == "burnside"


def test_output_is_byte_identical(tmp_path: Path):
    paths = [tmp_path / f"run{k}.json" for k in range(3)]
    for path in paths:
        assert run(JobSpec(subcommand="verify-lemmas", group="C2", output=path)) == 0
    texts = [p.read_bytes() for p in paths]
    assert texts[0] == texts[1] == texts[2]


def test_text_format(capsys):
    code = main(["verify-lemmas", "--group", "C2", "--format", "text"])
    out = capsys.readouterr().out
    assert code == 0
    assert "PASS" in out


# ============================================================================
# Regression suite
# ============================================================================


def test_verify_lemmas_for_c2():
    report = verify_lemmas(cyclic(2))
    assert report.passed, report.violations
    names = [c.name for c in report.checks]
    assert "derived burnside: H_0 is free on the subgroup classes" in names
    assert "cathom: bar and periodic homology agree" in names
    assert any(n.startswith("tcomplex: ") for n in names)
    assert report.notes["representation"] == "sign"


@pytest.mark.slow
def test_verify_lemmas_for_c4(capsys):
    code, out = run_json(capsys, "verify-lemmas", "--group", "C4")
    assert code == 0
    names = [c["name"] for c in out["report"]["checks"]]
    assert any(n.startswith("tate: degree") for n in names)
    assert any(n.startswith("tcomplex: ") for n in names)
    assert out["report"]["notes"]["representation"] == "rotation"


@pytest.mark.slow
def test_verify_lemmas_for_s3():
    report = verify_lemmas(symmetric(3))
    assert report.passed, report.violations
    names = [c.name for c in report.checks]
    assert "tate: proper family Tate cohomology vanishes in degrees -2..3" in names
    assert "tate: every degree stabilized" in names


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
