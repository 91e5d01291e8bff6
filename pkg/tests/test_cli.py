"""End-to-end tests of the dimdatum command line."""

import json

import pytest

from verifier.main import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from verifier.report import CheckRecord, Report

SPHERE = "m*Phi0:Phi0@m=2,Phi0=A1"


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestIdentities:
    def test_empty_sweep(self, settings, capsys):
        code, out = run(capsys, "identities", "--max-m", "0", "--max-coeff", "0")
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["suite"] == "identities"
        assert report["summary"]["total"] == 0

    def test_small_sweep_passes(self, settings, capsys):
        code, out = run(capsys, "identities", "--max-m", "1", "--max-coeff", "1")
        report = json.loads(out)
        assert code == EXIT_OK, report["summary"]["failed_ids"]
        kinds = {check["id"].split("/")[0] for check in report["checks"]}
        assert kinds == {"factorization", "det-weylsum", "sigma", "irreducible"}

    def test_reports_are_byte_identical(self, settings, capsys):
        _, first = run(capsys, "identities", "--max-m", "1", "--max-coeff", "1")
        _, second = run(capsys, "identities", "--max-m", "1", "--max-coeff", "1")
        assert first == second

    def test_text_format(self, settings, capsys):
        code, out = run(capsys, "--format", "text", "identities", "--max-m", "0", "--max-coeff", "0")
        assert code == EXIT_OK
        assert out.splitlines()[-1] == "0 passed, 0 failed, 0 skipped"

    def test_report_to_file(self, settings, capsys, tmp_path):
        target = tmp_path / "reports" / "identities.json"
        code, out = run(capsys, "--output", str(target), "identities", "--max-m", "0", "--max-coeff", "0")
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["schema_version"] == 1


class TestTheorem:
    def test_instance_passes(self, settings, capsys):
        code, out = run(capsys, "theorem", "--n", "1", "--lambda", "1,0,-1", "--cutoff", "12")
        report = json.loads(out)
        assert code == EXIT_OK, report["summary"]["failed_ids"]
        ids = [check["id"] for check in report["checks"]]
        assert ids[:2] == ["character/averaged-F", "character/t-polynomial"]
        assert ids[-1] == "pipelines/agree"
        assert report["parameters"]["lambda_prime"] == [1, 1, 0]

    def test_inadmissible_weight(self, settings, capsys):
        code, _ = run(capsys, "theorem", "--lambda", "2,0,-1")
        assert code == EXIT_USAGE

    def test_wrong_length(self, settings, capsys):
        code, _ = run(capsys, "theorem", "--n", "1", "--lambda", "1,0")
        assert code == EXIT_USAGE


class TestSpectrum:
    def test_sphere_and_compare(self, settings, capsys, tmp_path):
        sphere = tmp_path / "sphere.json"
        code, out = run(capsys, "spectrum", "--group", "SU2", "--subgroup", "torus", "--cutoff", "30", "--out", str(sphere))
        assert code == EXIT_OK
        assert "spectrum/sphere" in {check["id"] for check in json.loads(out)["checks"]}
        assert json.loads(sphere.read_text(encoding="utf-8"))["entries"]

        code, _ = run(capsys, "compare", str(sphere), str(sphere))
        assert code == EXIT_OK

        constants = tmp_path / "constants.json"
        code, _ = run(capsys, "spectrum", "--group", "SU2", "--subgroup", "G", "--cutoff", "30", "--out", str(constants))
        assert code == EXIT_OK
        code, out = run(capsys, "compare", str(sphere), str(constants))
        assert code == EXIT_FAIL
        assert json.loads(out)["summary"]["failed_ids"] == ["compare/spectrum"]

    def test_inline_artifact(self, settings, capsys):
        code, out = run(capsys, "spectrum", "--group", "SU2", "--subgroup", "G", "--cutoff", "5")
        assert code == EXIT_OK
        assert json.loads(out)["artifacts"]["spectrum"]["entries"]

    @pytest.mark.parametrize("cutoff", ["0", "-3", "abc"])
    def test_bad_cutoff(self, settings, capsys, cutoff):
        code, _ = run(capsys, "spectrum", "--group", "SU2", "--subgroup", "torus", "--cutoff", cutoff)
        assert code == EXIT_USAGE

    def test_subgroup_needs_matching_group(self, settings, capsys):
        code, _ = run(capsys, "spectrum", "--group", "SU4", "--subgroup", "H1", "--cutoff", "5")
        assert code == EXIT_USAGE


class TestAffine:
    def test_validate(self, settings, capsys):
        code, out = run(capsys, "affine", "--selector", SPHERE)
        report = json.loads(out)
        assert code == EXIT_OK, report["summary"]["failed_ids"]
        assert report["summary"]["total"] == 6
        assert report["artifacts"]["f_R"] == [[8, "-1/2"], [0, "1/2"]]

    def test_density_and_integration(self, settings, capsys):
        code, out = run(
            capsys, "affine", "--selector", SPHERE, "--check", "density", "--check", "integration", "--points", "128"
        )
        report = json.loads(out)
        assert code == EXIT_OK, report["summary"]["failed_ids"]
        assert len(report["artifacts"]["density"]) == 128

    def test_integration_needs_no_selector(self, settings, capsys):
        code, _ = run(capsys, "affine", "--check", "integration", "--dimension", "3")
        assert code == EXIT_OK

    def test_validate_needs_a_selector(self, settings, capsys):
        code, _ = run(capsys, "affine")
        assert code == EXIT_USAGE

    def test_unsupported_target(self, settings, capsys):
        code, _ = run(capsys, "affine", "--selector", "m*E8:E8")
        assert code == EXIT_USAGE


class TestChars:
    def test_averaged_character(self, settings, capsys):
        code, out = run(capsys, "chars", "--system", "A2", "--weight", "0,0,0")
        assert code == EXIT_OK
        document = json.loads(out)
        assert document["system"] == "A2"
        assert document["average"] == "full"
        assert document["character"]

    def test_non_dominant_weight(self, settings, capsys):
        code, _ = run(capsys, "chars", "--system", "C1", "--weight", "-1")
        assert code == EXIT_USAGE


class TestCache:
    def test_stats_then_clear(self, settings, capsys, weight_cache):
        weight_cache.store("SU2", (1, 0), {(1, 0): 1, (0, 1): 1})
        code, out = run(capsys, "cache", "stats")
        assert code == EXIT_OK
        assert json.loads(out)["entries"] == 1

        code, out = run(capsys, "cache", "clear")
        assert code == EXIT_OK
        assert json.loads(out)["removed"] == 1


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["identities", "--max-m", "x"],
            ["--jobs", "0", "identities"],
            ["--seed", "-1", "identities"],
            ["spectrum", "--group", "SU2", "--subgroup", "torus"],
        ],
    )
    def test_usage_errors(self, settings, capsys, argv):
        assert main(argv) == EXIT_USAGE


def test_failing_report_is_not_ok():
    report = Report(suite="identities")
    assert report.ok
    report.add_check(CheckRecord.compare("x", 1, 2, {}))
    assert not report.ok
    assert report.to_summary()["failed_ids"] == ["x"]


@pytest.mark.slow
class TestAcceptanceScale:
    def test_identities_through_m_two(self, settings, capsys):
        code, out = run(capsys, "identities", "--max-m", "2", "--max-coeff", "2")
        report = json.loads(out)
        assert code == EXIT_OK, report["summary"]["failed_ids"]
        ids = {check["id"] for check in report["checks"]}
        assert {"irreducible/d/2,-1", "irreducible/d/2,-2", "irreducible/d/-1", "det-weylsum/d/-2"} <= ids

    @pytest.mark.parametrize("lam", ["0,0,0", "1,0,-1"])
    def test_theorem_at_cutoff_forty(self, settings, capsys, lam):
        code, out = run(capsys, "theorem", "--n", "1", "--lambda", lam, "--cutoff", "40")
        report = json.loads(out)
        assert code == EXIT_OK, report["summary"]["failed_ids"]
        branching = [check for check in report["checks"] if check["id"].startswith("branching/")]
        assert len(branching) >= 30

    def test_su6_spectra_agree(self, settings, capsys, tmp_path):
        h1 = tmp_path / "h1.json"
        h2 = tmp_path / "h2.json"
        for subgroup, path in (("H1", h1), ("H2", h2)):
            code, _ = run(
                capsys, "spectrum", "--group", "SU6", "--subgroup", subgroup, "--lambda", "1,0,-1",
                "--cutoff", "40", "--out", str(path),
            )
            assert code == EXIT_OK
        code, out = run(capsys, "compare", str(h1), str(h2))
        assert code == EXIT_OK, json.loads(out)["summary"]["failed_ids"]
