"""Tests for the click command surface."""

import json

import pytest
import yaml
from click.testing import CliRunner

from parley.cli.main import cli
from parley.cli.utils.errors import EXIT_RUNTIME_ERROR, EXIT_USAGE_ERROR, ConfigurationError, handle_error
from parley.src.config import (
    CHAT_TRANSCRIPT_FILENAME,
    CURVE_FILENAME,
    NLG_REPORT_FILENAME,
    NLU_REPORT_FILENAME,
    REPORT_FILENAME,
    VALIDATION_FILENAME,
    policy_filename,
)
from parley.src.core.errors import PolicyMismatchError


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv("PARLEY_OUTPUT_DIR", raising=False)
    return CliRunner()


@pytest.fixture
def trained_run(runner, tmp_path):
    out = tmp_path / "run"
    result = runner.invoke(cli, ["train", "--mode", "acts", "-n", "20", "--seed", "5", "--out", str(out)])
    assert result.exit_code == 0, result.output
    return out


class TestConfigCommands:
    def test_show_defaults(self, runner):
        result = runner.invoke(cli, ["config", "show"])
        assert result.exit_code == 0
        assert "built-in defaults" in result.output
        assert "n_train_dialogues" in result.output

    def test_show_json(self, runner):
        result = runner.invoke(cli, ["config", "show", "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["seed"] == 0

    def test_init_writes_loadable_file(self, runner, tmp_path):
        target = tmp_path / "experiment.yaml"
        result = runner.invoke(cli, ["config", "init", str(target)])
        assert result.exit_code == 0
        assert yaml.safe_load(target.read_text())["episode"]["channel_mode"] == "language"

        shown = runner.invoke(cli, ["config", "show", "--config", str(target), "--json"])
        assert shown.exit_code == 0

    def test_init_refuses_to_overwrite(self, runner, tmp_path):
        target = tmp_path / "experiment.yaml"
        target.write_text("seed: 1\n")
        assert runner.invoke(cli, ["config", "init", str(target)]).exit_code == 1
        assert target.read_text() == "seed: 1\n"
        assert runner.invoke(cli, ["config", "init", str(target), "--force"]).exit_code == 0

    def test_invalid_config_is_usage_error(self, runner, tmp_path):
        target = tmp_path / "bad.yaml"
        target.write_text("n_train_dialogues: 0\n")
        result = runner.invoke(cli, ["config", "show", "--config", str(target)])
        assert result.exit_code == 1
        assert "Invalid configuration" in result.output


class TestTrainAndEvaluate:
    def test_train_writes_run(self, trained_run):
        for name in (CURVE_FILENAME, policy_filename("seeker"), policy_filename("provider"), "config.yaml"):
            assert (trained_run / name).exists()

    def test_resume_under_other_settings_is_usage_error(self, runner, trained_run):
        result = runner.invoke(
            cli,
            ["train", "--mode", "language", "-n", "20", "--seed", "5", "--out", str(trained_run), "--resume"],
        )
        assert result.exit_code == 1
        assert "Cannot resume" in result.output
        assert "episode" in result.output

    def test_resume_finished_run(self, runner, trained_run):
        result = runner.invoke(
            cli, ["train", "--mode", "acts", "-n", "20", "--seed", "5", "--out", str(trained_run), "--resume"]
        )
        assert result.exit_code == 0, result.output

    def test_evaluate_run_directory(self, runner, trained_run, tmp_path):
        out = tmp_path / "eval"
        result = runner.invoke(
            cli,
            ["evaluate", "-p", str(trained_run), "--mode", "acts", "-n", "10", "-r", "2", "--seed", "5", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        report = json.loads((out / REPORT_FILENAME).read_text())
        assert report["pairing"]["seeker"].endswith(policy_filename("seeker"))
        assert len(report["repetitions"]) == 2
        assert report["learning_curve"][-1]["dialogues"] == 20
        assert sorted(p.name for p in out.glob("transcripts*")) == ["transcripts_rep0.jsonl", "transcripts_rep1.jsonl"]

    def test_evaluate_handcrafted_without_transcripts(self, runner, tmp_path):
        out = tmp_path / "eval"
        result = runner.invoke(
            cli,
            [
                "evaluate",
                "--seeker-policy", "agenda",
                "--provider-policy", "rule",
                "--mode", "acts",
                "-n", "10",
                "-r", "1",
                "--no-transcripts",
                "--out", str(out),
            ],
        )
        assert result.exit_code == 0, result.output
        report = json.loads((out / REPORT_FILENAME).read_text())
        assert report["success_rate"] == 1.0
        assert not any(out.glob("transcripts*"))

    def test_unknown_handcrafted_name(self, runner, tmp_path):
        result = runner.invoke(cli, ["evaluate", "--seeker-policy", "rule", "--out", str(tmp_path)])
        assert result.exit_code == 1
        assert "agenda" in result.output

    def test_two_policies_for_one_role(self, runner, trained_run, tmp_path):
        seeker = trained_run / policy_filename("seeker")
        copy = tmp_path / "other_seeker.json.gz"
        copy.write_bytes(seeker.read_bytes())
        result = runner.invoke(cli, ["evaluate", "-p", str(seeker), "-p", str(copy), "--out", str(tmp_path)])
        assert result.exit_code == 1

    def test_policy_of_wrong_role_is_rejected(self, runner, trained_run, tmp_path):
        provider = trained_run / policy_filename("provider")
        result = runner.invoke(
            cli,
            ["evaluate", "--seeker-policy", str(provider), "--mode", "acts", "-n", "2", "-r", "1", "--out", str(tmp_path)],
        )
        assert result.exit_code == 2


class TestValidate:
    def test_short_suite_writes_report(self, runner, tmp_path):
        result = runner.invoke(cli, ["validate", "--steps", "2000", "--out", str(tmp_path)])
        assert result.exit_code in (0, 2)
        report = json.loads((tmp_path / VALIDATION_FILENAME).read_text())
        assert report["steps"] == 2000
        assert report["checks"]


class TestMetricCommands:
    def test_nlg_leave_one_out(self, runner, tmp_path):
        result = runner.invoke(cli, ["nlg-eval", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        document = json.loads((tmp_path / NLG_REPORT_FILENAME).read_text())
        assert document["source"] == "leave-one-out"
        assert 0.0 <= document["mean_bleu"] <= 1.0

    def test_nlg_candidates(self, runner, tmp_path):
        candidates = tmp_path / "generated.tsv"
        candidates.write_text("# mr\tcandidate\nact_offer <name>\t<name> is a nice place .\n")
        result = runner.invoke(cli, ["nlg-eval", "--candidates", str(candidates), "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        document = json.loads((tmp_path / NLG_REPORT_FILENAME).read_text())
        assert document["n_candidates"] == 1
        assert document["mean_bleu"] == pytest.approx(1.0)

    def test_nlg_malformed_candidates(self, runner, tmp_path):
        candidates = tmp_path / "generated.tsv"
        candidates.write_text("act_offer <name>\n")
        result = runner.invoke(cli, ["nlg-eval", "--candidates", str(candidates), "--out", str(tmp_path)])
        assert result.exit_code == 1

    def test_nlg_unknown_mr(self, runner, tmp_path):
        candidates = tmp_path / "generated.tsv"
        candidates.write_text("act_hello\thello\n")
        result = runner.invoke(cli, ["nlg-eval", "--candidates", str(candidates), "--out", str(tmp_path)])
        assert result.exit_code == 2

    def test_nlu_clean(self, runner, tmp_path):
        result = runner.invoke(cli, ["nlu-eval", "--rows", "50", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        document = json.loads((tmp_path / NLU_REPORT_FILENAME).read_text())
        assert document["noisy"] is False
        assert set(document["scores"]) == {"seeker", "provider"}
        assert document["scores"]["provider"]["frame_f1"] == pytest.approx(1.0)


class TestChat:
    def test_quit_saves_transcript(self, runner, tmp_path):
        result = runner.invoke(cli, ["chat", "handcrafted", "--out", str(tmp_path)], input="/quit\n")
        assert result.exit_code == 0, result.output
        assert "provider:" in result.output
        assert (tmp_path / CHAT_TRANSCRIPT_FILENAME).exists()

    def test_missing_policy_file(self, runner, tmp_path):
        result = runner.invoke(cli, ["chat", str(tmp_path / "nope.json.gz"), "--out", str(tmp_path)])
        assert result.exit_code == 1
        assert "Not a policy file" in result.output


def test_version(runner):
    result = runner.invoke(cli, ["version"])
    assert result.exit_code == 0
    assert result.output.startswith("parley v")


class TestHandleError:
    def test_exit_codes(self):
        assert handle_error(ConfigurationError("bad flag")) == EXIT_USAGE_ERROR
        assert handle_error(PolicyMismatchError("wrong role")) == EXIT_RUNTIME_ERROR
        assert handle_error(ValueError("boom")) == EXIT_RUNTIME_ERROR

    def test_engine_error_hint(self, capsys):
        handle_error(PolicyMismatchError("fingerprint differs"))
        err = capsys.readouterr().err
        assert "PolicyMismatchError: fingerprint differs" in err
        assert "config.yaml" in err
