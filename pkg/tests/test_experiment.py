"""Tests for training runs, checkpoints, learning curves, evaluation and NLU corpora."""

import pytest

from parley.src.config import CURVE_FILENAME, ExperimentConfig, policy_filename
from parley.src.core.acts.models import Role
from parley.src.core.errors import CheckpointMismatchError, PolicyMismatchError
from parley.src.core.experiment import (
    CurveRow,
    MetricsWindow,
    Trainer,
    build_nlu_corpus,
    evaluate,
    nlu_report,
    read_curve,
    write_curve,
)
from parley.src.core.game import EpisodeConfig
from parley.src.core.language import ChannelMode, NoiseConfig
from parley.src.core.marl import Algorithm, LearnerConfig


def small_config(**overrides) -> ExperimentConfig:
    values = dict(
        seed=3,
        n_train_dialogues=40,
        checkpoint_every=10,
        curve_window=10,
        n_eval_dialogues=20,
        n_repetitions=2,
        episode=EpisodeConfig(channel_mode=ChannelMode.ACTS),
    )
    values.update(overrides)
    return ExperimentConfig(**values)


class Interrupt(Exception):
    pass


class TestCurves:
    def test_window_keeps_latest(self):
        window = MetricsWindow.from_list(2, [[1, 10, 10, 5], [0, -10, -12, 3], [1, 5, 5, 7]])
        assert len(window) == 2
        assert window.row(30) == CurveRow(30, 0.5, -2.5, -3.5, 5.0)

    def test_empty_window(self):
        assert MetricsWindow(5).row(0) == CurveRow(0, 0.0, 0.0, 0.0, 0.0)

    def test_write_and_read(self, tmp_path):
        rows = [CurveRow(10, 0.1, -12.5, -11.0, 9.3), CurveRow(20, 0.25, -3.0, -2.0, 12.0)]
        path = tmp_path / CURVE_FILENAME
        write_curve(path, rows)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "dialogues,success_rate,seeker_return,provider_return,avg_turns"
        assert lines[1] == "10,0.100000,-12.500000,-11.000000,9.300000"
        assert read_curve(path) == rows


class TestTrainer:
    def test_same_seed_same_files(self, tmp_path):
        cfg = small_config()
        first = Trainer(cfg, tmp_path / "a").train()
        second = Trainer(cfg, tmp_path / "b").train()

        assert [row.dialogues for row in first.rows] == [10, 20, 30, 40]
        for name in (CURVE_FILENAME, policy_filename("seeker"), policy_filename("provider")):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert first.rows == second.rows

    def test_different_seed_differs(self, tmp_path):
        first = Trainer(small_config(seed=1), tmp_path / "a").train()
        second = Trainer(small_config(seed=2), tmp_path / "b").train()
        assert first.rows != second.rows

    def test_outputs(self, tmp_path):
        result = Trainer(small_config(), tmp_path).train()
        assert result.policy_paths[Role.SEEKER] == tmp_path / policy_filename("seeker")
        assert (tmp_path / "config.yaml").exists()
        assert (tmp_path / "checkpoint" / "state.json").exists()
        assert 0.0 <= result.final_row.success_rate <= 1.0
        assert result.dialogues == 40

    def test_resume_matches_uninterrupted_run(self, tmp_path):
        cfg = small_config()
        Trainer(cfg, tmp_path / "full").train()

        def stop_after_25(done, outcome):
            if done == 25:
                raise Interrupt()

        with pytest.raises(Interrupt):
            Trainer(cfg, tmp_path / "resumed", on_episode=stop_after_25).train()
        result = Trainer(cfg, tmp_path / "resumed").train(resume=True)

        assert result.resumed_from == 20
        for name in (CURVE_FILENAME, policy_filename("seeker"), policy_filename("provider")):
            assert (tmp_path / "full" / name).read_bytes() == (tmp_path / "resumed" / name).read_bytes()

    def test_resume_without_checkpoint_starts_over(self, tmp_path):
        result = Trainer(small_config(n_train_dialogues=10), tmp_path).train(resume=True)
        assert result.resumed_from == 0
        assert len(result.rows) == 1

    def test_resume_refuses_other_seed(self, tmp_path):
        Trainer(small_config(), tmp_path).train()
        with pytest.raises(CheckpointMismatchError, match="different run"):
            Trainer(small_config(seed=4), tmp_path).train(resume=True)

    @pytest.mark.parametrize(
        "overrides, changed",
        [
            ({"seeker": LearnerConfig(algorithm=Algorithm.QLEARNING)}, "seeker"),
            ({"episode": EpisodeConfig(channel_mode=ChannelMode.LANGUAGE)}, "episode"),
            ({"n_train_dialogues": 60}, "n_train_dialogues"),
        ],
    )
    def test_resume_refuses_other_training_config(self, tmp_path, overrides, changed):
        Trainer(small_config(), tmp_path).train()
        with pytest.raises(CheckpointMismatchError, match="different settings") as info:
            Trainer(small_config(**overrides), tmp_path).train(resume=True)
        assert info.value.changed == [changed]

    def test_resume_ignores_evaluation_settings(self, tmp_path):
        Trainer(small_config(n_train_dialogues=20), tmp_path).train()
        result = Trainer(small_config(n_train_dialogues=20, n_eval_dialogues=7), tmp_path).train(resume=True)
        assert result.resumed_from == 20

    def test_progress_callback(self, tmp_path):
        seen = []
        Trainer(small_config(n_train_dialogues=5), tmp_path, on_episode=lambda done, _: seen.append(done)).train()
        assert seen == [1, 2, 3, 4, 5]


class TestEvaluator:
    def test_handcrafted_pair(self, resources):
        cfg = small_config()
        report, kept = evaluate(cfg, {}, resources)
        assert report.pairing == {"seeker": "handcrafted", "provider": "handcrafted"}
        assert len(report.repetitions) == 2
        assert report.mean("success_rate") == 1.0
        assert report.std("success_rate") == 0.0
        assert report.repetitions[0].seed != report.repetitions[1].seed
        assert [len(outcomes) for outcomes in kept.values()] == [20, 20]

    def test_report_dict(self, resources):
        report, _ = evaluate(small_config(n_repetitions=1), {}, resources)
        data = report.to_dict()
        assert set(data["mean"]) == {"success_rate", "seeker_return", "provider_return", "avg_turns"}
        assert data["repetitions"][0]["n_dialogues"] == 20

    def test_no_transcripts_kept(self, resources):
        _, kept = evaluate(small_config(save_transcripts=False), {}, resources)
        assert kept == {}

    def test_trained_policies(self, tmp_path):
        cfg = small_config()
        trained = Trainer(cfg, tmp_path).train()
        report, _ = evaluate(cfg, trained.policy_paths)
        again, _ = evaluate(cfg, trained.policy_paths)
        assert report.pairing["seeker"] == str(trained.policy_paths[Role.SEEKER])
        assert report.to_dict() == again.to_dict()

    def test_cross_pairing_with_handcrafted(self, tmp_path):
        cfg = small_config(n_repetitions=1)
        trained = Trainer(cfg, tmp_path).train()
        report, _ = evaluate(cfg, {Role.SEEKER: trained.policy_paths[Role.SEEKER], Role.PROVIDER: None})
        assert report.pairing["provider"] == "handcrafted"

    def test_wrong_role_policy(self, tmp_path):
        cfg = small_config()
        trained = Trainer(cfg, tmp_path).train()
        with pytest.raises(PolicyMismatchError):
            evaluate(cfg, {Role.SEEKER: trained.policy_paths[Role.PROVIDER]})

    def test_workers_match_in_process(self, resources):
        single, _ = evaluate(small_config(n_repetitions=1), {}, resources)
        pooled, _ = evaluate(small_config(n_repetitions=1, eval_workers=2), {}, resources)
        assert single.to_dict() == pooled.to_dict()


class TestNLUCorpus:
    def test_deterministic(self, resources):
        a = build_nlu_corpus(resources, Role.PROVIDER, 50, seed=1)
        b = build_nlu_corpus(resources, Role.PROVIDER, 50, seed=1)
        assert a == b
        assert len(a) == 50

    def test_clean_corpus_is_fully_understood(self, resources):
        scores = nlu_report(resources, 300, seed=0)
        for role in Role:
            assert scores[role].intent_f1 == pytest.approx(1.0)
            assert scores[role].slot_f1 == pytest.approx(1.0)
            assert scores[role].frame_f1 == pytest.approx(1.0)

    def test_noise_costs_f1(self, resources):
        clean = nlu_report(resources, 300, seed=0)
        noisy = nlu_report(resources, 300, seed=0, noise=NoiseConfig.uniform(0.3))
        for role in Role:
            assert noisy[role].slot_f1 < clean[role].slot_f1
            assert noisy[role].n_rows == 300


def trained_success(cfg: ExperimentConfig, output_dir) -> float:
    trained = Trainer(cfg, output_dir).train()
    report, _ = evaluate(cfg, trained.policy_paths)
    return report.mean("success_rate")


def band_config(**overrides) -> ExperimentConfig:
    values = dict(seed=0, n_train_dialogues=20_000, n_eval_dialogues=500, n_repetitions=3, save_transcripts=False)
    values.update(overrides)
    return ExperimentConfig(**values)


@pytest.mark.slow
class TestLearningBands:
    def test_act_channel_self_play_succeeds(self, tmp_path):
        cfg = band_config(
            n_repetitions=1,
            n_eval_dialogues=1_000,
            episode=EpisodeConfig(channel_mode=ChannelMode.ACTS, acts_noise=NoiseConfig.lossless()),
        )
        assert trained_success(cfg, tmp_path) >= 0.90

    def test_wolf_phc_beats_qlearning_on_noisy_language(self, tmp_path):
        wolf = band_config()
        greedy = LearnerConfig(algorithm=Algorithm.QLEARNING)
        qlearning = band_config(seeker=greedy, provider=greedy)
        assert trained_success(wolf, tmp_path / "wolf") >= trained_success(qlearning, tmp_path / "q") + 0.05

    def test_success_does_not_rise_with_noise(self, tmp_path):
        rates = [
            trained_success(
                band_config(episode=EpisodeConfig(noise=NoiseConfig.uniform(level))),
                tmp_path / str(level),
            )
            for level in (0.0, 0.1, 0.2, 0.3)
        ]
        for lower, higher in zip(rates, rates[1:]):
            assert higher <= lower + 0.05

    def test_language_training_improves_on_first_window(self, tmp_path):
        result = Trainer(band_config(), tmp_path).train()
        assert result.final_row.success_rate > result.rows[0].success_rate
