import dataclasses

import pytest

from tracecert import Tolerances
from tracecert.harness import CHECK_TABLE, KINDS, FuzzConfig, parse_dims, run_fuzz


def _strip(report):
    return report.to_dict(timing=False)


class TestConfig:
    @pytest.mark.parametrize("trials", [0, -3])
    def test_trials_rejected(self, trials):
        with pytest.raises(ValueError, match="trials"):
            FuzzConfig(trials=trials)

    @pytest.mark.parametrize(
        "kw",
        [
            {"dims": ((3, 4),)},
            {"dims": ((3, 0),)},
            {"dims": ()},
            {"seed": -1},
            {"seed": 2**64},
            {"which": ("eig", "bogus")},
            {"which": ()},
            {"angle_style": "sideways"},
            {"spectrum_style": "flat"},
            {"spectrum_style": "prescribed-gap(-1)"},
        ],
    )
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            FuzzConfig(**kw)

    def test_which_is_canonicalized(self):
        assert FuzzConfig(which=("lemma", "eig", "eig")).which == ("eig", "lemma")

    def test_text_round_trip(self):
        cfg = FuzzConfig(seed=2**64 - 1, trials=7, dims=((20, 5), (3, 1)), spectrum_style="prescribed-gap(0.5)",
                         angle_style="tiny", which=("polar", "lemma"))
        assert FuzzConfig.from_text(cfg.to_text()) == cfg

    def test_text_comments_and_hex(self):
        cfg = FuzzConfig.from_text("# campaign\nseed = 0x10\ntrials=3  # short\ndims=4x2\n")
        assert (cfg.seed, cfg.trials, cfg.dims) == (16, 3, ((4, 2),))

    def test_unknown_key(self):
        with pytest.raises(ValueError):
            FuzzConfig.from_text("colour=blue\n")

    def test_parse_dims(self):
        assert parse_dims("20x5, 50X10;3x1") == [(20, 5), (50, 10), (3, 1)]


class TestCampaign:
    def test_check_table_complete(self):
        cfg = FuzzConfig(seed=3, trials=60, dims=((6, 2), (5, 1), (4, 4)), which=KINDS)
        seen = set(run_fuzz(cfg).tightness)
        assert seen == set(CHECK_TABLE)

    def test_deterministic(self):
        cfg = FuzzConfig(seed=42, trials=30, dims=((10, 3),))
        assert _strip(run_fuzz(cfg)) == _strip(run_fuzz(cfg))

    @pytest.mark.slow
    def test_worker_count_irrelevant(self):
        cfg = FuzzConfig(seed=7, trials=40, dims=((8, 2), (12, 5)))
        one = _strip(run_fuzz(cfg))
        assert one == _strip(run_fuzz(cfg, workers=3))

    def test_trial_prefix_stable(self):
        # trial i does not depend on how many trials follow it; a huge negative
        # slack tolerance turns every evaluated check into a recorded violation
        strict = Tolerances(slack_tol=-1e6)
        a = run_fuzz(FuzzConfig(seed=5, trials=10, which=("polar",)), strict).violations
        b = run_fuzz(FuzzConfig(seed=5, trials=20, which=("polar",)), strict).violations
        assert a and a == [v for v in b if v["trial"] < 10]

    def test_rotation_sweep_is_tight(self):
        cfg = FuzzConfig(seed=1, trials=200, dims=((2, 1),), which=("eig",), angle_style="moderate")
        rep = run_fuzz(cfg)
        assert rep.ok
        assert abs(rep.tightness["eig.upper"]["max_ratio"] - 1.0) <= 1e-12

    def test_polar_moderate(self):
        cfg = FuzzConfig(seed=11, trials=1000, dims=((20, 5),), which=("polar",), angle_style="moderate")
        rep = run_fuzz(cfg)
        assert rep.violations == []
        assert rep.total == 1000

    @pytest.mark.parametrize("style", ["tiny", "moderate", "near-orthogonal", "antipodal", "mixed"])
    def test_ratios_bounded(self, style):
        cfg = FuzzConfig(seed=99, trials=150, dims=((10, 2), (20, 5), (3, 1)), angle_style=style)
        rep = run_fuzz(cfg)
        assert rep.ok
        for cid, t in rep.tightness.items():
            if t["max_ratio"] is not None:
                assert t["max_ratio"] <= 1 + 1e-9, cid

    def test_violations_are_data(self):
        rep = run_fuzz(FuzzConfig(seed=2, trials=5, which=("polar",)), Tolerances(slack_tol=-0.5))
        assert not rep.ok
        v = rep.violations[0]
        assert set(v) == {"check_id", "trial", "seed", "instance_digest", "lhs", "rhs", "slack"}

    def test_report_dict(self):
        rep = run_fuzz(FuzzConfig(seed=2, trials=3, which=("von-neumann",)))
        d = rep.to_dict()
        assert d["config"]["which"] == ["von-neumann"] and "elapsed_seconds" in d
        assert "elapsed_seconds" not in rep.to_dict(timing=False)
        assert rep.tightness["von-neumann.equality"]["max_ratio"] == pytest.approx(1.0, abs=1e-12)

    def test_report_is_dataclass(self):
        rep = run_fuzz(FuzzConfig(trials=1, which=("lemma",)))
        assert dataclasses.is_dataclass(rep)
