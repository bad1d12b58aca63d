import numpy as np
import pytest

from proxauth.errors import ConfigError, InvalidState
from proxauth.mlcore import evaluate
from proxauth.threatbench import (
    CSV_COLUMNS,
    AttackSpec,
    ensemble_predict,
    evasion_perturb,
    extraction_attack,
    interference_perturb,
    render_csv,
    render_json,
    run_evasion,
    run_suite,
)

RSSI = 3


def test_spec_validation():
    with pytest.raises(ConfigError):
        AttackSpec("flooding")
    with pytest.raises(ConfigError):
        AttackSpec("evasion", noise_sigmas=(1.0, -0.5))
    with pytest.raises(ConfigError):
        AttackSpec("extraction", rssi_perturbation_range=-1.0)
    with pytest.raises(ConfigError):
        AttackSpec("interference", interference_sigma=-2.0)


# ---- evasion perturbation ------------------------------------------------------


def test_zero_sigma_changes_nothing(small_dataset):
    assert evasion_perturb(small_dataset, 0.0, seed=1) == small_dataset


def test_noise_touches_only_the_rssi_column(default_dataset):
    noisy = evasion_perturb(default_dataset, 2.0, seed=1)
    before, after = default_dataset.rows, noisy.rows
    untouched = [c for c in range(before.shape[1]) if c != RSSI]
    assert np.array_equal(before[:, untouched], after[:, untouched])
    delta = after[:, RSSI] - before[:, RSSI]
    # rounding to integer dBm widens the spread slightly: var 4 + 1/12
    assert abs(delta.std() - 2.0) < 0.1
    assert not np.array_equal(delta, np.zeros_like(delta))


def test_evasion_is_seeded(small_dataset):
    a = evasion_perturb(small_dataset, 1.0, seed=4)
    b = evasion_perturb(small_dataset, 1.0, seed=4)
    c = evasion_perturb(small_dataset, 1.0, seed=5)
    assert a == b
    assert a != c


def test_negative_sigma_rejected(small_dataset):
    with pytest.raises(ConfigError):
        evasion_perturb(small_dataset, -1.0, seed=0)


# ---- interference perturbation ---------------------------------------------------


def test_interference_noise_statistics(default_dataset):
    X = default_dataset.features
    noisy = interference_perturb(X, seed=2)
    delta = noisy - X
    assert abs(delta.mean()) < 0.1
    assert abs(delta.std() - 2.0) < 0.1
    assert np.all(delta != 0.0)  # every entry gets its own draw


def test_interference_leaves_the_input_alone(small_dataset):
    X = small_dataset.features
    copy = X.copy()
    interference_perturb(X, seed=3)
    assert np.array_equal(X, copy)
    assert np.array_equal(
        interference_perturb(X, seed=3), interference_perturb(X, seed=3))


# ---- evasion sweep ---------------------------------------------------------------


def test_baseline_rows_equal_clean_evaluation(small_models, small_split):
    train_set, test_set = small_split
    report = run_evasion(small_models, train_set, test_set,
                         AttackSpec("evasion", seed=0))
    for algo, model in small_models.items():
        assert report.cell(algo, "baseline") == evaluate(model, test_set)[1]


def test_sweep_covers_every_cell(small_models, small_split):
    spec = AttackSpec("evasion", seed=0)
    report = run_evasion(small_models, *small_split, spec)
    post = [(r.model, r.param) for r in report.rows if r.phase == "post"]
    assert len(post) == len(small_models) * len(spec.noise_sigmas)
    assert len(set(post)) == len(post)


def test_accuracy_trends_down_with_sigma(small_models, small_split):
    train_set, test_set = small_split
    curves = []
    for seed in range(5):
        report = run_evasion(small_models, train_set, test_set,
                             AttackSpec("evasion", seed=seed * 100))
        curve = [np.mean([report.cell(a, "baseline").accuracy
                          for a in small_models])]
        for sigma in AttackSpec("evasion").noise_sigmas:
            curve.append(np.mean([report.cell(a, "post", f"{sigma:g}").accuracy
                                  for a in small_models]))
        curves.append(curve)
    avg = np.mean(curves, axis=0)
    assert all(b <= a + 0.01 for a, b in zip(avg, avg[1:]))
    assert avg[-1] < avg[0]


# ---- extraction -------------------------------------------------------------------


def test_shadow_mimics_its_target(small_models, small_split):
    train_set, test_set = small_split
    shadow, report = extraction_attack(
        small_models["rf"], train_set, test_set,
        AttackSpec("extraction", seed=5), ensemble_models=small_models)
    assert shadow.algo == "rf"
    assert report.fidelity["agreement_on_queries"] >= 0.7
    assert report.fidelity["query_count"] == len(train_set) + len(test_set)
    assert 0.0 <= report.fidelity["shadow_clean_accuracy"] <= 1.0


def test_unperturbed_queries_reproduce_the_target(small_models, small_split):
    _, report = extraction_attack(
        small_models["rf"], *small_split,
        AttackSpec("extraction", rssi_perturbation_range=0.0, seed=5))
    assert report.fidelity["agreement_on_queries"] >= 0.95


def test_extraction_never_touches_the_deployed_ensemble(small_models,
                                                        small_split):
    _, report = extraction_attack(
        small_models["rf"], *small_split,
        AttackSpec("extraction", seed=5), ensemble_models=small_models)
    assert report.ensemble["after"] == report.ensemble["before"]
    for algo in small_models:
        report.cell(algo, "baseline")
        report.cell(algo, "post")  # every model has both phases


# ---- ensemble vote ----------------------------------------------------------------


class _Fixed:
    def __init__(self, answers):
        self.answers = np.asarray(answers)

    def predict_many(self, X):
        return self.answers


def test_ensemble_majority_and_tie():
    X = np.zeros((2, 5))
    models = {f"m{i}": _Fixed([1, i % 2]) for i in range(6)}
    # all six say 1 for row 0; rows split 3-3 on row 1, which must deny
    assert ensemble_predict(models, X).tolist() == [1, 0]
    four_one = {"a": _Fixed([1]), "b": _Fixed([1]), "c": _Fixed([1]),
                "d": _Fixed([0]), "e": _Fixed([1])}
    assert ensemble_predict(four_one, X[:1]).tolist() == [1]


# ---- the suite --------------------------------------------------------------------


@pytest.fixture(scope="module")
def suite_reports(small_models, small_split, tmp_path_factory):
    out = tmp_path_factory.mktemp("attacks")
    specs = [AttackSpec("evasion", seed=11),
             AttackSpec("extraction", seed=13),
             AttackSpec("interference", seed=17)]
    reports = run_suite(small_models, *small_split, specs, out_dir=out)
    return reports, out


def test_suite_populates_every_cell(suite_reports, small_models):
    reports, _ = suite_reports
    assert [r.kind for r in reports] == ["evasion", "extraction", "interference"]
    for report in reports:
        assert set(report.models()) == set(small_models)
        for algo in small_models:
            assert report.cell(algo, "baseline").accuracy > 0.0
            report.cell(algo, "post")


def test_suite_writes_matching_files(suite_reports):
    reports, out = suite_reports
    csv_text = (out / "attack_report.csv").read_text()
    header = csv_text.splitlines()[0].split(",")
    assert tuple(header) == CSV_COLUMNS
    n_rows = sum(len(r.rows) for r in reports)
    assert len(csv_text.splitlines()) == n_rows + 1
    assert csv_text == render_csv(reports)
    assert (out / "attack_report.json").read_text() == render_json(reports)


def test_identical_seeds_render_identical_bytes(small_models, small_split):
    specs = [AttackSpec("evasion", seed=11),
             AttackSpec("interference", seed=17)]
    one = run_suite(small_models, *small_split, specs)
    two = run_suite(small_models, *small_split, specs)
    assert render_csv(one) == render_csv(two)
    assert render_json(one) == render_json(two)


def test_suite_rejects_bad_input(small_models, small_split):
    with pytest.raises(ConfigError):
        run_suite(small_models, *small_split, [])
    broken = dict(small_models)
    broken["dt"] = "not a model"
    with pytest.raises(InvalidState):
        run_suite(broken, *small_split, [AttackSpec("evasion")])
    no_target = {a: m for a, m in small_models.items() if a != "rf"}
    with pytest.raises(ConfigError):
        run_suite(no_target, *small_split, [AttackSpec("extraction")])
