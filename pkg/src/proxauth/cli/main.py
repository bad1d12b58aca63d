"""proxauth command line.

One binary, nine subcommands covering the whole pipeline: synthesize
data, train and evaluate the classifiers, run the attack suite, serve
the authentication API, and replay a scripted login session. Tables go
to stdout as CSV by default (``--json`` switches to JSON); every file
written gets a sibling ``*.manifest.json`` recording how to reproduce it.
"""

from __future__ import annotations

import json
import math
from dataclasses import fields as dataclass_fields
from pathlib import Path

import click

from .. import __version__, mlcore
from ..config import CONFIG_ENV_VAR, SimConfig, load_default_config
from ..dataset import Dataset
from ..errors import ConfigError, ProxauthError
from ..mlcore import ALGORITHMS
from ..rfsim import authentic_anchor, build_environment, generate_dataset, session_stream
from ..threatbench import ATTACK_KINDS, AttackSpec, EVASION_SWEEP, run_suite
from .manifest import RunManifest

METRIC_COLUMNS = ("accuracy", "sensitivity", "specificity", "f1", "precision")

ALGO_CHOICES = ("all",) + ALGORITHMS


def _load_config(path: str | None) -> SimConfig:
    """Explicit --config wins, else the env-var/default chain."""
    if path is not None:
        return SimConfig.load(path)
    return load_default_config()


def _argv(ctx) -> list:
    obj = ctx.obj or {}
    return list(obj.get("argv", []))


def _write_manifest(ctx, command: str, *, config: dict, seed,
                    inputs: list, outputs: list, beside=None) -> None:
    manifest = RunManifest(command=command, argv=_argv(ctx), config=config,
                           seed=seed, inputs=[str(p) for p in inputs],
                           outputs=[str(p) for p in outputs])
    manifest.write_beside(beside if beside is not None else outputs[0])


def _render_rows(rows: list[dict], columns: tuple, as_json: bool) -> str:
    if as_json:
        rounded = [{k: (round(v, 6) if isinstance(v, float) else v) for k, v in row.items()}
                   for row in rows]
        return json.dumps(rounded, indent=2, sort_keys=True) + "\n"
    import csv
    import io
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (f"{v:.6f}" if isinstance(v, float) else v)
                         for k, v in row.items()})
    return buf.getvalue()


def _emit_table(ctx, command: str, rows: list[dict], columns: tuple,
                output: str | None, as_json: bool, *, config: dict,
                seed, inputs: list) -> None:
    text = _render_rows(rows, columns, as_json)
    if output is None:
        click.echo(text, nl=False)
        return
    Path(output).write_text(text, encoding="utf-8")
    _write_manifest(ctx, command, config=config, seed=seed,
                    inputs=inputs, outputs=[output])
    click.echo(f"wrote {len(rows)} rows to {output}")


def _algos(algo: str) -> tuple:
    return ALGORITHMS if algo == "all" else (algo,)


@click.group()
@click.version_option(__version__, prog_name="proxauth")
@click.pass_context
def cli(ctx):
    """Wi-Fi proximity two-factor authentication toolkit."""
    ctx.ensure_object(dict)


# ---------------------------------------------------------------- gen-data

@cli.command("gen-data")
@click.option("--authentic", type=click.IntRange(min=0), default=2442,
              show_default=True, help="number of co-located samples")
@click.option("--unauthorized", type=click.IntRange(min=0), default=2383,
              show_default=True, help="number of separated samples")
@click.option("--aps", type=click.IntRange(min=1), default=None,
              help="access point count (defaults to the config value)")
@click.option("--seed", type=int, default=None,
              help="campaign seed (defaults to the config seed)")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help=f"simulator config file (or ${CONFIG_ENV_VAR})")
@click.option("--json", "as_json", is_flag=True, help="write JSON lines instead of CSV")
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True,
              help="dataset file to write")
@click.pass_context
def gen_data(ctx, authentic, unauthorized, aps, seed, config_path, as_json, output):
    """Synthesize a labeled co-location dataset."""
    cfg = _load_config(config_path).override(ap_count=aps)
    if seed is None:
        seed = cfg.seed
    env = build_environment(cfg, seed=seed)
    dataset = generate_dataset(env, authentic, unauthorized, seed=seed)
    if as_json:
        dataset.to_jsonl(output)
    else:
        dataset.to_csv(output)
    _write_manifest(ctx, "gen-data",
                    config={"sim": cfg.to_dict(), "authentic": authentic,
                            "unauthorized": unauthorized,
                            "format": "jsonl" if as_json else "csv"},
                    seed=seed, inputs=[], outputs=[output])
    click.echo(f"wrote {len(dataset)} rows to {output}")


# ------------------------------------------------------------------- train

@cli.command("train")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(ALGO_CHOICES), default="all",
              show_default=True, help="which classifier(s) to fit")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), required=True,
              help="directory for the saved model files")
@click.pass_context
def train_cmd(ctx, data, algo, seed, out_dir):
    """Fit classifiers on a dataset file and save them."""
    dataset = Dataset.load(data)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    outputs = []
    for name in _algos(algo):
        model = mlcore.train(name, dataset, seed=seed)
        path = out / f"{name}.json"
        mlcore.save_model(model, path)
        outputs.append(str(path))
        click.echo(f"trained {name} on {len(dataset)} rows -> {path}")
    _write_manifest(ctx, "train",
                    config={"algo": algo, "rows": len(dataset)},
                    seed=seed, inputs=[data], outputs=outputs,
                    beside=out / "train")


# -------------------------------------------------------------------- eval

@cli.command("eval")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(ALGO_CHOICES), default="all", show_default=True)
@click.option("--test-fraction", type=click.FloatRange(min=0.0, max=1.0, min_open=True,
              max_open=True), default=0.2, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True,
              help="drives both the split and training")
@click.option("--json", "as_json", is_flag=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def eval_cmd(ctx, data, algo, test_fraction, seed, as_json, output):
    """Holdout evaluation: stratified split, train, score on the test part."""
    dataset = Dataset.load(data)
    train_set, test_set = mlcore.train_test_split(dataset, test_fraction=test_fraction,
                                                  seed=seed)
    rows = []
    for name in _algos(algo):
        model = mlcore.train(name, train_set, seed=seed)
        _, metrics = mlcore.evaluate(model, test_set)
        rows.append({"model": name, **metrics.as_dict()})
    _emit_table(ctx, "eval", rows, ("model",) + METRIC_COLUMNS, output, as_json,
                config={"algo": algo, "test_fraction": test_fraction,
                        "train_rows": len(train_set), "test_rows": len(test_set)},
                seed=seed, inputs=[data])


# ---------------------------------------------------------------------- cv

@cli.command("cv")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(ALGO_CHOICES), default="all", show_default=True)
@click.option("--k", type=click.IntRange(min=2), default=5, show_default=True,
              help="number of stratified folds")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def cv_cmd(ctx, data, algo, k, seed, as_json, output):
    """K-fold cross validation with per-fold and mean rows."""
    dataset = Dataset.load(data)
    folds = mlcore.stratified_kfold(dataset, k=k, seed=seed)
    rows = []
    for name in _algos(algo):
        fold_metrics = []
        for index, (train_set, val_set) in enumerate(folds, start=1):
            model = mlcore.train(name, train_set, seed=seed)
            _, metrics = mlcore.evaluate(model, val_set)
            fold_metrics.append(metrics)
            rows.append({"model": name, "fold": str(index), **metrics.as_dict()})
        mean = {col: sum(getattr(m, col) for m in fold_metrics) / len(fold_metrics)
                for col in METRIC_COLUMNS}
        rows.append({"model": name, "fold": "mean", **mean})
    _emit_table(ctx, "cv", rows, ("model", "fold") + METRIC_COLUMNS, output, as_json,
                config={"algo": algo, "k": k, "rows": len(dataset)},
                seed=seed, inputs=[data])


# -------------------------------------------------------------- importance

@cli.command("importance")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(ALGO_CHOICES), default="all",
              show_default=True, help="'all' covers every model that supports scores")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def importance_cmd(ctx, data, algo, seed, as_json, output):
    """Per-feature importance scores for the trained models."""
    dataset = Dataset.load(data)
    if algo == "all":
        names = tuple(a for a in ALGORITHMS if a != "nb")
    else:
        names = (algo,)  # an explicit nb request fails loudly
    rows = []
    for name in names:
        model = mlcore.train(name, dataset, seed=seed)
        vector = mlcore.feature_importance(model, dataset)
        for rank, (feature, score) in enumerate(vector.ranked(), start=1):
            rows.append({"model": name, "feature": feature,
                         "score": score, "rank": rank})
    _emit_table(ctx, "importance", rows, ("model", "feature", "score", "rank"),
                output, as_json,
                config={"algo": algo, "rows": len(dataset)},
                seed=seed, inputs=[data])


# ------------------------------------------------------------------- bench

@cli.command("bench")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", type=click.Choice(ALGO_CHOICES), default="all", show_default=True)
@click.option("--test-fraction", type=click.FloatRange(min=0.0, max=1.0, min_open=True,
              max_open=True), default=0.2, show_default=True,
              help="held-out fraction used as the timing batch")
@click.option("--repetitions", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def bench_cmd(ctx, data, algo, test_fraction, repetitions, seed, as_json, output):
    """Time batch inference per model, fastest first."""
    dataset = Dataset.load(data)
    train_set, test_set = mlcore.train_test_split(dataset, test_fraction=test_fraction,
                                                  seed=seed)
    models = {name: mlcore.train(name, train_set, seed=seed) for name in _algos(algo)}
    rows = mlcore.benchmark_table(models, test_set.features, repetitions=repetitions)
    _emit_table(ctx, "bench", rows, ("model", "batch_rows", "seconds"), output, as_json,
                config={"algo": algo, "test_fraction": test_fraction,
                        "repetitions": repetitions, "batch_rows": len(test_set)},
                seed=seed, inputs=[data])


# ------------------------------------------------------------------ attack

@cli.command("attack")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--kind", type=click.Choice(("all",) + ATTACK_KINDS), default="all",
              show_default=True)
@click.option("--target", type=click.Choice(ALGORITHMS), default="rf",
              show_default=True, help="victim model for extraction")
@click.option("--sigma", "sigmas", type=float, multiple=True,
              help="evasion noise levels (repeatable; default sweep otherwise)")
@click.option("--perturb-range", type=click.FloatRange(min=0, min_open=True),
              default=20.0, show_default=True,
              help="extraction query perturbation span in dB")
@click.option("--interference-sigma", type=click.FloatRange(min=0, min_open=True),
              default=2.0, show_default=True)
@click.option("--test-fraction", type=click.FloatRange(min=0.0, max=1.0, min_open=True,
              max_open=True), default=0.2, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), required=True,
              help="directory for attack_report.csv/json")
@click.pass_context
def attack_cmd(ctx, data, kind, target, sigmas, perturb_range, interference_sigma,
               test_fraction, seed, out_dir):
    """Run the attack suite and write before/after reports."""
    dataset = Dataset.load(data)
    train_set, test_set = mlcore.train_test_split(dataset, test_fraction=test_fraction,
                                                  seed=seed)
    models = mlcore.train_all(train_set, seed=seed)
    sweep = tuple(sigmas) if sigmas else EVASION_SWEEP
    kinds = ATTACK_KINDS if kind == "all" else (kind,)
    specs = [AttackSpec(kind=k, noise_sigmas=sweep,
                        rssi_perturbation_range=perturb_range,
                        interference_sigma=interference_sigma, seed=seed)
             for k in kinds]
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reports = run_suite(models, train_set, test_set, specs, out_dir=out,
                        extraction_target=target)
    for report in reports:
        click.echo(f"{report.kind}: {len(report.rows)} result rows")
    outputs = [str(out / "attack_report.csv"), str(out / "attack_report.json")]
    _write_manifest(ctx, "attack",
                    config={"kind": kind, "target": target, "sigmas": list(sweep),
                            "perturb_range": perturb_range,
                            "interference_sigma": interference_sigma,
                            "test_fraction": test_fraction},
                    seed=seed, inputs=[data], outputs=outputs,
                    beside=out / "attack_report")


# ------------------------------------------------------------------- serve

_SERVE_ONLY_KEYS = {"models_dir", "models", "users_path", "mail", "spool_dir",
                    "host", "port"}


def _build_service(doc: dict, models_dir, users, mail, spool_dir):
    from ..authd import (AuthPolicy, AuthService, JsonlUserStore, MemoryMailer,
                         MemoryUserStore, SpoolMailer, StdoutMailer)

    policy_keys = {f.name for f in dataclass_fields(AuthPolicy)}
    unknown = set(doc) - policy_keys - _SERVE_ONLY_KEYS
    if unknown:
        raise ConfigError(f"unknown service config keys: {sorted(unknown)}")
    policy = AuthPolicy.from_dict({k: v for k, v in doc.items() if k in policy_keys})

    models_dir = models_dir or doc.get("models_dir")
    model_paths = dict(doc.get("models") or {})
    if models_dir:
        for name in ALGORITHMS:
            candidate = Path(models_dir) / f"{name}.json"
            if candidate.exists():
                model_paths.setdefault(name, str(candidate))
    needed = set(policy.continuous_ensemble) | {policy.decision_model}
    missing = sorted(needed - set(model_paths))
    if missing:
        raise ConfigError(f"no saved model for: {', '.join(missing)}")
    models = {name: mlcore.load_model(path) for name, path in model_paths.items()}

    users = users or doc.get("users_path")
    store = JsonlUserStore(users) if users else MemoryUserStore()
    mail = mail or doc.get("mail") or "stdout"
    if mail == "stdout":
        mailer = StdoutMailer()
    elif mail == "spool":
        spool_dir = spool_dir or doc.get("spool_dir")
        if not spool_dir:
            raise ConfigError("mail=spool needs --spool-dir")
        mailer = SpoolMailer(spool_dir)
    elif mail == "memory":
        mailer = MemoryMailer()
    else:
        raise ConfigError(f"unknown mail transport {mail!r}")
    return AuthService(store=store, models=models, policy=policy, mailer=mailer), policy


@cli.command("serve")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="service config JSON (policy knobs plus paths)")
@click.option("--models-dir", type=click.Path(file_okay=False, exists=True), default=None,
              help="directory of saved <algo>.json models")
@click.option("--users", type=click.Path(dir_okay=False), default=None,
              help="JSONL user store path (in-memory when omitted)")
@click.option("--mail", type=click.Choice(("stdout", "spool", "memory")), default=None,
              help="one-time-code transport [default: stdout]")
@click.option("--spool-dir", type=click.Path(file_okay=False), default=None)
@click.option("--host", default=None, help="[default: 127.0.0.1]")
@click.option("--port", type=click.IntRange(min=0, max=65535), default=None,
              help="[default: 8800]")
def serve_cmd(config_path, models_dir, users, mail, spool_dir, host, port):
    """Run the authentication service over HTTP (blocks until interrupted)."""
    import uvicorn

    from ..authd import create_app

    doc = {}
    if config_path:
        doc = json.loads(Path(config_path).read_text(encoding="utf-8"))
        if not isinstance(doc, dict):
            raise ConfigError("service config must be a JSON object")
    service, policy = _build_service(doc, models_dir, users, mail, spool_dir)
    host = host or doc.get("host") or "127.0.0.1"
    port = port if port is not None else int(doc.get("port") or 8800)
    click.echo(f"serving on http://{host}:{port} "
               f"(decision model {policy.decision_model}, "
               f"ensemble {','.join(policy.continuous_ensemble)})")
    uvicorn.run(create_app(service), host=host, port=port, log_level="warning")


# ------------------------------------------------------------ demo-session

class _DemoClock:
    """Hand-cranked clock so the transcript is reproducible."""

    def __init__(self):
        self.t = 0.0

    def __call__(self) -> float:
        return self.t


def _far_corner(cfg: SimConfig) -> tuple[float, float]:
    width, height = cfg.bounds_m
    dx, dy = cfg.desk_point
    return (width - 0.5 if dx <= width / 2 else 0.5,
            height - 0.5 if dy <= height / 2 else 0.5)


@cli.command("demo-session")
@click.option("--separate-at", type=click.IntRange(min=1), default=4, show_default=True,
              help="tick at which the phone walks away")
@click.option("--train-rows", type=click.IntRange(min=10), default=300, show_default=True,
              help="samples per class for the demo training set")
@click.option("--seed", type=int, default=None,
              help="defaults to the config seed")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None)
def demo_session(separate_at, train_rows, seed, config_path):
    """Replay a full login on a simulated clock: grant, rechecks, termination."""
    from ..authd import AuthService, MemoryMailer, TERMINATE

    cfg = _load_config(config_path)
    if seed is None:
        seed = cfg.seed
    env = build_environment(cfg, seed=seed)
    click.echo(f"training 6 classifiers on {2 * train_rows} synthetic rows "
               f"(seed {seed})")
    dataset = generate_dataset(env, train_rows, train_rows, seed=seed)
    models = mlcore.train_all(dataset, seed=seed)

    clock = _DemoClock()
    service = AuthService(models=models, mailer=MemoryMailer(), clock=clock)
    policy = service.policy
    interval = policy.recheck_interval_s

    service.register("demo", "demo-pass-phrase", "favorite color", "cyan",
                     "demo@example.net", "rpi-login", "rpi-mobile")
    click.echo("registered 'demo' with devices rpi-login / rpi-mobile")

    login_pose, mobile_pose = authentic_anchor(env, seed)
    near = (login_pose.position, mobile_pose.position)
    apart = (login_pose.position, _far_corner(cfg))
    max_ticks = separate_at + 3  # a little slack past the scripted walk-away
    trajectory = [near] * separate_at + [apart] * (max_ticks - separate_at + 1)
    pairs = list(session_stream(env, trajectory, interval_s=interval, seed=seed))

    pending = service.login_step1("demo", "demo-pass-phrase")
    click.echo(f"[t={clock.t:7.1f}s] password accepted, scan window open "
               f"(pending {pending.pending_id[:8]})")
    decision = service.submit_scans(pending.pending_id, *pairs[0])
    overlap = decision.overlap.detail
    proximity = decision.proximity.detail
    session = decision.session
    click.echo(f"[t={clock.t:7.1f}s] overlap {overlap['shared_aps']} shared APs "
               f"(need {overlap['required']}), proximity {proximity['positive']}/"
               f"{proximity['rows']} rows positive: GRANTED session "
               f"{session.session_id[:8]}")

    for tick, (login_scan, mobile_scan) in enumerate(pairs[1:], start=1):
        clock.t = tick * interval
        gap = math.dist(*trajectory[tick])
        result = service.continuous_tick(session, login_scan, mobile_scan)
        entry = session.check_log[-1]
        votes = " ".join(f"{name}{'+' if entry['verdicts'][name] else '-'}"
                         for name in policy.continuous_ensemble)
        click.echo(f"[t={clock.t:7.1f}s] tick {tick} (gap {gap:5.1f} m): "
                   f"{votes} -> {result}")
        if result == TERMINATE:
            break
    refreshed = service.get_session(session.session_id)
    if refreshed.status == "terminated":
        click.echo(f"session terminated after {tick} rechecks: "
                   f"{refreshed.termination_reason}")
    else:
        click.echo(f"session still active after {tick} rechecks")


def main(argv: list[str] | None = None) -> int:
    """Entry point: returns the process exit code instead of raising."""
    import sys

    args = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        cli.main(args=args, prog_name="proxauth", standalone_mode=False,
                 obj={"argv": args})
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        return 2
    except click.ClickException as exc:
        exc.show()
        return int(exc.exit_code)
    except ProxauthError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0
