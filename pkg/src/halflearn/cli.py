"""Command-line harness wiring data generation, learning, and experiments.

Exit codes partition outcomes: 0 learned / success, 1 I/O or parse
failure, 2 usage error, 3 rejected-non-Gaussian.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import verdicts
from .core import Halfspace, RunConfig, UnitVector, empirical_error, \
    predict_batch, random_unit_vector
from .datagen import MARGINAL_KINDS, MarginalFamily, generate, make_noise
from .io import CsvFormatError, file_sha256, json_dumps, read_samples_csv, \
    write_json, write_samples_csv
from .learner import testable_learn

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_REJECTED = 3


def parse_marginal(spec, axis=0, factor=1.0, dof=3, separation=0.0
                   ) -> MarginalFamily:
    """Accepts a kind string or a dict {"kind": ..., params...}."""
    if isinstance(spec, dict):
        return MarginalFamily(**spec)
    if spec not in MARGINAL_KINDS:
        raise ValueError(f"unknown marginal {spec!r}")
    return MarginalFamily(kind=spec, axis=axis, factor=factor, dof=dof,
                          separation=separation)


def _add_config_flags(p: argparse.ArgumentParser):
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--tau", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-cap", type=int, default=4)
    p.add_argument("--c-a", type=float, default=2.0)
    p.add_argument("--slack", type=float, default=6.0)


def _config(args) -> RunConfig:
    return RunConfig(epsilon=args.epsilon, tau=args.tau, seed=args.seed,
                     k_cap=args.k_cap, c_a=args.c_a,
                     slack_multiplier=args.slack)


def cmd_generate(args) -> int:
    marginal = parse_marginal(args.marginal, axis=args.scale_axis,
                              factor=args.scale_factor, dof=args.t_dof,
                              separation=args.mixture_separation)
    noise = make_noise(args.noise, args.opt)
    v_star = random_unit_vector(args.d, np.random.default_rng(
        np.random.SeedSequence([int(args.seed), 0xA5])))
    s = generate(args.d, args.n, marginal, v_star, noise, args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_samples_csv(out.with_suffix(".csv"), s, header=args.header)
    write_json(out.with_suffix(".json"), {
        "d": args.d,
        "n": args.n,
        "marginal": marginal.to_json_dict(),
        "noise": noise.to_json_dict(),
        "seed": args.seed,
        "v_star": v_star.coords.tolist(),
    })
    print(f"wrote {out.with_suffix('.csv')} and {out.with_suffix('.json')}")
    return EXIT_OK


def cmd_learn(args) -> int:
    cfg = _config(args)
    try:
        samples = read_samples_csv(args.input)
        digest = file_sha256(args.input)
    except CsvFormatError as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        report = testable_learn(samples, args.epsilon, args.tau, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    payload = report.to_json_dict()
    payload["input_csv_sha256"] = digest
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json_dumps(payload))
    for stage, seconds in report.stage_seconds.items():
        print(f"timing {stage}: {seconds:.3f}s", file=sys.stderr)
    print(f"verdict: {report.verdict}"
          + (f" ({report.rejection_stage})" if report.rejection_stage else ""))
    return EXIT_OK if report.learned else EXIT_REJECTED


def _experiment_cells(spec: dict) -> list[dict]:
    grid = spec["grid"]
    def listify(key, default):
        value = grid.get(key, default)
        return value if isinstance(value, list) else [value]
    axes = [listify("d", [8]), listify("n", [400000]),
            listify("epsilon", [0.05]), listify("marginal", ["gaussian"]),
            listify("noise", ["clean"]), listify("opt", [0.0])]
    cells = []
    for idx, combo in enumerate(itertools.product(*axes)):
        d, n, epsilon, marginal, noise, opt = combo
        cells.append({"cell_index": idx, "d": d, "n": n, "epsilon": epsilon,
                      "marginal": marginal, "noise": noise, "opt": opt})
    return cells


def _seed_int(*entropy) -> int:
    return int(np.random.SeedSequence(list(entropy)).generate_state(
        1, np.uint64)[0])


def run_experiment_task(task: dict) -> dict:
    """One grid cell at one seed; crashes are captured in the row."""
    row = {key: task[key] for key in ("cell_index", "d", "n", "epsilon",
                                      "marginal", "noise", "opt", "seed")}
    row.update({"verdict": "", "rejection_stage": "", "rounds_completed": "",
                "heldout_error": "", "disagreement_vs_planted": "",
                "samples_consumed": "", "wall_time_s": "", "error": ""})
    if isinstance(row["marginal"], dict):
        row["marginal"] = row["marginal"].get("kind", "custom")
    started = time.perf_counter()
    try:
        marginal = parse_marginal(task["marginal"])
        noise = make_noise(task["noise"], task["opt"])
        seed = int(task["seed"])
        cell = int(task["cell_index"])
        v_star = random_unit_vector(task["d"], np.random.default_rng(
            np.random.SeedSequence([seed, cell, 2])))
        samples = generate(task["d"], task["n"], marginal, v_star, noise,
                           _seed_int(seed, cell, 0))
        cfg = RunConfig(epsilon=task["epsilon"], tau=task["tau"], seed=seed,
                        k_cap=task.get("k_cap", 4))
        report = testable_learn(samples, task["epsilon"], task["tau"], cfg)
        row["verdict"] = report.verdict
        row["rejection_stage"] = report.rejection_stage or ""
        row["rounds_completed"] = len(report.candidates) - 1 \
            if report.candidates else ""
        row["samples_consumed"] = report.samples_consumed
        if report.learned:
            eval_n = min(task["n"], 20000)
            heldout = generate(task["d"], eval_n, marginal, v_star, noise,
                               _seed_int(seed, cell, 1))
            hyp = report.hypothesis
            assert hyp is not None
            row["heldout_error"] = empirical_error(hyp, heldout)
            planted = predict_batch(Halfspace(v_star), heldout.points)
            row["disagreement_vs_planted"] = float(np.mean(
                predict_batch(hyp, heldout.points) != planted))
    except Exception as exc:  # keep the sweep alive, record the failure
        row["verdict"] = "error"
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["wall_time_s"] = round(time.perf_counter() - started, 3)
    return row


_FIELDS = ["cell_index", "d", "n", "epsilon", "marginal", "noise", "opt",
           "seed", "verdict", "rejection_stage", "rounds_completed",
           "heldout_error", "disagreement_vs_planted", "samples_consumed",
           "wall_time_s", "error"]


def cmd_experiment(args) -> int:
    try:
        spec = json.loads(Path(args.spec).read_text())
        cells = _experiment_cells(spec)
        seeds = spec["seeds"]
        if not cells or not seeds:
            raise ValueError("grid and seeds must be non-empty")
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: bad experiment spec: {exc}", file=sys.stderr)
        return EXIT_IO
    out_path = Path(args.out or spec.get("output_path", "experiment.csv"))
    tau = spec.get("tau", 0.05)

    tasks = [dict(cell, seed=seed, tau=tau)
             for cell in cells for seed in seeds]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(run_experiment_task, tasks))
    else:
        rows = [run_experiment_task(task) for task in tasks]
    rows.sort(key=lambda r: (r["cell_index"], r["seed"]))

    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_FIELDS)
        writer.writeheader()
        writer.writerows(rows)

    for cell in cells:
        cell_rows = [r for r in rows if r["cell_index"] == cell["cell_index"]]
        accepted = [r for r in cell_rows if r["verdict"] == verdicts.LEARNED]
        rate = len(accepted) / len(cell_rows)
        errors = [r["heldout_error"] for r in accepted
                  if r["heldout_error"] != ""]
        mean_err = sum(errors) / len(errors) if errors else float("nan")
        label = cell["marginal"] if not isinstance(cell["marginal"], dict) \
            else cell["marginal"].get("kind", "custom")
        print(f"cell {cell['cell_index']} ({label}, {cell['noise']}, "
              f"opt={cell['opt']}): accept_rate={rate:.2f} "
              f"mean_heldout_error={mean_err:.4f}")
    print(f"wrote {out_path} ({len(rows)} rows)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halflearn",
        description="Tester-learner for homogeneous halfspaces under "
                    "Gaussian marginals with adversarial label noise.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic sample CSV "
                                          "plus sidecar metadata")
    gen.add_argument("--d", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--marginal", required=True, choices=MARGINAL_KINDS)
    gen.add_argument("--noise", default="clean",
                     choices=("clean", "random-flip", "boundary-flip",
                              "wedge-flip"))
    gen.add_argument("--opt", type=float, default=0.0)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", required=True)
    gen.add_argument("--header", action="store_true")
    gen.add_argument("--scale-axis", type=int, default=0)
    gen.add_argument("--scale-factor", type=float, default=1.0)
    gen.add_argument("--t-dof", type=int, default=3)
    gen.add_argument("--mixture-separation", type=float, default=0.0)
    gen.set_defaults(func=cmd_generate)

    learn = sub.add_parser("learn", help="run the tester-learner on a CSV")
    learn.add_argument("--in", dest="input", required=True)
    learn.add_argument("--out", required=True)
    _add_config_flags(learn)
    learn.set_defaults(func=cmd_learn)

    exp = sub.add_parser("experiment", help="run a seeded grid of cells")
    exp.add_argument("--spec", required=True)
    exp.add_argument("--out", default=None)
    exp.add_argument("--workers", type=int, default=1)
    exp.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
