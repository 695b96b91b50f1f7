"""Experiment harness: subcommands, manifests and CSV emission.

Subcommands: generate, solve-exact, qaa, qaoa, delta-sweep, pmin,
resources, sample, report.  Every experiment writes a manifest JSON next
to its CSVs; the run id is a hash of the instance file and all flags, so
re-running the same manifest reproduces byte-identical CSVs.

Exit codes: 0 ok, 2 usage error, 3 resource cap exceeded, 4 data error.
Thread count for walker/repetition parallelism comes from the
QANTENNA_THREADS environment variable.

CSV schemas (column order is pinned):
  metrics.csv    run_id,n,lambda,algo,p,delta,n_meas,seed,alpha,alpha_mp,p_gs,gs_fraction
  cp.csv         run_id,threshold,cp
  histogram.csv  run_id,bin_lo,mass
  resources.csv  n,lambda_case,p,g1,g2,total
  sweep.csv      run_id,p,delta,h_exp,alpha
  pmin.csv       run_id,algo,n,alpha_threshold,p_min
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import (
    DegenerateInstanceError,
    InvalidInputError,
    NotFoundError,
    ParseError,
    ResourceLimitError,
)
from .geometry import generate_sites, load_sites, save_sites
from .ising import (
    IsingInstance,
    bitstring,
    brute_force,
    build_instance,
    connectivity_histogram,
    load_instance,
    mean_connectivity,
    save_instance,
)
from .metrics import (
    cumulative_probability,
    exact_report,
    max_depth,
    max_sites,
    ratio_histogram,
    resource_estimate,
    resource_formula,
    shot_estimators,
)
from .optimizer import (
    OptimizerConfig,
    QaaAlphaSolver,
    QaoaAlphaSolver,
    best_delta,
    delta_sweep,
    pmin_search,
    qaa_run,
    qaoa_ladder,
)
from .rng import stream
from .schedules import QaaConfig, linear_qaa
from .statevector import CostTable, load_state, run_circuit, sample, save_state

METRICS_COLUMNS = ["run_id", "n", "lambda", "algo", "p", "delta", "n_meas",
                   "seed", "alpha", "alpha_mp", "p_gs", "gs_fraction"]
CP_COLUMNS = ["run_id", "threshold", "cp"]
HISTOGRAM_COLUMNS = ["run_id", "bin_lo", "mass"]
RESOURCES_COLUMNS = ["n", "lambda_case", "p", "g1", "g2", "total"]
SWEEP_COLUMNS = ["run_id", "p", "delta", "h_exp", "alpha"]
PMIN_COLUMNS = ["run_id", "algo", "n", "alpha_threshold", "p_min"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_DATA = 4


def _fmt(value) -> str:
    """Deterministic cell rendering; floats use shortest round-trip repr."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def read_csv(path) -> tuple[list[str], list[dict]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        return list(reader.fieldnames or []), list(reader)


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def make_run_id(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:12]


@dataclass
class ExperimentConfig:
    """Validated settings of one qaa/qaoa experiment batch."""

    algo: str
    instance_path: str
    p_list: list[int]
    delta: float | None = None
    n_meas: int | None = None
    repetitions: int = 1
    walkers: int = 1
    rho: float = 0.1
    max_evals: int = 50
    seed: int = 0
    emit_cp: bool = False
    emit_histogram: bool = False
    thresholds: tuple[float, float, float] = (0.0, 1.0, 0.01)

    def __post_init__(self):
        if self.algo not in ("qaa", "qaoa"):
            raise InvalidInputError(f"algo must be qaa or qaoa, got {self.algo}")
        if not self.p_list or any(p < 1 for p in self.p_list):
            raise InvalidInputError("p values must be >= 1 and non-empty")
        if self.algo == "qaa" and (self.delta is None or self.delta <= 0):
            raise InvalidInputError("qaa needs a positive --delta")
        if self.n_meas is not None and self.n_meas < 1:
            raise InvalidInputError("--shots must be >= 1")
        if self.repetitions < 1:
            raise InvalidInputError("--repetitions must be >= 1")
        if self.n_meas is None:
            # exact runs are deterministic; repeating them only duplicates rows
            self.repetitions = 1
        if self.walkers < 1:
            raise InvalidInputError("--walkers must be >= 1")
        if self.max_evals < 1:
            raise InvalidInputError("--iters must be >= 1")
        if self.rho < 0:
            raise InvalidInputError("--rho must be >= 0")


@dataclass
class RunManifest:
    """Everything needed to re-execute a run and find its outputs."""

    run_id: str
    command: str
    instance_sha256: str
    flags: dict
    seed: int
    versions: dict = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    wall_time_s: float = 0.0

    def save(self, out_dir) -> str:
        path = os.path.join(out_dir, f"{self.run_id}.manifest.json")
        doc = {
            "run_id": self.run_id,
            "command": self.command,
            "instance_sha256": self.instance_sha256,
            "flags": self.flags,
            "seed": self.seed,
            "versions": self.versions,
            "outputs": self.outputs,
            "errors": self.errors,
            "wall_time_s": self.wall_time_s,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        return path


def _versions() -> dict:
    import scipy

    return {"qantenna": __version__, "numpy": np.__version__, "scipy": scipy.__version__}


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"expected comma-separated integers, got '{text}'") from exc


def _parse_grid(text: str) -> list[float]:
    """Either 'lo:hi:step' (inclusive ends, step > 0) or 'v1,v2,...'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise InvalidInputError(f"grid must be lo:hi:step, got '{text}'")
        lo, hi, step = (float(v) for v in parts)
        if step <= 0 or hi < lo:
            raise InvalidInputError(f"bad grid bounds '{text}'")
        count = int(round((hi - lo) / step)) + 1
        return [lo + k * step for k in range(count) if lo + k * step <= hi + 1e-12]
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"expected a grid or comma-separated floats, got '{text}'") from exc


def _threads() -> int:
    return max(1, int(os.environ.get("QANTENNA_THREADS", "1")))


def _load_problem(path):
    """(instance, spectrum, table) for an instance file; exact oracle included."""
    inst = load_instance(path)
    spectrum = brute_force(inst)
    table = CostTable.from_instance(inst)
    return inst, spectrum, table


def _threshold_grid(spec: tuple[float, float, float]) -> np.ndarray:
    lo, hi, step = spec
    count = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(count)


# -- experiment orchestration -------------------------------------------------


def run_experiment(cfg: ExperimentConfig, out_dir: str) -> RunManifest:
    """Run one qaa/qaoa batch: all repetitions and depths, CSVs and manifest.

    Repetition r of a shot-mode run samples from substream (seed, r, ...);
    failures of a single repetition are recorded and do not abort the rest.
    """
    started = time.monotonic()
    os.makedirs(out_dir, exist_ok=True)
    inst, spectrum, table = _load_problem(cfg.instance_path)

    flags = {
        "algo": cfg.algo, "p_list": cfg.p_list, "delta": cfg.delta,
        "n_meas": cfg.n_meas, "repetitions": cfg.repetitions,
        "walkers": cfg.walkers, "rho": cfg.rho, "max_evals": cfg.max_evals,
        "emit_cp": cfg.emit_cp, "emit_histogram": cfg.emit_histogram,
        "thresholds": list(cfg.thresholds),
    }
    instance_hash = file_sha256(cfg.instance_path)
    run_id = make_run_id({"instance": instance_hash, "seed": cfg.seed, **flags})
    manifest = RunManifest(run_id=run_id, command=cfg.algo,
                           instance_sha256=instance_hash, flags=flags,
                           seed=cfg.seed, versions=_versions())

    metrics_rows = []
    cp_source = None  # (state or counts) of repetition 0 at the largest depth
    for rep in range(cfg.repetitions):
        try:
            rows, source = _run_one_repetition(cfg, rep, inst, spectrum, table, run_id)
        except (InvalidInputError, DegenerateInstanceError, ResourceLimitError) as exc:
            manifest.errors.append(f"repetition {rep}: {exc}")
            print(f"warning: repetition {rep} failed: {exc}", file=sys.stderr)
            continue
        metrics_rows.extend(rows)
        if rep == 0:
            cp_source = source

    metrics_path = os.path.join(out_dir, "metrics.csv")
    write_csv(metrics_path, METRICS_COLUMNS, metrics_rows)
    manifest.outputs.append("metrics.csv")

    if cp_source is not None and (cfg.emit_cp or cfg.emit_histogram):
        thresholds = _threshold_grid(cfg.thresholds)
        if cfg.emit_cp:
            curve = cumulative_probability(cp_source, inst, spectrum, thresholds, table)
            path = os.path.join(out_dir, "cp.csv")
            write_csv(path, CP_COLUMNS,
                      [(run_id, float(t), float(v))
                       for t, v in zip(curve.thresholds, curve.values)])
            manifest.outputs.append("cp.csv")
        if cfg.emit_histogram:
            bin_lo, mass = ratio_histogram(cp_source, inst, spectrum, table=table)
            path = os.path.join(out_dir, "histogram.csv")
            write_csv(path, HISTOGRAM_COLUMNS,
                      [(run_id, float(b), float(m)) for b, m in zip(bin_lo, mass)])
            manifest.outputs.append("histogram.csv")

    manifest.wall_time_s = time.monotonic() - started
    manifest.save(out_dir)
    return manifest


def _run_one_repetition(cfg: ExperimentConfig, rep: int, inst: IsingInstance,
                        spectrum, table, run_id: str):
    """Metrics rows of one repetition, plus the distribution for CP output."""
    rows = []
    seed_cell = rep if cfg.n_meas is not None else None
    source = None
    if cfg.algo == "qaa":
        for p in cfg.p_list:
            result = qaa_run(inst, QaaConfig(p, cfg.delta), table,
                             n_meas=cfg.n_meas, seed=cfg.seed, seed_path=(rep, p))
            if cfg.n_meas is None:
                report = exact_report(result.state, inst, spectrum, table)
                source = result.state
            else:
                report = shot_estimators(result.counts, inst, spectrum, table)
                source = result.counts
            rows.append((run_id, inst.n, inst.lam, "qaa", p, cfg.delta,
                         cfg.n_meas, seed_cell, report.alpha, report.alpha_mp,
                         report.p_gs, report.gs_counts_fraction))
    else:
        opt_cfg = OptimizerConfig(max_evals=cfg.max_evals, seed=cfg.seed)
        ladder = qaoa_ladder(inst, max(cfg.p_list), walkers=cfg.walkers,
                             rho=cfg.rho, cfg=opt_cfg, table=table,
                             spectrum=spectrum, n_meas=cfg.n_meas,
                             seed_path=(rep,), threads=_threads())
        wanted = set(cfg.p_list)
        for record in ladder.records:
            if record.p not in wanted:
                continue
            state = run_circuit(inst, record.schedule, table)
            if cfg.n_meas is None:
                report = exact_report(state, inst, spectrum, table)
                source = state
            else:
                counts = sample(state, cfg.n_meas,
                                stream(cfg.seed, rep, record.p))
                report = shot_estimators(counts, inst, spectrum, table)
                source = counts
            rows.append((run_id, inst.n, inst.lam, "qaoa", record.p, None,
                         cfg.n_meas, seed_cell, report.alpha, report.alpha_mp,
                         report.p_gs, report.gs_counts_fraction))
    return rows, source


# -- subcommand handlers ------------------------------------------------------


def cmd_generate(args) -> int:
    bbox = tuple(float(v) for v in args.bbox.split(","))
    if len(bbox) != 4:
        raise InvalidInputError(f"--bbox needs x0,y0,x1,y1, got '{args.bbox}'")
    sites = generate_sites(args.n, bbox, args.rmax, args.seed, label=args.label)
    save_sites(sites, args.out)
    print(f"wrote {len(sites)} sites to {args.out}")
    if args.instance_out:
        inst = build_instance(sites, xi=args.xi, lam=args.lam, n_t=args.nt)
        save_instance(inst, args.instance_out)
        print(f"wrote instance (n={inst.n}, lambda={inst.lam}) to {args.instance_out}")
    return EXIT_OK


def cmd_solve_exact(args) -> int:
    inst, spectrum, _ = _load_problem(args.instance)
    doc = {
        "n": inst.n,
        "lambda": inst.lam,
        "h_min": spectrum.h_min,
        "gap": spectrum.gap,
        "degeneracy": spectrum.degeneracy,
        "ground_strings": [bitstring(x, inst.n) for x in spectrum.ground_states],
        "mean_connectivity": mean_connectivity(inst),
        "connectivity_histogram": {str(k): v for k, v in connectivity_histogram(inst).items()},
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"h_min={spectrum.h_min!r} degeneracy={spectrum.degeneracy} gap={spectrum.gap!r}")
    return EXIT_OK


def _experiment_config(args, algo: str) -> ExperimentConfig:
    p_list = _parse_int_list(args.p if algo == "qaa" else
                             ",".join(str(p) for p in range(1, args.pmax + 1)))
    return ExperimentConfig(
        algo=algo,
        instance_path=args.instance,
        p_list=p_list,
        delta=getattr(args, "delta", None),
        n_meas=args.shots,
        repetitions=args.repetitions,
        walkers=getattr(args, "walkers", 1),
        rho=getattr(args, "rho", 0.1),
        max_evals=getattr(args, "iters", 50),
        seed=args.seed,
        emit_cp=args.emit_cp,
        emit_histogram=args.emit_histogram,
    )


def cmd_qaa(args) -> int:
    manifest = run_experiment(_experiment_config(args, "qaa"), args.out)
    print(f"run {manifest.run_id}: wrote {', '.join(manifest.outputs)} in {args.out}")
    return EXIT_OK


def cmd_qaoa(args) -> int:
    manifest = run_experiment(_experiment_config(args, "qaoa"), args.out)
    print(f"run {manifest.run_id}: wrote {', '.join(manifest.outputs)} in {args.out}")
    return EXIT_OK


def cmd_delta_sweep(args) -> int:
    started = time.monotonic()
    os.makedirs(args.out, exist_ok=True)
    inst, spectrum, table = _load_problem(args.instance)
    p_list = _parse_int_list(args.p)
    deltas = _parse_grid(args.deltas)
    rows = delta_sweep(inst, p_list, deltas, table)
    instance_hash = file_sha256(args.instance)
    run_id = make_run_id({"instance": instance_hash, "command": "delta-sweep",
                          "p": p_list, "deltas": deltas})
    write_csv(os.path.join(args.out, "sweep.csv"), SWEEP_COLUMNS,
              [(run_id, r.p, r.delta, r.h_exp, r.h_exp / spectrum.h_min) for r in rows])
    manifest = RunManifest(run_id=run_id, command="delta-sweep",
                           instance_sha256=instance_hash,
                           flags={"p": p_list, "deltas": deltas}, seed=0,
                           versions=_versions(), outputs=["sweep.csv"],
                           wall_time_s=time.monotonic() - started)
    manifest.save(args.out)
    for p in p_list:
        print(f"p={p}: best delta = {best_delta(rows, p)!r}")
    return EXIT_OK


def cmd_pmin(args) -> int:
    started = time.monotonic()
    os.makedirs(args.out, exist_ok=True)
    inst, spectrum, table = _load_problem(args.instance)
    p_grid = _parse_int_list(args.pgrid)
    if args.solver == "qaa":
        if args.delta is None or args.delta <= 0:
            raise InvalidInputError("pmin with --solver qaa needs a positive --delta")
        solver = QaaAlphaSolver(inst, args.delta, spectrum, table,
                                n_meas=args.shots, seed=args.seed)
    else:
        solver = QaoaAlphaSolver(inst, spectrum, walkers=args.walkers, rho=args.rho,
                                 cfg=OptimizerConfig(max_evals=args.iters, seed=args.seed),
                                 table=table, n_meas=args.shots, threads=_threads())
    p_min = pmin_search(solver, args.alpha, p_grid)
    instance_hash = file_sha256(args.instance)
    run_id = make_run_id({"instance": instance_hash, "command": "pmin",
                          "solver": args.solver, "alpha": args.alpha,
                          "pgrid": p_grid, "delta": args.delta,
                          "shots": args.shots, "seed": args.seed,
                          "walkers": args.walkers, "rho": args.rho,
                          "iters": args.iters})
    write_csv(os.path.join(args.out, "pmin.csv"), PMIN_COLUMNS,
              [(run_id, args.solver, inst.n, args.alpha, p_min)])
    manifest = RunManifest(run_id=run_id, command="pmin",
                           instance_sha256=instance_hash,
                           flags={"solver": args.solver, "alpha": args.alpha,
                                  "pgrid": p_grid, "delta": args.delta,
                                  "shots": args.shots, "walkers": args.walkers,
                                  "rho": args.rho, "iters": args.iters},
                           seed=args.seed, versions=_versions(),
                           outputs=["pmin.csv"],
                           wall_time_s=time.monotonic() - started)
    manifest.save(args.out)
    print(f"p_min = {p_min}" if p_min is not None else "p_min: not found on grid")
    return EXIT_OK


def cmd_resources(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    rows = []
    if args.instance:
        inst = load_instance(args.instance)
        est = resource_estimate(inst, args.p)
        case = "full" if inst.lam > 0 else "sparse"
        rows.append((inst.n, case, args.p, est.g1, est.g2, est.total))
    else:
        if args.n is None:
            raise InvalidInputError("resources needs --instance or --n")
        est = resource_formula(args.n, args.lambda_case == "full", args.p)
        rows.append((args.n, args.lambda_case, args.p, est.g1, est.g2, est.total))
    write_csv(os.path.join(args.out, "resources.csv"), RESOURCES_COLUMNS, rows)
    n, case, p, g1, g2, total = rows[0]
    print(f"n={n} case={case} p={p}: g1={g1} g2={g2} total={total}")
    if args.budget:
        fits_full = max_sites(args.budget, True, args.p)
        fits_sparse = max_sites(args.budget, False, args.p)
        depth = max_depth(args.budget, n, case == "full")
        print(f"budget {args.budget}: max sites p={args.p}: "
              f"{fits_sparse} (sparse), {fits_full} (full); max depth at n={n}: {depth}")
        if args.budget == 2880 and args.p == 1:
            print("note: the full-connectivity bound counts both gate kinds, "
                  f"giving {fits_full}; published estimates for the same budget "
                  "quote 75, the difference being whether the 2N single-qubit "
                  "gates per layer are charged against the budget.")
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.state:
        state = load_state(args.state)
        n = state.n
    else:
        inst, _, table = _load_problem(args.instance)
        if args.algo != "qaa":
            raise InvalidInputError("sample generates states with --algo qaa only")
        state = run_circuit(inst, linear_qaa(args.p, args.delta), table)
        n = inst.n
    counts = sample(state, args.shots, args.seed)
    doc = {
        "n": n,
        "n_meas": counts.n_meas,
        "counts": {bitstring(x, n): c for x, c in sorted(counts.counts.items())},
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if args.state_out:
        save_state(state, args.state_out)
    print(f"wrote {len(doc['counts'])} distinct strings over {counts.n_meas} shots to {args.out}")
    return EXIT_OK


def cmd_report(args) -> int:
    manifest_path = os.path.join(args.dir, f"{args.run}.manifest.json")
    if not os.path.exists(manifest_path):
        raise NotFoundError(f"no manifest for run id '{args.run}' in {args.dir}")
    with open(manifest_path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    print(f"run {manifest['run_id']}  command={manifest['command']}  "
          f"seed={manifest['seed']}  wall={manifest['wall_time_s']:.2f}s")
    print(f"instance sha256: {manifest['instance_sha256']}")
    if manifest.get("errors"):
        for err in manifest["errors"]:
            print(f"error: {err}")
    metrics_path = os.path.join(args.dir, "metrics.csv")
    if "metrics.csv" in manifest.get("outputs", []) and os.path.exists(metrics_path):
        _, rows = read_csv(metrics_path)
        rows = [r for r in rows if r["run_id"] == manifest["run_id"]]
        by_p: dict[int, list[dict]] = {}
        for r in rows:
            by_p.setdefault(int(r["p"]), []).append(r)
        print(f"{'p':>6} {'alpha':>12} {'alpha_mp':>12} {'p_gs':>12} {'reps':>5}")
        for p in sorted(by_p):
            group = by_p[p]
            alpha = np.mean([float(r["alpha"]) for r in group])
            alpha_mp = np.mean([float(r["alpha_mp"]) for r in group])
            p_gs = np.mean([float(r["p_gs"]) for r in group])
            print(f"{p:>6} {alpha:>12.6f} {alpha_mp:>12.6f} {p_gs:>12.6g} {len(group):>5}")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qantenna",
        description="Antenna-placement Ising instances solved with emulated "
                    "QAOA/QAA circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate random sites (and optionally an instance)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bbox", required=True, help="x0,y0,x1,y1")
    p.add_argument("--rmax", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--label", default="")
    p.add_argument("--instance-out", default=None)
    p.add_argument("--xi", type=float, default=0.25)
    p.add_argument("--lam", type=float, default=0.0)
    p.add_argument("--nt", type=int, default=None)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("solve-exact", help="brute-force spectrum of an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_solve_exact)

    p = sub.add_parser("qaa", help="fixed linear-ramp runs")
    p.add_argument("--instance", required=True)
    p.add_argument("--p", required=True, help="comma-separated depths")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--emit-cp", action="store_true")
    p.add_argument("--emit-histogram", action="store_true")
    p.set_defaults(handler=cmd_qaa)

    p = sub.add_parser("qaoa", help="depth-ladder optimization runs")
    p.add_argument("--instance", required=True)
    p.add_argument("--pmax", type=int, required=True)
    p.add_argument("--walkers", type=int, default=1)
    p.add_argument("--rho", type=float, default=0.1)
    p.add_argument("--iters", type=int, default=50)
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repetitions", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--emit-cp", action="store_true")
    p.add_argument("--emit-histogram", action="store_true")
    p.set_defaults(handler=cmd_qaoa)

    p = sub.add_parser("delta-sweep", help="exact <H> over a (p, delta) grid")
    p.add_argument("--instance", required=True)
    p.add_argument("--p", required=True, help="comma-separated depths")
    p.add_argument("--deltas", required=True, help="lo:hi:step or comma list")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_delta_sweep)

    p = sub.add_parser("pmin", help="smallest depth reaching a ratio threshold")
    p.add_argument("--instance", required=True)
    p.add_argument("--solver", choices=["qaa", "qaoa"], required=True)
    p.add_argument("--alpha", type=float, default=0.85)
    p.add_argument("--pgrid", required=True, help="ascending comma-separated depths")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--walkers", type=int, default=1)
    p.add_argument("--rho", type=float, default=0.1)
    p.add_argument("--iters", type=int, default=50)
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_pmin)

    p = sub.add_parser("resources", help="gate-count estimates and budgets")
    p.add_argument("--instance", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--lambda-case", choices=["sparse", "full"], default="full")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_resources)

    p = sub.add_parser("sample", help="measure a circuit state")
    p.add_argument("--instance", default=None)
    p.add_argument("--state", default=None, help="statevector dump to sample instead")
    p.add_argument("--algo", choices=["qaa"], default="qaa")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--state-out", default=None, help="also dump the statevector here")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("report", help="summarise a finished run")
    p.add_argument("--dir", required=True)
    p.add_argument("--run", required=True, help="run id")
    p.set_defaults(handler=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, DegenerateInstanceError, NotFoundError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
