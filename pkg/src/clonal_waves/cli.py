"""Command line entry point: ``clonal-waves <experiment> ...`` and ``clonal-waves verify <id>``."""
from __future__ import annotations

import argparse
import csv
import filecmp
import json
import logging
import sys
import tempfile
import time
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .errors import ClonalWavesError, ConfigError
from .experiments import CRITERIA, EXPERIMENTS, Check, ExperimentConfig, ExperimentResult, run

log = logging.getLogger("clonal_waves")

# reduced runs used for the thread-count determinism check
_DETERMINISM_RUNS = (
    ("fig1", {"t": [60, 100], "theta": [0.5, 1.0, 5.0]}, 500),
    ("oracle-equivalence", {}, 300),
    ("unbounded-exp", {"t": [100]}, 300),
)


def _cell(v) -> str:
    if isinstance(v, float) or hasattr(v, "dtype"):
        return format(float(v), ".17g")
    return str(v)


def write_result(result: ExperimentResult, out: Path) -> List[Path]:
    """Write one CSV per table and a JSON file with checks and summary."""
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, table in result.tables.items():
        path = out / f"{name}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(table.columns)
            for row in table.rows:
                w.writerow([_cell(v) for v in row])
        paths.append(path)
    payload = {
        "experiment": result.experiment,
        "passed": result.passed,
        "checks": [dict(c.__dict__, passed=bool(c.passed)) for c in result.checks],
        "summary": {k: float(v) for k, v in result.summary.items()},
    }
    path = out / f"{result.experiment}.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    paths.append(path)
    return paths


def load_config(path: Optional[str]) -> Dict:
    if path is None:
        return {}
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return raw


def build_config(experiment: str, args: argparse.Namespace) -> ExperimentConfig:
    raw = load_config(args.config)
    for key in ("seed", "replicates", "threads", "out"):
        v = getattr(args, key, None)
        if v is not None:
            raw[key] = v
    return ExperimentConfig.from_dict(raw, experiment)


def _report(checks: Sequence[Check]) -> None:
    for c in checks:
        print(f"criterion {c.criterion}: {'PASS' if c.passed else 'FAIL'}  {c.name} ({c.detail})")


def verify_determinism(seed: int = 42) -> Check:
    mismatches = []
    with tempfile.TemporaryDirectory() as tmp:
        for name, params, reps in _DETERMINISM_RUNS:
            dirs = []
            for threads in (1, 4):
                cfg = ExperimentConfig.from_dict(dict(params, replicates=reps, seed=seed, threads=threads), name)
                d = Path(tmp) / f"{name}-{threads}"
                write_result(run(cfg), d)
                dirs.append(d)
            files = sorted(p.name for p in dirs[0].iterdir())
            _, bad, err = filecmp.cmpfiles(dirs[0], dirs[1], files, shallow=False)
            mismatches += [f"{name}/{f}" for f in bad + err]
    return Check("11", "outputs identical for 1 and 4 threads", not mismatches,
                 "mismatched: " + ", ".join(mismatches) if mismatches else
                 f"compared {', '.join(r[0] for r in _DETERMINISM_RUNS)}")


def verify(criterion: str, seed: int = 42, threads: int = 1) -> List[Check]:
    """Run the experiment behind a criterion id and return its checks."""
    if criterion == "11":
        return [verify_determinism(seed)]
    name = CRITERIA.get(criterion)
    if name is None:
        raise ConfigError(f"unknown criterion {criterion!r}; choose from 1-11 or 'all'")
    cfg = ExperimentConfig.from_dict({"seed": seed, "threads": threads}, name)
    return [c for c in run(cfg).checks if c.criterion == criterion]


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clonal-waves", description="Clonal wave simulations and limit laws.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        e = sub.add_parser(name)
        e.add_argument("--config")
        e.add_argument("--seed", type=int)
        e.add_argument("--replicates", type=int)
        e.add_argument("--threads", type=int)
        e.add_argument("--out", default=None)
    v = sub.add_parser("verify")
    v.add_argument("criterion", help="criterion id 1-11 or 'all'")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--threads", type=int, default=1)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "verify":
            ids = [str(i) for i in range(1, 12)] if args.criterion == "all" else [args.criterion]
            checks = []
            for cid in ids:
                found = verify(cid, args.seed, args.threads)
                _report(found)
                checks += found
            return 0 if all(c.passed for c in checks) else 1
        cfg = build_config(args.command, args)
        start = time.perf_counter()
        result = run(cfg)
        log.info("%s finished in %.1f s", cfg.experiment, time.perf_counter() - start)
        for path in write_result(result, Path(cfg.out or "results") / cfg.experiment):
            print(path)
        _report(result.checks)
        return 0 if result.passed else 1
    except ClonalWavesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
