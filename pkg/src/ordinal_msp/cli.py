"""``msp`` command line: run experiment configs, verify fixtures, print bounds.

Exit codes: 0 success, 2 config error, 3 instance invariant violation,
4 acceptance failure (a measure above its bound at 3 CI, or a failing
property check).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import jsonschema
import numpy as np

from .engines.registry import ENGINES, get_engine
from .harness.bounds import BOUND_TABLE
from .harness.generators import GENERATORS, GeneratorError, generate_instance, tpa_weights
from .harness.measures import WEIGHT_PRESETS, TrialPlan, default_weights, estimate_measures
from .harness.report import format_summary, summary_rows, write_plan_artifacts
from .zoo import FAMILIES, InstanceError

__all__ = ["CONFIG_SCHEMA", "ConfigError", "EXIT_ACCEPTANCE", "EXIT_CONFIG", "EXIT_INSTANCE", "EXIT_OK", "main",
           "run_experiments", "load_config"]

EXIT_OK, EXIT_CONFIG, EXIT_INSTANCE, EXIT_ACCEPTANCE = 0, 2, 3, 4
SEED_ENV = "MSP_SEED"

_INSTANCE_SCHEMA = {
    "type": "object",
    "oneOf": [
        {"required": ["generator"], "properties": {"generator": {"enum": sorted(GENERATORS)},
                                                   "seed": {"type": "integer", "minimum": 0}}},
        {"required": ["family"], "properties": {"family": {"enum": list(FAMILIES)}}},
        {"required": ["file"], "properties": {"file": {"type": "string"}}},
    ],
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["plans"],
    "additionalProperties": False,
    "properties": {
        "out": {"type": "string"},
        "width": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "plans": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["instance", "engine", "trials"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "pattern": "^[A-Za-z0-9_.-]+$"},
                    "instance": _INSTANCE_SCHEMA,
                    "engine": {"enum": sorted(ENGINES)},
                    "params": {"type": "object"},
                    "trials": {"type": "integer", "minimum": 1},
                    "seed": {"type": "integer", "minimum": 0},
                    "weights": {"oneOf": [{"enum": list(WEIGHT_PRESETS) + ["tpa"]},
                                          {"type": "array", "items": {"type": "number"}}]},
                },
            },
        },
    },
}


class ConfigError(ValueError):
    pass


def _where(path) -> str:
    out = "$"
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else f".{part}"
    return out


def load_config(path) -> dict:
    """Parse and schema-check a JSON config; errors name the line/column or the JSON path."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    validate_config(data, str(path))
    return data


def validate_config(data, source: str = "<config>") -> None:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: (list(e.absolute_path), e.message))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ConfigError(f"{source}: {_where(err.absolute_path)}: {err.message}")


def _plan_weights(spec, M, where):
    if spec is None:
        return None
    if spec == "tpa":
        rho = round((M.n / 2) ** (1 / 3))
        if 2 * rho ** 3 != M.n:
            raise ConfigError(f"{where}.weights: 'tpa' weights need an instance with n = 2 rho^3, got n={M.n}")
        return tuple(tpa_weights(rho))
    if isinstance(spec, str):
        return tuple(default_weights(M, spec))
    if len(spec) != M.n:
        raise ConfigError(f"{where}.weights: expected {M.n} weights, got {len(spec)}")
    ranked = [spec[M.order.element(k)] for k in range(1, M.n + 1)]
    if any(a < b for a, b in zip(ranked, ranked[1:])):
        raise ConfigError(f"{where}.weights: weights must be non-increasing along the value order")
    return tuple(float(w) for w in spec)


def _build_instance(spec: dict, seed: int, base: Path, where: str):
    spec = dict(spec)
    if "file" in spec and not Path(spec["file"]).is_absolute():
        spec["file"] = str(base / spec["file"])
    rng = np.random.default_rng(int(spec.get("seed", seed)))
    try:
        return generate_instance(spec, rng)
    except GeneratorError as exc:
        raise ConfigError(f"{where}.instance: {exc}") from None
    except FileNotFoundError as exc:
        raise ConfigError(f"{where}.instance.file: no such file {exc.filename}") from None


def run_experiments(config: dict, out_dir=None, width=None, seed=None, base_dir=".", echo=print) -> int:
    """Run every plan, write ``<stem>.csv``/``<stem>.json`` per plan and a
    ``summary.txt``; return the exit code."""
    validate_config(config)
    out = Path(out_dir or config.get("out", "msp-results"))
    width = int(width or config.get("width", 1))
    master = int(config.get("seed", 0)) if seed is None else int(seed)
    base = Path(base_dir)
    rows = []
    jobs = []
    for i, plan in enumerate(config["plans"]):
        where = f"$.plans[{i}]"
        plan_seed = int(plan.get("seed", master)) if seed is None else master
        try:
            M = _build_instance(plan["instance"], plan_seed, base, where)
        except ConfigError:
            raise
        except (InstanceError, ValueError) as exc:
            echo(f"{where}.instance: invariant violation: {exc}", file=sys.stderr)
            return EXIT_INSTANCE
        engine = get_engine(plan["engine"])
        if not engine.supports(M):
            raise ConfigError(f"{where}.engine: {plan['engine']!r} does not support family {M.family!r}")
        if engine.k is not None:
            try:
                engine.k(M)
            except ValueError as exc:
                echo(f"{where}.instance: invariant violation: {exc}", file=sys.stderr)
                return EXIT_INSTANCE
        weights = _plan_weights(plan.get("weights"), M, where)
        jobs.append((plan.get("id", f"plan{i}"), TrialPlan(M, plan["engine"], dict(plan.get("params", {})),
                                                            int(plan["trials"]), plan_seed, width, weights)))
    for i, (pid, tp) in enumerate(jobs):
        report = estimate_measures(tp)
        write_plan_artifacts(report, pid, out, f"{i:03d}_{pid}")
        rows.extend(summary_rows(report))
    out.mkdir(parents=True, exist_ok=True)
    table = format_summary(rows) if rows else ""
    (out / "summary.txt").write_text(table)
    if table:
        echo(table, end="")
    failed = any(r[5] == "FAIL" for r in rows)
    return EXIT_ACCEPTANCE if failed else EXIT_OK


def format_bounds() -> str:
    head = ("family", "engine", "|F|", "alpha", "value")
    body = []
    for row in BOUND_TABLE:
        body.append((row.family, row.engine, row.forbidden, row.expression, f"{row.evaluate():.5f}"))
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [head] + body]
    note = "parametric rows are evaluated at mu = 2 and k = 3"
    return "\n".join(lines + [note]) + "\n"


def _seed_override(flag):
    env = os.environ.get(SEED_ENV)
    if env is not None and env != "":
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{SEED_ENV}={env!r} is not an integer") from None
    return flag


def _echo(*args, file=None, **kw):
    print(*args, file=file or sys.stdout, **kw)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="msp", description="Ordinal matroid secretary experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run the plans of a JSON config")
    p_run.add_argument("config")
    p_run.add_argument("--out", help="output directory (default: config 'out' or ./msp-results)")
    p_run.add_argument("--width", type=int, help="worker processes")
    p_run.add_argument("--seed", type=int, help=f"master seed; {SEED_ENV} overrides it")
    p_ver = sub.add_parser("verify", help="exhaustive property checks on the shipped fixtures")
    p_ver.add_argument("--level", choices=("quick", "full"), default="quick")
    p_ver.add_argument("--inject", help="replace an engine with a known-bad mutant (history-matching)")
    sub.add_parser("bounds", help="print the embedded bound table")
    args = parser.parse_args(argv)

    if args.command == "bounds":
        sys.stdout.write(format_bounds())
        return EXIT_OK
    if args.command == "verify":
        from .suite import verify_suite
        try:
            return verify_suite(args.level, args.inject)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    try:
        if args.width is not None and args.width < 1:
            raise ConfigError("--width must be at least 1")
        seed = _seed_override(args.seed)
        config = load_config(args.config)
        return run_experiments(config, args.out, args.width, seed, Path(args.config).resolve().parent, _echo)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
