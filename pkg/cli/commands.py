"""Command runners behind the ``ordstat`` CLI.

Every command is split in two: ``resolve_*`` turns parsed flags into a plain,
fully resolved configuration dict, and a runner from ``RUNNERS`` turns that
dict into rows or a report. The manifest stores the dict, so ``rerun`` only
needs the runner.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from bounds import (
    DEFAULT_QUAD_POINTS,
    MAX_ORDER_N,
    chi_variance,
    max_entropy_var_bound,
    power_sum_table,
    sorted_entropy,
    var_approx,
    var_approx_error_bound,
    var_ratio_curve,
)
from cli.output import RunManifest, dump_json, json_mirror_path, manifest_path_for, render_csv, write_text
from estimators import EstimatorKind
from evaluation import (
    DEFAULT_ESTIMATORS,
    EvalConfig,
    delta_up,
    delta_up_asymptote,
    default_outer_samples,
    mmse_sweep,
    regularity_check,
    regularity_quadrature,
)
from model.gaussian import GaussianModel
from prob_core.errors import ConfigurationError

logger = logging.getLogger(__name__)

# MLE is only evaluated where it is competitive unless asked for explicitly
DEFAULT_MLE_MAX_SIGMA = 2.0
DEFAULT_REGULARITY_SAMPLES = 200_000
DEFAULT_EPS = (0.0, 0.5, 1.0, 2.0, 4.0)
SWEEP_ESTIMATOR_COLUMNS = ("optimal", "fhat", "hhat", "mle")


@dataclass
class CommandOutput:
    command: str
    config: Dict[str, Any]
    fieldnames: List[str] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    report: Optional[Dict[str, Any]] = None

    def results(self) -> Dict[str, Any]:
        return self.report if self.report is not None else {"rows": self.rows}


# ---------------------------------------------------------------- parsing


def parse_float_list(text: str) -> List[float]:
    """``a,b,c`` or an inclusive range ``start:step:stop``."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ConfigurationError(f"range must be start:step:stop, got {text!r}")
            start, step, stop = parts
            if step <= 0 or stop < start:
                raise ConfigurationError(f"range needs step > 0 and stop >= start, got {text!r}")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(count)]
        values = [float(p) for p in text.split(",") if p.strip()]
    except ConfigurationError:
        raise
    except ValueError as e:
        raise ConfigurationError(f"not a number list: {text!r}") from e
    if not values:
        raise ConfigurationError("empty list")
    return values


def parse_estimators(text: str) -> List[str]:
    tags = [t.strip() for t in text.split(",") if t.strip()]
    if not tags:
        raise ConfigurationError("empty estimator list")
    return [EstimatorKind(t).tag for t in tags]


def argparse_type(fn: Callable[[str], Any]) -> Callable[[str], Any]:
    """Adapt a parser raising ConfigurationError for argparse (usage error, exit 2)."""

    def _conv(text: str) -> Any:
        try:
            return fn(text)
        except ConfigurationError as e:
            raise argparse.ArgumentTypeError(str(e)) from e

    _conv.__name__ = fn.__name__
    return _conv


# ---------------------------------------------------------------- resolve


def _eval_config(args: argparse.Namespace, estimators: Sequence[str], mle_max_sigma: Optional[float]) -> EvalConfig:
    return EvalConfig(
        n=args.n,
        sigma_grid=tuple(args.sigma),
        outer_samples=default_outer_samples(args.n) if args.outer is None else args.outer,
        estimators=tuple(estimators),
        integrator=args.integrator,
        inner_samples=args.inner,
        seed=args.seed,
        chunks=args.chunks,
        mle_max_sigma=mle_max_sigma,
    )


def resolve_sweep(args: argparse.Namespace) -> Dict[str, Any]:
    if args.estimators:
        cfg = _eval_config(args, args.estimators, None)
    else:
        cfg = _eval_config(args, DEFAULT_ESTIMATORS, DEFAULT_MLE_MAX_SIGMA)
    return cfg.to_dict()


def _check_positive_sigmas(sigmas: Sequence[float]) -> None:
    if any(s <= 0 for s in sigmas):
        raise ConfigurationError("delta needs every sigma > 0")


def resolve_delta(args: argparse.Namespace) -> Dict[str, Any]:
    _check_positive_sigmas(args.sigma)
    return _eval_config(args, (), None).to_dict()


def _check_n_max(n_max: int) -> None:
    if not 1 <= n_max <= MAX_ORDER_N:
        raise ConfigurationError(f"--n-max must be in 1..{MAX_ORDER_N}, got {n_max}")


def resolve_varratio(args: argparse.Namespace) -> Dict[str, Any]:
    _check_n_max(args.n_max)
    return {"n_max": args.n_max, "quad_points": args.quad_points}


def resolve_bounds(args: argparse.Namespace) -> Dict[str, Any]:
    _check_n_max(args.n_max)
    if any(e < 0 for e in args.eps):
        raise ConfigurationError("--eps values must be nonnegative")
    return {"n_max": args.n_max, "eps": list(args.eps), "quad_points": args.quad_points}


def resolve_regularity(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "outer_samples": DEFAULT_REGULARITY_SAMPLES if args.outer is None else args.outer,
        "seed": args.seed,
        "quadrature": bool(args.quadrature),
    }


# ---------------------------------------------------------------- runners


def run_sweep(config: Dict[str, Any]) -> CommandOutput:
    cfg = EvalConfig.from_dict(config)
    table = mmse_sweep(cfg)
    tags = list(SWEEP_ESTIMATOR_COLUMNS) + [t for t in cfg.estimators if t not in SWEEP_ESTIMATOR_COLUMNS]
    fields = ["sigma"]
    for tag in tags:
        fields += [f"mse_{tag}", f"se_{tag}"]
    fields += ["var_sorted", "mmse_unsorted", "mmse_lower_bound"]
    return CommandOutput("sweep", cfg.to_dict(), fields, table.to_records())


def run_delta(config: Dict[str, Any]) -> CommandOutput:
    cfg = EvalConfig.from_dict(config)
    _check_positive_sigmas(cfg.sigma_grid)
    rows = []
    for sigma in cfg.sigma_grid:
        res = delta_up(GaussianModel(cfg.n, sigma), cfg)
        rows.append({"sigma": sigma, "delta_up": res.mean, "se": res.std_error, "asymptote": delta_up_asymptote(cfg.n)})
    return CommandOutput("delta", cfg.to_dict(), ["sigma", "delta_up", "se", "asymptote"], rows)


def run_varratio(config: Dict[str, Any]) -> CommandOutput:
    rows = [
        {"n": n, "var_sorted": v, "var_ratio": r}
        for n, v, r in var_ratio_curve(int(config["n_max"]), int(config.get("quad_points", DEFAULT_QUAD_POINTS)))
    ]
    return CommandOutput("varratio", dict(config), ["n", "var_sorted", "var_ratio"], rows)


def _eps_label(eps: float) -> str:
    return format(eps, "g")


def run_bounds(config: Dict[str, Any]) -> CommandOutput:
    eps_values = [float(e) for e in config.get("eps") or []]
    quad = int(config.get("quad_points", DEFAULT_QUAD_POINTS))
    fields = ["n", "var_sorted", "var_approx", "var_approx_error_bound", "chi_variance", "max_entropy_var_bound", "sorted_entropy"]
    for e in eps_values:
        fields += [f"power_sum_eps{_eps_label(e)}", f"power_sum_bound_eps{_eps_label(e)}"]
    rows = []
    for n, vs, _ in var_ratio_curve(int(config["n_max"]), quad):
        row: Dict[str, Any] = {
            "n": n,
            "var_sorted": vs,
            "var_approx": var_approx(n),
            "var_approx_error_bound": var_approx_error_bound(n) if n >= 2 else None,
            "chi_variance": chi_variance(n),
            "max_entropy_var_bound": max_entropy_var_bound(n),
            "sorted_entropy": sorted_entropy(n),
        }
        for e, (lhs, bound) in power_sum_table(n, eps_values).items():
            row[f"power_sum_eps{_eps_label(e)}"] = lhs
            row[f"power_sum_bound_eps{_eps_label(e)}"] = bound
        rows.append(row)
    return CommandOutput("bounds", dict(config), fields, rows)


def run_regularity(config: Dict[str, Any]) -> CommandOutput:
    model = GaussianModel(2, 1.0)
    if config.get("quadrature"):
        result = regularity_quadrature()
    else:
        cfg = EvalConfig(n=2, sigma_grid=(1.0,), outer_samples=int(config["outer_samples"]), estimators=(), seed=int(config["seed"]))
        result = regularity_check(model, cfg)
    return CommandOutput("regularity", dict(config), report=result.to_dict())


RUNNERS: Dict[str, Callable[[Dict[str, Any]], CommandOutput]] = {
    "sweep": run_sweep,
    "delta": run_delta,
    "varratio": run_varratio,
    "bounds": run_bounds,
    "regularity": run_regularity,
}


# ---------------------------------------------------------------- emit


def emit(
    output: CommandOutput,
    duration: float,
    out: Optional[Path],
    manifest: Optional[Path],
    as_json: bool,
) -> None:
    """Write the artifact (CSV, or JSON for reports) plus manifest and JSON mirror."""
    man = RunManifest.create(output.command, output.config, duration)
    mirror = {"command": output.command, "config": output.config, "results": output.results(), "manifest": man.to_dict()}

    if output.report is not None:
        text = dump_json(mirror) + "\n"
    elif as_json and out is None:
        text = dump_json(mirror) + "\n"
    else:
        text = render_csv(output.rows, output.fieldnames)

    if out is None:
        sys.stdout.write(text)
    else:
        write_text(out, text)
        logger.info("wrote %s", out)
        if as_json and output.report is None:
            write_text(json_mirror_path(out), dump_json(mirror) + "\n")

    man_path = manifest_path_for(out, manifest)
    if man_path is not None:
        man.write(man_path)
        logger.info("manifest %s", man_path)


def run_command(name: str, config: Dict[str, Any], args: argparse.Namespace) -> int:
    started = time.perf_counter()
    output = RUNNERS[name](config)
    emit(output, time.perf_counter() - started, args.out, getattr(args, "manifest", None), getattr(args, "json", False))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    return run_command("sweep", resolve_sweep(args), args)


def cmd_delta(args: argparse.Namespace) -> int:
    return run_command("delta", resolve_delta(args), args)


def cmd_varratio(args: argparse.Namespace) -> int:
    return run_command("varratio", resolve_varratio(args), args)


def cmd_bounds(args: argparse.Namespace) -> int:
    return run_command("bounds", resolve_bounds(args), args)


def cmd_regularity(args: argparse.Namespace) -> int:
    return run_command("regularity", resolve_regularity(args), args)


def cmd_rerun(args: argparse.Namespace) -> int:
    man = RunManifest.load(args.manifest_file)
    if man.command not in RUNNERS:
        raise ConfigurationError(f"Unknown command in manifest: {man.command}. Available: {', '.join(sorted(RUNNERS))}")
    logger.info("rerun %s from %s (recorded version %s)", man.command, args.manifest_file, man.version or "?")
    return run_command(man.command, man.config, args)


__all__ = [
    "CommandOutput",
    "RUNNERS",
    "parse_float_list",
    "parse_estimators",
    "argparse_type",
    "emit",
    "cmd_sweep",
    "cmd_delta",
    "cmd_varratio",
    "cmd_bounds",
    "cmd_regularity",
    "cmd_rerun",
]
