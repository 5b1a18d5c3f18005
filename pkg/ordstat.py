#!/usr/bin/env python3
"""
Unified CLI for ordstat-mmse

Commands:
  - sweep        MSE of the estimators over a sigma grid (CSV)
  - varratio     Var(sorted X) / n for n = 1..n_max (CSV)
  - delta        f-hat excess-MSE bound over a sigma grid (CSV)
  - bounds       closed-form bounds per n (CSV)
  - regularity   Cramer-Rao regularity counterexample (JSON)
  - estimators   list registered estimators
  - rerun        repeat a run from its manifest
  - config show  effective runtime configuration

Exit codes: 0 success, 1 numeric failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from cli import __version__
from cli.commands import (
    DEFAULT_EPS,
    argparse_type,
    cmd_bounds,
    cmd_delta,
    cmd_regularity,
    cmd_rerun,
    cmd_sweep,
    cmd_varratio,
    parse_estimators,
    parse_float_list,
)
from config import load_config
from estimators import Registry, describe
from evaluation import INTEGRATOR_CHOICES
from logging_setup import configure_logging
from model.integrators import DEFAULT_MC_SAMPLES
from bounds import DEFAULT_QUAD_POINTS
from prob_core.errors import ConfigurationError, OrdstatError

logger = logging.getLogger("ordstat")


def _add_output(sp: argparse.ArgumentParser, manifest: bool = True, json_flag: bool = True) -> None:
    sp.add_argument("--out", type=Path, default=None, help="Output path (default: stdout)")
    if manifest:
        sp.add_argument("--manifest", type=Path, default=None, help="Manifest path (.json or .yaml)")
    if json_flag:
        sp.add_argument("--json", action="store_true", help="Also write a JSON mirror (instead of CSV on stdout)")


def _add_monte_carlo(sp: argparse.ArgumentParser, seed: int) -> None:
    sp.add_argument("--n", type=int, required=True, help="Dimension (1..8)")
    sp.add_argument("--sigma", type=argparse_type(parse_float_list), required=True,
                    help="Noise levels: comma list or start:step:stop")
    sp.add_argument("--outer", type=int, default=None, help="Outer samples (default 100000 for n=2, else 20000)")
    sp.add_argument("--inner", type=int, default=DEFAULT_MC_SAMPLES, help="Inner Monte Carlo samples")
    sp.add_argument("--seed", type=int, default=seed)
    sp.add_argument("--chunks", type=int, default=1, help="Equal chunks of outer samples, run in parallel")
    sp.add_argument("--integrator", choices=INTEGRATOR_CHOICES, default="auto")


def build_parser(seed: int = 7) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordstat", description="Sorted-data MMSE estimators, bounds and sweeps")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    sub = p.add_subparsers(dest="cmd")

    sp_sw = sub.add_parser("sweep", help="MSE of estimators vs sigma")
    _add_monte_carlo(sp_sw, seed)
    sp_sw.add_argument("--estimators", type=argparse_type(parse_estimators), default=None,
                       help="Comma list of estimator tags (default: optimal,fhat,hhat,mle; mle only for sigma <= 2)")
    _add_output(sp_sw)

    sp_vr = sub.add_parser("varratio", help="Var(sorted X)/n for n = 1..n_max")
    sp_vr.add_argument("--n-max", dest="n_max", type=int, default=30)
    sp_vr.add_argument("--quad-points", dest="quad_points", type=int, default=DEFAULT_QUAD_POINTS)
    _add_output(sp_vr)

    sp_d = sub.add_parser("delta", help="f-hat excess-MSE bound vs sigma")
    _add_monte_carlo(sp_d, seed)
    _add_output(sp_d)

    sp_b = sub.add_parser("bounds", help="Closed-form bounds per n")
    sp_b.add_argument("--n-max", dest="n_max", type=int, default=30)
    sp_b.add_argument("--eps", type=argparse_type(parse_float_list), default=list(DEFAULT_EPS),
                      help="Exponents for the quantile power-sum columns")
    sp_b.add_argument("--quad-points", dest="quad_points", type=int, default=DEFAULT_QUAD_POINTS)
    _add_output(sp_b)

    sp_r = sub.add_parser("regularity", help="Regularity counterexample at n=2, sigma=1")
    sp_r.add_argument("--outer", type=int, default=None, help="Samples (default 200000)")
    sp_r.add_argument("--seed", type=int, default=seed)
    sp_r.add_argument("--quadrature", action="store_true", help="Direct 2-D quadrature instead of Monte Carlo")
    _add_output(sp_r, json_flag=False)

    sub.add_parser("estimators", help="List registered estimators")

    sp_re = sub.add_parser("rerun", help="Repeat a run from its manifest")
    sp_re.add_argument("manifest_file", type=Path)
    sp_re.add_argument("--out", type=Path, default=None)

    sp_cfg = sub.add_parser("config", help="Runtime configuration")
    sp_cfg_sub = sp_cfg.add_subparsers(dest="config_cmd")
    sp_cfg_sub.add_parser("show", help="Print effective configuration")

    return p


def main(argv: Optional[List[str]] = None) -> int:
    runtime = load_config()
    parser = build_parser(seed=runtime.seed)
    args = parser.parse_args(argv)
    configure_logging(args.verbose, runtime.log_level)

    handlers = {
        "sweep": cmd_sweep,
        "varratio": cmd_varratio,
        "delta": cmd_delta,
        "bounds": cmd_bounds,
        "regularity": cmd_regularity,
        "rerun": cmd_rerun,
    }

    if args.cmd == "estimators":
        for tag in sorted(Registry):
            print(f"{tag}: {describe(tag)}")
        return 0

    if args.cmd == "config":
        if args.config_cmd == "show":
            print(json.dumps(runtime.to_dict(), ensure_ascii=False, indent=2))
            return 0
        parser.print_help()
        return 2

    if args.cmd not in handlers:
        parser.print_help()
        return 2

    try:
        return handlers[args.cmd](args)
    except ConfigurationError as e:
        parser.print_usage(sys.stderr)
        print(f"ordstat: error: {e}", file=sys.stderr)
        return 2
    except (OrdstatError, ArithmeticError, FloatingPointError) as e:
        logger.debug("numeric failure", exc_info=True)
        print(f"ordstat: numeric failure: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
