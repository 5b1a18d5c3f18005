"""Chunk-parallel Monte Carlo harness.

Outer draws come in fixed blocks of ``BLOCK_SIZE`` samples; block b is drawn
from the substream (seed, OUTER_STREAM, b) and holds X and Z side by side.
A chunk is a contiguous range of sample indices, so the draws seen by sample
i never depend on the chunk count or on the number of worker threads. Inner
integrator draws for sample i come from (seed, INNER_STREAM, i) in the same
way.

Per-sample losses are concatenated in index order, summarised per block of
``BLOCK_SIZE`` samples and the block summaries are pooled left to right with
``merge_results``. Block boundaries depend only on the sample index, so every
reported number is bit-identical for any degree of parallelism. All
sigma values and all estimators of one run share the same (X, Z).
"""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from functools import reduce
from typing import Callable, Dict, List, Sequence, Tuple, TypeVar, Union

import numpy as np

from bounds.closed_form import max_entropy_mmse_bound
from bounds.order_stats import order_statistic_means, var_sorted
from config import load_config, resolve_threads
from estimators import EstimatorContext, EstimatorKind, get_estimator
from evaluation.config import EvalConfig
from evaluation.results import MonteCarloResult, SweepRow, SweepTable, merge_results
from model.gaussian import GaussianModel
from prob_core.errors import ConfigurationError, DomainError
from prob_core.streams import OUTER_STREAM, substream

logger = logging.getLogger(__name__)

BLOCK_SIZE = 256

T = TypeVar("T")


def standard_normals(seed: int, stream: int, width: int, start: int, stop: int) -> np.ndarray:
    """Rows ``start..stop-1`` of the blocked standard normal sequence of ``stream``."""
    if stop <= start:
        return np.empty((0, width))
    first, last = start // BLOCK_SIZE, (stop - 1) // BLOCK_SIZE
    blocks = [substream(seed, stream, b).standard_normal((BLOCK_SIZE, width)) for b in range(first, last + 1)]
    offset = start - first * BLOCK_SIZE
    return np.concatenate(blocks)[offset:offset + (stop - start)]


def outer_draws(seed: int, n: int, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray]:
    """Prior draws X and channel noise Z for samples ``start..stop-1``."""
    both = standard_normals(seed, OUTER_STREAM, 2 * n, start, stop)
    return both[:, :n], both[:, n:]


def _chunk_ranges(config: EvalConfig) -> List[Tuple[int, int]]:
    size = config.chunk_size
    return [(c * size, (c + 1) * size) for c in range(config.chunks)]


def _map_chunks(config: EvalConfig, fn: Callable[[int, int], T]) -> List[T]:
    ranges = _chunk_ranges(config)
    workers = min(len(ranges), resolve_threads(load_config(use_dotenv=False).threads))
    if workers <= 1:
        return [fn(a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="ordstat") as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def summarize_losses(losses: np.ndarray) -> MonteCarloResult:
    """Pool per-block summaries of ``losses`` in index order."""
    blocks = (MonteCarloResult.from_samples(losses[lo:lo + BLOCK_SIZE]) for lo in range(0, losses.size, BLOCK_SIZE))
    return reduce(merge_results, blocks, MonteCarloResult.empty())


def _summarize(label: str, parts: Sequence[np.ndarray], started: float) -> MonteCarloResult:
    result = summarize_losses(np.concatenate(parts))
    logger.info(
        "%s: samples=%d mean=%.6g se=%.3g elapsed=%.2fs",
        label, result.samples, result.mean, result.std_error, time.perf_counter() - started,
    )
    return result


def _check_model(model: GaussianModel, config: EvalConfig) -> None:
    if model.n != config.n:
        raise ConfigurationError(f"model has n = {model.n} but the configuration has n = {config.n}")


def _loss_chunks(config: EvalConfig, plan: Sequence[Tuple[float, Tuple[str, ...]]]) -> List[Dict[Tuple[int, str], np.ndarray]]:
    integ = config.region_integrator()
    for sigma, _ in plan:
        integ.check(GaussianModel(config.n, sigma))
    osm = order_statistic_means(config.n)
    fns = {tag: get_estimator(tag) for _, tags in plan for tag in tags}

    def run(start: int, stop: int) -> Dict[Tuple[int, str], np.ndarray]:
        x, z = outer_draws(config.seed, config.n, start, stop)
        xs = np.sort(x, axis=1)
        out: Dict[Tuple[int, str], np.ndarray] = {}
        for si, (sigma, tags) in enumerate(plan):
            model = GaussianModel(config.n, sigma)
            ys = np.sort(x + sigma * z, axis=1)
            losses = {tag: np.empty(stop - start) for tag in tags}
            for lo in range(0, stop - start, BLOCK_SIZE):
                hi = min(lo + BLOCK_SIZE, stop - start)
                ctx = EstimatorContext(
                    integrator=integ,
                    fixed_point=config.fixed_point,
                    order_stat_means=osm,
                    first_index=start + lo,
                )
                for tag in tags:
                    est = fns[tag](model, ys[lo:hi], ctx)
                    losses[tag][lo:hi] = np.sum((xs[lo:hi] - est) ** 2, axis=1)
            for tag in tags:
                out[(si, tag)] = losses[tag]
        logger.debug("chunk %d..%d done", start, stop)
        return out

    return _map_chunks(config, run)


def mse_of_estimator(
    model: GaussianModel,
    est: Union[EstimatorKind, str],
    config: EvalConfig,
) -> MonteCarloResult:
    """E||sorted X - est(sorted Y)||^2 at the model's sigma."""
    _check_model(model, config)
    tag = est.tag if isinstance(est, EstimatorKind) else EstimatorKind(est).tag
    started = time.perf_counter()
    chunks = _loss_chunks(config, [(model.sigma, (tag,))])
    return _summarize(f"mse[{tag}] n={model.n} sigma={model.sigma:g}", [c[(0, tag)] for c in chunks], started)


def mmse_sweep(config: EvalConfig) -> SweepTable:
    started = time.perf_counter()
    plan = [(sigma, config.estimators_at(sigma)) for sigma in config.sigma_grid]
    chunks = _loss_chunks(config, plan)
    vs = var_sorted(config.n)
    table = SweepTable(n=config.n, estimators=list(config.estimators))
    for si, (sigma, tags) in enumerate(plan):
        results = {}
        for tag in tags:
            results[tag] = _summarize(
                f"mse[{tag}] n={config.n} sigma={sigma:g}", [c[(si, tag)] for c in chunks], started
            )
        table.rows.append(
            SweepRow(
                sigma=sigma,
                results=results,
                var_sorted=vs,
                mmse_unsorted=config.n * sigma ** 2 / (1.0 + sigma ** 2),
                lower_bound=max_entropy_mmse_bound(config.n, sigma),
            )
        )
    return table


def delta_up(model: GaussianModel, config: EvalConfig) -> MonteCarloResult:
    """Monte Carlo value of the f-hat excess-MSE bound.

    Joint (X, Y) draws; Y is sorted to realise the conditioning on the sorted
    region while X keeps its joint law. Each sample contributes
    ||X||^2 * sum_pi g(P_pi Y) with g = p (1 - p).
    """
    _check_model(model, config)
    if model.degenerate:
        raise DomainError("delta_up needs sigma > 0")
    integ = config.region_integrator()
    integ.check(model)
    started = time.perf_counter()

    def run(start: int, stop: int) -> np.ndarray:
        x, z = outer_draws(config.seed, model.n, start, stop)
        ys = np.sort(x + model.sigma * z, axis=1)
        out = np.empty(stop - start)
        for lo in range(0, stop - start, BLOCK_SIZE):
            hi = min(lo + BLOCK_SIZE, stop - start)
            p = integ.functionals(model, ys[lo:hi], first_index=start + lo).probs
            out[lo:hi] = np.sum(x[lo:hi] ** 2, axis=1) * np.sum(p * (1.0 - p), axis=1)
        return out

    return _summarize(f"delta_up n={model.n} sigma={model.sigma:g}", _map_chunks(config, run), started)


def delta_up_asymptote(n: int) -> float:
    """Large-noise limit E||X||^2 (1 - 1/n!) = n (1 - 1/n!)."""
    return n * (1.0 - 1.0 / math.factorial(n))


def mse_unsorted(model: GaussianModel, config: EvalConfig) -> MonteCarloResult:
    """E||X - Y/(1+sigma^2)||^2 without sorting; equals n sigma^2 / (1 + sigma^2)."""
    _check_model(model, config)
    started = time.perf_counter()

    def run(start: int, stop: int) -> np.ndarray:
        x, z = outer_draws(config.seed, model.n, start, stop)
        y = x + model.sigma * z
        return np.sum((x - y * model.shrinkage) ** 2, axis=1)

    return _summarize(f"mse_unsorted n={model.n} sigma={model.sigma:g}", _map_chunks(config, run), started)


__all__ = [
    "BLOCK_SIZE",
    "summarize_losses",
    "standard_normals",
    "outer_draws",
    "mse_of_estimator",
    "mmse_sweep",
    "delta_up",
    "delta_up_asymptote",
    "mse_unsorted",
]
