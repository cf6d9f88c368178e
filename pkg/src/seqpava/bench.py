"""Synthetic data generation and a timing harness for the three fit variants."""
from __future__ import annotations

import json
from dataclasses import dataclass
from time import perf_counter

import numpy as np

from .idr import VARIANTS, fit_family, group

__all__ = [
    "ExperimentConfig",
    "TimingReport",
    "response_shape",
    "response_scale",
    "sample_responses",
    "generate_dataset",
    "run_benchmark",
]


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters of one timing experiment."""

    n: int = 1000
    replications: int = 20
    seed: int = 0
    x_range: tuple[float, float] = (0.0, 10.0)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("need n >= 2 observations per dataset")
        if self.replications < 1:
            raise ValueError("need at least one replication")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        lo, hi = self.x_range
        if not lo < hi:
            raise ValueError("x_range must be an increasing pair")


def response_shape(x):
    """Gamma shape parameter at covariate x."""
    return np.sqrt(x)


def response_scale(x):
    """Gamma scale parameter at covariate x; stays strictly inside (0, 2)."""
    t = np.asarray(x, dtype=float) - 5.0
    return 1.0 + t / np.sqrt(2.0 + t * t)


def sample_responses(x, rng: np.random.Generator) -> np.ndarray:
    """Draw one gamma response per covariate value in ``x``."""
    return rng.gamma(response_shape(x), response_scale(x))


def generate_dataset(config: ExperimentConfig, replication_index: int) -> np.ndarray:
    """One synthetic dataset as an (n, 2) array of (x, y) rows.

    Deterministic in ``(config.seed, replication_index)``: covariates are
    uniform on the configured range, responses are gamma with
    covariate-dependent shape and scale.
    """
    if replication_index < 0:
        raise ValueError("replication index must be non-negative")
    rng = np.random.default_rng([config.seed, replication_index])
    lo, hi = config.x_range
    x = rng.uniform(lo, hi, config.n)
    y = sample_responses(x, rng)
    return np.column_stack((x, y))


@dataclass(frozen=True)
class TimingReport:
    """Per-variant wall times plus per-replication time ratios.

    Ratios are formed replication by replication and then aggregated, so the
    reported ratio mean is the mean of ratios, not the ratio of means.
    """

    config: ExperimentConfig
    times: dict

    def __post_init__(self) -> None:
        for variant in VARIANTS:
            arr = np.asarray(self.times[variant], dtype=float)
            if arr.size != self.config.replications or not (arr > 0).all():
                raise ValueError(f"invalid timing vector for variant {variant!r}")

    def _arr(self, variant: str) -> np.ndarray:
        return np.asarray(self.times[variant], dtype=float)

    def mean(self, variant: str) -> float:
        return float(self._arr(variant).mean())

    def sd(self, variant: str) -> float:
        arr = self._arr(variant)
        return float(arr.std(ddof=1)) if arr.size > 1 else 0.0

    def median(self, variant: str) -> float:
        return float(np.median(self._arr(variant)))

    def ratios(self, numer: str, denom: str) -> np.ndarray:
        return self._arr(numer) / self._arr(denom)

    def ratio_mean(self, numer: str, denom: str) -> float:
        return float(self.ratios(numer, denom).mean())

    def ratio_sd(self, numer: str, denom: str) -> float:
        arr = self.ratios(numer, denom)
        return float(arr.std(ddof=1)) if arr.size > 1 else 0.0

    def to_dict(self) -> dict:
        pairs = (("standard", "modified"), ("standard", "abridged"), ("modified", "abridged"))
        return {
            "config": {
                "n": self.config.n,
                "replications": self.config.replications,
                "seed": self.config.seed,
                "x_range": list(self.config.x_range),
            },
            "times": {v: list(self.times[v]) for v in VARIANTS},
            "stats": {
                v: {"mean": self.mean(v), "sd": self.sd(v), "median": self.median(v)}
                for v in VARIANTS
            },
            "ratios": {
                f"{a}/{b}": {"mean": self.ratio_mean(a, b), "sd": self.ratio_sd(a, b)}
                for a, b in pairs
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format_table(self) -> str:
        """Aligned text table: one row per variant, ratio columns on the right."""
        header = (
            f"{'variant':<10} {'mean T [s]':>12} {'sd T [s]':>12} "
            f"{'T1/Tj mean':>12} {'T1/Tj sd':>10} {'T2/T3 mean':>12} {'T2/T3 sd':>10}"
        )
        lines = [header]
        for variant in VARIANTS:
            cells = [f"{variant:<10}", f"{self.mean(variant):>12.6f}", f"{self.sd(variant):>12.6f}"]
            if variant == "standard":
                cells += [f"{'':>12}", f"{'':>10}", f"{'':>12}", f"{'':>10}"]
            elif variant == "modified":
                cells += [
                    f"{self.ratio_mean('standard', 'modified'):>12.4f}",
                    f"{self.ratio_sd('standard', 'modified'):>10.4f}",
                    f"{'':>12}",
                    f"{'':>10}",
                ]
            else:
                cells += [
                    f"{self.ratio_mean('standard', 'abridged'):>12.4f}",
                    f"{self.ratio_sd('standard', 'abridged'):>10.4f}",
                    f"{self.ratio_mean('modified', 'abridged'):>12.4f}",
                    f"{self.ratio_sd('modified', 'abridged'):>10.4f}",
                ]
            lines.append(" ".join(cells))
        return "\n".join(lines)


def run_benchmark(config: ExperimentConfig) -> TimingReport:
    """Time the three variants on identical datasets.

    One untimed warm-up fit per variant precedes measurement. The timed
    section covers grouping and fitting; data generation is excluded. The
    three estimates for each dataset must agree to within 1e-12 before any
    timing is reported, since timing computations that disagree would be
    meaningless.
    """
    warm = generate_dataset(config, 0)
    for variant in VARIANTS:
        fit_family(group(warm), variant)

    times: dict = {variant: [] for variant in VARIANTS}
    for r in range(config.replications):
        pairs = generate_dataset(config, r)
        estimates = {}
        for variant in VARIANTS:
            start = perf_counter()
            estimate = fit_family(group(pairs), variant)
            times[variant].append(perf_counter() - start)
            estimates[variant] = estimate
        reference = estimates["standard"]
        for variant in ("modified", "abridged"):
            estimate = estimates[variant]
            if (
                estimate.thresholds.shape != reference.thresholds.shape
                or (estimate.thresholds != reference.thresholds).any()
            ):
                raise RuntimeError(f"{variant} produced different thresholds on replication {r}")
            gap = float(np.max(np.abs(estimate.cdf - reference.cdf)))
            if gap > 1e-12:
                raise RuntimeError(
                    f"{variant} disagrees with standard by {gap} on replication {r}"
                )
    return TimingReport(config, {v: tuple(ts) for v, ts in times.items()})
