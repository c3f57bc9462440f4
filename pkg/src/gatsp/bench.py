"""Multi-run experiment harness: seeded repeats of several solver
variants on one instance, averaged into per-generation convergence
curves and a CSV suitable for plotting.

Run i of every variant uses seed base+i, so any single run can be
re-executed in isolation and variants are compared on paired seeds.
"""

from __future__ import annotations

import multiprocessing
import statistics
from dataclasses import dataclass, field, replace

import numpy as np

from .engine import GaParams, run
from .tsplib import Instance, load_instance

DEFAULT_VARIANTS = (("conventional", False, False), ("hybrid", True, True))


@dataclass(frozen=True)
class VariantSpec:
    label: str
    l1_enabled: bool
    l2_enabled: bool


@dataclass
class ExperimentConfig:
    instance_path: str
    runs: int = 30
    params: GaParams = field(default_factory=GaParams)
    variants: tuple[VariantSpec, ...] = tuple(VariantSpec(*v) for v in DEFAULT_VARIANTS)
    output_path: str | None = None
    per_run_path: str | None = None
    jobs: int = 1

    def violations(self) -> list[str]:
        problems = self.params.violations()
        if self.runs < 1:
            problems.append(f"runs must be >= 1, got {self.runs}")
        labels = [v.label for v in self.variants]
        if len(set(labels)) != len(labels):
            problems.append(f"variant labels must be unique, got {labels}")
        if not self.variants:
            problems.append("at least one variant is required")
        if self.params.target_length is not None:
            problems.append("experiments need fixed-length runs; unset target_length")
        if self.jobs < 1:
            problems.append(f"jobs must be >= 1, got {self.jobs}")
        return problems


@dataclass
class VariantResult:
    label: str
    best_curves: np.ndarray  # (runs, generations) per-run best length
    final_lengths: np.ndarray  # (runs,) final best of each run
    wall_times: list[float]

    @property
    def mean_curve(self) -> np.ndarray:
        return self.best_curves.mean(axis=0)

    @property
    def mean_wall_time(self) -> float:
        return statistics.fmean(self.wall_times)

    def summary(self) -> dict:
        finals = self.final_lengths
        return {
            "label": self.label,
            "final_mean": float(finals.mean()),
            "final_min": finals.min(),
            "final_max": finals.max(),
            "final_stddev": float(finals.std(ddof=1)) if finals.size > 1 else 0.0,
            "mean_wall_time": self.mean_wall_time,
        }


@dataclass
class ExperimentReport:
    instance_name: str
    runs: int
    generations: int
    variants: list[VariantResult]

    def variant(self, label: str) -> VariantResult:
        for v in self.variants:
            if v.label == label:
                return v
        raise KeyError(label)


def _run_one(task) -> tuple[np.ndarray, float, float]:
    instance, params = task
    result = run(instance, params)
    curve = np.array([s.best_length for s in result.stats_series])
    return curve, result.final_best_length, result.wall_time


def variant_params(cfg: ExperimentConfig, spec: VariantSpec, run_index: int) -> GaParams:
    """Parameters for one run of one variant.

    Every variant shares cfg.params; a VariantSpec can only toggle the
    two strategy flags, so variants are structurally guaranteed to differ
    in nothing else. Run i uses seed base+i.
    """
    return replace(
        cfg.params,
        l1_enabled=spec.l1_enabled,
        l2_enabled=spec.l2_enabled,
        seed=cfg.params.seed + run_index,
    )


def run_experiment(cfg: ExperimentConfig, instance: Instance | None = None) -> ExperimentReport:
    """Execute runs x variants and aggregate the convergence curves.

    ``instance`` may be passed directly (tests, synthetic data);
    otherwise ``cfg.instance_path`` is loaded. Aggregation is a mean per
    generation over runs, reduced in run-index order, so the report is
    identical whether runs execute serially or in parallel.
    """
    problems = cfg.violations()
    if problems:
        raise ValueError("invalid experiment config: " + "; ".join(problems))
    if instance is None:
        instance = load_instance(cfg.instance_path)

    variant_results = []
    for spec in cfg.variants:
        tasks = [(instance, variant_params(cfg, spec, i)) for i in range(cfg.runs)]
        if cfg.jobs > 1:
            with multiprocessing.Pool(processes=cfg.jobs) as pool:
                outcomes = pool.map(_run_one, tasks)
        else:
            outcomes = [_run_one(t) for t in tasks]
        curves = np.stack([c for c, _, _ in outcomes])
        finals = np.array([f for _, f, _ in outcomes])
        times = [t for _, _, t in outcomes]
        variant_results.append(
            VariantResult(label=spec.label, best_curves=curves, final_lengths=finals, wall_times=times)
        )

    return ExperimentReport(
        instance_name=instance.name,
        runs=cfg.runs,
        generations=cfg.params.generations,
        variants=variant_results,
    )


def emit_convergence_csv(report: ExperimentReport, sink) -> None:
    """Write the averaged curves: generation,variant,mean_best_length.

    One row per (generation, variant), ordered by generation then variant
    label; values carry full float precision so the curves round-trip.
    """
    sink.write("generation,variant,mean_best_length\n")
    ordered = sorted(report.variants, key=lambda v: v.label)
    curves = [(v.label, v.mean_curve) for v in ordered]
    for g in range(report.generations):
        for label, curve in curves:
            sink.write(f"{g + 1},{label},{float(curve[g])!r}\n")


def emit_per_run_csv(report: ExperimentReport, sink, base_seed: int) -> None:
    """Write every run's full best-length series for post-processing."""
    sink.write("variant,run,seed,generation,best_length\n")
    for v in sorted(report.variants, key=lambda x: x.label):
        for r in range(report.runs):
            for g in range(report.generations):
                sink.write(f"{v.label},{r},{base_seed + r},{g + 1},{v.best_curves[r, g]}\n")
