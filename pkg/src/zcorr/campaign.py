"""Seeded random campaigns that exercise both halves of the theorem.

Each trial draws from its own generator seeded with (seed, trial index), so
results do not depend on execution order.
"""
from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .classical import JointDist2x2, analyze, product_distribution
from .construction import ConstructionOptions, construct, verify
from .quantum_state import Amplitudes, StateParams, from_amplitudes, validate

QUANTUM_MODES = ("mixed", "amplitude", "signed", "separable")
MODES = QUANTUM_MODES + ("classical",)
MIN_DEPENDENCE = 1e-3


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def sample_amplitude_state(rng: np.random.Generator) -> StateParams:
    """Haar-random state: four complex Gaussians, normalized, in canonical form."""
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return from_amplitudes(Amplitudes.from_vector(z / np.linalg.norm(z)))


def sample_signed_state(rng: np.random.Generator) -> StateParams:
    """Signed real amplitudes uniform on the 3-sphere, phases uniform."""
    x = rng.normal(size=4)
    x /= np.linalg.norm(x)
    phases = rng.uniform(0.0, 2.0 * math.pi, size=3)
    return validate(StateParams(*x.tolist(), *phases.tolist()))


def sample_product_state(rng: np.random.Generator) -> StateParams:
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    b = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
    return from_amplitudes(Amplitudes.from_vector(v))


def sample_state(rng: np.random.Generator, mode: str, index: int = 0) -> StateParams:
    if mode == "mixed":
        mode = "amplitude" if index % 2 == 0 else "signed"
    if mode == "amplitude":
        return sample_amplitude_state(rng)
    if mode == "signed":
        return sample_signed_state(rng)
    if mode == "separable":
        return sample_product_state(rng)
    raise ValueError(f"unknown sampling mode {mode!r}")


def _sample_values(rng: np.random.Generator) -> tuple[float, float]:
    v1 = float(rng.uniform(-3.0, 3.0))
    gap = float(rng.uniform(1.0, 3.0)) * (1.0 if rng.random() < 0.5 else -1.0)
    return v1, v1 + gap


def sample_dependent_dist(rng: np.random.Generator, min_det: float = MIN_DEPENDENCE) -> JointDist2x2:
    """Random joint distribution with |p11 p22 - p12 p21| > min_det and unit-separated values."""
    while True:
        p = rng.dirichlet(np.ones(4))
        if abs(p[0] * p[3] - p[1] * p[2]) > min_det:
            break
    # absorb rounding so the probabilities sum to 1
    p[3] = 1.0 - p[0] - p[1] - p[2]
    x, y = _sample_values(rng), _sample_values(rng)
    return JointDist2x2(*p.tolist(), *x, *y)


def sample_independent_dist(rng: np.random.Generator) -> JointDist2x2:
    px1, py1 = rng.uniform(0.0, 1.0, size=2).tolist()
    return product_distribution(px1, py1, _sample_values(rng), _sample_values(rng))


@dataclass
class CampaignSummary:
    trials: int
    max_abs_covariance: float
    failures: int
    per_case_counts: dict[str, int]
    elapsed_ms: float = 0.0
    extras: dict = field(default_factory=dict)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "trials": self.trials,
            "max_abs_covariance": self.max_abs_covariance,
            "failures": self.failures,
            "per_case_counts": dict(sorted(self.per_case_counts.items())),
        }
        out.update(self.extras)
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def run_quantum(
    n: int, seed: int, tol: float, mode: str = "mixed", options: ConstructionOptions | None = None
) -> CampaignSummary:
    """Construct and verify a zero-correlation pair for n random states."""
    if n < 1:
        raise ValueError("n must be >= 1")
    opts = options or ConstructionOptions()
    start = time.perf_counter()
    counts: Counter[str] = Counter()
    failures = sensitive = 0
    worst = 0.0
    for i in range(n):
        params = sample_state(trial_rng(seed, i), mode, i)
        result = construct(params, opts)
        cov = abs(verify(params, result).covariance)
        counts[result.case.value] += 1
        sensitive += result.sensitive
        worst = max(worst, cov)
        if not cov <= tol:
            failures += 1
    elapsed = (time.perf_counter() - start) * 1e3
    return CampaignSummary(
        n, worst, failures, dict(counts), elapsed, {"mode": mode, "seed": seed, "tol": tol, "sensitive": sensitive}
    )


def run_classical(n: int, seed: int, tol: float) -> CampaignSummary:
    """Even trials draw dependent distributions, odd trials independent ones.

    A dependent trial fails if its covariance is not bounded away from zero
    by |x1 - x2| |y1 - y2| |det|; an independent one fails if |Cov| > tol.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    start = time.perf_counter()
    counts: Counter[str] = Counter()
    failures = 0
    worst_indep = 0.0
    min_gap = math.inf
    for i in range(n):
        rng = trial_rng(seed, i)
        if i % 2 == 0:
            d = sample_dependent_dist(rng)
            rep = analyze(d)
            bound = abs(d.x1 - d.x2) * abs(d.y1 - d.y2) * abs(rep.det)
            gap = abs(rep.covariance)
            min_gap = min(min_gap, gap)
            counts["dependent"] += 1
            if gap == 0.0 or rep.is_independent or abs(gap - bound) > 1e-13:
                failures += 1
        else:
            rep = analyze(sample_independent_dist(rng))
            counts["independent"] += 1
            worst_indep = max(worst_indep, abs(rep.covariance))
            if not abs(rep.covariance) <= tol or not rep.is_independent:
                failures += 1
    elapsed = (time.perf_counter() - start) * 1e3
    extras = {"mode": "classical", "seed": seed, "tol": tol}
    if math.isfinite(min_gap):
        extras["min_dependence_gap"] = min_gap
    return CampaignSummary(n, worst_indep, failures, dict(counts), elapsed, extras)
