"""Theory-independent equilibration machinery.

Everything in this module works purely with measurement-outcome
distributions: how distinguishable two distributions are, how a
time-parametrized family of distributions averages out, and whether a
trajectory equilibrates towards its average. No classical or quantum
structure is assumed; those live in :mod:`equilib.classical` and
:mod:`equilib.quantum` and feed probes into the estimators here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

ENTRY_TOL = 1e-12  # per-entry tolerance on the [0, 1] range
NORM_TOL = 1e-9    # tolerance on the normalization of a distribution

# Absolute slack used when comparing a probability against an analytic
# threshold like 1 - eps/2, so that exact boundary cases are not decided
# by a 1-ulp rounding of the threshold.
THRESHOLD_SLACK = 1e-12

VERDICT_EQUILIBRATES = "equilibrates"
VERDICT_DOES_NOT = "does-not-equilibrate"
VERDICT_INCONCLUSIVE = "inconclusive"

SCHEME_UNIFORM = "uniform-grid"
SCHEME_STRATIFIED = "stratified-random"


class DimensionError(ValueError):
    """Two objects that must share a dimension do not."""


class DomainError(ValueError):
    """A scalar argument lies outside its mathematical domain."""


class DistributionError(ValueError):
    """Data that should form a probability distribution does not."""


class ConfigError(ValueError):
    """A scenario configuration is inconsistent; message carries the field path."""


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Probability vector over the outcomes of one measurement.

    Entries must lie in [0, 1] within ``ENTRY_TOL`` and sum to 1 within
    ``NORM_TOL``. The stored array is read-only.
    """

    probs: np.ndarray

    def __init__(self, probs: Sequence[float] | np.ndarray):
        arr = np.asarray(probs, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise DistributionError("a distribution must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise DistributionError("distribution entries must be finite")
        if arr.min() < -ENTRY_TOL or arr.max() > 1.0 + ENTRY_TOL:
            raise DistributionError(
                f"entries outside [0, 1]: min={arr.min():.3e}, max={arr.max():.3e}"
            )
        total = float(arr.sum())
        if abs(total - 1.0) > NORM_TOL:
            raise DistributionError(f"entries sum to {total!r}, expected 1 within {NORM_TOL}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, j: int) -> float:
        return float(self.probs[j])

    def __eq__(self, other) -> bool:
        if not isinstance(other, OutcomeDistribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash(self.probs.tobytes())

    def allclose(self, other: "OutcomeDistribution", atol: float = 1e-9) -> bool:
        return len(self) == len(other) and bool(
            np.allclose(self.probs, other.probs, rtol=0.0, atol=atol)
        )

    @property
    def max_probability(self) -> float:
        return float(self.probs.max())

    @staticmethod
    def indicator(index: int, size: int) -> "OutcomeDistribution":
        """Deterministic distribution putting all weight on one outcome."""
        if not 0 <= index < size:
            raise DomainError(f"indicator index {index} outside range({size})")
        probs = np.zeros(size)
        probs[index] = 1.0
        return OutcomeDistribution(probs)

    @staticmethod
    def uniform(size: int) -> "OutcomeDistribution":
        return OutcomeDistribution(np.full(size, 1.0 / size))


@dataclass(frozen=True)
class TrajectoryProbe:
    """A state, evolution and measurement bundled as ``t -> distribution``.

    ``sample(t)`` must return an :class:`OutcomeDistribution` of length
    ``outcome_count`` for every t >= 0, with ``sample(0)`` reproducing the
    initial state's outcome statistics. ``sample_many``, when provided, is a
    vectorized equivalent returning a ``(len(times), outcome_count)`` array;
    the estimators use it as a fast path and fall back to ``sample``.
    """

    sample: Callable[[float], OutcomeDistribution]
    outcome_count: int
    sample_many: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if self.outcome_count < 1:
            raise DomainError("a probe needs at least one outcome")

    def distributions_at(self, times: np.ndarray) -> np.ndarray:
        """Stack probe samples at the given times into a (M, N) array."""
        times = np.asarray(times, dtype=float)
        if self.sample_many is not None:
            block = np.asarray(self.sample_many(times), dtype=float)
            if block.shape != (times.size, self.outcome_count):
                raise DimensionError(
                    f"sample_many returned shape {block.shape}, "
                    f"expected {(times.size, self.outcome_count)}"
                )
            _validate_sample_block(block)
            return block
        block = np.empty((times.size, self.outcome_count))
        for k, t in enumerate(times):
            dist = self.sample(float(t))
            if len(dist) != self.outcome_count:
                raise DimensionError(
                    f"probe returned {len(dist)} outcomes at t={t}, "
                    f"expected {self.outcome_count}"
                )
            block[k] = dist.probs
        return block


def _validate_sample_block(block: np.ndarray) -> None:
    if not np.all(np.isfinite(block)):
        raise DistributionError("probe produced non-finite probabilities")
    if block.min() < -ENTRY_TOL or block.max() > 1.0 + ENTRY_TOL:
        raise DistributionError("probe produced probabilities outside [0, 1]")
    sums = block.sum(axis=1)
    bad = np.abs(sums - 1.0) > NORM_TOL
    if bad.any():
        k = int(np.argmax(bad))
        raise DistributionError(f"probe sample {k} sums to {sums[k]!r}, expected 1")


@dataclass(frozen=True)
class TimeAverageConfig:
    """Finite-horizon approximation of the infinite time average.

    ``scheme`` is either ``"uniform-grid"`` (left endpoints of ``samples``
    equal sub-intervals of [0, horizon), reproducible against closed forms)
    or ``"stratified-random"`` (one uniform draw per sub-interval, immune to
    aliasing with periodic trajectories). All randomness comes from ``seed``.
    """

    horizon: float
    samples: int
    scheme: str = SCHEME_STRATIFIED
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.horizon) and self.horizon > 0):
            raise DomainError(f"horizon must be finite and positive, got {self.horizon!r}")
        if self.samples < 2:
            raise DomainError(f"need at least 2 samples, got {self.samples}")
        if self.scheme not in (SCHEME_UNIFORM, SCHEME_STRATIFIED):
            raise DomainError(f"unknown sampling scheme {self.scheme!r}")


def sample_times(cfg: TimeAverageConfig) -> np.ndarray:
    """Deterministic sampling times for ``cfg`` (ascending)."""
    step = cfg.horizon / cfg.samples
    if cfg.scheme == SCHEME_UNIFORM:
        return np.arange(cfg.samples) * step
    rng = np.random.default_rng(cfg.seed)
    return (np.arange(cfg.samples) + rng.random(cfg.samples)) * step


class AverageEstimate(NamedTuple):
    mean: float
    standard_error: float


def distinguishability(p: OutcomeDistribution, q: OutcomeDistribution) -> float:
    """Half the L1 distance between two outcome distributions.

    This is the operational advantage a single measurement gives for telling
    the underlying states apart: 0 for identical statistics, 1 for disjoint
    support.
    """
    if len(p) != len(q):
        raise DimensionError(f"distribution lengths differ: {len(p)} vs {len(q)}")
    return 0.5 * float(np.abs(p.probs - q.probs).sum())


def guessing_probability(d: float) -> float:
    """Success probability of guessing which of two states was measured,
    given their distinguishability ``d``: 1/2 + d/2."""
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"distinguishability must lie in [0, 1], got {d!r}")
    return 0.5 + 0.5 * d


def multi_distinguishability(
    pairs: Sequence[tuple[OutcomeDistribution, OutcomeDistribution]],
) -> float:
    """Largest distinguishability over a set of measurement outcome pairs.

    Models an observer who may pick, per time, the most revealing of several
    measurements.
    """
    if len(pairs) == 0:
        raise DomainError("need at least one measurement pair")
    return max(distinguishability(p, q) for p, q in pairs)


def multi_measurement_budget(epsilon: float, measurement_count: int) -> float:
    """Per-measurement tolerance that keeps the max-distinguishability over
    ``measurement_count`` measurements within ``epsilon``."""
    if not 0.0 <= epsilon < 1.0:
        raise DomainError(f"epsilon must lie in [0, 1), got {epsilon!r}")
    if measurement_count < 1:
        raise DomainError(f"measurement count must be >= 1, got {measurement_count}")
    return epsilon / measurement_count


def check_sufficiency(omega: OutcomeDistribution, epsilon: float) -> bool:
    """Universal sufficient condition for epsilon-equilibration.

    If the equilibrium distribution puts weight at least ``1 - epsilon/2``
    on a single outcome, every trajectory with this equilibrium distribution
    epsilon-equilibrates, in any theory. A False return says nothing either
    way.
    """
    if not 0.0 <= epsilon < 1.0:
        raise DomainError(f"epsilon must lie in [0, 1), got {epsilon!r}")
    return omega.max_probability >= 1.0 - epsilon / 2.0 - THRESHOLD_SLACK


def time_average_distribution(
    probe: TrajectoryProbe, cfg: TimeAverageConfig
) -> OutcomeDistribution:
    """Empirical time average of a probe's outcome distribution.

    The per-outcome mean over the sampled times, renormalized to sum exactly
    to 1 (each entry is already a mean of probabilities, so the shift is at
    the level of accumulated rounding).
    """
    block = probe.distributions_at(sample_times(cfg))
    mean = block.mean(axis=0)
    return OutcomeDistribution(mean / mean.sum())


def average_distinguishability(
    probe: TrajectoryProbe, omega: OutcomeDistribution, cfg: TimeAverageConfig
) -> AverageEstimate:
    """Estimate the time-averaged distinguishability from ``omega``.

    The standard error is the sample standard deviation of the
    distinguishability time series divided by sqrt(samples). For strongly
    correlated trajectories this is a heuristic, not an exact error bar;
    stratified sampling keeps it conservative in practice.
    """
    if len(omega) != probe.outcome_count:
        raise DimensionError(
            f"omega has {len(omega)} outcomes, probe has {probe.outcome_count}"
        )
    block = probe.distributions_at(sample_times(cfg))
    series = 0.5 * np.abs(block - omega.probs).sum(axis=1)
    return _series_estimate(series)


def average_multi_distinguishability(
    probes: Sequence[TrajectoryProbe],
    omegas: Sequence[OutcomeDistribution],
    cfg: TimeAverageConfig,
) -> AverageEstimate:
    """Time average of the max-distinguishability over several measurements.

    All probes are sampled at the same times; at each time the largest
    per-measurement distinguishability is taken before averaging.
    """
    if len(probes) == 0 or len(probes) != len(omegas):
        raise DimensionError("need equally many probes and equilibrium distributions")
    times = sample_times(cfg)
    per_probe = []
    for probe, omega in zip(probes, omegas):
        if len(omega) != probe.outcome_count:
            raise DimensionError("equilibrium distribution does not match its probe")
        block = probe.distributions_at(times)
        per_probe.append(0.5 * np.abs(block - omega.probs).sum(axis=1))
    series = np.max(per_probe, axis=0)
    return _series_estimate(series)


def _series_estimate(series: np.ndarray) -> AverageEstimate:
    mean = float(series.mean())
    stderr = float(series.std(ddof=1) / math.sqrt(series.size))
    return AverageEstimate(mean, stderr)


def decide_verdict(mean: float, standard_error: float, epsilon: float) -> str:
    """Three-valued equilibration verdict.

    A finite-horizon estimate near epsilon cannot decide the asymptotic
    statement, hence the "inconclusive" band of width 2 standard errors on
    each side.
    """
    if mean + 2.0 * standard_error <= epsilon:
        return VERDICT_EQUILIBRATES
    if mean - 2.0 * standard_error > epsilon:
        return VERDICT_DOES_NOT
    return VERDICT_INCONCLUSIVE


@dataclass(frozen=True, eq=False)
class EquilibrationReport:
    """Outcome of one equilibration measurement.

    ``standard_error`` is the total estimator uncertainty: the time-sampling
    error plus, for quadrature-discretized ensembles, their resolution floor.
    ``bound_values`` maps bound names to analytic values that applied to the
    run.
    """

    mean_distinguishability: float
    standard_error: float
    equilibrium_distribution: OutcomeDistribution
    epsilon: float
    verdict: str
    bound_values: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.mean_distinguishability <= 1.0:
            raise DomainError("mean distinguishability must lie in [0, 1]")
        if self.standard_error < 0.0:
            raise DomainError("standard error must be nonnegative")
        if not 0.0 <= self.epsilon < 1.0:
            raise DomainError("epsilon must lie in [0, 1)")
        if self.verdict not in (VERDICT_EQUILIBRATES, VERDICT_DOES_NOT, VERDICT_INCONCLUSIVE):
            raise DomainError(f"unknown verdict {self.verdict!r}")
        mean, err = self.mean_distinguishability, self.standard_error
        if self.verdict == VERDICT_EQUILIBRATES and mean + 2.0 * err > self.epsilon:
            raise DomainError("verdict 'equilibrates' inconsistent with the estimate")
        if self.verdict == VERDICT_DOES_NOT and mean - 2.0 * err <= self.epsilon:
            raise DomainError("verdict 'does-not-equilibrate' inconsistent with the estimate")

    def __eq__(self, other) -> bool:
        if not isinstance(other, EquilibrationReport):
            return NotImplemented
        return (
            self.mean_distinguishability == other.mean_distinguishability
            and self.standard_error == other.standard_error
            and self.equilibrium_distribution == other.equilibrium_distribution
            and self.epsilon == other.epsilon
            and self.verdict == other.verdict
            and self.bound_values == other.bound_values
        )


def equilibration_report(
    probe: TrajectoryProbe,
    epsilon: float,
    cfg: TimeAverageConfig,
    bound_values: dict[str, float] | None = None,
    quadrature_error: float = 0.0,
) -> EquilibrationReport:
    """Measure a probe against the epsilon-equilibration definition.

    Samples the probe once over ``cfg``, uses the in-sample mean as the
    empirical equilibrium distribution, and averages the distinguishability
    from it over the same times. ``quadrature_error`` is added to the
    time-sampling standard error when the probe itself is a finite quadrature
    of a continuous state (see ``classical.ensemble_noise_floor``).
    """
    if not 0.0 <= epsilon < 1.0:
        raise DomainError(f"epsilon must lie in [0, 1), got {epsilon!r}")
    if quadrature_error < 0.0:
        raise DomainError("quadrature error must be nonnegative")
    block = probe.distributions_at(sample_times(cfg))
    mean_dist = block.mean(axis=0)
    omega = OutcomeDistribution(mean_dist / mean_dist.sum())
    series = 0.5 * np.abs(block - omega.probs).sum(axis=1)
    mean, stderr = _series_estimate(series)
    stderr += quadrature_error
    return EquilibrationReport(
        mean_distinguishability=mean,
        standard_error=stderr,
        equilibrium_distribution=omega,
        epsilon=epsilon,
        verdict=decide_verdict(mean, stderr, epsilon),
        bound_values=dict(bound_values or {}),
    )


def synthetic_probe(
    outcomes: int,
    seed: int,
    dominant_weight: float | None = None,
    mode_count: int = 3,
    amplitude: float = 0.6,
) -> TrajectoryProbe:
    """Random quasi-periodic probe with no physics behind it.

    Each outcome weight oscillates as a random superposition of
    ``mode_count`` incommensurate cosines around a random base distribution;
    the result is renormalized per time. ``dominant_weight`` pins the base
    weight of outcome 0, which makes it easy to construct probes whose
    empirical equilibrium distribution is highly uneven.
    """
    if outcomes < 1:
        raise DomainError("need at least one outcome")
    if not 0.0 <= amplitude < 1.0:
        raise DomainError("amplitude must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    base = rng.dirichlet(np.ones(outcomes))
    if dominant_weight is not None:
        if not 0.0 < dominant_weight <= 1.0:
            raise DomainError("dominant weight must lie in (0, 1]")
        rest = base[1:] / base[1:].sum() if outcomes > 1 else np.array([])
        base = np.concatenate(([dominant_weight], (1.0 - dominant_weight) * rest))
    # amplitudes normalized so each factor stays in (1 - amplitude, 1 + amplitude)
    amps = rng.random((outcomes, mode_count))
    amps *= amplitude / np.maximum(amps.sum(axis=1, keepdims=True), 1e-300)
    freqs = rng.uniform(0.5, 3.0, mode_count)
    phases = rng.uniform(0.0, 2.0 * np.pi, (outcomes, mode_count))

    def _raw(times: np.ndarray) -> np.ndarray:
        angles = np.multiply.outer(times, freqs)  # (M, modes)
        factors = 1.0 + np.einsum("jm,tjm->tj", amps, np.cos(angles[:, None, :] + phases))
        weights = base * factors
        return weights / weights.sum(axis=1, keepdims=True)

    def sample(t: float) -> OutcomeDistribution:
        return OutcomeDistribution(_raw(np.array([t]))[0])

    return TrajectoryProbe(sample=sample, outcome_count=outcomes, sample_many=_raw)
