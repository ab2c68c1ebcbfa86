"""Campaign orchestration: ensemble-size sweeps, scaling fits, and result files.

A :class:`SweepPlan` pins a protocol, the swept ensemble sizes, the trial
budget and a master seed. Running it produces one :class:`SweepRecord` per
size (empirical spread of the beta estimates, the matching closed-form
prediction, and bookkeeping) and an ordinary least-squares fit of
``log(sigma)`` against ``log(n)`` whose slope is the measured scaling
exponent. Records and fit serialize to CSV (canonical, for plotting) and
JSONL (same content, for machine ingestion); identical plans produce
byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

from scipy import stats as _scipy_stats

from .estimators import EstimatorMode, ModeLike, run_thermalizing_trials, EmptyBatchError
from .interferometry import (
    BathMode,
    BathModeLike,
    BathSpec,
    require_phase_window,
    run_noon_trials,
    run_sn_trials,
    sigma_beta_h_theory,
    sigma_beta_sn_theory,
)
from .rng import RngStream
from .thermal import TwoLevelSpec, excitation_probability, shot_noise_sigma_beta, thermal_summary

PROTOCOLS = ("thermalizing", "sn", "noon")
MIN_FIT_POINTS = 4


class SweepConfigError(ValueError):
    """The sweep plan is internally inconsistent or incomplete."""


class SweepAbortError(RuntimeError):
    """A sweep point produced no valid trials; carries the offending size."""

    def __init__(self, n: int, message: str):
        super().__init__(message)
        self.n = n


@dataclass(frozen=True)
class SweepRecord:
    """One sweep point: empirical spread, theory prediction, and bookkeeping."""

    n: int
    sigma_beta_empirical: float
    sigma_beta_theory: float
    invalid_fraction: float
    trials: int


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares power-law fit of spread against size on log-log axes."""

    slope: float
    intercept: float
    stderr_slope: float
    r_squared: float
    points: tuple[tuple[int, float], ...]


@dataclass(frozen=True)
class SweepPlan:
    """One campaign: a protocol, the sizes to sweep, budgets, and a seed.

    ``epsilon`` and ``beta_true`` drive the thermalizing protocol directly;
    the interferometric protocols take them from ``bath``. ``repetitions`` is
    the per-trial shot count of the entangled protocol.
    """

    protocol: str
    n_values: tuple[int, ...]
    trials_per_n: int
    master_seed: int
    epsilon: float = 1.0
    beta_true: Optional[float] = None
    estimator: ModeLike = EstimatorMode.JEFFREYS
    bath: Optional[BathSpec] = None
    bath_mode: BathModeLike = BathMode.FIXED_M
    repetitions: int = 2

    def validate(self) -> None:
        """Check every protocol invariant before any trial runs."""
        if self.protocol not in PROTOCOLS:
            raise SweepConfigError(f"unknown protocol {self.protocol!r}; expected one of {PROTOCOLS}")
        values = tuple(self.n_values)
        if len(values) < MIN_FIT_POINTS:
            raise SweepConfigError(
                f"need at least {MIN_FIT_POINTS} sweep sizes for a fit, got {len(values)}"
            )
        if any(b <= a for a, b in zip(values, values[1:])):
            raise SweepConfigError(f"n_values must be strictly increasing, got {values}")
        if values[0] < 1:
            raise SweepConfigError("n_values must be positive")
        if self.trials_per_n < 2:
            raise SweepConfigError(f"trials_per_n must be at least 2, got {self.trials_per_n}")
        if self.protocol == "thermalizing":
            if self.beta_true is None or self.beta_true < 0:
                raise SweepConfigError("thermalizing sweep needs a nonnegative beta_true")
            if not self.epsilon > 0:
                raise SweepConfigError(f"epsilon must be positive, got {self.epsilon}")
        else:
            if self.bath is None:
                raise SweepConfigError(f"{self.protocol} sweep needs a bath specification")
            if self.protocol == "noon" and self.repetitions < 2:
                raise SweepConfigError("noon sweep needs repetitions >= 2")
            # phase window must hold at the largest swept size
            require_phase_window(self.bath, max(values) if self.protocol == "noon" else 1)


def _point_batch(plan: SweepPlan, n: int, stream: RngStream):
    if plan.protocol == "thermalizing":
        spec = TwoLevelSpec(n_atoms=n, epsilon=plan.epsilon)
        return run_thermalizing_trials(spec, plan.beta_true, plan.trials_per_n, plan.estimator, stream)
    if plan.protocol == "sn":
        return run_sn_trials(plan.bath, n, plan.trials_per_n, plan.bath_mode, stream, plan.estimator)
    return run_noon_trials(
        plan.bath, n, plan.repetitions, plan.trials_per_n, plan.bath_mode, stream, plan.estimator
    )


def _point_theory(plan: SweepPlan, n: int) -> float:
    if plan.protocol == "thermalizing":
        return shot_noise_sigma_beta(TwoLevelSpec(n_atoms=n, epsilon=plan.epsilon), plan.beta_true)
    if plan.protocol == "sn":
        return sigma_beta_sn_theory(plan.bath, n)
    return sigma_beta_h_theory(plan.bath, n) / math.sqrt(plan.repetitions)


def collect_sweep_records(plan: SweepPlan) -> list[SweepRecord]:
    """Run every sweep point and return its record, in plan order.

    Point ``j`` draws from stream ``(master_seed, j)`` with one substream per
    trial, so the records are a pure function of the plan. A point whose
    trials are all invalid aborts the sweep, naming the offending size.
    """
    plan.validate()
    records = []
    for j, n in enumerate(plan.n_values):
        stream = RngStream(plan.master_seed, j)
        try:
            batch = _point_batch(plan, n, stream)
        except EmptyBatchError as exc:
            raise SweepAbortError(
                n, f"sweep point n={n} yielded {exc.invalid_count}/{exc.trials} invalid trials"
            ) from exc
        records.append(
            SweepRecord(
                n=n,
                sigma_beta_empirical=batch.sample_std,
                sigma_beta_theory=_point_theory(plan, n),
                invalid_fraction=batch.invalid_count / batch.trials,
                trials=batch.trials,
            )
        )
    return records


def fit_power_law(points: Sequence[tuple[int, float]]) -> ScalingFit:
    """OLS fit of ``log(sigma)`` on ``log(n)``; refuses fewer than 4 points."""
    if len(points) < MIN_FIT_POINTS:
        raise ValueError(f"need at least {MIN_FIT_POINTS} points to fit, got {len(points)}")
    if any(n <= 0 or s <= 0 for n, s in points):
        raise ValueError("all points must have positive n and sigma")
    log_n = [math.log(n) for n, _ in points]
    log_s = [math.log(s) for _, s in points]
    result = _scipy_stats.linregress(log_n, log_s)
    slope, intercept = float(result.slope), float(result.intercept)
    # residual-based r^2; a zero-variance response with zero residuals is a
    # perfect fit, not an undefined correlation
    mean_log_s = sum(log_s) / len(log_s)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(log_n, log_s))
    ss_tot = sum((y - mean_log_s) ** 2 for y in log_s)
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ScalingFit(
        slope=slope,
        intercept=intercept,
        stderr_slope=float(result.stderr),
        r_squared=r_squared,
        points=tuple((int(n), float(s)) for n, s in points),
    )


def fit_from_records(records: Sequence[SweepRecord]) -> ScalingFit:
    return fit_power_law([(r.n, r.sigma_beta_empirical) for r in records])


def run_sweep(plan: SweepPlan) -> ScalingFit:
    """Run the campaign and fit the scaling exponent of the empirical spreads."""
    return fit_from_records(collect_sweep_records(plan))


def bath_intrinsic_sigma(m_atoms: int, epsilon: float, beta: float) -> float:
    """Spread to which a bath of ``m_atoms`` defines its own inverse temperature.

    The bath's energy fluctuates thermally, so beta inherits the spread of an
    ``m_atoms``-fold two-level ensemble: ``1 / sqrt(m_atoms * eps_prime)``.
    No thermometer reading of this bath is meaningful beyond that floor.
    """
    return shot_noise_sigma_beta(TwoLevelSpec(n_atoms=m_atoms, epsilon=epsilon), beta)


def matched_thermometer_size(m_atoms: int, regime: str) -> int:
    """Smallest thermometer whose precision reaches the bath's intrinsic floor.

    A shot-noise-limited thermometer must match the bath atom for atom; an
    entangled (1/N) thermometer only needs the square root of the bath size.
    """
    if m_atoms < 1:
        raise ValueError(f"m_atoms must be at least 1, got {m_atoms}")
    if regime == "shot_noise":
        return m_atoms
    if regime == "heisenberg":
        root = math.isqrt(m_atoms)
        return root if root * root == m_atoms else root + 1
    raise ValueError(f"regime must be 'shot_noise' or 'heisenberg', got {regime!r}")


def fig1_curves(epsilon: float, beta_grid: Iterable[float]) -> list[tuple[float, float, float]]:
    """Rows ``(beta*epsilon, eps_bar/epsilon, sqrt(N)*sigma_beta*epsilon)`` for plotting.

    Both outputs are dimensionless functions of ``x = beta * epsilon``: the
    per-atom energy fraction ``p`` and the size-scaled spread
    ``1 / sqrt(p * (1 - p))``, which bottoms out at 2 when ``x = 0``.
    """
    betas = list(beta_grid)
    if not betas:
        raise ValueError("beta_grid must be nonempty")
    rows = []
    for beta in betas:
        p = excitation_probability(epsilon, beta)
        summary = thermal_summary(TwoLevelSpec(1, epsilon), beta)
        scaled_sigma = epsilon / math.sqrt(summary.eps_prime)
        rows.append((beta * epsilon, p, scaled_sigma))
    return rows


# ---------------------------------------------------------------------------
# result files

CSV_HEADER = "n,sigma_beta_empirical,sigma_beta_theory,invalid_fraction,trials"


def format_float(x: float) -> str:
    """Fixed emission format: 17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def _record_csv_row(r: SweepRecord) -> str:
    return ",".join(
        [
            str(r.n),
            format_float(r.sigma_beta_empirical),
            format_float(r.sigma_beta_theory),
            format_float(r.invalid_fraction),
            str(r.trials),
        ]
    )


def _record_json_line(r: SweepRecord) -> str:
    return (
        "{"
        f'"n": {r.n}, '
        f'"sigma_beta_empirical": {format_float(r.sigma_beta_empirical)}, '
        f'"sigma_beta_theory": {format_float(r.sigma_beta_theory)}, '
        f'"invalid_fraction": {format_float(r.invalid_fraction)}, '
        f'"trials": {r.trials}'
        "}"
    )


def _fit_json_line(fit: ScalingFit) -> str:
    return (
        '{"fit": {'
        f'"slope": {format_float(fit.slope)}, '
        f'"intercept": {format_float(fit.intercept)}, '
        f'"stderr_slope": {format_float(fit.stderr_slope)}, '
        f'"r_squared": {format_float(fit.r_squared)}'
        "}}"
    )


def write_results(
    records: Sequence[SweepRecord],
    fit: Optional[ScalingFit],
    fmt: str,
    out: TextIO,
) -> None:
    """Write sweep records (and the fit summary, when given) to an open text sink."""
    if fmt == "csv":
        out.write(CSV_HEADER + "\n")
        for r in records:
            out.write(_record_csv_row(r) + "\n")
        if fit is not None:
            out.write(
                f"#fit,{format_float(fit.slope)},{format_float(fit.stderr_slope)},"
                f"{format_float(fit.r_squared)}\n"
            )
    elif fmt == "jsonl":
        for r in records:
            out.write(_record_json_line(r) + "\n")
        if fit is not None:
            out.write(_fit_json_line(fit) + "\n")
    else:
        raise ValueError(f"format must be 'csv' or 'jsonl', got {fmt!r}")


def emit_results(
    records: Sequence[SweepRecord],
    fit: Optional[ScalingFit],
    fmt: str,
    destination: str,
) -> None:
    """Write results to ``destination``; identical inputs yield identical bytes."""
    try:
        with open(destination, "w", newline="") as handle:
            write_results(records, fit, fmt, handle)
    except OSError as exc:
        raise OSError(f"cannot write results to {destination!r}: {exc}") from exc


def read_jsonl_results(path: str) -> tuple[list[SweepRecord], Optional[ScalingFit]]:
    """Parse a JSONL results file back into records and the fit, if present."""
    records: list[SweepRecord] = []
    fit = None
    with open(path) as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "fit" in obj:
                f = obj["fit"]
                fit = ScalingFit(
                    slope=f["slope"],
                    intercept=f["intercept"],
                    stderr_slope=f["stderr_slope"],
                    r_squared=f["r_squared"],
                    points=tuple((r.n, r.sigma_beta_empirical) for r in records),
                )
            else:
                records.append(
                    SweepRecord(
                        n=obj["n"],
                        sigma_beta_empirical=obj["sigma_beta_empirical"],
                        sigma_beta_theory=obj["sigma_beta_theory"],
                        invalid_fraction=obj["invalid_fraction"],
                        trials=obj["trials"],
                    )
                )
    return records, fit
