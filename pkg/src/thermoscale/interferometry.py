"""Interferometric thermometry against a two-level bath, without thermalizing.

The bath sits in one arm of an atomic interferometer. Each excited bath atom
advances the phase of a probe atom in that arm by ``theta = alpha * tau``, so
a single probe picks up ``phi_b = theta * m`` where ``m`` is the excited bath
count. Two protocols estimate ``m`` (and through it beta) from detector
statistics:

* the single-atom protocol sends N independent probes through, giving the
  usual ``cos^2(phi/2)`` fringe and a phase spread falling as ``N**-0.5``;
* the entangled protocol sends all N atoms through one arm together
  (an all-or-nothing superposition), so the fringe oscillates in
  ``N * phi_b`` and the phase spread falls as ``1/N``.

Both close the interferometer with the same splitter convention, modelled on
the two-dimensional subspace of "all atoms in arm 3" / "all atoms in arm 4"
as the unitary ``[[1, i], [i, 1]] / sqrt(2)``; a bare occupation measurement
on the open interferometer would be phase-blind, so recombination is forced.
Phase estimates use the principal branch of ``arccos``, which is unambiguous
only while the accumulated phase stays below pi; configurations must satisfy
``n_atoms * theta * m_atoms <= pi - 1e-3`` and are rejected otherwise.

When the bath is resampled between shots the fringe contrast drops to the
magnitude of the characteristic function of ``m``; :func:`dephasing_visibility`
gives the closed form and :func:`measure_fringe_visibility` measures it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .estimators import EstimatorMode, ModeLike, TrialBatch, _as_mode, make_batch
from .rng import RngStream
from .thermal import excitation_probability

PHASE_WINDOW_MARGIN = 1e-3


class PhaseWindowError(ValueError):
    """The configured phases leave the invertible branch of the fringe."""


class BathMode(Enum):
    """FIXED_M holds the excited bath count at its rounded mean (isolated bath);
    SAMPLED_M redraws it from the thermal distribution each trial."""

    FIXED_M = "fixed_m"
    SAMPLED_M = "sampled_m"


BathModeLike = Union[BathMode, str]


def _as_bath_mode(mode: BathModeLike) -> BathMode:
    if isinstance(mode, BathMode):
        return mode
    return BathMode(mode)


@dataclass(frozen=True)
class BathSpec:
    """A bath of ``m_atoms`` two-level atoms probed through a phase coupling.

    ``alpha`` is the coupling rate and ``tau`` the interaction time; their
    product ``theta`` is the phase a probe atom acquires per excited bath
    atom. ``beta_true`` is the bath's actual inverse temperature, known only
    to the simulation.
    """

    m_atoms: int
    epsilon: float
    beta_true: float
    alpha: float
    tau: float

    def __post_init__(self) -> None:
        if int(self.m_atoms) != self.m_atoms or self.m_atoms < 1:
            raise ValueError(f"m_atoms must be a positive integer, got {self.m_atoms}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not self.beta_true >= 0:
            raise ValueError(f"beta_true must be nonnegative, got {self.beta_true}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    @property
    def theta(self) -> float:
        """Phase per excited bath atom, ``alpha * tau``."""
        return self.alpha * self.tau

    @property
    def excitation(self) -> float:
        """Thermal excited-level population of one bath atom."""
        return excitation_probability(self.epsilon, self.beta_true)


@dataclass(frozen=True)
class InterferometerOutcome:
    """One run's realized bath count, accumulated phase, and detector record."""

    m_realized: int
    phi_b: float
    counts_port_a: int
    shots: int


def require_phase_window(bath: BathSpec, n_atoms: int = 1) -> None:
    """Reject configurations whose worst-case accumulated phase is ambiguous.

    The fringe inversion needs ``n_atoms * theta * m`` inside ``[0, pi)`` for
    every possible excited count ``m <= m_atoms``.
    """
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be at least 1, got {n_atoms}")
    limit = math.pi - PHASE_WINDOW_MARGIN
    accumulated = n_atoms * bath.theta * bath.m_atoms
    if accumulated > limit:
        raise PhaseWindowError(
            f"phase window violated: n_atoms * theta * m_atoms = {accumulated:.6g} "
            f"> pi - {PHASE_WINDOW_MARGIN:g} = {limit:.6g}"
        )


def max_theta(m_atoms: int, n_atoms: int = 1) -> float:
    """Largest coupling phase per excited atom allowed by the phase window."""
    if m_atoms < 1 or n_atoms < 1:
        raise ValueError("m_atoms and n_atoms must be at least 1")
    return (math.pi - PHASE_WINDOW_MARGIN) / (n_atoms * m_atoms)


def bath_excitation_draw(
    bath: BathSpec,
    mode: BathModeLike,
    rng: Union[RngStream, np.random.Generator],
) -> int:
    """Excited bath count for one run: the rounded mean, or a fresh thermal draw."""
    mode = _as_bath_mode(mode)
    p = bath.excitation
    if mode is BathMode.FIXED_M:
        return round(bath.m_atoms * p)
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    return int(gen.binomial(bath.m_atoms, p))


def single_port_probability(phi: float) -> float:
    """Detection probability ``cos^2(phi/2)`` at the designated output port."""
    return math.cos(phi / 2.0) ** 2


def noon_outcome_probability(n_atoms: int, phi_b: float) -> float:
    """Probability ``cos^2(n_atoms * phi_b / 2)`` of the all-atoms-at-port outcome.

    The complementary outcome has probability ``sin^2`` of the same argument.
    With one atom this is exactly :func:`single_port_probability`.
    """
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be at least 1, got {n_atoms}")
    return math.cos(n_atoms * phi_b / 2.0) ** 2


def sample_interferometer_outcome(
    bath: BathSpec,
    n_atoms: int,
    shots: int,
    mode: BathModeLike,
    rng: Union[RngStream, np.random.Generator],
) -> InterferometerOutcome:
    """Draw the bath count once, then the detector record of ``shots`` repeats."""
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    m = bath_excitation_draw(bath, mode, gen)
    phi_b = bath.theta * m
    p_port = noon_outcome_probability(n_atoms, phi_b)
    counts = int(gen.binomial(shots, p_port))
    return InterferometerOutcome(m_realized=m, phi_b=phi_b, counts_port_a=counts, shots=shots)


def _port_fraction(counts: int, shots: int, estimator: ModeLike) -> float:
    if _as_mode(estimator) is EstimatorMode.RAW:
        return counts / shots
    return (counts + 0.5) / (shots + 1.0)


def estimate_total_phase(counts: int, shots: int, mode: ModeLike = EstimatorMode.JEFFREYS) -> float:
    """Accumulated-phase estimate ``2 * arccos(sqrt(p_hat))`` from a detector record."""
    if not 0 <= counts <= shots:
        raise ValueError(f"counts {counts} outside [0, {shots}]")
    return 2.0 * math.acos(math.sqrt(_port_fraction(counts, shots, mode)))


def beta_from_port_fraction(p_hat: float, n_atoms: int, bath: BathSpec) -> Optional[float]:
    """Invert an observed port fraction to a beta estimate, or ``None`` when invalid.

    Chains ``phi_hat = 2 * arccos(sqrt(p_hat)) / n_atoms``, ``m_hat =
    phi_hat / theta`` and the mean-occupation relation ``beta_hat =
    log(m_atoms / m_hat - 1) / epsilon``. Inferred counts outside
    ``(0, m_atoms)`` cannot come from a thermal mean and are invalid.
    """
    if not 0.0 <= p_hat <= 1.0:
        raise ValueError(f"p_hat must lie in [0, 1], got {p_hat}")
    phi_b_hat = 2.0 * math.acos(math.sqrt(p_hat)) / n_atoms
    m_hat = phi_b_hat / bath.theta
    if m_hat <= 0.0 or m_hat >= bath.m_atoms:
        return None
    return math.log(bath.m_atoms / m_hat - 1.0) / bath.epsilon


def _protocol_trial(
    bath: BathSpec,
    n_atoms: int,
    shots: int,
    mode: BathModeLike,
    gen: np.random.Generator,
    estimator: ModeLike,
) -> tuple[float, Optional[float]]:
    """One trial: returns (phase estimate, beta estimate or None)."""
    outcome = sample_interferometer_outcome(bath, n_atoms, shots, mode, gen)
    p_hat = _port_fraction(outcome.counts_port_a, outcome.shots, estimator)
    phi_b_hat = 2.0 * math.acos(math.sqrt(p_hat)) / n_atoms
    return phi_b_hat, beta_from_port_fraction(p_hat, n_atoms, bath)


def run_sn_protocol(
    bath: BathSpec,
    n_shots: int,
    mode: BathModeLike,
    rng: RngStream,
    estimator: ModeLike = EstimatorMode.JEFFREYS,
) -> Optional[float]:
    """One single-atom-probe trial: ``n_shots`` independent passes, one beta estimate.

    Returns ``None`` when the inferred bath count leaves ``(0, m_atoms)``,
    which is how a fringe pinned at an extremum (e.g. a RAW count of 0 or
    ``n_shots``) manifests.
    """
    require_phase_window(bath, 1)
    if n_shots < 1:
        raise ValueError(f"n_shots must be at least 1, got {n_shots}")
    _, beta_hat = _protocol_trial(bath, 1, n_shots, mode, rng.generator(), estimator)
    return beta_hat


def run_noon_protocol(
    bath: BathSpec,
    n_atoms: int,
    repetitions: int,
    mode: BathModeLike,
    rng: RngStream,
    estimator: ModeLike = EstimatorMode.JEFFREYS,
) -> Optional[float]:
    """One entangled-probe trial: ``repetitions`` shots of ``n_atoms`` atoms together.

    The bath count is drawn once and held fixed across the repetitions within
    the trial (the bath is isolated while a measurement runs). With
    ``n_atoms=1`` this is bit-identical to :func:`run_sn_protocol`.
    """
    require_phase_window(bath, n_atoms)
    if repetitions < 2:
        raise ValueError(f"repetitions must be at least 2, got {repetitions}")
    _, beta_hat = _protocol_trial(bath, n_atoms, repetitions, mode, rng.generator(), estimator)
    return beta_hat


def _run_trials(
    bath: BathSpec,
    n_atoms: int,
    shots: int,
    trials: int,
    mode: BathModeLike,
    rng: RngStream,
    estimator: ModeLike,
) -> TrialBatch:
    require_phase_window(bath, n_atoms)
    if trials < 2:
        raise ValueError(f"trials must be at least 2, got {trials}")
    estimates: list[float] = []
    invalid = 0
    for gen in rng.generators(trials):
        _, beta_hat = _protocol_trial(bath, n_atoms, shots, mode, gen, estimator)
        if beta_hat is None:
            invalid += 1
        else:
            estimates.append(beta_hat)
    return make_batch(estimates, invalid)


def run_sn_trials(
    bath: BathSpec,
    n_shots: int,
    trials: int,
    mode: BathModeLike,
    rng: RngStream,
    estimator: ModeLike = EstimatorMode.JEFFREYS,
) -> TrialBatch:
    """Batch of single-atom-probe trials; trial ``t`` draws from ``rng.substream(t)``."""
    if n_shots < 1:
        raise ValueError(f"n_shots must be at least 1, got {n_shots}")
    return _run_trials(bath, 1, n_shots, trials, mode, rng, estimator)


def run_noon_trials(
    bath: BathSpec,
    n_atoms: int,
    repetitions: int,
    trials: int,
    mode: BathModeLike,
    rng: RngStream,
    estimator: ModeLike = EstimatorMode.JEFFREYS,
) -> TrialBatch:
    """Batch of entangled-probe trials; trial ``t`` draws from ``rng.substream(t)``."""
    if repetitions < 2:
        raise ValueError(f"repetitions must be at least 2, got {repetitions}")
    return _run_trials(bath, n_atoms, repetitions, trials, mode, rng, estimator)


def noon_phase_estimates(
    bath: BathSpec,
    n_atoms: int,
    repetitions: int,
    trials: int,
    mode: BathModeLike,
    rng: RngStream,
    estimator: ModeLike = EstimatorMode.JEFFREYS,
) -> np.ndarray:
    """Per-trial bath-phase estimates of the same trials as :func:`run_noon_trials`.

    Reuses the identical substreams, so the draws (and therefore the trials)
    match the beta batch bit for bit; the phase estimate itself is always
    finite, even for trials whose beta estimate is invalid.
    """
    require_phase_window(bath, n_atoms)
    phases = np.empty(trials, dtype=float)
    for t, gen in enumerate(rng.generators(trials)):
        phases[t], _ = _protocol_trial(bath, n_atoms, repetitions, mode, gen, estimator)
    return phases


def sigma_m_sn_theory(theta: float, n_shots: int) -> float:
    """Predicted spread of the inferred bath count: ``1 / (theta * sqrt(n_shots))``."""
    if not theta > 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if n_shots < 1:
        raise ValueError(f"n_shots must be at least 1, got {n_shots}")
    return 1.0 / (theta * math.sqrt(n_shots))


def _inverse_mean_slope(bath: BathSpec) -> float:
    """``1 / |d<m>/dbeta|`` for the thermal mean occupation of the bath."""
    p = bath.excitation
    return 1.0 / (bath.m_atoms * bath.epsilon * p * (1.0 - p))


def sigma_beta_sn_theory(bath: BathSpec, n_shots: int) -> float:
    """Predicted beta spread of the single-atom protocol.

    The count spread ``sigma_m`` divided by the sensitivity ``|d<m>/dbeta| =
    m_atoms * epsilon * p * (1-p)``; falls as ``n_shots**-0.5``.
    """
    return sigma_m_sn_theory(bath.theta, n_shots) * _inverse_mean_slope(bath)


def sigma_beta_h_theory(bath: BathSpec, n_atoms: int) -> float:
    """Predicted beta spread of one entangled-probe shot: the same sensitivity
    quotient as the single-atom case with ``1/sqrt(N)`` replaced by ``1/N``."""
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be at least 1, got {n_atoms}")
    return (1.0 / (n_atoms * bath.theta)) * _inverse_mean_slope(bath)


def dephasing_visibility(bath: BathSpec, n_atoms: int) -> float:
    """Fringe visibility when the bath count is resampled every shot.

    The accumulated phase ``n_atoms * theta * m`` then fluctuates with ``m``,
    and the contrast is the magnitude of the binomial characteristic function:
    ``|1 - p + p * exp(1j * n_atoms * theta)| ** m_atoms``.
    """
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be at least 1, got {n_atoms}")
    p = bath.excitation
    phasor = (1.0 - p) + p * cmath.exp(1j * n_atoms * bath.theta)
    return abs(phasor) ** bath.m_atoms


def measure_fringe_visibility(
    bath: BathSpec,
    n_atoms: int,
    shots: int,
    phase_points: int,
    rng: RngStream,
) -> float:
    """Monte Carlo fringe visibility with per-shot bath resampling.

    Scans a reference phase over ``phase_points`` even steps of ``[0, 2*pi)``,
    estimates the port probability at each step from ``shots / phase_points``
    single shots (each with a freshly drawn bath count), and reads the fringe
    amplitude off the first Fourier coefficient, which is exact on an even
    grid of three or more points.
    """
    if phase_points < 3:
        raise ValueError(f"phase_points must be at least 3, got {phase_points}")
    shots_per_point = shots // phase_points
    if shots_per_point < 1:
        raise ValueError("need at least one shot per phase point")
    p = bath.excitation
    coefficient = 0.0 + 0.0j
    for j in range(phase_points):
        delta = 2.0 * math.pi * j / phase_points
        gen = rng.substream(j).generator()
        ms = gen.binomial(bath.m_atoms, p, size=shots_per_point)
        port_probs = np.cos((n_atoms * bath.theta * ms + delta) / 2.0) ** 2
        hits = gen.random(shots_per_point) < port_probs
        coefficient += hits.mean() * cmath.exp(-1j * delta)
    return 4.0 * abs(coefficient) / phase_points
