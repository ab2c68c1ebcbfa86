"""Brute-force references for validating every closed form at small size.

Nothing here knows the closed forms it is checking. Thermal statistics are
literal sums over all 2**N configurations, interaction phases come from
counting excited pairs in an explicit configuration, interferometer
probabilities come from multiplying out small complex state vectors, and the
mixing visibility is a direct probability-weighted phasor sum. Size guards
fail loudly; an oracle must never silently degrade into an approximation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

MAX_ENUM_ATOMS = 16
MAX_NOON_ATOMS = 8
MAX_COMBINED_ATOMS = 24


class SizeGuardError(ValueError):
    """A brute-force call exceeded the exact-enumeration size guard."""


@dataclass(frozen=True)
class ConfigurationBasis:
    """Joint configuration space of a thermometer and a bath of two-level atoms.

    States are labelled by bitstrings, one bit per atom, bit set meaning the
    atom is excited. Guards keep exhaustive work within 2**16 per subsystem
    and 24 atoms per combined call.
    """

    n_thermometer: int
    m_bath: int

    def __post_init__(self) -> None:
        if not 0 <= self.n_thermometer <= MAX_ENUM_ATOMS:
            raise SizeGuardError(
                f"n_thermometer={self.n_thermometer} outside [0, {MAX_ENUM_ATOMS}]"
            )
        if not 0 <= self.m_bath <= MAX_ENUM_ATOMS:
            raise SizeGuardError(f"m_bath={self.m_bath} outside [0, {MAX_ENUM_ATOMS}]")
        if self.n_thermometer + self.m_bath > MAX_COMBINED_ATOMS:
            raise SizeGuardError(
                f"combined size {self.n_thermometer + self.m_bath} exceeds {MAX_COMBINED_ATOMS}"
            )


def enumerate_thermal(n_atoms: int, epsilon: float, beta: float) -> tuple[float, float, float]:
    """Partition sum, mean energy and energy variance by exhaustive enumeration.

    Sums over all 2**n_atoms configurations of the ensemble. Two passes keep
    the variance free of catastrophic cancellation.
    """
    if not 1 <= n_atoms <= MAX_ENUM_ATOMS:
        raise SizeGuardError(f"n_atoms={n_atoms} outside [1, {MAX_ENUM_ATOMS}]")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not beta >= 0:
        raise ValueError(f"beta must be nonnegative, got {beta}")

    z = 0.0
    weighted_energy = 0.0
    for config in range(2**n_atoms):
        energy = config.bit_count() * epsilon
        weight = math.exp(-beta * energy)
        z += weight
        weighted_energy += weight * energy
    mean_energy = weighted_energy / z

    weighted_sq_dev = 0.0
    for config in range(2**n_atoms):
        energy = config.bit_count() * epsilon
        weight = math.exp(-beta * energy)
        weighted_sq_dev += weight * (energy - mean_energy) ** 2
    return z, mean_energy, weighted_sq_dev / z


def branch_phase(n_thermometer: int, m_excited_bath: int, theta: float) -> float:
    """Phase accumulated by an all-excited thermometer passing an excited bath.

    Builds the configuration explicitly (every thermometer atom excited,
    ``m_excited_bath`` bath atoms excited) and counts excited pairs under the
    pairwise diagonal coupling, instead of using the product formula. The
    result is ``theta`` per excited pair, i.e. ``n * m * theta``.
    """
    ConfigurationBasis(n_thermometer, m_excited_bath)  # size guards
    thermometer = [1] * n_thermometer
    bath = [1] * m_excited_bath
    excited_pairs = 0
    for occ_j in thermometer:
        for occ_k in bath:
            excited_pairs += occ_j * occ_k
    return excited_pairs * theta


def noon_probs_exact(n_atoms: int, phi_b: float) -> tuple[float, float]:
    """Exact output-port probabilities of the all-atoms-one-arm interferometer.

    Works on the two-dimensional subspace spanned by "all N atoms in arm 3"
    and "all N atoms in arm 4". The state vector is built explicitly: the
    opening splitter, a phase of ``n_atoms * phi_b`` on the bath arm, and the
    closing splitter are successive 2x2 complex matrix products. Returns the
    squared magnitudes ``(p_port3, p_port4)``.
    """
    if not 1 <= n_atoms <= MAX_NOON_ATOMS:
        raise SizeGuardError(f"n_atoms={n_atoms} outside [1, {MAX_NOON_ATOMS}]")
    splitter = np.array([[1.0, 1.0j], [1.0j, 1.0]], dtype=complex) / math.sqrt(2.0)
    state = np.array([1.0 + 0.0j, 0.0 + 0.0j])  # all atoms entering by one port
    state = splitter @ state
    state = np.array([state[0], state[1] * cmath.exp(1j * n_atoms * phi_b)])
    state = splitter @ state
    return float(abs(state[0]) ** 2), float(abs(state[1]) ** 2)


def mixed_bath_visibility_exact(m_atoms: int, p: float, n_phase: float) -> float:
    """Fringe visibility under per-shot bath resampling, by direct phasor sum.

    Evaluates ``|sum_m Binom(m; M, p) * exp(1j * n_phase * m)|`` term by term.
    """
    if not 1 <= m_atoms <= MAX_ENUM_ATOMS:
        raise SizeGuardError(f"m_atoms={m_atoms} outside [1, {MAX_ENUM_ATOMS}]")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    total = 0.0 + 0.0j
    for m in range(m_atoms + 1):
        weight = math.comb(m_atoms, m) * p**m * (1.0 - p) ** (m_atoms - m)
        total += weight * cmath.exp(1j * n_phase * m)
    return abs(total)
