"""Closed-form thermal statistics of a two-level ensemble, checked against
brute force.

Walks through the quantities everything else builds on: the excited-level
population, the partition-sum statistics, the Fisher information, and the
precision bound they imply for any estimate of the inverse temperature.
"""

import math

from thermoscale import (
    TwoLevelSpec,
    cr_bound_sigma,
    doppler_precision,
    enumerate_thermal,
    excitation_probability,
    fig1_curves,
    invert_mean_fraction,
    shot_noise_sigma_beta,
    thermal_summary,
)

print("=== One atom, varying coldness ===")
print(f"{'beta*eps':>9} {'population':>11} {'eps_bar':>9} {'eps_prime':>10}")
for x in (0.0, 0.5, 1.0, 2.0, 5.0):
    s = thermal_summary(TwoLevelSpec(1, 1.0), x)
    print(f"{x:9.2f} {excitation_probability(1.0, x):11.5f} {s.eps_bar:9.5f} {s.eps_prime:10.5f}")

print()
print("=== Closed forms vs exhaustive enumeration (N = 10, 2^10 states) ===")
spec = TwoLevelSpec(10, 1.0)
for beta in (0.3, 1.0, 2.5):
    z, mean, var = enumerate_thermal(10, 1.0, beta)
    s = thermal_summary(spec, beta)
    print(
        f"beta={beta:4.1f}  mean: closed {s.mean_energy:.10f} vs enum {mean:.10f}   "
        f"var: closed {s.energy_variance:.10f} vs enum {var:.10f}"
    )

print()
print("=== Fisher information and the precision floor ===")
s = thermal_summary(TwoLevelSpec(100, 1.0), 1.0)
print(f"N=100, beta=1: F(beta) = sigma_E^2 = {s.fisher_info:.6f}")
print(f"information floor 1/sqrt(F)      = {cr_bound_sigma(s.fisher_info):.6f}")
print(f"shot_noise_sigma_beta            = {shot_noise_sigma_beta(TwoLevelSpec(100, 1.0), 1.0):.6f}")
print("(identical by construction: the energy measurement saturates the bound)")

print()
print("=== Scaled uncertainty curve: sqrt(N) * sigma_beta * eps vs beta*eps ===")
rows = fig1_curves(1.0, [0.25 * i for i in range(9)])
print(f"{'beta*eps':>9} {'eps_bar/eps':>12} {'scaled sigma':>13}")
for x, frac, scaled in rows:
    bars = "#" * int(round(4 * scaled))
    print(f"{x:9.2f} {frac:12.5f} {scaled:13.5f}  {bars}")
print("minimum 2.0 sits at beta*eps = 0 and the curve only climbs from there")

print()
print("=== Estimator inversion round trip ===")
beta = 1.7
p = excitation_probability(1.0, beta)
print(f"beta = {beta} -> population {p:.6f} -> recovered {invert_mean_fraction(p, 1.0):.6f}")

print()
print("=== Beam-flux thermometry scale ===")
rate, tau = 1e15, 1.0
print(
    f"flux {rate:.0e} atoms/s integrated {tau:.0f} s: relative precision "
    f"{doppler_precision(rate, tau):.2e} (one part in 10^{-math.log10(doppler_precision(rate, tau)):.1f})"
)
