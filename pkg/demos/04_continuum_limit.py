"""Thermodynamic-limit ground state and its two closed-form limits.

Solves the continuum density equation at unit particle density for a range
of couplings, compares against the weak- and strong-coupling expansions,
checks the finite-size energy per particle against the continuum value, and
evaluates dressed excitation energies at representative points.
"""

import numpy as np

from bfmix.bae import MixtureSpec
from bfmix.excitations import sector_ground
from bfmix.thermo import fermion_dressed_energy, hole_energy, solve_ground_density


def main() -> None:
    density = 1.0
    print("Continuum ground state at unit density")
    print("=" * 54)
    print(f"  {'c':>8s} {'k_F':>10s} {'E/L':>12s} {'nodes':>6s}   closest closed form")
    for c in (0.01, 0.1, 1.0, 10.0, 100.0, 1e6):
        prof = solve_ground_density(density, c)
        gamma = c / density
        if gamma < 0.5:
            ref = c * density ** 2 * (1 - 4 * np.sqrt(gamma) / (3 * np.pi))
            tag = f"weak expansion {ref:.6f}"
        else:
            ref = density ** 3 * np.pi ** 2 / 3 * (1 + 2 * density / c) ** -2
            tag = f"strong expansion {ref:.6f}"
        print(f"  {c:8g} {prof.k_f:10.6f} {prof.energy_density:12.8f} "
              f"{prof.nodes:6d}   {tag}")

    print()
    print("Finite system vs continuum (energy per particle, N = 42):")
    for c in (1.0, 10.0):
        _, _, obs = sector_ground(MixtureSpec("bff", 42, 0, 0, 42.0, c))
        prof = solve_ground_density(1.0, c)
        print(f"  c = {c:4g}: finite {obs.E / 42:.8f}  continuum "
              f"{prof.energy_density:.8f}  (rel. {abs(obs.E / 42 / prof.energy_density - 1):.2e})")

    print()
    print("Dressed excitation energies at c = 1 (unit density):")
    prof = solve_ground_density(1.0, 1.0)
    for kbar in (0.0, 0.5 * prof.k_f, prof.k_f):
        print(f"  hole at k = {kbar:8.5f}: {hole_energy(prof, kbar):+.8f}")
    for lam in (0.0, prof.k_f, 2 * prof.k_f):
        print(f"  fermion at lambda = {lam:8.5f}: {fermion_dressed_energy(prof, lam):+.8f}")


if __name__ == "__main__":
    main()
