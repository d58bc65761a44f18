"""Ground-state roots across the coupling range.

Solves the condensate ground state for a small system at several couplings,
prints the charge roots, and shows two exact limits emerging:

* weak coupling: the energy approaches c * N * (N - 1) / L (mean-field
  pairwise contact energy) while all roots collapse toward zero;
* strong coupling: roots lock onto a uniform lattice with spacing
  2 pi / (L * (1 + 2 N / (c L))).
"""

import numpy as np

from bfmix.bae import MixtureSpec, energy_momentum, solve
from bfmix.excitations import ground_state_numbers


def main() -> None:
    n, L = 6, 6.0
    print(f"Condensate ground state, N = {n}, L = {L}")
    print("=" * 46)
    for c in (1e-3, 0.1, 1.0, 10.0, 100.0, 1e4):
        spec = MixtureSpec("bff", n, 0, 0, L, c)
        qn = ground_state_numbers(spec)
        roots = solve(spec, qn)
        obs = energy_momentum(spec, qn, roots)
        print(f"\nc = {c:g}")
        print("  k roots: " + "  ".join(f"{k:+.6f}" for k in roots.k))
        print(f"  E = {obs.E:.10f}   P = {obs.P:+.1e}")
        if c <= 0.1:
            mean_field = c * n * (n - 1) / L
            print(f"  weak-coupling pairwise estimate c*N*(N-1)/L = {mean_field:.10f}"
                  f"   (ratio {obs.E / mean_field:.4f})")
        if c >= 100.0:
            spacing = np.diff(roots.k)
            target = 2 * np.pi / (L * (1 + 2 * n / (c * L)))
            print(f"  lattice spacing {spacing.mean():.8f} vs closed form {target:.8f}"
                  f"   (max deviation {np.abs(spacing / target - 1).max():.2e})")

    print()
    print("The same state through the other two species orderings:")
    for case, m, mp in (("fbf", n, 0), ("ffb", n, n)):
        spec = MixtureSpec(case, n, m, mp, L, 1.0)
        qn = ground_state_numbers(spec)
        roots = solve(spec, qn)
        obs = energy_momentum(spec, qn, roots)
        print(f"  {case}(m={m}, mp={mp}): E = {obs.E:.12f}")
    spec = MixtureSpec("bff", n, 0, 0, L, 1.0)
    obs = energy_momentum(spec, ground_state_numbers(spec),
                          solve(spec, ground_state_numbers(spec)))
    print(f"  bff(m=0, mp=0):  E = {obs.E:.12f}")


if __name__ == "__main__":
    main()
