"""Ground-state phase diagrams in chemical potentials and Zeeman field.

A grand energy H = E - mu_B N_B - mu_f (N_up + N_down) - (h/2)(N_up -
N_down) is minimized over candidate compositions at fixed total particle
number N:

* weak coupling: free particles — bosons condense at zero momentum (zero
  energy), each fermion species fills distinct integer momentum levels
  k = (2 pi / L) I minimizing the kinetic sum.
* strong coupling: impenetrable particles — every composition carries
  the same hard-core Fermi sea (all N particles fill one free-fermion-
  like set of levels), so the internal energy is composition-independent
  and the diagram is decided by the chemical-potential terms alone. The
  level lattice is the cheaper of the integer and half-odd-integer
  ladders; ring-twist corrections of relative order 1/N^2 are dropped
  (at finite coupling they are what the general classifier resolves).
  Candidates are restricted to the same ordered composition set as the
  general classifier, of which this is the closed-form limit.
  Consequence worth noting: at large mu_f/mu_B the composition cap
  forces spin-down fermions even for h > 0 (paired corner), and the
  large-ratio region is paired (S) rather than fully polarized.
* general coupling: compositions (M, M') with N-M >= M-M' >= M' >= 0,
  each evaluated by solving its finite-c ground state exactly; sector
  energies are field-independent and cached across grid points.

All regimes minimize over one candidate set — the admissible sectors
and their exact spin mirrors (see :func:`candidate_compositions`) — so
their labels are comparable across the whole (ratio, h) plane. Exact
energy ties are broken toward more bosons, then more spin-up fermions,
so boundary points classify deterministically.

Labels: B (bosons only), BF1/BF2 (bosons + one polarized species),
S (bosons + equal nonzero spin populations), BF1F2 (bosons + unequal
nonzero spin populations), F1/F2 (single polarized species, no bosons),
F (equal spin populations, no bosons), F1F2 (unequal, no bosons).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bae import MixtureSpec, NonConvergence
from .excitations import sector_ground


@dataclass(frozen=True)
class FieldPoint:
    """Zeeman field and chemical potentials; ratio = mu_f / mu_B."""
    h: float
    mu_b: float
    mu_f: float

    @property
    def ratio(self) -> float:
        if self.mu_b == 0:
            raise ValueError("ratio undefined at mu_b = 0")
        return self.mu_f / self.mu_b

    @classmethod
    def from_ratio(cls, ratio: float, h: float,
                   mu_b: float = 1.0) -> "FieldPoint":
        if mu_b <= 0:
            raise ValueError("mu_b must be positive when ratio is the axis")
        return cls(h=h, mu_b=mu_b, mu_f=ratio * mu_b)


@dataclass(frozen=True)
class PhasePoint:
    populations: tuple[int, int, int]
    label: str
    excluded_sectors: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class ScanRow:
    ratio: float
    h: float
    n_b: int
    n_up: int
    n_down: int
    label: str


@dataclass
class PhaseScanResult:
    rows: list[ScanRow]
    excluded_sectors: tuple[tuple[int, int], ...] = ()


def classify(populations: tuple[int, int, int]) -> str:
    """Phase label from (N_B, N_up, N_down)."""
    n_b, up, dn = populations
    if min(populations) < 0:
        raise ValueError("populations must be non-negative")
    has_b = n_b > 0
    if up == 0 and dn == 0:
        if not has_b:
            raise ValueError("empty composition")
        return "B"
    if dn == 0:
        return "BF1" if has_b else "F1"
    if up == 0:
        return "BF2" if has_b else "F2"
    if up == dn:
        return "S" if has_b else "F"
    return "BF1F2" if has_b else "F1F2"


def grand_energy(populations: tuple[int, int, int], e: float,
                 fields: FieldPoint) -> float:
    """H = E - mu_B N_B - mu_f (N_up + N_down) - (h/2)(N_up - N_down)."""
    n_b, up, dn = populations
    return (e - fields.mu_b * n_b - fields.mu_f * (up + dn)
            - 0.5 * fields.h * (up - dn))


def young_sectors(n: int) -> list[tuple[int, int]]:
    """All (M, M') with N - M >= M - M' >= M' >= 0, deterministic order."""
    return [(m, mp) for m in range(n + 1) for mp in range(m // 2 + 1)
            if n - m >= m - mp]


def candidate_compositions(n: int) -> list[tuple[tuple[int, int],
                                                 tuple[int, int, int]]]:
    """(sector, populations) candidates: Young sectors and spin mirrors.

    Each admissible sector (M, M') carries populations
    (N-M, M-M', M'); when the spin populations differ, the mirrored
    composition (N-M, M', M-M') is an exact eigenstate of the same
    energy (the spin species only relabel the wavefunction), listed
    under the same sector. All three regime classifiers minimize over
    this one set, so their labels are comparable point by point —
    including the h < 0 half-plane, which the mirrors cover.
    """
    out = []
    for m, mp in young_sectors(n):
        pops = (n - m, m - mp, mp)
        out.append(((m, mp), pops))
        if pops[1] != pops[2]:
            out.append(((m, mp), (pops[0], pops[2], pops[1])))
    return out


def free_sea_energy(count: int) -> int:
    """Minimal sum of I^2 over ``count`` distinct integer levels."""
    if count < 0:
        raise ValueError("count must be non-negative")
    if count % 2:
        return (count ** 3 - count) // 12
    half = count // 2
    return 2 * sum(j * j for j in range(1, half)) + half * half if count \
        else 0


def lattice_min_sum(count: int, parity: int) -> float:
    """Minimal sum of (v/2)^2 over distinct doubled values of one parity."""
    if count == 0:
        return 0.0
    vals = sorted((v * v for v in range(-2 * count - 2, 2 * count + 3)
                   if (v % 2 + 2) % 2 == parity))
    return sum(vals[:count]) / 4.0


def _minimize(comps: list[tuple[int, int, int]], energies: list[float],
              fields: FieldPoint) -> tuple[tuple[int, int, int], float]:
    """Grand-energy minimizer with the larger-N_B / larger-N_up tie-break."""
    best = None
    for pops, e in zip(comps, energies):
        h = grand_energy(pops, e, fields)
        key = (h, -pops[0], -pops[1])
        if best is None or key < best[0]:
            best = (key, pops, h)
    assert best is not None
    return best[1], best[2]


def _weak_table(n: int, L: int | float
                ) -> tuple[list[tuple[int, int, int]], list[float]]:
    u = (2.0 * np.pi / L) ** 2
    s = [free_sea_energy(m) for m in range(n + 1)]
    comps, energies = [], []
    for _, (nb, up, dn) in candidate_compositions(n):
        comps.append((nb, up, dn))
        energies.append(u * (s[up] + s[dn]))
    return comps, energies


def weak_coupling_phase(fields: FieldPoint, n: int,
                        L: float) -> PhasePoint:
    """Free-particle minimizer over all compositions (bosons at zero k)."""
    comps, energies = _weak_table(n, L)
    pops, _ = _minimize(comps, energies, fields)
    return PhasePoint(populations=pops, label=classify(pops))


def _strong_table(n: int, L: float
                  ) -> tuple[list[tuple[int, int, int]], list[float]]:
    u = (2.0 * np.pi / L) ** 2
    e_sea = u * min(lattice_min_sum(n, 0), lattice_min_sum(n, 1))
    comps = [pops for _, pops in candidate_compositions(n)]
    return comps, [e_sea] * len(comps)


def strong_coupling_phase(fields: FieldPoint, n: int,
                          L: float) -> PhasePoint:
    """Impenetrable-limit minimizer (closed form); see module docstring."""
    comps, energies = _strong_table(n, L)
    pops, _ = _minimize(comps, energies, fields)
    return PhasePoint(populations=pops, label=classify(pops))


def sector_energy_table(c: float, n: int, L: float,
                        cache: Optional[dict] = None
                        ) -> tuple[list[tuple[int, int, int]], list[float],
                                   tuple[tuple[int, int], ...]]:
    """Ground energies of every admissible (M, M') sector at coupling c.

    Sectors are labeled by (M, M') with populations (N-M, M-M', M') and
    solved in the ffb ordering — populations (M', N-M, M-M') map to the
    ffb spec (N, N-M+M', N-M) — because that ordering reaches every
    admissible sector with real roots (the bff ordering needs non-real
    root pairs once both fermion species coexist with bosons). Sectors
    whose solver fails are excluded and reported. ``cache`` maps
    (m, mp) -> energy (NaN marks a recorded failure) and is filled on use.
    """
    if cache is None:
        cache = {}
    comps, energies, excluded = [], [], []
    for (m, mp), pops in candidate_compositions(n):
        if (m, mp) not in cache:
            spec = MixtureSpec("ffb", n, n - m + mp, n - m, L, c)
            try:
                cache[(m, mp)] = sector_ground(spec)[2].E
            except NonConvergence:
                cache[(m, mp)] = float("nan")
        e = cache[(m, mp)]
        if np.isnan(e):
            if (m, mp) not in excluded:
                excluded.append((m, mp))
            continue
        comps.append(pops)
        energies.append(e)
    if not comps:
        raise NonConvergence("every sector failed to converge", float("inf"))
    return comps, energies, tuple(excluded)


def general_phase(c: float, fields: FieldPoint, n: int, L: float,
                  cache: Optional[dict] = None) -> PhasePoint:
    """Exact finite-coupling minimizer over admissible compositions."""
    comps, energies, excluded = sector_energy_table(c, n, L, cache)
    pops, _ = _minimize(comps, energies, fields)
    return PhasePoint(populations=pops, label=classify(pops),
                      excluded_sectors=excluded)


def phase_scan(regime: str, ratio_values, h_values, *, c: float = 1.0,
               n: int = 42, L: float = 42.0, mu_b: float = 1.0,
               cache: Optional[dict] = None) -> PhaseScanResult:
    """Classify a (ratio, h) grid; rows ordered ratio-major, h-minor.

    Sector energies do not depend on the fields, so they are computed
    once and every grid point reduces to a vectorized minimization with
    the exact-tie preference for more bosons, then more spin-up.
    """
    if regime == "weak":
        comps, energies = _weak_table(n, L)
        excluded: tuple = ()
    elif regime == "strong":
        comps, energies = _strong_table(n, L)
        excluded = ()
    elif regime == "general":
        comps, energies, excluded = sector_energy_table(c, n, L, cache)
    else:
        raise ValueError(f"unknown regime {regime!r}")

    pop_arr = np.asarray(comps, dtype=float)
    e_arr = np.asarray(energies, dtype=float)
    n_b, up, dn = pop_arr[:, 0], pop_arr[:, 1], pop_arr[:, 2]
    pref = n_b * (n + 1) + up  # tie-break rank: bosons first, then spin-up

    rows = []
    for ratio in ratio_values:
        mu_f = ratio * mu_b
        for h in h_values:
            g = (e_arr - mu_b * n_b - mu_f * (up + dn)
                 - 0.5 * h * (up - dn))
            mask = g == g.min()
            idx = int(np.argmax(np.where(mask, pref, -1.0)))
            pops = tuple(int(v) for v in pop_arr[idx])
            rows.append(ScanRow(ratio=float(ratio), h=float(h),
                                n_b=pops[0], n_up=pops[1], n_down=pops[2],
                                label=classify(pops)))
    return PhaseScanResult(rows=rows, excluded_sectors=excluded)
