"""Quantum-number configurations: ground states and excitation families.

Ground states of every reference ordering are symmetric consecutive runs
of quantum numbers centered at zero. Low-lying excitations are built by
rearranging finitely many quantum numbers:

* particle-hole: remove one I from the symmetric sequence, append one
  outside it;
* add one fermion: flip one boson into a fermion (population change);
  the charge numbers fill a symmetric (N+1)-slot window minus one hole,
  and one auxiliary quantum number J1 parameterizes the new branch;
* two fermions: two auxiliary quantum numbers (same species, or one of
  each with the third-level number forced to zero).

Each generated configuration is parity-valid for its population by
construction. Energies are always reported relative to the ordering's
global (all-boson) ground state.

All three orderings describe the same physical states: solved spectra
agree state by state in (E, P) once the quantum numbers are mapped
between orderings, and :func:`sector_ground` gives identical sector
minima wherever every ordering admits real roots. (Sectors with both
fermion species present and bosons left over need non-real root pairs
in the bff ordering; the ffb ordering reaches them with real roots,
which is why population scans prefer it.)
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

import numpy as np

from .bae import (InvalidConfig, MixtureSpec, NonConvergence, Observables,
                  QuantumNumberConfig, RootSet, default_initial_guess,
                  energy_momentum, required_parities, solve)


def _sym_run(count: int) -> tuple[int, ...]:
    """Doubled values of the symmetric consecutive run of ``count`` slots."""
    return tuple(2 * j - (count - 1) for j in range(count))


def _parity_values(lo: int, hi: int, parity: int) -> list[int]:
    """Doubled values in [lo, hi] with the given parity."""
    start = lo if lo % 2 == parity else lo + 1
    return list(range(start, hi + 1, 2))


def _offset_runs(count: int, parity: int,
                 max_shift: int = 1) -> list[tuple[int, ...]]:
    """Consecutive runs of given length and parity, near-symmetric.

    All consecutive runs whose center is within ``max_shift`` full steps
    of zero: the symmetric run and its whole-step translates when the
    parity matches, else the half-step translates on either side. The
    families of a sector minimum need not all be centered (their
    centers compensate each other's momentum), so a sector scan must
    enumerate these combinations rather than only the symmetric runs.
    """
    if count == 0:
        return [()]
    anchor = _sym_run(count)
    if (count - 1) % 2 == parity:
        shifts = [2 * t for t in range(-max_shift, max_shift + 1)]
    else:
        shifts = sorted({s for t in range(-max_shift, max_shift + 1)
                         for s in (2 * t - 1, 2 * t + 1)
                         if abs(s) <= 2 * max_shift + 1})
    return [tuple(v + s for v in anchor) for s in shifts]


def _two(value: float, name: str) -> int:
    doubled = round(2.0 * float(value))
    if abs(2.0 * float(value) - doubled) > 1e-9:
        raise InvalidConfig(f"{name} must be integer or half-odd, got {value}")
    return int(doubled)


def ground_populations(case: str, n: int) -> tuple[int, int]:
    """(M, M') of the ordering's all-boson ground state."""
    return {"bff": (0, 0), "fbf": (n, 0), "ffb": (n, n)}[case]


def _require_ground_population(spec: MixtureSpec) -> None:
    want = ground_populations(spec.case, spec.n)
    if (spec.m, spec.mp) != want:
        raise InvalidConfig(
            f"{spec.case} ground state has (M, M') = {want}, "
            f"got ({spec.m}, {spec.mp})")


def ground_state_numbers(spec: MixtureSpec) -> QuantumNumberConfig:
    """Symmetric consecutive quantum numbers of the all-boson ground state."""
    _require_ground_population(spec)
    pi_, pj, pjp = required_parities(spec)
    runs = []
    for count, parity in ((spec.n, pi_), (spec.m, pj), (spec.mp, pjp)):
        run = _sym_run(count)
        if count and (count - 1) % 2 != parity:
            raise InvalidConfig("no symmetric run with the required parity")
        runs.append(run)
    return QuantumNumberConfig(*runs)


def sector_ground(spec: MixtureSpec, max_shift: int = 1
                  ) -> tuple[QuantumNumberConfig, RootSet, Observables]:
    """Lowest-energy consecutive-run configuration of a (M, M') sector.

    Enumerates near-symmetric consecutive runs of each family (see
    :func:`_offset_runs`; a single-member family instead sweeps every
    slot of the charge window, since its minimizing position can sit at
    the window edge), solves every combination, and returns the
    minimizer; ties broken by smaller |P|, then lexicographically.
    Candidates that do not converge (or converge to a non-regular
    runaway) are skipped; raises NonConvergence if none survives. With
    the default ``max_shift`` the minimum over candidates matches
    exhaustive in-window enumeration for every small-N sector tested
    (the ffb ordering in particular; bff cannot express some mixed
    sectors with real roots at all).
    """
    pi_, pj, pjp = required_parities(spec)

    def candidates(count: int, parity: int) -> list[tuple[int, ...]]:
        if count == 1:
            return [(v,) for v in _parity_values(-spec.n, spec.n, parity)]
        return _offset_runs(count, parity, max_shift)

    combos = product(candidates(spec.n, pi_),
                     candidates(spec.m, pj),
                     candidates(spec.mp, pjp))
    best = None
    for two_i, two_j, two_jp in combos:
        qn = QuantumNumberConfig(two_i, two_j, two_jp)
        try:
            roots = solve(spec, qn)
        except NonConvergence:
            continue
        obs = energy_momentum(spec, qn, roots)
        key = (obs.E, abs(obs.P), two_i, two_j, two_jp)
        if best is None or key < best[0]:
            best = (key, qn, roots, obs)
    if best is None:
        raise NonConvergence("no sector candidate converged", float("inf"))
    return best[1], best[2], best[3]


def particle_hole_numbers(spec: MixtureSpec, hole_position: int,
                          particle_number: float) -> QuantumNumberConfig:
    """Ground sequence with the hole_position-th I removed and a new one
    appended beyond the right edge of the sequence."""
    base = ground_state_numbers(spec)
    if not 1 <= hole_position <= spec.n:
        raise InvalidConfig(f"hole_position must be in 1..{spec.n}")
    two_p = _two(particle_number, "particle_number")
    pi_ = required_parities(spec)[0]
    if two_p % 2 != pi_:
        raise InvalidConfig("particle_number has the wrong parity")
    if two_p <= spec.n - 1:
        raise InvalidConfig("particle_number must lie outside the sequence")
    kept = list(base.two_i)
    del kept[hole_position - 1]
    if two_p in kept:
        raise InvalidConfig("particle_number collides with an existing I")
    return QuantumNumberConfig(tuple(sorted(kept + [two_p])),
                               base.two_j, base.two_jp)


def _one_fermion_population(case: str, n: int) -> tuple[int, int]:
    """(M, M') of the one-spin-up-fermion sector per ordering."""
    return {"bff": (1, 0), "fbf": (n - 1, 0), "ffb": (n - 1, n - 1)}[case]


def add_fermion_numbers(spec: MixtureSpec, j1: float, *,
                        i_hole: Optional[float] = None
                        ) -> QuantumNumberConfig:
    """One-fermion-sector configuration parameterized by J1.

    The sector replaces one boson by a spin-up fermion; its population
    per ordering is bff (M, M') = (1, 0); fbf (N-1, 0); ffb
    (N-1, N-1). All three orderings share one structure (their solved
    spectra coincide state by state):

    * charge: I fill the symmetric (N+1)-slot window minus one hole
      (``i_hole``; default the window edge on the side opposite J1,
      which minimizes |P| along the branch);
    * spin: J1, a slot of the symmetric N-slot window with
      |J1| < (N-1)/2, is the single J (bff) or the hole position in
      the otherwise full J window (fbf, ffb);
    * ffb third level: J' fill the symmetric (N-1)-slot run (the
      remaining boson sea; no freedom).
    """
    n = spec.n
    want = _one_fermion_population(spec.case, n)
    if (spec.m, spec.mp) != want:
        raise InvalidConfig(
            f"one-fermion sector of {spec.case} has (M, M') = {want}")
    two_j1 = _two(j1, "J1")
    pj = required_parities(spec)[1]
    if two_j1 % 2 != pj:
        raise InvalidConfig("J1 has the wrong parity")
    if abs(two_j1) >= n - 1:
        raise InvalidConfig("J1 must satisfy |J1| < (N-1)/2")

    window = _sym_run(n + 1)
    if i_hole is None:
        two_hole = window[0] if two_j1 >= 0 else window[-1]
    else:
        two_hole = _two(i_hole, "i_hole")
        if two_hole not in window:
            raise InvalidConfig("i_hole must be a window slot")
    two_i = tuple(v for v in window if v != two_hole)

    if spec.case == "bff":
        return QuantumNumberConfig(two_i, (two_j1,), ())
    two_j = tuple(v for v in _sym_run(n) if v != two_j1)
    if spec.case == "fbf":
        return QuantumNumberConfig(two_i, two_j, ())
    return QuantumNumberConfig(two_i, two_j, _sym_run(n - 1))


def two_fermion_numbers(spec: MixtureSpec, j1: float,
                        j2: float) -> QuantumNumberConfig:
    """Two-fermion-sector configuration (bff ordering, M = 2).

    M' = 0 puts both quantum numbers in the J family; M' = 1 (one fermion
    of each species) forces the single J' to zero. J1 < J2 within
    |J| <= (N-1)/2; equal values are rejected (no two equal quantum
    numbers in one family).
    """
    if spec.case != "bff" or spec.m != 2 or spec.mp not in (0, 1):
        raise InvalidConfig("two-fermion sector expects bff with M=2, M'<=1")
    two_1, two_2 = _two(j1, "J1"), _two(j2, "J2")
    if two_1 == two_2:
        raise InvalidConfig("J1 = J2 is excluded (equal quantum numbers)")
    if two_1 > two_2:
        raise InvalidConfig("need J1 < J2")
    pi_, pj, pjp = required_parities(spec)
    n = spec.n
    for v in (two_1, two_2):
        if v % 2 != pj:
            raise InvalidConfig("J has the wrong parity")
        if abs(v) > n - 1:
            raise InvalidConfig("J must satisfy |J| <= (N-1)/2")
    two_i = _sym_run(n)
    if (n - 1) % 2 != pi_:
        raise InvalidConfig("no symmetric charge run with required parity")
    two_jp = (0,) if spec.mp == 1 else ()
    return QuantumNumberConfig(two_i, (two_1, two_2), two_jp)


@dataclass(frozen=True)
class GroundState:
    pass


@dataclass(frozen=True)
class ParticleHole:
    holes: Optional[tuple[int, ...]] = None
    particles: Optional[tuple[float, ...]] = None


@dataclass(frozen=True)
class AddOneFermion:
    """Sweep of J1 (default: all admissible slots); with ``all_variants``
    the charge hole position is swept over the full window as well.
    """

    j1_values: Optional[tuple[float, ...]] = None
    all_variants: bool = False


@dataclass(frozen=True)
class TwoFermions:
    pairs: Optional[tuple[tuple[float, float], ...]] = None
    mp: int = 0


@dataclass(frozen=True)
class DispersionPoint:
    p: float
    de: float
    status: str
    params: tuple


def _add_fermion_sweep(spec: MixtureSpec, family: AddOneFermion
                       ) -> list[tuple[tuple, MixtureSpec,
                                       QuantumNumberConfig]]:
    n = spec.n
    m, mp = _one_fermion_population(spec.case, n)
    sub = MixtureSpec(spec.case, n, m, mp, spec.L, spec.c)
    pj = required_parities(sub)[1]
    if family.j1_values is not None:
        two_js = [_two(v, "J1") for v in family.j1_values]
    else:
        two_js = _parity_values(-(n - 2), n - 2, pj)
    window = _sym_run(n + 1)
    variants = window if family.all_variants else (None,)
    entries = []
    for two_hole in variants:
        for tj in two_js:
            if two_hole is None:
                hole_used = window[0] if tj >= 0 else window[-1]
                qn = add_fermion_numbers(sub, tj / 2.0)
            else:
                hole_used = two_hole
                qn = add_fermion_numbers(sub, tj / 2.0,
                                         i_hole=two_hole / 2.0)
            entries.append(((hole_used / 2.0, tj / 2.0), sub, qn))
    return entries


def dispersion(spec: MixtureSpec,
               family) -> list[DispersionPoint]:
    """Sweep one excitation family into (P, dE) points.

    ``spec`` must carry the ordering's ground-state population; energies
    are relative to that ground state. Points are ordered by sweep index;
    each point warm-starts from the previous convergent solution. Failed
    points are kept with status "failed" (P from the exact quantum
    numbers, dE = nan).
    """
    _require_ground_population(spec)
    qn0 = ground_state_numbers(spec)
    roots0 = solve(spec, qn0)
    e0 = energy_momentum(spec, qn0, roots0).E
    n = spec.n

    entries: list[tuple[tuple, MixtureSpec, QuantumNumberConfig]] = []
    if isinstance(family, GroundState):
        entries.append(((), spec, qn0))
    elif isinstance(family, ParticleHole):
        holes = family.holes or tuple(range(1, n + 1))
        if family.particles is not None:
            two_ps = [_two(v, "particle_number") for v in family.particles]
        else:
            two_ps = [n - 1 + 2 * t for t in range(1, n + 1)]
        for hole in holes:
            for two_p in two_ps:
                qn = particle_hole_numbers(spec, hole, two_p / 2.0)
                entries.append(((float(hole), two_p / 2.0), spec, qn))
    elif isinstance(family, AddOneFermion):
        entries.extend(_add_fermion_sweep(spec, family))
    elif isinstance(family, TwoFermions):
        sub = MixtureSpec("bff", n, 2, family.mp, spec.L, spec.c)
        pj = required_parities(sub)[1]
        if family.pairs is not None:
            pairs = [(_two(a, "J1"), _two(b, "J2")) for a, b in family.pairs]
        else:
            slots = _parity_values(-(n - 1), n - 1, pj)
            pairs = [(a, b) for i, a in enumerate(slots)
                     for b in slots[i + 1:]]
        for ta, tb in pairs:
            qn = two_fermion_numbers(sub, ta / 2.0, tb / 2.0)
            entries.append(((ta / 2.0, tb / 2.0), sub, qn))
    else:
        raise InvalidConfig(f"unknown excitation family {family!r}")

    points = []
    prev: Optional[np.ndarray] = None
    for params, sub, qn in entries:
        init = None
        if prev is not None and prev.size == sub.n + sub.m + sub.mp:
            init = RootSet(k=prev[:sub.n],
                           lam=prev[sub.n:sub.n + sub.m],
                           mu=prev[sub.n + sub.m:])
        try:
            roots = solve(sub, qn, init=init)
        except NonConvergence:
            try:
                roots = solve(sub, qn)  # retry cold
            except NonConvergence:
                obs_p = energy_momentum(sub, qn, RootSet(
                    k=np.zeros(sub.n), lam=np.zeros(sub.m),
                    mu=np.zeros(sub.mp))).P
                points.append(DispersionPoint(p=obs_p, de=float("nan"),
                                              status="failed", params=params))
                prev = None
                continue
        obs = energy_momentum(sub, qn, roots)
        points.append(DispersionPoint(p=obs.P, de=obs.E - e0,
                                      status="ok", params=params))
        prev = np.concatenate([roots.k, roots.lam, roots.mu])
    return points


def density_histogram(spec: MixtureSpec,
                      roots: RootSet) -> tuple[np.ndarray, np.ndarray]:
    """Discrete root density rho(k) = 1/(L (k_{j+1} - k_j)) at midpoints.

    Bin edges are the solved charge roots themselves; no smoothing.
    """
    k = np.sort(roots.k)
    gaps = np.diff(k)
    if np.any(gaps <= 0):
        raise InvalidConfig("charge roots must be distinct")
    mid = 0.5 * (k[1:] + k[:-1])
    return mid, 1.0 / (spec.L * gaps)
