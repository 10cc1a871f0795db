"""Floquet cycle of the driven clock chain.

One drive period applies a global kick, a fractional power of the shift
at every site, followed by the fused diagonal phases of the chain:

    U_F = exp(-i * diag(eps + eps')) * kick^(x N)

so states are kicked first and then accumulate the diagonal energies.
At kick strength g = 1 the standard kick is exactly the shift X at every
site and the model is solvable; g < 1 detunes the rotation.

The "subspace" kick variant interpolates a two-level drive inside {1,2}
instead: kick = X12^(1-g) @ X^g, so g = 0 swaps |1><->|2| exactly and
g = 1 recovers the full clock shift.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import (
    OMEGA,
    QutritState,
    apply_local,
    clock_phase_table,
    fractional_power,
    shift_x,
    subspace_x12,
)
from .model import ChainParams, diagonal_energies
from . import observables as obs

__all__ = [
    "DEFAULT_MAX_SITES",
    "KickSpec",
    "kick_matrix",
    "FloquetOperator",
    "build_floquet",
    "apply_cycle",
    "TrajectoryRecord",
    "run_trajectory",
    "autocorrelator_trajectory",
]

# 3**14 complex amplitudes is ~77 MB; past that a dense vector stops
# being a desk-scale object.
DEFAULT_MAX_SITES = 14

_KICK_VARIANTS = ("standard", "subspace")


@dataclass(frozen=True)
class KickSpec:
    """Kick strength g in [0, 1] and drive variant."""

    g: float
    variant: str = "standard"

    def __post_init__(self):
        if not 0.0 <= self.g <= 1.0:
            raise ValueError(f"kick strength g must be in [0, 1], got {self.g}")
        if self.variant not in _KICK_VARIANTS:
            raise ValueError(f"variant must be one of {_KICK_VARIANTS}")


def kick_matrix(spec: KickSpec) -> np.ndarray:
    """Single-site kick unitary for one drive period."""
    if spec.variant == "standard":
        return fractional_power(shift_x(), spec.g)
    # subspace drive: residual two-level rotation times a partial shift
    return fractional_power(subspace_x12(), 1.0 - spec.g) @ fractional_power(
        shift_x(), spec.g
    )


@dataclass(frozen=True, eq=False)
class FloquetOperator:
    """One precomputed drive period: diagonal phases plus local kick."""

    n_sites: int
    diag_phases: np.ndarray  # exp(-i*(eps+eps')) over the 3**n basis
    kick: np.ndarray  # 3x3 single-site kick
    kick_spec: KickSpec


def build_floquet(
    params: ChainParams,
    kick: KickSpec,
    *,
    max_sites: int = DEFAULT_MAX_SITES,
) -> FloquetOperator:
    """Precompute the cycle for a parameter set."""
    if params.n_sites > max_sites:
        raise ValueError(
            f"n_sites = {params.n_sites} exceeds the state-vector budget "
            f"(max_sites = {max_sites}); raise max_sites deliberately if "
            "you have the memory"
        )
    phases = np.exp(-1j * diagonal_energies(params))
    return FloquetOperator(
        n_sites=params.n_sites,
        diag_phases=phases,
        kick=kick_matrix(kick),
        kick_spec=kick,
    )


def apply_cycle(op: FloquetOperator, state: QutritState) -> QutritState:
    """Advance the state by one drive period in place."""
    if state.n_sites != op.n_sites:
        raise ValueError("state and operator act on different chain sizes")
    for site in range(1, op.n_sites + 1):
        apply_local(state, site, op.kick)
    state.amplitudes *= op.diag_phases
    return state


# ── Trajectories ───────────────────────────────────────────────────────


class TrajectoryRecord:
    """Per-cycle observable time series, t = 0 (initial state) .. cycles.

    Attributes are None unless the probe was requested:
      populations      (cycles+1, n_sites, 3)
      magnetization    (cycles+1, n_sites)
      autocorrelator   dict site -> complex (cycles+1,)
      chi_ea           (cycles+1,)
      tomography       dict sites-tuple -> {"purity": ..., "entropy": ...}
    """

    def __init__(self, n_sites: int, cycles: int, probes: "obs.ObservableSet"):
        self.n_sites = n_sites
        self.cycles = cycles
        self.probes = probes
        t = cycles + 1
        self.populations = (
            np.zeros((t, n_sites, 3)) if probes.populations else None
        )
        self.magnetization = (
            np.zeros((t, n_sites)) if probes.magnetization else None
        )
        self.autocorrelator = {
            s: np.zeros(t, dtype=complex) for s in probes.autocorrelator_sites
        }
        self.chi_ea = np.zeros(t) if probes.chi_ea else None
        self.tomography = {
            sub: {"purity": np.zeros(t), "entropy": np.zeros(t)}
            for sub in probes.tomography
        }

    def autocorrelator_array(self) -> np.ndarray:
        """(n_tracked_sites, cycles+1) complex array in site order."""
        if not self.autocorrelator:
            raise ValueError("no autocorrelator sites were recorded")
        sites = sorted(self.autocorrelator)
        return np.stack([self.autocorrelator[s] for s in sites])

    def rows(self):
        """Canonical CSV rows (t, site, observable, re, im)."""
        for t in range(self.cycles + 1):
            if self.populations is not None:
                for s in range(self.n_sites):
                    for level in range(3):
                        yield (
                            t,
                            str(s + 1),
                            f"pop{level}",
                            self.populations[t, s, level],
                            0.0,
                        )
            if self.magnetization is not None:
                for s in range(self.n_sites):
                    yield t, str(s + 1), "mag", self.magnetization[t, s], 0.0
            for s in sorted(self.autocorrelator):
                a = self.autocorrelator[s][t]
                yield t, str(s), "autocorr", a.real, a.imag
            if self.chi_ea is not None:
                yield t, "all", "chi_ea", self.chi_ea[t], 0.0
            for sub in sorted(self.tomography):
                label = "+".join(str(s) for s in sub)
                rec = self.tomography[sub]
                yield t, label, "purity", rec["purity"][t], 0.0
                yield t, label, "entropy", rec["entropy"][t], 0.0

    def write_csv(self, path_or_file) -> None:
        close = False
        if isinstance(path_or_file, (str, bytes)) or hasattr(
            path_or_file, "__fspath__"
        ):
            f = open(path_or_file, "w", newline="")
            close = True
        else:
            f = path_or_file
        try:
            w = csv.writer(f)
            w.writerow(["t", "site", "observable", "re", "im"])
            for t, site, name, re, im in self.rows():
                w.writerow([t, site, name, repr(float(re)), repr(float(im))])
        finally:
            if close:
                f.close()


def _record_probes(rec: TrajectoryRecord, state: QutritState, t: int) -> None:
    if rec.populations is not None or rec.magnetization is not None:
        pops = obs.all_populations(state)
        if rec.populations is not None:
            rec.populations[t] = pops
        if rec.magnetization is not None:
            rec.magnetization[t] = pops[:, 0] - pops[:, 2]
    if rec.chi_ea is not None:
        rec.chi_ea[t] = obs.chi_ea(state, pairs=rec.probes.chi_pairs)
    for sub, out in rec.tomography.items():
        rho = obs.reduced_density(state, sub)
        out["purity"][t] = obs.purity(rho)
        out["entropy"][t] = obs.entropy(rho)


def run_trajectory(
    params: ChainParams,
    kick: KickSpec,
    psi0: QutritState,
    cycles: int,
    probes: "obs.ObservableSet | None" = None,
    *,
    max_sites: int = DEFAULT_MAX_SITES,
) -> TrajectoryRecord:
    """Evolve psi0 for the given number of cycles, recording probes.

    The t = 0 row is the unevolved initial state.  The autocorrelator at
    site j is A_j(t) = w^{-t} <psi(t)| Z_j |phi_j(t)> with the shadow
    state phi_j(t) the evolution of Z_j^dagger |psi0>.  When psi0 is a
    computational basis state the shadow is psi itself up to a fixed
    phase and the reduction A_j(t) = w^{-(t + s0_j)} <Z_j>_t is used, so
    no extra state vectors are evolved.
    """
    if cycles < 0:
        raise ValueError("cycles must be >= 0")
    if psi0.n_sites != params.n_sites:
        raise ValueError("initial state size does not match chain")
    if probes is None:
        probes = obs.ObservableSet()
    probes.validate(params.n_sites)

    op = build_floquet(params, kick, max_sites=max_sites)
    state = psi0.copy()
    rec = TrajectoryRecord(params.n_sites, cycles, probes)

    ztab = clock_phase_table(params.n_sites)
    ac_sites = probes.autocorrelator_sites
    basis = psi0.basis_trits() if ac_sites else None
    shadows: dict[int, QutritState] = {}
    if ac_sites and basis is None:
        for s in ac_sites:
            shadow = psi0.copy()
            shadow.amplitudes = shadow.amplitudes * np.conj(ztab[:, s - 1])
            shadows[s] = shadow

    def record_autocorr(t: int) -> None:
        if not ac_sites:
            return
        tick = np.exp(-2j * np.pi * t / 3)
        if basis is not None:
            probs = np.abs(state.amplitudes) ** 2
            for s in ac_sites:
                zexp = probs @ ztab[:, s - 1]
                rec.autocorrelator[s][t] = (
                    tick * OMEGA ** (-basis[s - 1]) * zexp
                )
        else:
            for s in ac_sites:
                val = np.vdot(
                    state.amplitudes,
                    ztab[:, s - 1] * shadows[s].amplitudes,
                )
                rec.autocorrelator[s][t] = tick * val

    _record_probes(rec, state, 0)
    record_autocorr(0)
    for t in range(1, cycles + 1):
        apply_cycle(op, state)
        for shadow in shadows.values():
            apply_cycle(op, shadow)
        _record_probes(rec, state, t)
        record_autocorr(t)
    return rec


def autocorrelator_trajectory(
    params: ChainParams,
    kick: KickSpec,
    psi0: QutritState,
    site: int,
    cycles: int,
    *,
    max_sites: int = DEFAULT_MAX_SITES,
) -> np.ndarray:
    """Clock autocorrelator A(t) at one site, t = 0..cycles.

    Always evolves the shadow state Z_site^dagger |psi0> alongside psi0
    (no basis-state shortcut), which makes it an independent cross-check
    of the reduction used inside run_trajectory.  At g = 1 with a
    computational basis initial state A(t) = 1 for all t.
    """
    if not 1 <= site <= params.n_sites:
        raise ValueError(f"site {site} out of range")
    if cycles < 0:
        raise ValueError("cycles must be >= 0")
    op = build_floquet(params, kick, max_sites=max_sites)
    ztab = clock_phase_table(params.n_sites)
    zcol = ztab[:, site - 1]

    state = psi0.copy()
    shadow = psi0.copy()
    shadow.amplitudes = shadow.amplitudes * np.conj(zcol)

    out = np.zeros(cycles + 1, dtype=complex)
    out[0] = np.vdot(state.amplitudes, zcol * shadow.amplitudes)
    for t in range(1, cycles + 1):
        apply_cycle(op, state)
        apply_cycle(op, shadow)
        out[t] = np.exp(-2j * np.pi * t / 3) * np.vdot(
            state.amplitudes, zcol * shadow.amplitudes
        )
    return out
