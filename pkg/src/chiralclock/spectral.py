"""Exact-diagonalization diagnostics of the Floquet operator.

Quasienergies live on the circle: eps = -arg(lambda) in [-pi, pi) for
each unitary eigenvalue lambda.  All gap and pairing measures below are
circular (computed modulo 2*pi), including the wraparound gap between
the largest and smallest quasienergy.

At kick strength g = 1 the drive is solvable: cubing the cycle cancels
the shift-covariant phases (a dynamical decoupling), the spectrum splits
into rigid triplets {eps, eps +- 2*pi/3} labeled by shift orbits, and
every eigenvector is a three-component cat state over one orbit with
phases fixed by eps'.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .algebra import OMEGA, all_trit_strings, shift_index_table, trits_to_string
from .model import (
    ChainParams,
    diagonal_energies,
    epsilon_prime_vector,
    epsilon_z3_vector,
    wrap_pm_pi,
)
from .floquet import KickSpec, kick_matrix

__all__ = [
    "DENSE_MAX_SITES",
    "dense_kick",
    "dense_floquet",
    "quasienergies",
    "analytic_g1_spectrum",
    "circular_gaps",
    "pairing_errors",
    "gap_ratio_stat",
    "SpectralReport",
    "spectral_report",
    "orbit_masses",
    "CatStateEntry",
    "CatStateReport",
    "cat_state_check",
]

# 3**8 = 6561: a dense cycle matrix at this size is ~0.7 GB, the edge of
# desk-scale exact diagonalization.
DENSE_MAX_SITES = 8


def dense_kick(kick: np.ndarray, n_sites: int) -> np.ndarray:
    """Kronecker power of a single-site kick over the chain."""
    out = np.array([[1.0 + 0j]])
    for _ in range(n_sites):
        out = np.kron(out, kick)
    return out


def dense_floquet(
    params: ChainParams,
    kick: KickSpec,
    *,
    max_sites: int = DENSE_MAX_SITES,
) -> np.ndarray:
    """Full 3**n x 3**n cycle unitary (diagonal phases after the kick)."""
    if params.n_sites > max_sites:
        raise ValueError(
            f"dense Floquet matrix for n_sites = {params.n_sites} exceeds "
            f"the exact-diagonalization budget (max_sites = {max_sites})"
        )
    phases = np.exp(-1j * diagonal_energies(params))
    k = dense_kick(kick_matrix(kick), params.n_sites)
    return phases[:, None] * k


def quasienergies(u: np.ndarray) -> np.ndarray:
    """Sorted quasienergies eps = -arg(eigenvalues) in [-pi, pi)."""
    vals = scipy.linalg.eigvals(np.asarray(u, dtype=complex), check_finite=False)
    return np.sort(-np.angle(vals))


def analytic_g1_spectrum(params: ChainParams) -> np.ndarray:
    """Solvable-point quasienergies without diagonalization.

    One triplet {eps, eps + 2*pi/3, eps - 2*pi/3} per shift orbit, with
    eps the shift-invariant bond energy of the orbit.  Orbit
    representatives are the basis states whose first trit is 0, i.e. the
    first 3**(n-1) indices.  Returned sorted in [-pi, pi).
    """
    n = params.n_sites
    reps = epsilon_z3_vector(params)[: 3 ** (n - 1)]
    trip = np.concatenate([reps, reps + 2 * np.pi / 3, reps - 2 * np.pi / 3])
    return np.sort(wrap_pm_pi(trip))


# ── Circular gap measures ──────────────────────────────────────────────


def circular_gaps(eps: np.ndarray) -> np.ndarray:
    """Adjacent gaps around the circle, wraparound included; sums to 2*pi."""
    e = np.sort(np.asarray(eps, dtype=float))
    if e.size < 2:
        raise ValueError("need at least two levels")
    gaps = np.empty(e.size)
    gaps[:-1] = np.diff(e)
    gaps[-1] = 2 * np.pi - (e[-1] - e[0])
    return gaps


def pairing_errors(eps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-level gap and triplet-pairing arrays (Delta_0, Delta_{2pi/3}).

    Delta_0[i] is the circular gap to the next level.  Delta_{2pi/3}[i]
    is the circular distance between 2*pi/3 and the directed distance
    from level i to its partner a third of the spectrum away; it
    vanishes identically on a perfectly tripled spectrum.
    """
    e = np.sort(np.asarray(eps, dtype=float))
    if e.size % 3 != 0 or e.size < 3:
        raise ValueError("spectrum size must be a positive multiple of 3")
    delta0 = circular_gaps(e)
    m = e.size // 3
    partner = np.roll(e, -m)  # partner[i] = e[(i + m) mod size]
    directed = np.mod(partner - e, 2 * np.pi)
    delta23 = np.abs(wrap_pm_pi(directed - 2 * np.pi / 3))
    return delta0, delta23


def gap_ratio_stat(eps: np.ndarray) -> float:
    """Mean adjacent-gap ratio <r> = <min/max> around the circle.

    Degenerate neighbors (0/0) count as r = 0 and stay in the mean.
    Poisson statistics give 2*ln 2 - 1 ~ 0.386, CUE gives ~ 0.600.
    """
    gaps = circular_gaps(eps)
    nxt = np.roll(gaps, -1)
    lo = np.minimum(gaps, nxt)
    hi = np.maximum(gaps, nxt)
    r = np.divide(lo, hi, out=np.zeros_like(lo), where=hi > 0)
    return float(np.mean(r))


# ── Report ─────────────────────────────────────────────────────────────

# above this dimension (N = 6) the spectrum array is elided from JSON
_REPORT_SPECTRUM_CAP = 729


@dataclass
class SpectralReport:
    """Summary statistics of one cycle spectrum."""

    quasienergies: np.ndarray
    delta0_mean: float
    delta23_mean: float
    r_mean: float
    n_sites: int | None = None
    g: float | None = None
    variant: str | None = None

    @classmethod
    def from_quasienergies(
        cls,
        eps: np.ndarray,
        *,
        n_sites: int | None = None,
        g: float | None = None,
        variant: str | None = None,
    ) -> "SpectralReport":
        d0, d23 = pairing_errors(eps)
        return cls(
            quasienergies=np.sort(np.asarray(eps, dtype=float)),
            delta0_mean=float(np.mean(d0)),
            delta23_mean=float(np.mean(d23)),
            r_mean=gap_ratio_stat(eps),
            n_sites=n_sites,
            g=g,
            variant=variant,
        )

    def to_dict(self, include_spectrum: bool | None = None) -> dict:
        if include_spectrum is None:
            include_spectrum = self.quasienergies.size <= _REPORT_SPECTRUM_CAP
        out = {
            "dim": int(self.quasienergies.size),
            "n_sites": self.n_sites,
            "g": self.g,
            "variant": self.variant,
            "delta0_mean": self.delta0_mean,
            "delta23_mean": self.delta23_mean,
            "r_mean": self.r_mean,
        }
        if include_spectrum:
            out["quasienergies"] = [float(x) for x in self.quasienergies]
        return out

    def to_json(self, include_spectrum: bool | None = None, **kwargs) -> str:
        kwargs.setdefault("sort_keys", True)
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(include_spectrum), **kwargs)


def spectral_report(
    params: ChainParams,
    kick: KickSpec,
    *,
    max_sites: int = DENSE_MAX_SITES,
) -> SpectralReport:
    """Diagonalize one cycle and summarize its spectrum."""
    u = dense_floquet(params, kick, max_sites=max_sites)
    eps = quasienergies(u)
    return SpectralReport.from_quasienergies(
        eps, n_sites=params.n_sites, g=kick.g, variant=kick.variant
    )


# ── Eigenvector structure ──────────────────────────────────────────────


def orbit_masses(
    vectors: np.ndarray, n_sites: int
) -> tuple[np.ndarray, np.ndarray]:
    """Probability mass of each eigenvector on its dominant shift orbit.

    vectors holds eigenvectors as columns.  Returns (masses, off_mass):
    masses[k] are the three orbit-member weights of column k starting
    from its dominant basis state, off_mass[k] the weight elsewhere.
    """
    v = np.asarray(vectors)
    shift = shift_index_table(n_sites)
    n_vec = v.shape[1]
    masses = np.empty((n_vec, 3))
    off = np.empty(n_vec)
    for k in range(n_vec):
        col = v[:, k]
        w = np.abs(col) ** 2
        a = int(np.argmax(w))
        orbit = (a, int(shift[a]), int(shift[shift[a]]))
        masses[k] = [w[o] for o in orbit]
        off[k] = float(np.sum(w) - np.sum(masses[k]))
    return masses, off


@dataclass
class CatStateEntry:
    quasienergy: float
    orbit_rep: str
    branch: int  # quasienergy = eps_orbit + branch * 2*pi/3
    masses: tuple[float, float, float]
    off_orbit_mass: float
    fidelity: float
    support_ok: bool
    phase_ok: bool

    @property
    def passes(self) -> bool:
        return self.support_ok and self.phase_ok


@dataclass
class CatStateReport:
    entries: list[CatStateEntry]
    mass_tol: float
    phase_tol: float

    @property
    def n_fail(self) -> int:
        return sum(not e.passes for e in self.entries)

    @property
    def all_pass(self) -> bool:
        return self.n_fail == 0

    def failures(self) -> list[CatStateEntry]:
        return [e for e in self.entries if not e.passes]


def cat_state_check(
    u: np.ndarray,
    params: ChainParams,
    *,
    mass_tol: float = 1e-8,
    phase_tol: float = 1e-8,
) -> CatStateReport:
    """Verify solvable-point eigenvector structure of a cycle unitary.

    Expects u built at g = 1 (standard kick).  Each eigenvector must
    carry mass (1/3, 1/3, 1/3) across a single shift orbit, and its
    relative phases must match the cat combination fixed by eps' of the
    orbit members:

        branch  0: (e^{-i a},      e^{+i c},      1) / sqrt(3)
        branch +1: (w  e^{-i a}, w^2 e^{+i c},    1) / sqrt(3)
        branch -1: (w^2 e^{-i a}, w  e^{+i c},    1) / sqrt(3)

    on (|rep>, |rep+1>, |rep+2>), where a = eps'(rep), c = eps'(rep+2)
    and branch b shifts the quasienergy by b * 2*pi/3 off the orbit's
    eps.  The representative is the orbit member whose first trit is 0.
    """
    n = params.n_sites
    u = np.asarray(u, dtype=complex)
    vals, vecs = scipy.linalg.eig(u)
    shift = shift_index_table(n)
    trits = all_trit_strings(n)
    eps_z3 = epsilon_z3_vector(params)
    eps_p = epsilon_prime_vector(params)

    entries = []
    for k in range(vals.size):
        col = vecs[:, k]
        col = col / np.linalg.norm(col)
        w = np.abs(col) ** 2
        a_idx = int(np.argmax(w))
        orbit = [a_idx, int(shift[a_idx]), int(shift[shift[a_idx]])]
        # canonical representative: the member whose first trit is 0
        rep_pos = next(i for i, o in enumerate(orbit) if trits[o, 0] == 0)
        orbit = orbit[rep_pos:] + orbit[:rep_pos]
        rep = orbit[0]

        masses = tuple(float(w[o]) for o in orbit)
        off = float(np.sum(w) - sum(masses))
        support_ok = off <= mass_tol and all(
            abs(m - 1.0 / 3.0) <= mass_tol for m in masses
        )

        alpha = eps_p[rep]
        gamma = eps_p[orbit[2]]
        base = np.array([np.exp(-1j * alpha), np.exp(1j * gamma), 1.0]) / np.sqrt(3)
        sub = col[orbit]
        best_fid, best_b = -1.0, 0
        for b, tw in ((0, 1.0), (1, OMEGA), (-1, OMEGA**2)):
            expected = base * np.array([tw, tw**2, 1.0])
            fid = abs(np.vdot(expected, sub))
            if fid > best_fid:
                best_fid, best_b = float(fid), b
        eps_comp = float(-np.angle(vals[k]))
        eps_want = eps_z3[rep] + best_b * 2 * np.pi / 3
        eps_err = abs(float(wrap_pm_pi(eps_comp - eps_want)))
        phase_ok = (1.0 - best_fid) <= phase_tol and eps_err <= 1e-8

        entries.append(
            CatStateEntry(
                quasienergy=eps_comp,
                orbit_rep=trits_to_string(trits[rep]),
                branch=best_b,
                masses=masses,
                off_orbit_mass=off,
                fidelity=best_fid,
                support_ok=support_ok,
                phase_ok=phase_ok,
            )
        )
    return CatStateReport(entries=entries, mass_tol=mass_tol, phase_tol=phase_tol)
