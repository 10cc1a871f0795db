"""Measurement layer: populations, magnetization, FFT, glass order,
reduced densities, trajectory aggregation.

Everything here is pure: functions read a QutritState and return numbers
or arrays without touching the state.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import QutritState, clock_phase_table

__all__ = [
    "ObservableSet",
    "site_populations",
    "all_populations",
    "magnetization",
    "subspace_magnetization",
    "fft_response",
    "subharmonic_fraction",
    "pairwise_clock_correlations",
    "chi_ea",
    "chi_ea_baseline_subtract",
    "reduced_density",
    "purity",
    "entropy",
    "average_autocorrelator",
    "SpectroscopyGrid",
]


# ── Probe selection ────────────────────────────────────────────────────


@dataclass(frozen=True)
class ObservableSet:
    """Which probes a trajectory records each cycle.

    autocorrelator_sites: 1-based sites whose clock autocorrelator A(t)
    is tracked.  chi_pairs restricts the glass correlator to given
    ordered (i, j) pairs; None means all i != j.  tomography lists
    subsystems (tuples of 1-based sites, length 1 or 2) whose reduced
    density matrix is summarized by purity and entanglement entropy.
    """

    populations: bool = True
    magnetization: bool = True
    autocorrelator_sites: tuple[int, ...] = ()
    chi_ea: bool = False
    chi_pairs: tuple[tuple[int, int], ...] | None = None
    tomography: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self,
            "autocorrelator_sites",
            tuple(int(s) for s in self.autocorrelator_sites),
        )
        object.__setattr__(
            self,
            "tomography",
            tuple(tuple(int(s) for s in sub) for sub in self.tomography),
        )
        if self.chi_pairs is not None:
            object.__setattr__(
                self,
                "chi_pairs",
                tuple((int(i), int(j)) for i, j in self.chi_pairs),
            )

    def validate(self, n_sites: int) -> None:
        for s in self.autocorrelator_sites:
            if not 1 <= s <= n_sites:
                raise ValueError(f"autocorrelator site {s} out of range")
        if self.chi_pairs is not None:
            for i, j in self.chi_pairs:
                if i == j or not (1 <= i <= n_sites and 1 <= j <= n_sites):
                    raise ValueError(f"bad chi_EA pair ({i}, {j})")
        for sub in self.tomography:
            if not 1 <= len(sub) <= 2:
                raise ValueError("tomography subsystems must have 1 or 2 sites")
            if len(set(sub)) != len(sub):
                raise ValueError("tomography subsystem repeats a site")
            for s in sub:
                if not 1 <= s <= n_sites:
                    raise ValueError(f"tomography site {s} out of range")

    def to_dict(self) -> dict:
        return {
            "populations": self.populations,
            "magnetization": self.magnetization,
            "autocorrelator_sites": list(self.autocorrelator_sites),
            "chi_ea": self.chi_ea,
            "chi_pairs": (
                None
                if self.chi_pairs is None
                else [list(p) for p in self.chi_pairs]
            ),
            "tomography": [list(s) for s in self.tomography],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ObservableSet":
        pairs = d.get("chi_pairs")
        return cls(
            populations=bool(d.get("populations", True)),
            magnetization=bool(d.get("magnetization", True)),
            autocorrelator_sites=tuple(d.get("autocorrelator_sites", ())),
            chi_ea=bool(d.get("chi_ea", False)),
            chi_pairs=None if pairs is None else tuple(map(tuple, pairs)),
            tomography=tuple(map(tuple, d.get("tomography", ()))),
        )


# ── Site-local probes ──────────────────────────────────────────────────


def site_populations(state: QutritState, site: int) -> np.ndarray:
    """(p0, p1, p2) marginal at a 1-based site."""
    n = state.n_sites
    if not 1 <= site <= n:
        raise ValueError(f"site {site} out of range 1..{n}")
    a = state.amplitudes.reshape(3 ** (site - 1), 3, 3 ** (n - site))
    return np.sum(np.abs(a) ** 2, axis=(0, 2))


def all_populations(state: QutritState) -> np.ndarray:
    """(n_sites, 3) array of per-site populations."""
    return np.stack(
        [site_populations(state, s) for s in range(1, state.n_sites + 1)]
    )


def magnetization(state: QutritState, site: int) -> float:
    """Clock magnetization M = P(0) - P(2) at one site."""
    p = site_populations(state, site)
    return float(p[0] - p[2])


def subspace_magnetization(state: QutritState, site: int) -> float:
    """Two-level magnetization P(1) - P(2) inside the {1,2} subspace."""
    p = site_populations(state, site)
    return float(p[1] - p[2])


# ── Spectral response ──────────────────────────────────────────────────


def fft_response(series) -> tuple[np.ndarray, np.ndarray]:
    """Unwindowed FFT magnitude of a time series.

    Returns (omega, magnitude) with omega_k = 2*pi*k/T for k = 0..T-1 and
    magnitude = |fft(series)| / T, so a constant series of ones puts
    exactly 1.0 in the DC bin.  Parseval: sum(magnitude**2) * T equals
    sum(series**2).
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ValueError("series must be one-dimensional")
    t = x.size
    if t < 4:
        raise ValueError(f"series too short for FFT ({t} < 4 samples)")
    omega = 2 * np.pi * np.arange(t) / t
    mag = np.abs(np.fft.fft(x)) / t
    return omega, mag


def subharmonic_fraction(
    series, omega_target: float
) -> tuple[float, bool, int]:
    """Share of one-sided spectral power in the bin nearest omega_target.

    Uses positive-frequency bins k = 1..T//2 (DC excluded).  Returns
    (fraction, peak_matches, target_bin): fraction of the one-sided power
    in the target bin, whether the one-sided power peak sits exactly
    there, and the target bin index.
    """
    omega, mag = fft_response(series)
    half = len(mag) // 2
    ks = np.arange(1, half + 1)
    power = mag[ks] ** 2
    target = int(ks[np.argmin(np.abs(omega[ks] - omega_target))])
    total = float(np.sum(power))
    if total == 0.0:
        return 0.0, False, target
    frac = float(power[target - 1] / total)
    peak = int(ks[np.argmax(power)]) == target
    return frac, peak, target


# ── Glass order ────────────────────────────────────────────────────────


def pairwise_clock_correlations(state: QutritState) -> np.ndarray:
    """Matrix C[i, j] = <Z_i^dagger Z_j> over all site pairs (0-based).

    Z_i^dagger Z_j is diagonal in the computational basis, so the whole
    matrix reduces to a Gram product of the clock-phase table against the
    probability weights.
    """
    z = clock_phase_table(state.n_sites)
    p = np.abs(state.amplitudes) ** 2
    return z.conj().T @ (p[:, None] * z)


def chi_ea(
    state: QutritState,
    window_states: Sequence[QutritState] | None = None,
    *,
    pairs: Sequence[tuple[int, int]] | None = None,
) -> float:
    """Edwards-Anderson-style glass order (1/N) sum_{i != j} |<Z_i^dag Z_j>|^2.

    window_states: further states (e.g. a late-time window of one
    trajectory) whose chi values are averaged with the first one.
    pairs (1-based, ordered) restricts the sum; None means all i != j.
    A computational basis state gives exactly n_sites - 1.
    """
    vals = [_chi_ea_single(state, pairs)]
    if window_states is not None:
        vals.extend(_chi_ea_single(s, pairs) for s in window_states)
    return float(np.mean(vals))


def _chi_ea_single(state: QutritState, pairs) -> float:
    c = pairwise_clock_correlations(state)
    n = state.n_sites
    if pairs is None:
        m = np.abs(c) ** 2
        total = float(np.sum(m) - np.trace(m))
    else:
        total = 0.0
        for i, j in pairs:
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"bad chi_EA pair ({i}, {j})")
            total += float(abs(c[i - 1, j - 1]) ** 2)
    return total / n


def chi_ea_baseline_subtract(
    g_values: Sequence[float],
    chi_values: Sequence[float],
    reference_g: float | None = None,
) -> np.ndarray:
    """Subtract the curve's value at reference_g (default: smallest g)."""
    g = np.asarray(g_values, dtype=float)
    chi = np.asarray(chi_values, dtype=float)
    if g.shape != chi.shape or g.ndim != 1 or g.size == 0:
        raise ValueError("g_values and chi_values must be equal-length 1-D")
    ref = float(np.min(g)) if reference_g is None else float(reference_g)
    k = int(np.argmin(np.abs(g - ref)))
    return chi - chi[k]


# ── Reduced densities ──────────────────────────────────────────────────


def reduced_density(state: QutritState, sites: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of the given 1-based sites (order kept)."""
    n = state.n_sites
    sites = [int(s) for s in sites]
    if len(set(sites)) != len(sites) or not sites:
        raise ValueError("sites must be non-empty and distinct")
    for s in sites:
        if not 1 <= s <= n:
            raise ValueError(f"site {s} out of range 1..{n}")
    psi = state.amplitudes.reshape((3,) * n)
    keep = [s - 1 for s in sites]
    rest = [a for a in range(n) if a not in keep]
    psi = np.transpose(psi, keep + rest)
    k = len(keep)
    m = psi.reshape(3**k, 3 ** (n - k))
    return m @ m.conj().T


def purity(rho: np.ndarray) -> float:
    """tr(rho^2)."""
    rho = np.asarray(rho)
    return float(np.real(np.trace(rho @ rho)))


def entropy(rho: np.ndarray, *, tol: float = 1e-12) -> float:
    """Von Neumann entropy -tr(rho ln rho), eigenvalues below tol dropped."""
    vals = np.linalg.eigvalsh(np.asarray(rho))
    if vals.min() < -1e-8:
        raise ValueError(
            f"density matrix is not positive semidefinite "
            f"(eigenvalue {vals.min():.3e})"
        )
    vals = vals[vals > tol]
    return float(-np.sum(vals * np.log(vals)))


# ── Ensemble aggregation ───────────────────────────────────────────────


def average_autocorrelator(records) -> np.ndarray:
    """|[A-bar]|(t): site mean, then record mean, modulus last.

    records: array-like of shape (n_records, n_sites, T+1) holding complex
    per-site autocorrelator series (one record per disorder instance or
    initial state).  The complex average runs over sites first, then over
    records; the absolute value is taken only at the end.
    """
    a = np.asarray(records, dtype=complex)
    if a.ndim != 3 or a.shape[0] == 0 or a.shape[1] == 0:
        raise ValueError(
            "records must have shape (n_records, n_sites, n_times)"
        )
    return np.abs(np.mean(np.mean(a, axis=1), axis=0))


@dataclass
class SpectroscopyGrid:
    """FFT magnitude of per-site magnetization on a grid of kick strengths.

    magnitude has shape (n_sites, n_g, n_omega); omega_bins holds the FFT
    bin centers 2*pi*k/T.
    """

    g_values: np.ndarray
    omega_bins: np.ndarray
    magnitude: np.ndarray
    site_labels: tuple[int, ...] = field(default=())

    def __post_init__(self):
        self.g_values = np.asarray(self.g_values, dtype=float)
        self.omega_bins = np.asarray(self.omega_bins, dtype=float)
        self.magnitude = np.asarray(self.magnitude, dtype=float)
        if self.magnitude.shape != (
            self.magnitude.shape[0],
            self.g_values.size,
            self.omega_bins.size,
        ):
            raise ValueError("magnitude shape mismatch with axes")
        if not self.site_labels:
            self.site_labels = tuple(range(1, self.magnitude.shape[0] + 1))

    @classmethod
    def from_magnetization(
        cls, g_values: Sequence[float], series: np.ndarray
    ) -> "SpectroscopyGrid":
        """Build from series of shape (n_g, n_sites, T)."""
        series = np.asarray(series, dtype=float)
        if series.ndim != 3:
            raise ValueError("series must have shape (n_g, n_sites, T)")
        n_g, n_sites, t = series.shape
        if n_g != len(g_values):
            raise ValueError("g axis mismatch")
        omega = 2 * np.pi * np.arange(t) / t
        mag = np.empty((n_sites, n_g, t))
        for a in range(n_g):
            for s in range(n_sites):
                _, mag[s, a] = fft_response(series[a, s])
        return cls(np.asarray(g_values, float), omega, mag)

    def rows(self) -> Iterable[tuple]:
        for si, site in enumerate(self.site_labels):
            for gi, g in enumerate(self.g_values):
                for oi, om in enumerate(self.omega_bins):
                    yield site, g, om, self.magnitude[si, gi, oi]

    def write_csv(self, path_or_file) -> None:
        """Long-form CSV: site,g,omega,magnitude."""
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
            w.writerow(["site", "g", "omega", "magnitude"])
            for site, g, om, val in self.rows():
                w.writerow([site, repr(float(g)), repr(float(om)), repr(float(val))])
        finally:
            if close:
                f.close()

    def write_gnuplot(self, path_or_file) -> None:
        """Per-site matrix blocks (omega rows, g columns) with blank-line
        separators, ready for gnuplot's nonuniform matrix mode."""
        close = False
        if isinstance(path_or_file, (str, bytes)) or hasattr(
            path_or_file, "__fspath__"
        ):
            f = open(path_or_file, "w")
            close = True
        else:
            f = path_or_file
        try:
            for si, site in enumerate(self.site_labels):
                f.write(f"# site {site}\n")
                header = ["omega\\g"] + [repr(float(g)) for g in self.g_values]
                f.write(" ".join(header) + "\n")
                for oi, om in enumerate(self.omega_bins):
                    row = [repr(float(om))] + [
                        repr(float(self.magnitude[si, gi, oi]))
                        for gi in range(self.g_values.size)
                    ]
                    f.write(" ".join(row) + "\n")
                f.write("\n")
        finally:
            if close:
                f.close()

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()
