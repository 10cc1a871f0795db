"""Chiral clock chain: couplings, disorder, and diagonal energies.

The chain Hamiltonian splits into two diagonal pieces plus the global
shift kick applied by the Floquet cycle.  On a trit string s the
Z3-symmetric bond energy is

    eps(s)  = 2 * sum_j J_j * cos(2*pi*(s_j - s_{j+1})/3 + theta_j)

and the symmetry-breaking remainder (co-rotating bonds plus site fields) is

    eps'(s) = 2 * sum_j J'_j * cos(2*pi*(s_j + s_{j+1})/3 + theta'_j)
            + 2 * sum_j h_j  * cos(2*pi*s_j/3 + phi_j).

eps is invariant under the global shift s -> s+1; eps' instead averages to
zero over every shift orbit: eps'(s) + eps'(s+1) + eps'(s+2) = 0, because
each term sums a cosine over three equally spaced angles.

All angles are in radians on the principal branch (-pi, pi].
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import OMEGA, all_trit_strings

__all__ = [
    "wrap_angle",
    "wrap_pm_pi",
    "BondCoupling",
    "SiteField",
    "ChainParams",
    "CrossKerrAngles",
    "DisorderSpec",
    "PRNG_ALGORITHM",
    "disorder_rng",
    "sample_disorder",
    "epsilon_z3",
    "epsilon_prime",
    "epsilon_z3_vector",
    "epsilon_prime_vector",
    "diagonal_energies",
    "cross_kerr_coefficients",
    "two_site_diagonal",
    "map_cross_kerr",
    "unmap_to_cross_kerr",
    "CrossKerrMappingError",
]

_ANGLE_SLACK = 1e-9


def wrap_angle(x):
    """Wrap angle(s) to the principal branch (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(x, dtype=float), 2 * np.pi)


def wrap_pm_pi(x):
    """Wrap angle(s) to [-pi, pi) (half-open on the other side)."""
    return np.mod(np.asarray(x, dtype=float) + np.pi, 2 * np.pi) - np.pi


def _check_angle(name: str, value: float) -> None:
    if not (-np.pi - _ANGLE_SLACK < value <= np.pi + _ANGLE_SLACK):
        raise ValueError(
            f"{name} = {value} outside principal range (-pi, pi]; "
            "wrap with wrap_angle first"
        )


# ── Parameter containers ───────────────────────────────────────────────


@dataclass(frozen=True)
class BondCoupling:
    """Couplings of one bond: chiral (J, theta) and co-rotating (J', theta')."""

    J: float
    theta: float
    J_prime: float = 0.0
    theta_prime: float = 0.0

    def __post_init__(self):
        if self.J < 0 or self.J_prime < 0:
            raise ValueError("coupling magnitudes must be non-negative")
        _check_angle("theta", self.theta)
        _check_angle("theta_prime", self.theta_prime)


@dataclass(frozen=True)
class SiteField:
    """Longitudinal clock field at one site: h * e^{i*phi} Z + h.c."""

    h: float
    phi: float = 0.0

    def __post_init__(self):
        if self.h < 0:
            raise ValueError("field magnitude must be non-negative")
        _check_angle("phi", self.phi)


@dataclass(frozen=True)
class ChainParams:
    """Open chain of n_sites qutrits with n_sites-1 bonds."""

    n_sites: int
    bonds: tuple[BondCoupling, ...]
    fields: tuple[SiteField, ...]

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        object.__setattr__(self, "bonds", tuple(self.bonds))
        object.__setattr__(self, "fields", tuple(self.fields))
        if len(self.bonds) != self.n_sites - 1:
            raise ValueError(
                f"expected {self.n_sites - 1} bonds, got {len(self.bonds)}"
            )
        if len(self.fields) != self.n_sites:
            raise ValueError(
                f"expected {self.n_sites} fields, got {len(self.fields)}"
            )

    # bond/field arrays for vectorized evaluation
    def bond_arrays(self):
        J = np.array([b.J for b in self.bonds])
        th = np.array([b.theta for b in self.bonds])
        Jp = np.array([b.J_prime for b in self.bonds])
        thp = np.array([b.theta_prime for b in self.bonds])
        return J, th, Jp, thp

    def field_arrays(self):
        h = np.array([f.h for f in self.fields])
        phi = np.array([f.phi for f in self.fields])
        return h, phi

    def to_dict(self) -> dict:
        return {
            "n_sites": self.n_sites,
            "bonds": [
                {
                    "J": b.J,
                    "theta": b.theta,
                    "J_prime": b.J_prime,
                    "theta_prime": b.theta_prime,
                }
                for b in self.bonds
            ],
            "fields": [{"h": f.h, "phi": f.phi} for f in self.fields],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChainParams":
        bonds = tuple(
            BondCoupling(
                J=b["J"],
                theta=b["theta"],
                J_prime=b.get("J_prime", 0.0),
                theta_prime=b.get("theta_prime", 0.0),
            )
            for b in d["bonds"]
        )
        fields = tuple(
            SiteField(h=f["h"], phi=f.get("phi", 0.0)) for f in d["fields"]
        )
        return cls(n_sites=int(d["n_sites"]), bonds=bonds, fields=fields)

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("sort_keys", True)
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, s: str) -> "ChainParams":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class CrossKerrAngles:
    """Two-transmon cross-Kerr phases theta_ij on |ij>, i,j in {1,2}."""

    theta_11: float
    theta_12: float
    theta_21: float
    theta_22: float

    def __post_init__(self):
        for name in ("theta_11", "theta_12", "theta_21", "theta_22"):
            _check_angle(name, getattr(self, name))

    def to_dict(self) -> dict:
        return {
            "theta_11": self.theta_11,
            "theta_12": self.theta_12,
            "theta_21": self.theta_21,
            "theta_22": self.theta_22,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CrossKerrAngles":
        return cls(
            theta_11=d["theta_11"],
            theta_12=d["theta_12"],
            theta_21=d["theta_21"],
            theta_22=d["theta_22"],
        )


# ── Disorder ───────────────────────────────────────────────────────────

PRNG_ALGORITHM = (
    "numpy.random.Philox seeded with SeedSequence((seed, instance))"
)

_CHIRALITY_MODES = ("disordered", "zero", "fixed", "multiples")
_PHASE_MODES = ("uniform", "zero")


@dataclass(frozen=True)
class DisorderSpec:
    """Sampling ranges for one disorder ensemble.

    chirality_mode picks how bond angles theta are drawn:
      "disordered": theta = -pi + k*pi/3 + u with k uniform in 0..5 and u
                    uniform in theta_sector_range (a sub-interval of
                    [0, pi/3)), then wrapped to (-pi, pi];
      "zero":       theta = 0 on every bond;
      "fixed":      theta = theta_fixed on every bond;
      "multiples":  theta = k*pi/3, k uniform in 0..5.

    theta_prime_mode / phi_mode are "uniform" (full circle) or "zero".
    """

    J_range: tuple[float, float] = (0.1, 0.3)
    theta_sector_range: tuple[float, float] = (0.0, np.pi / 3)
    J_prime_range: tuple[float, float] = (0.1, 0.3)
    theta_prime_mode: str = "uniform"
    h_range: tuple[float, float] = (0.1, 0.3)
    phi_mode: str = "uniform"
    seed: int = 0
    chirality_mode: str = "disordered"
    theta_fixed: float = 0.0

    def __post_init__(self):
        for name in ("J_range", "J_prime_range", "h_range"):
            lo, hi = getattr(self, name)
            if not (0 <= lo <= hi):
                raise ValueError(f"{name} must satisfy 0 <= lo <= hi")
            object.__setattr__(self, name, (float(lo), float(hi)))
        lo, hi = self.theta_sector_range
        if not (0 <= lo <= hi <= np.pi / 3 + _ANGLE_SLACK):
            raise ValueError(
                "theta_sector_range must lie inside [0, pi/3]"
            )
        object.__setattr__(self, "theta_sector_range", (float(lo), float(hi)))
        if self.chirality_mode not in _CHIRALITY_MODES:
            raise ValueError(f"chirality_mode must be one of {_CHIRALITY_MODES}")
        if self.theta_prime_mode not in _PHASE_MODES:
            raise ValueError(f"theta_prime_mode must be one of {_PHASE_MODES}")
        if self.phi_mode not in _PHASE_MODES:
            raise ValueError(f"phi_mode must be one of {_PHASE_MODES}")
        _check_angle("theta_fixed", self.theta_fixed)

    def to_dict(self) -> dict:
        return {
            "J_range": list(self.J_range),
            "theta_sector_range": list(self.theta_sector_range),
            "J_prime_range": list(self.J_prime_range),
            "theta_prime_mode": self.theta_prime_mode,
            "h_range": list(self.h_range),
            "phi_mode": self.phi_mode,
            "seed": self.seed,
            "chirality_mode": self.chirality_mode,
            "theta_fixed": self.theta_fixed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DisorderSpec":
        kw = dict(d)
        for name in ("J_range", "theta_sector_range", "J_prime_range", "h_range"):
            if name in kw:
                kw[name] = tuple(kw[name])
        return cls(**kw)


def disorder_rng(seed: int, instance: int) -> np.random.Generator:
    """Counter-based generator for one (ensemble seed, instance) pair."""
    ss = np.random.SeedSequence(entropy=(int(seed), int(instance)))
    return np.random.Generator(np.random.Philox(ss))


def sample_disorder(
    spec: DisorderSpec, n_sites: int, instance: int
) -> ChainParams:
    """Draw one disorder realization.  Deterministic in (spec, instance).

    Draw order is fixed: bond J's, bond theta draws, bond J''s, bond
    theta''s, site h's, site phi's.
    """
    if n_sites < 2:
        raise ValueError("disorder sampling needs n_sites >= 2")
    rng = disorder_rng(spec.seed, instance)
    nb = n_sites - 1

    J = rng.uniform(*spec.J_range, size=nb)

    if spec.chirality_mode == "disordered":
        k = rng.integers(0, 6, size=nb)
        u = rng.uniform(*spec.theta_sector_range, size=nb)
        theta = wrap_angle(-np.pi + k * (np.pi / 3) + u)
    elif spec.chirality_mode == "zero":
        theta = np.zeros(nb)
    elif spec.chirality_mode == "fixed":
        theta = np.full(nb, spec.theta_fixed)
    else:  # multiples
        k = rng.integers(0, 6, size=nb)
        theta = wrap_angle(k * (np.pi / 3))

    J_prime = rng.uniform(*spec.J_prime_range, size=nb)
    if spec.theta_prime_mode == "uniform":
        theta_prime = wrap_angle(rng.uniform(-np.pi, np.pi, size=nb))
    else:
        theta_prime = np.zeros(nb)

    h = rng.uniform(*spec.h_range, size=n_sites)
    if spec.phi_mode == "uniform":
        phi = wrap_angle(rng.uniform(-np.pi, np.pi, size=n_sites))
    else:
        phi = np.zeros(n_sites)

    bonds = tuple(
        BondCoupling(
            J=float(J[i]),
            theta=float(theta[i]),
            J_prime=float(J_prime[i]),
            theta_prime=float(theta_prime[i]),
        )
        for i in range(nb)
    )
    fields = tuple(
        SiteField(h=float(h[i]), phi=float(phi[i])) for i in range(n_sites)
    )
    return ChainParams(n_sites=n_sites, bonds=bonds, fields=fields)


# ── Diagonal energies ──────────────────────────────────────────────────


def epsilon_z3(trits: Sequence[int], params: ChainParams) -> float:
    """Shift-invariant bond energy of one trit string."""
    s = np.asarray(trits, dtype=float)
    if s.size != params.n_sites:
        raise ValueError("trit string length does not match n_sites")
    J, th, _, _ = params.bond_arrays()
    diff = s[:-1] - s[1:]
    return float(2.0 * np.sum(J * np.cos(2 * np.pi * diff / 3 + th)))


def epsilon_prime(trits: Sequence[int], params: ChainParams) -> float:
    """Shift-covariant remainder: co-rotating bonds plus site fields."""
    s = np.asarray(trits, dtype=float)
    if s.size != params.n_sites:
        raise ValueError("trit string length does not match n_sites")
    _, _, Jp, thp = params.bond_arrays()
    h, phi = params.field_arrays()
    tot = 2.0 * np.sum(Jp * np.cos(2 * np.pi * (s[:-1] + s[1:]) / 3 + thp))
    tot += 2.0 * np.sum(h * np.cos(2 * np.pi * s / 3 + phi))
    return float(tot)


def epsilon_z3_vector(params: ChainParams) -> np.ndarray:
    """eps over all 3**n basis states, indexed like the state vector."""
    t = all_trit_strings(params.n_sites).astype(np.float64)
    J, th, _, _ = params.bond_arrays()
    diff = t[:, :-1] - t[:, 1:]
    return 2.0 * (np.cos(2 * np.pi * diff / 3 + th) @ J)


def epsilon_prime_vector(params: ChainParams) -> np.ndarray:
    """eps' over all 3**n basis states."""
    t = all_trit_strings(params.n_sites).astype(np.float64)
    _, _, Jp, thp = params.bond_arrays()
    h, phi = params.field_arrays()
    out = 2.0 * (np.cos(2 * np.pi * (t[:, :-1] + t[:, 1:]) / 3 + thp) @ Jp)
    out += 2.0 * (np.cos(2 * np.pi * t / 3 + phi) @ h)
    return out


def diagonal_energies(params: ChainParams) -> np.ndarray:
    """eps + eps' over all basis states (the full diagonal phase)."""
    return epsilon_z3_vector(params) + epsilon_prime_vector(params)


# ── Cross-Kerr mapping ─────────────────────────────────────────────────


class CrossKerrMappingError(ValueError):
    """Raised when couplings are not realizable by a cross-Kerr diagonal."""


def cross_kerr_coefficients(angles: CrossKerrAngles) -> np.ndarray:
    """Clock-basis coefficients c[m, n] of the two-site diagonal.

    Projects the diagonal (theta_ij on |ij>, i,j in {1,2}, zero when either
    site is in |0>) onto Z^m (x) Z^n:

        c_mn = (1/9) * sum_{i,j in {1,2}} theta_ij * w^{-(i*m + j*n)}.
    """
    th = np.array(
        [
            [angles.theta_11, angles.theta_12],
            [angles.theta_21, angles.theta_22],
        ]
    )
    c = np.zeros((3, 3), dtype=complex)
    for m in range(3):
        for n in range(3):
            acc = 0.0 + 0j
            for i in (1, 2):
                for j in (1, 2):
                    acc += th[i - 1, j - 1] * OMEGA ** (-(i * m + j * n))
            c[m, n] = acc / 9.0
    return c


def two_site_diagonal(c: np.ndarray) -> np.ndarray:
    """Rebuild the 3x3 table d[i, j] = sum_mn c_mn w^{m*i + n*j}."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (3, 3):
        raise ValueError("coefficient matrix must be 3x3")
    d = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        for j in range(3):
            w = OMEGA ** (np.arange(3) * i)
            v = OMEGA ** (np.arange(3) * j)
            d[i, j] = w @ c @ v
    return d


def map_cross_kerr(
    angles: CrossKerrAngles,
) -> tuple[BondCoupling, SiteField, SiteField, float]:
    """Cross-Kerr phases -> clock-model couplings on one bond.

    Returns (bond, field at the left site, field at the right site,
    identity offset h_I).  The left/right fields are the single-site
    pieces the two-site diagonal induces; when several bonds share a site
    these add.
    """
    c = cross_kerr_coefficients(angles)

    def arg(z: complex) -> float:
        # wrap_angle folds np.angle's -pi (from -0.0 imag) onto +pi
        return float(wrap_angle(np.angle(z))) if abs(z) > 0 else 0.0

    bond = BondCoupling(
        J=float(abs(c[1, 2])),
        theta=arg(c[1, 2]),
        J_prime=float(abs(c[1, 1])),
        theta_prime=arg(c[1, 1]),
    )
    f1 = SiteField(h=float(abs(c[1, 0])), phi=arg(c[1, 0]))
    f2 = SiteField(h=float(abs(c[0, 1])), phi=arg(c[0, 1]))
    h_identity = float(c[0, 0].real)
    return bond, f1, f2, h_identity


def unmap_to_cross_kerr(
    bond: BondCoupling,
    field_left: SiteField,
    field_right: SiteField,
    h_identity: float,
    *,
    tol: float = 1e-9,
) -> CrossKerrAngles:
    """Clock couplings on one bond -> cross-Kerr phases, if realizable.

    Rebuilds the two-site diagonal from the hermitian coefficient matrix
    and demands it vanish whenever either site is in |0> and be real on
    the {1,2} block.  Raises CrossKerrMappingError with the residual
    otherwise.
    """
    c = np.zeros((3, 3), dtype=complex)
    c[0, 0] = h_identity
    c[1, 2] = bond.J * np.exp(1j * bond.theta)
    c[2, 1] = np.conj(c[1, 2])
    c[1, 1] = bond.J_prime * np.exp(1j * bond.theta_prime)
    c[2, 2] = np.conj(c[1, 1])
    c[1, 0] = field_left.h * np.exp(1j * field_left.phi)
    c[2, 0] = np.conj(c[1, 0])
    c[0, 1] = field_right.h * np.exp(1j * field_right.phi)
    c[0, 2] = np.conj(c[0, 1])

    d = two_site_diagonal(c)
    zero_part = [d[0, 0], d[0, 1], d[0, 2], d[1, 0], d[2, 0]]
    residual = float(
        np.sqrt(
            sum(abs(z) ** 2 for z in zero_part)
            + np.sum(np.abs(d[1:, 1:].imag) ** 2)
        )
    )
    if residual > tol:
        raise CrossKerrMappingError(
            f"couplings not realizable by a cross-Kerr diagonal "
            f"(residual {residual:.3e} > tol {tol:.1e})"
        )
    return CrossKerrAngles(
        theta_11=float(wrap_angle(d[1, 1].real)),
        theta_12=float(wrap_angle(d[1, 2].real)),
        theta_21=float(wrap_angle(d[2, 1].real)),
        theta_22=float(wrap_angle(d[2, 2].real)),
    )
