"""Qutrit clock/shift algebra and chain state vectors.

Single-site conventions: computational basis |0>, |1>, |2>; clock operator
Z = diag(1, w, w^2) with w = exp(2i*pi/3); shift operator X|s> = |s+1 mod 3>.
These satisfy Z X = w X Z and X^3 = Z^3 = I.

A chain of N sites is stored as a dense complex vector of length 3**N with
site 1 as the most significant trit: the basis state |s_1 s_2 ... s_N> lives
at index sum_j s_j * 3**(N - j).  Trit strings serialize as digit strings
with site 1 leftmost, e.g. "01221".
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np
import scipy.linalg

OMEGA = np.exp(2j * np.pi / 3)

__all__ = [
    "OMEGA",
    "clock_z",
    "shift_x",
    "subspace_x12",
    "is_unitary",
    "fractional_power",
    "basis_index",
    "index_to_trits",
    "trits_from_string",
    "trits_to_string",
    "all_trit_strings",
    "shift_index_table",
    "clock_phase_table",
    "QutritState",
    "apply_local",
    "apply_global",
]


# ── Single-site operators ──────────────────────────────────────────────


def clock_z() -> np.ndarray:
    """Clock operator Z = diag(1, w, w^2)."""
    return np.diag([1.0 + 0j, OMEGA, OMEGA**2])


def shift_x() -> np.ndarray:
    """Shift operator with X|s> = |s+1 mod 3>."""
    x = np.zeros((3, 3), dtype=complex)
    for s in range(3):
        x[(s + 1) % 3, s] = 1.0
    return x


def subspace_x12() -> np.ndarray:
    """Swap of |1> and |2>, identity on |0> (the {1,2}-subspace flip)."""
    return np.array(
        [[1, 0, 0], [0, 0, 1], [0, 1, 0]], dtype=complex
    )


def is_unitary(u: np.ndarray, tol: float = 1e-12) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(
        np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=tol, rtol=0.0)
    )


def fractional_power(u: np.ndarray, g: float) -> np.ndarray:
    """Principal-branch fractional power u**g of a unitary matrix.

    Diagonalizes u through its complex Schur form, takes eigenphases on the
    principal branch (-pi, pi], and rebuilds Q exp(i*g*phases) Q^dagger.
    The endpoints are exact: g == 0 returns the identity and g == 1 returns
    a copy of u, with no round-off from the decomposition.

    Raises ValueError if u is not unitary and LinAlgError if the rebuilt
    matrix fails the unitarity check (a degenerate-eigenvector failure).
    """
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, tol=1e-10):
        raise ValueError("fractional_power requires a unitary matrix")
    if g == 0:
        return np.eye(u.shape[0], dtype=complex)
    if g == 1:
        return u.copy()
    t, q = scipy.linalg.schur(u, output="complex")
    phases = np.angle(np.diagonal(t))
    # np.angle maps (-1 - 0j) to -pi; fold onto the principal branch.
    phases = np.where(phases == -np.pi, np.pi, phases)
    out = (q * np.exp(1j * g * phases)) @ q.conj().T
    if not is_unitary(out, tol=1e-10):
        raise np.linalg.LinAlgError(
            "fractional power lost unitarity (degenerate Schur vectors?)"
        )
    return out


# ── Trit-string indexing ───────────────────────────────────────────────


def basis_index(trits: Sequence[int]) -> int:
    """Basis-vector index of a trit string, site 1 most significant."""
    idx = 0
    for t in trits:
        t = int(t)
        if t not in (0, 1, 2):
            raise ValueError(f"trit values must be 0, 1 or 2, got {t}")
        idx = 3 * idx + t
    return idx


def index_to_trits(index: int, n_sites: int) -> tuple[int, ...]:
    """Inverse of basis_index for a chain of n_sites."""
    if not 0 <= index < 3**n_sites:
        raise ValueError(f"index {index} out of range for {n_sites} sites")
    out = []
    for j in range(n_sites - 1, -1, -1):
        out.append((index // 3**j) % 3)
    return tuple(out)


def trits_from_string(s: str) -> tuple[int, ...]:
    """Parse "01221" (site 1 leftmost) into a trit tuple."""
    if not s or any(c not in "012" for c in s):
        raise ValueError(f"trit string must be non-empty digits 0/1/2: {s!r}")
    return tuple(int(c) for c in s)


def trits_to_string(trits: Sequence[int]) -> str:
    return "".join(str(int(t)) for t in trits)


@lru_cache(maxsize=None)
def all_trit_strings(n_sites: int) -> np.ndarray:
    """(3**n, n) int8 array; row i holds the trits of basis index i."""
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    dim = 3**n_sites
    idx = np.arange(dim)
    cols = [(idx // 3**j) % 3 for j in range(n_sites - 1, -1, -1)]
    table = np.stack(cols, axis=1).astype(np.int8)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def shift_index_table(n_sites: int) -> np.ndarray:
    """Permutation p with p[i] = basis index of (trits of i) + 1 mod 3."""
    trits = all_trit_strings(n_sites).astype(np.int64)
    place = 3 ** np.arange(n_sites - 1, -1, -1, dtype=np.int64)
    table = ((trits + 1) % 3) @ place
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def clock_phase_table(n_sites: int) -> np.ndarray:
    """(3**n, n) complex array of w**s_j, the diagonal of Z at each site."""
    table = OMEGA ** all_trit_strings(n_sites).astype(np.float64)
    table.setflags(write=False)
    return table


# ── Chain states ───────────────────────────────────────────────────────


class QutritState:
    """Dense state vector of a qutrit chain.

    Amplitudes are complex128 of length 3**n_sites, normalized to 1.
    Mutating operations (apply_local, apply_cycle) touch only the state
    they are given; everything else in this package is pure.
    """

    __slots__ = ("n_sites", "amplitudes")

    def __init__(
        self,
        n_sites: int,
        amplitudes: np.ndarray,
        *,
        copy: bool = True,
        check: bool = True,
    ):
        if copy:
            amps = np.array(amplitudes, dtype=complex).reshape(-1)
        else:
            amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        if amps.size != 3**n_sites:
            raise ValueError(
                f"amplitude vector has length {amps.size}, "
                f"expected {3**n_sites}"
            )
        if check:
            nrm = np.linalg.norm(amps)
            if abs(nrm - 1.0) > 1e-8:
                raise ValueError(f"state is not normalized (norm {nrm:.6g})")
        self.n_sites = n_sites
        self.amplitudes = amps

    @classmethod
    def from_trits(cls, trits: Sequence[int]) -> "QutritState":
        trits = tuple(int(t) for t in trits)
        amps = np.zeros(3 ** len(trits), dtype=complex)
        amps[basis_index(trits)] = 1.0
        return cls(len(trits), amps, copy=False, check=False)

    @classmethod
    def from_string(cls, s: str) -> "QutritState":
        return cls.from_trits(trits_from_string(s))

    def copy(self) -> "QutritState":
        return QutritState(
            self.n_sites, self.amplitudes, copy=True, check=False
        )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def basis_trits(self) -> tuple[int, ...] | None:
        """Trits if this is a computational basis state (up to global
        phase), else None."""
        k = int(np.argmax(np.abs(self.amplitudes)))
        if abs(abs(self.amplitudes[k]) - 1.0) < 1e-12:
            return index_to_trits(k, self.n_sites)
        return None

    def __repr__(self) -> str:
        return f"QutritState(n_sites={self.n_sites})"


def apply_local(state: QutritState, site: int, u: np.ndarray) -> QutritState:
    """Apply a 3x3 unitary at a site (1-based), mutating the state."""
    n = state.n_sites
    if not 1 <= site <= n:
        raise ValueError(f"site {site} out of range 1..{n}")
    u = np.asarray(u, dtype=complex)
    if u.shape != (3, 3):
        raise ValueError("local operator must be 3x3")
    left = 3 ** (site - 1)
    right = 3 ** (n - site)
    a = state.amplitudes.reshape(left, 3, right)
    state.amplitudes = np.matmul(u, a).reshape(-1)
    return state


def apply_global(state: QutritState, u: np.ndarray) -> QutritState:
    """Apply the same 3x3 unitary at every site, mutating the state."""
    for site in range(1, state.n_sites + 1):
        apply_local(state, site, u)
    return state
