"""Batch sweeps over kick strength, disorder instances and initial states.

A sweep runs the Cartesian product instances x initial states x g-grid,
writes one trajectory CSV per task plus aggregate tables, and records a
manifest from which every number in the dataset can be re-derived.

Determinism contract: identical SweepConfig gives byte-identical output
files regardless of worker_count.  Every trajectory file is a pure
function of its (instance, state, g) task, and aggregates are reduced
over the canonically sorted task list, never in completion order.
"""

from __future__ import annotations

import csv
import datetime
import hashlib
import json
import platform
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .algebra import QutritState, trits_from_string, trits_to_string
from .model import DisorderSpec, PRNG_ALGORITHM, sample_disorder
from .floquet import KickSpec, TrajectoryRecord, run_trajectory
from .observables import ObservableSet, SpectroscopyGrid, fft_response

__all__ = [
    "InitialStateFamily",
    "initial_state_strings",
    "make_initial_states",
    "SweepConfig",
    "RunManifest",
    "run_sweep",
]

_FAMILIES = ("FM", "AF", "random", "explicit")


@dataclass(frozen=True)
class InitialStateFamily:
    """Named family of computational basis initial states.

    FM:       the three uniform strings 000..., 111..., 222...
    AF:       the six maximally chiral tilings, patterns (0,1,2,...) and
              (0,2,1,...) with their global shifts by +1, +2
    random:   `count` strings drawn uniformly (seeded, Philox)
    explicit: the given trit strings verbatim
    """

    kind: str
    count: int = 0
    seed: int = 0
    strings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in _FAMILIES:
            raise ValueError(f"kind must be one of {_FAMILIES}")
        if self.kind == "random" and self.count < 1:
            raise ValueError("random family needs count >= 1")
        if self.kind == "explicit" and not self.strings:
            raise ValueError("explicit family needs at least one string")
        object.__setattr__(self, "strings", tuple(self.strings))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "count": self.count,
            "seed": self.seed,
            "strings": list(self.strings),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "InitialStateFamily":
        return cls(
            kind=d["kind"],
            count=int(d.get("count", 0)),
            seed=int(d.get("seed", 0)),
            strings=tuple(d.get("strings", ())),
        )


def initial_state_strings(
    family: InitialStateFamily, n_sites: int
) -> list[str]:
    """Trit strings of the family, in canonical order."""
    if n_sites < 1:
        raise ValueError("n_sites must be >= 1")
    if family.kind == "FM":
        return [str(v) * n_sites for v in range(3)]
    if family.kind == "AF":
        out = []
        for pattern in ((0, 1, 2), (0, 2, 1)):
            for shift in range(3):
                trits = [
                    (pattern[i % 3] + shift) % 3 for i in range(n_sites)
                ]
                out.append(trits_to_string(trits))
        return out
    if family.kind == "random":
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(int(family.seed)))
        )
        draws = rng.integers(0, 3, size=(family.count, n_sites))
        return [trits_to_string(row) for row in draws]
    # explicit
    for s in family.strings:
        if len(trits_from_string(s)) != n_sites:
            raise ValueError(
                f"explicit string {s!r} has wrong length for {n_sites} sites"
            )
    return list(family.strings)


def make_initial_states(
    family: InitialStateFamily, n_sites: int
) -> list[QutritState]:
    return [
        QutritState.from_string(s)
        for s in initial_state_strings(family, n_sites)
    ]


# ── Configuration ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class SweepConfig:
    n_sites: int
    g_grid: tuple[float, ...]
    cycles: int
    disorder: DisorderSpec
    n_disorder_instances: int
    initial: InitialStateFamily
    probes: ObservableSet = field(default_factory=ObservableSet)
    kick_variant: str = "standard"
    output_path: str = "sweep_out"
    worker_count: int = 1
    chi_window: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "g_grid", tuple(float(g) for g in self.g_grid)
        )
        if not self.g_grid:
            raise ValueError("g_grid must be non-empty")
        for g in self.g_grid:
            if not 0.0 <= g <= 1.0:
                raise ValueError(f"g = {g} outside [0, 1]")
        if self.cycles < 1:
            raise ValueError("cycles must be >= 1")
        if self.n_disorder_instances < 1:
            raise ValueError("n_disorder_instances must be >= 1")
        if self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")
        if self.chi_window is not None:
            lo, hi = self.chi_window
            if not 0 <= lo <= hi <= self.cycles:
                raise ValueError("chi_window must satisfy 0 <= lo <= hi <= cycles")
            object.__setattr__(self, "chi_window", (int(lo), int(hi)))
        KickSpec(g=self.g_grid[0], variant=self.kick_variant)  # validates variant
        self.probes.validate(self.n_sites)

    def to_dict(self) -> dict:
        return {
            "n_sites": self.n_sites,
            "g_grid": list(self.g_grid),
            "cycles": self.cycles,
            "disorder": self.disorder.to_dict(),
            "n_disorder_instances": self.n_disorder_instances,
            "initial": self.initial.to_dict(),
            "probes": self.probes.to_dict(),
            "kick_variant": self.kick_variant,
            "output_path": self.output_path,
            "worker_count": self.worker_count,
            "chi_window": (
                None if self.chi_window is None else list(self.chi_window)
            ),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        win = d.get("chi_window")
        return cls(
            n_sites=int(d["n_sites"]),
            g_grid=tuple(d["g_grid"]),
            cycles=int(d["cycles"]),
            disorder=DisorderSpec.from_dict(d["disorder"]),
            n_disorder_instances=int(d["n_disorder_instances"]),
            initial=InitialStateFamily.from_dict(d["initial"]),
            probes=ObservableSet.from_dict(d.get("probes", {})),
            kick_variant=d.get("kick_variant", "standard"),
            output_path=d.get("output_path", "sweep_out"),
            worker_count=int(d.get("worker_count", 1)),
            chi_window=None if win is None else tuple(win),
        )

    def to_json(self, **kwargs) -> str:
        kwargs.setdefault("sort_keys", True)
        kwargs.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, s: str) -> "SweepConfig":
        return cls.from_dict(json.loads(s))


@dataclass
class RunManifest:
    """Everything needed to re-derive a sweep dataset."""

    config: dict
    config_hash: str
    initial_states: list[str]
    per_run_seeds: list[dict]
    prng_algorithm: str = PRNG_ALGORITHM
    package_version: str = __version__
    numpy_version: str = np.__version__
    python_version: str = platform.python_version()
    created_at: str = ""

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "config_hash": self.config_hash,
            "initial_states": self.initial_states,
            "per_run_seeds": self.per_run_seeds,
            "prng_algorithm": self.prng_algorithm,
            "package_version": self.package_version,
            "numpy_version": self.numpy_version,
            "python_version": self.python_version,
            "created_at": self.created_at,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, s: str) -> "RunManifest":
        d = json.loads(s)
        return cls(**d)


def _config_hash(cfg: SweepConfig) -> str:
    canon = json.dumps(cfg.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


# ── Runner ─────────────────────────────────────────────────────────────


def _trajectory_name(instance: int, state_idx: int, g: float) -> str:
    return f"i{instance:03d}_s{state_idx:02d}_g{g:.6f}.csv"


def run_sweep(cfg: SweepConfig) -> RunManifest:
    """Execute the sweep and write the dataset under cfg.output_path.

    Layout: manifest.json (written first, so an interrupted run stays
    interpretable), params/instance_NNN.json, trajectories/*.csv (one per
    task, flushed as computed), aggregates/*.csv, failures.json.  Returns
    the manifest.
    """
    out = Path(cfg.output_path)
    (out / "params").mkdir(parents=True, exist_ok=True)
    (out / "trajectories").mkdir(exist_ok=True)
    (out / "aggregates").mkdir(exist_ok=True)

    state_strings = initial_state_strings(cfg.initial, cfg.n_sites)
    states = [QutritState.from_string(s) for s in state_strings]

    manifest = RunManifest(
        config=cfg.to_dict(),
        config_hash=_config_hash(cfg),
        initial_states=list(state_strings),
        per_run_seeds=[
            {"instance": i, "seed_entropy": [cfg.disorder.seed, i]}
            for i in range(cfg.n_disorder_instances)
        ],
        created_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
    )
    (out / "manifest.json").write_text(manifest.to_json() + "\n")

    instances = []
    for i in range(cfg.n_disorder_instances):
        params = sample_disorder(cfg.disorder, cfg.n_sites, i)
        (out / "params" / f"instance_{i:03d}.json").write_text(
            params.to_json(indent=2) + "\n"
        )
        instances.append(params)

    tasks = [
        (i, s, g)
        for i in range(cfg.n_disorder_instances)
        for s in range(len(states))
        for g in cfg.g_grid
    ]

    records: dict[tuple, TrajectoryRecord] = {}
    failures: list[dict] = []

    def run_task(task):
        i, s, g = task
        try:
            kick = KickSpec(g=g, variant=cfg.kick_variant)
            rec = run_trajectory(
                instances[i], kick, states[s], cfg.cycles, cfg.probes
            )
            rec.write_csv(out / "trajectories" / _trajectory_name(i, s, g))
            return task, rec, None
        except Exception as exc:  # per-trajectory failures are not fatal
            return task, None, f"{type(exc).__name__}: {exc}"

    if cfg.worker_count == 1:
        results = list(map(run_task, tasks))
    else:
        with ThreadPoolExecutor(max_workers=cfg.worker_count) as pool:
            results = list(pool.map(run_task, tasks))

    for task, rec, err in results:
        if err is None:
            records[task] = rec
        else:
            failures.append(
                {
                    "instance": task[0],
                    "state": task[1],
                    "g": task[2],
                    "error": err,
                }
            )

    _write_aggregates(cfg, out, tasks, records)
    (out / "failures.json").write_text(
        json.dumps(failures, sort_keys=True, indent=2) + "\n"
    )
    return manifest


def _write_aggregates(
    cfg: SweepConfig,
    out: Path,
    tasks: Sequence[tuple],
    records: dict,
) -> None:
    """Reduce trajectories into aggregate tables, canonical task order."""
    by_g: dict[float, list] = {g: [] for g in cfg.g_grid}
    for task in tasks:
        if task in records:
            by_g[task[2]].append(records[task])

    if cfg.probes.autocorrelator_sites:
        with open(out / "aggregates" / "autocorrelator.csv", "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["g", "t", "abs_mean"])
            for g in cfg.g_grid:
                recs = by_g[g]
                if not recs:
                    continue
                stacked = np.stack(
                    [r.autocorrelator_array() for r in recs]
                )  # (runs, sites, T+1)
                curve = np.abs(np.mean(np.mean(stacked, axis=1), axis=0))
                for t, v in enumerate(curve):
                    w.writerow([repr(float(g)), t, repr(float(v))])

    if cfg.probes.magnetization:
        # mean |FFT| of per-site magnetization over runs, t = 1..cycles
        n_sites, t_len = cfg.n_sites, cfg.cycles
        mag_mean = np.zeros((len(cfg.g_grid), n_sites, t_len))
        have = np.zeros(len(cfg.g_grid), dtype=bool)
        for gi, g in enumerate(cfg.g_grid):
            recs = by_g[g]
            if not recs:
                continue
            have[gi] = True
            acc = np.zeros((n_sites, t_len))
            for r in recs:
                for s in range(n_sites):
                    _, m = fft_response(r.magnetization[1:, s])
                    acc[s] += m
            mag_mean[gi] = acc / len(recs)
        if have.all() and t_len >= 4:
            omega = 2 * np.pi * np.arange(t_len) / t_len
            grid = SpectroscopyGrid(
                g_values=np.asarray(cfg.g_grid),
                omega_bins=omega,
                magnitude=np.transpose(mag_mean, (1, 0, 2)),
            )
            grid.write_csv(out / "aggregates" / "fft_magnetization.csv")
            grid.write_gnuplot(out / "aggregates" / "fft_magnetization.dat")

    if cfg.probes.chi_ea:
        lo, hi = cfg.chi_window or (0, cfg.cycles)
        with open(out / "aggregates" / "chi_ea.csv", "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["g", "mean", "sem", "n_runs"])
            for g in cfg.g_grid:
                recs = by_g[g]
                if not recs:
                    continue
                vals = np.array(
                    [float(np.mean(r.chi_ea[lo : hi + 1])) for r in recs]
                )
                sem = (
                    float(np.std(vals, ddof=1) / np.sqrt(vals.size))
                    if vals.size > 1
                    else 0.0
                )
                w.writerow(
                    [
                        repr(float(g)),
                        repr(float(np.mean(vals))),
                        repr(sem),
                        vals.size,
                    ]
                )
