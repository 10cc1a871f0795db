"""Command-line front end.

Subcommands: simulate, spectrum, sweep, map-ck, fft, states.
Exit codes: 0 success, 1 runtime failure, 2 invalid usage or config.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .model import (
    BondCoupling,
    ChainParams,
    CrossKerrAngles,
    DisorderSpec,
    SiteField,
    map_cross_kerr,
    sample_disorder,
    unmap_to_cross_kerr,
)
from .floquet import KickSpec, run_trajectory
from .observables import ObservableSet, fft_response
from .spectral import spectral_report
from .sweep import (
    InitialStateFamily,
    SweepConfig,
    initial_state_strings,
    run_sweep,
)
from .algebra import QutritState

__all__ = ["build_parser", "cli_main", "main"]


class _ConfigError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="chiralclock",
        description="Driven Z3 clock-chain simulator and spectral toolkit",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one trajectory, write CSV")
    _add_param_source(sim)
    sim.add_argument("--g", type=float, required=True, help="kick strength")
    sim.add_argument("--cycles", type=int, default=30)
    sim.add_argument("--variant", default="standard", choices=["standard", "subspace"])
    sim.add_argument(
        "--initial", required=True, help="trit string, site 1 leftmost"
    )
    sim.add_argument(
        "--autocorrelator",
        default="",
        help="comma-separated 1-based sites, or 'all'",
    )
    sim.add_argument("--chi-ea", action="store_true")
    sim.add_argument("--out", default="-", help="output CSV path, '-' = stdout")

    spec = sub.add_parser("spectrum", help="diagonalize one cycle, write JSON")
    _add_param_source(spec)
    spec.add_argument("--g", type=float, required=True)
    spec.add_argument("--variant", default="standard", choices=["standard", "subspace"])
    spec.add_argument(
        "--full-spectrum",
        action="store_true",
        help="force the quasienergy array into the report",
    )
    spec.add_argument("--out", default="-")

    sw = sub.add_parser("sweep", help="run a batch sweep from a JSON config")
    sw.add_argument("--config", required=True, help="SweepConfig JSON file")
    sw.add_argument("--out", default=None, help="override output_path")
    sw.add_argument("--workers", type=int, default=None)
    sw.add_argument("--seed", type=int, default=None, help="override disorder seed")

    mk = sub.add_parser(
        "map-ck", help="convert cross-Kerr phases to couplings (or back)"
    )
    mk.add_argument("--theta11", type=float)
    mk.add_argument("--theta12", type=float)
    mk.add_argument("--theta21", type=float)
    mk.add_argument("--theta22", type=float)
    mk.add_argument("--invert", action="store_true")
    mk.add_argument("--j", type=float)
    mk.add_argument("--theta", type=float)
    mk.add_argument("--j-prime", type=float, default=0.0)
    mk.add_argument("--theta-prime", type=float, default=0.0)
    mk.add_argument("--h1", type=float, default=0.0)
    mk.add_argument("--phi1", type=float, default=0.0)
    mk.add_argument("--h2", type=float, default=0.0)
    mk.add_argument("--phi2", type=float, default=0.0)
    mk.add_argument("--h-identity", type=float, default=0.0)
    mk.add_argument("--out", default="-")

    ff = sub.add_parser("fft", help="FFT magnitude of a CSV column")
    ff.add_argument("--input", required=True)
    ff.add_argument("--column", default="value")
    ff.add_argument("--out", default="-")

    st = sub.add_parser("states", help="list initial-state trit strings")
    st.add_argument("--family", required=True, choices=["FM", "AF", "random", "explicit"])
    st.add_argument("--n-sites", type=int, required=True)
    st.add_argument("--count", type=int, default=0)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--strings", default="", help="comma-separated, for explicit")
    st.add_argument("--out", default="-")

    return p


def _add_param_source(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--n-sites", type=int, default=None)
    sp.add_argument(
        "--params", default=None, help="ChainParams JSON file (exact couplings)"
    )
    sp.add_argument(
        "--disorder-config", default=None, help="DisorderSpec JSON file"
    )
    sp.add_argument("--seed", type=int, default=0, help="disorder ensemble seed")
    sp.add_argument("--instance", type=int, default=0, help="disorder instance")


def _load_params(args) -> ChainParams:
    if args.params is not None:
        text = _read_text(args.params)
        try:
            params = ChainParams.from_json(text)
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise _ConfigError(f"bad params file {args.params}: {exc}") from exc
        if args.n_sites is not None and args.n_sites != params.n_sites:
            raise _ConfigError("--n-sites contradicts the params file")
        return params
    if args.n_sites is None:
        raise _ConfigError("either --params or --n-sites is required")
    if args.disorder_config is not None:
        text = _read_text(args.disorder_config)
        try:
            spec = DisorderSpec.from_dict(json.loads(text))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise _ConfigError(
                f"bad disorder config {args.disorder_config}: {exc}"
            ) from exc
        if args.seed:
            spec = DisorderSpec.from_dict({**spec.to_dict(), "seed": args.seed})
    else:
        spec = DisorderSpec(seed=args.seed)
    return sample_disorder(spec, args.n_sites, args.instance)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _ConfigError(f"cannot read {path}: {exc}") from exc


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_out(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ── Handlers ───────────────────────────────────────────────────────────


def _cmd_simulate(args) -> int:
    params = _load_params(args)
    try:
        psi0 = QutritState.from_string(args.initial)
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    if psi0.n_sites != params.n_sites:
        raise _ConfigError("--initial length does not match the chain size")
    if args.autocorrelator == "all":
        ac = tuple(range(1, params.n_sites + 1))
    elif args.autocorrelator:
        try:
            ac = tuple(int(x) for x in args.autocorrelator.split(","))
        except ValueError as exc:
            raise _ConfigError(f"bad --autocorrelator: {exc}") from exc
    else:
        ac = ()
    probes = ObservableSet(
        populations=True,
        magnetization=True,
        autocorrelator_sites=ac,
        chi_ea=args.chi_ea,
    )
    try:
        probes.validate(params.n_sites)
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    kick = KickSpec(g=args.g, variant=args.variant)
    rec = run_trajectory(params, kick, psi0, args.cycles, probes)
    f, close = _open_out(args.out)
    try:
        rec.write_csv(f)
    finally:
        if close:
            f.close()
    return 0


def _cmd_spectrum(args) -> int:
    params = _load_params(args)
    kick = KickSpec(g=args.g, variant=args.variant)
    report = spectral_report(params, kick)
    include = True if args.full_spectrum else None
    _write_out(args.out, report.to_json(include_spectrum=include) + "\n")
    return 0


def _cmd_sweep(args) -> int:
    text = _read_text(args.config)
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _ConfigError(f"bad sweep config: {exc}") from exc
    if args.out is not None:
        d["output_path"] = args.out
    if args.workers is not None:
        d["worker_count"] = args.workers
    if args.seed is not None:
        d.setdefault("disorder", {})["seed"] = args.seed
    try:
        cfg = SweepConfig.from_dict(d)
    except (KeyError, TypeError, ValueError) as exc:
        raise _ConfigError(f"bad sweep config: {exc}") from exc
    manifest = run_sweep(cfg)
    sys.stdout.write(
        f"sweep complete: {cfg.output_path} ({manifest.config_hash[:12]})\n"
    )
    return 0


def _cmd_map_ck(args) -> int:
    if args.invert:
        if args.j is None or args.theta is None:
            raise _ConfigError("--invert needs at least --j and --theta")
        try:
            bond = BondCoupling(
                J=args.j,
                theta=args.theta,
                J_prime=args.j_prime,
                theta_prime=args.theta_prime,
            )
            f1 = SiteField(h=args.h1, phi=args.phi1)
            f2 = SiteField(h=args.h2, phi=args.phi2)
            angles = unmap_to_cross_kerr(bond, f1, f2, args.h_identity)
        except ValueError as exc:
            raise _ConfigError(str(exc)) from exc
        _write_out(
            args.out, json.dumps(angles.to_dict(), sort_keys=True, indent=2) + "\n"
        )
        return 0
    missing = [
        n
        for n in ("theta11", "theta12", "theta21", "theta22")
        if getattr(args, n) is None
    ]
    if missing:
        raise _ConfigError(f"map-ck needs --{' --'.join(missing)}")
    try:
        angles = CrossKerrAngles(
            theta_11=args.theta11,
            theta_12=args.theta12,
            theta_21=args.theta21,
            theta_22=args.theta22,
        )
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    bond, f1, f2, h_identity = map_cross_kerr(angles)
    out = {
        "J": bond.J,
        "theta": bond.theta,
        "J_prime": bond.J_prime,
        "theta_prime": bond.theta_prime,
        "h1": f1.h,
        "phi1": f1.phi,
        "h2": f2.h,
        "phi2": f2.phi,
        "h_identity": h_identity,
    }
    _write_out(args.out, json.dumps(out, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_fft(args) -> int:
    import csv as _csv

    text = _read_text(args.input)
    rows = list(_csv.DictReader(text.splitlines()))
    if not rows or args.column not in rows[0]:
        raise _ConfigError(
            f"column {args.column!r} not found in {args.input}"
        )
    try:
        series = np.array([float(r[args.column]) for r in rows])
    except (TypeError, ValueError) as exc:
        raise _ConfigError(f"non-numeric data in column {args.column!r}") from exc
    try:
        omega, mag = fft_response(series)
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    lines = ["omega,magnitude"]
    lines += [f"{repr(float(o))},{repr(float(m))}" for o, m in zip(omega, mag)]
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_states(args) -> int:
    strings = tuple(s for s in args.strings.split(",") if s)
    try:
        fam = InitialStateFamily(
            kind=args.family, count=args.count, seed=args.seed, strings=strings
        )
        out = initial_state_strings(fam, args.n_sites)
    except ValueError as exc:
        raise _ConfigError(str(exc)) from exc
    _write_out(args.out, "\n".join(out) + "\n")
    return 0


_HANDLERS = {
    "simulate": _cmd_simulate,
    "spectrum": _cmd_spectrum,
    "sweep": _cmd_sweep,
    "map-ck": _cmd_map_ck,
    "fft": _cmd_fft,
    "states": _cmd_states,
}


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (_ConfigError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # runtime failure
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())
