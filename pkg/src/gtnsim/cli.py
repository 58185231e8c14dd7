"""Command-line interface.

Subcommands: ``state`` (print one reduced matrix), ``measure`` (S, C, Z for
one parameter tuple), ``sweep`` (grid run to CSV), ``critical`` (root
finders), ``verify`` (cross-route and oracle suites), ``preset`` (figure
recipes).  Shared flags select the physical parameters; a config file can
set the same keys, with explicit flags taking precedence.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .config import load_config
from .errors import GtnSimError, NoCrossing
from .measures import KERNEL_BACKEND, gtc_x, svetlichny_x
from .qcore import as_x_state
from .reduced import (
    SUBSYSTEMS,
    ModelParams,
    closed_form,
    evolve_model,
    reduce,
    success_probability,
)
from .spacetime import hawking_temperature
from .sweep import (
    PRESET_NAMES,
    SweepSpec,
    csv_text,
    figure_preset,
    find_critical_T,
    find_sudden_death_C,
    run_preset,
    run_sweep,
    verify_report,
)

_DEFAULTS = {
    "alpha": math.sqrt(0.5),
    "omega": 1.0,
    "T": 1.0,
    "r": 0.0,
    "p": 1.0,
    "f": "none",
    "subsystem": "AB1C1",
    "source": "closed",
    "seed": 7,
    "restarts": 200,
}


def _add_param_flags(parser):
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--alpha", type=float, help="initial-state weight in [0, 1]")
    parser.add_argument("--omega", type=float, help="mode frequency (natural units)")
    parser.add_argument("--T", type=float, dest="T", help="Hawking temperature")
    parser.add_argument(
        "--mass", type=float, help="black-hole mass; sets T = 1/(8 pi M), excludes --T"
    )
    parser.add_argument("--r", type=float, help="damping strength in [0, 1]")
    parser.add_argument("--p", type=float, help="channel mixing parameter in [0, 1]")
    parser.add_argument("--f", help="filter strength in (0, 1), or 'none'")
    parser.add_argument("--seed", type=int, help="RNG seed for stochastic steps")
    parser.add_argument("--restarts", type=int, help="optimizer restarts")


def _parse_filter(raw):
    if raw is None or raw == "none":
        return None
    if isinstance(raw, float):
        return raw
    return float(raw)


def _resolve(args, key):
    """Flag value, else config value, else built-in default."""
    explicit = getattr(args, key, None)
    if explicit is not None:
        return explicit
    if args._config_values and key in args._config_values:
        return args._config_values[key]
    return _DEFAULTS.get(key)


def _model_params(args) -> ModelParams:
    mass = _resolve(args, "mass")
    temp = _resolve(args, "T")
    if getattr(args, "mass", None) is not None and getattr(args, "T", None) is not None:
        raise GtnSimError("--T and --mass are mutually exclusive")
    if mass is not None and getattr(args, "T", None) is None:
        temp = hawking_temperature(float(mass))
    return ModelParams(
        alpha=float(_resolve(args, "alpha")),
        omega_k=float(_resolve(args, "omega")),
        T=float(temp),
        r=float(_resolve(args, "r")),
        p=float(_resolve(args, "p")),
        f=_parse_filter(_resolve(args, "f")),
    )


def _subsystems(args) -> tuple:
    raw = _resolve(args, "subsystem")
    subs = tuple(s.strip() for s in str(raw).split(",") if s.strip())
    for sub in subs:
        if sub not in SUBSYSTEMS:
            raise GtnSimError(f"unknown subsystem {sub!r}; choose from {SUBSYSTEMS}")
    return subs


def _parse_range(raw) -> tuple:
    try:
        start, stop, step = (float(part) for part in str(raw).split(":"))
    except ValueError:
        raise GtnSimError(f"range must be start:stop:step, got {raw!r}") from None
    return start, stop, step


def _open_out(args):
    path = _resolve(args, "out")
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _reduced_matrix(args, mp, sub):
    source = _resolve(args, "source")
    if source == "pipeline":
        rho5, z = evolve_model(mp)
        return reduce(rho5, sub), z
    return closed_form(sub, mp), success_probability(mp)


def _cmd_state(args):
    mp = _model_params(args)
    for sub in _subsystems(args):
        dm, z = _reduced_matrix(args, mp, sub)
        mat = dm.entries
        print(f"subsystem {sub}  (modes {', '.join(dm.labels)}; Z = {z:.12g})")
        if float(np.max(np.abs(mat.imag))) < 1e-14:
            mat = mat.real
        print(np.array2string(mat, precision=10, suppress_small=True, max_line_width=120))
    return 0


def _cmd_measure(args):
    mp = _model_params(args)
    for sub in _subsystems(args):
        dm, z = _reduced_matrix(args, mp, sub)
        x = as_x_state(dm)
        print(f"{sub}: S = {svetlichny_x(x):.12g}  C = {gtc_x(x):.12g}  Z = {z:.12g}")
    return 0


def _cmd_sweep(args):
    spec = SweepSpec(
        variable=args.variable,
        start=_parse_range(_resolve(args, "range"))[0],
        stop=_parse_range(_resolve(args, "range"))[1],
        step=_parse_range(_resolve(args, "range"))[2],
        fixed=_model_params(args),
        subsystems=_subsystems(args),
        source=_resolve(args, "source"),
    )
    result = run_sweep(spec)
    stream, owned = _open_out(args)
    try:
        stream.write(csv_text(result))
    finally:
        if owned:
            stream.close()
    if result.discrepancies:
        print(
            f"note: {len(result.discrepancies)} grid points had cross-route "
            "discrepancies (see # DISCREPANCY lines)",
            file=sys.stderr,
        )
    return 0


def _cmd_critical(args):
    mp = _model_params(args)
    sub = _subsystems(args)[0]
    lo, hi = (float(part) for part in str(args.bracket).split(":"))
    try:
        if args.measure == "S":
            value = find_critical_T(
                mp,
                (lo, hi),
                target=args.target,
                subsystem=sub,
                source=_resolve(args, "source"),
            )
            print(f"critical T = {value:.10g} (S = {args.target:g} crossing, {sub})")
        else:
            value = find_sudden_death_C(
                mp,
                args.variable,
                (lo, hi),
                subsystem=sub,
                source=_resolve(args, "source"),
            )
            print(f"sudden death at {args.variable} = {value:.10g} ({sub})")
    except NoCrossing as exc:
        print(f"no crossing in bracket: {exc.reason} "
              f"(endpoint values {exc.lo_value:.6g}, {exc.hi_value:.6g})")
    return 0


def _cmd_verify(args):
    report = verify_report(
        n_tuples=args.tuples,
        n_states=args.states,
        restarts=_resolve(args, "restarts"),
        seed=_resolve(args, "seed"),
    )
    print(f"kernel backend: {KERNEL_BACKEND}")
    print(report.render())
    return 0 if report.all_passed else 2


def _cmd_preset(args):
    names = PRESET_NAMES if args.name == "all" else (args.name,)
    for name in names:
        figure_preset(name)  # validate before any output
    if args.name == "all":
        import os

        os.makedirs(args.out_dir, exist_ok=True)
        for name in names:
            path = os.path.join(args.out_dir, f"{name}.csv")
            with open(path, "w", encoding="utf-8", newline="\n") as stream:
                stream.write(csv_text(run_preset(name)))
            print(f"wrote {path}")
        return 0
    result = run_preset(args.name)
    stream, owned = _open_out(args)
    try:
        stream.write(csv_text(result))
    finally:
        if owned:
            stream.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gtnsim",
        description=(
            "Tripartite nonlocality (S) and entanglement (C) of a GHZ-like "
            "state near a black-hole horizon under damping and filtering."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_state = sub.add_parser("state", help="print a reduced density matrix")
    p_measure = sub.add_parser("measure", help="S and C for one parameter tuple")
    p_sweep = sub.add_parser("sweep", help="run a parameter sweep to CSV")
    p_critical = sub.add_parser("critical", help="find critical points")
    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_preset = sub.add_parser("preset", help="run a figure recipe")

    for p in (p_state, p_measure, p_sweep, p_critical, p_verify, p_preset):
        _add_param_flags(p)

    for p in (p_state, p_measure, p_sweep, p_critical):
        p.add_argument("--subsystem", help=f"comma-separated subset of {SUBSYSTEMS}")
        p.add_argument("--source", choices=("pipeline", "closed", "both"))

    p_sweep.add_argument("--variable", required=True,
                         choices=("T", "r", "p", "f", "alpha", "omega_k"))
    p_sweep.add_argument("--range", help="start:stop:step")
    p_sweep.add_argument("--out", help="CSV path ('-' for stdout)")

    p_critical.add_argument("--measure", choices=("S", "C"), default="S")
    p_critical.add_argument("--variable", choices=("T", "r"), default="T")
    p_critical.add_argument("--bracket", required=True, help="lo:hi")
    p_critical.add_argument("--target", type=float, default=4.0,
                            help="S level for the crossing search")

    p_verify.add_argument("--tuples", type=int, default=500,
                          help="random tuples for the cross-route checks")
    p_verify.add_argument("--states", type=int, default=50,
                          help="states for the oracle-vs-formula check")

    p_preset.add_argument("name", help=f"one of {PRESET_NAMES} or 'all'")
    p_preset.add_argument("--out", help="CSV path for a single preset")
    p_preset.add_argument("--out-dir", default="presets_out",
                          help="output directory for 'all'")

    parser.set_defaults(
        _handlers={
            "state": _cmd_state,
            "measure": _cmd_measure,
            "sweep": _cmd_sweep,
            "critical": _cmd_critical,
            "verify": _cmd_verify,
            "preset": _cmd_preset,
        }
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._config_values = load_config(args.config) if args.config else {}
    try:
        return args._handlers[args.command](args)
    except GtnSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
