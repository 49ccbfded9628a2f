"""Command-line interface.

Subcommands: report, sweep, optimize, simulate, sensitivity. Exit codes:
0 success, 1 I/O failure, 2 validation failure, 3 infeasible search.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .configfile import get_value, load_config, set_value, KEY_MAP, KIND_FLOAT
from .constants import to_display_hz
from .dynamics import evolve_occupation, normal_modes
from .errors import (ConfigError, InfeasibleError, InvalidGeometryError,
                     SingularConfigurationError)
from .report import build_report, document_to_dict, format_quantity, render_json, render_text
from .steady_state import evaluate
from .sweep import OptimizeSpec, SweepSpec, optimize, run_sweep

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levicool",
        description=("Modeling toolkit for sympathetic cooling of an optically "
                     "levitated nanosphere by lattice-trapped cold atoms."),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="evaluate one configuration")
    report.add_argument("--config", required=True)
    report.add_argument("--format", choices=("text", "json"), default="text")

    sweep = sub.add_parser("sweep", help="map n_ss over (radius, atom count)")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--radius", default="50:300:26",
                       help="radius grid, nm, as lo:hi:steps")
    sweep.add_argument("--atoms", default="1e6:1e8:21",
                       help="atom-count grid as lo:hi:steps")
    sweep.add_argument("--log-atoms", action="store_true",
                       help="log-space the atom-count grid")
    sweep.add_argument("--out", required=True, help="CSV output path")
    sweep.add_argument("--parallel", action="store_true",
                       help="evaluate grid cells concurrently")

    opt = sub.add_parser("optimize", help="minimize n_ss under regime constraints")
    opt.add_argument("--config", required=True)
    opt.add_argument("--vary", default="", help="comma-separated config keys")
    opt.add_argument("--bounds", default="",
                     help="comma-separated lo:hi pairs matching --vary")
    opt.add_argument("--require", default="",
                     help="comma-separated regime flags that must hold")
    opt.add_argument("--trace-out", default=None, help="write the search trace CSV")
    opt.add_argument("--format", choices=("text", "json"), default="text")

    sim = sub.add_parser("simulate", help="time-evolve the sphere occupation")
    sim.add_argument("--config", required=True)
    sim.add_argument("--t-end", type=float, default=1e-3, help="s")
    sim.add_argument("--dt", type=float, default=None,
                     help="s; default 0.02 of the relaxation time")
    sim.add_argument("--n0", type=float, default=None,
                     help="initial occupation; default: thermal")
    sim.add_argument("--cooling-off-at", type=float, default=None, help="s")
    sim.add_argument("--out", required=True, help="trace CSV output path")

    sens = sub.add_parser("sensitivity",
                          help="central-difference response of n_ss to one key")
    sens.add_argument("--config", required=True)
    sens.add_argument("--param", required=True)
    sens.add_argument("--rel-step", type=float, default=0.01)
    sens.add_argument("--format", choices=("text", "json"), default="text")

    return parser


def _load(path: str):
    if not Path(path).exists():
        raise FileNotFoundError(f"config file not found: {path}")
    return load_config(path)


def _parse_range(text: str, name: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--{name} must be lo:hi:steps, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError:
        raise ConfigError(f"--{name} must be numeric lo:hi:steps, got {text!r}") from None
    return lo, hi, steps


def _cmd_report(args) -> int:
    config = _load(args.config)
    derived, bundle, steady = evaluate(config)
    document = build_report(config, derived, bundle, steady)
    if args.format == "json":
        sys.stdout.write(render_json(document))
    else:
        sys.stdout.write(render_text(document))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _load(args.config)
    r_lo, r_hi, r_steps = _parse_range(args.radius, "radius")
    a_lo, a_hi, a_steps = _parse_range(args.atoms, "atoms")
    spec = SweepSpec(
        base_config=config,
        radius_start=r_lo * 1e-9, radius_stop=r_hi * 1e-9, radius_steps=r_steps,
        atoms_start=a_lo, atoms_stop=a_hi, atoms_steps=a_steps,
        log_atoms=args.log_atoms,
    )
    result = run_sweep(spec, parallel=args.parallel)
    Path(args.out).write_text(result.to_csv(), encoding="utf-8")
    print(f"wrote {len(result.cells)} rows to {args.out}")
    best = result.min_occupation_cell()
    if best is None:
        print("no valid cells")
    else:
        print(f"min n_ss = {format_quantity(best.occupation)} at "
              f"a = {format_quantity(best.radius * 1e9)} nm, "
              f"N_at = {format_quantity(best.atom_count)}")
        print(f"strong-coupling fraction = "
              f"{format_quantity(result.strong_coupling_fraction())}")
    return EXIT_OK


def _split_csv_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _cmd_optimize(args) -> int:
    config = _load(args.config)
    variables = tuple(_split_csv_list(args.vary))
    bound_parts = _split_csv_list(args.bounds)
    if len(bound_parts) != len(variables):
        raise ConfigError("--bounds must supply one lo:hi pair per --vary key")
    bounds = {}
    for name, part in zip(variables, bound_parts):
        pieces = part.split(":")
        if len(pieces) != 2:
            raise ConfigError(f"bad bounds {part!r} for {name!r}; expected lo:hi")
        try:
            bounds[name] = (float(pieces[0]), float(pieces[1]))
        except ValueError:
            raise ConfigError(f"bad bounds {part!r} for {name!r}") from None
    spec = OptimizeSpec(
        base_config=config,
        variables=variables,
        bounds=bounds,
        require=tuple(_split_csv_list(args.require)),
    )
    result = optimize(spec)

    if args.trace_out:
        header = list(variables) + ["n_ss", "feasible", "note"]
        lines = [",".join(header)]
        for entry in result.trace:
            row = [format(entry[name], ".12g") for name in variables]
            n_ss = entry["n_ss"]
            row.append("" if math.isnan(n_ss) else format(n_ss, ".12g"))
            row.append("true" if entry["feasible"] else "false")
            row.append(entry["note"])
            lines.append(",".join(row))
        Path(args.trace_out).write_text("\n".join(lines) + "\n", encoding="utf-8")

    derived, bundle, steady = evaluate(result.config)
    document = build_report(result.config, derived, bundle, steady)
    if args.format == "json":
        payload = document_to_dict(document)
        payload["optimize"] = {
            "best": {k: float(v) for k, v in result.best_values.items()},
            "n_ss": result.occupation,
            "evaluations": result.evaluations,
        }
        import json as _json
        sys.stdout.write(_json.dumps(payload, indent=2) + "\n")
    else:
        print("[optimize]")
        for name in variables:
            print(f"{name} = {format_quantity(result.best_values[name])}")
        print(f"n_ss = {format_quantity(result.occupation)}")
        print(f"evaluations = {result.evaluations}")
        print()
        sys.stdout.write(render_text(document))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = _load(args.config)
    derived, bundle, steady = evaluate(config)
    relaxation = bundle.gas_damping + bundle.cooling
    dt = args.dt if args.dt is not None else 0.02 / relaxation
    n0 = args.n0 if args.n0 is not None else bundle.thermal_occupation
    trace = evolve_occupation(bundle, n0, args.t_end, dt,
                              cooling_off_at=args.cooling_off_at)
    Path(args.out).write_text(trace.to_csv(), encoding="utf-8")
    print(f"wrote {len(trace.times)} samples to {args.out}")
    print(f"final n_m = {format_quantity(trace.final_occupation)}")
    print(f"steady-state n_ss (cooling on) = {format_quantity(steady.occupation)}")
    if steady.flags.strong_coupling:
        modes = normal_modes(
            bundle.sphere_frequency, bundle.atom_frequency, bundle.coupling,
            sphere_damping=(bundle.sphere_backaction + bundle.sphere_recoil
                            + bundle.thermalization),
            atom_damping=bundle.atom_diffusion,
        )
        print("[normal_modes]")
        for label, branch in (("lower", modes.lower), ("upper", modes.upper)):
            print(f"{label} = 2pi x {format_quantity(to_display_hz(branch.frequency))} Hz "
                  f"(damping 2pi x {format_quantity(to_display_hz(branch.damping))} Hz)")
        print(f"splitting = 2pi x {format_quantity(to_display_hz(modes.splitting))} Hz")
        print(f"resolved = {'true' if modes.resolved else 'false'}")
    return EXIT_OK


def _cmd_sensitivity(args) -> int:
    config = _load(args.config)
    spec = KEY_MAP.get(args.param)
    if spec is None:
        raise ConfigError(f"unknown key {args.param!r}")
    if spec.kind != KIND_FLOAT:
        raise ConfigError(f"{args.param!r} is not a numeric key")
    if not 0 < args.rel_step <= 0.1:
        raise ConfigError("--rel-step must be in (0, 0.1]")
    base_value = get_value(config, args.param)
    if base_value is None or base_value == 0:
        raise ConfigError(
            f"{args.param!r} must be set and nonzero for a relative step")

    low_value = base_value * (1.0 - args.rel_step)
    high_value = base_value * (1.0 + args.rel_step)
    results = {}
    documents = {}
    for label, value in (("low", low_value), ("high", high_value)):
        perturbed = set_value(config, args.param, value)
        derived, bundle, steady = evaluate(perturbed)
        results[label] = steady.occupation
        documents[label] = build_report(perturbed, derived, bundle, steady)
    _, _, steady_base = evaluate(config)

    derivative = (results["high"] - results["low"]) / (high_value - low_value)
    if results["high"] > 0 and results["low"] > 0:
        elasticity = (math.log(results["high"]) - math.log(results["low"])) / (
            math.log(high_value) - math.log(low_value))
    else:
        elasticity = math.nan

    if args.format == "json":
        import json as _json
        payload = {
            "sensitivity": {
                "param": args.param,
                "rel_step": args.rel_step,
                "base_value": base_value,
                "base_n_ss": steady_base.occupation,
                "low_value": low_value,
                "low_n_ss": results["low"],
                "high_value": high_value,
                "high_n_ss": results["high"],
                "d_n_ss_d_param": derivative,
                "elasticity": elasticity,
            },
            "report_low": document_to_dict(documents["low"]),
            "report_high": document_to_dict(documents["high"]),
        }
        sys.stdout.write(_json.dumps(payload, indent=2) + "\n")
    else:
        print("[sensitivity]")
        print(f"param = {args.param}")
        print(f"base_value = {format_quantity(base_value)}")
        print(f"base_n_ss = {format_quantity(steady_base.occupation)}")
        print(f"low:  value = {format_quantity(low_value)}, "
              f"n_ss = {format_quantity(results['low'])}")
        print(f"high: value = {format_quantity(high_value)}, "
              f"n_ss = {format_quantity(results['high'])}")
        print(f"d_n_ss_d_param = {format_quantity(derivative)}")
        print(f"elasticity = {format_quantity(elasticity)}")
    return EXIT_OK


_COMMANDS = {
    "report": _cmd_report,
    "sweep": _cmd_sweep,
    "optimize": _cmd_optimize,
    "simulate": _cmd_simulate,
    "sensitivity": _cmd_sensitivity,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        for violation in exc.violations:
            print(f"error: {violation}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InvalidGeometryError, SingularConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        if exc.violated:
            print(f"violated constraints: {', '.join(exc.violated)}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
