"""Command-line front end.

Exit codes: 0 success, 2 domain/constraint error, 64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

from . import analysis, compare, cycles, rig, thermo
from .config import ConfigError, RunConfig, load_config
from .errors import ConstraintError, DomainError, InfeasibleTargetError, SoftHeatError
from .rig import LoadMode

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_IO = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _out_dir(config: RunConfig) -> Path:
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit(text: str, path: Path) -> None:
    path.write_text(text, encoding="utf-8")
    sys.stdout.write(text)


# -- simulate --------------------------------------------------------------


def cmd_simulate(args, config: RunConfig) -> int:
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    props = config.gas()
    n = args.p_start * args.v_start / (props.R_molar * args.t_min)
    start = thermo.state_from_pvn(args.p_start, args.v_start, n, props)
    if args.cycle_type == "otto":
        if args.t_max is None:
            raise UsageError("otto cycles need --t-max")
        cyc = cycles.build_otto_cycle(start, args.r, args.t_max, props)
        closed_form = cycles.efficiency_otto_ideal(args.r, props.gamma)
        closed_name = "ideal Otto 1 - r^(1-gamma)"
    else:
        if (args.p_high is None) == (args.t_max is None):
            raise UsageError("constant-load cycles need exactly one of --p-high or --t-max")
        if args.t_max is not None:
            x = args.t_max / start.T
            if x <= 1:
                raise ConstraintError("--t-max must exceed the start temperature")
            cyc = cycles.build_constant_load_cycle_xr(start, x, args.r, props)
        else:
            cyc = cycles.build_constant_load_cycle(start, args.p_high, args.r, props)
        x = cyc.steps[1].end.T / start.T
        closed_form = cycles.efficiency_cl_ideal(x, args.r, props.c_v)
        closed_name = "ideal constant-load (x, r, c_v)"
    m = cycles.evaluate(cyc)

    out = _out_dir(config)
    trace = out / f"simulate_{args.cycle_type}_trace.csv"
    with open(trace, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "P_abs_pa", "V_m3", "T_k"])
        for i, step in enumerate(cyc.steps, 1):
            for P, V, T in thermo.sample_path(step, props, args.points):
                w.writerow([i, f"{P:.12g}", f"{V:.12g}", f"{T:.12g}"])

    lines = [
        f"cycle: {args.cycle_type}",
        f"gas: gamma = {props.gamma:.6g}, c_v = {props.c_v:.6g}",
        f"expansion ratio r = {args.r:.6g}",
        f"temperature ratio x = T_max/T_min = {m.T_max / m.T_min:.6g}",
    ]
    for i, s in enumerate(cyc.steps, 1):
        lines.append(
            f"step {i} {s.kind.value:<10} W = {s.work_by_gas:+.6e} J  Q = {s.heat_into_gas:+.6e} J  "
            f"dU = {s.delta_U:+.6e} J"
        )
    lines += [
        f"net work: {m.net_work:.6e} J",
        f"heat in: {m.heat_in:.6e} J",
        f"heat out: {m.heat_out:.6e} J",
        f"cyclic dU: {m.cyclic_delta_U:.3e} J",
        f"efficiency: {m.efficiency:.5f}",
        f"closed form ({closed_name}): {closed_form:.5f}",
        f"Carnot bound 1 - T_min/T_max: {cycles.carnot_efficiency(m.T_min, m.T_max):.5f}",
        f"trace: {trace.name} ({args.points} points per process)",
    ]
    _emit("\n".join(lines) + "\n", out / f"simulate_{args.cycle_type}_summary.txt")
    return EXIT_OK


# -- heatmap ---------------------------------------------------------------


def cmd_heatmap(args, config: RunConfig) -> int:
    if args.nx < 2 or args.nr < 2:
        raise UsageError("--nx and --nr must be at least 2")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    props = config.gas()
    grid = compare.sweep_ratio_grid(
        args.x_min, args.x_max, args.r_min, args.r_max, args.nx, args.nr,
        props.gamma, props.c_v, workers=args.workers,
    )
    out = _out_dir(config)
    csv_path = compare.write_grid_csv(grid, out / "heatmap.csv")
    svg_path = compare.render_heatmap_svg(
        grid, out / "heatmap.svg", (args.vmin, args.vmax), args.low_color, args.high_color
    )
    feas = grid.cells[grid.feasible]
    lines = [
        f"grid: {args.nx} x {args.nr}, x in [{args.x_min:g}, {args.x_max:g}], "
        f"r in [{args.r_min:g}, {args.r_max:g}], gamma = {props.gamma:.6g}",
        f"feasible cells: {feas.size} of {grid.cells.size}",
        f"ratio range: {feas.min():.6f} .. {feas.max():.6f}",
        f"wrote {csv_path.name}, {svg_path.name}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


# -- design ----------------------------------------------------------------


def cmd_design(args, config: RunConfig) -> int:
    mode = LoadMode(args.mode)
    r = config.rig(mode)
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    theta_min = config.theta0_deg if args.theta_min_deg is None else args.theta_min_deg
    theta0 = math.radians(theta_min)
    theta1 = math.radians(args.theta_max_deg)
    if not theta1 > theta0:
        raise UsageError("--theta-max-deg must exceed --theta-min-deg")
    p_exp = args.p_expand if args.p_expand is not None else (13000.0 if mode is LoadMode.CONSTANT_LOAD else 14000.0)
    p_res = args.p_restore if args.p_restore is not None else 11000.0
    if p_res >= p_exp:
        raise InfeasibleTargetError(
            f"restoring target {p_res:g} Pa must be below expansion target {p_exp:g} Pa"
        )
    thetas = [theta0 + (theta1 - theta0) * i / (args.points - 1) for i in range(args.points)]
    lines = [f"mode: {mode.value}", f"A * r_a = {r.lever_area:.6e} m^3 (A = {r.A:.6e} m^2, r_a = {r.r_a:.6g} m)"]
    if mode is LoadMode.CONSTANT_LOAD:
        m2_e = rig.solve_mass_for_pressure(r, theta0, p_exp, mode)
        m2_r = rig.solve_mass_for_pressure(r, theta0, p_res, mode)
        expand = rig.build_profile(r, thetas, mode, m2_e)
        restore = rig.build_profile(r, thetas, mode, m2_r)
        lines += [
            f"expansion mass m2 = {m2_e:.4f} kg at r_mx2 = {r.r_mx2:g} m",
            f"restoring mass m2 = {m2_r:.4f} kg at r_mx2 = {r.r_mx2:g} m",
        ]
    else:
        m1 = rig.solve_fixed_mass(r, p_res)
        m2 = rig.solve_mass_for_pressure(r, theta0, p_exp, mode, m1)
        restore = rig.build_profile(r, thetas, mode, 0.0, m1)
        expand = rig.build_profile(r, thetas, mode, m2, m1)
        lines += [
            f"fixed mass m1 = {m1:.4f} kg at r_mx1 = {r.r_mx1:g} m, r_my1 = {r.r_my1:g} m "
            f"(configured m1 = {config.otto_m1:g} kg)",
            f"expansion mass m2 = {m2:.4f} kg at r_mx2 = {r.r_mx2:g} m",
            "both profiles decrease with angle: yes",
        ]
    ok, margin = rig.check_positive_work(expand, restore)
    lines.append(f"positive work: {'yes' if ok else 'no'} (minimum margin {margin:.3f} Pa)")
    lines.append("")
    lines.append(f"{'theta_deg':>10} {'P_expand_pa':>12} {'P_restore_pa':>12}")
    for t, pe, pr in zip(thetas, expand.pressures, restore.pressures):
        lines.append(f"{math.degrees(t):>10.4f} {pe:>12.3f} {pr:>12.3f}")
    out = _out_dir(config)
    _emit("\n".join(lines) + "\n", out / f"design_{mode.value}.txt")
    if not ok:
        return EXIT_DOMAIN
    return EXIT_OK


# -- analyze ---------------------------------------------------------------


def _masses(args, config: RunConfig, mode: LoadMode) -> analysis.LoadMasses:
    m = config.masses(mode)
    if args.m2 is not None:
        m = analysis.LoadMasses(args.m2, m.m2_restore, m.m1)
    if args.m2_restore is not None:
        m = analysis.LoadMasses(m.m2_expand, args.m2_restore, m.m1)
    return m


def _synthetic(mode: LoadMode, config: RunConfig, args) -> analysis.SyntheticConfig:
    base = analysis.reference_constant_load_config if mode is LoadMode.CONSTANT_LOAD else analysis.reference_otto_config
    return base(
        rig=config.rig(mode),
        masses=config.masses(mode),
        heater=config.heater(),
        n_cycles=config.warmup_skip + args.cycles,
        sigma_angle_deg=args.noise_deg,
    )


def _analyze_one(log_path, mode, args, config, out):
    mode = LoadMode(mode)
    if log_path is None:
        syn = _synthetic(mode, config, args)
        log, _ = analysis.generate_synthetic(syn, args.seed)
        log_path = analysis.write_timeseries(log, out / f"synthetic_{mode.value}.csv")
    log = analysis.load_timeseries(log_path)
    report = analysis.analyze(
        log, config.rig(mode), mode, _masses(args, config, mode), config.heater(),
        config.smoothing_window_s, config.warmup_skip,
    )
    analysis.write_report_csv(report, out / f"analyze_{mode.value}.csv")
    text = f"log: {Path(log_path).name}\n" + analysis.format_report(report)
    _emit(text, out / f"analyze_{mode.value}.txt")
    return report


def cmd_analyze(args, config: RunConfig) -> int:
    out = _out_dir(config)
    runs = []
    if args.synthetic:
        modes = list(LoadMode) if args.synthetic == "both" else [LoadMode(args.synthetic)]
        runs = [(None, m) for m in modes]
    else:
        if args.log is None:
            raise UsageError("give a log path or --synthetic")
        runs.append((args.log, args.mode))
        if args.compare_log is not None:
            other = args.compare_mode or (
                "otto" if LoadMode(args.mode) is LoadMode.CONSTANT_LOAD else "constant_load"
            )
            runs.append((args.compare_log, other))
    reports = {}
    for path, mode in runs:
        rep = _analyze_one(path, mode, args, config, out)
        reports[rep.mode] = rep
    if len(reports) == 2:
        if set(reports) != set(LoadMode):
            raise UsageError("comparison needs one constant-load and one otto log")
        if not all(r.cycles for r in reports.values()):
            raise SoftHeatError("comparison needs at least one analyzed cycle per log")
        text = analysis.format_comparison(reports[LoadMode.CONSTANT_LOAD], reports[LoadMode.OTTO])
        _emit("\n" + text, out / "comparison.txt")
    return EXIT_OK


# -- characterize ----------------------------------------------------------


def cmd_characterize(args, config: RunConfig) -> int:
    for name in ("p_initial", "p_expanded", "otto_max", "cl_max", "cl_restore"):
        if getattr(args, name) < 0:
            raise DomainError(f"--{name.replace('_', '-')} must be a non-negative gauge pressure")
    rep = analysis.characterize(
        p_initial_gauge=args.p_initial,
        p_expanded_gauge=args.p_expanded,
        otto_max_gauge=args.otto_max,
        cl_max_gauge=args.cl_max,
        cl_restore_gauge=args.cl_restore,
        observed_compression_rise=args.observed_rise,
        observed_expansion_span=args.observed_span,
        gamma=config.gas().gamma,
        ambient_pressure=config.ambient_pressure,
    )
    out = _out_dir(config)
    _emit(rep.format(), out / "characterize.txt")
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--config", help="key = value config file")
    shared.add_argument("--out", help="output directory (default ./out)")
    shared.add_argument("--seed", type=int, default=0, help="seed for synthetic generation")
    shared.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a config key, e.g. --set rig.r_a=0.15")
    shared.add_argument("--gamma", type=float, help="specific heat ratio")
    shared.add_argument("--c-v", dest="c_v", type=float, help="molar c_v in units of R")

    p = _Parser(prog="softheat", description="Air-based soft heat engine cycle toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", parents=[shared], help="build and evaluate an ideal cycle")
    s.add_argument("cycle_type", choices=["constant_load", "otto"])
    s.add_argument("--r", type=float, required=True, help="expansion ratio")
    s.add_argument("--t-min", type=float, default=300.0, help="start (lowest) temperature, K")
    s.add_argument("--t-max", type=float, help="highest temperature, K")
    s.add_argument("--p-high", type=float, help="constant-load expansion pressure, Pa absolute")
    s.add_argument("--p-start", type=float, default=108225.0, help="start pressure, Pa absolute")
    s.add_argument("--v-start", type=float, default=1.0e-4, help="start volume, m^3")
    s.add_argument("--points", type=int, default=100, help="trace points per process (>= 2)")
    s.set_defaults(func=cmd_simulate)

    h = sub.add_parser("heatmap", parents=[shared], help="constant-load/Otto efficiency ratio grid")
    h.add_argument("--x-min", type=float, default=compare.DEFAULT_X_RANGE[0])
    h.add_argument("--x-max", type=float, default=compare.DEFAULT_X_RANGE[1])
    h.add_argument("--r-min", type=float, default=compare.DEFAULT_R_RANGE[0])
    h.add_argument("--r-max", type=float, default=compare.DEFAULT_R_RANGE[1])
    h.add_argument("--nx", type=int, default=compare.DEFAULT_RESOLUTION)
    h.add_argument("--nr", type=int, default=compare.DEFAULT_RESOLUTION)
    h.add_argument("--workers", type=int, default=1, help="threads for row evaluation")
    h.add_argument("--vmin", type=float, default=0.0)
    h.add_argument("--vmax", type=float, default=1.0)
    h.add_argument("--low-color", default="#440154")
    h.add_argument("--high-color", default="#fde725")
    h.set_defaults(func=cmd_heatmap)

    d = sub.add_parser("design", parents=[shared], help="solve lever masses for target pressures")
    d.add_argument("mode", choices=[m.value for m in LoadMode])
    d.add_argument("--p-expand", type=float, help="expansion pressure target, Pa gauge")
    d.add_argument("--p-restore", type=float, help="restoring pressure target, Pa gauge")
    d.add_argument("--theta-min-deg", type=float, help="stroke start angle (default rig.theta0_deg)")
    d.add_argument("--theta-max-deg", type=float, default=1.4)
    d.add_argument("--points", type=int, default=15)
    d.set_defaults(func=cmd_design)

    a = sub.add_parser("analyze", parents=[shared], help="per-cycle metrics from a sensor log")
    a.add_argument("log", nargs="?", help="CSV log")
    a.add_argument("--mode", choices=[m.value for m in LoadMode], default="constant_load")
    a.add_argument("--compare-log", help="second log for a constant-load vs otto comparison")
    a.add_argument("--compare-mode", choices=[m.value for m in LoadMode])
    a.add_argument("--synthetic", choices=["constant_load", "otto", "both"],
                   help="generate and analyze a synthetic log with the configured parameters")
    a.add_argument("--cycles", type=int, default=3, help="synthetic cycles after warm-up")
    a.add_argument("--noise-deg", type=float, default=0.0, help="synthetic angle noise sigma, deg")
    a.add_argument("--m2", type=float, help="expansion (removable) mass, kg")
    a.add_argument("--m2-restore", type=float, help="constant-load restoring mass, kg")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("characterize", parents=[shared], help="actuator characterization estimates")
    c.add_argument("--p-initial", type=float, default=6900.0, help="gauge Pa before slow expansion")
    c.add_argument("--p-expanded", type=float, default=4055.0, help="gauge Pa after slow expansion")
    c.add_argument("--otto-max", type=float, default=14000.0, help="decreasing-load max target, Pa gauge")
    c.add_argument("--cl-max", type=float, default=13000.0, help="constant-load max target, Pa gauge")
    c.add_argument("--cl-restore", type=float, default=11000.0, help="constant-load restore target, Pa gauge")
    c.add_argument("--observed-rise", type=float, default=analysis.OBSERVED_COMPRESSION_RISE)
    c.add_argument("--observed-span", type=float, default=analysis.OBSERVED_EXPANSION_SPAN)
    c.set_defaults(func=cmd_characterize)
    return p


def _overrides(args) -> dict:
    values = {}
    for item in args.set:
        if "=" not in item:
            raise UsageError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = item.split("=", 1)
        values[key.strip()] = value.strip()
    if args.gamma is not None:
        values["gas.gamma"] = repr(args.gamma)
    if args.c_v is not None:
        values["gas.c_v"] = repr(args.c_v)
    if args.out is not None:
        values["output_dir"] = args.out
    return values


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config, _overrides(args))
        return args.func(args, config)
    except (UsageError, ConfigError) as exc:
        print(f"softheat {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SoftHeatError as exc:
        print(f"softheat {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"softheat {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
