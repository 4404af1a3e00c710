"""
Command-line interface: `tospdc <subcommand>`.

Datasets go to stdout (or to `--out DIR`, one CSV per dataset); diagnostics go to
stderr. Exit status is 0 on success, 2 for invalid input and 3 for numerical failures.
"""
import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Any, Iterator, List, Optional, Sequence, TextIO

import numpy as np

from ._csv import write_rows
from ._defaults import Defaults
from ._errors import InputError, NumericalError
from ._flux_method import FluxMethod, Regime
from ._mode_id import ModeId
from ._numerics import NumericsConfig, default_numerics
from ._sweep_parameter import SweepParameter
from ._views import JsaView, MapKind
from .designs import PRESETS, Design, broadened, load_design, preset
from .dispersion import FUSED_SILICA, omega_to_wavelength, wavelength_to_omega
from .fiber_modes import tabulate_dispersion, write_dispersion_csv
from .flux import design_report, flux_by_method, sweep, write_sweep_csv
from .nonlinearity import Chi3
from .phasematching import (
    degenerate_wavelength_curve,
    emission_contour_vs_pump,
    emission_contour_vs_radius,
    find_phasematching_radius,
    find_vertex_radius,
    gamma_map,
    write_contour_csv,
    write_degenerate_curve_csv,
    write_gamma_map_csv,
)
from .triplet_state import (
    MODES,
    Marginal,
    filtered_jsa,
    jsa,
    jsa_axis_rotated,
    jsa_coordinate_planes,
    jsa_slice_rotated,
    marginal_single,
    marginal_two_photon,
    write_matrix_csv,
)

__all__ = ("main", "make_parser",)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

LOG_FORMAT = "%(asctime)s [%(levelname)s] [%(name)s] %(message)s"

# Sweep values are given in laboratory units and converted with these factors
_SWEEP_UNITS = {
    SweepParameter.SIGMA: 1e9,
    SweepParameter.LENGTH: 1e-2,
    SweepParameter.POWER: 1e-3,
}


class Output:
    """
    Routes named datasets either to files under a directory or to a single stream.

    On a stream, each dataset of a multi-dataset command is preceded by a
    `# dataset=<name>` line.
    """

    def __init__(self, out_dir: Optional[Path], stream: TextIO, *, tagged: bool = False) -> None:
        self._out_dir = out_dir
        self._stream = stream
        self._tagged = tagged

    @contextmanager
    def dataset(self, name: str, suffix: str = "csv") -> Iterator[TextIO]:
        if self._out_dir is None:
            if self._tagged:
                self._stream.write(f"# dataset={name}\n")
            yield self._stream
            return
        self._out_dir.mkdir(parents=True, exist_ok=True)
        path = self._out_dir / f"{name}.{suffix}"
        with open(path, "w", newline="") as f:
            yield f
        logger.info("Wrote %s", path)


def _design(args: Namespace) -> Design:
    if args.design is not None:
        design = load_design(args.design)
    elif args.preset is not None:
        design = preset(args.preset)
    else:
        raise InputError("This command needs a design: pass --design FILE or "
                         f"--preset {{{','.join(PRESETS)}}}")
    # Command-line numerics take precedence over the design file's block
    return Design(name=design.name, config=design.config,
                  numerics=_numerics(args, design.numerics))


def _numerics(args: Namespace, base: NumericsConfig) -> NumericsConfig:
    numerics = base
    if args.grid_scale != 1.0:
        numerics = numerics.scaled(args.grid_scale)
    if args.threads is not None:
        if args.threads < 1:
            raise InputError(f"--threads must be at least 1, got {args.threads}")
        numerics = replace(numerics, threads=args.threads)
    if args.verify_profiles:
        numerics = replace(numerics, verify_profiles=True)
    return numerics


def _linspace(lo: float, hi: float, points: int, what: str) -> np.ndarray:
    if points < 1:
        raise InputError(f"{what} needs at least one point, got {points}")
    if points > 1 and not lo < hi:
        raise InputError(f"{what} range [{lo:g}, {hi:g}] must be increasing")
    return np.linspace(lo, hi, points)


def cmd_phasematch(args: Namespace, output: Output) -> None:
    bracket = (args.bracket_um[0] * 1e-6, args.bracket_um[1] * 1e-6)
    if args.lambda_um:
        core = FUSED_SILICA
        cladding_index = Defaults.cladding_index
        numerics = _numerics(args, default_numerics)
        if args.design is not None or args.preset is not None:
            design = _design(args)
            core, cladding_index = design.config.fiber.core, design.config.fiber.cladding_index
            numerics = design.numerics
        rows = []
        for lam in args.lambda_um:
            radius = find_phasematching_radius(lam * 1e-6, bracket, core=core,
                                               cladding_index=cladding_index, numerics=numerics)
            logger.info("Degenerate emission at %.6g um phasematches at r = %.4f um",
                        lam, radius * 1e6)
            rows.append((lam, radius * 1e6))
        with output.dataset("phasematch") as stream:
            write_rows(stream, ("lambda_um", "radius_um"), rows)
        return

    design = _design(args)
    config = design.config
    radius = find_vertex_radius(config.pump.omega_p0, config.omega_i0, bracket,
                                core=config.fiber.core,
                                cladding_index=config.fiber.cladding_index,
                                numerics=design.numerics)
    row = (omega_to_wavelength(config.pump.omega_p0) * 1e6,
           omega_to_wavelength(config.omega_i0) * 1e6, radius * 1e6)
    with output.dataset("phasematch") as stream:
        write_rows(stream, ("lambda_p_um", "lambda_i_um", "radius_um"), [row])


def cmd_maps(args: Namespace, output: Output) -> None:
    kind: MapKind = args.map
    if kind == MapKind.DEG_CURVE:
        core, cladding_index = FUSED_SILICA, Defaults.cladding_index
        numerics = _numerics(args, default_numerics)
        chi3 = Chi3()
        if args.design is not None or args.preset is not None:
            design = _design(args)
            core, cladding_index = design.config.fiber.core, design.config.fiber.cladding_index
            numerics, chi3 = design.numerics, design.config.chi3
        r_min = 0.30 if args.r_min_um is None else args.r_min_um
        r_max = 0.48 if args.r_max_um is None else args.r_max_um
        radii = _linspace(r_min, r_max, args.points, "Radius") * 1e-6
        curve = degenerate_wavelength_curve(radii, core=core, cladding_index=cladding_index,
                                            chi3=chi3, numerics=numerics)
        with output.dataset("deg_curve") as stream:
            write_degenerate_curve_csv(curve, stream)
        return

    design = _design(args)
    config, numerics = design.config, design.numerics
    fiber = config.fiber
    omega_p0 = config.pump.omega_p0
    span = args.pump_span_pct / 100
    pumps = _linspace(omega_p0 * (1 - span), omega_p0 * (1 + span), args.points, "Pump")

    if kind == MapKind.CONTOUR_VS_PUMP:
        points = emission_contour_vs_pump(fiber, config.omega_i0, pumps, numerics=numerics)
        with output.dataset("contour_vs_pump") as stream:
            write_contour_csv(points, stream)
    elif kind == MapKind.CONTOUR_VS_RADIUS:
        r_min = fiber.radius * 0.98e6 if args.r_min_um is None else args.r_min_um
        r_max = fiber.radius * 1.02e6 if args.r_max_um is None else args.r_max_um
        radii = _linspace(r_min, r_max, args.points, "Radius") * 1e-6
        points = emission_contour_vs_radius(omega_p0, config.omega_i0, radii,
                                            core=fiber.core,
                                            cladding_index=fiber.cladding_index,
                                            numerics=numerics)
        with output.dataset("contour_vs_radius") as stream:
            write_contour_csv(points, stream)
    elif kind == MapKind.GAMMA_MAP:
        delta_max = args.delta_max_THz * 1e12
        deltas = _linspace(-delta_max, delta_max, args.points, "Detuning")
        gmap = gamma_map(fiber, config.omega_i0, pumps, deltas, chi3=config.chi3,
                         numerics=numerics)
        with output.dataset("gamma_map") as stream:
            write_gamma_map_csv(gmap, stream)
    else:
        mode = ModeId(args.mode)
        # Wavelength order is reversed in frequency
        omega_min = float(wavelength_to_omega(args.lambda_max_um * 1e-6))
        omega_max = float(wavelength_to_omega(args.lambda_min_um * 1e-6))
        table = tabulate_dispersion(fiber, mode, omega_min, omega_max, args.points,
                                    numerics=numerics)
        with output.dataset(f"dispersion_{mode}") as stream:
            write_dispersion_csv(table, stream)


def _write_single(marginal: Marginal, center: float, stream: TextIO) -> None:
    nu = marginal.axes[0]
    rows = zip(nu, center + nu, omega_to_wavelength(center + nu) * 1e6, marginal.values)
    write_rows(stream, ("nu_rad_s", "omega_rad_s", "lambda_um", "intensity"), rows)


def _jsa_axes(args: Namespace) -> Optional[Any]:
    if args.extent_THz is None:
        return None
    axis = _linspace(-args.extent_THz * 1e12, args.extent_THz * 1e12, args.points, "Detuning")
    return axis, axis, axis


def _singles(grid: Any, numerics: NumericsConfig) -> List[Marginal]:
    return [marginal_single(grid, mode, numerics=numerics) for mode in MODES]


def cmd_jsa(args: Namespace, output: Output) -> None:
    design = _design(args)
    config, numerics = design.config, design.numerics
    if args.broadened:
        config = broadened(config)
        logger.info("Using the broadened design: L = %.4g m, sigma = %.4g rad/s",
                    config.length, config.pump.sigma)
    view: JsaView = args.view
    if view == JsaView.FILTERED and config.filters is None:
        raise InputError("The filtered view needs filters; set emission.filter_THz")

    if view == JsaView.SLICES:
        extent = (50.0 if args.extent_THz is None else args.extent_THz) * 1e12
        axis = _linspace(-extent, extent, args.points, "Detuning")
        for value in args.plus_GHz:
            plane = jsa_slice_rotated(config, value * 1e9, axis, axis, numerics=numerics)
            with output.dataset(f"slice_plus_{value:g}GHz") as stream:
                write_matrix_csv(plane.nu_a, plane.nu_b, plane.intensity, stream,
                                 corner="nu_A\\nu_B")
    elif view == JsaView.AXIS:
        extent = 4 * np.sqrt(3) * config.pump.sigma
        plus = _linspace(-extent, extent, args.points, "nu_plus")
        intensity = jsa_axis_rotated(config, plus, numerics=numerics)
        with output.dataset("axis") as stream:
            write_rows(stream, ("nu_plus_rad_s", "intensity"), zip(plus, intensity))
    elif view == JsaView.PLANES:
        extent = (50.0 if args.extent_THz is None else args.extent_THz) * 1e12
        axis = _linspace(-extent, extent, args.points, "Detuning")
        for plane in jsa_coordinate_planes(config, axis, numerics=numerics):
            label = "".join(plane.modes)
            corner = f"nu_{plane.modes[0]}\\nu_{plane.modes[1]}"
            for name, matrix in (("pump", plane.pump), ("phasematching", plane.phasematching),
                                 ("jsi", plane.jsi)):
                with output.dataset(f"plane_{label}_{name}") as stream:
                    write_matrix_csv(plane.axis_a, plane.axis_b, matrix, stream, corner=corner)
    else:
        grid = jsa(config, _jsa_axes(args), numerics=numerics)
        if view == JsaView.FILTERED:
            grid = filtered_jsa(grid, config.filters)
        else:
            for traced in MODES:
                pair = marginal_two_photon(grid, traced, numerics=numerics)
                with output.dataset(f"marginal_{''.join(pair.modes)}") as stream:
                    write_matrix_csv(pair.axes[0], pair.axes[1], pair.values, stream,
                                     corner=f"nu_{pair.modes[0]}\\nu_{pair.modes[1]}")
            _log_marginal_consistency(grid, numerics)
        prefix = "filtered" if view == JsaView.FILTERED else "single"
        for mode, single, center in zip(MODES, _singles(grid, numerics),
                                        config.emission_centers):
            with output.dataset(f"{prefix}_{mode}") as stream:
                _write_single(single, center, stream)


def _log_marginal_consistency(grid: Any, numerics: NumericsConfig) -> None:
    # Each single marginal is reachable through two different two-photon marginals
    worst = 0.0
    for kept in MODES:
        others = [m for m in MODES if m != kept]
        a = marginal_two_photon(grid, others[0], numerics=numerics).integrate(others[1])
        b = marginal_two_photon(grid, others[1], numerics=numerics).integrate(others[0])
        scale = float(np.abs(a.values).max())
        if scale > 0:
            worst = max(worst, float(np.abs(a.values - b.values).max()) / scale)
    logger.info("Two-photon to single-photon marginal agreement: %.3g%% max deviation",
                100 * worst)


def _sweep_values(args: Namespace) -> np.ndarray:
    factor = _SWEEP_UNITS[args.sweep]
    if args.values:
        values = np.asarray(args.values, dtype=float)
    elif args.range:
        start, stop, count = args.range
        values = _linspace(start, stop, int(count), "Sweep")
    else:
        raise InputError("--sweep needs --values or --range")
    if not np.all(values > 0) and args.sweep != SweepParameter.POWER:
        raise InputError(f"Sweep values for {args.sweep} must be positive")
    return values * factor


def cmd_flux(args: Namespace, output: Output) -> None:
    design = _design(args)
    methods: Optional[List[FluxMethod]] = args.method or None

    if args.sweep is not None:
        rows = sweep(design.config, args.sweep, _sweep_values(args), methods,
                     regime=args.regime, numerics=design.numerics)
        with output.dataset(f"flux_vs_{args.sweep}") as stream:
            write_sweep_csv(rows, stream)
        return

    if methods is None:
        methods = [FluxMethod.NUMERIC]
        if not design.config.is_degenerate and design.config.common_filter_bandwidth:
            methods.append(FluxMethod.ANALYTIC)
    results = [flux_by_method(design.config, m, args.regime, numerics=design.numerics)
               for m in methods]
    document = {
        "design": design.name,
        "report": design_report(design.config, numerics=design.numerics),
        "results": [{"method": str(r.method), "N_triplets_per_s": r.n, "eta": r.eta,
                     "diagnostics": dict(r.diagnostics)} for r in results],
    }
    with output.dataset("flux", suffix="json") as stream:
        json.dump(document, stream, indent=2)
        stream.write("\n")


def cmd_report(args: Namespace, output: Output) -> None:
    design = _design(args)
    document = {"design": design.name,
                "report": design_report(design.config, numerics=design.numerics)}
    with output.dataset("report", suffix="json") as stream:
        json.dump(document, stream, indent=2)
        stream.write("\n")


def make_parser() -> ArgumentParser:
    parser = ArgumentParser("tospdc", description=(
        "Design calculations for photon-triplet generation by third-order spontaneous "
        "parametric downconversion in air-clad silica nanofibers"))

    group = parser.add_argument_group("Design")
    source = group.add_mutually_exclusive_group()
    source.add_argument("--design", type=Path, default=None,
                        help="JSON design file")
    source.add_argument("--preset", choices=sorted(PRESETS), default=None,
                        help="Built-in design (default: none)")

    group = parser.add_argument_group("Execution")
    group.add_argument("--out", type=Path, default=None,
                       help="Write datasets into this directory instead of stdout")
    group.add_argument("--threads", type=int, default=None,
                       help=f"Worker threads (default: {default_numerics.threads})")
    group.add_argument("--grid-scale", type=float, default=1.0,
                       help="Scale every grid size by this factor (default: 1.0)")
    group.add_argument("--verify-profiles", action="store_true", default=False,
                       help="Reject mode profiles whose norm drifts under grid doubling")
    verbosity = group.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only")

    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("phasematch", help="Phasematching core radius")
    sub.add_argument("--lambda-um", type=float, nargs="+", default=None,
                     help="Degenerate emission wavelength(s); the design's pump and idler "
                          "are used when omitted")
    lo, hi = (x * 1e6 for x in Defaults.radius_bracket)
    sub.add_argument("--bracket-um", type=float, nargs=2, default=[lo, hi],
                     metavar=("MIN", "MAX"),
                     help=f"Radius search interval (default: {lo:g} {hi:g})")
    sub.set_defaults(handler=cmd_phasematch)

    sub = commands.add_parser("maps", help="Phasematching and nonlinearity design maps")
    sub.add_argument("--map", type=MapKind, choices=list(MapKind), required=True,
                     help="Map to export")
    sub.add_argument("--points", type=int, default=50,
                     help="Samples along each map axis (default: 50)")
    sub.add_argument("--r-min-um", type=float, default=None,
                     help="Smallest radius (default: 0.30 for deg-curve, 0.98 r otherwise)")
    sub.add_argument("--r-max-um", type=float, default=None,
                     help="Largest radius (default: 0.48 for deg-curve, 1.02 r otherwise)")
    sub.add_argument("--pump-span-pct", type=float, default=1.0,
                     help="Pump frequency span around the design pump, in %% (default: 1.0)")
    sub.add_argument("--delta-max-THz", type=float, default=100.0,
                     help="Largest detuning of the gamma map (default: 100.0)")
    sub.add_argument("--mode", choices=[str(m) for m in ModeId], default=str(ModeId.HE11),
                     help=f"Mode of the dispersion table (default: {ModeId.HE11})")
    sub.add_argument("--lambda-min-um", type=float, default=1.2,
                     help="Shortest wavelength of the dispersion table (default: 1.2)")
    sub.add_argument("--lambda-max-um", type=float, default=2.0,
                     help="Longest wavelength of the dispersion table (default: 2.0)")
    sub.set_defaults(handler=cmd_maps)

    sub = commands.add_parser("jsa", help="Joint spectral intensity datasets")
    sub.add_argument("--view", type=JsaView, choices=list(JsaView), required=True,
                     help="Dataset to export")
    sub.add_argument("--points", type=int, default=default_numerics.jsa_points,
                     help=f"Samples per axis (default: {default_numerics.jsa_points})")
    sub.add_argument("--plus-GHz", type=float, nargs="+", default=[-15.0, 0.0, 15.0],
                     help="nu_plus values of the slices (default: -15 0 15)")
    sub.add_argument("--extent-THz", type=float, default=None,
                     help="Half-width of the detuning axes (default: 50 for slices and "
                          "planes, automatic otherwise)")
    sub.add_argument("--broadened", action="store_true", default=False,
                     help="Use L/100 and 200 sigma so the spectrum resolves on coarse grids")
    sub.set_defaults(handler=cmd_jsa)

    sub = commands.add_parser("flux", help="Emitted triplet flux and conversion efficiency")
    sub.add_argument("--method", type=FluxMethod, choices=list(FluxMethod), action="append",
                     default=None,
                     help="Method (repeatable; default: numeric, plus analytic when valid)")
    sub.add_argument("--regime", type=Regime, choices=list(Regime), default=Regime.LONG,
                     help=f"Regime of the asymptotic method (default: {Regime.LONG})")
    sub.add_argument("--sweep", type=SweepParameter, choices=list(SweepParameter),
                     default=None, help="Parameter to sweep (sigma in GHz, L in cm, p in mW)")
    values = sub.add_mutually_exclusive_group()
    values.add_argument("--values", type=float, nargs="+", default=None,
                        help="Sweep values")
    values.add_argument("--range", type=float, nargs=3, default=None,
                        metavar=("START", "STOP", "COUNT"), help="Evenly spaced sweep values")
    sub.set_defaults(handler=cmd_flux)

    sub = commands.add_parser("report", help="Design summary")
    sub.set_defaults(handler=cmd_report)

    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT, force=True)
    logging.captureWarnings(True)


def main(argv: Optional[Sequence[str]] = None, *, stdout: Optional[TextIO] = None) -> int:
    """
    Run the command line and return the exit status.

    :param argv: Arguments without the program name; `sys.argv[1:]` when None.
    :param stdout: Stream receiving datasets; `sys.stdout` when None.
    """
    args = make_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    tagged = args.command == "jsa"
    output = Output(args.out, sys.stdout if stdout is None else stdout, tagged=tagged)
    try:
        args.handler(args, output)
    except InputError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_INPUT
    except NumericalError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_NUMERICAL
    return EXIT_OK
