import argparse
import sys
from typing import Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, ValidationError

from application.config.config import Config
from application.exception.application_error import ApplicationError
from application.model.compute_input import (
    ConfigInput,
    DipolarInput,
    EffectiveSpectrumInput,
    EffectiveSweepInput,
    ExactSpectrumInput,
    ExactSweepInput,
    GroupDecomposeInput,
    OscillationInput,
    TauInput,
    ThermoInput,
    WkbInput,
)
from application.service.run_service import RunService
from application.utils.general import parse_vector
from application.utils.logger import log, set_log_level
from application.utils.output import build_manifest, render, sha256_text, to_json, write_output

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

# (group, action) -> (RunService method, request model)
COMMANDS: Dict[Tuple[str, str], Tuple[str, Type[BaseModel]]] = {
    ("geometry", "dump"): ("geometry_dump", ConfigInput),
    ("effective", "spectrum"): ("effective_spectrum", EffectiveSpectrumInput),
    ("effective", "sweep"): ("effective_sweep", EffectiveSweepInput),
    ("group", "decompose"): ("group_decompose", GroupDecomposeInput),
    ("exact", "spectrum"): ("exact_spectrum", ExactSpectrumInput),
    ("exact", "sweep"): ("exact_sweep", ExactSweepInput),
    ("wkb", "c-of-u"): ("wkb_c_of_u", WkbInput),
    ("thermo", "chi"): ("thermo_chi", ThermoInput),
    ("dynamics", "oscillate"): ("dynamics_oscillate", OscillationInput),
    ("estimate", "tau"): ("estimate_tau", TauInput),
    ("estimate", "dipolar"): ("estimate_dipolar", DipolarInput),
}

VECTOR_FIELDS = ("field", "direction")


def _output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", default=None, help="Output path, stdout when omitted or '-'")
    parser.add_argument("--format", dest="fmt", choices=["csv", "json"], default="json")
    parser.add_argument("--manifest", default=None, help="Write a run manifest to this path")
    parser.add_argument("--log-level", type=str.upper, choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None)


def _config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, help="Configuration key, e.g. O4, Y3, D4-2, O3-multipath, O4+3")
    parser.add_argument("--alpha", type=float, default=None, help="Plaquette parameter of (O,2) and (Y,2)")


def _two_j(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--two-j", dest="two_j", type=int, required=required, help="Integer 2J; J = two_j / 2")


def _grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--from", dest="start", type=float, default=None)
    parser.add_argument("--to", dest="stop", type=float, default=None)
    parser.add_argument("--steps", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spin-tunneling-lab",
        description="Tunnelling spectra of large spins in crystal fields",
    )
    parser.add_argument("--version", action="version", version=f"{Config.APP_NAME} {Config.VERSION}")
    groups = parser.add_subparsers(dest="group", required=True)

    geometry = groups.add_parser("geometry").add_subparsers(dest="action", required=True)
    dump = geometry.add_parser("dump", help="Vertices, edges and plaquettes of a configuration")
    _config_flags(dump)
    _output_flags(dump)

    effective = groups.add_parser("effective").add_subparsers(dest="action", required=True)
    spectrum = effective.add_parser("spectrum", help="Spectrum of the effective tunnelling Hamiltonian")
    sweep = effective.add_parser("sweep", help="Effective spectra along 2J, alpha or omega")
    for sub in (spectrum, sweep):
        _config_flags(sub)
        _two_j(sub, required=sub is spectrum)
        sub.add_argument("--w", type=float, default=None, help="Tunnelling amplitude")
        sub.add_argument("--x", type=float, default=None, help="Next-nearest-neighbour factor of multipath configurations")
        sub.add_argument("--omega", type=float, default=None, help="Double-path angle; sets x = 2 cos(J omega / 2)")
        sub.add_argument("--field", default=None, help="Reduced field g J mu_B H as hx,hy,hz in units of w")
        sub.add_argument("--seed", type=int, default=None, help="Apply a random diagonal gauge before diagonalizing")
        _output_flags(sub)
    sweep.add_argument("--parameter", choices=["two_j", "alpha", "omega"], default=None)
    _grid_flags(sweep)

    group = groups.add_parser("group").add_subparsers(dest="action", required=True)
    decompose = group.add_parser("decompose", help="Irrep content of the main representation")
    _config_flags(decompose)
    _two_j(decompose)
    _output_flags(decompose)

    exact = groups.add_parser("exact").add_subparsers(dest="action", required=True)
    exact_spectrum = exact.add_parser("spectrum", help="Exact cubic CEF spectrum at one angle")
    _two_j(exact_spectrum)
    angle = exact_spectrum.add_mutually_exclusive_group(required=True)
    angle.add_argument("--phi", type=float, default=None)
    angle.add_argument("--u", type=float, default=None, help="u = tan(phi)")
    exact_spectrum.add_argument("--threshold", type=float, default=None, help="Gap ratio opening a new multiplet")
    exact_spectrum.add_argument("--splitting", action="store_true", help="Report the splitting exponent at u")
    _output_flags(exact_spectrum)
    exact_sweep = exact.add_parser("sweep", help="Exact cubic CEF spectra along a phi grid")
    _two_j(exact_sweep)
    _grid_flags(exact_sweep)
    exact_sweep.add_argument("--threshold", type=float, default=None)
    exact_sweep.add_argument("--levels", type=int, default=None, help="Eigenvalue columns per row")
    _output_flags(exact_sweep)

    wkb = groups.add_parser("wkb").add_subparsers(dest="action", required=True)
    c_of_u = wkb.add_parser("c-of-u", help="Tunnelling action per unit J")
    c_of_u.add_argument("--u", type=float, default=None)
    _grid_flags(c_of_u)
    c_of_u.add_argument("--icosahedral", action="store_true")
    _output_flags(c_of_u)

    thermo = groups.add_parser("thermo").add_subparsers(dest="action", required=True)
    chi = thermo.add_parser("chi", help="Susceptibility of the effective model")
    _config_flags(chi)
    _two_j(chi)
    chi.add_argument("--w", type=float, default=None)
    chi.add_argument("--x", type=float, default=None)
    chi.add_argument("--direction", default=None, help="Field direction as hx,hy,hz")
    chi.add_argument("--tmin", type=float, default=None)
    chi.add_argument("--tmax", type=float, default=None)
    chi.add_argument("--tsteps", type=int, default=None)
    _output_flags(chi)

    dynamics = groups.add_parser("dynamics").add_subparsers(dest="action", required=True)
    oscillate = dynamics.add_parser("oscillate", help="Moment M(t) after preparation on one site")
    _config_flags(oscillate)
    _two_j(oscillate)
    oscillate.add_argument("--w", type=float, default=None)
    oscillate.add_argument("--x", type=float, default=None)
    oscillate.add_argument("--site", type=int, default=None)
    oscillate.add_argument("--tmax", type=float, default=None)
    oscillate.add_argument("--tsteps", type=int, default=None)
    _output_flags(oscillate)

    estimate = groups.add_parser("estimate").add_subparsers(dest="action", required=True)
    tau = estimate.add_parser("tau", help="Phonon relaxation time in seconds")
    tau.add_argument("--rho", type=float, required=True, help="Density in g/cm^3")
    tau.add_argument("--delta", type=float, required=True, help="Level splitting in K")
    tau.add_argument("--omega", type=float, required=True, help="Tunnelling frequency in 1/s")
    tau.add_argument("--sound-velocity", dest="sound_velocity", type=float, required=True, help="cm/s")
    tau.add_argument("--temperature", type=float, default=None, help="K")
    _output_flags(tau)
    dipolar = estimate.add_parser("dipolar", help="Dipolar line broadening in 1/s")
    dipolar.add_argument("--g", type=float, required=True)
    _two_j(dipolar)
    dipolar.add_argument("--density", type=float, required=True, help="Moments per cm^3")
    dipolar.add_argument("--concentration", type=float, required=True)
    dipolar.add_argument("--prefactor", type=float, default=None, help="Angular factor, default 1/sqrt(5)")
    _output_flags(dipolar)

    return parser


def request_from_args(args: argparse.Namespace, model: Type[BaseModel]) -> BaseModel:
    values = {}
    for name in model.model_fields:
        value = getattr(args, name, None)
        if value is None or value is False:
            continue
        if name in VECTOR_FIELDS:
            value = tuple(parse_vector(value))
        values[name] = value
    return model(**values)


def run(args: argparse.Namespace, service: Optional[RunService] = None) -> None:
    method, model = COMMANDS[(args.group, args.action)]
    request = request_from_args(args, model)
    report = getattr(service or RunService(), method)(request)
    text = render(report, args.fmt)
    write_output(text, args.out)
    if args.manifest:
        target = args.out if args.out not in (None, "-") else "stdout"
        manifest = build_manifest(report, {target: sha256_text(text)})
        write_output(to_json(manifest.model_dump()), args.manifest)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID
    if args.log_level:
        set_log_level(args.log_level)
    try:
        run(args)
        return EXIT_OK
    except ApplicationError as e:
        sys.stderr.write(f"{e.error_code}: {e.message}\n")
        return e.exit_code
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        sys.stderr.write(f"ARG_001: {messages}\n")
        return EXIT_INVALID
    except Exception as e:
        log.error(f"Unexpected error in {args.group} {args.action}: {e}", exc_info=True)
        sys.stderr.write(f"NUM_001: {e}\n")
        return EXIT_NUMERICAL
