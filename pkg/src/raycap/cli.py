"""Command-line interface: ``raycap {capacity,sweep,sphere,diagnose}``.

A ``--config`` file is a flat JSON object whose keys are flag names without
the leading dashes (``"rays": 10``, ``"snr-db": 0``), plus ``"command"`` and,
for sweeps, ``"kind"``. Boolean flags take ``true``/``false``. Flags given on
the command line override values from the file.

Exit codes: 0 success, 2 usage or validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from . import sphere as sphere_mod
from . import sweep as sweep_mod
from .capacity import CapacityConfig, Setup, capacity
from .channel import build_channel, equal_angle_fan, gram_diagnostic, write_channel_csv
from .geometry import ArrayGeometry, Layout

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

COMMANDS = ("capacity", "sweep", "sphere", "diagnose")
SWEEP_KINDS = ("antennas", "rays", "snr", "phi", "linear-vs-square")

DEFAULTS_NOTE = (
    "Defaults: wavelength 1 m, element spacing d = wavelength/2, "
    "noise power sigma^2 = 1 (SNR = P/sigma^2), phi = 0 deg. Angles are degrees."
)


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {value}")
    return value


def _grid(text: str) -> tuple[int, int]:
    rows, sep, cols = text.lower().partition("x")
    try:
        r, c = int(rows), int(cols)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ROWSxCOLS, got {text!r}") from None
    if not sep or r < 1 or c < 1:
        raise argparse.ArgumentTypeError(f"expected positive ROWSxCOLS, got {text!r}")
    return r, c


def _setup(text: str) -> Setup:
    try:
        return Setup.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("output")
    g.add_argument("--config", metavar="PATH", help="flat JSON file of flag values")
    g.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--reproducible", action="store_true",
                   help="omit the timestamp so reruns are byte-identical")
    g.add_argument("--threads", type=_positive_int, default=1,
                   help="worker threads for sweeps (output order is fixed)")
    return p


def _physics(p: argparse.ArgumentParser, with_snr: bool = True) -> None:
    g = p.add_argument_group("physics")
    g.add_argument("--wavelength", type=_positive_float, default=1.0,
                   help="wavelength in meters (default 1)")
    g.add_argument("--spacing", type=_positive_float, default=None,
                   help="element spacing d (or d_z) in meters (default wavelength/2)")
    g.add_argument("--spacing-y", type=_positive_float, default=None,
                   help="planar row spacing d_y in meters (default --spacing)")
    g.add_argument("--noise-power", type=_positive_float, default=1.0,
                   help="noise power sigma^2 in watts (default 1)")
    if with_snr:
        g.add_argument("--snr-db", type=_finite_float, default=0.0,
                       help="P/sigma^2 in dB (default 0)")
    g.add_argument("--setup", type=_setup, default=Setup.SETUP1,
                   help="power allocation: standard (divide by n_T), "
                        "1 (divide by n_R) or 2 (divide by n_R*n_T); default 1")


def _array_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--linear", type=_positive_int, metavar="N", help="linear array of N elements")
    g.add_argument("--planar", type=_grid, metavar="RxC", help="planar array, e.g. 4x4")
    p.add_argument("--rays", type=_positive_int, required=True, help="number of rays n_T")
    p.add_argument("--phi", type=_finite_float, default=0.0, help="ray azimuth in degrees")


def _range_flags(p, start, stop, step, kind=_finite_float) -> None:
    p.add_argument("--from", dest="start", type=kind, default=start)
    p.add_argument("--to", dest="stop", type=kind, default=stop)
    p.add_argument("--step", type=_positive_float if kind is _finite_float else _positive_int,
                   default=step)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="raycap",
        description="Direction-of-arrival MIMO capacity and satellite cap coverage.",
        epilog=DEFAULTS_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("capacity", parents=[common], help="capacity of one configuration",
                       epilog=DEFAULTS_NOTE)
    _array_flags(p)
    _physics(p)
    p.add_argument("--all-setups", action="store_true",
                   help="report all three power-allocation setups")
    p.add_argument("--export-channel", metavar="PATH",
                   help="also write H as CSV (i,j,re,im)")

    p = sub.add_parser("sweep", help="parameter sweeps", epilog=DEFAULTS_NOTE)
    kinds = p.add_subparsers(dest="kind", required=True, metavar="KIND")

    k = kinds.add_parser("antennas", parents=[common], help="capacity vs n_R, linear array",
                         epilog=DEFAULTS_NOTE)
    k.add_argument("--rays", type=_positive_int, required=True)
    k.add_argument("--phi", type=_finite_float, default=0.0)
    _range_flags(k, 1, 50, 1, kind=_positive_int)
    _physics(k)

    k = kinds.add_parser("rays", parents=[common], help="capacity vs n_T, linear array",
                         epilog=DEFAULTS_NOTE)
    k.add_argument("--antennas", type=_positive_int, required=True)
    k.add_argument("--phi", type=_finite_float, default=0.0)
    _range_flags(k, 1, 50, 1, kind=_positive_int)
    _physics(k)

    k = kinds.add_parser("snr", parents=[common], help="MIMO vs SISO AWGN over SNR",
                         epilog=DEFAULTS_NOTE)
    k.add_argument("--antennas", type=_positive_int, required=True)
    k.add_argument("--rays", type=_positive_int, required=True)
    k.add_argument("--phi", type=_finite_float, default=0.0)
    _range_flags(k, -10.0, 30.0, 1.0)
    _physics(k, with_snr=False)

    k = kinds.add_parser("phi", parents=[common], help="square array capacity vs azimuth",
                         epilog=DEFAULTS_NOTE)
    k.add_argument("--side", type=_positive_int, required=True)
    k.add_argument("--rays", type=_positive_int, required=True)
    _range_flags(k, 0.0, 90.0, 5.0)
    _physics(k)

    k = kinds.add_parser("linear-vs-square", parents=[common],
                         help="linear vs square array with equal element count",
                         epilog=DEFAULTS_NOTE)
    k.add_argument("--elements", type=_positive_int, required=True)
    k.add_argument("--rays", type=_positive_int, required=True)
    k.add_argument("--phi", type=_finite_float, default=90.0)
    _range_flags(k, -10.0, 30.0, 1.0)
    _physics(k, with_snr=False)

    p = sub.add_parser("sphere", parents=[common], help="satellite cap coverage table")
    p.add_argument("--n", type=int, default=None, help="single N (4..17)")
    p.add_argument("--from", dest="start", type=int, default=sphere_mod.N_MIN)
    p.add_argument("--to", dest="stop", type=int, default=sphere_mod.N_MAX)
    p.add_argument("--compare-paper", action="store_true",
                   help="append the published values and absolute deviations")

    p = sub.add_parser("diagnose", parents=[common], help="Gram matrix diagnostic",
                       epilog=DEFAULTS_NOTE)
    _array_flags(p)
    g = p.add_argument_group("physics")
    g.add_argument("--wavelength", type=_positive_float, default=1.0)
    g.add_argument("--spacing", type=_positive_float, default=None)
    g.add_argument("--spacing-y", type=_positive_float, default=None)
    p.add_argument("--bessel", action="store_true",
                   help="require the J0 prediction (linear arrays only)")
    return parser


# ---------------------------------------------------------------- config


def _split_head(tokens: list[str]) -> tuple[list[str], list[str]]:
    if not tokens or tokens[0] not in COMMANDS:
        return [], tokens
    if tokens[0] == "sweep" and len(tokens) > 1 and tokens[1] in SWEEP_KINDS:
        return tokens[:2], tokens[2:]
    return tokens[:1], tokens[1:]


def _config_tokens(config: dict, user_flags: list[str]) -> tuple[list[str], list[str]]:
    head = []
    if "command" in config:
        head.append(str(config["command"]))
        if config["command"] == "sweep" and "kind" in config:
            head.append(str(config["kind"]))
    user = {t.split("=", 1)[0] for t in user_flags if t.startswith("--")}
    flags = []
    for key, value in config.items():
        if key in ("command", "kind", "config"):
            continue
        flag = "--" + str(key).replace("_", "-")
        if flag in user:
            continue
        # one array layout at a time; a command-line layout replaces the file's
        if flag in ("--linear", "--planar") and user & {"--linear", "--planar"}:
            continue
        if isinstance(value, bool):
            if value:
                flags.append(flag)
        elif value is None:
            continue
        else:
            flags += [flag, str(value)]
    return head, flags


def _expand_config(argv: list[str]) -> list[str]:
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config:
        return rest
    try:
        with open(known.config, encoding="utf-8") as fh:
            config = json.load(fh)
    except OSError as exc:
        raise CliError(f"--config: cannot read {known.config}: {exc.strerror}", EXIT_IO) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"--config: {known.config} is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise CliError("--config: file must hold a flat JSON object")
    head, tail = _split_head(rest)
    cfg_head, cfg_flags = _config_tokens(config, tail)
    return (head or cfg_head) + cfg_flags + tail


# ---------------------------------------------------------------- commands


def _geometry(args) -> ArrayGeometry:
    try:
        if args.linear is not None:
            return ArrayGeometry.linear(args.linear, args.wavelength, args.spacing)
        rows, cols = args.planar
        return ArrayGeometry.planar(rows, cols, args.wavelength, args.spacing_y, args.spacing)
    except ValueError as exc:
        raise CliError(f"--linear/--planar: {exc}") from None


def _values(start, stop, step, flag_from="--from", flag_to="--to") -> list:
    if stop < start:
        raise CliError(f"{flag_to} must not be below {flag_from}")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + i * step for i in range(n)]
    if all(isinstance(v, int) for v in (start, stop, step)):
        return values
    # snap values to the step's decimal grid so 0.1 steps print cleanly
    return [round(v, 12) for v in values]


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"--out: cannot write {path}: {exc.strerror}", EXIT_IO) from None


def _fmt_value(v) -> str:
    return f"{v:.9g}" if isinstance(v, float) else str(v)


def cmd_capacity(args) -> str:
    geometry = _geometry(args)
    fan = equal_angle_fan(args.rays, args.phi)
    h = build_channel(geometry, fan)
    if args.export_channel:
        try:
            with open(args.export_channel, "w", encoding="utf-8", newline="") as fh:
                write_channel_csv(h, fh)
        except OSError as exc:
            raise CliError(
                f"--export-channel: cannot write {args.export_channel}: {exc.strerror}", EXIT_IO
            ) from None
    setups = list(Setup) if args.all_setups else [args.setup]
    results = []
    for setup in setups:
        cfg = CapacityConfig.from_snr_db(args.snr_db, setup, args.noise_power)
        results.append((setup, capacity(h, cfg)))
    snr = 10.0 ** (args.snr_db / 10.0)

    if args.format == "json":
        doc = {
            "geometry": geometry.describe(),
            "n_R": h.n_r,
            "n_T": h.n_t,
            "phi_deg": args.phi,
            "snr_db": args.snr_db,
            "snr": snr,
            "noise_power": args.noise_power,
            "results": [
                {"setup": s.value, "scale": r.scale, "capacity_bits": r.bits}
                for s, r in results
            ],
        }
        return json.dumps(doc, indent=2) + "\n"
    lines = [
        f"geometry: {geometry.describe()}",
        f"fan: {fan.describe()}",
        f"snr_db={args.snr_db:g} snr={snr:.9g} noise_power={args.noise_power:g}",
    ]
    for setup, r in results:
        lines.append(f"setup={setup.value} scale={r.scale:.9g} capacity_bits={r.bits:.6f}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> str:
    kw = {"wavelength": args.wavelength, "spacing": args.spacing, "threads": args.threads}
    kind = args.kind
    if kind in ("antennas", "rays", "phi"):
        cfg = CapacityConfig.from_snr_db(args.snr_db, args.setup, args.noise_power)
    values = _values(args.start, args.stop, args.step)
    try:
        if kind == "antennas":
            series = sweep_mod.sweep_antennas(args.rays, values, cfg, args.phi, **kw)
        elif kind == "rays":
            series = sweep_mod.sweep_rays(args.antennas, values, cfg, args.phi, **kw)
        elif kind == "snr":
            series = sweep_mod.sweep_snr_vs_siso(
                args.antennas, args.rays, values, args.setup, args.noise_power, args.phi, **kw
            )
        elif kind == "phi":
            series = sweep_mod.sweep_phi(args.side, args.rays, values, cfg, **kw)
        else:
            series = sweep_mod.compare_linear_square(
                args.elements, args.rays, values, args.setup, args.noise_power, args.phi, **kw
            )
    except ValueError as exc:
        if "perfect square" in str(exc):
            raise CliError(f"--elements: {exc}") from None
        raise CliError(str(exc)) from None
    if args.format == "json":
        return sweep_mod.to_json(series, args.reproducible)
    return sweep_mod.to_csv(series, args.reproducible)


def cmd_sphere(args) -> str:
    if args.n is not None:
        ns = [args.n]
        flag = "--n"
    else:
        ns = list(range(args.start, args.stop + 1))
        flag = "--from/--to"
        if not ns:
            raise CliError("--to must not be below --from")
    for n in ns:
        if not sphere_mod.N_MIN <= n <= sphere_mod.N_MAX:
            raise CliError(
                f"{flag}: N={n} is outside the tabulated range "
                f"{sphere_mod.N_MIN}..{sphere_mod.N_MAX}"
            )
    columns = ["N", "d_N_deg", "r_N_deg", "packing_coverage", "covering_density"]
    if args.compare_paper:
        columns += ["paper_packing", "packing_deviation", "paper_density", "density_deviation"]
    records = []
    for n in ns:
        e = sphere_mod.entry(n)
        pack = sphere_mod.packing_coverage(n).coverage_fraction
        dens = sphere_mod.covering_density(n).coverage_fraction
        rec = {
            "N": n,
            "d_N_deg": e.tammes_separation,
            "r_N_deg": e.covering_radius,
            "packing_coverage": pack,
            "covering_density": dens,
        }
        if args.compare_paper:
            pp = sphere_mod.PUBLISHED_PACKING_COVERAGE[n]
            pd = sphere_mod.PUBLISHED_COVERING_DENSITY[n]
            rec |= {
                "paper_packing": pp,
                "packing_deviation": abs(pack - pp),
                "paper_density": pd,
                "density_deviation": abs(dens - pd),
            }
        records.append(rec)
    if args.format == "json":
        return json.dumps({"columns": columns, "rows": records}, indent=2) + "\n"
    lines = [",".join(columns)]
    for rec in records:
        lines.append(",".join(repr(rec[c]) for c in columns))
    return "\n".join(lines) + "\n"


def cmd_diagnose(args) -> str:
    geometry = _geometry(args)
    if args.bessel and geometry.layout is Layout.PLANAR:
        raise CliError("--bessel: the J0 prediction is defined for linear arrays only")
    h = build_channel(geometry, equal_angle_fan(args.rays, args.phi))
    diag = gram_diagnostic(h, geometry)
    doc = {
        "geometry": geometry.describe(),
        "n_R": h.n_r,
        "n_T": diag.n_t,
        "max_diag_error": diag.max_diag_error,
        "max_offdiag_normalized": diag.max_offdiag_magnitude,
    }
    if diag.max_bessel_deviation is not None:
        doc["max_bessel_deviation"] = diag.max_bessel_deviation
        if h.n_r > 1:
            kd = geometry.wavenumber * geometry.spacing_z
            doc["bessel_j0_kd"] = float(diag.bessel_prediction[0, 1])
            doc["kd"] = kd
    if args.format == "json":
        return json.dumps(doc, indent=2) + "\n"
    return "".join(f"{k}={_fmt_value(v)}\n" for k, v in doc.items())


HANDLERS = {
    "capacity": cmd_capacity,
    "sweep": cmd_sweep,
    "sphere": cmd_sphere,
    "diagnose": cmd_diagnose,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _expand_config(argv)
        args = build_parser().parse_args(argv)
    except CliError as exc:
        print(f"raycap: error: {exc}", file=sys.stderr)
        return exc.code
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = HANDLERS[args.command](args)
        _emit(text, args.out)
    except CliError as exc:
        print(f"raycap: error: {exc}", file=sys.stderr)
        return exc.code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
