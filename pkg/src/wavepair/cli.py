"""Command-line front end.

    wavepair sample   --wavelet mexicanhat --out psi.csv --plot
    wavepair hilbert  --wavelet all --out pairs.csv --plot
    wavepair kernel   --wavelet morlet --kind analytic --out a.csv
    wavepair metrics  --wavelet gaussian2 --kind hilbert
    wavepair verify   --wavelet all
    wavepair signal   --signal freqbrk --out f.csv
    wavepair analyze  --signal twosine --wavelet morlet --scales 1..64 --out s.csv

Every option can also come from ``--config FILE`` holding ``key=value``
lines (keys are the long option names); options given on the command line
win.  Exit status: 0 ok, 1 usage or I/O error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import fileio
from .catalog import CATALOG, WaveletSpec, sample_wavelet
from .cwt import (
    BREAKDOWN_GRID,
    TWO_SINE_GRID,
    ScaleRange,
    cwt,
    estimate_break,
    gen_freq_breakdown,
    gen_two_sine,
    level_slice,
    normalized_modulus,
    ridge_frequencies,
)
from .kernels import ANALYZERS, KernelKind, analyzer_label, derive, is_complex_analyzer, parse_analyzer
from .metrics import MAX_MOMENT, MetricsReport, metrics_report, moment_grid
from .propositions import all_passed, format_report, verify_wavelet
from .sampling import DEFAULT_GRID, RealSeries, TimeGrid, make_grid

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2

COMMANDS = ("sample", "hilbert", "kernel", "metrics", "verify", "signal", "analyze")
SIGNALS = ("twosine", "freqbrk")

# built-in values for options left unset by both the command line and --config
DEFAULTS = {
    "wavelet": "mexicanhat",
    "omega0": None,
    "grid": None,
    "kind": None,
    "scales": None,
    "signal": "twosine",
    "f1": 5.0,
    "f2": 9.0,
    "flow": 5.0,
    "fhigh": 50.0,
    "tbreak": 0.5,
    "out": None,
    "format": None,
    "plot": False,
    "workers": 1,
    "input": None,
    "dc_offset": 0.0,
}

_FLOATS = {"omega0", "f1", "f2", "flow", "fhigh", "tbreak", "dc_offset"}
_BOOLS = {"plot"}
_INTS = {"workers"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed checks here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file with option defaults")
    common.add_argument("--out", help="output path (stdout when omitted, where allowed)")
    common.add_argument("--format", choices=("csv", "pgm"), help="output format; pgm only for analyze")
    common.add_argument("--plot", action="store_true", default=None, help="also write PNG figures next to --out")

    wavelet = argparse.ArgumentParser(add_help=False)
    wavelet.add_argument("--wavelet", help="catalog wavelet, or 'all' (default mexicanhat)")
    wavelet.add_argument("--omega0", type=float, help="Morlet center angular frequency (default 5)")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--grid", help="sampling grid t_min,t_max,n (n even)")

    signal = argparse.ArgumentParser(add_help=False)
    signal.add_argument("--signal", choices=SIGNALS, help="test signal (default twosine)")
    signal.add_argument("--f1", type=float, help="two-sine: first frequency, Hz (default 5)")
    signal.add_argument("--f2", type=float, help="two-sine: second frequency, Hz (default 9)")
    signal.add_argument("--flow", type=float, help="breakdown: frequency before the break, Hz (default 5)")
    signal.add_argument("--fhigh", type=float, help="breakdown: frequency after the break, Hz (default 50)")
    signal.add_argument("--tbreak", type=float, help="breakdown: break time, s (default 0.5)")

    parser = _Parser(prog="wavepair", description="Hilbert-pair wavelets, derived kernels and the CWT.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("sample", parents=[common, wavelet, grid], help="sample a catalog wavelet")
    sub.add_parser("hilbert", parents=[common, wavelet, grid], help="Hilbert transform of a wavelet")
    p = sub.add_parser("kernel", parents=[common, wavelet, grid], help="Fourier-like, analytic or Hartley-like kernel")
    p.add_argument("--kind", help="fourier | analytic | hartley+ | hartley- (default hartley+)")
    p = sub.add_parser("metrics", parents=[common, wavelet, grid], help="energy, admissibility, moments, symmetry")
    p.add_argument("--kind", help=f"series to measure: {' | '.join(ANALYZERS)} (default real)")
    p = sub.add_parser("verify", parents=[common, wavelet, grid], help="run the property checks")
    p.add_argument("--dc-offset", type=float, help=argparse.SUPPRESS)
    sub.add_parser("signal", parents=[common, grid, signal], help="generate a test signal")
    p = sub.add_parser("analyze", parents=[common, wavelet, grid, signal], help="continuous wavelet transform")
    p.add_argument("--kind", help=f"analyzing function: {' | '.join(ANALYZERS)} (default real)")
    p.add_argument("--scales", help="a1..a2[:step] or a comma list (default 1..8, or 1..32 for freqbrk)")
    p.add_argument("--input", help="analyze a series CSV written by 'signal' instead of --signal")
    p.add_argument("--workers", type=int, help="threads for scale rows (default 1)")
    return parser


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from --config, then from :data:`DEFAULTS`."""
    config = {}
    if getattr(args, "config", None):
        try:
            config = fileio.read_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
    known = set(vars(args))
    for key, raw in config.items():
        if key not in DEFAULTS or key not in known:
            raise UsageError(f"config key {key!r} is not an option of '{args.command}'")
        if getattr(args, key) is not None:
            continue
        try:
            if key in _BOOLS:
                val = raw.lower() in ("1", "true", "yes", "on")
            elif key in _FLOATS:
                val = float(raw)
            elif key in _INTS:
                val = int(raw)
            else:
                val = raw
        except ValueError:
            raise UsageError(f"config key {key}: bad value {raw!r}") from None
        setattr(args, key, val)
    for key in known & set(DEFAULTS):
        if getattr(args, key) is None:
            setattr(args, key, DEFAULTS[key])
    if args.format == "pgm" and args.command != "analyze":
        raise UsageError("--format pgm is only available for analyze")
    if getattr(args, "signal", None) is not None and args.signal not in SIGNALS:
        raise UsageError(f"--signal must be one of {', '.join(SIGNALS)}")
    if args.plot and args.out is None:
        raise UsageError("--plot needs --out (figures are written next to it)")
    return args


# -- option helpers -----------------------------------------------------------


def parse_grid(text) -> TimeGrid | None:
    if text is None:
        return None
    parts = str(text).split(",")
    if len(parts) != 3:
        raise UsageError(f"--grid expects t_min,t_max,n, got {text!r}")
    try:
        t_min, t_max, n = float(parts[0]), float(parts[1]), float(parts[2])
    except ValueError:
        raise UsageError(f"--grid expects numbers, got {text!r}") from None
    return make_grid(t_min, t_max, n)


def wavelet_specs(args) -> list[WaveletSpec]:
    params = {} if args.omega0 is None else {"omega0": args.omega0}
    if str(args.wavelet).lower() == "all":
        return [WaveletSpec(s.family, params if s.family.value == "morlet" else {}) for s in CATALOG]
    spec = WaveletSpec.named(args.wavelet)
    if params and spec.family.value != "morlet":
        raise UsageError("--omega0 only applies to the Morlet wavelet")
    return [WaveletSpec(spec.family, params)]


def _out_target(args):
    return sys.stdout if args.out is None else args.out


def _sibling(out, suffix: str) -> Path:
    """``out`` with its extension replaced by ``suffix`` (which may add a tag)."""
    p = Path(out)
    return p.with_name(p.stem + suffix)


def _single_or_all(args, specs, grid, transform, kind: str):
    """Shared body of sample/hilbert/kernel: one series CSV, or a gallery table."""
    if len(specs) == 1:
        spec = specs[0]
        psi = sample_wavelet(spec, grid)
        out = transform(psi)
        fileio.write_series_csv(_out_target(args), out, kind, wavelet=spec.label)
        if args.plot:
            from .plotting import plot_series

            curves = {"psi": psi} if out is psi else {"psi": psi, kind: out}
            plot_series(_sibling(args.out, ".png"), curves, title=spec.label, normalize=True)
        return
    columns, panels = {}, {}
    for spec in specs:
        psi = sample_wavelet(spec, grid)
        out = transform(psi)
        name = spec.family.value
        columns[name] = psi.values
        panel = {"psi": psi}
        if out is not psi:
            if not isinstance(out, RealSeries):
                columns[f"{name}_{kind}_re"] = out.values.real
                columns[f"{name}_{kind}_im"] = out.values.imag
                panel[f"{kind} (re)"] = out.real
                panel[f"{kind} (im)"] = out.imag
            else:
                columns[f"{name}_{kind}"] = out.values
                panel[kind] = out
        panels[spec.label] = panel
    fileio.write_columns_csv(_out_target(args), grid, columns, kind)
    if args.plot:
        from .plotting import plot_gallery

        plot_gallery(_sibling(args.out, ".png"), panels, title=f"{kind} (peak-normalized)")


# -- commands -----------------------------------------------------------------


def cmd_sample(args) -> int:
    grid = parse_grid(args.grid) or DEFAULT_GRID
    _single_or_all(args, wavelet_specs(args), grid, lambda psi: psi, "sample")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    grid = parse_grid(args.grid) or DEFAULT_GRID
    _single_or_all(args, wavelet_specs(args), grid, lambda psi: derive(psi, "hilbert"), "hilbert")
    return EXIT_OK


def cmd_kernel(args) -> int:
    grid = parse_grid(args.grid) or DEFAULT_GRID
    kind = parse_analyzer(args.kind or "hartley+")
    if not isinstance(kind, KernelKind):
        raise UsageError("--kind must be fourier, analytic, hartley+ or hartley-")
    _single_or_all(args, wavelet_specs(args), grid, lambda psi: derive(psi, kind), kind.value)
    return EXIT_OK


def cmd_metrics(args) -> int:
    grid = parse_grid(args.grid) or DEFAULT_GRID
    analyzer = parse_analyzer(args.kind or "real")
    specs = wavelet_specs(args)
    reports = []
    for spec in specs:
        x = derive(sample_wavelet(spec, grid), analyzer)
        long = derive(sample_wavelet(spec, moment_grid(grid)), analyzer)
        reports.append((spec, metrics_report(x, MAX_MOMENT, moment_source=long)))
    if len(reports) == 1 and args.format != "csv":
        text = reports[0][1].to_text()
    else:
        lines = ["wavelet,analyzer," + MetricsReport.csv_header()]
        lines += [f"{spec.family.value},{analyzer_label(analyzer)},{rep.to_csv_row()}" for spec, rep in reports]
        text = "\n".join(lines) + "\n"
    _emit_text(args, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = parse_grid(args.grid) or DEFAULT_GRID
    chunks, ok = [], True
    for spec in wavelet_specs(args):
        checks = verify_wavelet(spec, grid, dc_offset=args.dc_offset)
        ok &= all_passed(checks)
        chunks.append(format_report(spec, grid, checks))
    _emit_text(args, "\n".join(chunks))
    return EXIT_OK if ok else EXIT_FAILED


def _make_signal(args, grid: TimeGrid | None) -> RealSeries:
    if args.signal == "twosine":
        return gen_two_sine(grid or TWO_SINE_GRID, args.f1, args.f2)
    return gen_freq_breakdown(grid or BREAKDOWN_GRID, args.flow, args.fhigh, args.tbreak)


def cmd_signal(args) -> int:
    f = _make_signal(args, parse_grid(args.grid))
    fileio.write_series_csv(_out_target(args), f, args.signal)
    if args.plot:
        from .plotting import plot_series

        plot_series(_sibling(args.out, ".png"), {args.signal: f}, title=args.signal, xlabel="time (s)")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.out is None:
        raise UsageError("analyze needs --out")
    specs = wavelet_specs(args)
    if len(specs) != 1:
        raise UsageError("analyze takes a single wavelet")
    spec = specs[0]
    if args.input:
        f, meta = fileio.read_series_csv(args.input)
        if not isinstance(f, RealSeries):
            raise UsageError(f"{args.input} holds a complex series; analyze needs a real signal")
        source = meta.get("kind", "")
    else:
        f = _make_signal(args, parse_grid(args.grid))
        source = args.signal
    default_scales = "1..32" if source == "freqbrk" else "1..8"
    try:
        scales = ScaleRange.parse(args.scales or default_scales)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad --scales {args.scales!r}: {exc}") from None
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    analyzer = parse_analyzer(args.kind or "real")
    s = cwt(f, spec, scales, analyzer, workers=args.workers)

    for a, wide in zip(scales, s.wide_rows):
        if wide:
            print(f"warning: at scale {a:g} the wavelet support exceeds the signal span", file=sys.stderr)

    written = []
    if args.format == "pgm":
        fileio.write_pgm(args.out, s.modulus())
        written.append(args.out)
    elif is_complex_analyzer(analyzer):
        for part in fileio.PARTS:
            path = _sibling(args.out, f"_{part}{Path(args.out).suffix or '.csv'}")
            fileio.write_scalogram_csv(path, s, part)
            written.append(path)
    else:
        fileio.write_scalogram_csv(args.out, s, "real")
        written.append(args.out)

    lines = [f"wrote {p}" for p in written]
    ridges = ridge_frequencies(s, len(scales)) if len(scales) >= 3 and s.row_energy().any() else []
    for a, hz in ridges[:2]:
        lines.append(f"ridge scale={a:g} freq_hz={hz:.4g}")
    levels = (5.0, 25.0)
    both = all(any(math.isclose(a, lv) for a in scales) for lv in levels)
    if source == "freqbrk" and both and s.row(5.0).any() and s.row(25.0).any():
        try:
            fine, coarse = (normalized_modulus(level_slice(s, lv)) for lv in levels)
            lines.append(f"break_estimate_s={estimate_break(fine, coarse):.4g}")
        except ValueError as exc:
            lines.append(f"break_estimate_s=none ({exc})")

    if args.plot:
        from .plotting import plot_row_energy, plot_scalogram, plot_slices

        image_part = "modulus" if s.is_complex else "real"
        plot_scalogram(_sibling(args.out, ".png"), s, image_part)
        plot_row_energy(_sibling(args.out, "_energy.png"), s, ridges[:2])
        picks = levels if both else (scales.scales[0], scales.scales[-1])
        plot_slices(_sibling(args.out, "_slices.png"), s, picks, normalized=s.is_complex)
    print("\n".join(lines))
    return EXIT_OK


def _emit_text(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)


HANDLERS = {
    "sample": cmd_sample,
    "hilbert": cmd_hilbert,
    "kernel": cmd_kernel,
    "metrics": cmd_metrics,
    "verify": cmd_verify,
    "signal": cmd_signal,
    "analyze": cmd_analyze,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = resolve(args)
        return HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"wavepair {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"wavepair {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
