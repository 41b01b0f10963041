"""Command line interface.

Subcommands: eps, nu0, ce-for-nu0, match, lineshape, synth, extract.
Exit codes: 0 success, 2 usage error, 3 domain/model error (the library
message goes to stderr verbatim). Liquid files are searched in the working
directory, then $IMPOSTORON_DATA_DIR, then the packaged data directory.
All CSV output starts with '#'-prefixed metadata (tool version, input hash).
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__, signal
from .dielectric import eval_neat, load_liquid_file
from .errors import DataFileError, ImpostoronError
from .matching import ce_for_nu0, match_frequency, match_profiles
from .mixing import Concentration, DopedLiquid, cm_mix
from .polaron import find_nu0, lineshape, lorentz_lineshape

_PROBE_SPAN = 6.4  # ps, fixed probe-time window of `synth --map`


def data_dir() -> Path:
    """Directory with the packaged reference liquid files."""
    return Path(str(resources.files("impostoron").joinpath("data")))


def resolve_data_path(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p.absolute()
    searched = [str(Path.cwd())]
    env = os.environ.get("IMPOSTORON_DATA_DIR")
    if env:
        candidate = Path(env) / name
        searched.append(env)
        if candidate.exists():
            return candidate
    packaged = data_dir() / name
    searched.append(str(data_dir()))
    if packaged.exists():
        return packaged
    raise DataFileError(f"liquid file '{name}' not found (searched: {', '.join(searched)})")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _meta(*inputs: tuple[str, Path]) -> list[str]:
    lines = [f"impostoron {__version__}"]
    for label, path in inputs:
        lines.append(f"input-sha256 {label}: {_sha256(path)}")
    return lines


class _Output:
    """stdout by default, a file when --out is given."""

    def __init__(self, path: str | None):
        self.path = path

    def __enter__(self):
        if self.path is None:
            self.fh = sys.stdout
        else:
            self.fh = open(self.path, "w", encoding="utf-8")
        return self.fh

    def __exit__(self, *exc):
        if self.path is not None:
            self.fh.close()
        return False


def _write_kv(fh, meta, pairs):
    for line in meta:
        fh.write(f"# {line}\n")
    fh.write("key,value\n")
    for key, value in pairs:
        fh.write(f"{key},{value}\n")


def _positive(name):
    def convert(text):
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got '{text}'")
        if not value > 0:
            raise argparse.ArgumentTypeError(f"{name} must be > 0, got {value}")
        return value

    return convert


def _non_negative(name):
    def convert(text):
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got '{text}'")
        if value < 0:
            raise argparse.ArgumentTypeError(f"{name} must be >= 0, got {value}")
        return value

    return convert


def _bracket(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"bracket must be 'lo,hi', got '{text}'")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bracket must be numeric, got '{text}'")
    if not (0 < lo < hi):
        raise argparse.ArgumentTypeError(f"bracket needs 0 < lo < hi, got [{lo}, {hi}]")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="impostoron",
        description="Solvated-electron dielectric mixing, polaron resonances and THz pump-probe extraction.",
    )
    parser.add_argument("--version", action="version", version=f"impostoron {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common_grid(p):
        p.add_argument("--nu-min", type=_positive("--nu-min"), default=0.2)
        p.add_argument("--nu-max", type=_positive("--nu-max"), default=2.0)
        p.add_argument("--nu-step", type=_positive("--nu-step"), default=0.002)

    p = sub.add_parser("eps", help="doped (or neat) permittivity table over a frequency grid")
    p.add_argument("--liquid", required=True)
    p.add_argument("--ce", type=_non_negative("--ce"), default=0.0, help="concentration in uM")
    add_common_grid(p)
    p.add_argument("--out")

    p = sub.add_parser("nu0", help="zero-crossing resonance of a doped liquid")
    p.add_argument("--liquid", required=True)
    p.add_argument("--ce", type=_non_negative("--ce"), required=True, help="concentration in uM")
    p.add_argument("--bracket", type=_bracket, default=(0.1, 3.0))
    p.add_argument("--tol", type=_positive("--tol"), default=1e-6)
    p.add_argument("--out")

    p = sub.add_parser("ce-for-nu0", help="concentration that places the crossing at nu0")
    p.add_argument("--liquid", required=True)
    p.add_argument("--nu0", type=_positive("--nu0"), required=True)
    p.add_argument("--out")

    p = sub.add_parser("match", help="concentration pair matching two liquids' resonances")
    p.add_argument("--liquid-a", required=True)
    p.add_argument("--liquid-b", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--nu0", type=_positive("--nu0"))
    group.add_argument("--profile", action="store_true", help="match line-shape profiles too")
    p.add_argument("--bracket", type=_bracket, default=(0.2, 2.0))
    p.add_argument("--out")

    p = sub.add_parser("lineshape", help="energy-loss line shape -Im[1/eps] on a grid")
    p.add_argument("--liquid", required=True)
    p.add_argument("--ce", type=_non_negative("--ce"), required=True, help="concentration in uM")
    p.add_argument("--lorentz", action="store_true", help="Lorentzian approximation instead")
    p.add_argument("--bracket", type=_bracket, default=(0.1, 3.0))
    add_common_grid(p)
    p.add_argument("--out")

    p = sub.add_parser("synth", help="synthesize a pump-probe delay trace or 2D map")
    p.add_argument("--liquid", required=True)
    p.add_argument("--ce", type=_non_negative("--ce"), required=True, help="concentration in uM")
    p.add_argument("--map", action="store_true", help="emit the full 2D map")
    p.add_argument("--dt", type=_positive("--dt"), default=0.05, help="probe-time step, ps")
    p.add_argument("--dtau", type=_positive("--dtau"), default=0.1, help="delay step, ps")
    p.add_argument("--n", type=int, default=1024, help="number of delay samples")
    p.add_argument("--band", type=_bracket, default=signal.DEFAULT_BAND)
    p.add_argument("--noise-snr-db", type=float, default=None)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out")

    p = sub.add_parser("extract", help="run the oscillation-extraction pipeline on a map CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--filter-thz", type=_positive("--filter-thz"), default=signal.FILTER_BANDWIDTH)
    p.add_argument("--band-lo", type=_positive("--band-lo"), default=signal.BAND_LO)
    p.add_argument("--out-oscillation")
    p.add_argument("--out-spectrum")

    return parser


def _grid(args, parser):
    if args.nu_max <= args.nu_min:
        parser.error(f"--nu-max must exceed --nu-min, got [{args.nu_min}, {args.nu_max}]")
    n = int(round((args.nu_max - args.nu_min) / args.nu_step)) + 1
    return np.linspace(args.nu_min, args.nu_max, n)


def _cmd_eps(args, parser):
    path = resolve_data_path(args.liquid)
    liquid = load_liquid_file(path)
    grid = _grid(args, parser)
    ce = Concentration.from_micromolar(args.ce)
    eps = cm_mix(eval_neat(liquid, grid), ce, grid)
    with _Output(args.out) as fh:
        for line in _meta(("liquid", path)):
            fh.write(f"# {line}\n")
        fh.write("nu_THz,eps_real,eps_imag\n")
        for nu, value in zip(grid, np.atleast_1d(eps)):
            fh.write(f"{float(nu)!r},{float(value.real)!r},{float(value.imag)!r}\n")
    return 0


def _cmd_nu0(args, parser):
    path = resolve_data_path(args.liquid)
    liquid = load_liquid_file(path)
    doped = DopedLiquid(liquid, Concentration.from_micromolar(args.ce))
    res = find_nu0(doped, args.bracket, args.tol)
    pairs = [
        ("nu0_THz", repr(res.nu0)),
        ("eps_imag_at_nu0", repr(res.eps_imag_at_nu0)),
        ("slope_B_per_THz", repr(res.slope_B)),
        ("ce_uM", repr(res.ce.micromolar)),
        ("alternatives_THz", ";".join(repr(v) for v in res.alternatives)),
    ]
    with _Output(args.out) as fh:
        _write_kv(fh, _meta(("liquid", path)), pairs)
    return 0


def _cmd_ce_for_nu0(args, parser):
    path = resolve_data_path(args.liquid)
    liquid = load_liquid_file(path)
    ce = ce_for_nu0(liquid, args.nu0)
    pairs = [
        ("ce_uM", repr(ce.micromolar)),
        ("ce_mol_per_m3", repr(ce.mol_per_m3)),
        ("nu0_THz", repr(args.nu0)),
    ]
    with _Output(args.out) as fh:
        _write_kv(fh, _meta(("liquid", path)), pairs)
    return 0


def _cmd_match(args, parser):
    path_a = resolve_data_path(args.liquid_a)
    path_b = resolve_data_path(args.liquid_b)
    liquid_a = load_liquid_file(path_a)
    liquid_b = load_liquid_file(path_b)
    if args.profile:
        sol = match_profiles(liquid_a, liquid_b, args.bracket)
    else:
        sol = match_frequency(liquid_a, liquid_b, args.nu0, args.bracket)
    pairs = [
        ("nu0_THz", repr(sol.nu0)),
        ("ce_a_uM", repr(sol.ce_1.micromolar)),
        ("ce_b_uM", repr(sol.ce_2.micromolar)),
        ("freq_residual_THz", repr(sol.freq_residual)),
        ("profile_residual_per_THz", repr(sol.profile_residual)),
        ("profile_matched", str(sol.profile_matched).lower()),
        ("degenerate", str(sol.degenerate).lower()),
        ("note", sol.note),
        ("alternatives_THz", ";".join(repr(v) for v in sol.alternatives)),
    ]
    with _Output(args.out) as fh:
        _write_kv(fh, _meta(("a", path_a), ("b", path_b)), pairs)
    return 0


def _cmd_lineshape(args, parser):
    path = resolve_data_path(args.liquid)
    liquid = load_liquid_file(path)
    doped = DopedLiquid(liquid, Concentration.from_micromolar(args.ce))
    grid = _grid(args, parser)
    if args.lorentz:
        res = find_nu0(doped, args.bracket)
        spec = lorentz_lineshape(res, grid)
    else:
        spec = lineshape(doped, grid)
    with _Output(args.out) as fh:
        signal.write_spectrum_csv(spec, fh, meta=_meta(("liquid", path)))
    return 0


def _cmd_synth(args, parser):
    if args.n < 16:
        parser.error(f"--n must be at least 16, got {args.n}")
    path = resolve_data_path(args.liquid)
    liquid = load_liquid_file(path)
    doped = DopedLiquid(liquid, Concentration.from_micromolar(args.ce))
    tau = (np.arange(args.n) - args.n // 8) * args.dtau
    osc = signal.synth_oscillation(doped, tau, args.band)
    step = signal.StepModel(
        amplitude=float(np.max(np.abs(osc.values))), rise_time=1.0, onset=0.0
    )
    meta = _meta(("liquid", path)) + [f"seed: {args.seed}"]
    if args.map:
        nt = int(round(_PROBE_SPAN / args.dt))
        t = (np.arange(nt) - nt // 2) * args.dt
        probe = signal.gaussian_probe(t)
        fmap = signal.synth_map(doped, probe, step, tau, args.band)
        if args.noise_snr_db is not None:
            fmap = signal.add_noise(fmap, args.noise_snr_db, args.seed)
        with _Output(args.out) as fh:
            signal.write_map_csv(fmap, fh, meta=meta)
    else:
        trace = signal.TimeTrace(times=tau, values=step.evaluate(tau) + osc.values)
        if args.noise_snr_db is not None:
            trace = signal.add_noise(trace, args.noise_snr_db, args.seed)
        with _Output(args.out) as fh:
            signal.write_trace_csv(trace, fh, meta=meta)
    return 0


def _cmd_extract(args, parser):
    path = Path(args.input)
    if not path.exists():
        raise DataFileError(f"map file '{args.input}' not found")
    with open(path, "r", encoding="utf-8") as fh:
        fmap = signal.read_map_csv(fh)
    result = signal.extract(fmap, bandwidth=args.filter_thz, band_lo=args.band_lo)
    meta = _meta(("map", path))
    with _Output(args.out_oscillation) as fh:
        signal.write_trace_csv(result.oscillation, fh, meta=meta)
    with _Output(args.out_spectrum) as fh:
        signal.write_spectrum_csv(result.spectrum, fh, meta=meta)
    peak = result.peak
    print(
        f"peak_frequency_THz={peak.peak_frequency!r} fwhm_THz={peak.fwhm!r} "
        f"amplitude={peak.amplitude!r}"
    )
    return 0


_COMMANDS = {
    "eps": _cmd_eps,
    "nu0": _cmd_nu0,
    "ce-for-nu0": _cmd_ce_for_nu0,
    "match": _cmd_match,
    "lineshape": _cmd_lineshape,
    "synth": _cmd_synth,
    "extract": _cmd_extract,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except ImpostoronError as exc:
        print(str(exc), file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
