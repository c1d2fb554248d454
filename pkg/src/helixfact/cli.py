"""Command-line front end: ``helixfact {gen,factor,compare,sweep,zcheck,load}``.

Every command accepts ``--config FILE`` (``key = value`` lines); explicit
flags override file values.  The fully resolved configuration is written
next to the outputs so that any run can be repeated exactly.

Exit codes: 0 success, 1 property violation, 2 usage, 3 format error,
4 numeric-domain error, 5 marginal (on-the-unit-circle) catalog.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import config as kv
from .cepstral import Region
from .exceptions import (
    DegenerateSpectrumError,
    DomainError,
    FormatError,
    MarginalSpectrumError,
    NumericRangeError,
    ShapeError,
)
from .factorize import (
    SweepConfig,
    SweepRow,
    compare,
    factorize_helical,
    factorize_nd,
    sweep_equivalence,
    sweep_to_csv,
)
from .grid import Field, HelicalOrder
from .io import atomic_write, load_raw, read_field, write_field
from .synth import PlaneWaveParams, RickerParams, plane_wave, ricker_response, synth_data, white_excitation
from .zoracle import classify, helical_pz, plane_wave_pz

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_NUMERIC = 4
EXIT_MARGINAL = 5


class UsageError(Exception):
    pass


# Defaults per command; every key is also a flag (underscores -> dashes).
DEFAULTS = {
    "gen": {
        "kind": "ricker", "M": 1024, "N": 1024, "L": 0, "seed": 7, "dirac": False, "out_dir": ".",
        "sigma": 0.01, "R": 100.0, "v": 1500.0, "dt": 0.02, "dx": 5.0,
        "A0": 1.0, "alpha": 0.05, "beta": 0.05, "k": 0.3, "omega": 0.2, "backward": False,
    },
    "factor": {"input": None, "mode": "helix", "region": "upper", "order": "", "eps": 1e-12, "out": None, "report": ""},
    "compare": {"a": None, "b": None, "order": "", "out": "", "plot_script": ""},
    "sweep": {
        "M": "16,32,64,128", "N": 256, "seed": 7, "kind": "ricker", "dirac": True, "eps": 1e-12, "jobs": 1,
        "sigma": 0.01, "R": 100.0, "v": 1500.0, "dt": 0.02, "dx": 5.0, "out": "", "plot_script": "",
    },
    "zcheck": {
        "A0": 1.0, "alpha": 0.05, "beta": 0.05, "k": 0.3, "omega": 0.2, "dx": 1.0, "dt": 1.0,
        "M": 64, "N": 0, "direction": "forward", "out": "",
    },
    "load": {"input": None, "dims": None, "dtype": "f32", "layout": "F", "steps": "", "out": None},
}

HELP = {
    "gen": "generate impulse response h, excitation s and data d = s * h as HLXF files",
    "factor": "spectral factor of an HLXF field (nd: half-plane/space cepstrum, helix: helical cepstrum)",
    "compare": "helix-ordered distance and correlation between two HLXF fields (CSV)",
    "sweep": "helical vs half-plane equivalence over a ladder of space sizes M (CSV)",
    "zcheck": "pole/zero catalogs of the damped plane wave before and after helical mapping (CSV)",
    "load": "convert a raw little-endian f32/f64 volume to HLXF",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="helixfact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, defaults in DEFAULTS.items():
        p = sub.add_parser(name, help=HELP[name], description=HELP[name])
        p.add_argument("--config", help="key = value file; flags override its values")
        for key, value in defaults.items():
            flag = "--" + key.replace("_", "-")
            if isinstance(value, bool):
                p.add_argument(flag, dest=key, nargs="?", const="true", default=None, metavar="BOOL")
            else:
                p.add_argument(flag, dest=key, default=None)
    return parser


def resolve(command: str, args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS[command])
    if args.config:
        file_cfg = kv.load(args.config)
        unknown = set(file_cfg) - set(cfg)
        if unknown:
            raise UsageError(f"unknown config keys for {command}: {sorted(unknown)}")
        cfg.update(file_cfg)
    for key in DEFAULTS[command]:
        value = getattr(args, key)
        if value is not None:
            cfg[key] = value
    missing = [k for k, v in cfg.items() if v is None]
    if missing:
        raise UsageError(f"{command}: missing required option(s): {', '.join('--' + m.replace('_', '-') for m in missing)}")
    return _coerce(DEFAULTS[command], cfg)


def _coerce(defaults: dict, cfg: dict) -> dict:
    out = {}
    for key, value in cfg.items():
        default = defaults[key]
        try:
            if isinstance(default, bool):
                out[key] = kv.as_bool(value)
            elif isinstance(default, int):
                out[key] = int(value)
            elif isinstance(default, float):
                out[key] = float(value)
            else:
                out[key] = value
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {value!r} ({exc})") from None
    return out


def _write_manifest(path: Path, command: str, cfg: dict) -> None:
    atomic_write(path, f"# resolved configuration of `helixfact {command}`\n" + kv.dumps(cfg))


def _positive(cfg, *keys):
    for key in keys:
        if cfg[key] <= 0:
            raise UsageError(f"{key} must be positive, got {cfg[key]}")


def _order(text: str, ndim: int):
    if not text:
        return HelicalOrder.column_wise(ndim)
    try:
        return HelicalOrder(kv.as_int_list(text))
    except ValueError as exc:
        raise UsageError(f"bad --order {text!r}: {exc}") from None


def _emit(out: str, text: str) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def cmd_gen(cfg: dict) -> int:
    _positive(cfg, "M", "N")
    dims = (cfg["M"], cfg["N"]) if cfg["L"] <= 0 else (cfg["L"], cfg["M"], cfg["N"])
    out_dir = Path(cfg["out_dir"])
    if cfg["kind"] == "ricker":
        rp = RickerParams(cfg["sigma"], cfg["R"], cfg["v"], cfg["dt"], cfg["dx"])
        h = ricker_response(rp, *dims)
    elif cfg["kind"] == "planewave":
        if len(dims) != 2:
            raise UsageError("planewave generator is 2-D only")
        pw = PlaneWaveParams(cfg["A0"], cfg["alpha"], cfg["beta"], cfg["k"], cfg["omega"], cfg["dx"], cfg["dt"])
        h = plane_wave(pw, *dims, "forward")
        if cfg["backward"]:
            h = h.with_values(h.values + plane_wave(pw, *dims, "backward").values)
    else:
        raise UsageError(f"unknown generator kind {cfg['kind']!r}")
    s = _excitation(cfg, dims, h.steps)
    d = synth_data(h, s)
    for name, f in (("h", h), ("s", s), ("d", d)):
        write_field(out_dir / f"{name}.hlxf", f)
    _write_manifest(out_dir / "gen.config", "gen", cfg)
    return EXIT_OK


def _excitation(cfg, dims, steps) -> Field:
    if cfg["dirac"]:
        s = np.zeros(dims)
        s[(0,) * len(dims)] = 1.0
        return Field(s, steps)
    return white_excitation(cfg["seed"], *dims, steps=steps)


def cmd_factor(cfg: dict) -> int:
    f = read_field(cfg["input"])
    if cfg["mode"] == "nd":
        region = Region.from_name(cfg["region"], f.ndim)
        res = factorize_nd(f, region, cfg["eps"])
    elif cfg["mode"] == "helix":
        res = factorize_helical(f, _order(cfg["order"], f.ndim), cfg["eps"])
    else:
        raise UsageError(f"mode must be 'nd' or 'helix', got {cfg['mode']!r}")
    out = Path(cfg["out"])
    write_field(out, res.factor)
    report = {
        "mode": cfg["mode"],
        "dims": list(f.dims),
        "region": res.region.kind.value,
        "order": list(res.order.axis_order) if res.order else "",
        "floor_fired": res.floor_fired,
        "floor_applied": res.floor_report,
        "n_floored": res.cepstrum_used.n_floored,
        "magnitude_residual": res.magnitude_residual(),
        "causality_residual": res.causality_residual(),
        "imag_residue": res.imag_residue,
        "energy": res.factor.energy(),
    }
    atomic_write(cfg["report"] or str(out) + ".report", kv.dumps(report))
    _write_manifest(Path(str(out) + ".config"), "factor", cfg)
    return EXIT_OK


PLOT_SCRIPT = '''"""Render approximation error and correlation against M from {csv}."""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

src = sys.argv[1] if len(sys.argv) > 1 else {csv!r}
rows = list(csv.DictReader(open(src)))
M = [int(r["M"]) for r in rows]
fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(6, 7), sharex=True)
ax1.semilogy(M, [float(r["e_tot_norm"]) for r in rows], "o-")
ax1.set_ylabel("e_tot / energy")
ax1.set_title("Total approximation error vs M")
ax2.plot(M, [float(r["pearson_r"]) for r in rows], "o-")
ax2.set_ylabel("Pearson R")
ax2.set_xlabel("M (space samples)")
ax2.set_xscale("log", base=2)
fig.tight_layout()
fig.savefig(src.rsplit(".", 1)[0] + ".png", dpi=150)
'''


def _plot_script(path: str, csv_path: str) -> None:
    if path:
        atomic_write(path, PLOT_SCRIPT.format(csv=csv_path or "sweep.csv"))


def cmd_compare(cfg: dict) -> int:
    a, b = read_field(cfg["a"]), read_field(cfg["b"])
    if a.dims != b.dims:
        raise ShapeError(f"dims differ: {a.dims} vs {b.dims}")
    order = _order(cfg["order"], a.ndim)
    m = compare(a, b, order)
    row = SweepRow(a.dims[order.axis_order[0]], m.e_tot, m.e_tot_norm, m.pearson_r)
    _emit(cfg["out"], sweep_to_csv([row]))
    _plot_script(cfg["plot_script"], cfg["out"])
    if cfg["out"]:
        _write_manifest(Path(cfg["out"] + ".config"), "compare", cfg)
    return EXIT_OK


def cmd_sweep(cfg: dict) -> int:
    Ms = kv.as_int_list(cfg["M"])
    if any(M <= 0 for M in Ms):
        raise UsageError(f"every M must be positive, got {Ms}")
    _positive(cfg, "N")
    sc = SweepConfig(
        M_values=tuple(Ms), N=cfg["N"], seed=cfg["seed"], kind=cfg["kind"], eps=cfg["eps"], dirac=cfg["dirac"],
        ricker=RickerParams(cfg["sigma"], cfg["R"], cfg["v"], cfg["dt"], cfg["dx"]), jobs=max(1, cfg["jobs"]),
    )
    if sc.kind != "ricker":
        raise UsageError(f"unknown generator kind {sc.kind!r}")
    _emit(cfg["out"], sweep_to_csv(sweep_equivalence(sc)))
    _plot_script(cfg["plot_script"], cfg["out"])
    if cfg["out"]:
        _write_manifest(Path(cfg["out"] + ".config"), "sweep", cfg)
    return EXIT_OK


ZCHECK_HEADER = "kind,re,im,modulus,inside_unit_circle"


def zcheck_rows(pw: PlaneWaveParams, M: int, N, direction: str):
    """``(kind, value)`` pairs for the original and helical catalogs."""
    rows = []
    for axis, pz in plane_wave_pz(pw, M, N, direction).items():
        rows += [(f"{direction}.original.{axis}.zero", z) for z in pz.zeros]
        rows += [(f"{direction}.original.{axis}.pole", z) for z in pz.poles]
    hz = helical_pz(pw, M, N, direction)
    rows += [(f"{direction}.helical.zero", z) for z in hz.zeros]
    rows += [(f"{direction}.helical.pole", z) for z in hz.poles]
    return rows, hz


def cmd_zcheck(cfg: dict) -> int:
    _positive(cfg, "M")
    N = cfg["N"] if cfg["N"] > 0 else None
    pw = PlaneWaveParams(cfg["A0"], cfg["alpha"], cfg["beta"], cfg["k"], cfg["omega"], cfg["dx"], cfg["dt"])
    if cfg["direction"] == "both":
        directions = ("forward", "backward")
    elif cfg["direction"] in ("forward", "backward"):
        directions = (cfg["direction"],)
    else:
        raise UsageError(f"direction must be forward, backward or both, got {cfg['direction']!r}")
    lines = [ZCHECK_HEADER]
    checked = None
    for direction in directions:
        rows, hz = zcheck_rows(pw, cfg["M"], N, direction)
        if checked is None:
            checked = hz
        for kind, z in rows:
            inside = classify([z])[0] < 0
            lines.append(f"{kind},{z.real!r},{z.imag!r},{abs(z)!r},{str(inside).lower()}")
    _emit(cfg["out"], "\n".join(lines) + "\n")
    if cfg["out"]:
        _write_manifest(Path(cfg["out"] + ".config"), "zcheck", cfg)
    cls = classify(np.concatenate([checked.zeros, checked.poles]))
    if np.any(cls > 0):
        return EXIT_PROPERTY
    if np.any(cls == 0):
        return EXIT_MARGINAL
    return EXIT_OK


def cmd_load(cfg: dict) -> int:
    dims = kv.as_int_list(cfg["dims"])
    if not dims or any(n <= 0 for n in dims):
        raise UsageError(f"dims must be positive, got {cfg['dims']!r}")
    steps = kv.as_float_list(cfg["steps"]) or None
    f = load_raw(cfg["input"], dims, cfg["dtype"], cfg["layout"], steps)
    write_field(cfg["out"], f)
    _write_manifest(Path(str(cfg["out"]) + ".config"), "load", cfg)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "factor": cmd_factor,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "zcheck": cmd_zcheck,
    "load": cmd_load,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args.command, args)
        return COMMANDS[args.command](cfg)
    except (UsageError, ShapeError, ValueError, OSError) as exc:
        if isinstance(exc, FormatError):
            print(f"helixfact {args.command}: format error: {exc}", file=sys.stderr)
            return EXIT_FORMAT
        if isinstance(exc, (DegenerateSpectrumError, DomainError, MarginalSpectrumError)):
            print(f"helixfact {args.command}: numeric-domain error: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"helixfact {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericRangeError as exc:
        print(f"helixfact {args.command}: numeric-domain error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
