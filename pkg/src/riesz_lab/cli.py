"""Command-line front end.

Every command builds its inputs from flags, calls one library operation
and writes ``<name>.json`` (a report envelope) and ``<name>.csv`` into
``--out-dir``. Exit codes: 0 success, 2 input error, 3 numerical outcome
flag, 64 unknown command.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, serialize
from .errors import InputError, SingularGramError
from .experiments import (
    disk_run,
    golden_threshold,
    random_pigeonhole_instance,
    sector_pigeonhole_select,
    theorem2_run,
    translation_diagnostic,
    weighted_scan,
)
from .geometry import Disk, build_paper_set, normalize_intervals
from .harmonic import Exponential, ExponentialSystem, Indicator, gram_matrix, parse_weight
from .harmonic.gram import DENSE_LIMIT
from .riesz import expand_function, kadec_experiment, riesz_bounds

EXIT_OK, EXIT_INPUT, EXIT_OUTCOME, EXIT_USAGE = 0, 2, 3, 64
SEED_ENV = "RIESZ_LAB_SEED"
TOOL = "riesz-lab"
# output locations are echoed in the envelope but kept out of the config fingerprint
_OUTPUT_KEYS = ("out_dir", "name", "config")


class Outcome(Exception):
    """A run finished but raised a numerical flag (exit code 3)."""

    def __init__(self, message, payload=None, csv=None):
        super().__init__(message)
        self.payload = payload
        self.csv = csv


# -- parsing helpers ---------------------------------------------------------------


def _floats(text: str) -> list[float]:
    try:
        return [float(p) for p in str(text).replace(";", ",").split(",") if p.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    vals = _floats(text)
    if any(v != int(v) for v in vals):
        raise InputError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


def _parse_set(text: str):
    pairs = []
    for chunk in text.split(";"):
        if chunk.strip():
            vals = _floats(chunk)
            if len(vals) != 2:
                raise InputError(f"interval needs two endpoints, got {chunk!r}")
            pairs.append(tuple(vals))
    if not pairs:
        raise InputError("empty interval list")
    return normalize_intervals(pairs)


def read_config(path) -> dict:
    """Flat ``key = value`` file; '#' starts a comment."""
    cfg = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InputError(f"{path}:{n}: expected key=value")
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


# -- argument groups -----------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("output")
    g.add_argument("--out-dir", default=".", help="directory for <name>.json and <name>.csv")
    g.add_argument("--name", default=None, help="output stem (default: the command name)")
    g.add_argument("--config", default=None, help="key=value file; explicit flags take precedence")
    g.add_argument("--seed", type=int, default=None, help=f"random seed (default 0, env {SEED_ENV})")


def _domain(p):
    g = p.add_argument_group("domain")
    g.add_argument("--set", dest="set", default=None, help='interval set, e.g. "0,1;2,3"')
    g.add_argument("--paper-stages", type=int, default=None, help="use the iterated set S_n")
    g.add_argument("--paper-splits", default=None, help="split counts N_2..N_n (default 3^k)")
    g.add_argument("--disk", action="store_true", help="area-1 disk (needs --dim 2)")


def _system(p, trunc_default=None):
    g = p.add_argument_group("frequencies")
    g.add_argument("--lattice", type=float, default=1.0, help="lattice step")
    g.add_argument("--trunc", type=float, default=trunc_default, help="truncation bound F")
    g.add_argument("--lo", type=float, default=None, help="lower truncation (default -F)")
    g.add_argument("--freqs", default=None, help="frequency file (JSON array or one per line)")
    g.add_argument("--perturb", type=float, default=None, help="alternating perturbation of the integers")
    g.add_argument("--dim", type=int, default=1, choices=(1, 2))


def _weight(p, default=None):
    p.add_argument("--weight", default=default, help='"power:ALPHA" or "pc:lo,hi,v;..."')


def _function(p):
    p.add_argument("--function", default="indicator:0,0.1",
                   help='"indicator:lo,hi[;lo,hi]", "exp:FREQ" or "disk:EPS"')
    p.add_argument("--ridge", type=float, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL, description="Riesz bounds and diagnostics for exponential systems.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("construct-set", help="build the iterated interval family")
    p.add_argument("--stages", type=int, default=2)
    p.add_argument("--splits", default=None, help="N_2..N_n, comma separated (default 3^k)")
    _common(p)

    for name, hlp in (("gram", "dump the Gram matrix"), ("bounds", "finite-section Riesz bounds")):
        p = sub.add_parser(name, help=hlp)
        _domain(p)
        _system(p, trunc_default=16)
        _weight(p)
        _common(p)

    p = sub.add_parser("expand", help="least-squares expansion of a function")
    _domain(p)
    _system(p, trunc_default=16)
    _weight(p)
    _function(p)
    _common(p)

    p = sub.add_parser("translate-test", help="coefficient translation diagnostic")
    _domain(p)
    _system(p, trunc_default=32)
    _weight(p)
    _function(p)
    p.add_argument("--shift", default="0.5", help='shift t ("x,y" in 2-D)')
    _common(p)

    p = sub.add_parser("weighted-scan", help="implied K along a shrinking eps grid")
    _weight(p, default="power:1")
    p.add_argument("--eps", default="0.1,0.01,0.001")
    p.add_argument("--trunc", type=float, default=20000)
    p.add_argument("--lattice", type=float, default=1.0)
    p.add_argument("--ridge", type=float, default=0.0)
    _common(p)

    p = sub.add_parser("pigeonhole", help="sector selection on seeded random instances")
    p.add_argument("--N", dest="N", type=int, default=64)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--instances", type=int, default=1)
    p.add_argument("--area", type=float, default=1.0, help="|A|")
    _common(p)

    p = sub.add_parser("theorem2", help="inequality chain on the iterated family")
    p.add_argument("--stages", type=int, default=2)
    p.add_argument("--splits", default=None)
    p.add_argument("--ell", type=int, default=4)
    p.add_argument("--trunc", type=float, default=256)
    p.add_argument("--ridge", type=float, default=None)
    _common(p)

    p = sub.add_parser("disk", help="lune energies on the area-1 disk")
    p.add_argument("--trunc", type=float, default=6, help="use Z^2 ∩ [-n, n]^2")
    p.add_argument("--lattice", type=float, default=1.0)
    p.add_argument("--freqs", default=None)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--theta", type=int, default=None, help="θ grid size (64 if rotation symmetric, else 256)")
    p.add_argument("--radial", type=int, default=256)
    p.add_argument("--angular", type=int, default=512)
    p.add_argument("--ridge", type=float, default=0.0)
    _common(p)

    p = sub.add_parser("kadec", help="bounds for alternately perturbed integers")
    p.add_argument("--delta", default="0,0.05,0.1,0.2")
    p.add_argument("--n", type=int, default=64)
    _common(p)

    p = sub.add_parser("threshold", help="the golden threshold √((1+√5)/2)")
    _common(p)
    return parser


COMMANDS = (
    "construct-set", "gram", "bounds", "expand", "translate-test", "weighted-scan",
    "pigeonhole", "theorem2", "disk", "kadec", "threshold",
)


# -- objects from arguments ------------------------------------------------------


def make_domain(a):
    if getattr(a, "disk", False) or (a.dim == 2 and not a.set and a.paper_stages is None):
        return Disk()
    if a.set and a.paper_stages is not None:
        raise InputError("give either --set or --paper-stages, not both")
    if a.paper_stages is not None:
        splits = _ints(a.paper_splits) if a.paper_splits else None
        return build_paper_set(a.paper_stages, splits).final
    return _parse_set(a.set or "0,1")


def make_system(a) -> ExponentialSystem:
    if a.freqs:
        try:
            return ExponentialSystem.load(a.freqs)
        except OSError as exc:
            raise InputError(f"cannot read frequencies: {exc}") from None
    if a.trunc is None:
        raise InputError("--trunc is required without --freqs")
    if a.perturb is not None:
        if a.trunc != int(a.trunc):
            raise InputError("--perturb needs an integer --trunc")
        return ExponentialSystem.perturbed_integers(a.perturb, int(a.trunc))
    if a.dim == 2:
        return ExponentialSystem.lattice_2d(int(a.trunc), a.lattice)
    return ExponentialSystem.lattice(a.lattice, a.trunc, a.lo)


def make_function(text: str, dim: int):
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "indicator":
        return Indicator.normalized(_parse_set(rest))
    if kind == "exp":
        vals = _floats(rest)
        return Exponential(vals[0] if len(vals) == 1 else tuple(vals))
    if kind == "disk":
        return Indicator.normalized(Disk(_floats(rest)[0]))
    raise InputError(f"unknown function {text!r}")


# -- command handlers: each returns (payload, csv header, csv rows) -------------------


def _bounds_row(b):
    d = serialize.bounds_to_dict(b)
    keys = ["lower", "upper", "constant", "dimension", "measure", "singular", "outcome"]
    return keys, [[d[k] for k in keys]]


def cmd_construct_set(a, seed):
    P = build_paper_set(a.stages, _ints(a.splits) if a.splits else None)
    payload = serialize.paper_set_to_dict(P)
    return payload, ["lo", "hi"], [[iv.lo, iv.hi] for iv in P.final.intervals]


def _note(a, **objs):
    """Record handler inputs for the envelope fingerprints."""
    a.inputs = {k: serialize.fingerprint(v) for k, v in objs.items()}
    return tuple(objs.values())


def cmd_gram(a, seed):
    system, domain = _note(a, system=make_system(a), domain=make_domain(a))
    if len(system) > DENSE_LIMIT:
        raise InputError(f"gram dumps are limited to {DENSE_LIMIT} frequencies")
    G = gram_matrix(system, domain, parse_weight(a.weight))
    header, rows = serialize.gram_csv_rows(G)
    return serialize.gram_to_dict(G), header, rows


def cmd_bounds(a, seed):
    system, domain = _note(a, system=make_system(a), domain=make_domain(a))
    b = riesz_bounds(system, domain, parse_weight(a.weight))
    payload = serialize.report_to_dict(b)
    header, rows = _bounds_row(b)
    if b.singular:
        raise Outcome("numerically singular section", payload, (header, rows))
    return payload, header, rows


def cmd_expand(a, seed):
    system, domain = _note(a, system=make_system(a), domain=make_domain(a))
    e = expand_function(make_function(a.function, system.dim), system, domain, parse_weight(a.weight), a.ridge)
    rows = []
    for lam, c in zip(system.freqs, e.coefficients):
        lam = list(np.atleast_1d(lam))
        rows.append(lam + [c.real, c.imag])
    header = (["freq"] if system.dim == 1 else ["freq_x", "freq_y"]) + ["re", "im"]
    return serialize.expansion_to_dict(e), header, rows


def cmd_translate(a, seed):
    system, domain = _note(a, system=make_system(a), domain=make_domain(a))
    t = _floats(a.shift)
    t = t[0] if len(t) == 1 else t
    r = translation_diagnostic(domain, parse_weight(a.weight), system, make_function(a.function, system.dim),
                               t, ridge=a.ridge)
    payload = serialize.report_to_dict(r)
    keys = ["coeff_energy", "f_energy", "expansion_energy", "g_energy", "ratio", "implied_K", "residual_energy"]
    return payload, keys, [[payload[k] for k in keys]]


def cmd_scan(a, seed):
    r = weighted_scan(parse_weight(a.weight), _floats(a.eps), a.trunc, step=a.lattice, ridge=a.ridge)
    keys = list(r.rows[0])
    return serialize.report_to_dict(r), keys, [[row[k] for k in keys] for row in r.rows]


def cmd_pigeonhole(a, seed):
    rng = np.random.default_rng(seed)
    results = []
    for _ in range(a.instances):
        g, x, M = random_pigeonhole_instance(rng, a.N, a.points, a.area)
        results.append(sector_pigeonhole_select(g, a.area, M, grid=x))
    payload = {"kind": "pigeonhole-batch", "results": [serialize.report_to_dict(r) for r in results]}
    keys = ["index", "energy", "bound", "sector", "sector_size", "witness_point", "M", "hypothesis_holds"]
    rows = [[getattr(r, k) for k in keys] for r in results]
    if any(r.hypothesis_holds and not r.conclusion_holds for r in results):
        raise Outcome("selected energy exceeds the bound", payload, (keys, rows))
    return payload, keys, rows


def cmd_theorem2(a, seed):
    r = theorem2_run(a.stages, _ints(a.splits) if a.splits else None, a.ell, a.trunc, ridge=a.ridge)
    payload = serialize.report_to_dict(r)
    keys = ["k", "shift", "coeff_energy", "energy_on_S", "energy_on_short"]
    rows = [[t[k] for k in keys] for t in r.translations]
    if r.outcome != "ok" or not r.invariants_hold:
        raise Outcome(f"outcome {r.outcome}, invariants {r.invariants}", payload, (keys, rows))
    return payload, keys, rows


def cmd_disk(a, seed):
    if a.freqs:
        system = ExponentialSystem.load(a.freqs)
    else:
        system = ExponentialSystem.lattice_2d(int(a.trunc), a.lattice)
    _note(a, system=system, domain=Disk())
    r = disk_run(system, a.eps, a.theta, ridge=a.ridge, n_radial=a.radial, n_angular=a.angular)
    keys = list(r.rows[0])
    return serialize.report_to_dict(r), keys, [[row[k] for k in keys] for row in r.rows]


def cmd_kadec(a, seed):
    deltas = _floats(a.delta)
    results = [kadec_experiment(d, a.n) for d in deltas]
    payload = {"kind": "kadec", "n": a.n, "deltas": deltas, "results": [serialize.report_to_dict(b) for b in results]}
    keys = ["delta", "lower", "upper", "constant", "singular"]
    rows = [[d, b.lower, b.upper, b.constant, b.singular] for d, b in zip(deltas, results)]
    if any(b.singular for b in results):
        raise Outcome("numerically singular section", payload, (keys, rows))
    return payload, keys, rows


def cmd_threshold(a, seed):
    k = golden_threshold()
    residual = k**4 - k**2 - 1
    print(f"{k:.17g}")
    print(f"K^4 - K^2 - 1 = {residual:.3g}")
    return {"kind": "threshold", "threshold": k, "residual": residual}, ["threshold", "residual"], [[k, residual]]


HANDLERS = {
    "construct-set": cmd_construct_set,
    "gram": cmd_gram,
    "bounds": cmd_bounds,
    "expand": cmd_expand,
    "translate-test": cmd_translate,
    "weighted-scan": cmd_scan,
    "pigeonhole": cmd_pigeonhole,
    "theorem2": cmd_theorem2,
    "disk": cmd_disk,
    "kadec": cmd_kadec,
    "threshold": cmd_threshold,
}


# -- driver ------------------------------------------------------------------------


def _resolve(parser, sub_parser, argv):
    args = parser.parse_args(argv)
    cfg = read_config(args.config) if args.config else {}
    if cfg:
        known = {act.dest: act for act in sub_parser._actions}
        unknown = sorted(set(cfg) - set(known))
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(unknown)}")
        defaults = {}
        for key, value in cfg.items():
            act = known[key]
            if isinstance(act, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                defaults[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                defaults[key] = act.type(value) if act.type else value
        sub_parser.set_defaults(**defaults)
        args = parser.parse_args(argv)
    seed = int(cfg.get("seed", 0))
    if os.environ.get(SEED_ENV, "").strip():
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError:
            raise InputError(f"{SEED_ENV} must be an integer") from None
    if "--seed" in argv or any(s.startswith("--seed=") for s in argv):
        seed = args.seed
    args.seed = seed
    return args


def run_command(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        parser.print_help(sys.stdout if argv else sys.stderr)
        return EXIT_OK if argv else EXIT_USAGE
    if argv[0] == "--version":
        print(f"{TOOL} {__version__}")
        return EXIT_OK
    if argv[0] not in COMMANDS:
        print(f"{TOOL}: unknown command {argv[0]!r}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    sub_parser = parser._subparsers._group_actions[0].choices[argv[0]]
    try:
        args = _resolve(parser, sub_parser, argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    except InputError as exc:
        print(f"{TOOL}: {exc}", file=sys.stderr)
        return EXIT_INPUT

    config = dict(sorted(vars(args).items()))
    identity = {k: v for k, v in config.items() if k not in _OUTPUT_KEYS}
    start = time.perf_counter()
    code = EXIT_OK
    try:
        payload, header, rows = HANDLERS[args.command](args, args.seed)
    except Outcome as out:
        print(f"{TOOL}: {out}", file=sys.stderr)
        payload, (header, rows) = out.payload, out.csv
        code = EXIT_OUTCOME
    except SingularGramError as exc:
        print(f"{TOOL}: {exc}", file=sys.stderr)
        payload = {"kind": "error", "outcome": "singular_gram", "message": str(exc),
                   "suggested_ridge": exc.suggested_ridge}
        header, rows = ["outcome", "suggested_ridge"], [["singular_gram", exc.suggested_ridge]]
        code = EXIT_OUTCOME
    except (InputError, MemoryError) as exc:
        print(f"{TOOL}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    wall = time.perf_counter() - start

    envelope = {
        "tool": TOOL,
        "version": __version__,
        "command": args.command,
        "config": config,
        "seed": args.seed,
        "fingerprints": {
            "config": serialize.fingerprint(identity),
            "payload": serialize.fingerprint(payload),
            **getattr(args, "inputs", {}),
        },
        "wall_time": wall,
        "payload": payload,
    }
    stem = Path(args.out_dir) / (args.name or args.command)
    try:
        serialize.write_text(stem.with_suffix(".json"), serialize.dumps(envelope))
        serialize.write_csv(stem.with_suffix(".csv"), header, rows)
    except OSError as exc:
        print(f"{TOOL}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command != "threshold":
        print(_summary(args.command, payload))
    return code


def _summary(command: str, payload: dict) -> str:
    for key in ("constant", "implied_K", "K_hat", "implied_K_lower", "measure"):
        if key in payload and isinstance(payload[key], (int, float)) and math.isfinite(payload[key]):
            return f"{command}: {key} = {payload[key]:.17g}"
    return f"{command}: done"


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
