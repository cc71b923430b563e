"""Command-line front end ``hak``.

Commands: ``transform``, ``kernel``, ``decompose``, ``verify`` and
``replay``. Every command resolves a run configuration (JSON config file,
then flags) and records it in ``manifest.json`` under ``--out``;
``hak replay <manifest>`` re-executes it.

Exit codes: 0 success, 2 failed hard assertion, 3 configuration or input
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core.basis import BasisSpec
from .core.grid import InsufficientQuadrature, hermite_grid, synthesize, tensor_points, transform
from .core.io import CSVFormatError, coefvec_from_csv, coefvec_to_csv, gridfn_from_csv, gridfn_to_csv, write_table
from .hardy.atoms import antisymmetric_atom, indicator_atom, projected_atom, synthetic_molecule
from .hardy.balls import Ball, SpaceParams
from .hardy.decomposition import DecompositionError, decompose_molecule, export_decomposition
from .riesz import DiagonalProximityError, LadderWord, RieszOp, riesz_kernel, riesz_kernel_subordinated
from .spectral.mehler import time_nodes
from .spectral.pseudo import pseudo_kernel
from .spectral.semigroup import TruncationError, heat_kernel, mehler_kernel, projector_QN
from .spectral.symbols import REGISTRY, get_symbol
from .verify.suites import SUITES, ConfigError, export_result, run_suite

EXIT_OK, EXIT_ASSERT, EXIT_CONFIG = 0, 2, 3
KERNEL_OPS = ("heat", "projector", "pseudo", "riesz", "riesz-series")
ATOMS = {"indicator": indicator_atom, "antisymmetric": antisymmetric_atom, "projected": projected_atom}
DEFAULT_GRID = "-4:4:41"
UNRECORDED = ("out", "config")


# ---------------------------------------------------------------------------
# configuration


def _parse_grid(text):
    try:
        lo, hi, count = str(text).split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise ConfigError(f"grid must read 'lo:hi:count', got {text!r}") from None
    if count < 1 or (count > 1 and not hi > lo):
        raise ConfigError(f"grid {text!r} needs count >= 1 and hi > lo")
    return np.linspace(lo, hi, count)


def _parse_list(value, cast):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [cast(v) for v in value]
    return [cast(v.strip()) for v in str(value).split(",") if v.strip()]


def _split_op(text):
    """``'key:p1:p2'`` -> ``('key', ['p1', 'p2'])``."""
    parts = str(text).split(":")
    return parts[0], parts[1:]


def _number(tok):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def resolve_config(args):
    """Merge the JSON config file (if any) with explicit flags; flags win."""
    cfg = {}
    if getattr(args, "config", None):
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        cfg = dict(cfg.get("config", cfg))
    for k, v in vars(args).items():
        if v is None or v is False:
            continue
        cfg[k] = v
    if "alpha" in cfg:
        cfg["alpha"] = _parse_list(cfg["alpha"], int)
    if "word" in cfg:
        cfg["word"] = _parse_list(cfg["word"], str)
    return cfg


def _recorded(cfg):
    return {k: cfg[k] for k in sorted(cfg) if k not in UNRECORDED}


def _write_manifest(out, cfg, files, extra=None):
    man = {"version": __version__, "config": _recorded(cfg), "files": sorted(files)}
    man.update(extra or {})
    p = Path(out) / "manifest.json"
    p.write_text(json.dumps(man, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return p


def _outdir(cfg):
    out = Path(cfg.get("out") or "hak-out")
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_transform(cfg):
    """Forward (GridFn CSV -> CoefVec CSV) or inverse Hermite transform."""
    src = cfg.get("input")
    if not src:
        raise ConfigError("transform needs --input <csv>")
    out = _outdir(cfg)
    if cfg.get("inverse"):
        c = coefvec_from_csv(src)
        n = c.basis.dimension
        if cfg.get("grid"):
            pts = tensor_points([_parse_grid(cfg["grid"])] * n)
            f = synthesize(c, pts)
        else:
            g = hermite_grid(c.basis.degree, n)
            f = synthesize(c, g)
        gridfn_to_csv(f, out / "gridfn.csv")
        _write_manifest(out, cfg, ["gridfn.csv"])
        print(f"wrote {out / 'gridfn.csv'} ({f.size} points)")
        return EXIT_OK
    f = gridfn_from_csv(src)
    if cfg.get("dim") is not None and int(cfg["dim"]) != f.dimension:
        raise ConfigError(f"--dim {cfg['dim']} does not match the CSV header dim={f.dimension}")
    degree = int(cfg["degree"]) if cfg.get("degree") is not None else (f.precision if f.precision is not None else 32)
    c = transform(f, BasisSpec(f.dimension, degree))
    back = synthesize(c, f.points).values
    scale = max(float(np.max(np.abs(f.values))), np.finfo(float).tiny)
    resid = float(np.max(np.abs(back - f.values)) / scale)
    coefvec_to_csv(c, out / "coefvec.csv")
    _write_manifest(out, cfg, ["coefvec.csv"], {"round_trip_residual": resid})
    print(f"wrote {out / 'coefvec.csv'} (degree {degree}, {c.basis.count} coefficients)")
    print(f"round-trip residual: {resid:.3e}")
    return EXIT_OK


def _riesz_op(cfg, n):
    alpha = cfg.get("alpha") or [1] * n
    word = cfg.get("word") or ["A"] * len(alpha)
    if len(word) == 1 and len(alpha) > 1:
        word = word * len(alpha)
    try:
        w = LadderWord(tuple(alpha), tuple(word))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if w.dimension != n:
        raise ConfigError(f"--alpha has {w.dimension} entries but --dim is {n}")
    if w.order < 1:
        raise ConfigError("Riesz transforms need |alpha| >= 1")
    return RieszOp(w)


def kernel_table(cfg):
    """``(X, Y, value, diagnostic)`` for the configured operator on the grid pairs."""
    n = int(cfg.get("dim") or 1)
    xs = tensor_points([_parse_grid(cfg.get("grid") or DEFAULT_GRID)] * n)
    ys = tensor_points([_parse_grid(cfg.get("ygrid") or cfg.get("grid") or DEFAULT_GRID)] * n)
    key, params = _split_op(cfg.get("op") or "heat")
    X = np.repeat(xs, ys.shape[0], axis=0)
    Y = np.tile(ys, (xs.shape[0], 1))
    degree = cfg.get("degree")
    if key == "heat":
        t = float(params[0]) if params else 0.5
        val = heat_kernel(t, X, Y, degree=degree)
        diag = np.abs(val - mehler_kernel(t, X, Y))
    elif key == "projector":
        N = int(params[0]) if params else int(degree if degree is not None else 16)
        val = projector_QN(N, X, Y)
        diag = np.zeros_like(val)
    elif key == "pseudo":
        if not params:
            raise ConfigError(f"pseudo needs a symbol key, e.g. pseudo:hormander:1; available: {', '.join(sorted(REGISTRY))}")
        try:
            sigma = get_symbol(params[0], *[_number(p) for p in params[1:]])
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from None
        K = int(degree) if degree is not None else 64
        val = pseudo_kernel(sigma, X, Y, degree=K, dimension=n)
        diag = np.abs(pseudo_kernel(sigma, X, Y, degree=2 * K, dimension=n) - val)
    elif key == "riesz":
        op = _riesz_op(cfg, n)
        val = riesz_kernel_subordinated(op, X, Y)
        diag = np.abs(riesz_kernel_subordinated(op, X, Y, nodes=time_nodes(panels=192)) - val)
    elif key == "riesz-series":
        op = _riesz_op(cfg, n)
        level = int(params[0]) if params else 7
        val, diag = riesz_kernel(op, X, Y, level=level, diagnostic=True)
    else:
        raise ConfigError(f"unknown operator {key!r}; available: {', '.join(KERNEL_OPS)}")
    return X, Y, np.real_if_close(np.asarray(val)), np.asarray(diag, dtype=float)


def cmd_kernel(cfg):
    X, Y, val, diag = kernel_table(cfg)
    out = _outdir(cfg)
    n = X.shape[1]
    cols = (["x", "y"] if n == 1 else [f"x_{i + 1}" for i in range(n)] + [f"y_{i + 1}" for i in range(n)]) + [
        "value",
        "diagnostic",
    ]
    write_table(out / "kernel.csv", cols, np.column_stack([X, Y, val, diag]), [f"op={cfg.get('op') or 'heat'} dim={n}"])
    _write_manifest(out, cfg, ["kernel.csv"], {"max_diagnostic": float(np.max(diag)) if diag.size else 0.0})
    print(f"wrote {out / 'kernel.csv'} ({val.size} pairs, max diagnostic {np.max(diag):.3e})")
    return EXIT_OK


def _molecule(cfg, ball, params):
    src = str(cfg.get("input") or "synthetic:odd-gauss")
    kind, rest = _split_op(src)
    if kind == "synthetic":
        name = rest[0] if rest else "odd-gauss"
        try:
            return synthetic_molecule(name, ball, params)
        except KeyError as exc:
            raise ConfigError(exc.args[0]) from None
    if kind == "atom":
        name = rest[0] if rest else "antisymmetric"
        if name not in ATOMS:
            raise ConfigError(f"unknown atom {name!r}; available: {', '.join(sorted(ATOMS))}")
        return ATOMS[name](ball, params)
    f = gridfn_from_csv(src)
    if f.weights is None:
        raise ConfigError("a molecule CSV must carry quadrature weights")
    return f


def cmd_decompose(cfg):
    center = _parse_list(cfg.get("center"), float) or [0.0] * int(cfg.get("dim") or 1)
    radius = float(cfg.get("radius") or 1 / 16)
    omega = float(cfg.get("omega") if cfg.get("omega") is not None else 0.5)
    try:
        params = SpaceParams(
            p=float(cfg.get("p") or 1.0),
            q=float(cfg.get("q") or 2.0),
            M=int(np.floor(omega)),
            delta=float(cfg.get("delta") or 1.5),
            omega=omega,
        )
        params.check_delta(len(center))
        ball = Ball(tuple(center), radius)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    m = _molecule(cfg, ball, params)
    dec = decompose_molecule(m, ball, params)
    out = _outdir(cfg)
    scale = float(np.sqrt(np.sum(dec.weights * np.abs(dec.values) ** 2))) or 1.0
    paths = export_decomposition(dec, out, drop_below=1e-10 * scale)
    man = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    man["config"] = _recorded(cfg)
    man["version"] = __version__
    (out / "manifest.json").write_text(json.dumps(man, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    d = dec.diagnostics
    print(f"J={dec.J}  pieces written: {len(paths) - 1}")
    print(f"reassembly L2 residual: {d['reassembly_L2']:.3e}")
    print("C1={C1:.6g} C2={C2:.6g} C3={C3:.6g}".format(**dec.constants))
    ok = d["reassembly_L2"] <= 1e-8 * max(scale, 1.0) and d["mol8_moment"] <= 1e-9 and d["dual_residual"] <= 1e-9
    return EXIT_OK if ok else EXIT_ASSERT


def cmd_verify(cfg):
    suite = cfg.get("suite") or "all"
    if suite != "all" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; available: {', '.join(list(SUITES) + ['all'])}")
    result = run_suite(suite, cfg)
    for line in result.lines():
        print(line)
    strict = bool(cfg.get("strict"))
    if cfg.get("out"):
        export_result(result, _outdir(cfg), _recorded(cfg), strict=strict)
    ok = result.passed(strict)
    n_fail = sum(not x.passed for x in result.identities + result.reports + result.windows)
    print(f"{suite}: {'ok' if ok else 'FAILED'} ({n_fail} non-passing item(s){'' if strict else ', reports advisory'})")
    return EXIT_OK if ok else EXIT_ASSERT


COMMANDS = {"transform": cmd_transform, "kernel": cmd_kernel, "decompose": cmd_decompose, "verify": cmd_verify}


def cmd_replay(cfg):
    try:
        man = json.loads(Path(cfg["manifest"]).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read manifest: {exc}") from None
    rec = dict(man.get("config", {}))
    command = rec.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"manifest records no replayable command (got {command!r})")
    if cfg.get("out"):
        rec["out"] = cfg["out"]
    return COMMANDS[command](rec)


# ---------------------------------------------------------------------------
# argument parsing


def _common(p):
    p.add_argument("--config", help="JSON file of settings; explicit flags win")
    p.add_argument("--dim", type=int, help="dimension n")
    p.add_argument("--degree", type=int, help="truncation degree K")
    p.add_argument("--grid", help="uniform axis 'lo:hi:count'")
    p.add_argument("--op", help="operator or symbol key with ':'-separated parameters")
    p.add_argument("--alpha", help="comma-separated exponents, e.g. 1,2")
    p.add_argument("--word", help="comma-separated letters A or AStar, one per axis")
    p.add_argument("--p", type=float, help="Hardy exponent p")
    p.add_argument("--q", type=float, help="integrability exponent q")
    p.add_argument("--omega", type=float, help="molecule moment order")
    p.add_argument("--delta", type=float, help="molecule decay")
    p.add_argument("--seed", type=int, help="random seed")
    p.add_argument("--out", help="output directory")
    p.add_argument("--strict", action="store_true", help="bound reports and windows also set the exit code")


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit 3)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


GRID_FLAGS = ("--grid", "--ygrid", "--center")


def _glue_negative(argv):
    """``--grid -2:2:5`` -> ``--grid=-2:2:5`` so argparse does not read an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in GRID_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def build_parser():
    parser = _Parser(prog="hak", description="Hermite analysis toolkit")
    parser.add_argument("--version", action="version", version=f"hak {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("transform", help="Hermite transform of a CSV GridFn (or --inverse)")
    _common(p)
    p.add_argument("--input", help="GridFn CSV (CoefVec CSV with --inverse)")
    p.add_argument("--inverse", action="store_true", help="synthesize a CoefVec CSV")
    p = sub.add_parser("kernel", help="kernel table on a grid: " + ", ".join(KERNEL_OPS))
    _common(p)
    p.add_argument("--ygrid", help="separate y axis 'lo:hi:count'")
    p = sub.add_parser("decompose", help="molecular decomposition")
    _common(p)
    p.add_argument("--input", help="synthetic:<name>, atom:<name> or a weighted GridFn CSV")
    p.add_argument("--center", help="ball centre, comma-separated")
    p.add_argument("--radius", type=float, help="ball radius")
    p = sub.add_parser("verify", help="verification suites")
    p.add_argument("suite", nargs="?", help=", ".join(list(SUITES) + ["all"]))
    _common(p)
    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest")
    p.add_argument("--out", help="output directory")
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative(argv))
    try:
        cfg = resolve_config(args)
        if args.command == "replay":
            return cmd_replay(cfg)
        return COMMANDS[args.command](cfg)
    except (ConfigError, CSVFormatError, InsufficientQuadrature, DiagonalProximityError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
