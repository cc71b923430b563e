"""Named verification suites and their deterministic exporter.

A suite returns a :class:`SuiteResult` with three kinds of outcome:
exact identities (hard assertions), empirical bound reports, and window
checks (bounded quantities that only fail the run in strict mode).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .. import __version__
from ..core.io import fmt, write_table
from ..core.ladder import normalize_letter
from ..hardy.atoms import projected_atom, synthetic_molecule
from ..hardy.balls import Ball, SpaceParams
from ..hardy.decomposition import decompose_molecule, stability
from ..hardy.maximal import lemma_AE_check
from ..riesz import LadderWord, RieszOp, cancellation_functional
from ..spectral.symbols import heat_symbol
from .bounds import (
    check_campanato_equiv,
    check_ddKj,
    check_HK,
    check_kernel_RT,
    check_lemma_CN,
    check_lip_eg,
    check_maximal_atoms,
    check_QQ,
    grade_hczo,
    heat_hczo,
    riesz_hczo,
    zero_kernel,
)
from .identities import IdentityResult, run_identities

SPREAD_LIMIT = 3.0
CAMPANATO_WINDOW = (1 / 50, 50)
HCZO_OPS = ("riesz", "heat", "zero")
DEFAULTS = {"seed": 0, "op": "riesz", "alpha": None, "word": None, "omega": 0.5, "p": 1.0, "q": 2.0, "delta": 1.5}


class ConfigError(ValueError):
    """Invalid suite configuration."""


@dataclass
class WindowCheck:
    """A measured quantity that must stay inside ``[lo, hi]``."""

    name: str
    value: float
    lo: float
    hi: float
    params: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(np.isfinite(self.value) and self.lo <= self.value <= self.hi)

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.value:.6g} in [{self.lo:g}, {self.hi:g}]"


@dataclass
class SuiteResult:
    suite: str
    identities: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    windows: list = field(default_factory=list)

    def extend(self, other):
        self.identities += other.identities
        self.reports += other.reports
        self.windows += other.windows

    @property
    def hard_passed(self):
        return all(r.passed for r in self.identities)

    def passed(self, strict=False):
        """Hard assertions, plus reports and windows when ``strict``."""
        if not self.hard_passed:
            return False
        if strict:
            return all(r.passed for r in self.reports) and all(w.passed for w in self.windows)
        return True

    def lines(self):
        return [r.summary() for r in self.identities + self.reports + self.windows]


def _config(config):
    cfg = dict(DEFAULTS)
    cfg.update({k: v for k, v in (config or {}).items() if v is not None})
    return cfg


def _riesz_ops(cfg):
    """``(order, letter)`` pairs; ``alpha`` and ``word`` are per-axis lists (n = 1)."""
    alpha, word = cfg.get("alpha"), cfg.get("word")
    if alpha is None:
        return [(1, "A"), (2, "A")]
    alpha = [int(a) for a in alpha]
    if len(alpha) != 1:
        raise ConfigError("the verification suites run in dimension 1: --alpha takes one exponent")
    letters = list(word) if word else ["A"]
    if len(letters) != len(alpha):
        raise ConfigError("--word needs one letter per --alpha entry")
    if alpha[0] < 1:
        raise ConfigError("Riesz order must be at least 1")
    try:
        letter = normalize_letter(letters[0])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return [(alpha[0], letter)]


def suite_identities(config=None):
    cfg = _config(config)
    return SuiteResult("identities", identities=run_identities(seed=int(cfg["seed"])))


def suite_kernels(config=None):
    cfg = _config(config)
    out = SuiteResult("kernels")
    for mu in (0.0, 2.0):
        out.reports.append(check_QQ(mu))
    for k in (0, 1):
        for N in (0, 2):
            out.reports.append(check_HK("a", k, N))
    for g in (1, 2):
        for N in (0, 2):
            out.reports.append(check_HK("b", g, N))
    for order, letter in _riesz_ops(cfg):
        for gamma, eta in ((0, 0), (1, 0), (0, 1)):
            out.reports.append(check_kernel_RT(order, letter, gamma, eta))
    for side in ("pseudo", "riesz"):
        for N, gamma, eta in ((0, 0, 0), (1, 0, 0)):
            for mu in (0.0, 2.0):
                reps, spread = check_ddKj(side, N, gamma, eta, mu=mu)
                out.reports += reps
                out.windows.append(
                    WindowCheck(
                        f"ddKj-spread[{side}](N={N}, gamma={gamma}, eta={eta}, mu={mu:g})",
                        spread,
                        1.0,
                        SPREAD_LIMIT,
                        {"side": side, "N": N, "gamma": gamma, "eta": eta, "mu": mu, "j_range": [1, 5]},
                    )
                )
    return out


def suite_hczo(config=None):
    cfg = _config(config)
    op = cfg["op"]
    out = SuiteResult("hczo")
    if op == "riesz":
        for order, letter in _riesz_ops(cfg):
            out.reports += riesz_hczo(order, letter)
    elif op == "heat":
        out.reports += heat_hczo()
    elif op == "zero":
        out.reports += grade_hczo(zero_kernel(), l2_sup=lambda K: 0.0, name="zero")
    else:
        raise ConfigError(f"unknown HCZO operator {op!r}; available: {', '.join(HCZO_OPS)}")
    return out


def suite_cancellation(config=None):
    cfg = _config(config)
    omega = float(cfg["omega"])
    out = SuiteResult("cancellation")
    for order, letter in _riesz_ops(cfg)[:1]:
        op = RieszOp(LadderWord((order,), (letter,)))
        for kind in ("hardy", "lip"):
            out.reports.append(cancellation_functional(op, omega, kind=kind))
    for w in (0.5, 1.5):
        out.reports.append(cancellation_functional(heat_symbol(1.0), w, kind="lip"))
    for variant, N, beta in (("CN0", 0, 0), ("CN0", 1, 1), ("CN1", 1, 0), ("CN2", 1, 0), ("CN3", 1, 0)):
        out.reports.append(check_lemma_CN(variant, N, beta))
    return out


MOLECULE_CASES = (
    ("odd-gauss", (0.0,), 1 / 16, 1.0, 0.5),
    ("mexican-hat", (2.0,), 1 / 40, 0.8, 0.5),
    ("odd-gauss", (0.0,), 1 / 32, 1.0, 1.5),
    ("skew-gauss", (1.0,), 1 / 24, 0.8, 1.5),
)


def decomposition_checks(delta=1.5):
    """Hard invariants and ``J -> J+1`` stability windows on synthetic molecules."""
    ids, wins = [], []
    for kind, center, r, p, omega in MOLECULE_CASES:
        ball = Ball(center, r)
        params = SpaceParams(p=p, q=2.0, delta=delta, omega=omega)
        tag = f"{kind}(x_B={center[0]:g}, r_B={r:g}, p={p:g}, omega={omega:g})"
        m = synthetic_molecule(kind, ball, params)
        dec = decompose_molecule(m, ball, params)
        d = dec.diagnostics
        scale = float(np.sqrt(np.sum(dec.weights * dec.values ** 2)))
        ids.append(IdentityResult(f"reassembly[{tag}]", d["reassembly_L2"], scale, tol=1e-8))
        ids.append(IdentityResult(f"mol8[{tag}]", d["mol8_moment"], 1.0))
        ids.append(IdentityResult(f"mol11b[{tag}]", d["mol11b_moment"], 1.0))
        ids.append(IdentityResult(f"dual-basis[{tag}]", d["dual_residual"], 1.0))
        ids.append(IdentityResult(f"telescoping[{tag}]", d["telescoping_L2"], 1.0))
        for key, (a, b, ratio) in stability(m, ball, params, J=dec.J).items():
            wins.append(WindowCheck(f"{key}-stability[{tag}]", ratio, 1 / 1.1, 1.1, {"J": dec.J, "C_J": a, "C_J+1": b}))
    return ids, wins


def _ae_reports():
    """Far-field heat bound in modes (a) and (b) on generated functions."""
    reps = []
    params = SpaceParams(p=1.0, q=2.0, M=1)
    ball = Ball((0.0,), 1 / 32)
    g, f = projected_atom(ball, params).sample(0, order=32)
    reps.append(lemma_AE_check(f, ball, params, "b", s=1.0))
    big = Ball((2.0,), 0.25)
    g, f = projected_atom(big, SpaceParams(p=1.0, q=2.0, M=0)).sample(0, order=32)
    reps.append(lemma_AE_check(f, big, SpaceParams(p=1.0, q=2.0, M=0), "a", s=1.0, lam=0.5))
    return reps


def suite_norms(config=None):
    cfg = _config(config)
    out = SuiteResult("norms")
    for s in (0.0, 0.5, 1.5):
        for alpha in (0, 1):
            out.reports.append(check_lip_eg(s, alpha))
    rep = check_campanato_equiv(1.0)
    out.reports.append(rep)
    lo, hi = CAMPANATO_WINDOW
    for label, value in (("base", rep.constant), ("doubled", rep.refined)):
        out.windows.append(WindowCheck(f"campanato-window[{label}](s=1)", value, 1.0, hi, {"window": [lo, hi]}))
    out.reports += _ae_reports()
    for pt in (1.0, 0.75):
        out.reports.append(check_maximal_atoms(pt))
    ids, wins = decomposition_checks(float(cfg["delta"]))
    out.identities += ids
    out.windows += wins
    return out


SUITES = {
    "identities": suite_identities,
    "kernels": suite_kernels,
    "hczo": suite_hczo,
    "cancellation": suite_cancellation,
    "norms": suite_norms,
}


def run_suite(name, config=None):
    """Run a named suite (or ``'all'``, in registry order)."""
    if name == "all":
        out = SuiteResult("all")
        for key, fn in SUITES.items():
            out.extend(fn(config))
        return out
    try:
        fn = SUITES[name]
    except KeyError:
        raise ConfigError(f"unknown suite {name!r}; available: {', '.join(list(SUITES) + ['all'])}") from None
    return fn(config)


# ---------------------------------------------------------------------------
# export


def _slug(name):
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_")


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.generic):
        return v.item()
    return v


def export_result(result, outdir, config=None, strict=False):
    """Write per-report CSVs, summary tables and ``manifest.json``.

    Output depends only on the results and the configuration, so reruns
    with the same configuration are byte-identical. Returns the paths.
    """
    out = Path(outdir)
    (out / "reports").mkdir(parents=True, exist_ok=True)
    paths, summary = [], []
    for k, rep in enumerate(result.reports):
        fname = f"reports/{k:03d}_{_slug(rep.name)}.csv"
        head = [
            f"name={rep.name}",
            "params=" + json.dumps(_jsonable(rep.params), sort_keys=True),
            f"constant={fmt(rep.constant)} refined={fmt(rep.refined)} ratio={fmt(rep.ratio)}",
            f"passed={str(rep.passed).lower()} worst=" + json.dumps(_jsonable(rep.worst), sort_keys=True),
        ]
        write_table(out / fname, list(rep.columns) + ["lhs", "rhs", "ratio"], rep.table, head)
        paths.append(out / fname)
        summary.append([rep.name, rep.samples, rep.constant, rep.refined, rep.ratio, int(rep.passed), fname])
    _write_text_table(out / "summary.csv", ["name", "samples", "constant", "refined", "ratio", "passed", "file"], summary)
    _write_text_table(
        out / "identities.csv",
        ["name", "residual", "scale", "tol", "passed"],
        [[r.name, r.residual, r.scale, r.tol, int(r.passed)] for r in result.identities],
    )
    _write_text_table(
        out / "windows.csv",
        ["name", "value", "lo", "hi", "passed"],
        [[w.name, w.value, w.lo, w.hi, int(w.passed)] for w in result.windows],
    )
    paths += [out / "summary.csv", out / "identities.csv", out / "windows.csv"]
    manifest = {
        "command": "verify",
        "suite": result.suite,
        "version": __version__,
        "config": _jsonable(_config(config)),
        "strict": bool(strict),
        "passed": result.passed(strict),
        "hard_passed": result.hard_passed,
        "counts": {
            "identities": len(result.identities),
            "reports": len(result.reports),
            "windows": len(result.windows),
            "identity_failures": sum(not r.passed for r in result.identities),
            "report_failures": sum(not r.passed for r in result.reports),
            "window_failures": sum(not w.passed for w in result.windows),
        },
        "failures": [x.name for x in result.identities + result.reports + result.windows if not x.passed],
    }
    mp = out / "manifest.json"
    mp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    paths.append(mp)
    return paths


def _write_text_table(path, columns, rows):
    """CSV with quoted names (report names contain commas)."""
    lines = ["# " + ",".join(columns)]
    for row in rows:
        cells = [json.dumps(v) if isinstance(v, str) else fmt(v) for v in row]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


__all__ = [
    "CAMPANATO_WINDOW",
    "ConfigError",
    "SPREAD_LIMIT",
    "SUITES",
    "SuiteResult",
    "WindowCheck",
    "decomposition_checks",
    "export_result",
    "run_suite",
]
