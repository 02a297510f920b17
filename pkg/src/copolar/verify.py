"""Randomized verification of the covolume inequalities.

For every seeded random pair of bodies and every ``t`` the harness checks

* convexity of covolumes along copolar combinations,
* the reversed Brunn-Minkowski inequality along Minkowski combinations,
* convexity of capacities along multiplicative combinations (and that the
  capacity path agrees with ``n!`` times the copolar covolume),
* log-concavity of Reinhardt volumes along multiplicative combinations,

plus involution, scaling and antitonicity spot checks.  The report is a pure
function of the configuration.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact
from .geometry import (
    CopolarBody,
    canonicalize,
    copolar_combination,
    copolar_of_body,
    copolar_of_dual,
    covolume,
    minkowski_combination,
    multiplicative_combination,
)
from .tolerance import EPS_P, EPS_R
from .transforms import capacity, reinhardt_volume


@dataclass
class VerifyConfig:
    dim: int = 2
    count: int = 500
    seed: int = 42
    t_grid: tuple = (0.25, 0.5, 0.75)
    normal_count: tuple = (1, 4)
    coord_range: tuple = (0.2, 5.0)
    eps_p: float = EPS_P
    strict_margin: float = 1e-10
    ce_tolerance: float = 1e-8
    volumes: bool = True
    spot_checks: bool = True
    exact_2d: bool = True
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        self.t_grid = tuple(float(t) for t in self.t_grid)
        self.normal_count = tuple(int(k) for k in self.normal_count)
        self.coord_range = tuple(float(x) for x in self.coord_range)
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if any(not 0.0 < t < 1.0 for t in self.t_grid):
            raise ValueError("t values must lie in (0, 1)")

    @classmethod
    def from_dict(cls, data: dict) -> VerifyConfig:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        cfg = cls(**data)
        if "COPOLAR_SEED" in os.environ:
            cfg.seed = int(os.environ["COPOLAR_SEED"])
        return cfg


def random_body(rng: np.random.Generator, cfg: VerifyConfig) -> CopolarBody:
    lo, hi = cfg.normal_count
    k = int(rng.integers(lo, hi + 1))
    normals = rng.uniform(cfg.coord_range[0], cfg.coord_range[1], size=(k, cfg.dim))
    return canonicalize(cfg.dim, normals)


def _exact_covolume(P: CopolarBody) -> Fraction:
    return exact.covolume([tuple(Fraction(float(x)) for x in row) for row in P.normals])


def _log_volume(L, S) -> float:
    return math.log(reinhardt_volume(L, S=S, method="simplex").value)


def check_pair(P0: CopolarBody, P1: CopolarBody, cfg: VerifyConfig) -> dict:
    """All inequality checks for one pair; the record is JSON-serializable."""
    n = P0.dim
    fact = math.factorial(n)
    eps = cfg.eps_p
    equal = P0.allclose(P1, eps)
    c0, c1 = covolume(P0), covolume(P1)
    L0, L1 = copolar_of_body(P0), copolar_of_body(P1)
    cap0, cap1 = capacity(L0), capacity(L1)
    rec = {
        "P0": P0.normals.tolist(),
        "P1": P1.normals.tolist(),
        "equal": equal,
        "covol0": c0,
        "covol1": c1,
        "cap0": cap0,
        "cap1": cap1,
    }
    failures = []
    if cfg.volumes:
        S = float(max(np.abs(L0.generators).max(), np.abs(L1.generators).max())) + 12.0
        lv0, lv1 = _log_volume(L0, S), _log_volume(L1, S)
        rec["log_vol0"], rec["log_vol1"] = lv0, lv1

    exact_err = 0.0
    if cfg.exact_2d and n == 2:
        exact_err = max(abs(c0 - float(_exact_covolume(P0))), abs(c1 - float(_exact_covolume(P1))))

    checks = []
    for t in cfg.t_grid:
        Pc = copolar_combination(P0, P1, t)
        Pm = minkowski_combination(P0, P1, t)
        cc, cm = covolume(Pc), covolume(Pm)
        bound = (1 - t) * c0 + t * c1
        slack_cobm = bound - cc
        slack_rbm = (1 - t) * c0 ** (1 / n) + t * c1 ** (1 / n) - cm ** (1 / n)
        Lt = multiplicative_combination(L0, L1, t)
        cap_t = capacity(Lt)
        slack_capin = (1 - t) * cap0 + t * cap1 - cap_t
        path_err = abs(cap_t - fact * cc)
        item = {
            "t": t,
            "covol_copolar": cc,
            "covol_minkowski": cm,
            "slack_cobm": slack_cobm,
            "slack_rbm": slack_rbm,
            "root_slack_copolar": (1 - t) * c0 ** (1 / n) + t * c1 ** (1 / n) - cc ** (1 / n),
            "cap_t": cap_t,
            "slack_capin": slack_capin,
            "capacity_path_error": path_err,
        }
        tol = eps * (1.0 + bound)
        if slack_cobm < -tol:
            failures.append(f"CoBM t={t}")
        if not equal and slack_cobm <= cfg.strict_margin:
            failures.append(f"CoBM strictness t={t}")
        if slack_rbm < -eps * (1.0 + c0 ** (1 / n) + c1 ** (1 / n)):
            failures.append(f"rBM t={t}")
        if slack_capin < -fact * tol:
            failures.append(f"capin t={t}")
        if path_err > fact * tol:
            failures.append(f"capacity path t={t}")
        if cfg.volumes:
            slack_ce = _log_volume(Lt, S) - ((1 - t) * lv0 + t * lv1)
            item["slack_ce_log"] = slack_ce
            if slack_ce < -cfg.ce_tolerance:
                failures.append(f"CE t={t}")
        if cfg.exact_2d and n == 2:
            exact_err = max(
                exact_err,
                abs(cc - float(_exact_covolume(Pc))),
                abs(cm - float(_exact_covolume(Pm))),
            )
        checks.append(item)
    rec["checks"] = checks
    if cfg.exact_2d and n == 2:
        rec["exact_covolume_error"] = exact_err
        if exact_err > EPS_R:
            failures.append("exact covolume agreement")
    rec["failures"] = failures
    rec["pass"] = not failures
    return rec


def spot_checks(P: CopolarBody, rng: np.random.Generator, cfg: VerifyConfig) -> dict:
    eps = cfg.eps_p
    involution = copolar_of_dual(copolar_of_body(P)).allclose(P, eps)
    c = covolume(P)
    scaling = max(
        abs(covolume(P.scaled(lam)) - lam**P.dim * c) / max(lam**P.dim * c, 1e-300)
        for lam in (0.5, 2.0)
    )
    # Q ⊆ P by an extra constraint, so P° must lie in the complete hull of Q°
    extra = rng.uniform(cfg.coord_range[0], cfg.coord_range[1], size=(1, P.dim))
    Q = canonicalize(P.dim, np.vstack([P.normals, extra]))
    antitone = bool(np.all(copolar_of_body(Q).contains(copolar_of_body(P).generators, eps)))
    return {
        "involution": involution,
        "scaling_rel_error": scaling,
        "antitonicity": antitone,
        "pass": involution and scaling <= eps and antitone,
    }


def worked_example() -> dict:
    """The planar example with two cosimplices, checked against exact values."""
    P0 = canonicalize(2, [[1 / 3, 1.0]])
    P1 = canonicalize(2, [[1.0, 1 / 3]])
    Pc = copolar_combination(P0, P1, 0.5)
    Pm = minkowski_combination(P0, P1, 0.5)
    c0, cc, cm = covolume(P0), covolume(Pc), covolume(Pm)
    exact_cop = exact.covolume(exact.copolar_combination([("1/3", 1)], [(1, "1/3")], "1/2"))
    rec = {
        "copolar_normals": Pc.normals.tolist(),
        "covol_P0": c0,
        "covol_P1": covolume(P1),
        "covol_copolar": cc,
        "covol_copolar_exact": str(exact_cop),
        "covol_minkowski": cm,
        "slack_cobm": c0 - cc,
    }
    rec["pass"] = (
        abs(cc - 9 / 8) <= EPS_R
        and abs(cm - 1.0) <= EPS_R
        and abs(c0 - 1.5) <= EPS_R
        and exact_cop == Fraction(9, 8)
        and abs(rec["slack_cobm"] - 3 / 8) <= EPS_R
    )
    return rec


def _instance(index: int, cfg: VerifyConfig) -> dict:
    rng = np.random.default_rng([cfg.seed, index])
    rec = {"index": index}
    try:
        P0 = random_body(rng, cfg)
        P1 = random_body(rng, cfg)
        rec.update(check_pair(P0, P1, cfg))
        if cfg.spot_checks:
            rec["spot"] = spot_checks(P0, rng, cfg)
            rec["pass"] = rec["pass"] and rec["spot"]["pass"]
    except Exception as exc:  # recorded as an instance failure
        rec["error"] = f"{type(exc).__name__}: {exc}"
        rec["pass"] = False
    return rec


def verify_suite(cfg: VerifyConfig) -> dict:
    start = time.perf_counter()
    indices = range(cfg.count)
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            instances = list(pool.map(lambda i: _instance(i, cfg), indices))
    else:
        instances = [_instance(i, cfg) for i in indices]
    example = worked_example() if cfg.dim == 2 else None

    def slacks(key, only_distinct=False):
        return [
            c[key]
            for r in instances
            if "checks" in r and not (only_distinct and r["equal"])
            for c in r["checks"]
        ]

    cobm = slacks("slack_cobm")
    strict = slacks("slack_cobm", only_distinct=True)
    summary = {
        "instances": len(instances),
        "violations": sum(not r["pass"] for r in instances) + (0 if example is None or example["pass"] else 1),
        "errors": sum("error" in r for r in instances),
        "equal_pairs": sum(bool(r.get("equal")) for r in instances),
        "min_slack_cobm": min(cobm) if cobm else None,
        "min_strict_slack_cobm": min(strict) if strict else None,
        "min_slack_rbm": min(slacks("slack_rbm")) if cobm else None,
        "min_slack_capin": min(slacks("slack_capin")) if cobm else None,
        "min_root_slack_copolar": min(slacks("root_slack_copolar")) if cobm else None,
    }
    if cfg.volumes and cobm:
        summary["min_slack_ce_log"] = min(slacks("slack_ce_log"))
    if cfg.dim == 2 and cfg.exact_2d:
        errs = [r["exact_covolume_error"] for r in instances if "exact_covolume_error" in r]
        summary["max_exact_covolume_error"] = max(errs) if errs else None
    if cfg.timing:
        summary["runtime_seconds"] = time.perf_counter() - start
    report = {"config": dataclasses.asdict(cfg), "summary": summary}
    if example is not None:
        report["worked_example"] = example
    report["instances"] = instances
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=1, ensure_ascii=False)
