"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from copolar import (
    DualGenerators,
    ExponentSet,
    GridBox,
    NotCobounded,
    canonicalize,
    copolar_combination,
    copolar_of_body,
    copolar_of_dual,
    covolume,
    extremal_convex_image,
    extremal_gap,
    geodesic_convex_image,
    legendre_duality_residual,
    minkowski_combination,
    multiplicative_combination,
    newton_number,
    newton_polyhedron,
    reinhardt_volume,
    vertex_enumeration,
)
from copolar import exact
from copolar.transforms import capacity, grid_tolerance
from copolar.verify import VerifyConfig, verify_suite

POLYDISK = DualGenerators(2, [[-1.0, -1.0]])
_suite_reports = {}


@pytest.fixture
def criterion(capsys):
    def report(number, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return report


def suite(n):
    if n not in _suite_reports:
        start = time.perf_counter()
        report = verify_suite(VerifyConfig(dim=n, count=500, seed=42, volumes=False))
        _suite_reports[n] = (report, time.perf_counter() - start)
    return _suite_reports[n]


def test_criterion_1_worked_example(criterion):
    start = time.perf_counter()
    P0 = canonicalize(2, [[1 / 3, 1]])
    P1 = canonicalize(2, [[1, 1 / 3]])
    Pc = copolar_combination(P0, P1, 0.5)
    Pm = minkowski_combination(P0, P1, 0.5)
    cc, cm, c0, c1 = covolume(Pc), covolume(Pm), covolume(P0), covolume(P1)
    Vm = vertex_enumeration(Pm).vertices
    exact_cc = exact.covolume(exact.copolar_combination([("1/3", 1)], [(1, "1/3")], "1/2"))
    elapsed = time.perf_counter() - start
    checks = {
        "normal (2/3,2/3)": Pc.m == 1 and np.allclose(Pc.normals, [[2 / 3, 2 / 3]], atol=1e-12, rtol=0),
        "Covol copolar 9/8": abs(cc - 9 / 8) <= 1e-12,
        "exact 9/8": exact_cc == exact.rational("9/8"),
        "Minkowski vertices": Vm.shape == (3, 2)
        and np.allclose(Vm, [[0, 2], [0.5, 0.5], [2, 0]], atol=1e-12, rtol=0),
        "Covol Minkowski 1": abs(cm - 1.0) <= 1e-12,
        "Covol endpoints 3/2": abs(c0 - 1.5) <= 1e-12 and abs(c1 - 1.5) <= 1e-12,
        "CoBM slack 3/8": abs((0.5 * c0 + 0.5 * c1 - cc) - 3 / 8) <= 1e-12,
        "rBM bound": math.sqrt(cm) <= 0.5 * math.sqrt(c0) + 0.5 * math.sqrt(c1),
        "runtime < 1 s": elapsed < 1.0,
    }
    bad = [k for k, ok in checks.items() if not ok]
    criterion(1, not bad, f"Covol(P+)={cc!r}, Covol(P1/2)={cm!r}, {elapsed:.3f}s; failed: {bad}")


@pytest.mark.slow
def test_criterion_2_random_inequalities(criterion):
    details, ok = [], True
    total = 0.0
    for n in (2, 3):
        report, elapsed = suite(n)
        s = report["summary"]
        total += elapsed
        viol = [
            f
            for r in report["instances"]
            for f in r.get("failures", [])
            if f.startswith(("CoBM", "rBM"))
        ]
        errors = s["errors"]
        strict = s["min_strict_slack_cobm"]
        ok &= not viol and errors == 0 and strict > 1e-10 and s["min_slack_rbm"] >= -1e-9
        details.append(f"n={n}: {len(viol)} CoBM/rBM violations, {errors} errors, "
                       f"min strict slack {strict:.3g}")
    ok &= total < 60.0
    criterion(2, ok, "; ".join(details) + f"; {total:.1f}s single-threaded")


def test_criterion_3_involution_scaling(criterion):
    rng = np.random.default_rng(42)
    worst_inv, worst_scale, count = 0.0, 0.0, 0
    for n in (2, 3, 4):
        for _ in range(500):
            k = int(rng.integers(1, 5))
            P = canonicalize(n, rng.uniform(0.2, 5.0, size=(k, n)))
            Q = copolar_of_dual(copolar_of_body(P))
            if Q.normals.shape != P.normals.shape:
                worst_inv = math.inf
            else:
                worst_inv = max(worst_inv, float(np.max(np.abs(Q.normals - P.normals))))
            c = covolume(P)
            for lam in (0.5, 2.0):
                worst_scale = max(worst_scale, abs(covolume(P.scaled(lam)) - lam**n * c) / (lam**n * c))
            count += 1
    ok = worst_inv <= 1e-9 and worst_scale <= 1e-9
    criterion(3, ok, f"{count} bodies, max involution error {worst_inv:.2e}, "
                     f"max relative scaling error {worst_scale:.2e}")


@pytest.mark.slow
def test_criterion_4_covolume_oracles(criterion):
    report, _ = suite(2)
    exact_err = report["summary"]["max_exact_covolume_error"]
    rng = np.random.default_rng(4242)
    N, chunk = 10**7, 10**6
    worst_z = 0.0
    for _ in range(20):
        k = int(rng.integers(1, 5))
        P = canonicalize(3, rng.uniform(0.2, 5.0, size=(k, 3)))
        M = float(np.max(1.0 / P.normals))
        hits = 0
        for _ in range(N // chunk):
            pts = rng.uniform(0.0, M, size=(chunk, 3))
            hits += int(np.count_nonzero(np.any(pts @ P.normals.T < 1.0, axis=1)))
        p = hits / N
        est = M**3 * p
        se = M**3 * math.sqrt(p * (1 - p) / N)
        worst_z = max(worst_z, abs(covolume(P) - est) / se)
    ok = exact_err <= 1e-12 and worst_z <= 3.0
    criterion(4, ok, f"n=2 max exact error {exact_err:.2e} over 500 pairs; "
                     f"n=3 Monte Carlo worst |z| = {worst_z:.2f} over 20 instances")


def test_criterion_5_newton_numbers(criterion):
    cases = [
        ([(2, 0), (0, 3)], 6),
        ([(1, 0), (0, 1)], 1),
        ([(2, 0), (0, 2), (5, 5)], 4),
        ([(3, 0, 0), (0, 3, 0), (0, 0, 3)], 27),
    ]
    results, ok = [], True
    for exps, expected in cases:
        N = newton_number(ExponentSet.of(exps))
        good = abs(N.value - expected) <= 1e-9 and N.integer == expected
        ok &= good
        results.append(f"{N.value:g}")
    try:
        newton_polyhedron(ExponentSet.of([(2, 2)]))
        raised = False
    except NotCobounded:
        raised = True
    ok &= raised
    criterion(5, ok, f"numbers {results} (expected 6, 1, 4, 27); (2,2) NotCobounded: {raised}")


def test_criterion_6_legendre_residual(criterion):
    L0 = DualGenerators(2, [[-1 / 3, -1.0]])
    tgt = GridBox.cube(0.0, 3.0, 256, 2)
    parts, ok = [], True
    for name, L in (("polydisk", POLYDISK), ("L0", L0)):
        r256 = legendre_duality_residual(L, GridBox.cube(-8.0, 0.0, 256, 2), tgt)
        r128 = legendre_duality_residual(L, GridBox.cube(-8.0, 0.0, 128, 2), tgt)
        ok &= r256 <= 0.05 and r256 <= 0.6 * r128
        parts.append(f"{name}: r256={r256:.4f}, r128={r128:.4f}, ratio {r256 / r128:.3f}")
    criterion(6, ok, "; ".join(parts))


def test_criterion_7_geodesic_properties(criterion):
    L0 = DualGenerators(2, [[-1 / 3, -1.0]])
    L1 = DualGenerators(2, [[-1.0, -1 / 3]])
    box = GridBox.cube(-6.0, 0.0, 128, 2)
    eps_g = grid_tolerance(box, L0, L1)
    ts = (0.0, 0.25, 0.5, 0.75, 1.0)
    U = {t: geodesic_convex_image(L0, L1, t, box).values for t in ts}
    in_range = all(u.min() >= -1 - 1e-12 and u.max() <= 1e-12 for u in U.values())
    # midpoint convexity in t over the three interior triples
    defect = max(
        float(np.max(U[b] - 0.5 * (U[a] + U[c])))
        for a, b, c in ((0.0, 0.25, 0.5), (0.25, 0.5, 0.75), (0.5, 0.75, 1.0), (0.0, 0.5, 1.0))
    )
    u0 = extremal_convex_image(L0, box).values
    dists = [float(np.max(np.abs(geodesic_convex_image(L0, L1, 2.0**-k, box).values - u0)))
             for k in range(1, 7)]
    monotone = all(b <= a for a, b in zip(dists, dists[1:]))
    caps = (capacity(L0), capacity(L1), capacity(multiplicative_combination(L0, L1, 0.5)))
    P0, P1 = copolar_of_dual(L0), copolar_of_dual(L1)
    via_covol = (2 * covolume(P0), 2 * covolume(P1), 2 * covolume(copolar_combination(P0, P1, 0.5)))
    caps_ok = np.allclose(caps, (3, 3, 9 / 4), atol=1e-12, rtol=0) and np.allclose(caps, via_covol, atol=1e-12)
    ok = in_range and defect <= eps_g and monotone and caps_ok
    criterion(7, ok, f"range ok {in_range}; t-convexity defect {defect:.2e} (eps_g {eps_g:.3f}); "
                     f"sup|u_t-u_0| along 2^-k: {[round(d, 4) for d in dists]}; capacities {caps}")


def test_criterion_8_non_extremal_geodesic(criterion):
    L0 = DualGenerators(2, [[-1 / 3, -1.0]])
    L1 = DualGenerators(2, [[-1.0, -1 / 3]])
    box = GridBox.cube(-6.0, 0.0, 128, 2)
    eps_g = grid_tolerance(box, L0, L1)
    gap = extremal_gap(L0, L1, 0.5, box)
    eps_same = grid_tolerance(box, L0)
    same = extremal_gap(L0, L0, 0.5, box)
    ok = gap > 10 * eps_g and same <= 3 * eps_same
    criterion(8, ok, f"gap(cosimplex pair) = {gap:.4f} vs 10*eps_g = {10 * eps_g:.4f}; "
                     f"gap(K0=K1) = {same:.2e} vs 3*eps_g = {3 * eps_same:.4f}")


def test_criterion_9_log_concavity(criterion):
    L0 = DualGenerators(2, [[-1 / 3, -1.0]])
    L1 = DualGenerators(2, [[-1.0, -1 / 3]])
    Lh = multiplicative_combination(L0, L1, 0.5)
    v0, v1, vh = (reinhardt_volume(L, S=8, m=256).value for L in (L0, L1, Lh))
    bound = math.sqrt(v0 * v1) * (1 - 1e-3)
    poly = reinhardt_volume(POLYDISK, S=8, m=256).value
    ref = math.pi**2 * math.exp(-4)
    rel = abs(poly - ref) / ref
    ok = vh >= bound and rel <= 1e-3
    criterion(9, ok, f"Vol(K_1/2) = {vh:.5f} >= {bound:.5f}; polydisk relative error {rel:.2e}")
