"""Acceptance suite: one test and one PASS/FAIL line per criterion.

Run ``python tests/test_acceptance.py`` for the lines alone; under pytest
they are also collected into the terminal summary.
"""

import cmath
import json
import math
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

from ngent import closed_form as cf
from ngent import survey, witnesses
from ngent.fock_core import (
    OMEGA,
    apply_create_a,
    apply_create_b,
    covariance_matrix,
    inner_product,
    moment,
    moment_table,
)
from ngent.states import BSN, TMSN, build_bsn, build_state, build_tmsn

RESULTS = []

XI_GRID = (0.3, 0.5 * cmath.exp(1j * math.pi / 3), 0.7)
R_GRID = (0.5, 1.0, 2 * cmath.exp(1j * math.pi / 4))


def verdict(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def _grid_specs():
    for xi in XI_GRID:
        for M in range(4):
            for N in range(4):
                yield TMSN(M, N, xi)
    for r in R_GRID:
        for n in range(5):
            for m in range(5):
                yield BSN(n, m, r)


def test_criterion_01_covariance_oracle():
    t0 = time.perf_counter()
    worst = {"tmsn": 0.0, "bsn": 0.0}
    for spec in _grid_specs():
        numeric = covariance_matrix(build_state(spec)).gamma
        closed = cf.analytic_moments(spec).covariance.gamma
        worst[spec.kind] = max(worst[spec.kind], float(np.max(np.abs(numeric - closed))))
    elapsed = time.perf_counter() - t0
    ok = worst["tmsn"] <= 1e-8 and worst["bsn"] <= 1e-10 and elapsed < 10
    verdict(1, "covariance oracle equivalence", ok,
            f"max dev tmsn {worst['tmsn']:.1e}, bsn {worst['bsn']:.1e}, {elapsed:.2f}s")


def test_criterion_02_simon_D():
    worst = 0.0
    for spec in _grid_specs():
        D_num = witnesses.simon_quantity(covariance_matrix(build_state(spec)))
        D_cf = cf.analytic_moments(spec).simon_D
        worst = max(worst, abs(D_num - D_cf) / max(1.0, abs(D_cf)))
    # independent reading of the detectability condition: (M - t)(N - t) < s
    mismatched = []
    for xi in (0.3, 0.5, 0.7, 0.9):
        x2 = xi * xi
        t, s = x2 / (1 - x2), x2 / (1 - x2) ** 2
        for M in range(11):
            for N in range(11):
                D = cf.tmsn_simon_D(M, N, xi)
                if (D < 0) != cf.tmsn_detectable(M, N, xi):
                    mismatched.append((xi, M, N))
                # exact boundary cells (D == 0) are not detectable
                if abs((M - t) * (N - t) - s) > 1e-9 and (D < 0) != ((M - t) * (N - t) < s):
                    mismatched.append((xi, M, N, "arith"))
    verdict(2, "Simon D equivalence and sign", worst <= 1e-6 and not mismatched,
            f"max rel dev {worst:.1e}, sign mismatches {len(mismatched)}")


def test_criterion_03_bsn_never_simon_detected():
    rng = np.random.default_rng(3)
    rs = [cmath.rect(m, p) for m, p in zip(np.exp(rng.uniform(-2, 2, 20)), rng.uniform(-np.pi, np.pi, 20))]
    lowest = math.inf
    for r in rs:
        for n in range(21):
            for m in range(21):
                lowest = min(lowest, witnesses.simon_quantity(covariance_matrix(build_bsn(BSN(n, m, r)))))
    verdict(3, "BS number states never Simon-detected", lowest >= -1e-9, f"min D {lowest:.3e}")


def test_criterion_04_detectability_grid():
    grid = survey.tmsn_region(0.7, 10, 10)
    arr = grid.as_array()
    t, s = 0.49 / 0.51, 0.49 / 0.51**2
    expected = np.array([[(M - t) * (N - t) < s for N in range(11)] for M in range(11)])
    ok = (
        arr[0, :].all() and arr[:, 0].all() and arr[2, 2] and not arr[3, 3]
        and np.array_equal(arr, expected) and abs(t - 0.9608) < 1e-4 and abs(s - 1.8839) < 1e-4
    )
    verdict(4, "detectability grid at xi = 0.7", ok, f"{int(arr.sum())}/121 detectable")


def test_criterion_05_hz_region():
    axes = np.zeros((11, 11), dtype=bool)
    axes[1:, 0] = axes[0, 1:] = True
    ok, findings = True, []
    for r in (0.5, 1.0, 2.0):
        arr = survey.bsn_hz_region(r, 10, 10).as_array()
        ok &= np.array_equal(arr, axes)
        brute = survey.hz_brute_force_region(r, 10, 10)
        if not np.array_equal(brute, arr):
            findings.append(f"r={r}: {int((brute != arr).sum())} cells differ from brute force")
    verdict(5, "HZ region is the axes minus the origin", bool(ok),
            "; ".join(findings) or "brute-force moments agree on every cell")


def test_criterion_06_tmsn_sun_B():
    ops = witnesses.algebra_operators()
    ok, worst_var, worst_kx = True, 0.0, 0.0
    for xi in (0.3, 0.7):
        for M in range(4):
            for N in range(4):
                table = witnesses.witness_table(build_tmsn(TMSN(M, N, xi))).completed()
                var_jz = witnesses.variance(ops.J_z, table)
                kx = ops.K_x.expectation(table)
                expected = 2 * xi * (M + N + 1) / (2 * (1 - xi * xi))
                worst_var = max(worst_var, var_jz)
                worst_kx = max(worst_kx, abs(kx - expected))
                ok &= witnesses.sun_condition_B(table).entangled
    ok &= worst_var < 1e-10 and worst_kx <= 1e-8
    verdict(6, "sun-B detects every TMSN with real xi", bool(ok),
            f"max Var J_z {worst_var:.1e}, max K_x dev {worst_kx:.1e}")


def test_criterion_07_bsn_detection_split():
    ops = witnesses.algebra_operators()
    ok = True
    for n in range(5):
        for m in range(5):
            if n != m:
                ok &= witnesses.sun_condition_A(witnesses.witness_table(build_bsn(BSN(n, m, 1.0)))).entangled
    worst = 0.0
    for n in range(1, 5):
        table = witnesses.witness_table(build_bsn(BSN(n, n, 1.0)))
        ok &= witnesses.sun_condition_fourth(table).entangled
        lx = ops.L_x_tilde.expectation(table.completed())
        worst = max(worst, abs(lx - cf.bsn_Lx(n, n, 1.0)))
    blind = 0.0
    for m, n in ((0, 1), (1, 5)):
        for spec in (BSN(n, m, 1.0), BSN(m, n, 1.0)):
            table = witnesses.witness_table(build_bsn(spec)).completed()
            blind = max(blind, abs(ops.L_x_tilde.expectation(table)))
    ok &= worst <= 1e-9 and blind <= 1e-10
    verdict(7, "BSN detection split between sun-A and sun-fourth", bool(ok),
            f"L_x dev {worst:.1e}, blind-pair |L_x| {blind:.1e}")


def test_criterion_08_blind_pairs():
    t0 = time.perf_counter()
    pairs = survey.enumerate_blind_pairs(10**6)
    exhaustive = survey.exhaustive_blind_pairs(10**5)
    elapsed = time.perf_counter() - t0
    prefix = [(0, 1), (1, 5), (5, 20), (20, 76), (76, 285), (285, 1065), (1065, 3976), (3976, 14840)]
    comps = survey.compare_with_listing(pairs)
    flagged = [c for c in comps if not c.matches]
    ok = (
        len(pairs) == 11
        and [tuple(p) for p in pairs[:8]] == prefix
        and tuple(pairs[8]) == (14840, 55385)
        and [(c.index, c.listed) for c in flagged] == [(8, (4840, 55385))]
        and exhaustive == [p for p in pairs if p.n <= 10**5]
        and elapsed < 5
    )
    verdict(8, "blind-pair enumeration", ok, f"{len(pairs)} pairs, 9th {tuple(pairs[8])}, {elapsed:.2f}s")


def _random_specs(rng, count):
    for idx in range(count):
        if idx % 2:
            yield TMSN(int(rng.integers(0, 4)), int(rng.integers(0, 4)), cmath.rect(rng.uniform(0, 0.8), rng.uniform(-np.pi, np.pi)))
        else:
            yield BSN(int(rng.integers(0, 7)), int(rng.integers(0, 7)), cmath.rect(np.exp(rng.uniform(-1.5, 1.5)), rng.uniform(-np.pi, np.pi)))


def test_criterion_09_physicality():
    rng = np.random.default_rng(20121030)
    failures = []
    for spec in _random_specs(rng, 100):
        state = build_state(spec, headroom=1)
        budget = 10 * state.tail_bound + 1e-12
        if abs(inner_product(state, state).real - 1) > budget:
            failures.append((spec, "norm"))
        table = moment_table(state, max_order=4)
        if table.conjugation_defect() > 1e-12:
            failures.append((spec, "conjugation"))
        # <a a+> - <a+ a> = 1 with a+ applied explicitly on the headroom row
        comm_a = apply_create_a(state).norm_sq - moment(state, (1, 1, 0, 0)).real
        comm_b = apply_create_b(state).norm_sq - moment(state, (0, 0, 1, 1)).real
        if abs(comm_a - 1) > 1e-9 or abs(comm_b - 1) > 1e-9:
            failures.append((spec, "commutator"))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            gamma = covariance_matrix(state).gamma
        if np.linalg.eigvalsh(gamma + 1j * OMEGA).min() < -1e-9:
            failures.append((spec, "gamma + i Omega"))
        rel = witnesses.uncertainty_relations(witnesses.witness_table(state))
        if any(lhs < rhs - 1e-9 for lhs, rhs in rel.values()):
            failures.append((spec, "uncertainty"))
    verdict(9, "physicality of 100 random family members", not failures, f"{len(failures)} failures")


def test_criterion_10_determinism(tmp_path):
    runs = [
        (["state", "tmsn", "--M", "2", "--N", "1"], {"xi": "0.7"}),
        (["state", "bsn", "--n", "2", "--m", "1"], {"r": "1"}),
        (["witness", "bsn", "--n", "3", "--m", "1"], {"r": "0.5+0.5i", "format": "json"}),
        (["sweep", "tmsn-region"], {"xi": "0.7", "max": 6, "confirm": 3, "seed": 5}),
        (["sweep", "hz-region"], {"r": "2", "max": 6, "confirm": 3, "seed": 5}),
        (["blind"], {"limit": 100000}),
    ]
    differing = []
    for idx, (cmd, config) in enumerate(runs):
        cfg = tmp_path / f"config-{idx}.json"
        cfg.write_text(json.dumps(config))
        blobs = []
        for run in range(2):
            out = tmp_path / f"{idx}-{run}.dat"
            subprocess.run(
                [sys.executable, "-m", "ngent", *cmd, "--config", str(cfg), "--out", str(out)],
                check=True, capture_output=True,
            )
            blobs.append(out.read_bytes())
        if blobs[0] != blobs[1] or not blobs[0]:
            differing.append(" ".join(cmd))
    verdict(10, "byte-identical CLI output", not differing, f"{len(runs)} commands, {len(differing)} differ")

if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
