"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Statistical criteria use 4-sigma windows with fixed seeds.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from epower import (
    GateMatrix,
    MomentSpec,
    RngSeed,
    SubsystemDims,
    canonical_bipartitions,
    choi_state,
    epower_batch,
    epower_bipartition,
    epower_bipartition_indexform,
    epower_gn_closed,
    epower_one_tangle,
    g_n,
    gn_coefficient,
    haar_orthogonals,
    haar_unitaries,
    is_ame,
    max_tau_one,
    maximize_diagonal_epower,
    mc_entangling_power,
    mean_orthogonal,
    mean_qudit_orthogonal,
    mean_qudit_unitary,
    mean_unitary,
    orthogonal_fourth_moment,
    random_diagonal_phases,
    unitary_second_moment,
    upper_bound_one_tangle,
    upper_bound_qudit,
)
from epower.cli import permutation_census
from epower.gates import deutsch, diagonal_mean, fredkin, h_u8, toffoli

QUBIT3 = SubsystemDims((2, 2, 2))

# (162 * eps_1, class size) for the 40320 three-qubit permutation gates.
PERMUTATION_CLASSES = (
    (0, 48), (48, 288), (60, 864), (64, 288), (72, 192), (79, 2304),
    (80, 1440), (84, 1728), (87, 1536), (88, 2304), (92, 4608), (95, 3456),
    (96, 4896), (99, 2304), (100, 2880), (104, 3456), (107, 2304),
    (108, 3744), (111, 384), (112, 1152), (128, 144),
)

_census_cache = {}


def census():
    if "table" not in _census_cache:
        start = time.perf_counter()
        _census_cache["table"] = permutation_census()
        _census_cache["elapsed"] = time.perf_counter() - start
    return _census_cache["table"], _census_cache["elapsed"]


def report(num: int, description: str, ok: bool) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:02d} {status} - {description}", flush=True)
    assert ok, f"criterion {num}: {description}"


def test_criterion_01_named_gate_values():
    start = time.perf_counter()
    ok = abs(epower_one_tangle(fredkin()).total - 10 / 27) <= 1e-10
    ok &= abs(epower_one_tangle(toffoli()).total - 10 / 27) <= 1e-10
    for theta in np.linspace(0.0, np.pi, 10):
        expected = (7 - 3 * np.cos(2 * theta)) / 27
        ok &= abs(epower_one_tangle(deutsch(theta)).total - expected) <= 1e-10
    elapsed = time.perf_counter() - start
    ok &= elapsed < 1.0
    report(1, f"Fredkin/Toffoli 10/27, Deutsch family on 10 angles ({elapsed:.3f}s)", ok)


def test_criterion_02_table1_means_and_maxima():
    table, elapsed = census()
    ok = diagonal_mean() == Fraction(10, 27)
    ok &= table.mean() == Fraction(184, 315)
    ok &= mean_orthogonal(QUBIT3) == Fraction(208, 315)
    ok &= mean_unitary(QUBIT3) == Fraction(2, 3)
    opt = maximize_diagonal_epower(grid=64, seed=0)
    ok &= opt.converged and abs(opt.value - 16 / 27) <= 1e-8
    max_key = max(k for k, _ in table.rows)
    ok &= Fraction(max_key, 162) == Fraction(64, 81)
    ok &= upper_bound_one_tangle(QUBIT3) == Fraction(8, 9)  # max over U(8), attained
    ok &= abs(epower_one_tangle(h_u8()).total - 8 / 9) <= 1e-10
    ok &= np.abs(h_u8().matrix.imag).max() == 0.0  # orthogonal maximizer -> O(8) max = 8/9
    ok &= elapsed < 60.0
    report(2, f"ensemble means and maxima of the summary table (sweep {elapsed:.1f}s)", ok)


def test_criterion_03_permutation_class_table():
    table, _ = census()
    ok = table.rows == PERMUTATION_CLASSES
    ok &= len(table.rows) == 21
    ok &= sum(c for _, c in table.rows) == 40320
    report(3, "21 permutation classes with exact (162*eps, count) pairs", ok)


def test_criterion_04_oracle_equivalence():
    start = time.perf_counter()
    cases = []
    for k, mat in enumerate(haar_unitaries(8, 20, RngSeed(40, 0))):
        cases.append((GateMatrix(mat, QUBIT3), RngSeed(41, k)))
    for k, mat in enumerate(haar_unitaries(6, 10, RngSeed(42, 0))):
        cases.append((GateMatrix(mat, (2, 3)), RngSeed(43, k)))
    for k, mat in enumerate(haar_unitaries(12, 10, RngSeed(44, 0))):
        cases.append((GateMatrix(mat, (2, 2, 3)), RngSeed(45, k)))
    ok = True
    worst = 0.0
    for gate, seed in cases:
        closed = epower_one_tangle(gate).total
        est = mc_entangling_power(gate, 20000, seed)
        ok &= est.std_error < 0.01
        dev = abs(closed - est.estimate) / est.std_error
        worst = max(worst, dev)
        ok &= dev <= 4.0
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300.0
    report(4, f"closed form vs MC oracle on 40 gates (worst {worst:.2f} sigma, {elapsed:.1f}s)", ok)


def test_criterion_05_indexform_equivalence():
    rng = RngSeed(50).generator()
    ok = True
    worst = 0.0
    for mat in haar_unitaries(8, 50, rng):
        gate = GateMatrix(mat, QUBIT3)
        for bp in canonical_bipartitions(3):
            diff = abs(
                epower_bipartition_indexform(gate, bp) - epower_bipartition(gate, bp)
            )
            worst = max(worst, diff)
            ok &= diff <= 1e-9
    report(5, f"index form == geometric form on 50 gates x 3 splits (worst {worst:.1e})", ok)


def test_criterion_06_ensemble_mean_statistics():
    ok = True
    details = []
    for label, mats, target in (
        ("U(8)", haar_unitaries(8, 2000, RngSeed(60)), Fraction(2, 3)),
        ("O(8)", haar_orthogonals(8, 2000, RngSeed(61)), Fraction(208, 315)),
    ):
        eps = epower_batch(mats, QUBIT3)
        se = eps.std(ddof=1) / np.sqrt(eps.size)
        dev = abs(eps.mean() - float(target)) / se
        details.append(f"{label} {dev:.2f} sigma")
        ok &= dev <= 4.0
    phases = random_diagonal_phases(8, 2000, RngSeed(62))
    mats = np.zeros((2000, 8, 8), dtype=complex)
    mats[:, np.arange(8), np.arange(8)] = np.exp(1j * phases)
    eps = epower_batch(mats, QUBIT3)
    se = eps.std(ddof=1) / np.sqrt(eps.size)
    dev = abs(eps.mean() - 10 / 27) / se
    details.append(f"D(8) {dev:.2f} sigma")
    ok &= dev <= 4.0
    report(6, f"2000-draw ensemble means within 4 sigma ({', '.join(details)})", ok)


def _random_moment_specs(group: str, d: int, rng) -> list[MomentSpec]:
    specs = []
    for _ in range(10):  # unconstrained
        specs.append(MomentSpec(group, d, tuple(int(x) for x in rng.integers(0, d, 8))))
    for _ in range(10):  # force a row pairing so nonzero values get exercised
        idx = [int(x) for x in rng.integers(0, d, 8)]
        if group == "unitary":
            idx[2], idx[6] = idx[0], idx[4]  # i1' = i1, i2' = i2
        else:
            idx[2], idx[6] = idx[0], idx[4]  # i2 = i1, i4 = i3
        specs.append(MomentSpec(group, d, tuple(idx)))
    return specs


def test_criterion_07_weingarten_validation():
    for d in (2, 3, 4, 8):
        assert unitary_second_moment(MomentSpec("unitary", d, (0,) * 8)) == Fraction(
            2, d * (d + 1)
        )
    for d in (3, 4, 8):
        assert orthogonal_fourth_moment(MomentSpec("orthogonal", d, (0,) * 8)) == Fraction(
            3, d * (d + 2)
        )
    n_samples, chunk = 100_000, 10_000
    ok = True
    worst = 0.0
    for group in ("unitary", "orthogonal"):
        for d in (3, 4, 8):
            rng = RngSeed(70, d if group == "unitary" else 100 + d).generator()
            specs = _random_moment_specs(group, d, rng)
            sums = np.zeros(len(specs), dtype=complex)
            sumsq_re = np.zeros(len(specs))
            sumsq_im = np.zeros(len(specs))
            for _ in range(n_samples // chunk):
                mats = (
                    haar_unitaries(d, chunk, rng)
                    if group == "unitary"
                    else haar_orthogonals(d, chunk, rng)
                )
                for s, spec in enumerate(specs):
                    i = spec.indices
                    if group == "unitary":
                        vals = (
                            mats[:, i[0], i[1]]
                            * mats[:, i[2], i[3]].conj()
                            * mats[:, i[4], i[5]]
                            * mats[:, i[6], i[7]].conj()
                        )
                    else:
                        vals = (
                            mats[:, i[0], i[1]]
                            * mats[:, i[2], i[3]]
                            * mats[:, i[4], i[5]]
                            * mats[:, i[6], i[7]]
                        )
                    sums[s] += vals.sum()
                    sumsq_re[s] += np.sum(vals.real**2)
                    sumsq_im[s] += np.sum(vals.imag**2)
            means = sums / n_samples
            se_re = np.sqrt(
                np.maximum(sumsq_re / n_samples - means.real**2, 0.0) / (n_samples - 1)
            )
            se_im = np.sqrt(
                np.maximum(sumsq_im / n_samples - means.imag**2, 0.0) / (n_samples - 1)
            )
            for s, spec in enumerate(specs):
                exact = float(
                    unitary_second_moment(spec)
                    if group == "unitary"
                    else orthogonal_fourth_moment(spec)
                )
                dev = abs(means[s].real - exact) / max(se_re[s], 1e-15)
                worst = max(worst, dev)
                ok &= dev <= 4.0
                if group == "unitary":
                    ok &= abs(means[s].imag) <= 4.0 * max(se_im[s], 1e-15)
    report(7, f"moment evaluators vs MC, 120 specs (worst {worst:.2f} sigma)", ok)


def test_criterion_08_ame_and_maximum():
    gate = h_u8()
    ok = abs(epower_one_tangle(gate).total - 8 / 9) <= 1e-10
    ame = is_ame(choi_state(gate), tol=1e-8)
    ok &= ame.passed
    eps = epower_batch(haar_unitaries(8, 500, RngSeed(80)), QUBIT3)
    ok &= bool(np.all(eps <= 8 / 9 + 1e-10))
    report(8, f"maximizer is dual to a six-qubit AME state (dev {ame.max_deviation:.1e})", ok)


def test_criterion_09_scaling_data():
    ok = True
    for d in range(2, 17):
        ok &= mean_qudit_unitary(3, d) == Fraction(2 * (d - 1) ** 2, d * d - d + 1)
        ok &= upper_bound_qudit(3, d) == Fraction(2 * (d * d + d - 2), (1 + d) ** 2)
        ok &= max_tau_one(d) == Fraction(2 * (d - 1), d)
    for d in (2, 4, 16):
        bound_ratios = []
        group_ratios = []
        for n in range(2, 9):
            ok &= upper_bound_qudit(n, d) == upper_bound_one_tangle((d,) * n)
            mu = mean_qudit_unitary(n, d)
            bound_ratios.append(mu / upper_bound_qudit(n, d))
            group_ratios.append(mean_qudit_orthogonal(n, d) / mu)
        ok &= all(a < b < 1 for a, b in zip(bound_ratios, bound_ratios[1:]))
        ok &= all(a < b < 1 for a, b in zip(group_ratios, group_ratios[1:]))
    report(9, "scaling curves exact; ratios monotone toward 1; bounds consistent", ok)


def test_criterion_10_gn_family():
    ok = gn_coefficient(3) == Fraction(5, 27)
    ok &= epower_gn_closed(3, np.pi) == 10 / 27  # exact in floats
    rng = np.random.default_rng(100)
    worst = 0.0
    for n in (2, 3, 4):
        for alpha in rng.uniform(0.0, 2 * np.pi, 10):
            diff = abs(epower_gn_closed(n, alpha) - epower_one_tangle(g_n(n, alpha)).total)
            worst = max(worst, diff)
            ok &= diff <= 1e-10
    report(10, f"controlled-phase family closed form (worst {worst:.1e})", ok)
