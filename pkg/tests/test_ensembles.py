from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import ks_2samp

from epower import (
    GateMatrix,
    MomentSpec,
    RngSeed,
    enumerate_permutation_matrices,
    epower_batch,
    haar_orthogonal,
    haar_orthogonals,
    haar_unitaries,
    haar_unitary,
    mc_entangling_power,
    mc_moment,
    one_tangle,
    orthogonal_fourth_moment,
    permutation_matrix,
    permutation_words,
    random_diagonal_unitary,
    random_product_state,
    unitary_second_moment,
)
from epower.gates import fredkin, identity_gate, toffoli
from epower.tensorops import UNITARY_TOL


def test_haar_unitary_is_unitary():
    mats = haar_unitaries(5, 50, 0)
    for m in mats:
        assert np.linalg.norm(m.conj().T @ m - np.eye(5)) < UNITARY_TOL
    assert isinstance(haar_unitary(3, 0), GateMatrix)


def test_haar_orthogonal_is_real_orthogonal():
    mats = haar_orthogonals(5, 50, 0)
    assert mats.dtype.kind == "f"
    for m in mats:
        assert np.linalg.norm(m.T @ m - np.eye(5)) < UNITARY_TOL
        assert abs(abs(np.linalg.det(m)) - 1.0) < 1e-10


def test_haar_first_moment():
    # <|U_00|^2> = 1/d
    for d in (2, 5):
        mats = haar_unitaries(d, 100_000, 1)
        vals = np.abs(mats[:, 0, 0]) ** 2
        se = vals.std(ddof=1) / np.sqrt(vals.size)
        assert abs(vals.mean() - 1.0 / d) < 4 * se


def test_haar_coincident_fourth_moments():
    # <|U_00|^4> = 2/(d(d+1)); <O_00^4> = 3/(d(d+2))
    d = 4
    mats = haar_unitaries(d, 100_000, 2)
    vals = np.abs(mats[:, 0, 0]) ** 4
    se = vals.std(ddof=1) / np.sqrt(vals.size)
    assert abs(vals.mean() - 2.0 / (d * (d + 1))) < 4 * se
    mats = haar_orthogonals(d, 100_000, 3)
    vals = mats[:, 0, 0] ** 4
    se = vals.std(ddof=1) / np.sqrt(vals.size)
    assert abs(vals.mean() - 3.0 / (d * (d + 2))) < 4 * se


def test_random_diagonal_unitary_shape():
    g = random_diagonal_unitary(8, 4)
    off = g.matrix - np.diag(np.diagonal(g.matrix))
    assert np.abs(off).max() == 0.0
    ident = GateMatrix(np.diag(np.exp(1j * np.zeros(8))), (8,))
    np.testing.assert_allclose(ident.matrix, np.eye(8))


def test_permutation_enumeration():
    mats = list(enumerate_permutation_matrices(3))
    assert len(mats) == 6
    np.testing.assert_allclose(mats[0].matrix, np.eye(3))
    # lexicographic second word is (0, 2, 1): swaps |1> and |2>
    np.testing.assert_allclose(
        mats[1].matrix, np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    )
    with pytest.raises(ValueError):
        list(permutation_words(11))


def test_permutation_matrix_action():
    word = (2, 0, 1)
    mat = permutation_matrix(word)
    for j, target in enumerate(word):
        e = np.zeros(3)
        e[j] = 1.0
        out = mat @ e
        assert out[target] == 1.0 and out.sum() == 1.0


def test_random_product_state_is_separable():
    rng = RngSeed(5).generator()
    for dims in ([2, 2, 2], [2, 3, 2]):
        psi = random_product_state(dims, rng)
        assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0)
        assert one_tangle(psi) == pytest.approx(0.0, abs=1e-10)


def test_mc_identity_gate():
    est = mc_entangling_power(identity_gate([2, 2, 2]), 500, 6)
    assert abs(est.estimate) < 1e-12
    assert est.std_error < 1e-12


def test_mc_matches_named_gate_values():
    est = mc_entangling_power(toffoli(), 20000, 7)
    assert est.std_error < 0.01
    assert abs(est.estimate - 10 / 27) < 4 * est.std_error
    est = mc_entangling_power(fredkin(), 20000, 8)
    assert abs(est.estimate - 10 / 27) < 4 * est.std_error


def test_mc_determinism():
    a = mc_entangling_power(toffoli(), 4000, RngSeed(9, 2))
    b = mc_entangling_power(toffoli(), 4000, RngSeed(9, 2))
    assert a == b
    c = mc_entangling_power(toffoli(), 4000, RngSeed(9, 3))
    assert a != c


def test_unitary_second_moment_values():
    assert unitary_second_moment(MomentSpec("unitary", 2, (0,) * 8)) == Fraction(1, 3)
    for d in (2, 3, 8):
        assert unitary_second_moment(MomentSpec("unitary", d, (0,) * 8)) == Fraction(
            2, d * (d + 1)
        )
    # mismatched free deltas kill the average
    assert unitary_second_moment(MomentSpec("unitary", 3, (0, 0, 1, 0, 0, 0, 0, 0))) == 0
    # rows paired directly, columns coincident
    assert unitary_second_moment(MomentSpec("unitary", 3, (0, 0, 0, 0, 1, 0, 1, 0))) == Fraction(
        1, 12
    )


def test_orthogonal_fourth_moment_values():
    assert orthogonal_fourth_moment(MomentSpec("orthogonal", 4, (0,) * 8)) == Fraction(1, 8)
    assert orthogonal_fourth_moment(MomentSpec("orthogonal", 8, (0,) * 8)) == Fraction(3, 80)
    for d in (3, 5):
        assert orthogonal_fourth_moment(MomentSpec("orthogonal", d, (0,) * 8)) == Fraction(
            3, d * (d + 2)
        )
    # no valid row pairing
    assert orthogonal_fourth_moment(MomentSpec("orthogonal", 4, (0, 0, 1, 0, 2, 0, 3, 0))) == 0


def test_moment_spec_validation():
    with pytest.raises(ValueError):
        MomentSpec("unitary", 2, (0, 0, 0))
    with pytest.raises(ValueError):
        MomentSpec("unitary", 2, (0, 0, 0, 0, 0, 0, 0, 5))
    with pytest.raises(ValueError):
        MomentSpec("orthogonal", 2, (0,) * 8)
    with pytest.raises(ValueError):
        MomentSpec("symplectic", 4, (0,) * 8)


def test_moments_against_mc_spot_checks():
    rng = np.random.default_rng(10)
    for d, group in ((3, "unitary"), (4, "orthogonal")):
        for _ in range(4):
            idx = tuple(int(x) for x in rng.integers(0, d, 8))
            spec = MomentSpec(group, d, idx)
            exact = (
                unitary_second_moment(spec) if group == "unitary" else orthogonal_fourth_moment(spec)
            )
            est = mc_moment(spec, 50_000, rng)
            tol_r = 4 * est.std_error_real + 1e-12
            tol_i = 4 * est.std_error_imag + 1e-12
            assert abs(est.mean.real - float(exact)) < tol_r
            assert abs(est.mean.imag) < tol_i


def test_haar_invariance_of_epsilon_distribution():
    # eps_1(V U) for fixed V should be distributed like eps_1(U)
    n = 2000
    base = epower_batch(haar_unitaries(8, n, RngSeed(11, 0)), (2, 2, 2))
    v = haar_unitaries(8, 1, RngSeed(11, 1))[0]
    shifted = epower_batch(v @ haar_unitaries(8, n, RngSeed(11, 2)), (2, 2, 2))
    stat = ks_2samp(base, shifted)
    assert stat.pvalue > 0.01
