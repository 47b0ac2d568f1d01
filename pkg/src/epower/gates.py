"""Named gates and gate families, with family-specific closed forms.

Phase labels for three-qubit diagonal gates are 1-based: phi_1..phi_8
multiply the basis states |000>..|111> in that order, matching the usual
display diag(e^{i phi_1}, ..., e^{i phi_8}).  Storage is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import cos
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .entanglement import enumerate_bipartitions
from .tensorops import DimsLike, GateMatrix, SubsystemDims, as_dims

_QUBIT3 = SubsystemDims((2, 2, 2))


def fredkin() -> GateMatrix:
    """Controlled SWAP: qubit 1 controls the exchange of qubits 2 and 3."""
    mat = np.eye(8)
    mat[[5, 6]] = mat[[6, 5]]
    return GateMatrix(mat, _QUBIT3)


def toffoli() -> GateMatrix:
    """Controlled-controlled NOT: qubits 1, 2 control a flip of qubit 3."""
    mat = np.eye(8)
    mat[[6, 7]] = mat[[7, 6]]
    return GateMatrix(mat, _QUBIT3)


def deutsch(theta: float) -> GateMatrix:
    """Controlled-controlled rotation by theta of qubit 3.

    The 2x2 target block is i cos(theta) I + sin(theta) X; any convention
    with entangling power (7 - 3 cos 2 theta)/27 is equivalent up to local
    unitaries.  theta = pi/2 reduces to the Toffoli gate.
    """
    mat = np.eye(8, dtype=complex)
    c, s = 1j * np.cos(theta), np.sin(theta)
    mat[6:, 6:] = np.array([[c, s], [s, c]])
    return GateMatrix(mat, _QUBIT3)


def swap_gate(d: int = 2) -> GateMatrix:
    """SWAP of two d-level parties: |ij> -> |ji>."""
    mat = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            mat[j * d + i, i * d + j] = 1.0
    return GateMatrix(mat, SubsystemDims((d, d)))


def identity_gate(dims: DimsLike) -> GateMatrix:
    dims = as_dims(dims)
    return GateMatrix(np.eye(dims.total_dim), dims)


def g_n(n: int, alpha: float) -> GateMatrix:
    """n-qubit phase gate diag(1, ..., 1, e^{i alpha}).

    Generalizes the controlled sign gate, which is g_n(n, pi).
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    diag = np.ones(2**n, dtype=complex)
    diag[-1] = np.exp(1j * alpha)
    return GateMatrix(np.diag(diag), SubsystemDims((2,) * n))


def gn_coefficient(n: int) -> Fraction:
    """Coefficient c_n in eps_1(g_n(alpha)) = c_n (1 - cos alpha).

    c_n = 2^3 / (6^n (2^(n-1) - 1)) * sum_{p|q} (3^|p| - 2^|p|)(3^|q| - 2^|q|),
    summed over unordered nontrivial bipartitions.  (The denominator carries
    the bipartition count 2^(n-1) - 1; see notes in the test suite for the
    anchoring values c_2 = 2/9 and c_3 = 5/27.)
    """
    if n < 2:
        raise ValueError("need at least two qubits")
    pair_sum = 0
    for left in enumerate_bipartitions(n):
        np_, nq = len(left), n - len(left)
        pair_sum += (3**np_ - 2**np_) * (3**nq - 2**nq)
    return Fraction(8 * pair_sum, 6**n * (2 ** (n - 1) - 1))


def epower_gn_closed(n: int, alpha: float) -> float:
    """Closed-form entangling power of g_n(alpha): c_n (1 - cos alpha)."""
    return float(gn_coefficient(n)) * (1.0 - cos(alpha))


@dataclass(frozen=True)
class DiagonalParams:
    """Parameters of a three-qubit diagonal unitary.

    Either eight phases phi (basis order |000>..|111>) or the reduced
    (omega_1..omega_4, delta_1..delta_3) parametrization, which drops the
    physically irrelevant global phase.  The substitution is

        phi = (w1, w1+w2+dl1, w3, w2+w3, -w2-w3+w4+dl2,
               -w3+w4-dl3, -w1-w2+w4-dl1, -w1+w4).
    """

    phis: Optional[tuple[float, ...]] = None
    omegas: Optional[tuple[float, float, float, float]] = None
    deltas: Optional[tuple[float, float, float]] = None

    def __post_init__(self) -> None:
        if self.phis is not None:
            if self.omegas is not None or self.deltas is not None:
                raise ValueError("give either phis or (omegas, deltas), not both")
            phis = tuple(float(p) for p in self.phis)
            if len(phis) != 8:
                raise ValueError("need exactly 8 phases")
            object.__setattr__(self, "phis", phis)
        else:
            if self.omegas is None or self.deltas is None:
                raise ValueError("give either phis or both omegas and deltas")
            omegas = tuple(float(w) for w in self.omegas)
            deltas = tuple(float(x) for x in self.deltas)
            if len(omegas) != 4 or len(deltas) != 3:
                raise ValueError("need 4 omegas and 3 deltas")
            object.__setattr__(self, "omegas", omegas)
            object.__setattr__(self, "deltas", deltas)

    def phases(self) -> np.ndarray:
        if self.phis is not None:
            return np.asarray(self.phis, dtype=float)
        return phases_from_omegas_deltas(self.omegas, self.deltas)


def phases_from_omegas_deltas(omegas: Sequence[float], deltas: Sequence[float]) -> np.ndarray:
    """Eight diagonal phases from the reduced seven-parameter form."""
    w1, w2, w3, w4 = (float(w) for w in omegas)
    d1, d2, d3 = (float(x) for x in deltas)
    return np.array(
        [
            w1,
            w1 + w2 + d1,
            w3,
            w2 + w3,
            -w2 - w3 + w4 + d2,
            -w3 + w4 - d3,
            -w1 - w2 + w4 - d1,
            -w1 + w4,
        ]
    )


def diagonal_gate(params: DiagonalParams | Sequence[float]) -> GateMatrix:
    """Three-qubit diagonal unitary from phases or a DiagonalParams."""
    if not isinstance(params, DiagonalParams):
        params = DiagonalParams(phis=tuple(params))
    return GateMatrix(np.diag(np.exp(1j * params.phases())), _QUBIT3)


# (i, j, k, l) quadruples of the cosine terms cos(phi_i + phi_j - phi_k - phi_l),
# 1-based labels.  The first group carries weight 4/81, the second 1/81.
_DIAG_TERMS_HEAVY = ((1, 4, 2, 3), (1, 6, 2, 5), (1, 7, 3, 5), (2, 8, 4, 6), (3, 8, 4, 7), (5, 8, 6, 7))
_DIAG_TERMS_LIGHT = ((3, 6, 4, 5), (2, 7, 4, 5), (2, 7, 3, 6), (1, 8, 4, 5), (1, 8, 3, 6), (1, 8, 2, 7))


def epower_diagonal_closed(phis: Sequence[float]) -> float:
    """Closed-form eps_1 of diag(e^{i phi_1}, ..., e^{i phi_8}).

    10/27 minus two weighted groups of six phase cosines; averaging over
    uniform phases kills every cosine, so the ensemble mean is 10/27.
    """
    p = np.asarray(phis, dtype=float)
    if p.shape != (8,):
        raise ValueError("need exactly 8 phases")

    def c(i: int, j: int, k: int, l: int) -> float:
        return cos(p[i - 1] + p[j - 1] - p[k - 1] - p[l - 1])

    heavy = sum(c(*t) for t in _DIAG_TERMS_HEAVY)
    light = sum(c(*t) for t in _DIAG_TERMS_LIGHT)
    return 10.0 / 27.0 - 4.0 / 81.0 * heavy - 1.0 / 81.0 * light


def epower_diagonal_deltas(deltas: Sequence[float]) -> float:
    """eps_1 of a diagonal three-qubit gate in the reduced parametrization.

    Depends on the three deltas only; the omegas are pure local phases.
    """
    d1, d2, d3 = (float(x) for x in deltas)
    return (
        29.0
        - 8.0 * cos(d1)
        - 2.0 * cos(d2)
        - 2.0 * cos(d3)
        - 8.0 * cos(d1 + d2 + d3)
        - 4.0 * cos(d1 + d2)
        - 4.0 * cos(d1 + d3)
        - cos(d2 + d3)
    ) / 81.0


def diagonal_mean() -> Fraction:
    """Mean eps_1 over uniform-phase diagonal three-qubit gates (exact)."""
    return Fraction(10, 27)


DIAGONAL_MAX = Fraction(16, 27)


class DiagonalMaxResult(NamedTuple):
    deltas: tuple[float, float, float]
    value: float
    grad_norm: float
    converged: bool


def _deltas_gradient(x: np.ndarray) -> np.ndarray:
    d1, d2, d3 = x
    s = np.sin
    g1 = (8 * s(d1) + 8 * s(d1 + d2 + d3) + 4 * s(d1 + d2) + 4 * s(d1 + d3)) / 81.0
    g2 = (2 * s(d2) + 8 * s(d1 + d2 + d3) + 4 * s(d1 + d2) + s(d2 + d3)) / 81.0
    g3 = (2 * s(d3) + 8 * s(d1 + d2 + d3) + 4 * s(d1 + d3) + s(d2 + d3)) / 81.0
    return np.array([g1, g2, g3])


def _deltas_landscape(d1: np.ndarray, d2: np.ndarray, d3: np.ndarray) -> np.ndarray:
    c = np.cos
    return (
        29.0
        - 8.0 * c(d1)
        - 2.0 * c(d2)
        - 2.0 * c(d3)
        - 8.0 * c(d1 + d2 + d3)
        - 4.0 * c(d1 + d2)
        - 4.0 * c(d1 + d3)
        - c(d2 + d3)
    ) / 81.0


def maximize_diagonal_epower(
    grid: int = 64, seed: int = 0, restarts: int = 4, grad_tol: float = 1e-10
) -> DiagonalMaxResult:
    """Maximize eps_1 over diagonal three-qubit gates in delta space.

    Coarse grid over [0, 2 pi)^3 followed by BFGS refinement from the best
    grid points (plus a few seeded random restarts); converged when the
    gradient norm at the best point drops below grad_tol.  The maximum is
    16/27, attained e.g. at deltas = (pi, 0, 0), i.e. the sign pattern
    diag(1, 1, 1, -1, 1, -1, -1, -1).
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    vals = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    g1, g2, g3 = np.meshgrid(vals, vals, vals, indexing="ij")
    landscape = _deltas_landscape(g1, g2, g3)
    order = np.argsort(landscape, axis=None)[::-1][:8]
    starts = [np.array([g1.flat[k], g2.flat[k], g3.flat[k]]) for k in order]
    gen = np.random.default_rng((seed, 0))
    starts += [gen.uniform(0.0, 2.0 * np.pi, 3) for _ in range(restarts)]

    best: DiagonalMaxResult | None = None
    for x0 in starts:
        res = minimize(
            lambda x: -epower_diagonal_deltas(x),
            x0,
            jac=lambda x: -_deltas_gradient(x),
            method="BFGS",
            options={"gtol": grad_tol / 10.0},
        )
        gnorm = float(np.linalg.norm(_deltas_gradient(res.x)))
        cand = DiagonalMaxResult(
            tuple(float(v) for v in np.mod(res.x, 2.0 * np.pi)),
            float(-res.fun),
            gnorm,
            gnorm < grad_tol,
        )
        if best is None or cand.value > best.value:
            best = cand
    return best


def h_d8() -> GateMatrix:
    """diag(1, 1, 1, -1, 1, -1, -1, -1): a maximizer among diagonal gates (16/27)."""
    return GateMatrix(np.diag([1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0]), _QUBIT3)


_H_U8_SIGNS = np.array(
    [
        [-1, -1, -1, 1, -1, 1, 1, 1],
        [-1, -1, -1, 1, 1, -1, -1, -1],
        [-1, -1, 1, -1, -1, 1, -1, -1],
        [1, 1, -1, 1, -1, 1, -1, -1],
        [-1, 1, -1, -1, -1, -1, 1, -1],
        [1, -1, 1, 1, -1, -1, 1, -1],
        [1, -1, -1, -1, 1, 1, 1, -1],
        [1, -1, -1, -1, -1, -1, -1, 1],
    ],
    dtype=float,
)


def h_u8() -> GateMatrix:
    """Hermitian orthogonal three-qubit gate with entries +-1/sqrt(8).

    Dual to an absolutely maximally entangled six-qubit state, hence it
    attains the three-qubit entangling-power maximum 8/9 over both U(8)
    and O(8); being Hermitian and unitary it is an involution.
    """
    return GateMatrix(_H_U8_SIGNS / np.sqrt(8.0), _QUBIT3)
