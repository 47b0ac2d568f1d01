"""Closed-form entangling power of multipartite unitary gates.

A gate U on H = H_1 (x) ... (x) H_n corresponds, through gate-state duality,
to the pure state |U> on H (x) H' whose amplitudes are the matrix elements of
U divided by sqrt(d_1...d_n).  The entangling power with respect to the
one-tangle -- the average one-tangle of U applied to Haar-random fully
separable states -- then has an explicit expression: for each physical
bipartition p|q one sums the purities of the reductions of |U><U| over
p union x' for **all** 2^n subsets x' of the primed parties (the two trivial
subsets included), and

    eps_{p|q}(U) = 2 [ 1 - (prod_i d_i/(d_i+1)) * sum_{x'} tr(tr_{p x'} |U><U|)^2 ].

The total eps_1 averages eps_{p|q} over the 2^(n-1) - 1 unordered nontrivial
bipartitions.  This module also provides the equivalent basis-index
contraction for tripartite gates (a slow independent oracle), exact upper
bounds, and exact Haar-group means over U(D) and O(D), all in rational
arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod, sqrt
from typing import Optional

import numpy as np

from .entanglement import (
    Bipartition,
    SplitLike,
    as_bipartition,
    canonical_bipartitions,
    enumerate_bipartitions,
    extended_bipartitions,
)
from .tensorops import (
    DimsLike,
    GateMatrix,
    PureState,
    SubsystemDims,
    as_dims,
    reduction_purity,
)


@dataclass(frozen=True)
class EPowerReport:
    """Entangling power of one gate: per-bipartition values and their mean."""

    per_bipartition: dict[Bipartition, float]
    total: float
    dims: SubsystemDims


def choi_state(gate: GateMatrix) -> PureState:
    """Pure state on 2n parties dual to the gate.

    The amplitude at (j_1..j_n, j_1'..j_n') is the matrix element
    U[j, j'] / sqrt(d_1...d_n); primed party i' is party n+i of the result.
    """
    d_total = gate.dims.total_dim
    amps = gate.matrix.reshape(-1) / sqrt(d_total)
    return PureState(amps, gate.dims.doubled())


def _epower_batch_split(
    tensors: np.ndarray, dims: SubsystemDims, split: Bipartition
) -> np.ndarray:
    """eps_{p|q} for a batch of gate-dual amplitude vectors."""
    doubled = dims.doubled()
    prefactor = prod(d / (d + 1) for d in dims)
    purity_sum = np.zeros(tensors.shape[:-1])
    for ext in extended_bipartitions(split):
        purity_sum += reduction_purity(tensors, doubled, ext.left_parties())
    return 2.0 * (1.0 - prefactor * purity_sum)


def epower_bipartition(gate: GateMatrix, split: SplitLike) -> float:
    """Entangling power of the gate with respect to one physical bipartition.

    The sum over primed subsets x' is ordered and includes both trivial
    subsets; complements are deliberately not deduplicated.
    """
    bp = as_bipartition(split, gate.dims.n_parties).canonical()
    if not bp.is_nontrivial:
        raise ValueError(f"bipartition {bp} is trivial")
    amps = choi_state(gate).amplitudes
    return float(_epower_batch_split(amps, gate.dims, bp))


def epower_one_tangle(gate: GateMatrix) -> EPowerReport:
    """Entangling power with respect to the one-tangle, split by bipartition."""
    dims = gate.dims
    amps = choi_state(gate).amplitudes
    per = {
        bp: float(_epower_batch_split(amps, dims, bp))
        for bp in canonical_bipartitions(dims.n_parties)
    }
    total = sum(per.values()) / len(per)
    return EPowerReport(per, total, dims)


def epower_batch(matrices: np.ndarray, dims: DimsLike) -> np.ndarray:
    """Vectorized eps_1 for a stack of unitary matrices, shape (..., D, D).

    The sweep kernel behind ensemble histograms and the permutation census;
    agrees with epower_one_tangle(...).total elementwise.  Unitarity of the
    inputs is assumed, not checked.
    """
    dims = as_dims(dims)
    d_total = dims.total_dim
    mats = np.asarray(matrices, dtype=complex)
    if mats.shape[-2:] != (d_total, d_total):
        raise ValueError(f"matrix shape {mats.shape[-2:]} does not match dims {dims.dims}")
    tensors = mats.reshape(mats.shape[:-2] + (d_total * d_total,)) / sqrt(d_total)
    splits = canonical_bipartitions(dims.n_parties)
    total = np.zeros(mats.shape[:-2])
    for bp in splits:
        total += _epower_batch_split(tensors, dims, bp)
    return total / len(splits)


_EINSUM_LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"

_INDEXFORM_MAX_DIM = 16


def epower_bipartition_indexform(gate: GateMatrix, split: SplitLike) -> float:
    """Basis-index contraction form of epower_bipartition, for tripartite gates.

    Contracts four copies of the gate tensor (two conjugated) against the
    per-party second-moment pair structure delta(v1,v2)delta(v3,v4) +
    delta(v1,v4)delta(v3,v2), with prefactor prod_i 1/(d_i(d_i+1)).  Scales
    steeply with local dimensions, so it is restricted to n = 3 and total
    dimension <= 16 and serves as an independent oracle for the geometric
    form.
    """
    dims = gate.dims
    n = dims.n_parties
    if n != 3:
        raise ValueError("index form is implemented for exactly three parties")
    if dims.total_dim > _INDEXFORM_MAX_DIM:
        raise ValueError(f"index form restricted to total dimension <= {_INDEXFORM_MAX_DIM}")
    bp = as_bipartition(split, n).canonical()
    if not bp.is_nontrivial:
        raise ValueError(f"bipartition {bp} is trivial")
    left0 = {p - 1 for p in bp.left}

    t = gate.matrix.reshape(dims.dims * 2)
    tc = t.conj()
    # Output-side labels: factor 1 carries alpha, factor 3 carries beta; on
    # the left side of the split factor 2 ties to beta and factor 4 to alpha,
    # on the right side the roles swap.
    alpha = [_EINSUM_LETTERS[i] for i in range(n)]
    beta = [_EINSUM_LETTERS[n + i] for i in range(n)]
    out1, out3 = alpha, beta
    out2 = [beta[x] if x in left0 else alpha[x] for x in range(n)]
    out4 = [alpha[x] if x in left0 else beta[x] for x in range(n)]
    s_lab = [_EINSUM_LETTERS[2 * n + i] for i in range(n)]
    t_lab = [_EINSUM_LETTERS[3 * n + i] for i in range(n)]

    total = 0.0
    for pairing in itertools.product((0, 1), repeat=n):
        # pairing 0: inputs of factors (1,2) and (3,4) coincide; 1: (1,4) and (3,2)
        in1, in3 = s_lab, t_lab
        in2 = [s_lab[x] if pairing[x] == 0 else t_lab[x] for x in range(n)]
        in4 = [t_lab[x] if pairing[x] == 0 else s_lab[x] for x in range(n)]
        spec = ",".join(
            "".join(o) + "".join(i)
            for o, i in ((out1, in1), (out2, in2), (out3, in3), (out4, in4))
        ) + "->"
        total += float(np.real(np.einsum(spec, t, tc, t, tc)))

    prefactor = prod(Fraction(1, d * (d + 1)) for d in dims)
    return 2.0 * (1.0 - float(prefactor) * total)


def upper_bound_bipartition(dims: DimsLike, split: SplitLike) -> Fraction:
    """Upper bound on eps_{p|q}, from the concurrence range on the doubled space.

    Each term of the x' sum is capped by the maximal concurrence
    2 (m-1)/m of the extended bipartition (p union x') | (q union y').
    """
    dims = as_dims(dims)
    n = dims.n_parties
    bp = as_bipartition(split, n).canonical()
    if not bp.is_nontrivial:
        raise ValueError(f"bipartition {bp} is trivial")
    doubled = dims.doubled()
    d_full = doubled.total_dim
    prefactor = prod(Fraction(d, d + 1) for d in dims)
    cap_sum = Fraction(0)
    for ext in extended_bipartitions(bp):
        d_left = doubled.subset_dim(ext.left_parties())
        m = min(d_left, d_full // d_left)
        cap_sum += Fraction(m - 1, m)
    return 2 - 2 * prefactor * (2**n - cap_sum)


def upper_bound_one_tangle(dims: DimsLike) -> Fraction:
    """Upper bound on eps_1: mean of the per-bipartition bounds.

    Tight exactly when all local dimensions are equal and an absolutely
    maximally entangled state of 2n parties exists; for unequal dimensions
    only the bound itself is claimed.
    """
    dims = as_dims(dims)
    splits = canonical_bipartitions(dims.n_parties)
    return sum((upper_bound_bipartition(dims, bp) for bp in splits), Fraction(0)) / len(splits)


def upper_bound_qudit(n: int, d: int) -> Fraction:
    """Closed form of upper_bound_one_tangle on [d]*n.

    The double binomial sum counts extended bipartitions by the sizes of the
    smaller physical side l and the primed subset j; the floor in the l range
    and the halving of the l = n/2 term avoid double counting the balanced
    cuts.
    """
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 parties of dimension d >= 2")
    inner = Fraction(0)
    for j in range(n + 1):
        for l in range(1, n // 2 + 1):
            e = n - abs(l - j)
            halving = 2 if 2 * l == n else 1
            inner += comb(n, j) * comb(n, l) * Fraction(d**e - 1, d**e * halving)
    return 2 - 2 * Fraction(d**n, (d + 1) ** n) * (2**n - inner / (2 ** (n - 1) - 1))


def max_tau_one(d: int) -> Fraction:
    """One-tangle of a maximally entangled state across a cut of local dimension d."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return Fraction(2 * (d - 1), d)


@dataclass(frozen=True)
class GroupMeanInputs:
    """Integer constants entering the exact Haar-mean formulas.

    B is the sum of products of local dimensions over all 2^n subsets
    (equivalently prod_i (1 + d_i)), C sums d_p + d_q over the unordered
    nontrivial bipartitions, D is the total dimension, and A is the
    tripartite combination 3 - sum d_i - sum_{i<j} d_i d_j + 3 d_1 d_2 d_3
    (defined only for n = 3).
    """

    dims: SubsystemDims
    b_subset_sum: int
    c_split_sum: int
    d_total: int
    a_tripartite: Optional[int]

    @classmethod
    def from_dims(cls, dims: DimsLike) -> "GroupMeanInputs":
        dims = as_dims(dims)
        n = dims.n_parties
        b = prod(1 + d for d in dims)
        c = sum(
            dims.subset_dim(left) + dims.subset_dim(frozenset(range(1, n + 1)) - left)
            for left in enumerate_bipartitions(n)
        )
        d_total = dims.total_dim
        a = None
        if n == 3:
            d1, d2, d3 = dims
            a = 3 - d1 - d2 - d3 - d1 * d2 - d1 * d3 - d2 * d3 + 3 * d1 * d2 * d3
        return cls(dims, b, c, d_total, a)


def mean_unitary(dims: DimsLike) -> Fraction:
    """Exact mean of eps_1 over the Haar-distributed unitary group U(D)."""
    dims = as_dims(dims)
    n = dims.n_parties
    if n < 2:
        raise ValueError("need at least two parties")
    k = GroupMeanInputs.from_dims(dims)
    prefactor = prod(Fraction(1, d + 1) for d in dims)
    return 2 * (
        1
        - prefactor
        * Fraction(k.b_subset_sum * k.c_split_sum, (2 ** (n - 1) - 1) * (k.d_total + 1))
    )


def mean_orthogonal(dims: DimsLike) -> Fraction:
    """Exact mean of eps_1 over the Haar-distributed real orthogonal group O(D)."""
    dims = as_dims(dims)
    n = dims.n_parties
    if n < 2:
        raise ValueError("need at least two parties")
    k = GroupMeanInputs.from_dims(dims)
    b, c, d_tot = k.b_subset_sum, k.c_split_sum, k.d_total
    if d_tot == 1:
        return Fraction(0)  # O(1) gates are signs; nothing to entangle
    prefactor = prod(Fraction(1, d + 1) for d in dims)
    numerator = (
        Fraction(2**n * (d_tot + 1) - 2 * b)
        + Fraction((b * d_tot - 2**n) * c, 2 ** (n - 1) - 1)
    )
    return 2 * (1 - prefactor * numerator / ((d_tot - 1) * (d_tot + 2)))


def mean_qudit_unitary(n: int, d: int) -> Fraction:
    """Closed form of mean_unitary on [d]*n."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 parties of dimension d >= 2")
    return Fraction(2**n * (d**n + 1) - 2 * (d + 1) ** n, (2 ** (n - 1) - 1) * (d**n + 1))


def mean_qudit_orthogonal(n: int, d: int) -> Fraction:
    """Closed form of mean_orthogonal on [d]*n."""
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 parties of dimension d >= 2")
    return Fraction(
        (2**n * (d**n + 1) - 2 * (d + 1) ** n) * (d**n * (d + 1) ** n - 2**n),
        (2 ** (n - 1) - 1) * (d ** (2 * n) + d**n - 2) * (d + 1) ** n,
    )
