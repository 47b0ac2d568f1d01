"""Random gate ensembles, the Monte Carlo oracle, and exact Haar moments.

Haar sampling uses the Ginibre + QR construction with the diagonal
phase/sign correction; a plain QR of a Gaussian matrix is *not* Haar
distributed.  The Monte Carlo estimator of entangling power averages the
one-tangle of U applied to random fully separable states, which are drawn
directly as tensor products of normalized local Gaussian vectors (the same
measure as applying local Haar unitaries to a fixed state, with fewer
operations).

Randomness is PCG64 seeded through numpy's SeedSequence from the pair
(seed, stream_id); identical pairs reproduce identical samples within one
build.  Batched draws are taken in fixed-size chunks so results do not
depend on how the work is scheduled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, NamedTuple, Union

import numpy as np

from .entanglement import one_tangle_batch
from .tensorops import DimsLike, GateMatrix, PureState, SubsystemDims, as_dims

_MC_CHUNK = 4096
_PERMUTATION_MAX_DIM = 10


@dataclass(frozen=True)
class RngSeed:
    """Seed pair identifying one reproducible random stream."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.default_rng((self.seed, self.stream_id))


RngLike = Union[np.random.Generator, RngSeed, int]


def as_generator(rng: RngLike) -> np.random.Generator:
    """Coerce a seed or RngSeed to a generator; pass generators through."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngSeed):
        return rng.generator()
    return RngSeed(int(rng)).generator()


def haar_unitaries(d: int, size: int, rng: RngLike) -> np.ndarray:
    """Stack of Haar-random unitaries, shape (size, d, d)."""
    gen = as_generator(rng)
    z = (gen.standard_normal((size, d, d)) + 1j * gen.standard_normal((size, d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.einsum("...ii->...i", r)
    return q * (diag / np.abs(diag))[..., None, :]


def haar_unitary(d: int, rng: RngLike) -> GateMatrix:
    """One Haar-random unitary as a single-party gate."""
    return GateMatrix(haar_unitaries(d, 1, rng)[0], SubsystemDims((d,)))


def haar_orthogonals(d: int, size: int, rng: RngLike) -> np.ndarray:
    """Stack of Haar-random real orthogonal matrices, shape (size, d, d)."""
    gen = as_generator(rng)
    z = gen.standard_normal((size, d, d))
    q, r = np.linalg.qr(z)
    diag = np.einsum("...ii->...i", r)
    return q * np.sign(diag)[..., None, :]


def haar_orthogonal(d: int, rng: RngLike) -> GateMatrix:
    """One Haar-random orthogonal matrix as a single-party gate."""
    return GateMatrix(haar_orthogonals(d, 1, rng)[0], SubsystemDims((d,)))


def random_diagonal_phases(d: int, size: int, rng: RngLike) -> np.ndarray:
    """Uniform phases on the d-torus, shape (size, d)."""
    return as_generator(rng).uniform(0.0, 2.0 * np.pi, (size, d))


def random_diagonal_unitary(d: int, rng: RngLike) -> GateMatrix:
    """diag(e^{i phi_1}, ..., e^{i phi_d}) with i.i.d. uniform phases."""
    phases = random_diagonal_phases(d, 1, rng)[0]
    return GateMatrix(np.diag(np.exp(1j * phases)), SubsystemDims((d,)))


def permutation_words(d: int) -> Iterator[tuple[int, ...]]:
    """All permutations of 0..d-1 in lexicographic order."""
    if d > _PERMUTATION_MAX_DIM:
        raise ValueError(f"enumerating {d}! permutations is not supported (d <= {_PERMUTATION_MAX_DIM})")
    return itertools.permutations(range(d))


def permutation_matrix(word: tuple[int, ...]) -> np.ndarray:
    """Matrix sending basis state |j> to |word[j]>."""
    d = len(word)
    mat = np.zeros((d, d))
    mat[np.asarray(word), np.arange(d)] = 1.0
    return mat


def enumerate_permutation_matrices(d: int, dims: DimsLike | None = None) -> Iterator[GateMatrix]:
    """Yield all d! permutation matrices, identity first (lexicographic words)."""
    gate_dims = as_dims(dims) if dims is not None else SubsystemDims((d,))
    if gate_dims.total_dim != d:
        raise ValueError(f"dims {gate_dims.dims} do not multiply to {d}")
    for word in permutation_words(d):
        yield GateMatrix(permutation_matrix(word), gate_dims)


def permutation_count(d: int) -> int:
    return factorial(d)


def product_state_batch(dims: DimsLike, size: int, rng: RngLike) -> np.ndarray:
    """Random fully separable states as rows, shape (size, total_dim).

    Each local factor is an independent normalized complex Gaussian vector,
    i.e. a Haar-random local pure state.
    """
    dims = as_dims(dims)
    gen = as_generator(rng)
    out = None
    for d in dims:
        v = gen.standard_normal((size, d)) + 1j * gen.standard_normal((size, d))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        out = v if out is None else (out[:, :, None] * v[:, None, :]).reshape(size, -1)
    return out


def random_product_state(dims: DimsLike, rng: RngLike) -> PureState:
    """One random fully separable pure state."""
    dims = as_dims(dims)
    return PureState(product_state_batch(dims, 1, rng)[0], dims)


class McEstimate(NamedTuple):
    estimate: float
    std_error: float


def mc_entangling_power(
    gate: GateMatrix, n_samples: int, rng: RngLike, chunk_size: int = _MC_CHUNK
) -> McEstimate:
    """Monte Carlo estimate of eps_1 directly from its defining average.

    Draws n_samples random fully separable states, applies the gate, and
    returns the sample mean and standard error of the resulting one-tangles.
    Independent of the closed-form evaluation and therefore usable as an
    oracle for it.
    """
    if n_samples < 2:
        raise ValueError("need at least two samples for a standard error")
    dims = gate.dims
    gen = as_generator(rng)
    values = np.empty(n_samples)
    done = 0
    while done < n_samples:
        m = min(chunk_size, n_samples - done)
        states = product_state_batch(dims, m, gen)
        values[done : done + m] = one_tangle_batch(states @ gate.matrix.T, dims)
        done += m
    return McEstimate(float(values.mean()), float(values.std(ddof=1) / np.sqrt(n_samples)))


# ---------------------------------------------------------------------------
# Exact Haar moments of matrix entries
# ---------------------------------------------------------------------------

UNITARY = "unitary"
ORTHOGONAL = "orthogonal"

# Pair partitions of four factors: ((1,2)(3,4)), ((1,3)(2,4)), ((1,4)(2,3)).
_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True)
class MomentSpec:
    """Which product of matrix entries to average over a Haar group.

    For group "unitary" the indices are (i1, j1, i1', j1', i2, j2, i2', j2')
    and the averaged quantity is U[i1,j1] U*[i1',j1'] U[i2,j2] U*[i2',j2']
    (two U factors paired with two conjugates).  For group "orthogonal" they
    are (i1, j1, ..., i4, j4) for O[i1,j1] O[i2,j2] O[i3,j3] O[i4,j4].
    """

    group: str
    d: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.group not in (UNITARY, ORTHOGONAL):
            raise ValueError(f"unknown group {self.group!r}")
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if self.group == ORTHOGONAL and self.d < 3:
            raise ValueError("orthogonal fourth moments need d >= 3")
        idx = tuple(int(i) for i in self.indices)
        if len(idx) != 8:
            raise ValueError("moment spec needs exactly 8 indices")
        if any(i < 0 or i >= self.d for i in idx):
            raise ValueError(f"indices must lie in 0..{self.d - 1}")
        object.__setattr__(self, "indices", idx)


def unitary_second_moment(spec: MomentSpec) -> Fraction:
    """Exact <U U* U U*> over U(d) via the degree-two delta expansion.

    The expansion has weight d for the two matched row/column pairings and
    weight -1 for the two crossed ones, over the common denominator
    d (d^2 - 1); at d = 1 the average is identically 1.
    """
    if spec.group != UNITARY:
        raise ValueError("spec is not a unitary moment")
    i1, j1, i1p, j1p, i2, j2, i2p, j2p = spec.indices
    d = spec.d
    if d == 1:
        return Fraction(1)
    rows_direct = i1 == i1p and i2 == i2p
    rows_swapped = i1 == i2p and i2 == i1p
    cols_direct = j1 == j1p and j2 == j2p
    cols_swapped = j1 == j2p and j2 == j1p
    total = d * (int(rows_direct and cols_direct) + int(rows_swapped and cols_swapped))
    total -= int(rows_direct and cols_swapped) + int(rows_swapped and cols_direct)
    return Fraction(total, d * (d * d - 1))


def orthogonal_fourth_moment(spec: MomentSpec) -> Fraction:
    """Exact <O O O O> over O(d) via orthogonal Weingarten weights.

    Sums over the nine combinations of row and column pair partitions with
    weight (d+1)/(d(d-1)(d+2)) when the partitions coincide and
    -1/(d(d-1)(d+2)) otherwise.  At coincident indices this reduces to the
    known 3/(d(d+2)).
    """
    if spec.group != ORTHOGONAL:
        raise ValueError("spec is not an orthogonal moment")
    rows = spec.indices[0::2]
    cols = spec.indices[1::2]
    d = spec.d
    wg_same = Fraction(d + 1, d * (d - 1) * (d + 2))
    wg_diff = Fraction(-1, d * (d - 1) * (d + 2))

    def matches(values: tuple[int, ...], pairing) -> bool:
        return all(values[a] == values[b] for a, b in pairing)

    total = Fraction(0)
    for q in _PAIRINGS:
        if not matches(rows, q):
            continue
        for r in _PAIRINGS:
            if matches(cols, r):
                total += wg_same if q == r else wg_diff
    return total


class MomentEstimate(NamedTuple):
    mean: complex
    std_error_real: float
    std_error_imag: float


def mc_moment(
    spec: MomentSpec, n_samples: int, rng: RngLike, chunk_size: int = _MC_CHUNK
) -> MomentEstimate:
    """Monte Carlo estimate of a MomentSpec average, for validating the
    exact evaluators."""
    if n_samples < 2:
        raise ValueError("need at least two samples for a standard error")
    gen = as_generator(rng)
    idx = spec.indices
    samples = np.empty(n_samples, dtype=complex)
    done = 0
    while done < n_samples:
        m = min(chunk_size, n_samples - done)
        if spec.group == UNITARY:
            mats = haar_unitaries(spec.d, m, gen)
            vals = (
                mats[:, idx[0], idx[1]]
                * mats[:, idx[2], idx[3]].conj()
                * mats[:, idx[4], idx[5]]
                * mats[:, idx[6], idx[7]].conj()
            )
        else:
            mats = haar_orthogonals(spec.d, m, gen)
            vals = (
                mats[:, idx[0], idx[1]]
                * mats[:, idx[2], idx[3]]
                * mats[:, idx[4], idx[5]]
                * mats[:, idx[6], idx[7]]
            )
        samples[done : done + m] = vals
        done += m
    rt = np.sqrt(n_samples)
    return MomentEstimate(
        complex(samples.mean()),
        float(samples.real.std(ddof=1) / rt),
        float(samples.imag.std(ddof=1) / rt),
    )
