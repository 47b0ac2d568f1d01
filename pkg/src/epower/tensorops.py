"""Dense multi-index tensor mechanics for multipartite states and gates.

Parties are labelled 1..n and party 1 is the most significant digit of a
flat index, so a state vector reshaped to ``dims`` (C order) has party i on
axis i-1.  All containers defined here are immutable after construction and
validate their defining invariants up front, which keeps the numerical code
downstream free of defensive checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import prod
from typing import Iterable, Sequence, Union

import numpy as np

NORM_TOL = 1e-10
HERM_TOL = 1e-10
UNITARY_TOL = 1e-8
PSD_TOL = 1e-9


class ValidationError(ValueError):
    """A constructed object violates one of its numerical invariants."""


@dataclass(frozen=True)
class SubsystemDims:
    """Ordered local dimensions (d_1, ..., d_n) of a tensor-product space."""

    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise ValueError("need at least one party")
        if any(d < 1 for d in dims):
            raise ValueError(f"local dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    def subset_dim(self, parties: Iterable[int]) -> int:
        """Product of the dimensions of the given (1-based) parties."""
        return prod(self.dims[p - 1] for p in parties)

    def doubled(self) -> "SubsystemDims":
        """Dims of the doubled space H (x) H' used by gate-state duality."""
        return SubsystemDims(self.dims + self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def __getitem__(self, i):
        return self.dims[i]


DimsLike = Union[SubsystemDims, Sequence[int]]


def as_dims(dims: DimsLike) -> SubsystemDims:
    if isinstance(dims, SubsystemDims):
        return dims
    return SubsystemDims(tuple(dims))


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PureState:
    """Normalized state vector together with its party structure."""

    amplitudes: np.ndarray
    dims: SubsystemDims

    def __post_init__(self) -> None:
        dims = as_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != dims.total_dim:
            raise ValueError(
                f"amplitude length {amps.size} != total dimension {dims.total_dim}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        object.__setattr__(self, "amplitudes", _frozen_array(amps, complex))
        object.__setattr__(self, "dims", dims)

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per party."""
        return self.amplitudes.reshape(self.dims.dims)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, positive-semidefinite matrix on the kept parties."""

    matrix: np.ndarray
    dims: SubsystemDims

    def __post_init__(self) -> None:
        dims = as_dims(self.dims)
        mat = np.asarray(self.matrix, dtype=complex)
        d = dims.total_dim
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims.dims}")
        if np.linalg.norm(mat - mat.conj().T) > HERM_TOL:
            raise ValidationError("matrix is not Hermitian within HERM_TOL")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > NORM_TOL:
            raise ValidationError(f"trace {tr} deviates from 1 beyond {NORM_TOL}")
        if np.linalg.eigvalsh(mat).min() < -PSD_TOL:
            raise ValidationError("matrix has an eigenvalue below -PSD_TOL")
        object.__setattr__(self, "matrix", _frozen_array(mat, complex))
        object.__setattr__(self, "dims", dims)


@dataclass(frozen=True)
class GateMatrix:
    """Unitary matrix acting on the tensor-product space described by dims."""

    matrix: np.ndarray
    dims: SubsystemDims

    def __post_init__(self) -> None:
        dims = as_dims(self.dims)
        mat = np.asarray(self.matrix, dtype=complex)
        d = dims.total_dim
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims.dims}")
        if np.linalg.norm(mat.conj().T @ mat - np.eye(d)) > UNITARY_TOL:
            raise ValidationError("matrix is not unitary within UNITARY_TOL")
        object.__setattr__(self, "matrix", _frozen_array(mat, complex))
        object.__setattr__(self, "dims", dims)


def flatten_index(multi_index: Sequence[int], dims: DimsLike) -> int:
    """Flat index of a per-party multi-index, party 1 most significant.

    Example: ([1, 0, 2], dims [2, 3, 3]) -> 1*9 + 0*3 + 2 = 11.
    """
    dims = as_dims(dims)
    if len(multi_index) != dims.n_parties:
        raise IndexError(
            f"multi-index length {len(multi_index)} != number of parties {dims.n_parties}"
        )
    flat = 0
    for j, d in zip(multi_index, dims):
        if not 0 <= j < d:
            raise IndexError(f"index component {j} out of range for local dimension {d}")
        flat = flat * d + j
    return flat


def unflatten_index(flat: int, dims: DimsLike) -> tuple[int, ...]:
    """Inverse of flatten_index."""
    dims = as_dims(dims)
    if not 0 <= flat < dims.total_dim:
        raise IndexError(f"flat index {flat} out of range for total dimension {dims.total_dim}")
    out = []
    for d in reversed(dims.dims):
        out.append(flat % d)
        flat //= d
    return tuple(reversed(out))


def basis_state(dims: DimsLike, multi_index: Sequence[int]) -> PureState:
    """Computational basis state |j_1 ... j_n>."""
    dims = as_dims(dims)
    amps = np.zeros(dims.total_dim, dtype=complex)
    amps[flatten_index(multi_index, dims)] = 1.0
    return PureState(amps, dims)


def product_state(local_vectors: Sequence[np.ndarray]) -> PureState:
    """Tensor product of local state vectors, normalized."""
    amps = reduce(np.kron, [np.asarray(v, dtype=complex).reshape(-1) for v in local_vectors])
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise ValueError("product of local vectors is the zero vector")
    dims = SubsystemDims(tuple(len(np.ravel(v)) for v in local_vectors))
    return PureState(amps / norm, dims)


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of square matrices, in party order (party 1 leftmost)."""
    mats = [np.asarray(f, dtype=complex) for f in factors]
    for m in mats:
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("kron_all expects square matrices")
    return reduce(np.kron, mats)


def apply_gate(gate: GateMatrix, state: PureState) -> PureState:
    """Apply a unitary gate to a state; the state keeps its party structure."""
    if gate.dims.total_dim != state.dims.total_dim:
        raise ValueError(
            f"gate dimension {gate.dims.total_dim} != state dimension {state.dims.total_dim}"
        )
    out = gate.matrix @ state.amplitudes
    return PureState(out / np.linalg.norm(out), state.dims)


def _check_parties(parties: Iterable[int], n: int) -> frozenset[int]:
    traced = frozenset(int(p) for p in parties)
    if any(p < 1 or p > n for p in traced):
        raise ValueError(f"party labels must lie in 1..{n}, got {sorted(traced)}")
    return traced


def partial_trace(state: PureState, traced: Iterable[int]) -> DensityOperator:
    """Reduced density operator of a pure state after tracing out parties.

    Works by reshaping the amplitudes into a (kept x traced) matrix A and
    forming A A^dagger, never materializing the full projector.  Tracing an
    empty set returns the projector onto the state; tracing every party
    returns the 1x1 matrix [[1]] (a single trivial party of dimension 1).
    """
    n = state.dims.n_parties
    traced_set = _check_parties(traced, n)
    if not traced_set:
        proj = np.outer(state.amplitudes, state.amplitudes.conj())
        return DensityOperator(proj, state.dims)
    kept = [p for p in range(1, n + 1) if p not in traced_set]
    if not kept:
        return DensityOperator(np.array([[1.0 + 0j]]), SubsystemDims((1,)))
    t = state.tensor()
    perm = [p - 1 for p in kept] + [p - 1 for p in sorted(traced_set)]
    d_kept = state.dims.subset_dim(kept)
    a = np.transpose(t, perm).reshape(d_kept, -1)
    return DensityOperator(a @ a.conj().T, SubsystemDims(tuple(state.dims[p - 1] for p in kept)))


def partial_trace_density(rho: DensityOperator, traced: Iterable[int]) -> DensityOperator:
    """Partial trace of a density operator over the given parties."""
    n = rho.dims.n_parties
    traced_set = _check_parties(traced, n)
    if not traced_set:
        return rho
    kept = [p for p in range(1, n + 1) if p not in traced_set]
    if not kept:
        return DensityOperator(np.array([[np.trace(rho.matrix)]]), SubsystemDims((1,)))
    shape = rho.dims.dims
    t = rho.matrix.reshape(shape + shape)
    for ax in sorted(traced_set, reverse=True):
        k = t.ndim // 2
        t = np.trace(t, axis1=ax - 1, axis2=k + ax - 1)
    d_kept = rho.dims.subset_dim(kept)
    return DensityOperator(
        t.reshape(d_kept, d_kept), SubsystemDims(tuple(rho.dims[p - 1] for p in kept))
    )


def purity(rho: DensityOperator) -> float:
    """tr(rho^2), the squared Frobenius norm of a Hermitian rho."""
    return float(np.sum(np.abs(rho.matrix) ** 2))


def reduction_purity(
    amplitudes: np.ndarray, dims: DimsLike, traced: Iterable[int]
) -> np.ndarray | float:
    """Purity of the reduction of pure states after tracing out parties.

    ``amplitudes`` may carry leading batch axes: shape (..., total_dim).
    Computed as ||G||_F^2 with G the Gram matrix of the (kept x traced)
    reshaped amplitudes, taken on the smaller side; this avoids building
    the reduced density matrix for every batch element.
    """
    dims = as_dims(dims)
    n = dims.n_parties
    traced_set = _check_parties(traced, n)
    amps = np.asarray(amplitudes, dtype=complex)
    batch_shape = amps.shape[:-1]
    if amps.shape[-1] != dims.total_dim:
        raise ValueError("amplitude length does not match dims")
    if not traced_set or len(traced_set) == n:
        out = np.sum(np.abs(amps) ** 2, axis=-1) ** 2
        return float(out) if not batch_shape else out
    kept = [p for p in range(1, n + 1) if p not in traced_set]
    t = amps.reshape(batch_shape + dims.dims)
    nb = len(batch_shape)
    perm = list(range(nb)) + [nb + p - 1 for p in kept] + [nb + p - 1 for p in sorted(traced_set)]
    d_kept = dims.subset_dim(kept)
    a = np.transpose(t, perm).reshape(batch_shape + (d_kept, -1))
    if a.shape[-2] <= a.shape[-1]:
        g = a @ np.swapaxes(a.conj(), -1, -2)
    else:
        g = np.swapaxes(a.conj(), -1, -2) @ a
    out = np.sum(np.abs(g) ** 2, axis=(-2, -1))
    return float(out) if not batch_shape else out
