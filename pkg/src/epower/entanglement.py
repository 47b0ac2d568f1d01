"""Entanglement measures of multipartite pure states.

The central quantity is the generalized concurrence of a bipartition g|g',

    tau_{g|g'}(psi) = 2 (1 - tr rho_g^2),    rho_g = reduction onto g,

and the one-tangle: the average of tau over all 2^(n-1) - 1 unordered
nontrivial bipartitions of the n parties.  For three qubits the GHZ and W
states score 1 and 8/9 respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Union

import numpy as np

from .tensorops import (
    DimsLike,
    PureState,
    SubsystemDims,
    as_dims,
    partial_trace,
    purity,
    reduction_purity,
)

AME_TOL = 1e-8

UNORDERED_NONTRIVIAL = "unordered_nontrivial"
ORDERED_WITH_TRIVIAL = "ordered_with_trivial"


@dataclass(frozen=True)
class Bipartition:
    """One side of a split of parties {1..n}; the other side is the complement.

    The canonical representative of an unordered bipartition is the side
    containing party 1, which avoids double counting in one-tangle sums.
    """

    left: frozenset[int]
    n_parties: int

    def __post_init__(self) -> None:
        left = frozenset(int(p) for p in self.left)
        if any(p < 1 or p > self.n_parties for p in left):
            raise ValueError(f"party labels must lie in 1..{self.n_parties}, got {sorted(left)}")
        object.__setattr__(self, "left", left)

    @property
    def right(self) -> frozenset[int]:
        return frozenset(range(1, self.n_parties + 1)) - self.left

    @property
    def is_nontrivial(self) -> bool:
        return 0 < len(self.left) < self.n_parties

    def canonical(self) -> "Bipartition":
        """Equivalent bipartition whose left side contains party 1."""
        if 1 in self.left or not self.left:
            return self
        return Bipartition(self.right, self.n_parties)

    def __str__(self) -> str:
        sep = "," if self.n_parties > 9 else ""

        def fmt(side: frozenset[int]) -> str:
            return sep.join(str(p) for p in sorted(side)) or "."

        return f"{fmt(self.left)}|{fmt(self.right)}"

    __repr__ = __str__


@dataclass(frozen=True)
class ExtendedBipartition:
    """Bipartition of a doubled space: a physical split plus primed parties.

    primed_left may be any of the 2^n subsets of {1..n}, the trivial ones
    included.  In the doubled labelling (primed party i' is party n+i) the
    left side is base.left together with {n+i : i in primed_left}.
    """

    base: Bipartition
    primed_left: frozenset[int]

    def __post_init__(self) -> None:
        primed = frozenset(int(p) for p in self.primed_left)
        n = self.base.n_parties
        if any(p < 1 or p > n for p in primed):
            raise ValueError(f"primed party labels must lie in 1..{n}, got {sorted(primed)}")
        object.__setattr__(self, "primed_left", primed)

    @property
    def n_parties(self) -> int:
        return self.base.n_parties

    def left_parties(self) -> frozenset[int]:
        """Left side as party labels of the doubled (2n-party) space."""
        n = self.base.n_parties
        return self.base.left | frozenset(n + p for p in self.primed_left)

    def right_parties(self) -> frozenset[int]:
        n = self.base.n_parties
        return frozenset(range(1, 2 * n + 1)) - self.left_parties()


def extended_bipartitions(base: Bipartition) -> list["ExtendedBipartition"]:
    """All 2^n ordered extensions of a physical bipartition by primed subsets."""
    return [
        ExtendedBipartition(base, primed)
        for primed in enumerate_bipartitions(base.n_parties, ORDERED_WITH_TRIVIAL)
    ]


SplitLike = Union[Bipartition, Iterable[int]]


def as_bipartition(split: SplitLike, n_parties: int) -> Bipartition:
    if isinstance(split, Bipartition):
        if split.n_parties != n_parties:
            raise ValueError(
                f"bipartition is over {split.n_parties} parties, state has {n_parties}"
            )
        return split
    return Bipartition(frozenset(split), n_parties)


def enumerate_bipartitions(n: int, mode: str = UNORDERED_NONTRIVIAL) -> list[frozenset[int]]:
    """Subsets of {1..n} defining bipartitions, in ascending bitmask order.

    Party 1 is the lowest bit.  Mode "unordered_nontrivial" yields the
    2^(n-1) - 1 canonical proper subsets containing party 1; mode
    "ordered_with_trivial" yields all 2^n subsets, empty and full included.
    """
    if n < 1:
        raise ValueError("need at least one party")
    all_subsets = [
        frozenset(p for p in range(1, n + 1) if (mask >> (p - 1)) & 1)
        for mask in range(2**n)
    ]
    if mode == ORDERED_WITH_TRIVIAL:
        return all_subsets
    if mode == UNORDERED_NONTRIVIAL:
        return [s for s in all_subsets if 1 in s and len(s) < n]
    raise ValueError(f"unknown enumeration mode {mode!r}")


def canonical_bipartitions(n: int) -> list[Bipartition]:
    """The 2^(n-1) - 1 canonical unordered nontrivial bipartitions."""
    return [Bipartition(s, n) for s in enumerate_bipartitions(n, UNORDERED_NONTRIVIAL)]


def generalized_concurrence(state: PureState, split: SplitLike) -> float:
    """tau_{g|g'} = 2 (1 - tr rho_left^2), tracing out the right side.

    Symmetric under swapping the two sides, zero exactly on states that are
    product across the split.
    """
    bp = as_bipartition(split, state.dims.n_parties)
    if not bp.is_nontrivial:
        raise ValueError(f"bipartition {bp} is trivial")
    rho_left = partial_trace(state, bp.right)
    return 2.0 * (1.0 - purity(rho_left))


def one_tangle(state: PureState) -> float:
    """Mean generalized concurrence over all unordered nontrivial bipartitions."""
    n = state.dims.n_parties
    if n < 2:
        raise ValueError("one-tangle needs at least two parties")
    splits = canonical_bipartitions(n)
    return sum(generalized_concurrence(state, bp) for bp in splits) / len(splits)


def one_tangle_batch(amplitudes: np.ndarray, dims: DimsLike) -> np.ndarray:
    """Vectorized one-tangle of a batch of state vectors, shape (..., total_dim).

    Agrees with one_tangle elementwise; used by Monte Carlo sweeps where
    building PureState objects per sample would dominate the cost.
    """
    dims = as_dims(dims)
    n = dims.n_parties
    if n < 2:
        raise ValueError("one-tangle needs at least two parties")
    splits = enumerate_bipartitions(n, UNORDERED_NONTRIVIAL)
    amps = np.asarray(amplitudes, dtype=complex)
    total = np.zeros(amps.shape[:-1])
    for left in splits:
        right = frozenset(range(1, n + 1)) - left
        total += 2.0 * (1.0 - reduction_purity(amps, dims, right))
    return total / len(splits)


def concurrence_upper_bound(dims: DimsLike, split: SplitLike) -> Fraction:
    """Largest possible tau across the split: 2 (m - 1)/m, m the smaller side."""
    dims = as_dims(dims)
    bp = as_bipartition(split, dims.n_parties)
    m = min(dims.subset_dim(bp.left), dims.subset_dim(bp.right))
    return Fraction(2 * (m - 1), m)


@dataclass(frozen=True)
class AmeReport:
    """Outcome of an absolute-maximal-entanglement check."""

    passed: bool
    max_deviation: float
    worst_subset: frozenset[int]

    def __bool__(self) -> bool:
        return self.passed


def is_ame(state: PureState, tol: float = AME_TOL) -> AmeReport:
    """Check whether every reduction to floor(n/2) or fewer parties is maximally mixed.

    Requires equal local dimensions d; the target purity of a k-party
    reduction is d^-k.  Reductions larger than floor(n/2) are redundant by
    purity complementarity of pure-state reductions.
    """
    dims = state.dims
    d = dims[0]
    if any(di != d for di in dims):
        raise ValueError("absolute maximal entanglement requires equal local dimensions")
    n = dims.n_parties
    worst = 0.0
    worst_subset: frozenset[int] = frozenset()
    for k in range(1, n // 2 + 1):
        target = d ** (-k)
        for kept in combinations(range(1, n + 1), k):
            traced = frozenset(range(1, n + 1)) - frozenset(kept)
            dev = abs(purity(partial_trace(state, traced)) - target)
            if dev > worst:
                worst = dev
                worst_subset = frozenset(kept)
    return AmeReport(worst <= tol, worst, worst_subset)


def ghz_state(n: int = 3, d: int = 2) -> PureState:
    """(|0...0> + |1...1> + ... + |d-1...d-1>)/sqrt(d) on n parties."""
    dims = SubsystemDims((d,) * n)
    amps = np.zeros(dims.total_dim, dtype=complex)
    step = (dims.total_dim - 1) // (d - 1) if d > 1 else 0
    for j in range(d):
        amps[j * step] = 1.0
    return PureState(amps / np.sqrt(d), dims)


def w_state(n: int = 3) -> PureState:
    """Equal superposition of the n single-excitation qubit basis states."""
    dims = SubsystemDims((2,) * n)
    amps = np.zeros(dims.total_dim, dtype=complex)
    for k in range(n):
        amps[2**k] = 1.0
    return PureState(amps / np.sqrt(n), dims)
