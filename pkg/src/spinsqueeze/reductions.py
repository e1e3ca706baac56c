"""Reduced density matrices and two-qubit pair correlation structure."""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ValidationError
from .operators import PAULIS, dicke_collective_operators
from .states import DensityMatrix, PureState, SymmetricState

ENTRY_TOL = 1e-10
SYMMETRY_TOL = 1e-8

# PAIR_PAULIS[a, b] = sigma_a (x) sigma_b, used to read T off a 4x4 reduction
PAIR_PAULIS = np.stack(
    [np.stack([np.kron(PAULIS[a], PAULIS[b]) for b in range(3)]) for a in range(3)])

SWAP_2 = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)


@dataclass(frozen=True)
class CorrelationMatrix:
    """3x3 real matrix T_ab = <sigma_{i a} sigma_{j b}> for one qubit pair."""

    entries: np.ndarray

    def __post_init__(self):
        t = np.array(self.entries, dtype=float)
        if t.shape != (3, 3):
            raise ValidationError(f"correlation matrix must be 3x3, got {t.shape}")
        if np.max(np.abs(t)) > 1.0 + ENTRY_TOL:
            raise ValidationError("correlation entries must lie in [-1, 1]")
        t.setflags(write=False)
        object.__setattr__(self, "entries", t)


@dataclass(frozen=True)
class AggregateS:
    """Symmetrized sum of pair correlation matrices over all pairs i < j."""

    entries: np.ndarray

    def __post_init__(self):
        s = np.array(self.entries, dtype=float)
        if s.shape != (3, 3):
            raise ValidationError(f"aggregate matrix must be 3x3, got {s.shape}")
        if np.max(np.abs(s - s.T)) > 1e-12:
            raise ValidationError("aggregate matrix must be symmetric")
        s.setflags(write=False)
        object.__setattr__(self, "entries", s)


def reduce(state, subset):
    """Partial trace onto the given 1-based qubit subset (in subset order)."""
    n = state.num_qubits
    subset = list(subset)
    if not subset:
        raise ValidationError("subset must be non-empty")
    if len(set(subset)) != len(subset):
        raise ValidationError(f"subset {subset} contains duplicate indices")
    for q in subset:
        if not 1 <= q <= n:
            raise ValidationError(f"qubit index {q} outside 1..{n}")
    keep = [q - 1 for q in subset]
    rest = [a for a in range(n) if a not in keep]
    k = len(keep)
    if isinstance(state, PureState):
        t = state.amplitudes.reshape([2] * n).transpose(keep + rest)
        m = t.reshape(2**k, -1)
        rho = m @ m.conj().T
        return DensityMatrix(k, _rehermitize(rho))
    if isinstance(state, DensityMatrix):
        t = state.matrix.reshape([2] * (2 * n))
        row = keep + rest
        col = [n + a for a in keep] + [n + a for a in rest]
        t = t.transpose(row + col).reshape(2**k, 2**(n - k), 2**k, 2**(n - k))
        rho = np.einsum("arbr->ab", t)
        return DensityMatrix(k, _rehermitize(rho))
    raise ValidationError(f"cannot reduce a {type(state).__name__}")


def _rehermitize(rho):
    return (rho + rho.conj().T) / 2


def correlation_matrix(state, i, j):
    """Pair correlation matrix T_ab = <sigma_{i a} sigma_{j b}>."""
    if i == j:
        raise ValidationError("correlation matrix needs two distinct qubits")
    rho = reduce(state, [i, j]).matrix
    t = np.einsum("ab,xyba->xy", rho, PAIR_PAULIS).real
    return CorrelationMatrix(np.clip(t, -1.0 - ENTRY_TOL, 1.0 + ENTRY_TOL))


def pair_correlation_sum(state):
    """Sum over ordered pairs i != j of T^(ij); symmetric by construction."""
    n = state.num_qubits
    total = np.zeros((3, 3))
    for i, j in combinations(range(1, n + 1), 2):
        t = correlation_matrix(state, i, j).entries
        total += t + t.T
    return total


def aggregate_S(state):
    """Symmetrized sum of T^(ij) over pairs i < j.

    Callers that need the common-orientation form must rotate the state first;
    this function is a plain sum over the state as given.
    """
    if state.num_qubits < 2:
        raise ValidationError("aggregate correlation needs at least 2 qubits")
    return AggregateS(pair_correlation_sum(state) / 2)


def collective_to_pair_correlations(state):
    """Pair correlation matrix of a symmetric state from collective moments.

    For exchange-symmetric states all pairs share one T, and
    T_ab = (2 <{J_a, J_b}> - N delta_ab) / (N (N - 1)), evaluated entirely in
    the Dicke basis.
    """
    if not isinstance(state, SymmetricState):
        raise ValidationError("expected a SymmetricState")
    n = state.num_qubits
    if n < 2:
        raise ValidationError("pair correlations need at least 2 qubits")
    ops = dicke_collective_operators(n)
    d = state.dicke_amplitudes
    applied = [op @ d for op in ops]
    t = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            anticomm = 2 * np.vdot(applied[a], applied[b]).real
            t[a, b] = (2 * anticomm - (n if a == b else 0)) / (n * (n - 1))
    return CorrelationMatrix(np.clip(t, -1.0 - ENTRY_TOL, 1.0 + ENTRY_TOL))


def is_exchange_symmetric(state, tol=SYMMETRY_TOL):
    """Operational symmetry test: all pair reductions equal and swap-invariant."""
    if isinstance(state, SymmetricState):
        return True
    n = state.num_qubits
    if n < 2:
        return True
    first = reduce(state, [1, 2]).matrix
    if np.max(np.abs(SWAP_2 @ first @ SWAP_2 - first)) > tol:
        return False
    for i, j in combinations(range(1, n + 1), 2):
        if (i, j) == (1, 2):
            continue
        if np.max(np.abs(reduce(state, [i, j]).matrix - first)) > tol:
            return False
    return True
