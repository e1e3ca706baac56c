"""Pauli and collective angular-momentum machinery.

Collective spin is J = (1/2) sum_i sigma_i.  Generalized collective operators
attach a (possibly different) orthonormal right-handed triad to every qubit
and sum the projections; with right-handed triads the perpendicular pair
obeys [J_perp, J_perp'] = i J_0.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import MeanSpinZeroError, ValidationError
from .states import DensityMatrix, PureState, SymmetricState

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
IDENTITY2 = np.eye(2, dtype=complex)

UNIT_TOL = 1e-12
UNITARY_TOL = 1e-12
MEAN_SPIN_TOL = 1e-10
DEGENERATE_AXIS_TOL = 1e-8

Z_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class Direction:
    """Unit 3-vector."""

    components: np.ndarray

    def __post_init__(self):
        v = np.array(self.components, dtype=float)
        if v.shape != (3,):
            raise ValidationError(f"a direction needs 3 components, got shape {v.shape}")
        if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
            raise ValidationError("direction is not a unit vector")
        v.setflags(write=False)
        object.__setattr__(self, "components", v)


def unit(v):
    """Normalize a 3-vector into a Direction."""
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValidationError("cannot normalize the zero vector")
    return Direction(v / norm)


@dataclass(frozen=True)
class Frame:
    """Right-handed orthonormal triad (n_perp, n_perp_prime, n0)."""

    n_perp: Direction
    n_perp_prime: Direction
    n0: Direction

    def __post_init__(self):
        e1 = self.n_perp.components
        e2 = self.n_perp_prime.components
        e3 = self.n0.components
        for a, b in ((e1, e2), (e1, e3), (e2, e3)):
            if abs(a @ b) > UNIT_TOL:
                raise ValidationError("frame axes are not pairwise orthogonal")
        if np.linalg.norm(np.cross(e1, e2) - e3) > 1e-10:
            raise ValidationError("frame is not right-handed")


@dataclass(frozen=True)
class LocalUnitary:
    """One 2x2 unitary per qubit, applied as U_1 x U_2 x ... x U_N."""

    per_qubit: tuple

    def __post_init__(self):
        mats = []
        for idx, u in enumerate(self.per_qubit):
            m = np.array(u, dtype=complex)
            if m.shape != (2, 2):
                raise ValidationError(f"unitary for qubit {idx + 1} is not 2x2")
            if np.max(np.abs(m.conj().T @ m - IDENTITY2)) > UNITARY_TOL:
                raise ValidationError(f"matrix for qubit {idx + 1} is not unitary")
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "per_qubit", tuple(mats))

    @property
    def num_qubits(self):
        return len(self.per_qubit)

    @classmethod
    def identity(cls, num_qubits):
        return cls(tuple(IDENTITY2 for _ in range(num_qubits)))

    @classmethod
    def single(cls, num_qubits, qubit, u):
        """Identity everywhere except `u` on the given 1-based qubit."""
        mats = [IDENTITY2] * num_qubits
        mats[qubit - 1] = u
        return cls(tuple(mats))


def _apply_pure(amps, num_qubits, qubit, op):
    """Apply a 2x2 operator to one qubit (1-based) of an amplitude vector."""
    t = amps.reshape([2] * num_qubits)
    t = np.moveaxis(t, qubit - 1, 0)
    t = (op @ t.reshape(2, -1)).reshape([2] * num_qubits)
    return np.moveaxis(t, 0, qubit - 1).reshape(-1)


def _apply_density_left(mat, num_qubits, qubit, op):
    """op acting on the row index of a density matrix (op @ rho)."""
    dim = 2**num_qubits
    t = mat.reshape([2] * num_qubits + [dim])
    t = np.moveaxis(t, qubit - 1, 0)
    t = (op @ t.reshape(2, -1)).reshape([2] * num_qubits + [dim])
    return np.moveaxis(t, 0, qubit - 1).reshape(dim, dim)


def _apply_density_right(mat, num_qubits, qubit, op):
    """op acting on the column index of a density matrix (rho @ op)."""
    # rho @ op = (op^dag @ rho^dag)^dag
    return _apply_density_left(mat.conj().T, num_qubits, qubit, op.conj().T).conj().T


def apply_local_unitaries(state, local_unitary):
    """Transform a PureState or DensityMatrix qubit-wise."""
    if local_unitary.num_qubits != state.num_qubits:
        raise ValidationError(
            f"LocalUnitary acts on {local_unitary.num_qubits} qubits, "
            f"state has {state.num_qubits}")
    n = state.num_qubits
    if isinstance(state, PureState):
        amps = state.amplitudes
        for q, u in enumerate(local_unitary.per_qubit, start=1):
            amps = _apply_pure(amps, n, q, u)
        return PureState(n, amps)
    if isinstance(state, DensityMatrix):
        mat = state.matrix
        for q, u in enumerate(local_unitary.per_qubit, start=1):
            mat = _apply_density_left(mat, n, q, u)
            mat = _apply_density_right(mat, n, q, u.conj().T)
        mat = (mat + mat.conj().T) / 2
        return DensityMatrix(n, mat)
    raise ValidationError(f"cannot apply local unitaries to {type(state).__name__}")


def su2_to_so3(u):
    """Rotation matrix O with O_ab = (1/2) Tr(sigma_a u sigma_b u^dag).

    Bloch vectors transform as s -> O s when the state transforms by u.
    """
    m = np.asarray(u, dtype=complex)
    if m.shape != (2, 2) or np.max(np.abs(m.conj().T @ m - IDENTITY2)) > UNITARY_TOL:
        raise ValidationError("input is not a 2x2 unitary")
    out = np.empty((3, 3))
    for a in range(3):
        for b in range(3):
            out[a, b] = 0.5 * np.trace(PAULIS[a] @ m @ PAULIS[b] @ m.conj().T).real
    return out


def bloch_expectations(state, qubit_index):
    """(<sigma_x>, <sigma_y>, <sigma_z>) of one qubit's reduced state."""
    n = state.num_qubits
    if not 1 <= qubit_index <= n:
        raise ValidationError(f"qubit index {qubit_index} outside 1..{n}")
    if isinstance(state, PureState):
        amps = state.amplitudes
        return np.array([
            np.vdot(amps, _apply_pure(amps, n, qubit_index, p)).real for p in PAULIS])
    if isinstance(state, DensityMatrix):
        mat = state.matrix
        return np.array([
            np.trace(_apply_density_left(mat, n, qubit_index, p)).real for p in PAULIS])
    raise ValidationError(f"cannot take Bloch expectations of {type(state).__name__}")


def bloch_vectors(state):
    """All N Bloch vectors as an (N, 3) array."""
    return np.stack([bloch_expectations(state, q) for q in range(1, state.num_qubits + 1)])


def dicke_collective_operators(num_qubits):
    """(J_x, J_y, J_z) on the (N+1)-dimensional Dicke basis, k = qubits in |0>."""
    n = num_qubits
    k = np.arange(n + 1)
    jz = np.diag(k - n / 2).astype(complex)
    raise_coeff = np.sqrt((n - k[:-1]) * (k[:-1] + 1))
    jplus = np.diag(raise_coeff, -1).astype(complex)  # maps k -> k+1
    jx = (jplus + jplus.conj().T) / 2
    jy = (jplus - jplus.conj().T) / (2j)
    return jx, jy, jz


def total_spin_expectation(state):
    """<J> = (1/2) sum_i <sigma_i> as a real 3-vector."""
    if isinstance(state, SymmetricState):
        jx, jy, jz = dicke_collective_operators(state.num_qubits)
        d = state.dicke_amplitudes
        return np.array([np.vdot(d, op @ d).real for op in (jx, jy, jz)])
    return 0.5 * bloch_vectors(state).sum(axis=0)


def mean_spin_direction(state):
    """Unit vector along <J>; raises MeanSpinZeroError when |<J>| <= 1e-10."""
    j = total_spin_expectation(state)
    norm = np.linalg.norm(j)
    if norm <= MEAN_SPIN_TOL:
        raise MeanSpinZeroError(
            "collective mean spin vanishes; mean-spin squeezing is undefined")
    return Direction(j / norm)


def complete_frame(n0):
    """Deterministic right-handed frame with the given n0.

    n_perp = normalize(z x n0), falling back to x when n0 is (anti)parallel
    to z; n_perp_prime = n0 x n_perp.  A Gram-Schmidt projection removes the
    rounding error that the near-degenerate cross product amplifies, so the
    frame meets the orthogonality invariant for every n0.
    """
    v = n0.components
    c = np.cross(Z_AXIS, v)
    if np.linalg.norm(c) < DEGENERATE_AXIS_TOL:
        c = np.array([1.0, 0.0, 0.0])
    e1 = c - (c @ v) * v
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(v, e1)
    e2 /= np.linalg.norm(e2)
    return Frame(Direction(e1), Direction(e2), n0)


def _projected_spin_applications(state, directions):
    """Apply J.n_i (per-qubit directions) to a pure state or density matrix."""
    n = state.num_qubits
    ops = [0.5 * np.einsum("a,aij->ij", d, PAULIS) for d in directions]
    if isinstance(state, PureState):
        out = np.zeros_like(state.amplitudes)
        for q, op in enumerate(ops, start=1):
            out = out + _apply_pure(state.amplitudes, n, q, op)
        return out
    out = np.zeros_like(state.matrix)
    for q, op in enumerate(ops, start=1):
        out = out + _apply_density_left(state.matrix, n, q, op)
    return out


def collective_moment(state, frames):
    """Mean of J_0 and 2x2 covariance of (J_perp, J_perp') for per-qubit frames.

    Covariances use symmetrized second moments minus products of first
    moments, so the frames need not be aligned with anything special.
    """
    n = state.num_qubits
    if len(frames) != n:
        raise ValidationError(f"expected {n} frames, got {len(frames)}")
    perp = [f.n_perp.components for f in frames]
    perp_prime = [f.n_perp_prime.components for f in frames]
    axis0 = [f.n0.components for f in frames]
    if isinstance(state, PureState):
        psi = state.amplitudes
        a = _projected_spin_applications(state, perp)
        b = _projected_spin_applications(state, perp_prime)
        c = _projected_spin_applications(state, axis0)
        mean_j0 = np.vdot(psi, c).real
        ma = np.vdot(psi, a).real
        mb = np.vdot(psi, b).real
        cov = np.array([
            [np.vdot(a, a).real - ma**2, np.vdot(a, b).real - ma * mb],
            [np.vdot(a, b).real - ma * mb, np.vdot(b, b).real - mb**2]])
        return mean_j0, cov
    if isinstance(state, DensityMatrix):
        a = _projected_spin_applications(state, perp)
        b = _projected_spin_applications(state, perp_prime)
        c = _projected_spin_applications(state, axis0)
        mean_j0 = np.trace(c).real
        ma = np.trace(a).real
        mb = np.trace(b).real
        # Re Tr(A (B rho)) is the symmetrized second moment for Hermitian A, B.
        saa = _second_moment(state, perp, a)
        sab = _second_moment(state, perp, b)
        sbb = _second_moment(state, perp_prime, b)
        cov = np.array([
            [saa - ma**2, sab - ma * mb],
            [sab - ma * mb, sbb - mb**2]])
        return mean_j0, cov
    raise ValidationError(f"collective_moment does not accept {type(state).__name__}")


def _second_moment(state, directions, applied):
    """Re Tr(J_dir @ applied) where applied = J_other @ rho."""
    n = state.num_qubits
    ops = [0.5 * np.einsum("a,aij->ij", d, PAULIS) for d in directions]
    total = 0.0
    for q, op in enumerate(ops, start=1):
        total += np.trace(_apply_density_left(applied, n, q, op)).real
    return total


def su2_rotation(axis, angle):
    """SU(2) element exp(-i angle/2 axis.sigma) for a unit axis."""
    ax = np.asarray(axis, dtype=float)
    ax = ax / np.linalg.norm(ax)
    half = angle / 2
    return math.cos(half) * IDENTITY2 - 1j * math.sin(half) * np.einsum(
        "a,aij->ij", ax, PAULIS)


def rotation_matrix(axis, angle):
    """SO(3) rotation by `angle` about a unit `axis` (Rodrigues form)."""
    ax = np.asarray(axis, dtype=float)
    ax = ax / np.linalg.norm(ax)
    k = np.array([
        [0.0, -ax[2], ax[1]],
        [ax[2], 0.0, -ax[0]],
        [-ax[1], ax[0], 0.0]])
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * (k @ k)


def bloch_alignment_unitary(bloch):
    """Minimal-angle SU(2) rotation taking a Bloch vector to +z.

    The rotation axis is normalize(s x z); a vector along -z is rotated
    about x by pi.
    """
    s = np.asarray(bloch, dtype=float)
    norm = np.linalg.norm(s)
    if norm == 0.0:
        raise ValidationError("cannot align a zero Bloch vector")
    v = s / norm
    cos_angle = float(np.clip(v @ Z_AXIS, -1.0, 1.0))
    if cos_angle > 1.0 - 1e-14:
        return IDENTITY2.copy()
    if cos_angle < -1.0 + 1e-14:
        return su2_rotation(np.array([1.0, 0.0, 0.0]), math.pi)
    axis = np.cross(v, Z_AXIS)
    return su2_rotation(axis, math.acos(cos_angle))


def alignment_rotation_matrix(bloch):
    """SO(3) counterpart of bloch_alignment_unitary."""
    s = np.asarray(bloch, dtype=float)
    norm = np.linalg.norm(s)
    if norm == 0.0:
        raise ValidationError("cannot align a zero Bloch vector")
    v = s / norm
    cos_angle = float(np.clip(v @ Z_AXIS, -1.0, 1.0))
    if cos_angle > 1.0 - 1e-14:
        return np.eye(3)
    if cos_angle < -1.0 + 1e-14:
        return rotation_matrix(np.array([1.0, 0.0, 0.0]), math.pi)
    axis = np.cross(v, Z_AXIS)
    return rotation_matrix(axis, math.acos(cos_angle))
