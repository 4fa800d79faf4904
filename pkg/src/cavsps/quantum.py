"""Dense operator algebra for a two-level emitter coupled to one field mode.

Matrices are plain complex numpy arrays; nothing here is sparse because the
truncated spaces stay tiny (a handful of photons).  Basis conventions, fixed
once and used everywhere:

* two-level system basis is excited-first, [|e>, |g>]
* composite states are ordered emitter (x) field, so kron(tls_op, eye(n_fock))
  acts on the emitter and kron(eye(2), field_op) on the field
* a Fock space with cutoff N keeps photon numbers 0..N (dimension N + 1)
"""

from dataclasses import dataclass, field

import numpy as np

TRACE_TOL = 1e-9
HERM_TOL = 1e-10
EIG_FLOOR = -1e-9


def annihilation_operator(cutoff: int) -> np.ndarray:
    """Photon annihilation operator on a Fock space truncated at `cutoff`.

    Parameters
    ----------
    cutoff : int
        Highest retained photon number, must be >= 1.

    Returns
    -------
    (cutoff+1, cutoff+1) complex ndarray with a[n-1, n] = sqrt(n).
    """
    if cutoff < 1:
        raise ValueError("fock cutoff must be at least 1, got %r" % (cutoff,))
    return np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), k=1).astype(complex)


def pauli_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (sigma_z, sigma_plus, sigma_minus) in the excited-first basis.

    sigma_z = diag(+1, -1), sigma_minus takes |e> to |g>, and
    sigma_plus = sigma_minus^dagger.
    """
    sz = np.diag([1.0 + 0j, -1.0 + 0j])
    sm = np.zeros((2, 2), dtype=complex)
    sm[1, 0] = 1.0
    sp = sm.conj().T
    return sz, sp, sm


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two square operators, first factor outermost."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("tensor: first operand is not a square matrix")
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValueError("tensor: second operand is not a square matrix")
    return np.kron(a, b)


def expectation(rho: np.ndarray, op: np.ndarray) -> complex:
    """trace(rho @ op); real to ~1e-10 when op is Hermitian and rho physical."""
    rho = np.asarray(rho)
    op = np.asarray(op)
    if rho.shape != op.shape:
        raise ValueError(
            "expectation: shape mismatch %r vs %r" % (rho.shape, op.shape)
        )
    # trace of the product without forming it
    return complex(np.sum(rho.T * op))


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-norm distance from Hermiticity, ||M - M^dagger||_max."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True)
class HilbertSpace:
    """Composite space of the two-level emitter and one truncated field mode."""

    fock_cutoff: int
    tls_dim: int = 2

    def __post_init__(self):
        if self.tls_dim != 2:
            raise ValueError("emitter subspace is strictly two-level")
        if self.fock_cutoff < 1:
            raise ValueError("fock cutoff must be at least 1")

    @property
    def fock_dim(self) -> int:
        return self.fock_cutoff + 1

    @property
    def total_dim(self) -> int:
        return self.tls_dim * self.fock_dim

    def basis_index(self, tls_excited: bool, n_photons: int) -> int:
        """Flat index of the product basis state |e/g> (x) |n>."""
        if not 0 <= n_photons <= self.fock_cutoff:
            raise ValueError("photon number outside truncation")
        return (0 if tls_excited else 1) * self.fock_dim + n_photons

    # composite-space operators
    def annihilation(self) -> np.ndarray:
        return tensor(np.eye(2, dtype=complex), annihilation_operator(self.fock_cutoff))

    def sigma_z(self) -> np.ndarray:
        sz, _, _ = pauli_operators()
        return tensor(sz, np.eye(self.fock_dim, dtype=complex))

    def sigma_plus(self) -> np.ndarray:
        _, sp, _ = pauli_operators()
        return tensor(sp, np.eye(self.fock_dim, dtype=complex))

    def sigma_minus(self) -> np.ndarray:
        _, _, sm = pauli_operators()
        return tensor(sm, np.eye(self.fock_dim, dtype=complex))


@dataclass(frozen=True)
class DensityMatrix:
    """Validated density matrix on a HilbertSpace.

    Construction checks trace one (1e-9), Hermiticity (1e-10) and
    positive semidefiniteness up to a -1e-9 eigenvalue floor.
    """

    space: HilbertSpace
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        d = self.space.total_dim
        if m.shape != (d, d):
            raise ValueError("density matrix shape %r does not match space dim %d" % (m.shape, d))
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError("density matrix trace %r deviates from 1" % (tr,))
        if hermiticity_defect(m) > HERM_TOL:
            raise ValueError("density matrix is not Hermitian")
        eigs = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
        if eigs.min() < EIG_FLOOR:
            raise ValueError("density matrix has negative eigenvalue %g" % eigs.min())

    @classmethod
    def from_ket(cls, space: HilbertSpace, ket: np.ndarray) -> "DensityMatrix":
        v = np.asarray(ket, dtype=complex).reshape(-1)
        if v.shape[0] != space.total_dim:
            raise ValueError("ket length does not match space dimension")
        norm = np.linalg.norm(v)
        if norm == 0:
            raise ValueError("cannot normalise the zero vector")
        v = v / norm
        return cls(space, np.outer(v, v.conj()))

    @classmethod
    def basis_state(cls, space: HilbertSpace, tls_excited: bool, n_photons: int) -> "DensityMatrix":
        v = np.zeros(space.total_dim, dtype=complex)
        v[space.basis_index(tls_excited, n_photons)] = 1.0
        return cls(space, np.outer(v, v.conj()))

    @classmethod
    def ground(cls, space: HilbertSpace) -> "DensityMatrix":
        """Emitter in |g>, field in vacuum."""
        return cls.basis_state(space, tls_excited=False, n_photons=0)

    @classmethod
    def excited(cls, space: HilbertSpace) -> "DensityMatrix":
        """Emitter in |e>, field in vacuum."""
        return cls.basis_state(space, tls_excited=True, n_photons=0)
