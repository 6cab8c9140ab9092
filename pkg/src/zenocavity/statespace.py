"""Dense linear algebra on the truncated Fock space and atom (x) field space.

Conventions used everywhere in the package:

* Fock levels |0>..|dim-1>, annihilation a with a[n-1, n] = sqrt(n).
* Joint states are length 2*dim vectors, |+> atom block first, then |->,
  each block indexed by Fock level.
"""

from dataclasses import dataclass

import numpy as np

from .errors import HermiticityError, ParameterError, TruncationError

NORM_ATOL = 1e-9          # state norms
MATRIX_ATOL = 1e-12       # Hermiticity / trace checks


def truncation_dim(nbar_max: float) -> int:
    """Smallest safe truncation for coherent states up to mean photon nbar_max.

    dim >= nbar + 10*sqrt(nbar) + 20 keeps the Poisson tail below ~1e-12.
    """
    if nbar_max < 0:
        raise ParameterError(f"nbar_max must be >= 0, got {nbar_max}")
    return int(np.ceil(nbar_max + 10.0 * np.sqrt(nbar_max) + 20.0))


@dataclass(frozen=True)
class FockSpace:
    """Truncated single-mode Fock space with its ladder and number operators."""

    dim: int
    lowering: np.ndarray   # a
    number: np.ndarray     # a^dag a, real diagonal


def make_fock_space(dim: int) -> FockSpace:
    if dim < 2:
        raise ParameterError(f"Fock dimension must be >= 2, got {dim}")
    a = np.zeros((dim, dim), dtype=complex)
    a[np.arange(dim - 1), np.arange(1, dim)] = np.sqrt(np.arange(1, dim))
    number = np.diag(np.arange(dim, dtype=float))
    return FockSpace(dim=dim, lowering=a, number=number)


def coherent_state(alpha: complex, dim: int) -> np.ndarray:
    """Length-dim coherent-state block, renormalized on the truncated space.

    Entry n is e^{-|alpha|^2/2} alpha^n / sqrt(n!), built iteratively to
    stay finite for large n.
    """
    mod2 = abs(alpha) ** 2
    required = truncation_dim(mod2)
    if dim < mod2 + 10.0 * abs(alpha) + 20.0:
        raise TruncationError(
            f"dim={dim} too small for |alpha|={abs(alpha):.4g}; need >= {required}",
            required_dim=required,
        )
    block = np.empty(dim, dtype=complex)
    block[0] = 1.0
    for n in range(1, dim):
        block[n] = block[n - 1] * alpha / np.sqrt(n)
    block *= np.exp(-mod2 / 2.0)
    return block / np.linalg.norm(block)


@dataclass(frozen=True)
class JointState:
    """Normalized amplitudes on (two-level atom) (x) (truncated Fock space)."""

    amplitudes: np.ndarray
    dim: int

    def __post_init__(self):
        if self.amplitudes.shape != (2 * self.dim,):
            raise ParameterError(
                f"expected {2 * self.dim} amplitudes, got shape {self.amplitudes.shape}"
            )

    @property
    def plus_block(self) -> np.ndarray:
        return self.amplitudes[: self.dim]

    @property
    def minus_block(self) -> np.ndarray:
        return self.amplitudes[self.dim :]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def mean_photon(self) -> float:
        n = np.arange(self.dim, dtype=float)
        p = np.abs(self.plus_block) ** 2 + np.abs(self.minus_block) ** 2
        return float(np.dot(n, p))

    def vacuum_probability(self) -> float:
        return float(abs(self.plus_block[0]) ** 2 + abs(self.minus_block[0]) ** 2)


def joint_state(plus: np.ndarray, minus: np.ndarray) -> JointState:
    return JointState(np.concatenate([plus, minus]), dim=len(plus))


def atom_superposition_vacuum(dim: int) -> JointState:
    """(|+> + |->)/sqrt(2) (x) |0>, the standard initial state."""
    amps = np.zeros(2 * dim, dtype=complex)
    amps[0] = amps[dim] = 1.0 / np.sqrt(2.0)
    return JointState(amps, dim=dim)


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray
    d: int

    def validate(self):
        """Check Hermiticity, unit trace and positivity within tolerances."""
        h_dev = float(np.max(np.abs(self.entries - self.entries.conj().T)))
        if h_dev > MATRIX_ATOL:
            raise HermiticityError(f"density matrix not Hermitian: dev {h_dev:.2e}")
        tr_dev = abs(np.trace(self.entries).real - 1.0)
        if tr_dev > MATRIX_ATOL:
            raise ParameterError(f"trace deviates from 1 by {tr_dev:.2e}")
        w = np.linalg.eigvalsh(self.entries)
        if w.min() < -1e-10:
            raise ParameterError(f"negative eigenvalue {w.min():.2e}")

    def mean_photon(self) -> float:
        return float(np.dot(np.arange(self.d), np.diag(self.entries).real))

    def purity(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))


def reduce_to_field(state: JointState) -> DensityMatrix:
    """Trace out the atom, returning the field's reduced density matrix."""
    p, m = state.plus_block, state.minus_block
    rho = np.outer(p, p.conj()) + np.outer(m, m.conj())
    return DensityMatrix(entries=rho, d=state.dim)


def matrix_exponential_apply(H: np.ndarray, t: float, v: np.ndarray) -> np.ndarray:
    """exp(-i H t) v for Hermitian H, via eigendecomposition."""
    dev = float(np.max(np.abs(H - H.conj().T)))
    if dev > MATRIX_ATOL:
        raise HermiticityError(f"H not Hermitian within {MATRIX_ATOL}: dev {dev:.2e}")
    w, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * w * t)) @ (V.conj().T @ v)
