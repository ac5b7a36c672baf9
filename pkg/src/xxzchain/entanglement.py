"""Reduced density matrices and Wootters concurrence for site pairs.

Everything here is real: the chain Hamiltonian is real symmetric, so
eigenvectors, thermal states and reduced states are real as well, and the
conjugation in the spin-flip transform is a no-op.  The concurrence is
evaluated through the all-symmetric product sqrt(rho) rho~ sqrt(rho), which
keeps the lambda spectrum real and nonnegative by construction; the
textbook nonsymmetric route (eigenvalues of rho rho~) is kept available as
an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, SectorBasis, site_mask
from .eigensolver import SpectralDecomposition, ground_space
from .errors import DomainError

# Spin-flip transform sigma_y (x) sigma_y for real states: constant
# antidiagonal pattern; the overall sign is immaterial (applied twice).
SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ]
)

# Multiple of machine epsilon (relative to the top eigenvalue) below which
# an eigenvalue of a density matrix is indistinguishable from roundoff and
# treated as an exact zero before taking square roots.
_NOISE_FLOOR = 64.0 * np.finfo(float).eps


@dataclass(frozen=True)
class PureState:
    """Normalized real pure state, stored either over the full 2^N basis or
    over a magnetization sector (``basis`` set, amplitudes sector-indexed)."""

    n_sites: int
    amplitudes: np.ndarray
    basis: SectorBasis | None = None

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=float)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        expected = (1 << self.n_sites) if self.basis is None else len(self.basis)
        if amps.shape != (expected,):
            raise DomainError(
                f"expected {expected} amplitudes, got shape {amps.shape}"
            )
        if self.basis is not None and self.basis.n_sites != self.n_sites:
            raise DomainError("sector basis does not match n_sites")
        norm2 = float(amps @ amps)
        if abs(norm2 - 1.0) > 1e-12:
            raise DomainError(f"state not normalized: sum of squares = {norm2!r}")

    @classmethod
    def from_full(cls, n_sites: int, amplitudes) -> "PureState":
        return cls(n_sites=n_sites, amplitudes=amplitudes)

    @classmethod
    def from_sector(cls, basis: SectorBasis, amplitudes) -> "PureState":
        return cls(n_sites=basis.n_sites, amplitudes=amplitudes, basis=basis)

    def full_amplitudes(self) -> np.ndarray:
        """Embed into the full 2^N space (small chains only)."""
        if self.basis is None:
            return self.amplitudes
        full = np.zeros(1 << self.n_sites)
        full[list(self.basis.states)] = self.amplitudes
        return full


@dataclass(frozen=True)
class TwoQubitDensityMatrix:
    """4x4 reduced state of an ordered site pair, basis |00>,|01>,|10>,|11>
    of (site i, site j) with i < j; bit 1 = spin up."""

    sites: tuple[int, int]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "sites", (int(self.sites[0]), int(self.sites[1])))
        if m.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got {m.shape}")
        if self.sites[0] >= self.sites[1]:
            raise DomainError(f"sites must be ordered i < j, got {self.sites}")
        if not np.allclose(m, m.T, rtol=0.0, atol=1e-12):
            raise DomainError("reduced state is not symmetric")
        if abs(np.trace(m) - 1.0) > 1e-12:
            raise DomainError(f"reduced state trace is {np.trace(m)!r}, not 1")
        if np.linalg.eigvalsh(m)[0] < -1e-10:
            raise DomainError("reduced state has a significantly negative eigenvalue")


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    lambdas: tuple[float, float, float, float]


def _pair_sites_checked(n_sites: int, i: int, j: int) -> tuple[int, int]:
    if not (1 <= i <= n_sites and 1 <= j <= n_sites):
        raise DomainError(f"sites ({i}, {j}) out of range for {n_sites} sites")
    if i == j:
        raise DomainError("need two distinct sites")
    return (i, j) if i < j else (j, i)


def _reduce_pair_full(amps: np.ndarray, n: int, i: int, j: int) -> np.ndarray:
    t = amps.reshape([2] * n)
    t = np.moveaxis(t, [i - 1, j - 1], [0, 1]).reshape(4, -1)
    return t @ t.T


def _reduce_pair_sector(basis: SectorBasis, amps: np.ndarray, i: int, j: int) -> np.ndarray:
    # Group sector states by environment bit pattern; states sharing an
    # environment differ only on sites (i, j) and contribute coherences.
    n = basis.n_sites
    mi, mj = site_mask(i, n), site_mask(j, n)
    env_vectors: dict[int, np.ndarray] = {}
    for amp, st in zip(amps, basis.states):
        slot = 2 * bool(st & mi) + bool(st & mj)
        env = st & ~(mi | mj)
        vec = env_vectors.get(env)
        if vec is None:
            vec = np.zeros(4)
            env_vectors[env] = vec
        vec[slot] += amp
    rho = np.zeros((4, 4))
    for vec in env_vectors.values():
        rho += np.outer(vec, vec)
    return rho


def reduce_pair(state: PureState, i: int, j: int) -> TwoQubitDensityMatrix:
    """Partial trace of |psi><psi| onto sites (i, j)."""
    i, j = _pair_sites_checked(state.n_sites, i, j)
    if state.basis is None:
        rho = _reduce_pair_full(state.amplitudes, state.n_sites, i, j)
    else:
        rho = _reduce_pair_sector(state.basis, state.amplitudes, i, j)
    return TwoQubitDensityMatrix(sites=(i, j), matrix=rho)


def reduce_pair_mixed(rho_full: np.ndarray, i: int, j: int) -> TwoQubitDensityMatrix:
    """Partial trace of a full-space density matrix onto sites (i, j)."""
    rho_full = np.asarray(rho_full, dtype=float)
    dim = rho_full.shape[0]
    if rho_full.shape != (dim, dim) or dim & (dim - 1):
        raise DomainError(f"expected a 2^N x 2^N matrix, got shape {rho_full.shape}")
    n = dim.bit_length() - 1
    i, j = _pair_sites_checked(n, i, j)
    t = rho_full.reshape([2] * (2 * n))
    t = np.moveaxis(t, [i - 1, j - 1, n + i - 1, n + j - 1], [0, 1, 2, 3])
    env = 1 << (n - 2)
    t = t.reshape(2, 2, 2, 2, env, env)
    rho = np.einsum("abcdee->abcd", t).reshape(4, 4)
    return TwoQubitDensityMatrix(sites=(i, j), matrix=rho)


def thermal_state(spec: ChainSpec, dec: SpectralDecomposition) -> np.ndarray:
    """Boltzmann mixture over the full spectrum at spec.temperature.

    Weights are energy-shifted by the ground energy so large gaps underflow
    to zero instead of overflowing.
    """
    if spec.temperature <= 0:
        raise DomainError(
            "thermal_state needs temperature > 0; use ground_state_density at T = 0"
        )
    w = dec.eigenvalues
    weights = np.exp(-(w - w[0]) / spec.temperature)
    weights /= weights.sum()
    v = dec.eigenvectors
    return (v * weights) @ v.T


def ground_state_density(dec: SpectralDecomposition) -> np.ndarray:
    """Equal-weight mixture over the (possibly degenerate) ground space;
    the T -> 0+ limit of the thermal state."""
    idx = ground_space(dec)
    v = dec.eigenvectors[:, idx]
    return (v @ v.T) / len(idx)


def _as_matrix(rho) -> np.ndarray:
    if isinstance(rho, TwoQubitDensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=float)


def _sqrt_psd(m: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    w[w < _NOISE_FLOOR * w.max(initial=0.0)] = 0.0
    return (v * np.sqrt(w)) @ v.T


def concurrence(rho) -> ConcurrenceResult:
    """Wootters concurrence of a real two-qubit density matrix.

    The lambdas are the descending square roots of the eigenvalues of the
    symmetric product sqrt(rho) rho~ sqrt(rho), with rho~ the spin-flipped
    state.  Because rho~ = F rho F, that product equals K^2 for the
    symmetric matrix K = sqrt(rho) F sqrt(rho), so the lambdas are read off
    as |eig(K)| without ever squaring: exact zeros stay at roundoff size
    instead of being amplified to sqrt(eps).  The value is
    max(0, l1 - l2 - l3 - l4).
    """
    m = _as_matrix(rho)
    if m.shape != (4, 4):
        raise DomainError(f"expected a 4x4 density matrix, got shape {m.shape}")
    if abs(np.trace(m) - 1.0) > 1e-8:
        raise DomainError(f"density matrix trace deviates from 1: {np.trace(m)!r}")
    if np.linalg.eigvalsh(m)[0] < -1e-8:
        raise DomainError("density matrix is significantly non-positive")
    root = _sqrt_psd(m)
    lambdas = np.sort(np.abs(np.linalg.eigvalsh(root @ SPIN_FLIP @ root)))[::-1]
    value = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]
    return ConcurrenceResult(
        value=max(0.0, float(value)), lambdas=tuple(float(x) for x in lambdas)
    )


def concurrence_lambdas_direct(rho) -> np.ndarray:
    """Cross-check path: lambdas from the nonsymmetric product rho rho~."""
    m = _as_matrix(rho)
    flipped = SPIN_FLIP @ m @ SPIN_FLIP
    eigs = np.sort(np.real(np.linalg.eigvals(m @ flipped)))
    return np.sqrt(np.clip(eigs, 0.0, None))[::-1]
