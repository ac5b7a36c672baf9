"""Deterministic real-symmetric eigendecomposition.

numpy.linalg.eigh (LAPACK) does the factorization; this wrapper pins the
contract the physics modules rely on: eigenvalues ascending, eigenvectors
sign-canonicalized (largest-magnitude entry positive), explicit degeneracy
groups, and bit-for-bit reproducibility for identical input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError

# Relative tolerance for treating eigenvalues as degenerate: exact
# degeneracies only ever differ by roundoff, so this just absorbs noise.
DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues ascending; column m of ``eigenvectors`` pairs with
    ``eigenvalues[m]``; ``degeneracy_groups`` partitions indices by
    near-equal eigenvalue."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_groups: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.eigenvalues)


def _group_degeneracies(w: np.ndarray) -> tuple[tuple[int, ...], ...]:
    groups: list[list[int]] = [[0]]
    for m in range(1, len(w)):
        if w[m] - w[m - 1] <= DEGENERACY_RTOL * (1.0 + abs(w[m - 1])):
            groups[-1].append(m)
        else:
            groups.append([m])
    return tuple(tuple(g) for g in groups)


def decompose(matrix: np.ndarray) -> SpectralDecomposition:
    """Full decomposition of a real symmetric matrix."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc

    # sign canonicalization: largest-magnitude entry of each vector positive
    # (argmax takes the first maximum, so ties resolve deterministically)
    cols = np.arange(v.shape[1])
    pivots = np.argmax(np.abs(v), axis=0)
    v[:, v[pivots, cols] < 0] *= -1.0

    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(
        eigenvalues=w, eigenvectors=v, degeneracy_groups=_group_degeneracies(w)
    )


def ground_space(dec: SpectralDecomposition, rel_tol: float = DEGENERACY_RTOL) -> list[int]:
    """Indices of all states within tolerance of the lowest eigenvalue."""
    if dec.order == 0:
        raise DomainError("empty decomposition")
    w0 = dec.eigenvalues[0]
    cut = w0 + rel_tol * (1.0 + abs(w0))
    return [m for m in range(dec.order) if dec.eigenvalues[m] <= cut]
