"""Dense symmetric Hamiltonian assembly for open XXZ chains.

H = sum_i J_i (hop 01<->10 on bond i) + (Delta/2) sum_i s_i s_{i+1}
    + sum_i B_i s_i,          s_i = +/-1 per the spin convention.

Matrices are plain float64 numpy arrays.  Off-diagonal entries are written
in both positions from the same coupling constant, so H[i, j] == H[j, i]
holds exactly (never symmetrized after the fact).  The diagonal is pure bit
arithmetic; there is no operator-algebra layer to get tensor order wrong.
"""

from __future__ import annotations

import io

import numpy as np

from .chain import FULL_SPACE_CAP, ChainSpec, SectorBasis
from .errors import DomainError, ResourceCapError


def diagonal_energy(spec: ChainSpec, state: int) -> float:
    """Ising + field energy of a single basis state."""
    n = spec.n_sites
    signs = [2 * ((state >> (n - s)) & 1) - 1 for s in range(1, n + 1)]
    zz = sum(signs[b] * signs[b + 1] for b in range(n - 1))
    zeeman = sum(b_i * s_i for b_i, s_i in zip(spec.fields, signs))
    return 0.5 * spec.delta * zz + zeeman


def build_full(spec: ChainSpec, cap: int = FULL_SPACE_CAP) -> np.ndarray:
    """Full 2^N x 2^N matrix of the chain Hamiltonian."""
    n = spec.n_sites
    if n > cap:
        raise ResourceCapError(
            f"n_sites={n} exceeds the full-space cap of {cap} sites"
        )
    dim = 1 << n
    states = np.arange(dim, dtype=np.int64)
    signs = [((states >> (n - s)) & 1) * 2 - 1 for s in range(1, n + 1)]

    # accumulate exactly as diagonal_energy does, so the sector path slices
    # out of the full matrix bit for bit
    zz = np.zeros(dim, dtype=np.int64)
    for b in range(n - 1):
        zz += signs[b] * signs[b + 1]
    zeeman = np.zeros(dim)
    for s in range(n):
        zeeman += spec.fields[s] * signs[s]
    diag = 0.5 * spec.delta * zz + zeeman

    h = np.zeros((dim, dim))
    h[states, states] = diag
    for b in range(n - 1):
        # bond b couples sites b+1 and b+2; both hop directions get the
        # same constant, so symmetry is exact by construction
        hi = (states >> (n - 1 - b)) & 1
        lo = (states >> (n - 2 - b)) & 1
        movers = states[hi != lo]
        partners = movers ^ ((1 << (n - 1 - b)) | (1 << (n - 2 - b)))
        h[movers, partners] = spec.couplings[b]
    return h


def build_sector(spec: ChainSpec, basis: SectorBasis) -> np.ndarray:
    """Hamiltonian restricted to one magnetization sector.

    Equals the full matrix sliced to the sector's rows/columns, but is
    assembled directly so large-N chains never touch the 2^N space.
    """
    if basis.n_sites != spec.n_sites:
        raise DomainError(
            f"basis is for {basis.n_sites} sites, spec has {spec.n_sites}"
        )
    n = spec.n_sites
    dim = len(basis.states)
    h = np.zeros((dim, dim))
    for a, st in enumerate(basis.states):
        h[a, a] = diagonal_energy(spec, st)
        for b in range(n - 1):
            hi = (st >> (n - 1 - b)) & 1
            lo = (st >> (n - 2 - b)) & 1
            if hi != lo:
                partner = st ^ ((1 << (n - 1 - b)) | (1 << (n - 2 - b)))
                h[a, basis.index_of[partner]] = spec.couplings[b]
    return h


def build_channel(n_sites: int, coupling: float, bulk_field: float) -> ChainSpec:
    """Uniform XX chain with a field on the bulk sites only.

    Sites 1 and N see zero field; sites 2..N-1 see ``bulk_field``.
    """
    if n_sites < 3:
        raise DomainError(f"channel needs at least 3 sites, got {n_sites}")
    fields = (0.0,) + (float(bulk_field),) * (n_sites - 2) + (0.0,)
    return ChainSpec(
        n_sites=n_sites,
        couplings=(float(coupling),) * (n_sites - 1),
        fields=fields,
        delta=0.0,
    )


def matrix_to_csv(matrix: np.ndarray) -> str:
    """Debug dump: one row per line, 17 significant digits."""
    buf = io.StringIO()
    np.savetxt(buf, np.asarray(matrix, dtype=float), fmt="%.17g", delimiter=",")
    return buf.getvalue()
