"""Chain specifications, the global spin convention, and magnetization sectors.

Spin convention, fixed once for the whole library:

* a basis state is an integer label; bit 1 at a site means sigma_z = +1
  (spin up), bit 0 means sigma_z = -1 (spin down);
* site 1 occupies the most significant bit, site N the least significant.

Every module builds on this single convention, so full-space and
sector-restricted code paths index tensor factors identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, isfinite

from .errors import DomainError

# Default cap on n_sites whenever a full 2^N-dimensional object is built.
FULL_SPACE_CAP = 14


def site_mask(site: int, n_sites: int) -> int:
    """Bitmask selecting ``site`` (1-based; site 1 = most significant bit)."""
    return 1 << (n_sites - site)


def spin_sign(state: int, site: int, n_sites: int) -> int:
    """sigma_z eigenvalue (+1 or -1) of ``site`` in basis state ``state``."""
    return 1 if state & site_mask(site, n_sites) else -1


@dataclass(frozen=True)
class ChainSpec:
    """Open-chain parameters: per-bond couplings, per-site fields, anisotropy.

    ``couplings[i]`` couples sites i+1 and i+2 (bond i+1 in 1-based terms),
    ``fields[i]`` acts on site i+1.  ``temperature`` of 0 means ground-state
    analysis.  Instances are immutable and safe to share across workers.
    """

    n_sites: int
    couplings: tuple[float, ...]
    fields: tuple[float, ...]
    delta: float
    temperature: float = 0.0

    def __post_init__(self):
        if self.n_sites < 2:
            raise DomainError(f"n_sites must be >= 2, got {self.n_sites}")
        object.__setattr__(self, "couplings", tuple(float(j) for j in self.couplings))
        object.__setattr__(self, "fields", tuple(float(b) for b in self.fields))
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "temperature", float(self.temperature))
        if len(self.couplings) != self.n_sites - 1:
            raise DomainError(
                f"expected {self.n_sites - 1} couplings, got {len(self.couplings)}"
            )
        if len(self.fields) != self.n_sites:
            raise DomainError(
                f"expected {self.n_sites} fields, got {len(self.fields)}"
            )
        values = (*self.couplings, *self.fields, self.delta, self.temperature)
        if not all(isfinite(v) for v in values):
            raise DomainError("chain parameters must be finite")
        if self.temperature < 0:
            raise DomainError("temperature must be nonnegative")

    @classmethod
    def uniform(
        cls,
        n_sites: int,
        coupling: float = 1.0,
        field: float = 0.0,
        delta: float = 0.0,
        temperature: float = 0.0,
    ) -> "ChainSpec":
        """Uniform couplings and a uniform field on every site."""
        return cls(
            n_sites=n_sites,
            couplings=(coupling,) * (n_sites - 1),
            fields=(field,) * n_sites,
            delta=delta,
            temperature=temperature,
        )

    def to_json(self) -> str:
        """Serialize with the exact wire keys; arrays in site order."""
        return json.dumps(
            {
                "n_sites": self.n_sites,
                "couplings": list(self.couplings),
                "fields": list(self.fields),
                "delta": self.delta,
                "temperature": self.temperature,
            }
        )

    @classmethod
    def from_dict(cls, obj: dict) -> "ChainSpec":
        try:
            return cls(
                n_sites=int(obj["n_sites"]),
                couplings=tuple(obj["couplings"]),
                fields=tuple(obj["fields"]),
                delta=float(obj["delta"]),
                temperature=float(obj.get("temperature", 0.0)),
            )
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed chain document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise DomainError("chain document must be a JSON object")
        return cls.from_dict(obj)


@dataclass(frozen=True)
class SectorBasis:
    """All basis states with a fixed number of up spins, ascending.

    ``index_of`` inverts ``states``: index_of[states[m]] == m.
    """

    n_sites: int
    n_up: int
    states: tuple[int, ...]
    index_of: dict[int, int] = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.states)


def build_sector_basis(n_sites: int, n_up: int) -> SectorBasis:
    """Enumerate the C(N, k) states with popcount k in ascending order."""
    if n_sites < 1:
        raise DomainError(f"n_sites must be positive, got {n_sites}")
    if not 0 <= n_up <= n_sites:
        raise DomainError(f"n_up must lie in [0, {n_sites}], got {n_up}")
    states = tuple(
        sorted(sum(1 << b for b in combo) for combo in combinations(range(n_sites), n_up))
    )
    assert len(states) == comb(n_sites, n_up)
    return SectorBasis(
        n_sites=n_sites,
        n_up=n_up,
        states=states,
        index_of={s: m for m, s in enumerate(states)},
    )


def total_spin(n_sites: int, n_up: int) -> Fraction:
    """Total z-spin (N - 2k)/2 of a k-up sector, as an exact rational.

    Kept exact so sector labels can be used as dictionary keys in
    phase-diagram bookkeeping without float comparisons.
    """
    if not 0 <= n_up <= n_sites:
        raise DomainError(f"n_up must lie in [0, {n_sites}], got {n_up}")
    return Fraction(n_sites - 2 * n_up, 2)
