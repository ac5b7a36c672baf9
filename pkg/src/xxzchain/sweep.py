"""Parameter sweeps: phase scans, concurrence curves, channel sizing.

Grid points are independent pure-function evaluations; rows are emitted in
grid order with no caching, so rerunning any single point reproduces its
row bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import inf, isfinite

import numpy as np

from . import closed_forms
from .chain import FULL_SPACE_CAP, ChainSpec, build_sector_basis
from .channel import design_channel, ratio_profile
from .closed_forms import GroundRegime, beta_for_target, c1n_channel
from .eigensolver import decompose, ground_space
from .entanglement import (
    ground_state_density,
    reduce_pair_mixed,
    concurrence,
    thermal_state,
)
from .errors import DomainError, ResourceCapError
from .hamiltonian import build_full, build_sector

GRID_POINT_CAP = 10**6


@dataclass(frozen=True)
class GridAxis:
    """Either an explicit value list or an inclusive (min, max, step) range."""

    values: tuple[float, ...]

    @classmethod
    def from_range(cls, lo: float, hi: float, step: float) -> "GridAxis":
        if step <= 0:
            raise DomainError(f"grid step must be positive, got {step}")
        if lo > hi:
            raise DomainError(f"grid needs min <= max, got ({lo}, {hi})")
        count = int(np.floor((hi - lo) / step + 1e-9)) + 1
        return cls(values=tuple(lo + step * m for m in range(count)))

    @classmethod
    def from_config(cls, obj) -> "GridAxis":
        if isinstance(obj, (list, tuple)):
            return cls(values=tuple(float(v) for v in obj))
        if isinstance(obj, dict):
            if "values" in obj:
                return cls(values=tuple(float(v) for v in obj["values"]))
            try:
                return cls.from_range(
                    float(obj["min"]), float(obj["max"]), float(obj["step"])
                )
            except KeyError as exc:
                raise DomainError(f"grid axis needs min/max/step or values: {exc}")
        raise DomainError(f"cannot interpret grid axis: {obj!r}")

    def __post_init__(self):
        if not self.values:
            raise DomainError("empty grid axis")
        if not all(isfinite(v) for v in self.values):
            raise DomainError("grid axis values must be finite")
        if len(self.values) > GRID_POINT_CAP:
            raise ResourceCapError(
                f"grid axis with {len(self.values)} points exceeds the cap"
            )


def check_grid_size(*axes: GridAxis, cap: int = GRID_POINT_CAP) -> int:
    total = 1
    for axis in axes:
        total *= len(axis.values)
    if total > cap:
        raise ResourceCapError(f"grid of {total} points exceeds the cap of {cap}")
    return total


@dataclass(frozen=True)
class PhasePoint:
    """Ground-state classification at one (delta, field) node."""

    delta: float
    field: float
    n_up: int
    sector_rank: int
    ground_energy: float
    degeneracy: int
    boundary_concurrence: float


def _popcounts(n_sites: int) -> np.ndarray:
    states = np.arange(1 << n_sites)
    counts = np.zeros(1 << n_sites, dtype=int)
    for s in range(n_sites):
        counts += (states >> s) & 1
    return counts


def phase_scan(template: ChainSpec, delta_axis: GridAxis, field_axis: GridAxis):
    """Classify the full-space ground state over a (delta, B) grid.

    The ground vector is exactly supported on one magnetization sector
    (the Hamiltonian commutes with total sigma_z); the label records that
    sector plus the rank of the ground energy within it.  Caps are checked
    eagerly, before any node is computed; the result streams lazily.
    """
    if template.n_sites > FULL_SPACE_CAP:
        raise ResourceCapError(
            f"phase scan needs n_sites <= {FULL_SPACE_CAP}, got {template.n_sites}"
        )
    check_grid_size(delta_axis, field_axis)
    popcounts = _popcounts(template.n_sites)

    def nodes():
        for delta in delta_axis.values:
            for field in field_axis.values:
                spec = replace(
                    template, delta=delta, fields=(field,) * template.n_sites
                )
                yield classify_ground_state(spec, popcounts)

    return nodes()


def classify_ground_state(spec: ChainSpec, popcounts: np.ndarray | None = None) -> PhasePoint:
    if popcounts is None:
        popcounts = _popcounts(spec.n_sites)
    dec = decompose(build_full(spec))
    idx = ground_space(dec)
    v0 = dec.eigenvectors[:, idx[0]]
    weights = np.bincount(popcounts, weights=v0 * v0, minlength=spec.n_sites + 1)
    n_up = int(np.argmax(weights))
    sector_w = np.linalg.eigvalsh(
        build_sector(spec, build_sector_basis(spec.n_sites, n_up))
    )
    e0 = float(dec.eigenvalues[idx[0]])
    rank = int(np.sum(sector_w < e0 - 1e-9 * (1.0 + abs(e0))))
    rho = reduce_pair_mixed(ground_state_density(dec), 1, spec.n_sites)
    return PhasePoint(
        delta=float(spec.delta),
        field=float(spec.fields[0]),
        n_up=n_up,
        sector_rank=rank,
        ground_energy=e0,
        degeneracy=len(idx),
        boundary_concurrence=concurrence(rho).value,
    )


def concurrence_curve(
    template: ChainSpec,
    pair: tuple[int, int],
    field_axis: GridAxis,
    delta_values: tuple[float, ...],
):
    """Rows (delta, field, concurrence) for the site pair over the grid.

    Uses the ground-state density (equal mixture across degeneracies); a
    positive template temperature switches to the thermal state instead.
    """
    if template.n_sites > FULL_SPACE_CAP:
        raise ResourceCapError(
            f"curve needs n_sites <= {FULL_SPACE_CAP}, got {template.n_sites}"
        )
    check_grid_size(field_axis, GridAxis(values=tuple(delta_values) or (0.0,)))
    i, j = pair

    def rows():
        for delta in delta_values:
            for field in field_axis.values:
                spec = replace(
                    template, delta=delta, fields=(field,) * template.n_sites
                )
                dec = decompose(build_full(spec))
                if spec.temperature > 0:
                    rho_full = thermal_state(spec, dec)
                else:
                    rho_full = ground_state_density(dec)
                value = concurrence(reduce_pair_mixed(rho_full, i, j)).value
                yield (float(delta), float(field), value)

    return rows()


def channel_curve(
    n_values: tuple[int, ...], beta_axis: GridAxis, coupling: float = 1.0
):
    """Rows (N, beta, numeric C1N, profile-formula C1N, max ratio deviation)."""
    odd = [n for n in n_values if n % 2 or n < 4]
    if odd:
        raise DomainError(f"channel curve needs even N >= 4, got {odd}")
    check_grid_size(beta_axis)

    def rows():
        for n in n_values:
            k = n // 2
            for beta in beta_axis.values:
                design = design_channel(n, coupling, beta * coupling / 2.0)
                numeric = design.boundary_concurrence
                closed = c1n_channel(beta, k) if beta > 1.0 else float("nan")
                ratios = np.asarray(ratio_profile(design))
                if beta > 0:
                    deviation = float(np.max(np.abs(ratios - beta) / beta))
                else:
                    deviation = float("inf")
                yield (n, float(beta), numeric, closed, deviation)

    return rows()


def design_report(
    n_sites: int, target: float, coupling: float = 1.0, beta_cap: float = closed_forms.BETA_CAP
) -> dict:
    """Size the bulk field that reaches a target boundary concurrence.

    Forward-verified: the reported beta satisfies
    design_channel(N, J, beta J / 2).boundary_concurrence >= target, found
    by bisection on the exact folded computation (the profile formula only
    serves as a warm start; it is optimistic at small N).
    """
    if n_sites < 4 or n_sites % 2:
        raise DomainError(f"design needs an even chain with >= 4 sites, got {n_sites}")
    if not 0.0 < target < 1.0:
        raise DomainError(f"target must lie in (0, 1), got {target}")
    k = n_sites // 2

    def achieved(beta: float) -> float:
        return design_channel(n_sites, coupling, beta * coupling / 2.0).boundary_concurrence

    at_zero = achieved(0.0)
    if at_zero >= target:
        return {
            "n_sites": n_sites,
            "target": target,
            "status": "already-achieved-at-zero-field",
            "beta": 0.0,
            "bulk_field": 0.0,
            "achieved": at_zero,
        }
    try:
        hi = max(beta_for_target(target, k), 2.0)
    except DomainError:
        hi = 2.0
    while achieved(hi) < target:
        hi *= 2.0
        if hi > beta_cap:
            return {
                "n_sites": n_sites,
                "target": target,
                "status": "unreachable-below-beta-cap",
                "beta": beta_cap,
                "bulk_field": beta_cap * coupling / 2.0,
                "achieved": achieved(beta_cap),
            }
    lo = 0.0
    while hi - lo > 1e-10 * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if achieved(mid) >= target:
            hi = mid
        else:
            lo = mid
    return {
        "n_sites": n_sites,
        "target": target,
        "status": "ok",
        "beta": hi,
        "bulk_field": hi * coupling / 2.0,
        "achieved": achieved(hi),
    }


def _sector_ground_energy(spec: ChainSpec, n_up: int) -> float:
    basis = build_sector_basis(spec.n_sites, n_up)
    return float(np.linalg.eigvalsh(build_sector(spec, basis))[0])


def _crossing_field(
    delta: float, coupling: float, k_low: int, k_high: int, b_max: float
) -> float:
    """Field where the k_low-up and k_high-up sector grounds cross, located
    by bisection to 1e-6 (the k_high sector wins at B = 0)."""

    def gap(field: float) -> float:
        spec = ChainSpec.uniform(4, coupling=coupling, field=field, delta=delta)
        return _sector_ground_energy(spec, k_low) - _sector_ground_energy(spec, k_high)

    lo, hi = 0.0, b_max
    if gap(lo) <= 0.0:
        return 0.0
    while gap(hi) > 0.0:
        hi *= 2.0
        if hi > 1e6:
            return inf
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def numeric_c14_regimes(delta: float, coupling: float = 1.0) -> tuple[GroundRegime, ...]:
    """Numeric version of the 4-site ground-state regime table.

    Boundaries come from bisection on sector ground-level crossings; the
    concurrence in each regime comes from the full ground-state density
    sampled across the regime (it is constant inside a regime, since a
    uniform field does not change sector eigenvectors).
    """
    b1 = _crossing_field(delta, coupling, 1, 2, 1.0 + abs(delta))
    b2 = _crossing_field(delta, coupling, 0, 1, 2.0 + 2.0 * abs(delta))
    spec0 = ChainSpec.uniform(4, coupling=coupling, field=0.0, delta=delta)
    e_two_up = _sector_ground_energy(spec0, 2)
    popcounts = _popcounts(4)

    def regime_concurrence(lo: float, hi: float) -> float:
        if hi == inf:
            samples = (lo + 0.5, lo + 1.0)
        else:
            samples = (lo + 0.25 * (hi - lo), lo + 0.5 * (hi - lo), lo + 0.75 * (hi - lo))
        best = 0.0
        for field in samples:
            point = classify_ground_state(
                ChainSpec.uniform(4, coupling=coupling, field=field, delta=delta),
                popcounts,
            )
            best = max(best, point.boundary_concurrence)
        return best

    rows = []
    edges = [(0.0, b1, 2), (b1, b2, 1), (b2, inf, 0)]
    for lo, hi, n_up in edges:
        if hi <= lo:
            continue
        rows.append(
            GroundRegime(
                b_min=lo,
                b_max=hi,
                n_up=n_up,
                c14_max=regime_concurrence(lo, hi),
                energy_at_zero_field=e_two_up if n_up == 2 else None,
            )
        )
    return tuple(rows)


def table1_rows(delta_values: tuple[float, ...] = (0.0, 0.5, 1.0, 2.0)):
    """Numeric regime table printed beside the quoted reference values.

    Columns: delta, regime index, numeric/reference boundaries and maxima,
    two-up zero-field energies, and absolute deltas where both sides exist.
    """
    for delta in delta_values:
        numeric = numeric_c14_regimes(delta)
        reference = closed_forms.c14_ground_regimes(delta)
        for r, (num, ref) in enumerate(zip(numeric, reference)):
            yield (
                float(delta),
                r,
                num.n_up,
                num.b_min,
                num.b_max,
                ref.b_min,
                ref.b_max,
                abs(num.b_min - ref.b_min),
                (abs(num.b_max - ref.b_max) if ref.b_max != inf else 0.0),
                num.c14_max,
                ref.c14_max,
                abs(num.c14_max - ref.c14_max),
                (num.energy_at_zero_field if num.energy_at_zero_field is not None else float("nan")),
                (ref.energy_at_zero_field if ref.energy_at_zero_field is not None else float("nan")),
            )
