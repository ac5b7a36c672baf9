import math

import numpy as np
import pytest

from xxzchain import (
    ChainSpec,
    ChannelDesign,
    DomainError,
    NumericError,
    ResourceCapError,
    c14_channel,
    c14_impurity_one_up,
    c14_impurity_two_up,
    c15_three_half,
    c1n_channel,
    design_channel,
    fold_single_excitation,
    impurity_profile_chain,
    ratio_profile,
    sector_boundary_concurrence,
    unfold_consistency,
)


def test_fold_four_sites():
    folded = fold_single_excitation(4, 1.0, 5.0)
    assert folded.k == 2
    assert np.array_equal(folded.symmetric, [[-10.0, 1.0], [1.0, 1.0]])
    assert np.array_equal(folded.antisymmetric, [[-10.0, 1.0], [1.0, -1.0]])


def test_fold_six_sites_diagonal():
    folded = fold_single_excitation(6, 1.0, 2.0)
    assert np.allclose(np.diag(folded.symmetric), [-8.0, -4.0, -3.0])
    assert np.allclose(np.diag(folded.antisymmetric), [-8.0, -4.0, -5.0])
    assert folded.symmetric[0, 1] == folded.symmetric[1, 2] == 1.0


def test_fold_zero_field():
    folded = fold_single_excitation(4, 1.0, 0.0)
    assert np.array_equal(folded.symmetric, [[0.0, 1.0], [1.0, 1.0]])
    assert np.array_equal(folded.antisymmetric, [[0.0, 1.0], [1.0, -1.0]])


def test_fold_rejects_odd_or_short_chains():
    with pytest.raises(DomainError):
        fold_single_excitation(5, 1.0, 1.0)
    with pytest.raises(DomainError):
        fold_single_excitation(2, 1.0, 1.0)


@pytest.mark.parametrize("n,b", [(4, 5.0), (8, 3.0), (4, 0.0)])
def test_unfold_consistency_examples(n, b):
    assert unfold_consistency(n, 1.0, b)


def test_unfold_consistency_sweep():
    for n in range(4, 25, 2):
        for b in (0.0, 1.0, 5.0, 20.0):
            assert unfold_consistency(n, 1.0, b, tol=1e-10)


def test_design_zero_field_reference():
    design = design_channel(4, 1.0, 0.0)
    assert design.boundary_concurrence == pytest.approx(0.2763932022500211, abs=1e-12)
    assert design.parity == -1
    assert design.beta == 0.0


def test_design_matches_exact_formula():
    for b in np.linspace(0.0, 10.0, 41):
        design = design_channel(4, 1.0, b)
        assert design.boundary_concurrence == pytest.approx(
            c14_channel(b, 1.0), abs=1e-12
        )


def test_design_twelve_sites_matches_profile_formula():
    design = design_channel(12, 1.0, 5.5)
    assert design.beta == pytest.approx(11.0, abs=1e-15)
    assert design.boundary_concurrence == pytest.approx(
        c1n_channel(11.0, 6), abs=1e-8
    )


def test_design_invariants():
    for n, b in ((4, 2.0), (8, 1.5), (10, 4.0)):
        design = design_channel(n, 1.0, b)
        coeffs = np.asarray(design.coefficients)
        assert 2.0 * float(coeffs @ coeffs) == pytest.approx(1.0, abs=1e-10)
        assert design.boundary_concurrence == pytest.approx(
            2.0 * coeffs[0] ** 2, abs=1e-12
        )
        assert design.ground_energy < 0


def test_design_ground_energy_matches_sector():
    from xxzchain import build_channel, build_sector, build_sector_basis

    design = design_channel(8, 1.0, 2.0)
    sector = build_sector(build_channel(8, 1.0, 2.0), build_sector_basis(8, 1))
    assert design.ground_energy == pytest.approx(
        float(np.linalg.eigvalsh(sector)[0]), abs=1e-10
    )


def test_design_near_degenerate_tie_break_is_deterministic():
    # the cross-parity split decays like beta^(2-2k): far below float
    # resolution here, so the winner comes from the analytic ordering
    design = design_channel(40, 1.0, 10.0)
    assert design.near_degenerate
    assert design.parity == -1
    assert design.boundary_concurrence == pytest.approx(
        c1n_channel(20.0, 20), abs=1e-10
    )
    with pytest.raises(NumericError):
        design_channel(40, 1.0, 10.0, strict_degeneracy=True)


def test_design_small_chains_not_degenerate():
    design = design_channel(4, 1.0, 5.0)
    assert not design.near_degenerate


def test_design_parity_stable_under_joint_rescaling():
    for scale in (0.5, 1.0, 7.0):
        design = design_channel(6, scale, 3.0 * scale)
        assert design.parity == -1
        assert design.beta == pytest.approx(6.0, abs=1e-12)
        assert design.boundary_concurrence == pytest.approx(
            design_channel(6, 1.0, 3.0).boundary_concurrence, abs=1e-10
        )


def test_design_monotone_in_field():
    values = [
        design_channel(8, 1.0, b).boundary_concurrence for b in np.linspace(0, 12, 60)
    ]
    assert all(b2 >= b1 - 1e-12 for b1, b2 in zip(values, values[1:]))


def test_design_converges_to_profile_formula_with_length():
    # the geometric-profile value is exact only asymptotically; the gap
    # shrinks like beta^(2-2k) as the chain grows
    beta = 5.0
    gaps = [
        abs(design_channel(n, 1.0, beta / 2).boundary_concurrence - c1n_channel(beta, n // 2))
        for n in (4, 8, 12, 16)
    ]
    assert all(g2 < g1 / 100 for g1, g2 in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-9


def test_design_domain_errors():
    with pytest.raises(DomainError):
        design_channel(4, 0.0, 1.0)
    with pytest.raises(DomainError):
        design_channel(4, 1.0, -1.0)
    with pytest.raises(DomainError):
        design_channel(7, 1.0, 1.0)


def test_ratio_profile_tracks_beta_toward_the_boundary():
    design = design_channel(8, 1.0, 5.0)  # beta = 10
    ratios = ratio_profile(design)
    assert len(ratios) == 3
    assert abs(ratios[0] - 10.0) / 10.0 < 1e-3
    # the fold-corner ratio sits near beta - 1, not beta
    assert ratios[-1] == pytest.approx(9.0, abs=0.3)


def test_ratio_profile_zero_coefficient_reports_infinity():
    design = ChannelDesign(
        n_sites=6,
        coupling=1.0,
        bulk_field=0.0,
        beta=0.0,
        parity=-1,
        ground_energy=-1.0,
        coefficients=(math.sqrt(0.5), 0.0, 0.0),
        boundary_concurrence=1.0,
    )
    assert ratio_profile(design) == (math.inf, math.inf)


def test_ratio_profile_zero_field_edge():
    design = design_channel(4, 1.0, 0.0)
    (ratio,) = ratio_profile(design)
    assert math.isfinite(ratio) and ratio != 0.0


def test_impurity_profile_layout():
    assert impurity_profile_chain(4, 3.0).couplings == (1.0, 3.0, 1.0)
    assert impurity_profile_chain(6, 3.0).couplings == (1.0, 3.0, 9.0, 3.0, 1.0)
    assert impurity_profile_chain(3, 3.0).couplings == (1.0, 1.0)
    assert impurity_profile_chain(5, 2.0).fields == (0.0,) * 5
    with pytest.raises(DomainError):
        impurity_profile_chain(2, 1.0)
    with pytest.raises(DomainError):
        impurity_profile_chain(4, 0.0)


def test_sector_concurrence_matches_impurity_closed_forms():
    for j in (0.2, 1.0, 3.0, 10.0):
        spec = impurity_profile_chain(4, j)
        assert sector_boundary_concurrence(spec, 1) == pytest.approx(
            c14_impurity_one_up(j), abs=1e-10
        )
        assert sector_boundary_concurrence(spec, 2) == pytest.approx(
            c14_impurity_two_up(j), abs=1e-10
        )
        spec5 = impurity_profile_chain(5, j)
        assert sector_boundary_concurrence(spec5, 1) == pytest.approx(
            c15_three_half(j), abs=1e-10
        )


def test_sector_concurrence_six_site_two_up_peak():
    spec = ChainSpec(
        n_sites=6,
        couplings=(1.0, 2.2207, 2.2207, 2.2207, 1.0),
        fields=(0.0,) * 6,
        delta=0.0,
    )
    assert sector_boundary_concurrence(spec, 2) == pytest.approx(0.05625, abs=1e-4)


def test_sector_concurrence_degenerate_ground_mixes():
    # zero middle bond: the two boundary-bond singlets are exactly
    # degenerate and the equal mixture carries no end-to-end concurrence
    spec = ChainSpec(
        n_sites=4, couplings=(1.0, 0.0, 1.0), fields=(0.0,) * 4, delta=0.0
    )
    assert sector_boundary_concurrence(spec, 1) == pytest.approx(0.0, abs=1e-12)


def test_sector_concurrence_dimension_cap():
    spec = ChainSpec.uniform(16)
    with pytest.raises(ResourceCapError):
        sector_boundary_concurrence(spec, 8, dim_cap=1000)
