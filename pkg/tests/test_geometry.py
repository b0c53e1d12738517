import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from a2gbeam.geometry import (DirectionAngles, GroundPosition, angles_from_xy,
                              angles_of, build_layout, direction_cosines,
                              layout_centers, sample_discs,
                              sample_uniform_in_disc)


def test_nadir_angles():
    a = angles_of(GroundPosition(0, 0, 10_000))
    assert a.zenith == 0 and a.azimuth == 0


def test_45_degree_angles():
    a = angles_of(GroundPosition(10_000, 0, 10_000))
    assert a.zenith == pytest.approx(np.pi / 4, abs=1e-15)
    assert a.azimuth == 0


def test_y_axis_angles():
    a = angles_of(GroundPosition(0, 5000, 10_000))
    assert a.zenith == pytest.approx(0.4636476090008061, rel=1e-14)
    assert a.azimuth == pytest.approx(np.pi / 2, rel=1e-15)


def test_depth_must_be_positive():
    with pytest.raises(ValueError):
        GroundPosition(0, 0, 0)


def test_direction_cosines_examples():
    assert direction_cosines(DirectionAngles(0.0, 0.0)) == (0.0, 0.0)
    px, py = direction_cosines(DirectionAngles(np.pi / 2 - 1e-9, 0.0))
    assert px == pytest.approx(1.0, abs=1e-12) and py == 0.0
    px, py = direction_cosines(DirectionAngles(np.pi / 4, np.pi / 2))
    assert px == pytest.approx(0.0, abs=1e-15)
    assert py == pytest.approx(0.7071067811865476, rel=1e-14)


coords = st.floats(-20_000, 20_000, allow_nan=False)


@given(coords, coords, st.floats(1_000, 25_000))
def test_cosines_bounded_and_match_zenith(x, y, h):
    zen, az = angles_from_xy(x, y, h)
    assert 0 <= zen < np.pi / 2
    assert -np.pi < az <= np.pi
    px, py = direction_cosines(DirectionAngles(zen, az))
    assert px**2 + py**2 == pytest.approx(np.sin(zen) ** 2, abs=1e-14)
    assert px**2 + py**2 <= 1


@given(st.floats(1, 20_000), st.floats(-np.pi, np.pi), st.floats(-np.pi, np.pi))
def test_rotation_equivariance(rho, phi, rot):
    h = 10_000.0
    z0, a0 = angles_from_xy(rho * np.cos(phi), rho * np.sin(phi), h)
    z1, a1 = angles_from_xy(rho * np.cos(phi + rot), rho * np.sin(phi + rot), h)
    assert z1 == pytest.approx(z0, rel=1e-12)
    diff = np.angle(np.exp(1j * (a1 - a0 - rot)))
    assert abs(diff) < 1e-9


def test_first_tier_has_six_cells_at_reuse_distance():
    lay = build_layout(5000, 50, J=1, mci_center=GroundPosition(0, 0, 10_000))
    assert lay.n_interferers == 6
    assert lay.reuse_distance == 200
    d = [np.hypot(c.x, c.y) for c in lay.interferer_centers]
    np.testing.assert_allclose(d, 200, rtol=1e-14)


def test_five_tiers():
    lay = build_layout(5000, 50, J=5, mci_center=GroundPosition(0, 0, 10_000))
    assert lay.n_interferers == 90
    assert lay.tier_sizes == (6, 12, 18, 24, 30)
    d = np.array([np.hypot(c.x, c.y) for c in lay.interferer_centers])
    assert d.max() == pytest.approx(1000, rel=1e-14)
    # every centre sits on an exact multiple of D
    np.testing.assert_allclose(d / 200, np.round(d / 200), atol=1e-12)
    np.testing.assert_array_equal(np.unique(np.round(d / 200)), [1, 2, 3, 4, 5])


def test_first_tier_sixfold_symmetry():
    lay = build_layout(5000, 50, J=1, mci_center=GroundPosition(0, 0, 10_000))
    pts = np.array([[c.x, c.y] for c in lay.interferer_centers])
    c, s = np.cos(np.pi / 3), np.sin(np.pi / 3)
    rotated = pts @ np.array([[c, s], [-s, c]])
    dist = np.linalg.norm(rotated[:, None] - pts[None], axis=2)
    assert dist.min(axis=1).max() < 1e-9


def test_layout_is_centred_on_mci():
    mci = GroundPosition(1500, -700, 10_000)
    centers = layout_centers(build_layout(5000, 75, J=2, mci_center=mci))
    assert tuple(centers[0]) == (1500, -700)
    np.testing.assert_allclose(centers[1:].mean(axis=0), [1500, -700], atol=1e-9)


@pytest.mark.parametrize("R, r", [(0, 50), (5000, 0), (5000, -5), (-1, 50)])
def test_layout_rejects_nonpositive_radii(R, r):
    with pytest.raises(ValueError):
        build_layout(R, r, 1)


def test_disc_radius_zero_returns_center():
    c = GroundPosition(12.5, -3.0, 10_000)
    assert sample_uniform_in_disc(c, 0.0, np.random.default_rng(0)) == c


def test_disc_sampler_moments():
    rng = np.random.default_rng(1)
    n, r = 100_000, 50.0
    pts = sample_discs(np.zeros((n, 2)), r, rng)
    assert np.all(np.abs(pts.mean(axis=0)) < 3 * (r / 2) / np.sqrt(n))
    msd = np.mean((pts**2).sum(axis=1))
    assert msd == pytest.approx(r**2 / 2, rel=0.02)


def test_disc_sampler_chi_square_uniformity():
    rng = np.random.default_rng(2)
    n, r = 50_000, 75.0
    pts = sample_discs(np.zeros((n, 2)), r, rng)
    rho2 = (pts**2).sum(axis=1) / r**2
    ang = np.arctan2(pts[:, 1], pts[:, 0])
    counts, _, _ = np.histogram2d(rho2, ang, bins=[10, 12], range=[[0, 1], [-np.pi, np.pi]])
    _, p = stats.chisquare(counts.ravel())
    assert p > 0.01
