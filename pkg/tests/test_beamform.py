import numpy as np
import pytest

from a2gbeam.array import ArrayGeometry, steering_vector
from a2gbeam.beamform import (DegenerateDirections, SteeringBank,
                              array_pattern, beamformer, design_span, mpdrb,
                              nsb, nsb_d)
from a2gbeam.geometry import DirectionAngles

from conftest import random_bank


def test_single_user_nsb_is_its_steering_vector():
    bank = SteeringBank(ArrayGeometry(6, 4e-3), [0.3], [1.0])
    w = nsb(bank, 0).weights
    np.testing.assert_allclose(w, bank.vectors()[:, 0], atol=1e-12)


def test_nsb_hand_example_two_users():
    # user 1 at psi_x = 1 on a 2x2 half-wavelength array is orthogonal to nadir
    g = ArrayGeometry(2, 2.0)
    bank = SteeringBank(g, [0.0, np.pi / 2], [0.0, 0.0])
    w = nsb(bank, 0).weights
    np.testing.assert_allclose(w, np.ones(4), atol=1e-12)


def test_nsb_nulls_and_gain(rng):
    for _ in range(20):
        bank = random_bank(rng, M=8, n_users=5)
        E = bank.vectors()
        for i in range(5):
            w = nsb(bank, i).weights
            resp = E.conj().T @ w
            others = np.delete(resp, i)
            assert np.max(np.abs(others)) < 1e-9 * 64
            # gain equals the squared norm of the projected vector
            assert resp[i].real == pytest.approx(np.vdot(w, w).real, rel=1e-9)


def test_nsb_matches_lstsq_projection(rng):
    bank = random_bank(rng, M=6, n_users=4)
    E = bank.vectors()
    others = E[:, 1:]
    coef, *_ = np.linalg.lstsq(others, E[:, 0], rcond=None)
    np.testing.assert_allclose(nsb(bank, 0).weights, E[:, 0] - others @ coef, atol=1e-9)


def test_nsb_d_zeros_derivative_responses(rng):
    for _ in range(10):
        bank = random_bank(rng, M=10, n_users=3, min_sep=0.1)
        d_az, d_zen = bank.derivatives()
        E = bank.vectors()
        for i in range(3):
            w = nsb_d(bank, i).weights
            assert np.max(np.abs(np.delete(E.conj().T @ w, i))) < 1e-6 * 100
            assert np.max(np.abs(d_az.conj().T @ w)) < 1e-6 * 100 * np.abs(d_az).max()
            assert np.max(np.abs(d_zen.conj().T @ w)) < 1e-6 * 100 * np.abs(d_zen).max()
            assert (E[:, i].conj() @ w).real > 0


def test_nsb_d_has_lower_peak_gain_than_nsb(rng):
    bank = random_bank(rng, M=10, n_users=3, min_sep=0.1)
    e0 = bank.vectors()[:, 0]
    g_nsb = abs(np.vdot(e0, nsb(bank, 0).weights))
    g_nsbd = abs(np.vdot(e0, nsb_d(bank, 0).weights))
    assert g_nsbd <= g_nsb * (1 + 1e-12)


def test_mpdrb_distortionless_and_matches_nsb_direction(rng):
    for _ in range(10):
        bank = random_bank(rng, M=8, n_users=5)
        E = bank.vectors()
        for i in range(5):
            w = mpdrb(bank, i).weights
            assert abs(np.vdot(E[:, i], w) - 1) < 1e-8
            v = nsb(bank, i).weights
            np.testing.assert_allclose(w, v / np.vdot(v, v).real, atol=1e-10)


def test_mpdrb_minimises_power_among_distortionless():
    rng = np.random.default_rng(8)
    bank = random_bank(rng, M=6, n_users=3)
    E = bank.vectors()
    w = mpdrb(bank, 0).weights
    cost = np.sum(np.abs(E.conj().T @ w) ** 2)
    for _ in range(200):
        z = rng.standard_normal(36) + 1j * rng.standard_normal(36)
        z -= E[:, 0] * np.vdot(E[:, 0], z) / 36  # keep e_0^H w = 1
        w2 = w + 0.01 * z
        assert abs(np.vdot(E[:, 0], w2) - 1) < 1e-9
        assert np.sum(np.abs(E.conj().T @ w2) ** 2) >= cost - 1e-12


def test_duplicate_directions_are_degenerate():
    bank = SteeringBank(ArrayGeometry(8, 4e-3), [0.2, 0.2, 0.5], [0.3, 0.3, 1.0])
    with pytest.raises(DegenerateDirections):
        nsb(bank, 0)
    with pytest.raises(DegenerateDirections):
        design_span(bank, "nsb")
    assert issubclass(DegenerateDirections, np.linalg.LinAlgError)


def test_mpdrb_tolerates_rank_deficiency():
    bank = SteeringBank(ArrayGeometry(8, 4e-3), [0.2, 0.2, 0.5], [0.3, 0.3, 1.0])
    w = mpdrb(bank, 2).weights
    assert abs(np.vdot(bank.vectors()[:, 2], w) - 1) < 1e-8
    span = design_span(bank, "mpdrb", targets=[2])
    assert span.effective_rank == 2


@pytest.mark.parametrize("design", ["nsb", "nsb-d", "mpdrb"])
def test_span_route_matches_explicit(rng, design):
    bank = random_bank(rng, M=9, n_users=4, min_sep=0.1)
    span = design_span(bank, design)
    W = span.materialize()
    for i in range(4):
        w = beamformer(bank, i, design).weights
        scale = np.linalg.norm(w)
        np.testing.assert_allclose(W[:, i], w, atol=1e-8 * scale)


def test_nadir_user_with_derivatives():
    # the azimuth derivative vanishes at nadir; that column is dropped, not degenerate
    bank = SteeringBank(ArrayGeometry(10, 4e-3), [0.0, 0.4], [0.0, 1.0])
    w = nsb_d(bank, 1).weights
    assert abs(np.vdot(bank.vectors()[:, 0], w)) < 1e-9 * 100
    span = design_span(bank, "nsb-d")
    np.testing.assert_allclose(span.materialize()[:, 1], w, atol=1e-8 * np.linalg.norm(w))


def test_unknown_design():
    bank = SteeringBank(ArrayGeometry(4, 4e-3), [0.1], [0.0])
    with pytest.raises(ValueError):
        beamformer(bank, 0, "mvdr")
    with pytest.raises(ValueError):
        design_span(bank, "mvdr")


def test_array_pattern_nulls_exceed_100_db(rng):
    bank = random_bank(rng, M=16, n_users=6)
    w = nsb(bank, 0)
    p = array_pattern(w, bank.geometry, bank.angles)
    depth = 10 * np.log10(p[0] / p[1:])
    assert depth.min() > 100


def test_span_projection_of_probe(rng):
    from a2gbeam.array import probe_columns
    bank = random_bank(rng, M=7, n_users=3)
    span = design_span(bank, "nsb")
    z, a = 0.31, -0.8
    probe = probe_columns(bank.geometry, [np.sin(z) * np.cos(a)], [np.sin(z) * np.sin(a)])
    e = steering_vector(bank.geometry, DirectionAngles(z, a)).entries
    np.testing.assert_allclose(span.project(probe)[0], e.conj() @ span.materialize(), atol=1e-9)
