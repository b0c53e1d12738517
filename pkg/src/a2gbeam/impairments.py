"""Doppler pre-compensation with velocity estimation error, and position offsets.

Frequency coupling model: beamformer weights are designed for the nominal
carrier ``f_c``.  The served user's line of sight steering vector is evaluated
on the same physical array at the residual received frequency ``f_hat_c``
(what is left after pre-compensating with an erroneous radial velocity).
With a perfect estimate ``f_hat_c == f_c`` exactly and the channel is the
nominal one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array import ArrayGeometry
from .beamform import SteeringBank
from .channel import SPEED_OF_LIGHT
from .geometry import DirectionAngles


@dataclass(frozen=True)
class DopplerConfig:
    airplane_speed: float = 200.0
    heading_azimuth: float = 0.0
    delta_vr: float = 0.0
    carrier: float = 73.5e9

    def __post_init__(self):
        if self.airplane_speed < 0:
            raise ValueError(f"airplane_speed must be >= 0, got {self.airplane_speed}")
        if abs(self.delta_vr) > 1:
            raise ValueError(f"delta_vr must lie in [-1, 1], got {self.delta_vr}")


@dataclass(frozen=True)
class PositionOffset:
    """Every reported user position is off by ``delta`` metres in a random direction."""

    delta: float = 0.0

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")


def radial_velocity(cfg: DopplerConfig, angles: DirectionAngles):
    """Component of the platform velocity toward the user direction."""
    return (cfg.airplane_speed * np.cos(angles.azimuth - cfg.heading_azimuth)
            * np.sin(angles.zenith))


def estimated_radial_velocity(v_r, delta_vr: float):
    return v_r + delta_vr * v_r


def precompensated_tx_frequency(f_c: float, v_r_est):
    """Transmit frequency that cancels the Doppler shift of ``v_r_est``."""
    beta = np.asarray(v_r_est, dtype=float) / SPEED_OF_LIGHT
    if np.any(np.abs(beta) >= 1):
        raise ValueError("radial velocity must be below the speed of light")
    return (1 + beta) / (1 - beta) * f_c


def received_frequency(f_c: float, v_r, v_r_est):
    """Carrier seen by the user after pre-compensation and the actual Doppler shift.

    Numerator and denominator are formed as the same products when the
    estimate is exact, so the ratio is exactly one.
    """
    b = np.asarray(v_r, dtype=float) / SPEED_OF_LIGHT
    bt = np.asarray(v_r_est, dtype=float) / SPEED_OF_LIGHT
    return (1 - b) * (1 + bt) / ((1 + b) * (1 - bt)) * f_c


def frequency_ratio(cfg: DopplerConfig, angles: DirectionAngles):
    """``f_hat_c / f_c`` for the served user's direction."""
    v_r = radial_velocity(cfg, angles)
    v_est = estimated_radial_velocity(v_r, cfg.delta_vr)
    b = v_r / SPEED_OF_LIGHT
    bt = v_est / SPEED_OF_LIGHT
    return (1 - b) * (1 + bt) / ((1 + b) * (1 - bt))


def channel_geometry(geom: ArrayGeometry, ratio: float) -> ArrayGeometry:
    """Same element positions radiating at ``ratio`` times the design frequency."""
    if ratio == 1.0:
        return geom
    return geom.at_wavelength(geom.wavelength / ratio)


def apply_frequency_mismatch(bank: SteeringBank, cfg: DopplerConfig) -> SteeringBank:
    """Channel-side bank: the served user's frequency ratio applied to every direction.

    Weights keep being designed on ``bank``; only channels use the result.
    """
    ratio = float(frequency_ratio(cfg, DirectionAngles(bank.zenith[0], bank.azimuth[0])))
    geom = channel_geometry(bank.geometry, ratio)
    if geom is bank.geometry:
        return bank
    return SteeringBank(geom, bank.zenith, bank.azimuth)


def apply_position_offset(positions: np.ndarray, off: PositionOffset,
                          rng: np.random.Generator) -> np.ndarray:
    """Reported positions ``(x + delta cos b, y + delta sin b)``, one ``b`` per row.

    ``b`` is always drawn, so the generator advances identically whatever
    ``delta`` is.  ``delta == 0`` returns the input unchanged.
    """
    positions = np.asarray(positions, dtype=float)
    beta = rng.uniform(-np.pi, np.pi, positions.shape[0])
    if off.delta == 0:
        return positions
    return positions + off.delta * np.column_stack((np.cos(beta), np.sin(beta)))
