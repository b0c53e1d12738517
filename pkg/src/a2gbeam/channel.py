"""Free-space path loss, link budget, receiver noise and Rician channel draws."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

SPEED_OF_LIGHT = 3e8
# value used by the original link budget, kept for reproducibility
BOLTZMANN = 1.374e-23


def db_to_linear(x_db):
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


@dataclass(frozen=True)
class RicianConfig:
    """Rician factor ``K`` (linear). ``K = inf`` is pure line of sight."""

    K: float

    def __post_init__(self):
        if not self.K >= 0:
            raise ValueError(f"Rician factor must be >= 0, got {self.K}")

    @classmethod
    def from_db(cls, k_db: float) -> "RicianConfig":
        return cls(float(db_to_linear(k_db)))

    @property
    def los_amplitude(self) -> float:
        if np.isinf(self.K):
            return 1.0
        return float(np.sqrt(self.K / (1 + self.K)))

    @property
    def nlos_amplitude(self) -> float:
        if np.isinf(self.K):
            return 0.0
        return float(np.sqrt(1 / (1 + self.K)))


@dataclass(frozen=True)
class ChannelRealization:
    vector: np.ndarray
    nlos_scalar: complex


@dataclass(frozen=True)
class LinkBudget:
    """Link budget, all quantities linear (watts, ratios, kelvin, hertz).

    ``power_mode`` selects how ``tx_power_per_element`` enters the received
    power.  ``"per_element"`` uses it directly as ``P_t`` with the array gain
    ``M**2`` in ``G_t``; ``"total"`` multiplies it by ``M**2`` first.
    """

    tx_power_per_element: float = 10 ** (5 / 10) * 1e-3   # 5 dBm
    rx_gain: float = 10 ** (60.2 / 10)
    lumped_losses: float = 10 ** ((10 + 1.8 + 7.9 + 1.8) / 10)
    noise_temperature: float = 290.0
    bandwidth: float = 714e6
    noise_figure: float = 10 ** (6 / 10)
    boltzmann: float = BOLTZMANN
    power_mode: Literal["per_element", "total"] = "per_element"

    def __post_init__(self):
        for name in ("tx_power_per_element", "rx_gain", "lumped_losses",
                     "noise_temperature", "bandwidth", "noise_figure", "boltzmann"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.power_mode not in ("per_element", "total"):
            raise ValueError(f"power_mode must be 'per_element' or 'total', got {self.power_mode!r}")

    def tx_gain(self, M: int) -> float:
        return float(M) ** 2

    def tx_power(self, M: int) -> float:
        if self.power_mode == "total":
            return self.tx_power_per_element * float(M) ** 2
        return self.tx_power_per_element

    def radiated_power(self, M: int) -> float:
        """Sum of all element powers (what the platform has to supply)."""
        return self.tx_power_per_element * float(M) ** 2

    def replace(self, **kw) -> "LinkBudget":
        return replace(self, **kw)


def path_loss_linear(d, f):
    """Free-space loss ``(4 pi d f / c)**2``."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    if np.any(np.asarray(f) <= 0):
        raise ValueError("frequency must be positive")
    out = (4 * np.pi * d * f / SPEED_OF_LIGHT) ** 2
    return float(out) if out.ndim == 0 else out


def path_loss_db(d, f):
    return linear_to_db(path_loss_linear(d, f))


def received_power(budget: LinkBudget, M: int, d, f):
    """``P_r = P_t G_t G_r / (losses * path_loss)``."""
    return (budget.tx_power(M) * budget.tx_gain(M) * budget.rx_gain
            / (budget.lumped_losses * path_loss_linear(d, f)))


def noise_power(budget: LinkBudget) -> float:
    """``k T B N_F``."""
    return budget.boltzmann * budget.noise_temperature * budget.bandwidth * budget.noise_figure


def draw_nlos(rng: np.random.Generator, size=None):
    """Circular complex Gaussian draws with unit variance."""
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (re + 1j * im) / np.sqrt(2)


def sample_channel(e, cfg: RicianConfig, rng: np.random.Generator) -> ChannelRealization:
    """``sqrt(K/(1+K)) e + sqrt(1/(1+K)) h 1`` with a single scalar ``h``."""
    e = getattr(e, "entries", e)
    h = complex(draw_nlos(rng))
    if np.isinf(cfg.K):
        vec = e.astype(complex, copy=True)
    else:
        vec = cfg.los_amplitude * e + cfg.nlos_amplitude * h * np.ones_like(e)
    return ChannelRealization(vec, h)
