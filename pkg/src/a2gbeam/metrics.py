"""SINR moments, instantaneous SINR, use-and-forget capacity and area spectral efficiency.

For position-only weights ``w`` and the served user's channel
``h = a e_0 + b h_0 1`` (``a = sqrt(K/(1+K))``, ``b = sqrt(1/(1+K))``), the
array gain ``h^H w = a e_0^H w + b conj(h_0) 1^H w`` is complex Gaussian with
mean ``a e_0^H w`` and variance ``b**2 |1^H w|**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .beamform import SteeringBank
from .channel import (LinkBudget, RicianConfig, draw_nlos, noise_power,
                      received_power, sample_channel)


@dataclass(frozen=True)
class SinrMoments:
    """Mean/variance of the served beam's gain and of every interfering beam's gain.

    ``interference_mean`` is zero for exact nulls; it is kept because
    mismatched designs (offset positions, off-frequency channels) leak line of
    sight power into the interference terms.
    """

    mu: complex
    sigma_s_sq: float
    sigma_i_sq: np.ndarray
    interference_mean: np.ndarray = field(default=None)

    def __post_init__(self):
        si = np.atleast_1d(np.asarray(self.sigma_i_sq, dtype=float))
        object.__setattr__(self, "sigma_i_sq", si)
        if self.interference_mean is None:
            object.__setattr__(self, "interference_mean", np.zeros(si.size, dtype=complex))
        else:
            object.__setattr__(self, "interference_mean",
                               np.atleast_1d(np.asarray(self.interference_mean, dtype=complex)))

    @property
    def signal_power(self) -> float:
        """``E|X_s|^2``."""
        return float(abs(self.mu) ** 2 + self.sigma_s_sq)

    @property
    def interference_powers(self) -> np.ndarray:
        """``E|X_i|^2`` per interfering beam."""
        return np.abs(self.interference_mean) ** 2 + self.sigma_i_sq


@dataclass(frozen=True)
class CapacityReport:
    se_approx: float
    ase_approx: float
    se_mc: float = float("nan")
    ase_mc: float = float("nan")
    stderr_se: float = float("nan")
    stderr_ase: float = float("nan")
    stderr_se_mc: float = float("nan")
    trials: int = 0


def _ones_vector(n):
    return np.ones(n, dtype=complex)


def moments_nsb(bank: SteeringBank, cfg: RicianConfig) -> SinrMoments:
    """Moments of the NSB gains straight from the projector expressions.

    Each beam's projection is computed with its own least-squares solve on the
    materialized steering matrix, independently of the leave-one-out solver in
    ``beamform``.
    """
    E = bank.vectors()
    n = E.shape[1]
    ones = _ones_vector(E.shape[0])
    a, b = cfg.los_amplitude, cfg.nlos_amplitude
    residuals = []
    for i in range(n):
        others = np.delete(E, i, axis=1)
        if others.shape[1]:
            coef, *_ = np.linalg.lstsq(others, E[:, i], rcond=None)
            residuals.append(E[:, i] - others @ coef)
        else:
            residuals.append(E[:, i].copy())
    r0 = residuals[0]
    e0 = E[:, 0]
    mu = a * np.real(np.vdot(e0, r0))
    sigma_s = b**2 * abs(np.vdot(ones, r0)) ** 2
    sigma_i = np.array([b**2 * abs(np.vdot(ones, r)) ** 2 for r in residuals[1:]])
    return SinrMoments(mu, sigma_s, sigma_i)


def moments_from_projections(los: np.ndarray, nlos: np.ndarray,
                             cfg: RicianConfig) -> SinrMoments:
    """Moments from ``e_0^H w_i`` (``los``) and ``1^H w_i`` (``nlos``), beam 0 first."""
    a, b = cfg.los_amplitude, cfg.nlos_amplitude
    los = np.asarray(los, dtype=complex)
    nlos = np.asarray(nlos, dtype=complex)
    var = b**2 * np.abs(nlos) ** 2
    return SinrMoments(a * los[0], float(var[0]), var[1:], a * los[1:])


def moments_generic(weights, e0, cfg: RicianConfig) -> SinrMoments:
    """Moments for arbitrary channel-independent weights.

    ``weights`` is one weight vector, a sequence of them or an ``(M**2, n)``
    matrix; column 0 is the served beam and the rest interfering beams.
    """
    e0 = getattr(e0, "entries", e0)
    if isinstance(weights, (list, tuple)):
        W = np.column_stack([getattr(w, "weights", w) for w in weights])
    else:
        W = getattr(weights, "weights", weights)
        W = W.reshape(W.shape[0], -1)
    los = e0.conj() @ W
    nlos = W.sum(axis=0)
    return moments_from_projections(los, nlos, cfg)


def sinr_from_gains(X, p_r: float, noise: float) -> np.ndarray:
    """SINR from gains ``X`` of shape ``(..., n_beams)``, served beam first."""
    X = np.asarray(X)
    power = np.abs(X) ** 2
    return p_r * power[..., 0] / (p_r * power[..., 1:].sum(axis=-1) + noise)


def gain_draws(los: np.ndarray, nlos: np.ndarray, cfg: RicianConfig, h) -> np.ndarray:
    """``h_Ric^H w_i`` for scalar NLoS draws ``h`` (any shape) -> ``h.shape + (n_beams,)``."""
    h = np.asarray(h)
    return cfg.los_amplitude * los + cfg.nlos_amplitude * np.conj(h)[..., None] * nlos


def instantaneous_sinr(bank: SteeringBank, weights_all, budget: LinkBudget,
                       cfg: RicianConfig, rng: np.random.Generator,
                       distance: float, carrier: float) -> float:
    """One channel draw of the served user's SINR.

    The served user's channel carries every beam; the interfering beams reach
    it through the same ``h_0``.
    """
    e0 = bank.vector(0)
    h = sample_channel(e0, cfg, rng).vector
    W = np.column_stack([getattr(w, "weights", w) for w in weights_all])
    X = h.conj() @ W
    p_r = received_power(budget, bank.geometry.M, distance, carrier)
    return float(sinr_from_gains(X, p_r, noise_power(budget)))


def se_from_moments(m: SinrMoments, p_r: float, noise: float) -> float:
    """``log2(1 + P_r E|X_s|^2 / (sum P_r E|X_i|^2 + noise))``."""
    num = p_r * m.signal_power
    den = p_r * math.fsum(m.interference_powers) + noise
    return float(np.log2(1 + num / den))


def approx_capacity(m: SinrMoments, budget: LinkBudget, d_user: float,
                    M: int, carrier: float) -> float:
    p_r = received_power(budget, M, d_user, carrier)
    return se_from_moments(m, p_r, noise_power(budget))


def ase_from_se(se, D: float):
    """Area spectral efficiency in bps/Hz/km^2 from SE and reuse distance in metres."""
    if D <= 0:
        raise ValueError(f"reuse distance must be positive, got {D}")
    out = 4 * np.asarray(se, dtype=float) / (np.pi * (D / 1000.0) ** 2)
    return float(out) if out.ndim == 0 else out


def mc_capacity(los, nlos, cfg: RicianConfig, p_r: float, noise: float,
                rng: np.random.Generator, draws: int) -> float:
    """Monte Carlo ``E[log2(1 + SINR)]`` over ``draws`` NLoS realizations."""
    h = draw_nlos(rng, draws)
    X = gain_draws(los, nlos, cfg, h)
    return float(np.mean(np.log2(1 + sinr_from_gains(X, p_r, noise))))
