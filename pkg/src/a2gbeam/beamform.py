"""Position-only transmit beamformers: null steering (NSB), null steering with
first-order derivative constraints (NSB-D) and minimum-power distortionless
response (MPDRB).

Nothing here sees a channel realization; every design is a function of the
user directions alone.  Weights are left unnormalized.

Two evaluation routes share the same Gram-domain solvers:

* ``nsb``/``nsb_d``/``mpdrb`` materialize the ``M**2``-long vectors and return
  ``BeamformerWeights``.
* ``design_span`` returns ``SpanWeights``: coefficients over the constraint
  columns, kept in factored form.  This is what the simulator uses at
  ``M = 200..500``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .array import (ArrayGeometry, SeparableColumns, derivative_matrices,
                    separable_bank, steering_matrix, steering_vector)
from .geometry import DirectionAngles

Design = Literal["nsb", "nsb-d", "mpdrb"]
DESIGNS = ("nsb", "nsb-d", "mpdrb")

MAX_CONDITION = 1e12
SVD_RTOL = 1e-10


class DegenerateDirections(np.linalg.LinAlgError):
    """Constraint directions are (numerically) linearly dependent."""


@dataclass(frozen=True)
class SteeringBank:
    """Directions of all users on one array; index 0 is the served user."""

    geometry: ArrayGeometry
    zenith: np.ndarray
    azimuth: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "zenith", np.atleast_1d(np.asarray(self.zenith, float)))
        object.__setattr__(self, "azimuth", np.atleast_1d(np.asarray(self.azimuth, float)))

    @property
    def angles(self) -> DirectionAngles:
        return DirectionAngles(self.zenith, self.azimuth)

    def __len__(self):
        return self.zenith.size

    def vector(self, i: int):
        return steering_vector(self.geometry, DirectionAngles(self.zenith[i:i + 1],
                                                              self.azimuth[i:i + 1]))

    def vectors(self) -> np.ndarray:
        return steering_matrix(self.geometry, self.angles)

    def derivatives(self):
        return derivative_matrices(self.geometry, self.angles)

    def constraint_matrix(self, derivatives: bool = False) -> np.ndarray:
        """Materialized constraint columns in the same order as ``columns``."""
        E = self.vectors()
        if not derivatives:
            return E
        d_az, d_zen = self.derivatives()
        D = np.empty((E.shape[0], 2 * len(self)), dtype=complex)
        D[:, 0::2] = d_az
        D[:, 1::2] = d_zen
        return np.concatenate([E, D], axis=1)

    def columns(self, derivatives: bool = False) -> SeparableColumns:
        return separable_bank(self.geometry, self.angles, derivatives)


@dataclass(frozen=True)
class BeamformerWeights:
    weights: np.ndarray
    design: str
    target_index: int


@dataclass
class SpanWeights:
    """Beams ``w_i = B @ coef[:, i]`` with ``B`` the constraint columns."""

    columns: SeparableColumns
    coef: np.ndarray
    design: str
    effective_rank: int | None = None

    def project(self, probe: SeparableColumns) -> np.ndarray:
        """``probe[:, p]^H w_i`` for every probe column and beam, shape ``(P, n_beams)``."""
        return probe.cross(self.columns) @ self.coef

    def materialize(self) -> np.ndarray:
        return self.columns.materialize() @ self.coef

    def beam(self, i: int) -> BeamformerWeights:
        return BeamformerWeights(self.columns.materialize() @ self.coef[:, i], self.design, i)


def _checked_inverse(gram: np.ndarray):
    """Inverse of the Gram matrix of the non-zero columns.

    Returns ``(inverse, keep)`` where ``keep`` flags the columns taking part.
    Columns are rescaled to unit norm before the eigendecomposition so the
    condition test reflects direction geometry rather than column scale.
    """
    d = np.real(np.diag(gram))
    keep = d > 1e-20 * d.max()
    g = gram[np.ix_(keep, keep)]
    s = np.sqrt(d[keep])
    gn = g / np.outer(s, s)
    lam, vec = np.linalg.eigh(gn)
    if lam[0] <= 0 or lam[-1] / lam[0] > MAX_CONDITION:
        cond = np.inf if lam[0] <= 0 else lam[-1] / lam[0]
        raise DegenerateDirections(f"constraint Gram condition {cond:.3g} exceeds {MAX_CONDITION:g}")
    inv_n = (vec / lam) @ vec.conj().T
    return inv_n / np.outer(s, s), keep


def null_steering_coefficients(gram: np.ndarray, targets) -> np.ndarray:
    """Coefficients of ``b_i - P_{others} b_i`` over the columns, one column per target.

    With ``A`` the inverse Gram of all columns, the residual of column ``i``
    against the rest is ``B A[:, i] / A[i, i]``, so every leave-one-out
    projection comes from a single factorization.
    """
    n = gram.shape[0]
    inv, keep = _checked_inverse(gram)
    pos = np.cumsum(keep) - 1
    out = np.zeros((n, len(targets)), dtype=complex)
    for c, i in enumerate(targets):
        if not keep[i]:
            raise DegenerateDirections(f"target column {i} is zero")
        a = inv[:, pos[i]]
        out[keep, c] = a / a[pos[i]]
    return out


def mpdr_coefficients(gram: np.ndarray, targets, rtol: float = SVD_RTOL):
    """Distortionless minimum-power coefficients from the Gram eigensystem.

    ``gram = V diag(s**2) V^H`` gives the right singular vectors and singular
    values of the column matrix; the left ones are ``B V / s``.  Substituting
    into ``U s^-2 U^H e_i`` leaves ``B V s^-4 V^H gram[:, i]``.  Triplets with
    ``s < rtol * s_max`` are dropped; eigenvalues below the eigensolver's own
    resolution are dropped as well.
    """
    lam, vec = np.linalg.eigh(gram)
    floor = max(rtol**2, 64 * np.finfo(float).eps) * lam.max()
    keep = lam > floor
    vec, lam = vec[:, keep], lam[keep]
    out = np.zeros((gram.shape[0], len(targets)), dtype=complex)
    for c, i in enumerate(targets):
        coef = (vec / lam) @ vec[i].conj()
        gain = gram[i] @ coef
        if not np.isfinite(gain) or abs(gain) <= 0:
            raise DegenerateDirections(f"no distortionless solution for beam {i}")
        out[:, c] = coef / gain
    return out, int(keep.sum())


def design_span(bank: SteeringBank, design: Design, targets=None) -> SpanWeights:
    """All beams of one scenario in factored form (default: every user)."""
    if targets is None:
        targets = range(len(bank))
    targets = list(targets)
    if design == "nsb":
        cols = bank.columns()
        return SpanWeights(cols, null_steering_coefficients(cols.gram(), targets), design)
    if design == "nsb-d":
        cols = bank.columns(derivatives=True)
        return SpanWeights(cols, null_steering_coefficients(cols.gram(), targets), design)
    if design == "mpdrb":
        cols = bank.columns()
        coef, rank = mpdr_coefficients(cols.gram(), targets)
        return SpanWeights(cols, coef, design, rank)
    raise ValueError(f"unknown beamformer design {design!r}; expected one of {DESIGNS}")


def _project_out(B: np.ndarray, i: int, design: str) -> BeamformerWeights:
    gram = B.conj().T @ B
    gram = (gram + gram.conj().T) / 2
    coef = null_steering_coefficients(gram, [i])[:, 0]
    return BeamformerWeights(B @ coef, design, i)


def nsb(bank: SteeringBank, i: int) -> BeamformerWeights:
    """Steering vector of user ``i`` projected off the span of all other users."""
    return _project_out(bank.vectors(), i, "nsb")


def nsb_d(bank: SteeringBank, i: int) -> BeamformerWeights:
    """As ``nsb`` with every user's azimuth/zenith derivative vectors added to
    the null space, including those of user ``i`` itself."""
    return _project_out(bank.constraint_matrix(derivatives=True), i, "nsb-d")


def mpdrb(bank: SteeringBank, i: int, rtol: float = SVD_RTOL) -> BeamformerWeights:
    """Minimum total response power over all users with unit gain toward user ``i``.

    Uses a thin SVD of the steering matrix instead of inverting the
    ``M**2 x M**2`` covariance.
    """
    E = bank.vectors()
    U, s, _ = np.linalg.svd(E, full_matrices=False)
    keep = s >= rtol * s[0]
    U, s = U[:, keep], s[keep]
    e_hat = U.conj().T @ E[:, i]
    num = e_hat / s**2
    den = np.vdot(e_hat, num)
    if not np.isfinite(den) or abs(den) <= 0:
        raise DegenerateDirections(f"no distortionless solution for beam {i}")
    return BeamformerWeights(U @ num / den, "mpdrb", i)


def beamformer(bank: SteeringBank, i: int, design: Design) -> BeamformerWeights:
    fn = {"nsb": nsb, "nsb-d": nsb_d, "mpdrb": mpdrb}.get(design)
    if fn is None:
        raise ValueError(f"unknown beamformer design {design!r}; expected one of {DESIGNS}")
    return fn(bank, i)


def array_pattern(w, geom: ArrayGeometry, angles: DirectionAngles):
    """Transmit power pattern ``|w^H e(angles)|**2`` (vectorised over angles)."""
    w = getattr(w, "weights", w)
    E = steering_matrix(geom, angles)
    p = np.abs(w.conj() @ E) ** 2
    return p if p.size > 1 else float(p[0])
