"""Uniform planar array: element layout, steering vectors and their derivatives.

Element ``(m, n)`` sits at ``(x_m, y_n, 0)`` and entries of every length-``M**2``
vector are ordered row-major over ``(m, n)``, i.e. index ``m * M + n``.  Since
the array is a Kronecker product of two linear arrays, every steering vector
is ``kron(u_x, u_y)`` with ``u_x``, ``u_y`` of length ``M``.  ``SeparableColumns``
keeps vectors in that factored form so inner products cost ``O(M)`` instead of
``O(M**2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DirectionAngles, direction_cosines


@dataclass(frozen=True)
class ArrayGeometry:
    """``M x M`` planar array.

    ``spacing`` defaults to half of ``wavelength``.  Passing a different
    ``wavelength`` with the spacing held fixed describes the same physical
    array radiating off its design frequency.
    """

    M: int
    wavelength: float
    spacing: float | None = None

    def __post_init__(self):
        if self.M < 1:
            raise ValueError(f"M must be >= 1, got {self.M}")
        if self.spacing is None:
            object.__setattr__(self, "spacing", self.wavelength / 2)

    @property
    def wavenumber(self) -> float:
        return 2 * np.pi / self.wavelength

    @property
    def element_x(self) -> np.ndarray:
        return (np.arange(self.M) - (self.M - 1) / 2) * self.spacing

    # square array: same coordinates on both axes
    element_y = element_x

    @property
    def size(self) -> int:
        return self.M * self.M

    def at_wavelength(self, wavelength: float) -> "ArrayGeometry":
        return ArrayGeometry(self.M, wavelength, self.spacing)


@dataclass(frozen=True)
class SteeringVector:
    entries: np.ndarray
    source_angles: DirectionAngles


@dataclass(frozen=True)
class DerivativePair:
    d_azimuth: np.ndarray
    d_zenith: np.ndarray


def axis_vectors(geom: ArrayGeometry, psi) -> np.ndarray:
    """1-D steering factors ``exp(j k x_m psi)``, shape ``(M, len(psi))``."""
    psi = np.atleast_1d(np.asarray(psi, dtype=float))
    return np.exp(1j * geom.wavenumber * np.outer(geom.element_x, psi))


def _psi_derivatives(zenith, azimuth):
    """Partials of (psi_x, psi_y) w.r.t. azimuth and zenith."""
    sz, cz = np.sin(zenith), np.cos(zenith)
    sa, ca = np.sin(azimuth), np.cos(azimuth)
    d_az = (-sz * sa, sz * ca)
    d_zen = (cz * ca, cz * sa)
    return d_az, d_zen


def steering_matrix(geom: ArrayGeometry, angles: DirectionAngles) -> np.ndarray:
    """Stacked steering vectors, shape ``(M**2, N)``."""
    px, py = direction_cosines(angles)
    ux = axis_vectors(geom, px)
    uy = axis_vectors(geom, py)
    return (ux[:, None, :] * uy[None, :, :]).reshape(geom.size, -1)


def steering_vector(geom: ArrayGeometry, angles: DirectionAngles) -> SteeringVector:
    e = steering_matrix(geom, angles)[:, 0]
    return SteeringVector(e, angles)


def derivative_matrices(geom: ArrayGeometry, angles: DirectionAngles):
    """``(d/d azimuth, d/d zenith)`` of ``steering_matrix``, each ``(M**2, N)``."""
    e = steering_matrix(geom, angles)
    (ax, ay), (zx, zy) = _psi_derivatives(np.atleast_1d(angles.zenith),
                                          np.atleast_1d(angles.azimuth))
    x = np.repeat(geom.element_x, geom.M)[:, None]
    y = np.tile(geom.element_y, geom.M)[:, None]
    k = geom.wavenumber
    d_az = 1j * k * (x * ax + y * ay) * e
    d_zen = 1j * k * (x * zx + y * zy) * e
    return d_az, d_zen


def steering_derivatives(geom: ArrayGeometry, angles: DirectionAngles) -> DerivativePair:
    d_az, d_zen = derivative_matrices(geom, angles)
    return DerivativePair(d_az[:, 0], d_zen[:, 0])


def inner_product(a, b) -> complex:
    """``b^H a`` by direct summation over all elements."""
    a = getattr(a, "entries", a)
    b = getattr(b, "entries", b)
    return complex(np.vdot(b, a))


def dirichlet(M: int, x):
    """``sum_m exp(j x (m - (M-1)/2))`` for ``m = 0..M-1``, i.e. ``sin(Mx/2)/sin(x/2)``."""
    x = np.asarray(x, dtype=float)
    half = x / 2
    den = np.sin(half)
    small = np.abs(den) < 1e-12
    safe = np.where(small, 1.0, den)
    # L'Hopital at x = 2*pi*k
    return np.where(small, M * np.cos(M * half) / np.cos(half), np.sin(M * half) / safe)


def inner_product_closed_form(geom: ArrayGeometry, a: DirectionAngles,
                              b: DirectionAngles):
    """``e(b)^H e(a)`` as a product of two Dirichlet kernels.

    Per-element phase step is ``k * spacing * (psi_a - psi_b)``, which is
    ``pi * dpsi`` at half-wavelength spacing.
    """
    ax, ay = direction_cosines(a)
    bx, by = direction_cosines(b)
    step = geom.wavenumber * geom.spacing
    return dirichlet(geom.M, step * (ax - bx)) * dirichlet(geom.M, step * (ay - by))


class SeparableColumns:
    """Columns that are linear combinations of Kronecker terms.

    Column ``c`` equals ``sum_t coef[t, c] * kron(U[:, t], V[:, t])``.
    """

    def __init__(self, U: np.ndarray, V: np.ndarray, coef: np.ndarray):
        self.U = U
        self.V = V
        self.coef = coef

    @property
    def n_columns(self) -> int:
        return self.coef.shape[1]

    def cross(self, other: "SeparableColumns") -> np.ndarray:
        """Matrix of inner products ``self[:, a]^H other[:, b]``."""
        terms = (self.U.conj().T @ other.U) * (self.V.conj().T @ other.V)
        return self.coef.conj().T @ terms @ other.coef

    def gram(self) -> np.ndarray:
        g = self.cross(self)
        return (g + g.conj().T) / 2

    def materialize(self) -> np.ndarray:
        M = self.U.shape[0]
        kron = (self.U[:, None, :] * self.V[None, :, :]).reshape(M * M, -1)
        return kron @ self.coef

    def select(self, cols) -> "SeparableColumns":
        return SeparableColumns(self.U, self.V, self.coef[:, cols])


def separable_bank(geom: ArrayGeometry, angles: DirectionAngles,
                   derivatives: bool = False) -> SeparableColumns:
    """Steering columns (and optionally their angular derivatives) in factored form.

    Column order: ``e_0..e_{N-1}`` then ``d_az e_0, d_zen e_0, d_az e_1, ...``.
    """
    zen = np.atleast_1d(np.asarray(angles.zenith, dtype=float))
    az = np.atleast_1d(np.asarray(angles.azimuth, dtype=float))
    n = zen.size
    px, py = direction_cosines(DirectionAngles(zen, az))
    ux = axis_vectors(geom, px)
    uy = axis_vectors(geom, py)
    if not derivatives:
        return SeparableColumns(ux, uy, np.eye(n, dtype=complex))
    x = geom.element_x[:, None]
    y = geom.element_y[:, None]
    # terms: [ux|uy], [x*ux|uy], [ux|y*uy]
    U = np.concatenate([ux, x * ux, ux], axis=1)
    V = np.concatenate([uy, uy, y * uy], axis=1)
    coef = np.zeros((3 * n, 3 * n), dtype=complex)
    idx = np.arange(n)
    coef[idx, idx] = 1.0
    (ax, ay), (zx, zy) = _psi_derivatives(zen, az)
    jk = 1j * geom.wavenumber
    col_a = n + 2 * idx
    col_z = col_a + 1
    coef[n + idx, col_a] = jk * ax
    coef[2 * n + idx, col_a] = jk * ay
    coef[n + idx, col_z] = jk * zx
    coef[2 * n + idx, col_z] = jk * zy
    return SeparableColumns(U, V, coef)


def probe_columns(geom: ArrayGeometry, psi_x, psi_y) -> SeparableColumns:
    """Plain steering columns at given direction cosines (e.g. ``0, 0`` for the all-ones vector)."""
    ux = axis_vectors(geom, psi_x)
    uy = axis_vectors(geom, psi_y)
    return SeparableColumns(ux, uy, np.eye(ux.shape[1], dtype=complex))
