"""Cell layout, user placement and the ground-position to direction mapping.

The array sits at the origin; ground points live at depth ``H_t`` below it.
Zenith is measured from the downward vertical, azimuth from the x axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class GroundPosition:
    """A point on the ground, ``depth`` metres below the array plane."""

    x: float
    y: float
    depth: float

    def __post_init__(self):
        if not self.depth > 0:
            raise ValueError(f"depth must be positive, got {self.depth}")

    @property
    def slant_distance(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.depth**2))


@dataclass(frozen=True)
class DirectionAngles:
    """Zenith/azimuth pair in radians. Fields may be scalars or equal-shape arrays."""

    zenith: float | np.ndarray
    azimuth: float | np.ndarray


@dataclass(frozen=True)
class CellLayout:
    macro_radius: float
    micro_radius: float
    reuse_distance: float
    tiers: int
    mci_center: GroundPosition
    interferer_centers: list[GroundPosition] = field(default_factory=list)
    tier_sizes: tuple[int, ...] = ()

    @property
    def n_interferers(self) -> int:
        return len(self.interferer_centers)


def angles_of(pos: GroundPosition) -> DirectionAngles:
    """Zenith/azimuth of a ground position as seen from the array.

    The magnitude of the depth is used so that zenith lies in [0, pi/2).
    Azimuth at the nadir point is 0 (``atan2(0, 0)``).
    """
    zen, az = angles_from_xy(pos.x, pos.y, pos.depth)
    return DirectionAngles(float(zen), float(az))


def angles_from_xy(x, y, depth):
    """Vectorised zenith/azimuth for coordinate arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    zenith = np.arctan(np.hypot(x, y) / np.abs(depth))
    azimuth = np.arctan2(y, x)
    # atan2 returns -pi for (-x, -0.0); fold onto (-pi, pi]
    azimuth = np.where(azimuth <= -np.pi, azimuth + 2 * np.pi, azimuth)
    return zenith, azimuth


def direction_cosines(angles: DirectionAngles):
    """Return ``(psi_x, psi_y) = sin(zen) * (cos(az), sin(az))``."""
    s = np.sin(angles.zenith)
    return s * np.cos(angles.azimuth), s * np.sin(angles.azimuth)


def build_layout(R: float, r: float, J: int = 5,
                 mci_center: GroundPosition | None = None) -> CellLayout:
    """Co-channel micro-cell centres around the micro-cell of interest.

    Tier ``k`` holds ``6k`` centres equally spaced in azimuth on the circle of
    radius ``k*D`` (``D = 4r``) around the MCI centre, first one at angle 0.
    """
    if R <= 0:
        raise ValueError(f"macro_radius must be positive, got {R}")
    if r <= 0:
        raise ValueError(f"micro_radius must be positive, got {r}")
    if J < 1:
        raise ValueError(f"tiers must be >= 1, got {J}")
    if mci_center is None:
        mci_center = GroundPosition(0.0, 0.0, 10_000.0)
    D = 4.0 * r
    centers = []
    sizes = []
    for k in range(1, J + 1):
        n = 6 * k
        phi = 2 * np.pi * np.arange(n) / n
        for p in phi:
            centers.append(GroundPosition(mci_center.x + k * D * np.cos(p),
                                          mci_center.y + k * D * np.sin(p),
                                          mci_center.depth))
        sizes.append(n)
    return CellLayout(R, r, D, J, mci_center, centers, tuple(sizes))


def layout_centers(layout: CellLayout) -> np.ndarray:
    """``(N_I+1, 2)`` array of cell centres, MCI first."""
    pts = [layout.mci_center] + list(layout.interferer_centers)
    return np.array([[p.x, p.y] for p in pts])


def sample_uniform_in_disc(center: GroundPosition, radius: float,
                           rng: np.random.Generator) -> GroundPosition:
    """Area-uniform point in the disc of ``radius`` around ``center``."""
    dx, dy = sample_discs(np.zeros((1, 2)), radius, rng)[0]
    return GroundPosition(center.x + dx, center.y + dy, center.depth)


def sample_discs(centers: np.ndarray, radius: float,
                 rng: np.random.Generator) -> np.ndarray:
    """One area-uniform point per row of ``centers`` (shape ``(n, 2)``)."""
    centers = np.asarray(centers, dtype=float)
    n = centers.shape[0]
    u = rng.random((2, n))
    rho = radius * np.sqrt(u[0])
    phi = 2 * np.pi * u[1]
    return centers + np.column_stack((rho * np.cos(phi), rho * np.sin(phi)))
