"""Monte Carlo scenarios: placement trials, beam design, moments and capacity.

Every trial owns a random stream derived from ``(seed, trial)``, split into
independent child streams for placement, position offsets and channel draws.
Sweeps therefore reuse the same user drops at every axis point, and enabling
an impairment never shifts the randomness of the others.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .array import ArrayGeometry, probe_columns
from .beamform import DESIGNS, DegenerateDirections, SteeringBank, design_span
from .channel import (SPEED_OF_LIGHT, LinkBudget, RicianConfig, noise_power,
                      received_power)
from .geometry import (DirectionAngles, GroundPosition, angles_from_xy,
                       build_layout, direction_cosines, layout_centers,
                       sample_discs)
from .impairments import (DopplerConfig, PositionOffset, apply_position_offset,
                          channel_geometry, frequency_ratio)
from .metrics import (CapacityReport, ase_from_se, mc_capacity,
                      moments_from_projections, se_from_moments)

CSV_COLUMNS = ("axis", "se_approx", "ase_approx", "se_mc", "ase_mc",
               "stderr_se", "stderr_ase", "trials", "seed")


@dataclass(frozen=True)
class Scenario:
    """One operating point; defaults follow the paper's simulation table."""

    mci_distance: float = 2500.0
    mci_azimuth: float = np.pi / 4
    macro_radius: float = 5000.0
    micro_radius: float = 50.0
    tiers: int = 5
    altitude: float = 10_000.0
    M: int = 200
    carrier: float = 73.5e9
    k_db: float = 30.0
    budget: LinkBudget = field(default_factory=LinkBudget)
    beamformer: str = "nsb"
    doppler: DopplerConfig | None = None
    offset: PositionOffset | None = None
    trials: int = 500
    channel_draws: int = 20
    seed: int = 2021
    monte_carlo: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.beamformer not in DESIGNS:
            raise ValueError(f"beamformer must be one of {DESIGNS}, got {self.beamformer!r}")
        if not 0 <= self.mci_distance <= self.macro_radius:
            raise ValueError(f"mci_distance {self.mci_distance} outside [0, macro_radius={self.macro_radius}]")
        if self.micro_radius <= 0:
            raise ValueError(f"micro_radius must be positive, got {self.micro_radius}")
        if self.altitude <= 0:
            raise ValueError(f"altitude must be positive, got {self.altitude}")
        if self.trials < 1 or self.channel_draws < 1:
            raise ValueError("trials and channel_draws must be >= 1")

    @property
    def reuse_distance(self) -> float:
        return 4.0 * self.micro_radius

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier

    @property
    def geometry(self) -> ArrayGeometry:
        return ArrayGeometry(self.M, self.wavelength)

    @property
    def rician(self) -> RicianConfig:
        return RicianConfig.from_db(self.k_db)

    def cell_centers(self) -> np.ndarray:
        mci = GroundPosition(self.mci_distance * np.cos(self.mci_azimuth),
                             self.mci_distance * np.sin(self.mci_azimuth),
                             self.altitude)
        layout = build_layout(self.macro_radius, self.micro_radius, self.tiers, mci)
        return layout_centers(layout)

    def config_hash(self) -> str:
        return hashlib.sha256(repr(sorted(asdict(self).items())).encode()).hexdigest()[:12]


@dataclass
class TrialDrop:
    """User placement of one trial (true and reported positions)."""

    true_xy: np.ndarray
    design_xy: np.ndarray
    channel_rng: np.random.Generator


@dataclass
class SweepResult:
    axis_name: str
    axis: list
    reports: list[CapacityReport]
    metadata: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.reports])

    @property
    def ase(self) -> np.ndarray:
        return self.column("ase_approx")

    def rows(self):
        seed = self.metadata.get("seed", "")
        for x, r in zip(self.axis, self.reports):
            yield (x, r.se_approx, r.ase_approx, r.se_mc, r.ase_mc,
                   r.stderr_se, r.stderr_ase, r.trials, seed)

    def to_csv(self, fh=None) -> str:
        buf = fh if fh is not None else io.StringIO()
        meta = " ".join(f"{k}={v}" for k, v in self.metadata.items())
        buf.write(f"# axis={self.axis_name} {meta}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in self.rows():
            w.writerow([_fmt(v) for v in row])
        return buf.getvalue() if fh is None else ""

    def plot(self, path: str) -> None:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.errorbar(self.axis, self.ase, yerr=self.column("stderr_ase"),
                    marker="o", capsize=3, label="approx")
        if np.all(np.isfinite(self.column("ase_mc"))):
            ax.plot(self.axis, self.column("ase_mc"), "s--", label="Monte Carlo")
        ax.set_xlabel(self.axis_name)
        ax.set_ylabel("ASE [bps/Hz/km$^2$]")
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def trial_streams(seed: int, trial: int):
    """Placement, offset and channel generators for one trial."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return [np.random.default_rng(c) for c in ss.spawn(3)]


def draw_users(s: Scenario, trial: int) -> TrialDrop:
    place, offset, chan = trial_streams(s.seed, trial)
    true_xy = sample_discs(s.cell_centers(), s.micro_radius, place)
    if s.offset is None:
        design_xy = true_xy
    else:
        design_xy = apply_position_offset(true_xy, s.offset, offset)
    return TrialDrop(true_xy, design_xy, chan)


def design_bank(s: Scenario, xy: np.ndarray) -> SteeringBank:
    zen, az = angles_from_xy(xy[:, 0], xy[:, 1], s.altitude)
    return SteeringBank(s.geometry, zen, az)


def served_probe(s: Scenario, true_xy: np.ndarray):
    """Served user's channel-side steering vector and the all-ones vector."""
    zen, az = angles_from_xy(true_xy[0, 0], true_xy[0, 1], s.altitude)
    angles = DirectionAngles(float(zen), float(az))
    geom = s.geometry
    if s.doppler is not None:
        geom = channel_geometry(geom, float(frequency_ratio(s.doppler, angles)))
    px, py = direction_cosines(angles)
    return probe_columns(geom, [px, 0.0], [py, 0.0])


def run_trial(s: Scenario, trial: int) -> tuple[float, float]:
    """``(se_approx, se_mc)`` for one user drop; ``se_mc`` is NaN unless enabled."""
    drop = draw_users(s, trial)
    try:
        span = design_span(design_bank(s, drop.design_xy), s.beamformer)
    except DegenerateDirections as exc:
        raise DegenerateDirections(f"trial {trial}: {exc}") from exc
    los, nlos = span.project(served_probe(s, drop.true_xy))
    cfg = s.rician
    d_user = math.sqrt(drop.true_xy[0, 0] ** 2 + drop.true_xy[0, 1] ** 2 + s.altitude**2)
    p_r = received_power(s.budget, s.M, d_user, s.carrier)
    noise = noise_power(s.budget)
    se = se_from_moments(moments_from_projections(los, nlos, cfg), p_r, noise)
    se_mc = float("nan")
    if s.monte_carlo:
        se_mc = mc_capacity(los, nlos, cfg, p_r, noise, drop.channel_rng, s.channel_draws)
    return se, se_mc


def _mean_stderr(x: np.ndarray):
    n = x.size
    mean = math.fsum(x) / n
    if n < 2:
        return mean, float("nan")
    var = math.fsum((x - mean) ** 2) / (n - 1)
    return mean, math.sqrt(var / n)


def run_point(s: Scenario) -> CapacityReport:
    """Average capacity over ``s.trials`` user drops."""
    if s.workers > 1:
        with ThreadPoolExecutor(s.workers) as pool:
            out = list(pool.map(lambda t: run_trial(s, t), range(s.trials)))
    else:
        out = [run_trial(s, t) for t in range(s.trials)]
    se = np.array([o[0] for o in out])
    se_mc = np.array([o[1] for o in out])
    D = s.reuse_distance
    mean, err = _mean_stderr(se)
    report = dict(se_approx=mean, ase_approx=ase_from_se(mean, D),
                  stderr_se=err, stderr_ase=ase_from_se(err, D) if err == err else err,
                  trials=s.trials)
    if s.monte_carlo:
        mean_mc, err_mc = _mean_stderr(se_mc)
        report.update(se_mc=mean_mc, ase_mc=ase_from_se(mean_mc, D), stderr_se_mc=err_mc)
    return CapacityReport(**report)


def _sweep(s: Scenario, name: str, values, make) -> SweepResult:
    reports = [run_point(make(v)) for v in values]
    meta = {"seed": s.seed, "config_hash": s.config_hash(), "beamformer": s.beamformer}
    return SweepResult(name, list(values), reports, meta)


def sweep_distance(s: Scenario, distances) -> SweepResult:
    """ASE versus MCI distance from the macro-cell centre (metres)."""
    return _sweep(s, "mci_distance_m", distances, lambda d: replace(s, mci_distance=float(d)))


def sweep_array(s: Scenario, Ms) -> SweepResult:
    return _sweep(s, "M", Ms, lambda m: replace(s, M=int(m)))


def sweep_rician(s: Scenario, k_dbs) -> SweepResult:
    return _sweep(s, "k_db", k_dbs, lambda k: replace(s, k_db=float(k)))


def doppler_table(s: Scenario, deltas) -> SweepResult:
    """ASE versus relative radial-velocity estimation error."""
    base = s.doppler or DopplerConfig(carrier=s.carrier)
    return _sweep(s, "delta_vr", deltas,
                  lambda d: replace(s, doppler=replace(base, delta_vr=float(d), carrier=s.carrier)))


def offset_table(s: Scenario, deltas) -> SweepResult:
    """ASE versus reported-position error magnitude (metres)."""
    return _sweep(s, "delta_m", deltas, lambda d: replace(s, offset=PositionOffset(float(d))))


def pattern_rows(s: Scenario, zenith, azimuth, trial: int = 0):
    """Served beam's power pattern for trial ``trial``.

    Returns ``(user_angles, grid_power)`` where ``user_angles`` is a list of
    ``(zenith, azimuth, power)`` at every user's design direction (served user
    first) and ``grid_power`` has shape ``(len(zenith), len(azimuth))``.
    """
    drop = draw_users(s, trial)
    bank = design_bank(s, drop.design_xy)
    span = design_span(bank, s.beamformer, targets=[0])
    geom = s.geometry

    def power(zen, az):
        px, py = direction_cosines(DirectionAngles(zen, az))
        return np.abs(span.project(probe_columns(geom, px, py))[:, 0]) ** 2

    users = list(zip(bank.zenith, bank.azimuth, power(bank.zenith, bank.azimuth)))
    zz, aa = np.meshgrid(np.asarray(zenith, float), np.asarray(azimuth, float), indexing="ij")
    grid = power(zz.ravel(), aa.ravel()).reshape(zz.shape)
    return users, grid
