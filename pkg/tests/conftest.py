import numpy as np
import pytest

from a2gbeam.array import ArrayGeometry
from a2gbeam.beamform import SteeringBank
from a2gbeam.geometry import angles_from_xy


def random_bank(rng, M=8, n_users=4, altitude=10_000.0, spread=6_000.0, min_sep=0.05):
    """Users scattered on the ground with direction cosines at least ``min_sep`` apart."""
    geom = ArrayGeometry(M, 4e-3)
    while True:
        xy = rng.uniform(-spread, spread, size=(n_users, 2))
        zen, az = angles_from_xy(xy[:, 0], xy[:, 1], altitude)
        psi = np.column_stack((np.sin(zen) * np.cos(az), np.sin(zen) * np.sin(az)))
        sep = np.linalg.norm(psi[:, None] - psi[None], axis=2) + np.eye(n_users)
        if sep.min() > min_sep:
            return SteeringBank(geom, zen, az)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per criterion

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n, title = marker.args
    detail = "; ".join(v for k, v in item.user_properties if k == "detail")
    if call.excinfo is None:
        status = "PASS"
    elif item.get_closest_marker("xfail") is not None:
        status = "FAIL (expected, see notes)"
    else:
        status = "FAIL"
    _CRITERIA[n] = f"criterion {n:2d} {status:<27s} {title}" + (f"  [{detail}]" if detail else "")
    print("\n" + _CRITERIA[n])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
