"""Shared fixtures: repository paths and cached example immersions.

Everything expensive (ODE solves behind the flat-ambient and curve-generated
families) is built once per session and reused, so individual test modules
stay fast.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

import quasimin as qm

REPO_ROOT = Path(__file__).resolve().parent.parent
CONFIGS_DIR = REPO_ROOT / "configs"


@pytest.fixture(scope="session")
def configs_dir() -> Path:
    return CONFIGS_DIR


@pytest.fixture(scope="session")
def analytic_e42() -> qm.Immersion:
    """Flat-ambient family (i) instance with every ingredient constant.

    With m = 0, F = 1 and b = -1 the chart, metric, second fundamental form
    and mean curvature all have elementary closed forms, which makes this the
    reference surface for exactness tests.
    """
    zero = lambda t: 0.0 * np.asarray(t)
    one = lambda t: 0.0 * np.asarray(t) + 1.0
    return qm.make_e42("i", zero, one, (-1.0, 0.0), (0.5, 2.0), (-1.0, 1.0))


@pytest.fixture(scope="session")
def trig_linear() -> qm.Immersion:
    """Sphere-valued trigonometric family with b(t) = t.

    The admissibility factor is b'' - b = -t, nonzero on the chosen strip,
    and the mean curvature has the closed form t/(2 cos s) (1,0,0,0,1).
    """
    return qm.make_s42_trig(lambda t: 1.0 * np.asarray(t), (0.4, 1.1), (0.5, 1.5))


def _control_immersion(tag: str) -> qm.Immersion:
    cfg = qm.load_config(CONFIGS_DIR / f"{tag}.json")
    return qm.build_immersion(cfg)


@pytest.fixture(scope="session")
def control_plane() -> qm.Immersion:
    """Totally geodesic plane: H = 0, so quasi-minimality must fail."""
    return _control_immersion("control_plane")


@pytest.fixture(scope="session")
def control_graph() -> qm.Immersion:
    """Generic graph surface: no relative nullity, H not lightlike."""
    return _control_immersion("control_graph")


@pytest.fixture(scope="session")
def family_zoo() -> dict[str, qm.Immersion]:
    """One representative per family tag, with nonconstant ingredient
    functions so the generic coefficient formulas are actually exercised."""
    zoo: dict[str, qm.Immersion] = {}
    zoo["E42-i"] = qm.make_e42(
        "i",
        lambda t: 0.3 * np.sin(t),
        lambda t: 2.0 + np.cos(t),
        (0.0, 1.0),
        (0.6, 2.0),
        (-1.0, 1.0),
        t0=0.0,
    )
    zoo["E42-ii"] = qm.make_e42(
        "ii",
        lambda t: 0.2 * np.asarray(t),
        lambda t: -1.0 - 0.5 * np.sin(t),
        (1.0, 0.0),
        (0.7, 2.0),
        (-1.0, 1.0),
        t0=0.0,
    )
    zoo["S42-trig"] = qm.make_s42_trig(lambda t: np.asarray(t) ** 2, (0.4, 1.1), (-1.0, 1.0))
    zoo["S42-hyp"] = qm.make_s42_hyp(lambda t: np.asarray(t) ** 2, (-1.0, 1.0), (-1.0, 1.0))
    zoo["S42-curve-timelike"] = qm.make_s42_curve(
        qm.timelike_circle(0.6),
        lambda t: 0.5 * np.asarray(t) ** 2,
        (-0.4, 0.6),
        (-0.6, 0.6),
        t0=0.0,
    )
    zoo["S42-curve-spacelike"] = qm.make_s42_curve(
        qm.spacelike_circle(1.0),
        lambda t: 1.0 * np.asarray(t),
        (-0.7, 0.7),
        (0.2, 1.2),
        eps_sign=1,
        t0=0.0,
    )
    return zoo
