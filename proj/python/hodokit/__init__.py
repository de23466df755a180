"""Kepler velocity-circle (hodograph) and scattering toolkit."""

import json as _json

from ._hodokit import *  # noqa: F401,F403
from ._hodokit import (
    SystemParams,
    State,
    Vec3,
    __version__,
    analysis_report_json,
    scatter_report_json,
)


def analyze(state: "State", params: "SystemParams", degrees: bool = False) -> dict:
    """Full single-state analysis as a plain dict (same schema as the CLI)."""
    return _json.loads(analysis_report_json(state, params, degrees))


def scatter(h: float, j: float, params: "SystemParams", degrees: bool = False) -> dict:
    """Scattering angles from conserved quantities as a plain dict."""
    return _json.loads(scatter_report_json(h, j, params, degrees))
