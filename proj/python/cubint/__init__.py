"""Cubic integrals of geodesic flows on surfaces."""

import json

from ._cubint import *  # noqa: F401,F403
from ._cubint import Verdict, geodesic_drift as _geodesic_drift


def report(verdict: Verdict) -> dict:
    return json.loads(verdict.to_json())


def geodesic_drift(metric, start, steps=10000, dt=1e-3, F=None) -> dict:
    return json.loads(_geodesic_drift(metric, list(start), steps, dt, F))
