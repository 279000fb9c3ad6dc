"""Line-of-sight geometry for satellite links and ground stations.

The central quantity is the grazing altitude of an inter-satellite link:
the minimum height above the spherical Earth of the straight segment
between two satellites. Laser links that dip into the dense atmosphere
are refracted, so a link is considered viable only while its grazing
altitude stays above a configurable threshold (default 80 km, roughly
the top of the mesosphere).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import EARTH_RADIUS_KM, SIDEREAL_DAY_S, SPEED_OF_LIGHT_KM_S

DEFAULT_ISL_THRESHOLD_KM = 80.0


@dataclass(frozen=True)
class GroundStation:
    """A ground terminal or gateway antenna."""

    id: str
    latitude_deg: float
    longitude_deg: float
    min_elevation_deg: float = 25.0

    def __post_init__(self) -> None:
        if not -90.0 <= self.latitude_deg <= 90.0:
            raise ValueError(f"latitude_deg must be in [-90, 90], got {self.latitude_deg}")
        if not -180.0 <= self.longitude_deg <= 180.0:
            raise ValueError(
                f"longitude_deg must be in [-180, 180], got {self.longitude_deg}"
            )
        if not 0.0 <= self.min_elevation_deg < 90.0:
            raise ValueError(
                f"min_elevation_deg must be in [0, 90), got {self.min_elevation_deg}"
            )


def grazing_altitude(p1, p2, earth_radius_km: float = EARTH_RADIUS_KM):
    """Minimum altitude of the segment p1-p2 above the spherical Earth.

    Accepts single positions of shape (3,) or batches of shape (..., 3);
    returns a float or an array accordingly. Negative values mean the
    segment passes through the Earth. For a degenerate segment (p1 == p2)
    this is the altitude of the point itself.

    The closest point of the segment to the Earth center is found by
    clamping the unconstrained minimizer t* = -p1.(p2-p1)/|p2-p1|^2 to
    [0, 1]. Endpoints are ordered canonically first, so the result is
    exactly symmetric in its arguments.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    p1, p2 = np.broadcast_arrays(p1, p2)
    swap = np.zeros(p1.shape[:-1], dtype=bool)
    undecided = np.ones_like(swap)
    for axis in range(3):
        a, b = p1[..., axis], p2[..., axis]
        swap = swap | (undecided & (b < a))
        undecided = undecided & (a == b)
    if np.any(swap):
        p1, p2 = (
            np.where(swap[..., None], p2, p1),
            np.where(swap[..., None], p1, p2),
        )
    d = p2 - p1
    denom = np.sum(d * d, axis=-1)
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(denom > 0.0, -np.sum(p1 * d, axis=-1) / np.where(denom > 0.0, denom, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    closest = p1 + t[..., None] * d
    altitude = np.sqrt(np.sum(closest * closest, axis=-1)) - earth_radius_km
    if altitude.ndim == 0:
        return float(altitude)
    return altitude


def is_isl_viable(grazing_km, threshold_km: float = DEFAULT_ISL_THRESHOLD_KM):
    """A link is viable while its grazing altitude is at or above the threshold."""
    result = np.asarray(grazing_km) >= threshold_km
    if result.ndim == 0:
        return bool(result)
    return result


def ground_station_eci(
    gs: GroundStation, t_s: float, earth_radius_km: float = EARTH_RADIUS_KM
) -> np.ndarray:
    """ECI position of a ground station at time t_s.

    The Earth rotates 360 degrees per sidereal day; longitude 0 is aligned
    with the inertial x-axis at t = 0.
    """
    lat = math.radians(gs.latitude_deg)
    lon = math.radians(gs.longitude_deg) + 2.0 * math.pi * t_s / SIDEREAL_DAY_S
    cos_lat = math.cos(lat)
    return earth_radius_km * np.array(
        [cos_lat * math.cos(lon), cos_lat * math.sin(lon), math.sin(lat)]
    )


def elevation_angle(gs_pos, sat_pos):
    """Elevation of a satellite above the station's local horizontal, degrees.

    gs_pos has shape (3,); sat_pos may be (3,) or a batch (..., 3).
    Raises ValueError for coincident points.
    """
    gs_pos = np.asarray(gs_pos, dtype=float)
    sat_pos = np.asarray(sat_pos, dtype=float)
    d = sat_pos - gs_pos
    d_norm = np.sqrt(np.sum(d * d, axis=-1))
    if np.any(d_norm == 0.0):
        raise ValueError("satellite position coincides with the ground station")
    up = gs_pos / np.linalg.norm(gs_pos)
    sin_e = np.clip(np.sum(d * up, axis=-1) / d_norm, -1.0, 1.0)
    elev = np.degrees(np.arcsin(sin_e))
    if elev.ndim == 0:
        return float(elev)
    return elev


def slant_range_km(
    altitude_km: float, elevation_deg: float, earth_radius_km: float = EARTH_RADIUS_KM
) -> float:
    """Station-to-satellite distance for a given elevation angle.

    Law-of-cosines solution on the spherical Earth:
    R * (sqrt(((R+h)/R)^2 - cos^2 e) - sin e).
    """
    if not -90.0 <= elevation_deg <= 90.0:
        raise ValueError(f"elevation_deg must be in [-90, 90], got {elevation_deg}")
    e = math.radians(elevation_deg)
    ratio = (earth_radius_km + altitude_km) / earth_radius_km
    return earth_radius_km * (math.sqrt(ratio**2 - math.cos(e) ** 2) - math.sin(e))


def propagation_delay(distance_km: float) -> float:
    """Free-space propagation delay in seconds."""
    return distance_km / SPEED_OF_LIGHT_KM_S
