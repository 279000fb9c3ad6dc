"""Aggregations over simulations: grazing-altitude CDFs and latency summaries.

The central product is the cumulative distribution of minimum ISL
altitudes over a simulation window, either one sample per link (the
minimum over the window) or one sample per link per timestep. CDFs are
written as CSV with header value_km,proportion, one row per distinct
sample value.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from .constants import EARTH_RADIUS_KM
from .geometry import GroundStation, elevation_angle, ground_station_eci, propagation_delay
from .orbital import Constellation
from .topology import GridTopology


@dataclass(frozen=True)
class CdfTable:
    """Empirical CDF: (value, proportion of samples <= value) pairs."""

    points: Tuple[Tuple[float, float], ...]

    def __post_init__(self) -> None:
        previous_value = -np.inf
        previous_prop = 0.0
        for value, proportion in self.points:
            if value <= previous_value:
                raise ValueError("CDF values must be strictly increasing")
            if proportion < previous_prop:
                raise ValueError("CDF proportions must be non-decreasing")
            previous_value, previous_prop = value, proportion
        if self.points and abs(self.points[-1][1] - 1.0) > 1e-12:
            raise ValueError(f"final CDF proportion must be 1.0, got {self.points[-1][1]}")

    @classmethod
    def from_samples(cls, samples: Sequence[float]) -> "CdfTable":
        """Empirical CDF of the samples.

        Values are canonicalized to 9 significant digits (the precision
        of the CSV output format) so that float noise does not split one
        physical value into many table rows.
        """
        values = np.asarray(samples, dtype=float)
        n = len(values)
        if n == 0:
            return cls(points=())
        distinct, counts = np.unique(values, return_counts=True)
        canonical = np.array([float(f"{v:.9g}") for v in distinct])
        merged, inverse = np.unique(canonical, return_inverse=True)
        merged_counts = np.zeros(len(merged), dtype=np.int64)
        np.add.at(merged_counts, inverse, counts)
        cumulative = np.cumsum(merged_counts) / n
        cumulative[-1] = 1.0
        return cls(points=tuple(zip(merged.tolist(), cumulative.tolist())))

    def proportion_below(self, threshold: float) -> float:
        """Proportion of samples strictly below the threshold."""
        result = 0.0
        for value, proportion in self.points:
            if value < threshold:
                result = proportion
            else:
                break
        return result


def min_isl_altitude_cdf(
    constellation: Constellation,
    t0_s: float,
    t1_s: float,
    step_s: float,
    per_link_min: bool = True,
    earth_radius_km: float = EARTH_RADIUS_KM,
) -> CdfTable:
    """CDF of ISL grazing altitudes over a simulation window.

    With per_link_min, each link contributes a single sample: its minimum
    grazing altitude over the window. Otherwise every (link, timestep)
    pair contributes one sample. The window is sampled at t0, t0+step,
    ..., including t1 when it falls on the grid.
    """
    if t1_s <= t0_s:
        raise ValueError("t1_s must be greater than t0_s")
    if step_s <= 0.0:
        raise ValueError("step_s must be positive")
    topo = GridTopology(constellation, earth_radius_km)
    if topo.n_edges == 0:
        return CdfTable(points=())
    times = np.arange(t0_s, t1_s + step_s / 2.0, step_s)
    times[-1] = min(float(times[-1]), t1_s)
    if per_link_min:
        minima = np.full(topo.n_edges, np.inf)
        for t in times:
            grazing, _ = topo.grazing(float(t))
            np.minimum(minima, grazing, out=minima)
        samples = minima
    else:
        chunks = []
        for t in times:
            grazing, _ = topo.grazing(float(t))
            chunks.append(grazing)
        samples = np.concatenate(chunks)
    return CdfTable.from_samples(samples)


def infeasible_fraction(cdf: CdfTable, threshold_km: float) -> float:
    """Proportion of CDF samples strictly below the viability threshold."""
    return cdf.proportion_below(threshold_km)


def bent_pipe_rtt(
    gs: GroundStation,
    sat_pos,
    uplink_gs: GroundStation,
    t_s: float = 0.0,
    earth_radius_km: float = EARTH_RADIUS_KM,
) -> float:
    """Round-trip time of a ground-satellite-ground relay path, seconds.

    Both stations must see the satellite at or above their minimum
    elevation at t_s; otherwise a ValueError names the blocked station.
    """
    sat_pos = np.asarray(sat_pos, dtype=float)
    total_one_way = 0.0
    for station in (gs, uplink_gs):
        pos = ground_station_eci(station, t_s, earth_radius_km)
        elevation = elevation_angle(pos, sat_pos)
        if elevation < station.min_elevation_deg:
            raise ValueError(
                f"satellite not visible from station {station.id!r}: elevation "
                f"{elevation:.2f} deg below minimum {station.min_elevation_deg} deg"
            )
        total_one_way += propagation_delay(float(np.linalg.norm(sat_pos - pos)))
    return 2.0 * total_one_way


def write_cdf_csv(cdf: CdfTable, path) -> None:
    """Write a CDF as CSV with header value_km,proportion."""
    lines = ["value_km,proportion"]
    lines.extend(f"{value:.9g},{proportion:.9g}" for value, proportion in cdf.points)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_cdf_csv(path) -> CdfTable:
    """Read a CDF written by write_cdf_csv."""
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text or text[0].strip() != "value_km,proportion":
        raise ValueError("CDF CSV must start with header 'value_km,proportion'")
    points: List[Tuple[float, float]] = []
    for line in text[1:]:
        if not line.strip():
            continue
        value, proportion = line.split(",")
        points.append((float(value), float(proportion)))
    return CdfTable(points=tuple(points))
