"""+GRID inter-satellite topology, link snapshots, and ground visibility.

Each satellite links to its two neighbors within its orbital plane and to
the same-index satellite in each adjacent plane, giving a static degree-4
graph per shell (2*P*S undirected edges). Shells too small for the grid
(fewer than 3 planes or 3 satellites per plane) carry no links.

Link state is evaluated per timestep from propagated positions: grazing
altitude, segment length, and viability against a threshold. Ground
visibility windows and a highest-elevation handover schedule are derived
by time sampling with bisection-refined window edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from .constants import EARTH_RADIUS_KM
from .geometry import (
    DEFAULT_ISL_THRESHOLD_KM,
    GroundStation,
    elevation_angle,
    grazing_altitude,
    ground_station_eci,
)
from .orbital import (
    CircularElements,
    Constellation,
    SatelliteId,
    propagate,
    propagate_arrays,
)

INTRA_PLANE = "intra_plane"
CROSS_PLANE = "cross_plane"


@dataclass(frozen=True)
class IslLink:
    """State of one +GRID edge at a single timestep."""

    a: SatelliteId
    b: SatelliteId
    kind: str
    grazing_km: float
    length_km: float
    viable: bool


@dataclass(frozen=True)
class VisibilityWindow:
    """Maximal interval during which a satellite stays above min elevation."""

    gs_id: str
    sat: SatelliteId
    start_s: float
    end_s: float
    max_elevation_deg: float


def grid_neighbors(
    plane: int, index: int, planes: int, sats_per_plane: int
) -> Set[Tuple[int, int]]:
    """The four +GRID neighbor coordinates of satellite (plane, index)."""
    if planes < 3 or sats_per_plane < 3:
        raise ValueError(
            f"+GRID needs at least 3 planes and 3 satellites per plane, "
            f"got {planes}x{sats_per_plane}"
        )
    if not (0 <= plane < planes and 0 <= index < sats_per_plane):
        raise ValueError(f"satellite ({plane}, {index}) outside {planes}x{sats_per_plane} grid")
    return {
        (plane, (index + 1) % sats_per_plane),
        (plane, (index - 1) % sats_per_plane),
        ((plane + 1) % planes, index),
        ((plane - 1) % planes, index),
    }


def grid_edges(planes: int, sats_per_plane: int) -> List[Tuple[Tuple[int, int], Tuple[int, int], str]]:
    """Deduplicated +GRID edge list: ((plane, index), (plane, index), kind)."""
    if planes < 3 or sats_per_plane < 3:
        raise ValueError(
            f"+GRID needs at least 3 planes and 3 satellites per plane, "
            f"got {planes}x{sats_per_plane}"
        )
    edges = []
    for p in range(planes):
        for s in range(sats_per_plane):
            edges.append(((p, s), (p, (s + 1) % sats_per_plane), INTRA_PLANE))
            edges.append(((p, s), ((p + 1) % planes, s), CROSS_PLANE))
    return edges


class GridTopology:
    """Precomputed +GRID structure of a constellation for fast snapshots.

    Shell membership and grid dimensions are inferred from the satellite
    ids, which must form complete plane/index grids per shell (as built
    by build_constellation). Shells smaller than 3x3 contribute no edges.
    """

    def __init__(self, constellation: Constellation, earth_radius_km: float = EARTH_RADIUS_KM):
        self.earth_radius_km = earth_radius_km
        self.sat_ids: List[SatelliteId] = sorted(constellation)
        index_of = {sat: i for i, sat in enumerate(self.sat_ids)}

        self._a_km = np.array([constellation[s].semi_major_axis_km for s in self.sat_ids])
        self._inc = np.radians([constellation[s].inclination_deg for s in self.sat_ids])
        self._raan = np.radians([constellation[s].raan_deg for s in self.sat_ids])
        self._phase = np.radians([constellation[s].phase_deg for s in self.sat_ids])
        self._epoch = np.array([constellation[s].epoch_s for s in self.sat_ids])

        shells: Dict[int, List[SatelliteId]] = {}
        for sat in self.sat_ids:
            shells.setdefault(sat.shell, []).append(sat)

        edge_pairs: List[Tuple[int, int]] = []
        edge_ids: List[Tuple[SatelliteId, SatelliteId]] = []
        kinds: List[str] = []
        for shell, members in sorted(shells.items()):
            planes = 1 + max(s.plane for s in members)
            per_plane = 1 + max(s.index for s in members)
            if planes < 3 or per_plane < 3:
                continue
            if len(members) != planes * per_plane:
                raise ValueError(
                    f"shell {shell} is not a complete {planes}x{per_plane} grid"
                )
            for (pa, sa), (pb, sb), kind in grid_edges(planes, per_plane):
                a = SatelliteId(shell, pa, sa)
                b = SatelliteId(shell, pb, sb)
                if b < a:
                    a, b = b, a
                edge_pairs.append((index_of[a], index_of[b]))
                edge_ids.append((a, b))
                kinds.append(kind)

        self.edge_ids = edge_ids
        self.edge_kinds = kinds
        self._edge_a = np.array([p[0] for p in edge_pairs], dtype=int)
        self._edge_b = np.array([p[1] for p in edge_pairs], dtype=int)

    @property
    def n_edges(self) -> int:
        return len(self.edge_ids)

    def positions(self, t_s: float, offsets: Optional[Mapping[SatelliteId, float]] = None) -> np.ndarray:
        """Positions of every satellite at t_s, shape (N, 3), km."""
        offset_arr: np.ndarray | float = 0.0
        if offsets:
            offset_arr = np.zeros(len(self.sat_ids))
            for i, sat in enumerate(self.sat_ids):
                offset_arr[i] = offsets.get(sat, 0.0)
        return propagate_arrays(
            self._a_km, self._inc, self._raan, self._phase, self._epoch, t_s, offset_arr
        )

    def grazing(
        self, t_s: float, offsets: Optional[Mapping[SatelliteId, float]] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Per-edge (grazing_km, length_km) arrays at t_s."""
        pos = self.positions(t_s, offsets)
        p1 = pos[self._edge_a]
        p2 = pos[self._edge_b]
        grazing = grazing_altitude(p1, p2, self.earth_radius_km)
        length = np.sqrt(np.sum((p2 - p1) ** 2, axis=-1))
        return grazing, length

    def snapshot(
        self,
        t_s: float,
        threshold_km: float = DEFAULT_ISL_THRESHOLD_KM,
        offsets: Optional[Mapping[SatelliteId, float]] = None,
    ) -> List[IslLink]:
        grazing, length = self.grazing(t_s, offsets)
        return [
            IslLink(
                a=a,
                b=b,
                kind=kind,
                grazing_km=float(g),
                length_km=float(l),
                viable=bool(g >= threshold_km),
            )
            for (a, b), kind, g, l in zip(self.edge_ids, self.edge_kinds, grazing, length)
        ]


def link_snapshot(
    constellation: Constellation,
    t_s: float,
    threshold_km: float = DEFAULT_ISL_THRESHOLD_KM,
    offsets: Optional[Mapping[SatelliteId, float]] = None,
    earth_radius_km: float = EARTH_RADIUS_KM,
) -> List[IslLink]:
    """All +GRID links of the constellation evaluated at one instant."""
    return GridTopology(constellation, earth_radius_km).snapshot(t_s, threshold_km, offsets)


def _refine_crossing(
    elements: CircularElements,
    gs: GroundStation,
    min_elevation_deg: float,
    t_outside: float,
    t_inside: float,
    earth_radius_km: float,
    tol_s: float = 0.1,
) -> float:
    """Bisect the elevation threshold crossing between two sample times.

    t_outside samples below the minimum elevation, t_inside at or above;
    the two may be in either temporal order.
    """

    def above(t: float) -> bool:
        gs_pos = ground_station_eci(gs, t, earth_radius_km)
        return elevation_angle(gs_pos, propagate(elements, t)) >= min_elevation_deg

    lo, hi = t_outside, t_inside
    while abs(hi - lo) > tol_s:
        mid = 0.5 * (lo + hi)
        if above(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def visibility_windows(
    gs: GroundStation,
    constellation: Constellation,
    t0_s: float,
    t1_s: float,
    step_s: float,
    earth_radius_km: float = EARTH_RADIUS_KM,
) -> List[VisibilityWindow]:
    """Maximal above-min-elevation intervals per satellite.

    Sampled on a step_s grid; interval endpoints are refined by bisection
    to 0.1 s. max_elevation_deg is the largest sampled elevation within
    the window.
    """
    if t1_s <= t0_s:
        raise ValueError("t1_s must be greater than t0_s")
    if step_s <= 0.0:
        raise ValueError("step_s must be positive")
    if not constellation:
        return []

    sat_ids = sorted(constellation)
    a_km = np.array([constellation[s].semi_major_axis_km for s in sat_ids])
    inc = np.radians([constellation[s].inclination_deg for s in sat_ids])
    raan = np.radians([constellation[s].raan_deg for s in sat_ids])
    phase = np.radians([constellation[s].phase_deg for s in sat_ids])
    epoch = np.array([constellation[s].epoch_s for s in sat_ids])

    times = np.arange(t0_s, t1_s + step_s / 2.0, step_s)
    times[-1] = min(times[-1], t1_s)
    elevations = np.empty((len(times), len(sat_ids)))
    for k, t in enumerate(times):
        pos = propagate_arrays(a_km, inc, raan, phase, epoch, float(t))
        gs_pos = ground_station_eci(gs, float(t), earth_radius_km)
        elevations[k] = elevation_angle(gs_pos, pos)

    windows: List[VisibilityWindow] = []
    visible = elevations >= gs.min_elevation_deg
    for j, sat in enumerate(sat_ids):
        col = visible[:, j]
        k = 0
        while k < len(times):
            if not col[k]:
                k += 1
                continue
            start_idx = k
            while k + 1 < len(times) and col[k + 1]:
                k += 1
            end_idx = k
            start = float(times[start_idx])
            if start_idx > 0:
                start = _refine_crossing(
                    constellation[sat], gs, gs.min_elevation_deg,
                    float(times[start_idx - 1]), start, earth_radius_km,
                )
            end = float(times[end_idx])
            if end_idx + 1 < len(times):
                end = _refine_crossing(
                    constellation[sat], gs, gs.min_elevation_deg,
                    float(times[end_idx + 1]), end, earth_radius_km,
                )
            else:
                end = float(times[-1])
            max_elev = float(np.max(elevations[start_idx : end_idx + 1, j]))
            if end > start:
                windows.append(VisibilityWindow(gs.id, sat, start, end, max_elev))
            k += 1
    windows.sort(key=lambda w: (w.start_s, tuple(w.sat)))
    return windows


def handover_schedule(
    windows: Sequence[VisibilityWindow],
    gs: GroundStation,
    constellation: Constellation,
    step_s: float = 1.0,
    earth_radius_km: float = EARTH_RADIUS_KM,
) -> List[Tuple[float, SatelliteId, SatelliteId]]:
    """Attachment changes of a station tracking the highest-elevation satellite.

    The station attaches to the visible satellite with the highest
    elevation, ties broken by lowest satellite id; every
    satellite-to-satellite attachment change is reported as
    (time_s, from_sat, to_sat). Initial acquisition and loss of all
    coverage are not handovers and are not listed.
    """
    if not windows:
        return []
    if step_s <= 0.0:
        raise ValueError("step_s must be positive")

    events: List[Tuple[float, SatelliteId, SatelliteId]] = []
    t_start = min(w.start_s for w in windows)
    t_end = max(w.end_s for w in windows)
    current: Optional[SatelliteId] = None
    t = t_start
    while t <= t_end:
        candidates = [w.sat for w in windows if w.start_s <= t < w.end_s]
        if candidates:
            gs_pos = ground_station_eci(gs, t, earth_radius_km)
            best = max(
                candidates,
                key=lambda sat: (
                    elevation_angle(gs_pos, propagate(constellation[sat], t)),
                    tuple(-c for c in sat),
                ),
            )
        else:
            best = None
        if best is not None and current is not None and best != current:
            events.append((t, current, best))
        current = best
        t += step_s
    return events
