"""Simulation configuration and the end-to-end trace generator.

A simulation is described by a single JSON document (see README for the
schema). Configuration parsing is strict: unknown keys anywhere in the
document are rejected so typos cannot silently fall back to defaults.

run_simulation builds the constellation, samples every enabled fault
model over [0, duration], tracks ISL viability transitions on the
configured timestep, and writes one merged, schema-versioned JSON-lines
trace. The returned summary materializes every default for auditability.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field, fields as dataclass_fields
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .constants import EARTH_RADIUS_KM, SECONDS_PER_DAY
from .faults import (
    DoseProfile,
    FaultModelConfig,
    ManeuverEvent,
    RandomStreams,
    expected_seu_count,
    offsets_at,
    rain_events,
    read_precipitation_csv,
    sample_handover_spikes,
    sample_maneuvers,
    sample_seu_events,
)
from .geometry import GroundStation
from .orbital import Constellation, SatelliteId, ShellSpec, build_constellation
from .tle import read_tle_file, tle_to_elements
from .topology import GridTopology
from .trace import FaultEvent, IslTarget, SatelliteTarget, merge_traces, write_trace


class ConfigError(ValueError):
    """Invalid simulation configuration; the message names the field."""


@dataclass(frozen=True)
class SimulationConfig:
    shells: Tuple[ShellSpec, ...] = ()
    tle_files: Tuple[str, ...] = ()
    ground_stations: Tuple[GroundStation, ...] = ()
    faults: FaultModelConfig = field(default_factory=FaultModelConfig)
    duration_s: float = 3600.0
    step_s: float = 10.0
    seed: int = 0
    isl_threshold_km: float = 80.0
    earth_radius_km: float = EARTH_RADIUS_KM
    precipitation_mm_h: Optional[float] = None
    precipitation_csv: Optional[str] = None

    def __post_init__(self) -> None:
        if self.duration_s <= 0.0:
            raise ConfigError(f"duration_s must be > 0, got {self.duration_s}")
        if self.step_s <= 0.0:
            raise ConfigError(f"step_s must be > 0, got {self.step_s}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not self.shells and not self.tle_files:
            raise ConfigError("at least one of shells/tle_files must be non-empty")
        if self.isl_threshold_km < 0.0:
            raise ConfigError(f"isl_threshold_km must be >= 0, got {self.isl_threshold_km}")
        if self.earth_radius_km <= 0.0:
            raise ConfigError(f"earth_radius_km must be > 0, got {self.earth_radius_km}")
        if self.precipitation_mm_h is not None and self.precipitation_mm_h < 0.0:
            raise ConfigError(
                f"precipitation_mm_h must be >= 0, got {self.precipitation_mm_h}"
            )


def _reject_unknown(obj: dict, allowed: Sequence[str], context: str) -> None:
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]!r} in {context}")


def _build_dataclass(cls, obj: dict, context: str):
    if not isinstance(obj, dict):
        raise ConfigError(f"{context} must be an object, got {type(obj).__name__}")
    names = [f.name for f in dataclass_fields(cls)]
    _reject_unknown(obj, names, context)
    try:
        return cls(**obj)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{context}: {exc}") from None


def config_from_dict(obj: dict) -> SimulationConfig:
    """Build a SimulationConfig from a parsed JSON document (strict keys)."""
    if not isinstance(obj, dict):
        raise ConfigError("configuration document must be a JSON object")
    allowed = [f.name for f in dataclass_fields(SimulationConfig)]
    _reject_unknown(obj, allowed, "simulation config")

    kwargs = dict(obj)
    if "shells" in kwargs:
        if not isinstance(kwargs["shells"], list):
            raise ConfigError("shells must be an array")
        kwargs["shells"] = tuple(
            _build_dataclass(ShellSpec, shell, f"shells[{i}]")
            for i, shell in enumerate(kwargs["shells"])
        )
    if "tle_files" in kwargs:
        if not isinstance(kwargs["tle_files"], list) or not all(
            isinstance(p, str) for p in kwargs["tle_files"]
        ):
            raise ConfigError("tle_files must be an array of paths")
        kwargs["tle_files"] = tuple(kwargs["tle_files"])
    if "ground_stations" in kwargs:
        if not isinstance(kwargs["ground_stations"], list):
            raise ConfigError("ground_stations must be an array")
        kwargs["ground_stations"] = tuple(
            _build_dataclass(GroundStation, gs, f"ground_stations[{i}]")
            for i, gs in enumerate(kwargs["ground_stations"])
        )
    if "faults" in kwargs:
        faults_obj = kwargs["faults"]
        if not isinstance(faults_obj, dict):
            raise ConfigError("faults must be an object")
        faults_obj = dict(faults_obj)
        if "dose_profile" in faults_obj:
            profile_obj = faults_obj["dose_profile"]
            if not isinstance(profile_obj, dict):
                raise ConfigError("faults.dose_profile must be an object")
            _reject_unknown(profile_obj, ["anchors", "shielding_label"], "faults.dose_profile")
            anchors = profile_obj.get("anchors")
            if not isinstance(anchors, list) or not all(
                isinstance(a, list) and len(a) == 2 for a in anchors
            ):
                raise ConfigError("faults.dose_profile.anchors must be an array of [inclination, dose] pairs")
            try:
                faults_obj["dose_profile"] = DoseProfile(
                    anchors=tuple((float(i), float(d)) for i, d in anchors),
                    shielding_label=profile_obj.get("shielding_label", "1mm aluminum"),
                )
            except ValueError as exc:
                raise ConfigError(f"faults.dose_profile: {exc}") from None
        kwargs["faults"] = _build_dataclass(FaultModelConfig, faults_obj, "faults")
    if "seed" in kwargs and not isinstance(kwargs["seed"], int):
        raise ConfigError(f"seed must be an integer, got {kwargs['seed']!r}")

    try:
        return SimulationConfig(**kwargs)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"simulation config: {exc}") from None


def load_config(path) -> SimulationConfig:
    """Load and validate a JSON configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    return config_from_dict(obj)


def config_to_dict(config: SimulationConfig) -> dict:
    """Materialize every field (defaults included) as a JSON-friendly dict."""
    out = asdict(config)
    out["shells"] = [asdict(s) for s in config.shells]
    out["tle_files"] = list(config.tle_files)
    out["ground_stations"] = [asdict(g) for g in config.ground_stations]
    out["faults"] = asdict(config.faults)
    out["faults"]["dose_profile"] = {
        "anchors": [list(a) for a in config.faults.dose_profile.anchors],
        "shielding_label": config.faults.dose_profile.shielding_label,
    }
    return out


def build_fleet(config: SimulationConfig) -> Constellation:
    """Constellation from declarative shells plus TLE snapshot files.

    Each TLE file becomes its own pseudo-shell (one plane, one slot per
    record) after the declared shells; TLE satellites participate in the
    fault models and visibility but carry no +GRID links, since plane
    structure cannot be reliably reconstructed from a catalog snapshot.
    """
    constellation = build_constellation(config.shells, config.earth_radius_km)
    for file_index, path in enumerate(config.tle_files):
        records = read_tle_file(path)
        shell_index = len(config.shells) + file_index
        for rec_index, rec in enumerate(records):
            sat = SatelliteId(shell_index, 0, rec_index)
            constellation[sat] = tle_to_elements(rec)
    return constellation


def _maneuver_trace(
    maneuvers: Sequence[ManeuverEvent], duration_s: float
) -> List[FaultEvent]:
    events: List[FaultEvent] = []
    for m in maneuvers:
        events.append(
            FaultEvent(
                m.start_s,
                "maneuver_start",
                SatelliteTarget(m.sat),
                {"dh_km": m.dh_km, "dwell_s": m.dwell_s},
            )
        )
        if m.end_s < duration_s:
            events.append(
                FaultEvent(m.end_s, "maneuver_end", SatelliteTarget(m.sat), {"dh_km": m.dh_km})
            )
    events.sort(key=lambda e: e.sort_key)
    return events


def _isl_transition_trace(
    topo: GridTopology,
    maneuvers: Sequence[ManeuverEvent],
    config: SimulationConfig,
) -> Tuple[List[FaultEvent], float]:
    """ISL viability transitions on the step grid, plus the fraction of
    (link, step) samples below the threshold."""
    if topo.n_edges == 0:
        return [], 0.0
    times = np.arange(0.0, config.duration_s + config.step_s / 2.0, config.step_s)
    times[-1] = min(float(times[-1]), config.duration_s)
    events: List[FaultEvent] = []
    previous: Optional[np.ndarray] = None
    infeasible_samples = 0
    total_samples = 0
    for t in times:
        t = float(t)
        grazing, _ = topo.grazing(t, offsets_at(maneuvers, t))
        viable = grazing >= config.isl_threshold_km
        infeasible_samples += int(np.sum(~viable))
        total_samples += viable.size
        if previous is not None:
            for idx in np.nonzero(viable != previous)[0]:
                a, b = topo.edge_ids[idx]
                kind = "isl_up" if viable[idx] else "isl_down"
                events.append(
                    FaultEvent(t, kind, IslTarget(a, b), {"grazing_km": float(grazing[idx])})
                )
        previous = viable
    events.sort(key=lambda e: e.sort_key)
    return events, infeasible_samples / total_samples if total_samples else 0.0


def run_simulation(config: SimulationConfig, trace_path) -> dict:
    """Run every fault model and write the merged trace; returns the summary."""
    constellation = build_fleet(config)
    fleet = sorted(constellation)
    streams = RandomStreams(config.seed)
    duration = config.duration_s

    seu = sample_seu_events(config.faults, fleet, 0.0, duration, streams)
    maneuvers = sample_maneuvers(config.faults, fleet, 0.0, duration, streams)
    gs_ids = [gs.id for gs in config.ground_stations]
    spikes = sample_handover_spikes(config.faults, gs_ids, 0.0, duration, streams)

    rain: List[FaultEvent] = []
    if config.precipitation_csv is not None:
        series = read_precipitation_csv(config.precipitation_csv)
        rain = rain_events(config.faults, gs_ids, series, 0.0, duration)
    elif config.precipitation_mm_h is not None:
        series = [(0.0, config.precipitation_mm_h)]
        rain = rain_events(config.faults, gs_ids, series, 0.0, duration)

    topo = GridTopology(constellation, config.earth_radius_km)
    isl, infeasible_fraction = _isl_transition_trace(topo, maneuvers, config)

    events = merge_traces([seu, _maneuver_trace(maneuvers, duration), spikes, rain, isl])
    write_trace(trace_path, events)

    counts = Counter(e.kind for e in events)
    expected_seu = expected_seu_count(
        config.faults.seu_rate_per_device_day,
        config.faults.devices_per_satellite,
        len(fleet),
        duration / SECONDS_PER_DAY,
    )
    return {
        "config": config_to_dict(config),
        "trace_path": str(trace_path),
        "n_satellites": len(fleet),
        "n_isl_links": topo.n_edges,
        "n_events": len(events),
        "event_counts": dict(sorted(counts.items())),
        "expected_seu_count": expected_seu,
        "sampled_seu_count": counts.get("device_reboot", 0)
        + counts.get("device_permanent_failure", 0),
        "infeasible_link_sample_fraction": infeasible_fraction,
    }


def format_summary(summary: dict) -> str:
    """Human-readable report of a simulation run."""
    lines = [
        f"trace written to {summary['trace_path']}",
        f"satellites: {summary['n_satellites']}  isl links: {summary['n_isl_links']}",
        f"events: {summary['n_events']}",
    ]
    for kind, count in summary["event_counts"].items():
        lines.append(f"  {kind}: {count}")
    lines.append(
        "seu events: expected "
        f"{summary['expected_seu_count']:.3f}, sampled {summary['sampled_seu_count']}"
    )
    lines.append(
        f"infeasible link samples: {summary['infeasible_link_sample_fraction']:.4f}"
    )
    lines.append("config (defaults materialized):")
    lines.append(json.dumps(summary["config"], indent=2, sort_keys=True))
    return "\n".join(lines)
