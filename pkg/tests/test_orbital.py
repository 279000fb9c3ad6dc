import math

import numpy as np
import pytest

from leofault import (
    CircularElements,
    ShellSpec,
    build_constellation,
    orbital_period,
    propagate,
)
from leofault.constants import MU_EARTH_M3_S2


def kepler_period(a_km: float) -> float:
    # closed-form oracle, kept separate from the implementation under test
    return 2.0 * math.pi * math.sqrt((a_km * 1e3) ** 3 / MU_EARTH_M3_S2)


class TestOrbitalPeriod:
    def test_550_km(self):
        assert orbital_period(550.0) == pytest.approx(kepler_period(6921.0), abs=1e-9)
        assert orbital_period(550.0) == pytest.approx(5730.3, abs=0.5)

    def test_560_km(self):
        assert orbital_period(560.0) == pytest.approx(kepler_period(6931.0), abs=1e-9)
        assert orbital_period(560.0) == pytest.approx(5742.5, abs=0.5)

    def test_monotonic_in_altitude(self, rng):
        altitudes = rng.uniform(100.0, 1900.0, size=200)
        for alt in altitudes:
            assert orbital_period(alt) < orbital_period(alt + 100.0)

    @pytest.mark.parametrize("bad", [0.0, -1.0, -550.0])
    def test_rejects_nonpositive_altitude(self, bad):
        with pytest.raises(ValueError):
            orbital_period(bad)


class TestShellSpec:
    def test_valid(self):
        spec = ShellSpec(550.0, 53.0, 72, 22)
        assert spec.total_sats == 1584

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(altitude_km=100.0),
            dict(altitude_km=2500.0),
            dict(inclination_deg=-1.0),
            dict(inclination_deg=181.0),
            dict(planes=0),
            dict(sats_per_plane=0),
        ],
    )
    def test_invalid(self, kwargs):
        base = dict(altitude_km=550.0, inclination_deg=53.0, planes=72, sats_per_plane=22)
        base.update(kwargs)
        with pytest.raises(ValueError):
            ShellSpec(**base)


class TestBuildConstellation:
    def test_dense_shell_layout(self, dense_constellation):
        assert len(dense_constellation) == 1584
        raans = sorted({e.raan_deg for e in dense_constellation.values()})
        assert len(raans) == 72
        spacings = np.diff(raans)
        assert np.allclose(spacings, 5.0)
        # shell altitude shows up as the orbit radius
        assert all(
            e.semi_major_axis_km == pytest.approx(6921.0) for e in dense_constellation.values()
        )

    def test_single_satellite(self):
        c = build_constellation([ShellSpec(550.0, 53.0, 1, 1)])
        (elements,) = c.values()
        assert elements.raan_deg == 0.0
        assert elements.phase_deg == 0.0

    def test_two_shell_count(self, ):
        shells = [
            ShellSpec(550.0, 53.0, 72, 22),
            ShellSpec(560.0, 97.6, 6, 58),
        ]
        c = build_constellation(shells)
        assert len(c) == 1584 + 348 == 1932
        assert len(set(c)) == 1932  # no duplicate ids

    def test_phase_rule_with_walker_offset(self):
        spec = ShellSpec(550.0, 53.0, 4, 5, phase_offset_f=2)
        c = build_constellation([spec])
        for (shell, p, s), elements in c.items():
            expected = (s * 360.0 / 5 + p * 2 * 360.0 / 20) % 360.0
            assert elements.phase_deg == pytest.approx(expected, abs=1e-12)

    def test_counts_match_spec_sum(self):
        shells = [ShellSpec(550.0, 53.0, 3, 4), ShellSpec(700.0, 80.0, 5, 6)]
        c = build_constellation(shells)
        assert len(c) == 3 * 4 + 5 * 6


class TestPropagate:
    def test_radius_at_epoch(self):
        e = CircularElements(6921.0, 53.0, 10.0, 20.0)
        assert np.linalg.norm(propagate(e, 0.0)) == pytest.approx(6921.0, abs=1e-9)

    def test_radius_with_offset(self):
        e = CircularElements(6921.0, 53.0, 0.0, 0.0)
        assert np.linalg.norm(propagate(e, 0.0, 3.0)) == pytest.approx(6924.0, abs=1e-6)

    def test_periodicity(self):
        e = CircularElements(6921.0, 53.0, 40.0, 10.0)
        period = kepler_period(6921.0)
        p0 = propagate(e, 123.0)
        p1 = propagate(e, 123.0 + period)
        assert np.linalg.norm(p1 - p0) < 1e-6

    def test_periodicity_with_offset(self):
        e = CircularElements(6921.0, 53.0, 40.0, 10.0)
        offset = 2.5
        period = kepler_period(6921.0 + offset)
        p0 = propagate(e, 50.0, offset)
        p1 = propagate(e, 50.0 + period, offset)
        assert np.linalg.norm(p1 - p0) < 1e-6

    def test_radius_preserved_under_random_sampling(self, rng):
        for _ in range(100):
            a = rng.uniform(6500.0, 8300.0)
            e = CircularElements(
                a,
                rng.uniform(0.0, 180.0),
                rng.uniform(0.0, 360.0),
                rng.uniform(0.0, 360.0),
            )
            t = rng.uniform(0.0, 1e5)
            offset = rng.uniform(-10.0, 10.0)
            radius = np.linalg.norm(propagate(e, t, offset))
            assert abs(radius - (a + offset)) < 1e-6

    def test_inclination_preserved(self, rng):
        for _ in range(50):
            inclination = rng.uniform(1.0, 179.0)
            e = CircularElements(6921.0, inclination, rng.uniform(0.0, 360.0), 0.0)
            p0 = propagate(e, 0.0)
            p1 = propagate(e, 60.0)
            normal = np.cross(p0, p1)
            normal /= np.linalg.norm(normal)
            angle = math.acos(np.clip(normal[2], -1.0, 1.0))
            assert abs(angle - math.radians(inclination)) < 1e-9

    def test_elements_normalize_angles(self):
        e = CircularElements(6921.0, 53.0, 370.0, -10.0)
        assert e.raan_deg == pytest.approx(10.0)
        assert e.phase_deg == pytest.approx(350.0)
