"""Physical constants shared across the simulator.

All distances are kilometers and all times are seconds unless a name says
otherwise. The Earth is modeled as a sphere of mean radius; functions that
depend on the radius take it as a keyword argument defaulting to
EARTH_RADIUS_KM so alternative reference spheres can be used.
"""

EARTH_RADIUS_KM = 6371.0
MU_EARTH_M3_S2 = 3.986004418e14
SPEED_OF_LIGHT_KM_S = 299792.458
SIDEREAL_DAY_S = 86164.0905
SECONDS_PER_DAY = 86400.0
SECONDS_PER_YEAR = 365.25 * 86400.0
