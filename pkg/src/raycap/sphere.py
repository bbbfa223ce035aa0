"""Spherical-cap coverage of N satellites from tabulated spherical codes.

Angular separations ``d_N`` are the best known Tammes packings; covering
radii ``r_N`` are conjectured optimal coverings of the sphere by N equal
caps. Both tables cover N = 4..17 and are transcribed, not computed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

N_MIN = 4
N_MAX = 17

# N: (d_N, r_N) in degrees
_TABLE: dict[int, tuple[float, float]] = {
    4: (109.4712206, 70.5287),
    5: (90.0000000, 63.4349),
    6: (90.0000000, 54.7356),
    7: (77.8695421, 51.0265),
    8: (74.8584922, 48.1395),
    9: (70.5287794, 45.8788),
    10: (66.1468220, 42.3078),
    11: (63.4349488, 41.4271),
    12: (63.4349488, 37.3773),
    13: (57.1367031, 37.0685),
    14: (55.6705700, 34.9379),
    15: (53.6578501, 34.0399),
    16: (52.2443957, 32.8988),
    17: (51.0903285, 32.0929),
}

# Published coverage figures, kept for comparison output only.
PUBLISHED_PACKING_COVERAGE: dict[int, float] = {
    4: 0.8386, 5: 0.7322, 6: 0.8787, 7: 0.7775, 8: 0.8234, 9: 0.8258,
    10: 0.8101, 11: 0.8214, 12: 0.8961, 13: 0.7914, 14: 0.8099,
    15: 0.8073, 16: 0.8171, 17: 0.8309,
}
PUBLISHED_COVERING_DENSITY: dict[int, float] = {
    4: 1.3333, 5: 1.3819, 6: 1.2679, 7: 1.2986, 8: 1.3307, 9: 1.3672,
    10: 1.3023, 11: 1.3761, 12: 1.2320, 13: 1.3135, 14: 1.2615,
    15: 1.2851, 16: 1.2829, 17: 1.2989,
}


class CoverageMode(str, enum.Enum):
    PACKING = "packing"
    COVERING = "covering"


@dataclass(frozen=True)
class SphericalCodeEntry:
    n: int
    tammes_separation: float
    covering_radius: float


@dataclass(frozen=True)
class CoverageReport:
    n: int
    mode: CoverageMode
    cap_angular_radius: float
    coverage_fraction: float


def _check_n(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or not N_MIN <= n <= N_MAX:
        raise ValueError(
            f"N={n!r} is outside the tabulated range {N_MIN}..{N_MAX}"
        )
    return int(n)


def entry(n: int) -> SphericalCodeEntry:
    n = _check_n(n)
    d, r = _TABLE[n]
    return SphericalCodeEntry(n, d, r)


def entries() -> list[SphericalCodeEntry]:
    return [entry(n) for n in range(N_MIN, N_MAX + 1)]


def tammes_separation(n: int) -> float:
    return _TABLE[_check_n(n)][0]


def covering_radius(n: int) -> float:
    return _TABLE[_check_n(n)][1]


def cap_area_fraction(angular_radius: float) -> float:
    """Fraction of the sphere inside a cap of the given angular radius (degrees)."""
    if not 0.0 < angular_radius <= 180.0:
        raise ValueError(f"cap radius must lie in (0, 180] degrees, got {angular_radius}")
    return (1.0 - math.cos(math.radians(angular_radius))) / 2.0


def packing_coverage(n: int) -> CoverageReport:
    """N disjoint caps of radius ``d_N / 2``."""
    radius = tammes_separation(n) / 2.0
    return CoverageReport(n, CoverageMode.PACKING, radius, n * cap_area_fraction(radius))


def covering_density(n: int) -> CoverageReport:
    """N caps of radius ``r_N``; the total exceeds 1 because caps overlap."""
    radius = covering_radius(n)
    return CoverageReport(n, CoverageMode.COVERING, radius, n * cap_area_fraction(radius))
