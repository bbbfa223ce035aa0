"""Antenna array layouts and per-element steering gains.

Linear arrays lie on the z-axis with element ``m`` at ``(0, 0, m*d)``.
Planar arrays lie in the yz-plane with element ``(m, n)`` at
``(0, m*d_y, n*d_z)``; flattened element order is row-major (``m`` outer,
``n`` inner), so a 1 x N planar array has the same element list as a
linear array of N elements.

All angles are in degrees at the interface and converted once internally.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class Layout(str, enum.Enum):
    LINEAR = "linear"
    PLANAR = "planar"


class Position3(NamedTuple):
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class RayDirection:
    """Incident direction, polar angle ``theta`` from +z and azimuth ``phi``.

    ``theta`` must lie in [0, 180]; ``phi`` is wrapped into [0, 360).
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError("ray angles must be finite")
        if not 0.0 <= theta <= 180.0:
            raise ValueError(f"theta must lie in [0, 180] degrees, got {theta}")
        phi = phi % 360.0
        # -1e-20 % 360 rounds to 360.0
        if phi >= 360.0:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear or planar array.

    Build instances with :meth:`linear` or :meth:`planar`. For a linear array
    ``rows`` is 1, ``cols`` is the element count and ``spacing_y`` is unused.
    """

    layout: Layout
    rows: int
    cols: int
    wavelength: float = 1.0
    spacing_z: float = 0.5
    spacing_y: float | None = None

    def __post_init__(self) -> None:
        for name in ("rows", "cols"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.layout is Layout.LINEAR and self.rows != 1:
            raise ValueError("a linear array has exactly one row")
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not (math.isfinite(self.spacing_z) and self.spacing_z > 0):
            raise ValueError(f"spacing must be positive, got {self.spacing_z}")
        if self.layout is Layout.PLANAR:
            if self.spacing_y is None:
                object.__setattr__(self, "spacing_y", self.spacing_z)
            elif not (math.isfinite(self.spacing_y) and self.spacing_y > 0):
                raise ValueError(f"spacing_y must be positive, got {self.spacing_y}")

    @classmethod
    def linear(
        cls, n_elements: int, wavelength: float = 1.0, spacing: float | None = None
    ) -> ArrayGeometry:
        """Linear array on the z-axis; ``spacing`` defaults to half a wavelength."""
        if spacing is None:
            spacing = wavelength / 2.0
        return cls(Layout.LINEAR, 1, n_elements, float(wavelength), float(spacing))

    @classmethod
    def planar(
        cls,
        rows: int,
        cols: int,
        wavelength: float = 1.0,
        spacing_y: float | None = None,
        spacing_z: float | None = None,
    ) -> ArrayGeometry:
        """Rectangular grid in the yz-plane, ``rows`` along y and ``cols`` along z."""
        half = wavelength / 2.0
        return cls(
            Layout.PLANAR,
            rows,
            cols,
            float(wavelength),
            float(half if spacing_z is None else spacing_z),
            float(half if spacing_y is None else spacing_y),
        )

    @property
    def n_elements(self) -> int:
        return self.rows * self.cols

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    def describe(self) -> str:
        if self.layout is Layout.LINEAR:
            return (
                f"linear n={self.cols} wavelength={self.wavelength:g} "
                f"spacing={self.spacing_z:g}"
            )
        return (
            f"planar {self.rows}x{self.cols} wavelength={self.wavelength:g} "
            f"spacing_y={self.spacing_y:g} spacing_z={self.spacing_z:g}"
        )


def linear_positions(geometry: ArrayGeometry) -> list[Position3]:
    if geometry.layout is not Layout.LINEAR:
        raise ValueError("linear_positions requires a linear array")
    d = geometry.spacing_z
    return [Position3(0.0, 0.0, m * d) for m in range(geometry.cols)]


def planar_positions(geometry: ArrayGeometry) -> list[Position3]:
    if geometry.layout is not Layout.PLANAR:
        raise ValueError("planar_positions requires a planar array")
    dy, dz = geometry.spacing_y, geometry.spacing_z
    return [
        Position3(0.0, m * dy, n * dz)
        for m in range(geometry.rows)
        for n in range(geometry.cols)
    ]


def positions(geometry: ArrayGeometry) -> list[Position3]:
    """Element positions for either layout, in flattened order."""
    if geometry.layout is Layout.LINEAR:
        return linear_positions(geometry)
    return planar_positions(geometry)


def position_array(geometry: ArrayGeometry) -> np.ndarray:
    """Element positions as an ``(n_elements, 3)`` float array."""
    return np.array(positions(geometry), dtype=float).reshape(-1, 3)


def unit_direction(direction: RayDirection) -> Position3:
    theta = math.radians(direction.theta)
    phi = math.radians(direction.phi)
    st = math.sin(theta)
    return Position3(st * math.cos(phi), st * math.sin(phi), math.cos(theta))


def direction_array(directions) -> np.ndarray:
    """Unit vectors for a sequence of :class:`RayDirection`, shape ``(n, 3)``."""
    return np.array([unit_direction(d) for d in directions], dtype=float).reshape(-1, 3)


def steering_gain(pos: Position3, direction: RayDirection, wavelength: float) -> complex:
    """Unit-modulus gain ``exp(j k (r_hat . pos))`` with ``k = 2 pi / wavelength``."""
    if not wavelength > 0:
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    u = unit_direction(direction)
    path = u.x * pos[0] + u.y * pos[1] + u.z * pos[2]
    phase = 2.0 * math.pi / wavelength * path
    return complex(math.cos(phase), math.sin(phase))
