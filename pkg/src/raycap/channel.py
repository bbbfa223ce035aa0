"""Direction-of-arrival channel matrices and the Gram-matrix diagnostic."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bessel import bessel_j0
from .geometry import (
    ArrayGeometry,
    Layout,
    RayDirection,
    direction_array,
    position_array,
)

__all__ = [
    "RayFan",
    "ChannelMatrix",
    "GramDiagnostic",
    "equal_angle_fan",
    "build_channel",
    "gram_diagnostic",
    "bessel_j0",
    "write_channel_csv",
    "read_channel_csv",
    "fan_from_angles",
]


@dataclass(frozen=True)
class RayFan:
    directions: tuple[RayDirection, ...]

    def __post_init__(self) -> None:
        dirs = tuple(self.directions)
        if not dirs:
            raise ValueError("a ray fan needs at least one direction")
        object.__setattr__(self, "directions", dirs)

    @property
    def n_t(self) -> int:
        return len(self.directions)

    def describe(self) -> str:
        phis = {d.phi for d in self.directions}
        phi = f"phi={phis.pop():g}" if len(phis) == 1 else "phi=mixed"
        return f"fan n_T={self.n_t} {phi}"


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """Complex ``n_R x n_T`` gain matrix; column ``j`` is ray ``j``'s steering vector."""

    entries: np.ndarray
    geometry: ArrayGeometry | None = None
    fan: RayFan | None = None

    def __post_init__(self) -> None:
        h = np.array(self.entries, dtype=complex)
        if h.ndim != 2 or 0 in h.shape:
            raise ValueError(f"channel matrix must be a non-empty 2-D array, got shape {h.shape}")
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)

    @property
    def n_r(self) -> int:
        return self.entries.shape[0]

    @property
    def n_t(self) -> int:
        return self.entries.shape[1]

    def gram(self) -> np.ndarray:
        """``H @ H^dagger``."""
        h = self.entries
        return h @ h.conj().T


@dataclass
class GramDiagnostic:
    n_t: int
    max_diag_error: float
    offdiag_normalized: np.ndarray
    offdiag_imag: np.ndarray
    bessel_prediction: np.ndarray | None = None
    max_bessel_deviation: float | None = None
    max_offdiag_magnitude: float = field(init=False)

    def __post_init__(self) -> None:
        n = self.offdiag_normalized.shape[0]
        if n < 2:
            self.max_offdiag_magnitude = 0.0
        else:
            mask = ~np.eye(n, dtype=bool)
            mag = np.hypot(self.offdiag_normalized, self.offdiag_imag)
            self.max_offdiag_magnitude = float(mag[mask].max())


def equal_angle_fan(n_t: int, phi: float = 0.0) -> RayFan:
    """``n_t`` rays at ``theta = j * 180 / n_t`` degrees, ``j = 0 .. n_t - 1``."""
    if isinstance(n_t, bool) or int(n_t) != n_t or n_t < 1:
        raise ValueError(f"number of rays must be a positive integer, got {n_t!r}")
    n_t = int(n_t)
    return RayFan(tuple(RayDirection(j * 180.0 / n_t, phi) for j in range(n_t)))


def build_channel(geometry: ArrayGeometry, fan: RayFan) -> ChannelMatrix:
    pos = position_array(geometry)
    dirs = direction_array(fan.directions)
    phase = geometry.wavenumber * (pos @ dirs.T)
    return ChannelMatrix(np.exp(1j * phase), geometry, fan)


def gram_diagnostic(h: ChannelMatrix, geometry: ArrayGeometry) -> GramDiagnostic:
    """Measure how far ``H H^dagger / n_T`` is from the identity.

    Diagonal entries are sums of ``n_T`` unit magnitudes, so they equal
    ``n_T`` up to rounding. Off-diagonals of a linear array under the
    equal-angle fan tend to ``J0(k d |i - j|)`` rather than zero; that
    prediction and the deviation from it are reported for linear arrays only.
    """
    if h.n_r != geometry.n_elements:
        raise ValueError(
            f"channel has {h.n_r} rows but geometry has {geometry.n_elements} elements"
        )
    n_t = h.n_t
    g = h.gram()
    max_diag_error = float(np.max(np.abs(np.diag(g).real - n_t)))
    normalized = g / n_t
    off = normalized.copy()
    np.fill_diagonal(off, 0.0)

    prediction = None
    deviation = None
    if geometry.layout is Layout.LINEAR:
        kd = geometry.wavenumber * geometry.spacing_z
        idx = np.arange(h.n_r)
        lag = np.abs(idx[:, None] - idx[None, :])
        table = {int(k): bessel_j0(kd * k) for k in np.unique(lag)}
        prediction = np.vectorize(table.__getitem__, otypes=[float])(lag)
        if h.n_r < 2:
            deviation = 0.0
        else:
            mask = ~np.eye(h.n_r, dtype=bool)
            deviation = float(np.abs(normalized - prediction)[mask].max())
    return GramDiagnostic(
        n_t=n_t,
        max_diag_error=max_diag_error,
        offdiag_normalized=off.real,
        offdiag_imag=off.imag,
        bessel_prediction=prediction,
        max_bessel_deviation=deviation,
    )


def write_channel_csv(h: ChannelMatrix, stream) -> None:
    """Write ``i,j,re,im`` rows with 17 significant digits."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["i", "j", "re", "im"])
    for (i, j), value in np.ndenumerate(h.entries):
        writer.writerow([i, j, f"{value.real:.17g}", f"{value.imag:.17g}"])


def read_channel_csv(stream) -> ChannelMatrix:
    rows = list(csv.DictReader(stream))
    if not rows:
        raise ValueError("channel CSV has no entries")
    n_r = 1 + max(int(r["i"]) for r in rows)
    n_t = 1 + max(int(r["j"]) for r in rows)
    h = np.full((n_r, n_t), np.nan, dtype=complex)
    for r in rows:
        h[int(r["i"]), int(r["j"])] = complex(float(r["re"]), float(r["im"]))
    if np.isnan(h).any():
        raise ValueError("channel CSV is missing entries")
    return ChannelMatrix(h)


def fan_from_angles(thetas: Sequence[float], phi: float = 0.0) -> RayFan:
    return RayFan(tuple(RayDirection(t, phi) for t in thetas))

