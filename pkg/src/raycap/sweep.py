"""Parameter sweeps over array size, ray count, SNR and azimuth.

Every row is produced by the same ``build_channel`` + ``capacity`` calls a
caller would make by hand, so rows are bit-identical to standalone
evaluations. Points may run on a thread pool; results are always assembled
in sweep order.
"""

from __future__ import annotations

import datetime as _dt
import enum
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .capacity import CapacityConfig, Setup, capacity, db_to_linear, siso_awgn_capacity
from .channel import build_channel, equal_angle_fan
from .geometry import ArrayGeometry

FORMAT_TAG = "# raycap sweep v1"
DEFAULT_SNR_DB = tuple(range(-10, 31))
DEFAULT_PHI_DEG = tuple(range(0, 91, 5))


class SweptVariable(str, enum.Enum):
    ANTENNA_COUNT = "n_R"
    RAY_COUNT = "n_T"
    SNR_DB = "snr_db"
    PHI_DEG = "phi_deg"


class Comparison(str, enum.Enum):
    NONE = "none"
    AGAINST_SISO = "siso"
    LINEAR_VS_SQUARE = "linear_vs_square"


@dataclass(frozen=True)
class SweepSpec:
    swept: SweptVariable
    values: tuple
    fixed: dict = field(default_factory=dict)
    comparison: Comparison = Comparison.NONE

    def __post_init__(self) -> None:
        values = tuple(self.values)
        if not values:
            raise ValueError("sweep values must not be empty")
        if any(not math.isfinite(v) for v in values):
            raise ValueError("sweep values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        object.__setattr__(self, "values", values)


@dataclass
class SweepSeries:
    spec: SweepSpec
    columns: tuple[str, ...]
    rows: list[tuple]
    metadata: dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        k = self.columns.index(name)
        return np.array([row[k] for row in self.rows], dtype=float)

    @property
    def x(self) -> np.ndarray:
        return self.column(self.columns[0])


def _run(fn: Callable, values: Sequence, threads: int) -> list:
    if threads <= 1 or len(values) < 2:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, values))


def _positive_ints(values: Sequence, name: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool) or int(v) != v or v < 1:
            raise ValueError(f"{name} values must be positive integers, got {v!r}")
        out.append(int(v))
    return tuple(out)


def _finish(spec, columns, rows, metadata) -> SweepSeries:
    for row in rows:
        for y in row[1:]:
            if not (math.isfinite(y) and y >= 0):
                raise ArithmeticError(f"sweep produced an invalid capacity {y!r}")
    metadata = dict(metadata)
    metadata["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return SweepSeries(spec, tuple(columns), rows, metadata)


def _linear_meta(wavelength, spacing, cfg: CapacityConfig) -> dict:
    return {
        "wavelength": wavelength,
        "spacing": wavelength / 2.0 if spacing is None else spacing,
        "setup": cfg.setup.value,
        "noise_power": cfg.noise_power,
    }


def sweep_antennas(
    n_t: int,
    n_r_values: Sequence[int],
    cfg: CapacityConfig,
    phi: float = 0.0,
    wavelength: float = 1.0,
    spacing: float | None = None,
    threads: int = 1,
) -> SweepSeries:
    """Capacity of a linear array versus its element count, ray count fixed."""
    n_r_values = _positive_ints(n_r_values, "n_R")
    fan = equal_angle_fan(n_t, phi)
    spec = SweepSpec(
        SweptVariable.ANTENNA_COUNT,
        n_r_values,
        {"n_T": n_t, "phi_deg": phi, "snr": cfg.snr},
    )

    def point(n_r):
        h = build_channel(ArrayGeometry.linear(n_r, wavelength, spacing), fan)
        return (n_r, capacity(h, cfg).bits)

    rows = _run(point, n_r_values, threads)
    meta = _linear_meta(wavelength, spacing, cfg) | {"n_T": n_t, "phi_deg": phi, "snr": cfg.snr}
    return _finish(spec, ("n_R", "capacity_bits"), rows, meta)


def sweep_rays(
    n_r: int,
    n_t_values: Sequence[int],
    cfg: CapacityConfig,
    phi: float = 0.0,
    wavelength: float = 1.0,
    spacing: float | None = None,
    threads: int = 1,
) -> SweepSeries:
    """Capacity of a fixed linear array versus the number of rays."""
    n_t_values = _positive_ints(n_t_values, "n_T")
    geometry = ArrayGeometry.linear(n_r, wavelength, spacing)
    spec = SweepSpec(
        SweptVariable.RAY_COUNT,
        n_t_values,
        {"n_R": n_r, "phi_deg": phi, "snr": cfg.snr},
    )

    def point(n_t):
        h = build_channel(geometry, equal_angle_fan(n_t, phi))
        return (n_t, capacity(h, cfg).bits)

    rows = _run(point, n_t_values, threads)
    meta = _linear_meta(wavelength, spacing, cfg) | {"n_R": n_r, "phi_deg": phi, "snr": cfg.snr}
    return _finish(spec, ("n_T", "capacity_bits"), rows, meta)


def sweep_snr_vs_siso(
    n_r: int,
    n_t: int,
    snr_db_values: Sequence[float] = DEFAULT_SNR_DB,
    setup: Setup | str = Setup.SETUP1,
    noise_power: float = 1.0,
    phi: float = 0.0,
    wavelength: float = 1.0,
    spacing: float | None = None,
    threads: int = 1,
) -> SweepSeries:
    """MIMO capacity next to the SISO AWGN baseline at the same SNR."""
    setup = Setup.parse(setup)
    spec = SweepSpec(
        SweptVariable.SNR_DB,
        tuple(snr_db_values),
        {"n_R": n_r, "n_T": n_t, "phi_deg": phi},
        Comparison.AGAINST_SISO,
    )
    h = build_channel(ArrayGeometry.linear(n_r, wavelength, spacing), equal_angle_fan(n_t, phi))

    def point(db):
        cfg = CapacityConfig.from_snr_db(db, setup, noise_power)
        return (db, capacity(h, cfg).bits, siso_awgn_capacity(db_to_linear(db)))

    rows = _run(point, spec.values, threads)
    probe = CapacityConfig(1.0, noise_power, setup)
    meta = _linear_meta(wavelength, spacing, probe) | {"n_R": n_r, "n_T": n_t, "phi_deg": phi}
    return _finish(spec, ("snr_db", "mimo_bits", "siso_bits"), rows, meta)


def sweep_phi(
    side: int,
    n_t: int,
    phi_values: Sequence[float] = DEFAULT_PHI_DEG,
    cfg: CapacityConfig | None = None,
    wavelength: float = 1.0,
    spacing: float | None = None,
    threads: int = 1,
) -> SweepSeries:
    """Capacity of a ``side x side`` planar array versus the rays' azimuth.

    Metadata records the spread (max - min) over the sweep and the azimuth of
    the largest capacity, ties resolved toward the larger azimuth.
    """
    cfg = cfg or CapacityConfig()
    geometry = ArrayGeometry.planar(side, side, wavelength, spacing, spacing)
    spec = SweepSpec(
        SweptVariable.PHI_DEG,
        tuple(phi_values),
        {"side": side, "n_T": n_t, "snr": cfg.snr},
    )

    def point(phi):
        h = build_channel(geometry, equal_angle_fan(n_t, phi))
        return (phi, capacity(h, cfg).bits)

    rows = _run(point, spec.values, threads)
    ys = [y for _, y in rows]
    best = max(ys)
    argmax = max(phi for phi, y in rows if y == best)
    meta = _linear_meta(wavelength, spacing, cfg) | {
        "side": side,
        "n_T": n_t,
        "snr": cfg.snr,
        "argmax_phi_deg": argmax,
        "phi_variation_bits": best - min(ys),
    }
    return _finish(spec, ("phi_deg", "capacity_bits"), rows, meta)


def compare_linear_square(
    n_elements: int,
    n_t: int,
    snr_db_values: Sequence[float] = DEFAULT_SNR_DB,
    setup: Setup | str = Setup.SETUP1,
    noise_power: float = 1.0,
    phi: float = 90.0,
    wavelength: float = 1.0,
    spacing: float | None = None,
    threads: int = 1,
) -> SweepSeries:
    """Linear array of ``n_elements`` against the square array with the same count."""
    side = math.isqrt(n_elements) if n_elements >= 1 else 0
    if side * side != n_elements:
        raise ValueError(f"element count must be a perfect square, got {n_elements}")
    setup = Setup.parse(setup)
    spec = SweepSpec(
        SweptVariable.SNR_DB,
        tuple(snr_db_values),
        {"n_elements": n_elements, "n_T": n_t, "phi_deg": phi},
        Comparison.LINEAR_VS_SQUARE,
    )
    fan = equal_angle_fan(n_t, phi)
    h_lin = build_channel(ArrayGeometry.linear(n_elements, wavelength, spacing), fan)
    h_sq = build_channel(ArrayGeometry.planar(side, side, wavelength, spacing, spacing), fan)

    def point(db):
        cfg = CapacityConfig.from_snr_db(db, setup, noise_power)
        return (db, capacity(h_lin, cfg).bits, capacity(h_sq, cfg).bits)

    rows = _run(point, spec.values, threads)
    probe = CapacityConfig(1.0, noise_power, setup)
    meta = _linear_meta(wavelength, spacing, probe) | {
        "n_elements": n_elements,
        "side": side,
        "n_T": n_t,
        "phi_deg": phi,
    }
    return _finish(spec, ("snr_db", "linear_bits", "square_bits"), rows, meta)


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return f"{float(v):.9g}"


def _meta_items(series: SweepSeries, reproducible: bool):
    for key in sorted(series.metadata):
        if reproducible and key == "timestamp":
            continue
        value = series.metadata[key]
        yield key, value


def to_csv(series: SweepSeries, reproducible: bool = False) -> str:
    """Tag line, header line, data rows, then ``# key=value`` metadata lines.

    The timestamp line is dropped when ``reproducible`` is set.
    """
    out = io.StringIO()
    out.write(FORMAT_TAG + "\n")
    out.write(",".join(series.columns) + "\n")
    for row in series.rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")
    for key, value in _meta_items(series, reproducible):
        text = value if isinstance(value, str) else _fmt(value)
        out.write(f"# {key}={text}\n")
    return out.getvalue()


def to_json(series: SweepSeries, reproducible: bool = False) -> str:
    def num(v):
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return int(v)
        return float(_fmt(v))

    doc = {
        "format": FORMAT_TAG.lstrip("# "),
        "columns": list(series.columns),
        "rows": [[num(v) for v in row] for row in series.rows],
        "metadata": {
            k: (v if isinstance(v, str) else num(v))
            for k, v in _meta_items(series, reproducible)
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def read_csv(text: str) -> tuple[tuple[str, ...], list[tuple[float, ...]], dict[str, str]]:
    """Parse :func:`to_csv` output back into columns, rows and metadata."""
    lines = text.splitlines()
    if not lines or lines[0] != FORMAT_TAG:
        raise ValueError("not a raycap sweep CSV")
    columns = tuple(lines[1].split(","))
    rows = []
    meta = {}
    for line in lines[2:]:
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            meta[key] = value
        elif line:
            rows.append(tuple(float(v) for v in line.split(",")))
    return columns, rows, meta
