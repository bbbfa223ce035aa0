"""Log-det channel capacity under the three power-allocation setups.

``capacity`` works from the singular values of ``H`` so that large arrays
never form ``det(I + c H H^dagger)`` explicitly. ``log_det_oracle`` is the
independent small-matrix check that does.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelMatrix

# singular values below this fraction of the largest are exact zeros
RANK_TOLERANCE = 1e-12
ORACLE_MAX_ROWS = 8


class Setup(str, enum.Enum):
    """Power-allocation setup, i.e. the divisor applied to ``P / sigma^2``.

    ``STANDARD`` divides by ``n_T`` (equal power per transmit stream),
    ``SETUP1`` by ``n_R`` (constant power on every ray) and ``SETUP2`` by
    ``n_R * n_T`` (total power split across rays).
    """

    STANDARD = "standard"
    SETUP1 = "1"
    SETUP2 = "2"

    @classmethod
    def parse(cls, value) -> Setup:
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        aliases = {"0": "standard", "setup1": "1", "setup2": "2"}
        text = aliases.get(text, text)
        try:
            return cls(text)
        except ValueError:
            raise ValueError(
                f"unknown setup {value!r}; expected one of standard, 1, 2"
            ) from None

    def divisor(self, n_r: int, n_t: int) -> int:
        if self is Setup.STANDARD:
            return n_t
        if self is Setup.SETUP1:
            return n_r
        return n_r * n_t


@dataclass(frozen=True)
class CapacityConfig:
    transmit_power: float = 1.0
    noise_power: float = 1.0
    setup: Setup = Setup.SETUP1

    def __post_init__(self) -> None:
        if not (math.isfinite(self.transmit_power) and self.transmit_power > 0):
            raise ValueError(f"transmit power must be positive, got {self.transmit_power}")
        if not (math.isfinite(self.noise_power) and self.noise_power > 0):
            raise ValueError(f"noise power must be positive, got {self.noise_power}")
        object.__setattr__(self, "setup", Setup.parse(self.setup))

    @classmethod
    def from_snr(cls, snr: float, setup=Setup.SETUP1, noise_power: float = 1.0) -> CapacityConfig:
        """Config with ``P = snr * noise_power``; ``snr`` is a linear ratio."""
        return cls(snr * noise_power, noise_power, setup)

    @classmethod
    def from_snr_db(cls, snr_db: float, setup=Setup.SETUP1, noise_power: float = 1.0) -> CapacityConfig:
        return cls.from_snr(db_to_linear(snr_db), setup, noise_power)

    @property
    def snr(self) -> float:
        return self.transmit_power / self.noise_power

    def scale(self, n_r: int, n_t: int) -> float:
        """Coefficient multiplying ``H H^dagger`` inside the determinant."""
        return self.snr / self.setup.divisor(n_r, n_t)


@dataclass(frozen=True)
class CapacityResult:
    bits: float
    scale: float
    singular_values: np.ndarray


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def capacity(h: ChannelMatrix, cfg: CapacityConfig) -> CapacityResult:
    """Capacity in bit/s/Hz as ``sum_i log2(1 + scale * s_i^2)``."""
    scale = cfg.scale(h.n_r, h.n_t)
    s = np.linalg.svd(h.entries, compute_uv=False)
    if s.size and s[0] > 0:
        s = np.where(s < RANK_TOLERANCE * s[0], 0.0, s)
    bits = float(np.sum(np.log2(1.0 + scale * s * s)))
    return CapacityResult(bits, scale, s)


def siso_awgn_capacity(snr: float) -> float:
    """Shannon capacity ``log2(1 + snr)`` for a linear ``snr``."""
    if not snr >= 0:
        raise ValueError(f"snr must be non-negative, got {snr}")
    return math.log2(1.0 + snr)


def setup2_large_nt_limit(n_r: int, snr: float) -> float:
    """Setup-2 capacity once ``H H^dagger`` is replaced by ``n_T I``: ``n_R log2(1 + snr/n_R)``."""
    if n_r < 1:
        raise ValueError(f"n_R must be at least 1, got {n_r}")
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")
    return n_r * math.log1p(snr / n_r) / math.log(2.0)


def setup2_double_limit(snr: float) -> float:
    """Limit of the large-``n_T`` value as ``n_R`` grows too: ``snr / ln 2``."""
    if not snr > 0:
        raise ValueError(f"snr must be positive, got {snr}")
    return snr / math.log(2.0)


def _complex_det(a: list[list[complex]]) -> complex:
    # Gaussian elimination with partial pivoting
    n = len(a)
    a = [row[:] for row in a]
    det = 1.0 + 0.0j
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            return 0.0j
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return det


def log_det_oracle(h: ChannelMatrix, scale: float) -> float:
    """``log2 det(I + scale H H^dagger)`` by explicit elimination, ``n_R <= 8`` only."""
    if h.n_r > ORACLE_MAX_ROWS:
        raise ValueError(f"log_det_oracle supports n_R <= {ORACLE_MAX_ROWS}, got {h.n_r}")
    rows = h.entries.tolist()
    n = h.n_r
    a = [[0j] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = sum(x * y.conjugate() for x, y in zip(rows[i], rows[j]))
            a[i][j] = (1.0 if i == j else 0.0) + scale * acc
    det = _complex_det(a)
    return math.log2(det.real)
