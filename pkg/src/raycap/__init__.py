"""Direction-of-arrival MIMO channel capacity and satellite cap coverage."""

from .capacity import (
    CapacityConfig,
    CapacityResult,
    Setup,
    capacity,
    log_det_oracle,
    setup2_double_limit,
    setup2_large_nt_limit,
    siso_awgn_capacity,
)
from .channel import (
    ChannelMatrix,
    GramDiagnostic,
    RayFan,
    bessel_j0,
    build_channel,
    equal_angle_fan,
    gram_diagnostic,
)
from .geometry import ArrayGeometry, Layout, Position3, RayDirection

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "CapacityConfig",
    "CapacityResult",
    "ChannelMatrix",
    "GramDiagnostic",
    "Layout",
    "Position3",
    "RayDirection",
    "RayFan",
    "Setup",
    "bessel_j0",
    "build_channel",
    "capacity",
    "equal_angle_fan",
    "gram_diagnostic",
    "log_det_oracle",
    "setup2_double_limit",
    "setup2_large_nt_limit",
    "siso_awgn_capacity",
]
