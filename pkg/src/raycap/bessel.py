"""Bessel function of the first kind, order zero.

Power series below ``SERIES_CROSSOVER``, Hankel asymptotic expansion above.
Both branches agree to about 1e-12 at the crossover.
"""

import math

SERIES_CROSSOVER = 12.0


def j0_series(x: float) -> float:
    """Sum ``sum_k (-1)^k (x/2)^(2k) / (k!)^2`` until terms stop mattering."""
    q = -(x * x) / 4.0
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        total += term
        if abs(term) < 1e-17 * max(1.0, abs(total)) and k * k > abs(q):
            return total


def j0_asymptotic(x: float) -> float:
    """Hankel expansion ``sqrt(2/(pi x)) (P cos chi - Q sin chi)``, ``chi = x - pi/4``.

    The series is divergent; it is truncated at its smallest term.
    """
    inv8x = 1.0 / (8.0 * x)
    p = 0.0
    q = 0.0
    a = 1.0  # a_k = prod_{i<=k} (-(2i-1)^2) / (k! (8x)^k)
    last = math.inf
    k = 0
    while True:
        size = abs(a)
        if size >= last or size < 1e-18:
            break
        last = size
        # P gathers even k with sign (-1)^(k/2), Q odd k with sign (-1)^((k-1)/2)
        if k % 2 == 0:
            p += a if k % 4 == 0 else -a
        else:
            q += a if k % 4 == 1 else -a
        k += 1
        a *= -((2 * k - 1) ** 2) * inv8x / k
    chi = x - math.pi / 4.0
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(chi) - q * math.sin(chi))


def bessel_j0(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"bessel_j0 requires a finite argument, got {x}")
    x = abs(x)
    if x <= SERIES_CROSSOVER:
        return j0_series(x)
    return j0_asymptotic(x)
