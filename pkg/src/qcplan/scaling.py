"""Closed-form surface-code arithmetic.

Distance/qubit-count relations for a planar patch, the logical-error
scaling law p_l = c1 * (c2 * p)^((d+1)/2) together with its inversions,
and the memory cost of storing a full state vector classically.
"""

from __future__ import annotations

import dataclasses
import math

from .errors import AboveThresholdError

_MAX_SCAN_DISTANCE = 9999


@dataclasses.dataclass(frozen=True)
class ScalingParams:
    """Constants of the logical-error scaling law.

    c1 is a dimensionless prefactor; c2 has units of inverse error rate,
    so 1/c2 is the code threshold.  There is deliberately no default:
    values come either from a Monte Carlo fit or from an explicit,
    documented anchor (see ``presets``).
    """

    c1: float
    c2: float

    def __post_init__(self) -> None:
        if not (self.c1 > 0 and math.isfinite(self.c1)):
            raise ValueError(f"c1 must be a positive real, got {self.c1}")
        if not (self.c2 > 0 and math.isfinite(self.c2)):
            raise ValueError(f"c2 must be a positive real, got {self.c2}")


def qubits_for_distance(d: int) -> int:
    """Physical qubits in a distance-d planar patch: (2d-1)^2."""
    if d < 1:
        raise ValueError(f"distance must be >= 1, got {d}")
    return (2 * d - 1) ** 2


def distance_for_qubits(n: int) -> int:
    """Largest code distance supported by an n-qubit square patch.

    floor((sqrt(n) + 1) / 2), computed with integer square roots so the
    round trip with qubits_for_distance is exact for every odd d.
    """
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    return (math.isqrt(n) + 1) // 2


def logical_error_rate(p: float, d: float, params: ScalingParams) -> float:
    """Logical failure rate per round, c1 * (c2*p)^((d+1)/2).

    Evaluated in log space to avoid underflow at large distances.
    Fractional or even d are accepted (the formula is smooth); values
    above 1 are returned raw, see ``is_saturated``.
    """
    _check_error_rate(p)
    if d < 1:
        raise ValueError(f"distance must be >= 1, got {d}")
    if p == 0.0:
        return 0.0
    exponent = (d + 1.0) / 2.0
    return math.exp(
        math.log(params.c1) + exponent * (math.log(params.c2) + math.log(p))
    )


def logical_error_rate_per_qubits(p: float, n: int, params: ScalingParams) -> float:
    """Scaling law expressed in patch qubit count n, exponent (sqrt(n)+3)/4.

    Agrees exactly with logical_error_rate at n = (2d-1)^2; defined by the
    same smooth formula for any other n >= 1.
    """
    _check_error_rate(p)
    if n < 1:
        raise ValueError(f"qubit count must be >= 1, got {n}")
    if p == 0.0:
        return 0.0
    exponent = (math.sqrt(n) + 3.0) / 4.0
    return math.exp(
        math.log(params.c1) + exponent * (math.log(params.c2) + math.log(p))
    )


def is_saturated(p_l: float) -> bool:
    """True when an analytic logical rate exceeds 1 and is only meaningful
    as a fit residual, not as a probability."""
    return p_l > 1.0


def required_distance(p: float, target: float, params: ScalingParams) -> int:
    """Smallest odd distance d >= 3 with logical_error_rate(p, d) <= target.

    The comparison allows 1e-12 relative slack so that mathematically
    exact boundary cases are not tipped over by log-space rounding.
    Raises AboveThresholdError when p >= 1/c2: past the threshold the
    logical error rate grows with distance and no solution exists.
    """
    _check_error_rate(p)
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must be in (0, 1), got {target}")
    if p <= 0.0:
        raise ValueError("p must be positive; at p=0 any distance suffices")
    if p * params.c2 >= 1.0:
        raise AboveThresholdError(
            f"p={p} is at or above the threshold 1/c2={1.0 / params.c2:.6g}; "
            "increasing code distance makes the logical error rate worse"
        )
    cutoff = target * (1.0 + 1e-12)
    for d in range(3, _MAX_SCAN_DISTANCE + 1, 2):
        if logical_error_rate(p, d, params) <= cutoff:
            return d
    raise AboveThresholdError(
        f"no odd distance <= {_MAX_SCAN_DISTANCE} reaches target {target}"
    )  # pragma: no cover - unreachable below threshold


def threshold(params: ScalingParams) -> float:
    """Code threshold 1/c2, clamped to 1 for reporting."""
    return min(1.0, 1.0 / params.c2)


def statevector_memory_bytes(n_qubits: int) -> int:
    """Bytes needed to store an n-qubit state vector: 2 * 8 * 2^n.

    One complex amplitude per basis state, two 8-byte doubles each.
    Exact big integer, no overflow.
    """
    if n_qubits < 0:
        raise ValueError(f"qubit count must be >= 0, got {n_qubits}")
    return 16 << n_qubits


def format_petabytes(num_bytes: int) -> str:
    """Render a byte count in decimal petabytes, e.g. '144 PB'."""
    pb = num_bytes / 1e15
    if pb >= 10:
        return f"{pb:.0f} PB"
    return f"{pb:.3g} PB"


def _check_error_rate(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"error rate must be in [0, 1], got {p}")
