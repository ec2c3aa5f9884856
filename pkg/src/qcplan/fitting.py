"""Scaling-law fitting and threshold estimation from Monte Carlo sweeps.

The model is log p_l = log c1 + ((d+1)/2) * (log c2 + log p): linear in
(log c1, log c2) once the exponent k = (d+1)/2 is known, so a weighted
least-squares on z = log p_l - k log p against [1, k] recovers both
constants.  Weights are inverse variances of log p_l; points with fewer
than ``min_failures`` observed failures are dropped because log-space
least squares is badly biased at tiny counts.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Mapping, Sequence

from .errors import DegenerateDesignError, InsufficientDataError, NoCrossingError

DEFAULT_MIN_FAILURES = 10


@dataclasses.dataclass(frozen=True)
class FitPoint:
    p: float
    d: int
    p_l_hat: float
    std_err: float
    failures: int | None = None

    def observed_failures(self) -> float:
        """Failures if recorded; otherwise recovered from the binomial
        standard error (n = p(1-p)/se^2)."""
        if self.failures is not None:
            return float(self.failures)
        if self.std_err <= 0 or self.p_l_hat <= 0:
            return 0.0
        n = self.p_l_hat * (1.0 - self.p_l_hat) / self.std_err**2
        return self.p_l_hat * n


@dataclasses.dataclass(frozen=True)
class ScalingFit:
    c1_hat: float
    c2_hat: float
    residual_r2: float
    points_used: tuple[FitPoint, ...]

    @property
    def threshold_hat(self) -> float:
        return min(1.0, 1.0 / self.c2_hat)


def fit_scaling(
    points: Sequence[FitPoint | tuple],
    min_failures: int = DEFAULT_MIN_FAILURES,
) -> ScalingFit:
    """Weighted log-space least squares for (c1, c2).

    Requires at least 4 usable points spanning at least two distinct
    distances and two distinct error rates.
    """
    pts = [pt if isinstance(pt, FitPoint) else FitPoint(*pt) for pt in points]
    usable = [
        pt
        for pt in pts
        if pt.p > 0 and pt.p_l_hat > 0 and pt.observed_failures() >= min_failures
    ]
    if len(usable) < 4:
        raise InsufficientDataError(
            f"need >= 4 usable points (p_l > 0, failures >= {min_failures}); "
            f"got {len(usable)} of {len(pts)}"
        )
    if len({pt.d for pt in usable}) < 2 or len({pt.p for pt in usable}) < 2:
        raise DegenerateDesignError(
            "fit needs at least two distinct distances and two distinct error rates"
        )
    # z_i = log p_l - k_i log p = a + b k_i, a = log c1, b = log c2
    sw = swk = swk2 = swz = swkz = 0.0
    rows = []
    for pt in usable:
        k = (pt.d + 1.0) / 2.0
        z = math.log(pt.p_l_hat) - k * math.log(pt.p)
        rel = pt.std_err / pt.p_l_hat
        wt = 1.0 / (rel * rel) if rel > 0 else 1.0
        rows.append((k, z, wt))
        sw += wt
        swk += wt * k
        swk2 += wt * k * k
        swz += wt * z
        swkz += wt * k * z
    det = sw * swk2 - swk * swk
    if det == 0:
        raise DegenerateDesignError("singular design matrix")
    a = (swk2 * swz - swk * swkz) / det
    b = (sw * swkz - swk * swz) / det
    zbar = swz / sw
    ss_tot = sum(wt * (z - zbar) ** 2 for _, z, wt in rows)
    ss_res = sum(wt * (z - (a + b * k)) ** 2 for k, z, wt in rows)
    r2 = 1.0 if ss_tot == 0 else max(0.0, 1.0 - ss_res / ss_tot)
    return ScalingFit(
        c1_hat=math.exp(a),
        c2_hat=math.exp(b),
        residual_r2=r2,
        points_used=tuple(usable),
    )


def estimate_threshold(curves: Mapping[int, Sequence[tuple[float, float]]]) -> float:
    """Crossing point of the two largest-distance failure curves.

    Curves map distance -> [(p, p_l_hat)].  The crossing is located by
    piecewise-linear interpolation of log p_l differences in log p,
    scanning from the high-p end so that noisy deep-suppression points
    cannot fake a crossing.  Raises NoCrossingError when the two curves
    do not intersect on the shared grid.
    """
    if len(curves) < 2:
        raise NoCrossingError("need curves for at least two distances")
    d_small, d_big = sorted(curves)[-2:]
    small = {p: pl for p, pl in curves[d_small] if pl > 0}
    big = {p: pl for p, pl in curves[d_big] if pl > 0}
    grid = sorted(set(small) & set(big))
    if len(grid) < 2:
        raise NoCrossingError(
            "curves share fewer than two grid points with nonzero failures"
        )
    diffs = [math.log(big[p]) - math.log(small[p]) for p in grid]
    for i in range(len(grid) - 1, 0, -1):
        hi, lo = diffs[i], diffs[i - 1]
        if hi > 0 and lo <= 0:
            if hi == lo:  # pragma: no cover - guarded by sign change
                return grid[i]
            x_lo, x_hi = math.log(grid[i - 1]), math.log(grid[i])
            x = x_lo + (0.0 - lo) * (x_hi - x_lo) / (hi - lo)
            return math.exp(x)
    if all(df <= 0 for df in diffs) or all(df >= 0 for df in diffs):
        raise NoCrossingError(
            f"curves for d={d_small} and d={d_big} do not cross on the grid"
        )
    raise NoCrossingError("no descending-to-ascending crossing found")
