"""Named scaling-parameter presets with explicit provenance.

There is deliberately no silent default: the scaling-law constants have
no single published value, so every preset says where its numbers come
from.

* ``fitted`` - produced by this package's own Monte Carlo pipeline:
  code-capacity noise, exact minimum-weight matching, distances 3/5/7,
  p = 0.01..0.08, 100000 trials per point, base seed 20260808, weighted
  log-space fit (r^2 = 0.997).  Reproduce with:
      qcplan simulate --distances 3,5,7 \
          --p-values 0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08 \
          --trials 100000 --seed 20260808 --csv sweep.csv
      qcplan fit --csv sweep.csv
* ``circuit-level-anchor`` - threshold anchored at the 0.7% error rate
  quoted for gate-level viability of superconducting chips (c2 = 1/0.007)
  with a conventional prefactor c1 = 0.1.  Use for circuit-level,
  hardware-flavoured estimates.
"""

from __future__ import annotations

from .scaling import ScalingParams

SCALING_PRESETS: dict[str, ScalingParams] = {
    "fitted": ScalingParams(c1=0.26296519432752014, c2=10.990996387373345),
    "circuit-level-anchor": ScalingParams(c1=0.1, c2=1.0 / 0.007),
}

PRESET_PROVENANCE: dict[str, str] = {
    "fitted": (
        "fitted by this package: code-capacity Monte Carlo, exact matching, "
        "d in {3,5,7}, p in 0.01..0.08, 1e5 trials/point, seed 20260808"
    ),
    "circuit-level-anchor": (
        "threshold anchored at the 0.7% gate-viability error rate "
        "(c2 = 1/0.007); prefactor c1 = 0.1 is a convention, not a "
        "measured value"
    ),
}


def get_preset(name: str) -> ScalingParams:
    try:
        return SCALING_PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(SCALING_PRESETS))
        raise KeyError(f"unknown scaling preset {name!r}; known presets: {known}") from None
