"""Deterministic bill-of-materials calculators for three hardware
platforms: micro-fabricated ion traps with junction shuttling, optically
linked NV-diamond cell arrays, and superconducting bi-linear chips.

Every default is a published design anchor; any field can be overridden
from JSON (see ``load_overrides``), and plans record which fields were
overridden so reports can tell anchors from user input.  All outputs are
recomputable closed forms of the inputs; plans never hide a constant.
"""

from __future__ import annotations

import dataclasses
import math
import warnings

from .errors import ConfigError
from .scaling import distance_for_qubits


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ---------------------------------------------------------------------------
# ion traps
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class IonTrapParams:
    """X-junction trap module constants (one computational ion per
    junction; the second ion is reserved for sympathetic cooling)."""

    junction_footprint_mm: float = 5.0
    junctions_per_section: int = 16
    section_side_mm: float = 20.0
    sections_per_chip: int = 25
    chip_side_mm: float = 100.0
    dc_per_junction: int = 52
    dc_extra_per_section: int = 8
    fibres_per_junction: int = 3
    dacs_per_section: int = 21
    dac_channels: int = 40
    dc_feedthrough_per_section: int = 8
    fibre_feedthrough_per_section: int = 48
    alignment_um: float = 5.0
    qubits_per_junction: int = 1

    def __post_init__(self) -> None:
        for name in (
            "junctions_per_section",
            "sections_per_chip",
            "dc_per_junction",
            "dc_extra_per_section",
            "fibres_per_junction",
            "dacs_per_section",
            "dac_channels",
            "qubits_per_junction",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def dc_per_section(self) -> int:
        return self.dc_per_junction * self.junctions_per_section + self.dc_extra_per_section

    @property
    def fibres_per_section(self) -> int:
        return self.fibres_per_junction * self.junctions_per_section


@dataclasses.dataclass(frozen=True)
class IonTrapPlan:
    requested_qubits: int
    junctions: int
    sections: int
    chips: int
    dc_voltages_total: int
    fibres_total: int
    dacs_total: int
    feedthroughs_total: int
    cooling_ions: int
    trap_area_m2: float
    notes: str

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def plan_ion_trap(num_physical_qubits: int, params: IonTrapParams | None = None) -> IonTrapPlan:
    """Junction/section/chip counts, control wiring and trap area for a
    given computational qubit count."""
    if num_physical_qubits < 1:
        raise ValueError("need at least one qubit")
    pr = params or IonTrapParams()
    junctions = _ceil_div(num_physical_qubits, pr.qubits_per_junction)
    sections = _ceil_div(junctions, pr.junctions_per_section)
    chips = _ceil_div(sections, pr.sections_per_chip)
    area_m2 = junctions * (pr.junction_footprint_mm * 1e-3) ** 2
    return IonTrapPlan(
        requested_qubits=num_physical_qubits,
        junctions=junctions,
        sections=sections,
        chips=chips,
        dc_voltages_total=sections * pr.dc_per_section,
        fibres_total=sections * pr.fibres_per_section,
        dacs_total=sections * pr.dacs_per_section,
        feedthroughs_total=sections,
        cooling_ions=junctions,
        trap_area_m2=area_m2,
        notes=(
            "trap area counts junction footprints only; the honeycomb vacuum "
            "packaging makes the physical floor area much larger"
        ),
    )


# ---------------------------------------------------------------------------
# superconducting bi-linear chips
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class SuperconductingParams:
    """Bi-linear chip constants.  The chip anchor is the published d=15
    design point: a 30 x 30 qubit chip of roughly 30 mm x 200 mm; its
    900-qubit figure disagrees with the patch arithmetic and is reported
    as-is next to the computed counts, never reconciled silently."""

    spacer_columns_per_logical: int = 1
    chip_anchor_distance: int = 15
    chip_anchor_qubits: int = 900
    chip_anchor_width_mm: float = 30.0
    chip_anchor_length_mm: float = 200.0
    crosstalk_db: float = -49.0
    viability_error_rate: float = 0.007
    airbridge_budget_min: int = 15
    airbridge_budget_max: int = 20

    def patch_side(self, d: int) -> int:
        return 2 * d - 1


@dataclasses.dataclass(frozen=True)
class BilinearPlan:
    d: int
    num_logical: int
    column_height: int
    crossings_per_column_pair: int
    airbridges_per_resonator_max: int
    within_validated_airbridge_budget: bool
    physical_qubits_lattice_surgery: int
    physical_qubits_bilinear_total: int
    bilinear_per_logical: int
    chip_width_estimate_mm: float
    chip_length_estimate_mm: float
    chip_dimensions_extrapolated: bool
    chip_anchor_qubits: int
    chip_anchor_discrepancy: bool
    notes: str

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def plan_superconducting_bilinear(
    d: int, num_logical: int, params: SuperconductingParams | None = None
) -> BilinearPlan:
    """Bi-linear layout arithmetic for N logical patches at distance d.

    Column height M = 2d-1.  Per logical qubit the bi-linear array holds
    M*(M+1) = M*2d qubits (patch plus one spacer column), the published
    worked count; the published closed form says (2d-1)(2d-2) per logical,
    which contradicts its own worked number and is recorded in the notes.
    Air-bridge crossings per column pair are M-1; alternating which
    resonator carries the bridge leaves at most ceil(M/2) bridges on one
    resonator (the published floor would give 14 at d=15, the worked
    number is 15).
    """
    if d < 3 or d % 2 == 0:
        raise ValueError(f"distance must be odd and >= 3, got {d}")
    if num_logical < 1:
        raise ValueError("need at least one logical qubit")
    pr = params or SuperconductingParams()
    m = pr.patch_side(d)
    n = num_logical
    lattice_surgery = m * (m * n + (n - 1) * pr.spacer_columns_per_logical)
    per_logical = m * (m + pr.spacer_columns_per_logical)
    bilinear_total = n * per_logical
    crossings = m - 1
    airbridges_max = _ceil_div(m, 2)
    columns_total = n * (m + pr.spacer_columns_per_logical)
    anchor_m = pr.patch_side(pr.chip_anchor_distance)
    anchor_columns = anchor_m + pr.spacer_columns_per_logical
    width = pr.chip_anchor_width_mm * m / anchor_m
    length = pr.chip_anchor_length_mm * columns_total / anchor_columns
    return BilinearPlan(
        d=d,
        num_logical=n,
        column_height=m,
        crossings_per_column_pair=crossings,
        airbridges_per_resonator_max=airbridges_max,
        within_validated_airbridge_budget=airbridges_max <= pr.airbridge_budget_max,
        physical_qubits_lattice_surgery=lattice_surgery,
        physical_qubits_bilinear_total=bilinear_total,
        bilinear_per_logical=per_logical,
        chip_width_estimate_mm=width,
        chip_length_estimate_mm=length,
        chip_dimensions_extrapolated=(d != pr.chip_anchor_distance or n != 1),
        chip_anchor_qubits=pr.chip_anchor_qubits,
        chip_anchor_discrepancy=(per_logical != pr.chip_anchor_qubits),
        notes=(
            "per-logical count uses (2d-1)*2d (patch + spacer column), which "
            "reproduces the published worked number; the published closed form "
            "(2d-1)(2d-2) and the published 900-qubit chip figure disagree "
            "with it and are reported unreconciled. Air bridges per resonator "
            "use ceil((2d-1)/2); the published floor contradicts its own "
            "worked value. Chip dimensions are linear extrapolations from the "
            "d=15 anchor."
        ),
    )


@dataclasses.dataclass(frozen=True)
class GridSummary:
    rows: int
    cols: int
    dead_qubits: int
    qubit_count: int
    coupler_count_raw: int
    coupler_count_dead_adjusted: int
    achievable_distance: int
    notes: str

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def grid_summary(rows: int, cols: int, dead_qubits: int = 0) -> GridSummary:
    """Planar grid accounting: qubits, coupler edges, and the code
    distance the surviving qubit count supports."""
    if rows < 1 or cols < 1:
        raise ValueError("grid must be at least 1 x 1")
    if not 0 <= dead_qubits <= rows * cols:
        raise ValueError("dead qubit count outside grid size")
    qubits = rows * cols - dead_qubits
    if qubits < 1:
        raise ValueError("no functional qubits left")
    raw = rows * (cols - 1) + cols * (rows - 1)
    adjusted = max(0, raw - 4 * dead_qubits)
    return GridSummary(
        rows=rows,
        cols=cols,
        dead_qubits=dead_qubits,
        qubit_count=qubits,
        coupler_count_raw=raw,
        coupler_count_dead_adjusted=adjusted,
        achievable_distance=distance_for_qubits(qubits),
        notes=(
            "dead-adjusted coupler count assumes each dead qubit disables "
            "four incident edges (interior worst case)"
        ),
    )


# ---------------------------------------------------------------------------
# NV diamond
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class NvParams:
    """Brokered-entanglement constants: the optical bonding scheme succeeds
    with probability at most 12.5% per attempt even with perfect
    components; the design-point efficiency is 1%, with 100 attempts
    fitting in about 3 microseconds at 4 K."""

    success_upper_bound: float = 0.125
    default_connection_efficiency: float = 0.01
    attempts_reference: int = 100
    reference_window_us: float = 3.0
    operating_temperature_k: float = 4.0


def _check_efficiency(q: float, params: NvParams) -> None:
    if not 0.0 < q <= 1.0:
        raise ValueError(f"connection efficiency must be in (0, 1], got {q}")
    if q > params.success_upper_bound:
        warnings.warn(
            f"connection efficiency {q} exceeds the physical upper bound "
            f"{params.success_upper_bound} of the optical bonding scheme",
            stacklevel=3,
        )


def nv_bond_success_probability(
    efficiency_q: float, attempts_n: int, params: NvParams | None = None
) -> float:
    """Probability of at least one successful bond in n attempts,
    1 - (1-q)^n, evaluated via log1p for stability."""
    pr = params or NvParams()
    _check_efficiency(efficiency_q, pr)
    if attempts_n < 1:
        raise ValueError("need at least one attempt")
    if efficiency_q == 1.0:
        return 1.0
    return -math.expm1(attempts_n * math.log1p(-efficiency_q))


def nv_attempts_for_confidence(
    efficiency_q: float, confidence: float, params: NvParams | None = None
) -> int:
    """Smallest attempt count with bond probability >= confidence.

    Computed from the closed form and then verified exactly against
    neighbouring integers so float rounding can never shift the answer.
    """
    pr = params or NvParams()
    _check_efficiency(efficiency_q, pr)
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    if efficiency_q == 1.0:
        return 1
    n = max(1, math.ceil(math.log1p(-confidence) / math.log1p(-efficiency_q)))
    while n > 1 and nv_bond_success_probability(efficiency_q, n - 1, pr) >= confidence:
        n -= 1
    while nv_bond_success_probability(efficiency_q, n, pr) < confidence:
        n += 1
    return n


def nv_bond_time_us(attempts: int, params: NvParams | None = None) -> float:
    """Expected wall time for a given attempt count, scaled linearly from
    the reference window (100 attempts in 3 us by default)."""
    if attempts < 1:
        raise ValueError("need at least one attempt")
    pr = params or NvParams()
    return attempts * (pr.reference_window_us / pr.attempts_reference)


@dataclasses.dataclass(frozen=True)
class NvPlan:
    cells_x: int
    cells_y: int
    total_cells: int
    qubits_per_cell: int
    qubits_estimate: int
    connection_efficiency: float
    bond_confidence: float
    attempts_per_bond: int
    expected_bond_time_us: float
    operating_temperature_k: float

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def plan_raussendorf_cells(
    cells_x: int,
    cells_y: int,
    qubits_per_cell: int | None,
    params: NvParams | None = None,
    efficiency: float | None = None,
    confidence: float = 0.5,
) -> NvPlan:
    """Cell-array sizing for the layered cluster-state architecture.

    ``qubits_per_cell`` has no published value and is a mandatory user
    parameter; omitting it is a configuration error, never defaulted.
    """
    if cells_x < 1 or cells_y < 1:
        raise ValueError("cell grid must be at least 1 x 1")
    if qubits_per_cell is None:
        raise ConfigError(
            "qubits_per_cell is required: the unit-cell qubit count has no "
            "published value and must be supplied explicitly"
        )
    if qubits_per_cell < 1:
        raise ValueError("qubits_per_cell must be positive")
    pr = params or NvParams()
    q = pr.default_connection_efficiency if efficiency is None else efficiency
    attempts = nv_attempts_for_confidence(q, confidence, pr)
    return NvPlan(
        cells_x=cells_x,
        cells_y=cells_y,
        total_cells=cells_x * cells_y,
        qubits_per_cell=qubits_per_cell,
        qubits_estimate=cells_x * cells_y * qubits_per_cell,
        connection_efficiency=q,
        bond_confidence=confidence,
        attempts_per_bond=attempts,
        expected_bond_time_us=nv_bond_time_us(attempts, pr),
        operating_temperature_k=pr.operating_temperature_k,
    )


# ---------------------------------------------------------------------------
# JSON overrides
# ---------------------------------------------------------------------------

_PARAM_TYPES = {
    "iontrap": IonTrapParams,
    "superconducting": SuperconductingParams,
    "nv": NvParams,
}


def load_overrides(platform: str, overrides: dict | None):
    """Parameter set for a platform with user overrides applied.

    Returns (params, overridden_field_names); unknown fields raise
    ConfigError so typos cannot silently fall back to anchors.
    """
    cls = _PARAM_TYPES.get(platform)
    if cls is None:
        raise ConfigError(f"unknown platform {platform!r}")
    fields = {f.name for f in dataclasses.fields(cls)}
    data = overrides or {}
    unknown = set(data) - fields
    if unknown:
        raise ConfigError(
            f"unknown {platform} parameter(s): {', '.join(sorted(unknown))}"
        )
    return cls(**data), sorted(data)
