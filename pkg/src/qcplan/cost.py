"""Price-per-qubit cost arithmetic.

Currency is integer cents end to end: 2e8 qubits at $0.01 must come out
exactly, so no floats ever touch a total.  The published cost table for
factoring and nitrogenase machines is carried as anchor data; the one
cell of it that contradicts its own rows ($0.01-per-qubit nitrogenase)
is flagged, not reconciled.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

_UNITS = (
    (10**12, "Trillion"),
    (10**9, "Billion"),
    (10**6, "Million"),
)

# (qubits, ppq cents, published total cents) for the published cost table;
# qubit counts are the unique values consistent with the $1000 and $1.00
# rows of each column
TABLE_ANCHORS = (
    (2 * 10**7, 100_000, 2_000_000_000_000),  # factoring @ $1000 -> $20 Billion
    (2 * 10**7, 100, 2_000_000_000),  # factoring @ $1.00 -> $20 Million
    (2 * 10**7, 1, 20_000_000),  # factoring @ $0.01 -> $200,000
    (2 * 10**8, 100_000, 20_000_000_000_000),  # nitrogenase @ $1000 -> $200 Billion
    (2 * 10**8, 100, 20_000_000_000),  # nitrogenase @ $1.00 -> $200 Million
    (2 * 10**8, 1, 100_000_000),  # nitrogenase @ $0.01: published "$1 Million"
)


@dataclasses.dataclass(frozen=True)
class PricePoint:
    """Price per qubit in integer cents, with a display label."""

    cents: int
    label: str = ""

    def __post_init__(self) -> None:
        if self.cents <= 0:
            raise ValueError("price per qubit must be positive")

    @classmethod
    def from_dollars(cls, dollars, label: str = "") -> "PricePoint":
        return cls(cents=parse_usd_cents(dollars), label=label)

    @property
    def dollars(self) -> Fraction:
        return Fraction(self.cents, 100)


@dataclasses.dataclass(frozen=True)
class MachineCost:
    qubits: int
    ppq: PricePoint
    total_cents: int

    @property
    def formatted(self) -> str:
        return format_usd(self.total_cents)


def machine_cost(num_physical_qubits: int, ppq: PricePoint) -> MachineCost:
    """Exact machine cost: qubits * price per qubit, in cents."""
    if num_physical_qubits < 1:
        raise ValueError("need at least one qubit")
    return MachineCost(
        qubits=num_physical_qubits,
        ppq=ppq,
        total_cents=num_physical_qubits * ppq.cents,
    )


def ppq_from_system(total_cost_cents: int, num_qubits: int) -> PricePoint:
    """Price per qubit of an existing system, rounded to the cent
    (half-even) when the division is inexact."""
    if num_qubits < 1:
        raise ValueError("need at least one qubit")
    if total_cost_cents <= 0:
        raise ValueError("total cost must be positive")
    q, r = divmod(total_cost_cents, num_qubits)
    if r:
        double = 2 * r
        if double > num_qubits or (double == num_qubits and q % 2 == 1):
            q += 1
    return PricePoint(cents=q)


@dataclasses.dataclass(frozen=True)
class CostCell:
    qubits: int
    ppq: PricePoint
    total_cents: int
    formatted: str
    anchor_cents: int | None
    anchor_discrepancy: bool


@dataclasses.dataclass(frozen=True)
class CostTable:
    cells: tuple[CostCell, ...]

    def rows(self) -> list[list[CostCell]]:
        counts = sorted({c.qubits for c in self.cells})
        ppqs = sorted({c.ppq.cents for c in self.cells}, reverse=True)
        grid = {(c.qubits, c.ppq.cents): c for c in self.cells}
        return [[grid[(n, p)] for n in counts] for p in ppqs]

    def as_text(self) -> str:
        counts = sorted({c.qubits for c in self.cells})
        header = ["PPQ"] + [f"{n:.0e} qubits" for n in counts]
        lines = []
        for row in self.rows():
            cells = [format_usd(row[0].ppq.cents)]
            for c in row:
                mark = " (!)" if c.anchor_discrepancy else ""
                cells.append(c.formatted + mark)
            lines.append(cells)
        widths = [max(len(r[i]) for r in [header] + lines) for i in range(len(header))]
        out = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
        for cells in lines:
            out.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
        out.append("(!) computed value disagrees with the published table cell")
        return "\n".join(out)


def cost_table(qubit_counts: list[int], ppqs: list[PricePoint]) -> CostTable:
    """Cross product of machine costs, annotated against the published
    anchor cells where a (count, ppq) pair matches one."""
    if not qubit_counts or not ppqs:
        raise ValueError("qubit_counts and ppqs must be non-empty")
    anchors = {(n, c): total for n, c, total in TABLE_ANCHORS}
    cells = []
    for ppq in ppqs:
        for n in qubit_counts:
            mc = machine_cost(n, ppq)
            anchor = anchors.get((n, ppq.cents))
            cells.append(
                CostCell(
                    qubits=n,
                    ppq=ppq,
                    total_cents=mc.total_cents,
                    formatted=format_usd(mc.total_cents),
                    anchor_cents=anchor,
                    anchor_discrepancy=anchor is not None and anchor != mc.total_cents,
                )
            )
    return CostTable(cells=tuple(cells))


def default_table() -> CostTable:
    return cost_table(
        [2 * 10**7, 2 * 10**8],
        [
            PricePoint.from_dollars("1000", "optimistic near-term"),
            PricePoint.from_dollars("1.00", "commodity"),
            PricePoint.from_dollars("0.01", "transistor-like"),
        ],
    )


# ---------------------------------------------------------------------------
# currency formatting
# ---------------------------------------------------------------------------


def format_usd(cents: int) -> str:
    """US-style currency with Million/Billion/Trillion suffixes.

    Suffixes apply only at or above one million and only when the
    mantissa is exact in at most two decimals; otherwise plain
    comma-grouped dollars (and cents when nonzero).  Sub-million values
    always use comma grouping, so 20_000_000 cents is '$200,000'.
    """
    if cents < 0:
        return "-" + format_usd(-cents)
    dollars, rem = divmod(cents, 100)
    if rem == 0:
        for unit, name in _UNITS:
            if dollars >= unit:
                scaled = Fraction(dollars, unit)
                hundredths = scaled * 100
                if hundredths.denominator == 1:
                    value = hundredths.numerator
                    if value % 100 == 0:
                        text = f"{value // 100}"
                    elif value % 10 == 0:
                        text = f"{value // 100}.{(value % 100) // 10}"
                    else:
                        text = f"{value // 100}.{value % 100:02d}"
                    return f"${text} {name}"
                break
        return f"${dollars:,}"
    return f"${dollars:,}.{rem:02d}"


def parse_usd_cents(text) -> int:
    """Exact cents from a currency string (inverse of format_usd).

    Accepts ints (dollars), and strings with $, comma grouping, decimals,
    and Thousand/Million/Billion/Trillion suffixes.
    """
    if isinstance(text, int):
        return text * 100
    s = str(text).strip().replace(",", "").replace("$", "")
    negative = s.startswith("-")
    if negative:
        s = s[1:]
    multiplier = 1
    low = s.lower()
    for unit, name in (
        (10**12, "trillion"),
        (10**9, "billion"),
        (10**6, "million"),
        (10**3, "thousand"),
    ):
        if low.endswith(name):
            multiplier = unit
            s = s[: -len(name)].strip()
            break
    if not s:
        raise ValueError(f"cannot parse currency value {text!r}")
    if "." in s:
        whole, frac = s.split(".", 1)
        if not frac or not frac.isdigit() or not (whole.isdigit() or whole == ""):
            raise ValueError(f"cannot parse currency value {text!r}")
        value = Fraction(int(whole or 0)) + Fraction(int(frac), 10 ** len(frac))
    elif s.isdigit():
        value = Fraction(int(s))
    else:
        raise ValueError(f"cannot parse currency value {text!r}")
    cents = value * multiplier * 100
    if cents.denominator != 1:
        raise ValueError(f"{text!r} is not an exact cent amount")
    result = int(cents)
    return -result if negative else result
