"""Monte Carlo surface-code simulation: public operations and containers.

The hot loop lives in the kernel (``backend.kernel``); this module owns
the domain types, the public step-by-step operations (sampling, syndrome
extraction, decoding, homology checks), trial aggregation with optional
process parallelism, and the exhaustive distance-3 oracle.

Determinism contract: a run is a pure function of (distance, noise,
num_trials, base_seed).  Trial i consumes only the counter stream seeded
with base_seed + i, and aggregation is a plain sum over trials, so the
result is independent of chunking, execution order, and worker count.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from concurrent.futures import ProcessPoolExecutor

from .backend import kernel
from .errors import NonTrivialResidualSyndromeError
from .lattice import PlanarLattice, build_lattice

DEFAULT_DEFECT_CEILING = 60
_CHUNK_TRIALS = 16384


class NoiseKind(enum.Enum):
    CODE_CAPACITY = "code-capacity"
    PHENOMENOLOGICAL = "phenomenological"


@dataclasses.dataclass(frozen=True)
class NoiseModel:
    """Independent Pauli noise on data qubits, optionally with noisy
    syndrome measurement over repeated rounds.

    Code-capacity mode is a single perfectly measured round.  In
    phenomenological mode each check outcome flips with probability
    ``measurement_error`` (default: p) on every round except the final
    one, and ``rounds`` defaults to the code distance at run time.
    """

    kind: NoiseKind
    p: float
    balanced: bool = True
    rounds: int | None = None
    measurement_error: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"error rate must be in [0, 1], got {self.p}")
        if self.kind is NoiseKind.CODE_CAPACITY:
            if self.rounds not in (None, 1):
                raise ValueError("code-capacity noise is a single round")
            if self.measurement_error not in (None, 0, 0.0):
                raise ValueError("code-capacity noise has perfect measurement")
        else:
            if self.rounds is not None and self.rounds < 1:
                raise ValueError("rounds must be >= 1")
            q = self.measurement_error
            if q is not None and not 0.0 <= q <= 1.0:
                raise ValueError(f"measurement error must be in [0, 1], got {q}")

    def resolved_rounds(self, d: int) -> int:
        if self.kind is NoiseKind.CODE_CAPACITY:
            return 1
        return self.rounds if self.rounds is not None else d

    def resolved_measurement_error(self) -> float:
        if self.kind is NoiseKind.CODE_CAPACITY:
            return 0.0
        return self.p if self.measurement_error is None else self.measurement_error


@dataclasses.dataclass(frozen=True)
class PauliErrorPattern:
    """Bit-flip and phase-flip indicators over data sites (index order of
    ``PlanarLattice.data_index``).  A Y error is a 1 in both components."""

    x: bytes
    z: bytes

    def __xor__(self, other: "PauliErrorPattern") -> "PauliErrorPattern":
        if len(self.x) != len(other.x):
            raise ValueError("patterns live on different lattices")
        return PauliErrorPattern(
            x=bytes(a ^ b for a, b in zip(self.x, other.x)),
            z=bytes(a ^ b for a, b in zip(self.z, other.z)),
        )

    @property
    def x_weight(self) -> int:
        return sum(self.x)

    @property
    def z_weight(self) -> int:
        return sum(self.z)


@dataclasses.dataclass(frozen=True)
class Defect:
    """One flipped check outcome: measurement round, reduced coordinates
    and check kind ('Z' marks bit-flip chains, 'X' phase-flip chains)."""

    round: int
    r: int
    c: int
    kind: str


@dataclasses.dataclass(frozen=True)
class SyndromeSet:
    defects: tuple[Defect, ...]

    def of_kind(self, kind: str) -> list[Defect]:
        return [df for df in self.defects if df.kind == kind]


BOUNDARY = -1  # virtual partner marker in Matching pairs


@dataclasses.dataclass(frozen=True)
class DefectGraph:
    """Matching problem for the defects of one check kind.

    Nodes are the defects plus one virtual boundary node per defect.
    Defect-defect edges weigh the reduced-grid Manhattan distance plus
    round separation; each defect-boundary edge weighs the spatial
    distance to the nearer rough edge; boundary-boundary edges are free.
    """

    d: int
    kind: str
    defects: tuple[Defect, ...]

    def boundary_distance(self, i: int) -> int:
        df = self.defects[i]
        if self.kind == "Z":
            return min(df.c + 1, self.d - 1 - df.c)
        return min(df.r + 1, self.d - 1 - df.r)

    def pair_distance(self, i: int, j: int) -> int:
        a, b = self.defects[i], self.defects[j]
        return abs(a.round - b.round) + abs(a.r - b.r) + abs(a.c - b.c)

    def edge_weight(self, i: int, j: int) -> int:
        """Weight actually charged for matching defects i and j: the
        cheaper of the direct path and the two-boundary detour."""
        return min(self.pair_distance(i, j), self.boundary_distance(i) + self.boundary_distance(j))


@dataclasses.dataclass(frozen=True)
class Matching:
    """Perfect matching of a DefectGraph: every defect appears exactly
    once, matched either to another defect or to the boundary."""

    pairs: tuple[tuple[int, int], ...]
    total_weight: int

    def covered(self) -> list[int]:
        out = []
        for i, j in self.pairs:
            out.append(i)
            if j != BOUNDARY:
                out.append(j)
        return sorted(out)


@dataclasses.dataclass(frozen=True)
class TrialOutcome:
    logical_x_failed: bool
    logical_z_failed: bool
    defect_count: int
    seed: int


@dataclasses.dataclass(frozen=True)
class LogicalErrorEstimate:
    """Aggregated failure statistics with binomial uncertainty."""

    trials: int
    failures: int
    p_l_hat: float
    std_err: float
    x_failures: int
    z_failures: int
    ceiling_exceeded: int = 0
    max_defects: int = 0

    @classmethod
    def from_counts(
        cls,
        trials: int,
        failures: int,
        x_failures: int,
        z_failures: int,
        ceiling_exceeded: int = 0,
        max_defects: int = 0,
    ) -> "LogicalErrorEstimate":
        p_hat = failures / trials
        return cls(
            trials=trials,
            failures=failures,
            p_l_hat=p_hat,
            std_err=math.sqrt(p_hat * (1.0 - p_hat) / trials),
            x_failures=x_failures,
            z_failures=z_failures,
            ceiling_exceeded=ceiling_exceeded,
            max_defects=max_defects,
        )


# ---------------------------------------------------------------------------
# step-by-step operations (same kernel code paths as the trial loop)
# ---------------------------------------------------------------------------


def _rounds_for_buffers(d: int, num_defects: int) -> int:
    """Buffer sizing for standalone decodes: capacity depends on the
    defect count, not on how late their round indices are."""
    per_round = d * (d - 1)
    return max(1, -(-num_defects // per_round))


def sample_errors(lattice: PlanarLattice, noise: NoiseModel, seed: int) -> PauliErrorPattern:
    """One round of independent data errors, deterministic in the seed."""
    n = lattice.num_data
    ex = bytearray(n)
    ez = bytearray(n)
    kernel.sample_pattern(lattice.d, noise.p, noise.balanced, seed, ex, ez)
    return PauliErrorPattern(x=bytes(ex), z=bytes(ez))


def extract_syndrome(lattice: PlanarLattice, errors: PauliErrorPattern) -> SyndromeSet:
    """Perfectly measured syndrome of an error pattern (round 0)."""
    d = lattice.d
    nch = d * (d - 1)
    sz = bytearray(nch)
    sx = bytearray(nch)
    kernel.compute_syndromes(d, bytearray(errors.x), bytearray(errors.z), sz, sx)
    defects = []
    for k in range(nch):
        if sz[k]:
            defects.append(Defect(0, k // (d - 1), k % (d - 1), "Z"))
    for k in range(nch):
        if sx[k]:
            defects.append(Defect(0, k // d, k % d, "X"))
    return SyndromeSet(defects=tuple(defects))


def build_defect_graph(lattice: PlanarLattice, syndrome: SyndromeSet, kind: str) -> DefectGraph:
    if kind not in ("Z", "X"):
        raise ValueError(f"check kind must be 'Z' or 'X', got {kind!r}")
    return DefectGraph(d=lattice.d, kind=kind, defects=tuple(syndrome.of_kind(kind)))


def decode(graph: DefectGraph) -> Matching:
    """Exact minimum-weight perfect matching of a defect graph.

    Uses the same matcher and tie-breaking as the Monte Carlo loop; pairs
    routed through the boundary are reported as (i, BOUNDARY) entries.
    """
    m = len(graph.defects)
    if m == 0:
        return Matching(pairs=(), total_weight=0)
    ws = kernel.make_sim_workspace(graph.d, _rounds_for_buffers(graph.d, m))
    raw = kernel.match_defect_list(
        ws, graph.kind == "Z", [(df.round, df.r, df.c) for df in graph.defects]
    )
    total = 0
    pairs = []
    for i, j in raw:
        if j == BOUNDARY:
            pairs.append((i, BOUNDARY))
            total += graph.boundary_distance(i)
        else:
            pairs.append((i, j))
            total += graph.pair_distance(i, j)
    return Matching(pairs=tuple(pairs), total_weight=total)


def correction_from_matching(
    lattice: PlanarLattice, graph: DefectGraph, matching: Matching
) -> PauliErrorPattern:
    """Data-qubit correction implied by a matching (paths between matched
    defects, straight runs to the nearer rough edge for boundary pairs)."""
    ws = kernel.make_sim_workspace(
        lattice.d, _rounds_for_buffers(lattice.d, len(graph.defects))
    )
    buf = bytearray(lattice.num_data)
    kernel.apply_correction(
        ws,
        graph.kind == "Z",
        [(df.round, df.r, df.c) for df in graph.defects],
        list(matching.pairs),
        buf,
    )
    empty = bytes(lattice.num_data)
    if graph.kind == "Z":
        return PauliErrorPattern(x=bytes(buf), z=empty)
    return PauliErrorPattern(x=empty, z=bytes(buf))


def logical_failure_check(
    lattice: PlanarLattice, errors: PauliErrorPattern, correction: PauliErrorPattern
) -> tuple[bool, bool]:
    """Parity of the residual error across the two logical cuts.

    Raises NonTrivialResidualSyndromeError if the residual still triggers
    any check, which indicates a matching-to-correction conversion bug.
    """
    residual = errors ^ correction
    synd = extract_syndrome(lattice, residual)
    if synd.defects:
        raise NonTrivialResidualSyndromeError(
            f"{len(synd.defects)} defects remain after correction"
        )
    x_failed = sum(residual.x[i] for i in lattice.logical_x_cut()) % 2 == 1
    z_failed = sum(residual.z[i] for i in lattice.logical_z_cut()) % 2 == 1
    return x_failed, z_failed


def run_trial(d: int, noise: NoiseModel, seed: int, _ws: dict | None = None) -> TrialOutcome:
    """One full decode trial, deterministic in (d, noise, seed)."""
    if _ws is None:
        build_lattice(d)  # validates d
        _ws = kernel.make_sim_workspace(d, noise.resolved_rounds(d))
    ws = _ws
    xf, zf, mz, mx = kernel.run_trial(
        ws, noise.p, noise.resolved_measurement_error(), noise.balanced, seed
    )
    return TrialOutcome(
        logical_x_failed=xf, logical_z_failed=zf, defect_count=mz + mx, seed=seed
    )


def trial_outcomes(d: int, noise: NoiseModel, base_seed: int, num_trials: int) -> list[TrialOutcome]:
    ws = kernel.make_sim_workspace(d, noise.resolved_rounds(d))
    return [run_trial(d, noise, base_seed + i, _ws=ws) for i in range(num_trials)]


def _chunk_args(d, noise, base_seed, start, count, ceiling):
    return (d, noise.kind.value, noise.p, noise.balanced, noise.resolved_rounds(d),
            noise.resolved_measurement_error(), base_seed, start, count, ceiling)


def _run_chunk_worker(args) -> tuple:
    (d, kind, p, balanced, rounds, q_meas, base_seed, start, count, ceiling) = args
    ws = kernel.make_sim_workspace(d, rounds)
    return kernel.run_chunk(ws, p, q_meas, balanced, base_seed, start, count, ceiling)


def run_monte_carlo(
    d: int,
    noise: NoiseModel,
    num_trials: int,
    base_seed: int,
    workers: int = 1,
    defect_ceiling: int = DEFAULT_DEFECT_CEILING,
) -> LogicalErrorEstimate:
    """Aggregate ``num_trials`` trials over seeds base_seed .. base_seed +
    num_trials - 1.  The estimate is identical for any worker count."""
    if num_trials < 1:
        raise ValueError("num_trials must be >= 1")
    build_lattice(d)  # validates d
    chunks = []
    start = 0
    while start < num_trials:
        n = min(_CHUNK_TRIALS, num_trials - start)
        chunks.append(_chunk_args(d, noise, base_seed, start, n, defect_ceiling))
        start += n
    if workers <= 1 or len(chunks) == 1:
        results = [_run_chunk_worker(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk_worker, chunks))
    xf = sum(r[0] for r in results)
    zf = sum(r[1] for r in results)
    ef = sum(r[2] for r in results)
    ch = sum(r[3] for r in results)
    mm = max(r[4] for r in results)
    return LogicalErrorEstimate.from_counts(
        trials=num_trials,
        failures=ef,
        x_failures=xf,
        z_failures=zf,
        ceiling_exceeded=ch,
        max_defects=mm,
    )


# ---------------------------------------------------------------------------
# exhaustive distance-3 oracle
# ---------------------------------------------------------------------------


def exact_logical_error_rate_d3(p: float) -> float:
    """Exact bit-flip logical failure rate of the production decoder at
    distance 3 under single-type code-capacity noise.

    Enumerates all 2^13 bit-flip patterns, decodes each with the
    production matcher, and sums the probabilities of the failing
    patterns.  Exact up to float rounding; independent of sampling.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"error rate must be in [0, 1], got {p}")
    d = 3
    lattice = build_lattice(d)
    n = lattice.num_data
    nch = d * (d - 1)
    ws = kernel.make_sim_workspace(d, 1)
    cut = lattice.logical_x_cut()
    err = bytearray(n)
    ez = bytearray(n)
    sz = bytearray(nch)
    sx = bytearray(nch)

    # decode once per syndrome: correction depends only on the defects
    corr_cut_parity = {}
    total_fail_prob = 0.0
    weight_prob = [p**w * (1.0 - p) ** (n - w) for w in range(n + 1)]
    for bits in range(1 << n):
        w = 0
        for k in range(n):
            b = (bits >> k) & 1
            err[k] = b
            w += b
        kernel.compute_syndromes(d, err, ez, sz, sx)
        key = bytes(sz)
        if key not in corr_cut_parity:
            defects = [(0, k // (d - 1), k % (d - 1)) for k in range(nch) if sz[k]]
            pairs = kernel.match_defect_list(ws, True, defects)
            corr = bytearray(n)
            kernel.apply_correction(ws, True, defects, pairs, corr)
            corr_cut_parity[key] = sum(corr[i] for i in cut) % 2
        err_parity = sum(err[i] for i in cut) % 2
        if err_parity != corr_cut_parity[key]:
            total_fail_prob += weight_prob[w]
    return total_fail_prob
