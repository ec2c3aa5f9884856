import math
import random

import pytest

from oracles import reference_geometry, reference_syndrome
from qcplan import sim
from qcplan.errors import NonTrivialResidualSyndromeError
from qcplan.lattice import build_lattice
from qcplan.sim import NoiseKind, NoiseModel

CC = NoiseKind.CODE_CAPACITY
PHEN = NoiseKind.PHENOMENOLOGICAL

# exact_logical_error_rate_d3(0.05), computed once by the 2^13 enumeration
# oracle and frozen; guards against any silent decoder change
D3_ORACLE_P05 = 0.042834567869368866


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel(CC, p=1.5)
    with pytest.raises(ValueError):
        NoiseModel(CC, p=0.1, rounds=3)
    with pytest.raises(ValueError):
        NoiseModel(CC, p=0.1, measurement_error=0.1)
    with pytest.raises(ValueError):
        NoiseModel(PHEN, p=0.1, rounds=0)
    phen = NoiseModel(PHEN, p=0.02)
    assert phen.resolved_rounds(5) == 5
    assert phen.resolved_measurement_error() == 0.02
    assert NoiseModel(PHEN, p=0.02, rounds=3, measurement_error=0.01).resolved_rounds(5) == 3


def test_sampling_deterministic_and_extreme_rates():
    lat = build_lattice(3)
    zero = sim.sample_errors(lat, NoiseModel(CC, p=0.0), seed=9)
    assert zero.x_weight == 0 and zero.z_weight == 0
    full = sim.sample_errors(lat, NoiseModel(CC, p=1.0), seed=9)
    assert full.x_weight == lat.num_data and full.z_weight == lat.num_data
    a = sim.sample_errors(lat, NoiseModel(CC, p=0.3), seed=1234)
    b = sim.sample_errors(lat, NoiseModel(CC, p=0.3), seed=1234)
    assert a == b
    xonly = sim.sample_errors(lat, NoiseModel(CC, p=0.7, balanced=False), seed=5)
    assert xonly.z_weight == 0 and xonly.x_weight > 0


def test_sampling_mean_weight_in_binomial_band():
    """Mean bit-flip weight over many seeds stays inside the 3-sigma band
    around n_data * p."""
    lat = build_lattice(5)
    noise = NoiseModel(CC, p=0.1, balanced=False)
    n_seeds = 100_000
    total = 0
    for seed in range(n_seeds):
        total += sim.sample_errors(lat, noise, seed).x_weight
    mean = total / n_seeds
    expected = lat.num_data * 0.1  # 41 data sites
    sigma_mean = math.sqrt(lat.num_data * 0.1 * 0.9 / n_seeds)
    assert abs(mean - expected) <= 3 * sigma_mean


@pytest.mark.parametrize("d", [3, 5])
def test_syndrome_matches_reference(d):
    lat = build_lattice(d)
    geom = reference_geometry(d)
    rng = random.Random(42)
    for trial in range(200):
        pat = sim.sample_errors(lat, NoiseModel(CC, p=rng.uniform(0, 0.4)), seed=trial)
        synd = sim.extract_syndrome(lat, pat)
        z_ref, x_ref = reference_syndrome(geom, pat.x, pat.z)
        z_got = {(2 * df.r, 2 * df.c + 1) for df in synd.of_kind("Z")}
        x_got = {(2 * df.r + 1, 2 * df.c) for df in synd.of_kind("X")}
        assert z_got == z_ref
        assert x_got == x_ref


def test_syndrome_empty_and_linearity():
    lat = build_lattice(5)
    empty = sim.PauliErrorPattern(bytes(lat.num_data), bytes(lat.num_data))
    assert sim.extract_syndrome(lat, empty).defects == ()
    noise = NoiseModel(CC, p=0.15)
    for seed in range(100):
        e1 = sim.sample_errors(lat, noise, seed)
        e2 = sim.sample_errors(lat, noise, seed + 10_000)
        s12 = sim.extract_syndrome(lat, e1 ^ e2)
        s1 = {(df.kind, df.r, df.c) for df in sim.extract_syndrome(lat, e1).defects}
        s2 = {(df.kind, df.r, df.c) for df in sim.extract_syndrome(lat, e2).defects}
        assert {(df.kind, df.r, df.c) for df in s12.defects} == s1 ^ s2


def test_single_interior_error_two_defects():
    lat = build_lattice(3)
    geom = reference_geometry(3)
    for (r, c), idx in geom["data_index"].items():
        x = bytearray(lat.num_data)
        x[idx] = 1
        pat = sim.PauliErrorPattern(bytes(x), bytes(lat.num_data))
        zdef = sim.extract_syndrome(lat, pat).of_kind("Z")
        n_adjacent = sum(idx in adj for adj in geom["z_adj"].values())
        assert len(zdef) == n_adjacent
        if 0 < c < lat.side - 1:
            assert len(zdef) == 2


def test_spanning_chain_is_invisible_logical_error():
    lat = build_lattice(3)
    x = bytearray(lat.num_data)
    for c in range(0, lat.side, 2):  # full top data row, left edge to right edge
        x[lat.data_index(0, c)] = 1
    pat = sim.PauliErrorPattern(bytes(x), bytes(lat.num_data))
    assert sim.extract_syndrome(lat, pat).defects == ()
    nothing = sim.PauliErrorPattern(bytes(lat.num_data), bytes(lat.num_data))
    x_failed, z_failed = sim.logical_failure_check(lat, pat, nothing)
    assert x_failed and not z_failed


def test_decode_trivial_cases():
    lat = build_lattice(5)
    empty = sim.build_defect_graph(
        lat, sim.extract_syndrome(
            lat, sim.PauliErrorPattern(bytes(lat.num_data), bytes(lat.num_data))
        ), "Z",
    )
    m = sim.decode(empty)
    assert m.pairs == () and m.total_weight == 0

    # two adjacent defects far from the boundary pair up at weight 1
    graph = sim.DefectGraph(
        d=5, kind="Z",
        defects=(sim.Defect(0, 2, 1, "Z"), sim.Defect(0, 2, 2, "Z")),
    )
    m = sim.decode(graph)
    assert m.pairs == ((0, 1),) and m.total_weight == 1


def test_decode_weight_is_minimal_on_every_d3_pattern():
    """Production decode weight equals the enumerated minimum over all
    boundary-augmented perfect matchings for all 2^13 bit-flip patterns."""
    from oracles import brute_defect_matching_cost

    lat = build_lattice(3)
    n = lat.num_data
    seen = {}
    for bits in range(1 << n):
        x = bytes((bits >> k) & 1 for k in range(n))
        synd = sim.extract_syndrome(lat, sim.PauliErrorPattern(x, bytes(n)))
        key = tuple(sorted((df.r, df.c) for df in synd.of_kind("Z")))
        if key in seen:
            continue
        graph = sim.build_defect_graph(lat, synd, "Z")
        m = sim.decode(graph)
        expected = brute_defect_matching_cost(
            tuple((0, r, c) for r, c in key),
            tuple(min(c + 1, lat.d - 1 - c) for _, c in key),
        )
        assert m.total_weight == expected
        seen[key] = True
    assert len(seen) == 64  # every plaquette syndrome is reachable


def test_correction_round_trip_and_residual_guard():
    lat = build_lattice(5)
    noise = NoiseModel(CC, p=0.12)
    for seed in range(150):
        pat = sim.sample_errors(lat, noise, seed)
        synd = sim.extract_syndrome(lat, pat)
        corr_total = sim.PauliErrorPattern(bytes(lat.num_data), bytes(lat.num_data))
        for kind in ("Z", "X"):
            graph = sim.build_defect_graph(lat, synd, kind)
            matching = sim.decode(graph)
            assert matching.covered() == list(range(len(graph.defects)))
            corr_total = corr_total ^ sim.correction_from_matching(lat, graph, matching)
        sim.logical_failure_check(lat, pat, corr_total)  # must not raise

    # identity correction on the error itself never fails
    pat = sim.sample_errors(lat, noise, 7)
    assert sim.logical_failure_check(lat, pat, pat) == (False, False)

    # a wrong correction is caught by the residual-syndrome guard
    bad = bytearray(lat.num_data)
    bad[lat.data_index(2, 2)] = 1
    with pytest.raises(NonTrivialResidualSyndromeError):
        sim.logical_failure_check(
            lat, pat, pat ^ sim.PauliErrorPattern(bytes(bad), bytes(lat.num_data))
        )


def test_public_ops_compose_to_trial():
    lat = build_lattice(5)
    noise = NoiseModel(CC, p=0.08)
    for seed in range(300, 420):
        pat = sim.sample_errors(lat, noise, seed)
        synd = sim.extract_syndrome(lat, pat)
        corr = sim.PauliErrorPattern(bytes(lat.num_data), bytes(lat.num_data))
        for kind in ("Z", "X"):
            graph = sim.build_defect_graph(lat, synd, kind)
            corr = corr ^ sim.correction_from_matching(lat, graph, sim.decode(graph))
        composed = sim.logical_failure_check(lat, pat, corr)
        out = sim.run_trial(5, noise, seed)
        assert composed == (out.logical_x_failed, out.logical_z_failed)


def test_weight_le_1_always_corrected_d3():
    lat = build_lattice(3)
    n = lat.num_data
    patterns = [bytes(n)]
    for k in range(n):
        b = bytearray(n)
        b[k] = 1
        patterns.append(bytes(b))
    for kind_idx, kind in enumerate(("Z", "X")):
        for pat_bits in patterns:
            pat = sim.PauliErrorPattern(
                pat_bits if kind == "Z" else bytes(n),
                pat_bits if kind == "X" else bytes(n),
            )
            synd = sim.extract_syndrome(lat, pat)
            graph = sim.build_defect_graph(lat, synd, kind)
            corr = sim.correction_from_matching(lat, graph, sim.decode(graph))
            assert sim.logical_failure_check(lat, pat, corr) == (False, False)


def test_weight_le_2_always_corrected_d5():
    """10^4 random patterns of weight <= 2 of a single type decode with
    zero logical failures; mixed X+Z weight-2 patterns also pass because
    the two types decode independently."""
    lat = build_lattice(5)
    n = lat.num_data
    rng = random.Random(99)
    for _ in range(10_000):
        sites = rng.sample(range(n), rng.choice([0, 1, 2]))
        b = bytearray(n)
        for s in sites:
            b[s] = 1
        pat = sim.PauliErrorPattern(bytes(b), bytes(n))
        synd = sim.extract_syndrome(lat, pat)
        graph = sim.build_defect_graph(lat, synd, "Z")
        corr = sim.correction_from_matching(lat, graph, sim.decode(graph))
        assert sim.logical_failure_check(lat, pat, corr) == (False, False)
    for _ in range(2_000):
        bx = bytearray(n)
        bz = bytearray(n)
        bx[rng.randrange(n)] = 1
        bz[rng.randrange(n)] = 1
        pat = sim.PauliErrorPattern(bytes(bx), bytes(bz))
        synd = sim.extract_syndrome(lat, pat)
        corr = sim.PauliErrorPattern(bytes(n), bytes(n))
        for kind in ("Z", "X"):
            graph = sim.build_defect_graph(lat, synd, kind)
            corr = corr ^ sim.correction_from_matching(lat, graph, sim.decode(graph))
        assert sim.logical_failure_check(lat, pat, corr) == (False, False)


def test_run_monte_carlo_contracts():
    noise = NoiseModel(CC, p=0.0)
    est = sim.run_monte_carlo(3, noise, 2000, base_seed=1)
    assert est.failures == 0 and est.p_l_hat == 0.0

    noise = NoiseModel(CC, p=0.07)
    a = sim.run_monte_carlo(3, noise, 30_000, base_seed=424242)
    b = sim.run_monte_carlo(3, noise, 30_000, base_seed=424242)
    assert a == b  # bit-identical repeat
    c = sim.run_monte_carlo(3, noise, 30_000, base_seed=424242, workers=2)
    assert a == c  # worker-count invariance
    assert est.std_err == 0.0
    assert a.std_err == pytest.approx(
        math.sqrt(a.p_l_hat * (1 - a.p_l_hat) / a.trials)
    )
    assert a.failures <= a.x_failures + a.z_failures
    with pytest.raises(ValueError):
        sim.run_monte_carlo(3, noise, 0, base_seed=1)
    with pytest.raises(ValueError):
        sim.run_monte_carlo(4, noise, 10, base_seed=1)


def test_trial_outcomes_deterministic_stream():
    noise = NoiseModel(CC, p=0.06)
    outs = sim.trial_outcomes(3, noise, base_seed=11, num_trials=64)
    assert [o.seed for o in outs] == list(range(11, 75))
    again = sim.trial_outcomes(3, noise, base_seed=11, num_trials=64)
    assert outs == again
    est = sim.run_monte_carlo(3, noise, 64, base_seed=11)
    assert est.failures == sum(o.logical_x_failed or o.logical_z_failed for o in outs)


def test_d3_oracle_values():
    assert sim.exact_logical_error_rate_d3(0.0) == 0.0
    assert sim.exact_logical_error_rate_d3(0.5) == 0.5
    assert sim.exact_logical_error_rate_d3(0.05) == pytest.approx(
        D3_ORACLE_P05, rel=1e-12
    )
    # failure rate is monotone in p on [0, 0.5]
    vals = [sim.exact_logical_error_rate_d3(p) for p in (0.01, 0.05, 0.1, 0.3, 0.5)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_phase_flip_side_matches_enumeration():
    """Exhaustive 2^13 check of the phase-flip decode path at d=3.

    The star-check problem is the transpose of the plaquette one, so its
    exact failure rate may differ from the bit-flip oracle only by the
    probability mass of patterns where a minimum-weight tie lands in the
    other logical class: equal at p=0.5 by symmetry, and within 5e-4 at
    p=0.1.  A transposition bug would show up at percent scale.
    """
    from qcplan.backend import kernel

    lat = build_lattice(3)
    d, n = lat.d, lat.num_data
    nch = d * (d - 1)
    cut = lat.logical_z_cut()
    ez = bytearray(n)
    ex = bytearray(n)
    sz = bytearray(nch)
    sx = bytearray(nch)
    corr_parity = {}

    def z_side_rate(p):
        wp = [p**w * (1 - p) ** (n - w) for w in range(n + 1)]
        total = 0.0
        for bits in range(1 << n):
            w = 0
            for k in range(n):
                b = (bits >> k) & 1
                ez[k] = b
                w += b
            kernel.compute_syndromes(d, ex, ez, sz, sx)
            key = bytes(sx)
            if key not in corr_parity:
                defects = [
                    sim.Defect(0, k // d, k % d, "X") for k in range(nch) if sx[k]
                ]
                graph = sim.DefectGraph(d=d, kind="X", defects=tuple(defects))
                corr = sim.correction_from_matching(lat, graph, sim.decode(graph))
                corr_parity[key] = sum(corr.z[i] for i in cut) % 2
            if (sum(ez[i] for i in cut) % 2) != corr_parity[key]:
                total += wp[w]
        return total

    assert z_side_rate(0.5) == 0.5
    x_val = sim.exact_logical_error_rate_d3(0.1)
    z_val = z_side_rate(0.1)
    assert abs(x_val - z_val) < 5e-4


def test_monte_carlo_agrees_with_oracle():
    for p in (0.05, 0.10):
        noise = NoiseModel(CC, p=p, balanced=False)
        est = sim.run_monte_carlo(3, noise, 50_000, base_seed=31337)
        exact = sim.exact_logical_error_rate_d3(p)
        x_hat = est.x_failures / est.trials
        se = math.sqrt(x_hat * (1 - x_hat) / est.trials)
        assert abs(x_hat - exact) <= 4 * se
        assert est.z_failures == 0  # x-only noise never flips the phase


def test_phenomenological_reduces_to_code_capacity_at_one_round():
    cc = NoiseModel(CC, p=0.08)
    phen1 = NoiseModel(PHEN, p=0.08, rounds=1, measurement_error=0.25)
    for seed in range(200):
        assert sim.run_trial(3, cc, seed) == sim.run_trial(3, phen1, seed)


def test_phenomenological_runs_and_is_deterministic():
    noise = NoiseModel(PHEN, p=0.03)
    a = sim.run_monte_carlo(5, noise, 4000, base_seed=8)
    b = sim.run_monte_carlo(5, noise, 4000, base_seed=8, workers=2)
    assert a == b
    assert a.max_defects > 0
    # measurement noise strictly degrades the logical rate at fixed p
    quiet = sim.run_monte_carlo(5, NoiseModel(PHEN, p=0.03, measurement_error=0.0,
                                              rounds=5), 4000, base_seed=8)
    assert a.failures > quiet.failures


def test_defect_ceiling_flag():
    noise = NoiseModel(CC, p=0.25)
    est = sim.run_monte_carlo(5, noise, 500, base_seed=3, defect_ceiling=4)
    assert est.ceiling_exceeded > 0
    est_hi = sim.run_monte_carlo(5, noise, 500, base_seed=3, defect_ceiling=10_000)
    assert est_hi.ceiling_exceeded == 0
    # the flag is bookkeeping only: failure counts are unchanged
    assert (est.failures, est.x_failures, est.z_failures) == (
        est_hi.failures, est_hi.x_failures, est_hi.z_failures
    )
