"""The compiled extension and the interpreted kernel are the same source
file; these tests pin the bit-for-bit equivalence the backend selection
relies on."""

import random
from array import array

import pytest

from qcplan import _core
from qcplan.backend import BACKEND, kernel

pytestmark = pytest.mark.skipif(
    BACKEND != "compiled", reason="compiled extension not built; nothing to compare"
)


def test_rng_streams_identical():
    for seed in (0, 1, 2**63, 2**64 - 1, 123456789):
        assert _core.rng_stream(seed, 200) == kernel.rng_stream(seed, 200)


def test_uniforms_are_exact_dyadics():
    for u in kernel.rng_stream(42, 1000):
        assert 0.0 <= u < 1.0
        assert (u * 2**53) == int(u * 2**53)  # (x >> 11) * 2^-53 is exact


def test_matcher_identical_across_modes():
    rng = random.Random(17)
    for _ in range(150):
        n = rng.choice([2, 6, 12, 20, 30])
        w = array("i", [0] * (n * n))
        for i in range(n):
            for j in range(i + 1, n):
                val = rng.randint(1, rng.choice([3, 25]))
                w[i * n + j] = val
                w[j * n + i] = val
        ws_i = _core.make_matcher_workspace(n)
        ws_c = kernel.make_matcher_workspace(n)
        assert _core.match_dense_min(n, w, ws_i) == kernel.match_dense_min(n, w, ws_c)


@pytest.mark.parametrize(
    "d,rounds,p,q,balanced",
    [
        (3, 1, 0.05, 0.0, True),
        (3, 1, 0.12, 0.0, False),
        (5, 1, 0.08, 0.0, True),
        (5, 5, 0.03, 0.03, True),
        (7, 3, 0.02, 0.05, True),
    ],
)
def test_chunks_identical_across_modes(d, rounds, p, q, balanced):
    ws_i = _core.make_sim_workspace(d, rounds)
    ws_c = kernel.make_sim_workspace(d, rounds)
    a = _core.run_chunk(ws_i, p, q, balanced, 321, 0, 1500, 60)
    b = kernel.run_chunk(ws_c, p, q, balanced, 321, 0, 1500, 60)
    assert a == b


def test_single_trials_identical_across_modes():
    ws_i = _core.make_sim_workspace(5, 1)
    ws_c = kernel.make_sim_workspace(5, 1)
    for seed in range(500):
        assert _core.run_trial(ws_i, 0.1, 0.0, True, seed) == kernel.run_trial(
            ws_c, 0.1, 0.0, True, seed
        )
