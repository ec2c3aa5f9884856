"""Monte Carlo kernel: sampling, syndrome extraction, matching, homology.

This module is written in Cython "pure Python" mode: the same source runs
interpreted (fallback) or compiled as the extension ``qcplan._core_c``
(see setup.py).  Every hot-path value is an integer or an exact float
product, so the two modes produce bit-identical results; ``backend``
picks whichever is available.

Conventions
-----------
* A distance-d patch is a (2d-1) x (2d-1) grid; data sites have even
  row+column parity.  Data index order is row-major.
* Plaquette ("Z") checks detect bit-flip (X) errors, live at raw
  (2R, 2C+1), reduced grid d x (d-1), rough boundary left/right.
* Star ("X") checks detect phase-flip (Z) errors, live at raw
  (2R+1, 2C), reduced grid (d-1) x d, rough boundary top/bottom.
* One reduced-grid step equals one data error, so matching weights are
  Manhattan distances on reduced coordinates plus round separation.
* Randomness: one 64-bit mixed counter stream per trial, stream i seeded
  with base_seed + i.  Draw order within a trial is fixed: per round,
  data bit-flip draws in data order, then (if balanced) data phase-flip
  draws, then measurement-flip draws for plaquette then star checks on
  every round except the last.  Uniform doubles are (x >> 11) * 2^-53,
  which is exact in IEEE arithmetic.

The matcher is an exact minimum-weight perfect matching on the complete
defect graph: boundary attachment is folded in by the standard reduction
w'(i,j) = min(dist(i,j), bdist(i)+bdist(j)) plus one virtual node when
the defect count is odd.  Matching uses a primal-dual blossom algorithm
on a dense adjacency matrix with integer duals (weights are doubled
implicitly via the slack definition, keeping all arithmetic integral).
"""

import cython

from array import array

from .errors import NonTrivialResidualSyndromeError

# splitmix64 constants
_GAMMA = cython.declare(cython.ulonglong, 0x9E3779B97F4A7C15)
_MIX1 = cython.declare(cython.ulonglong, 0xBF58476D1CE4E5B9)
_MIX2 = cython.declare(cython.ulonglong, 0x94D049BB133111EB)
_MASK64 = cython.declare(cython.ulonglong, 0xFFFFFFFFFFFFFFFF)
# 2^-53: (x >> 11) * _INV53 is an exact uniform in [0, 1)
_INV53 = cython.declare(cython.double, 1.1102230246251565404236316680908203125e-16)

_INF = cython.declare(cython.int, 2147483647)

COMPILED = cython.compiled

MATCH_NODE_HARD_CAP = 600


# ---------------------------------------------------------------------------
# counter-based RNG
# ---------------------------------------------------------------------------


@cython.cfunc
@cython.inline
@cython.exceptval(check=False)
def _mix64(z: cython.ulonglong) -> cython.ulonglong:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


@cython.ccall
def rng_stream(seed: cython.ulonglong, count: cython.int) -> list:
    """First ``count`` uniforms of the per-trial stream (for tests)."""
    out = []
    state: cython.ulonglong = seed
    i: cython.int
    x: cython.ulonglong
    for i in range(count):
        state = (state + _GAMMA) & _MASK64
        x = _mix64(state)
        out.append((x >> 11) * _INV53)
    return out


# ---------------------------------------------------------------------------
# geometry helpers (formulaic, no lattice object in the hot path)
# ---------------------------------------------------------------------------


@cython.cfunc
@cython.inline
@cython.exceptval(check=False)
def _data_index(d: cython.int, r: cython.int, c: cython.int) -> cython.int:
    side: cython.int = 2 * d - 1
    if r & 1:
        return (r >> 1) * side + d + ((c - 1) >> 1)
    return (r >> 1) * side + (c >> 1)


def num_data_sites(d: int) -> int:
    return 2 * d * d - 2 * d + 1


def num_checks(d: int) -> int:
    """Check count of one type (plaquette or star)."""
    return d * (d - 1)


# ---------------------------------------------------------------------------
# error sampling and syndrome extraction
# ---------------------------------------------------------------------------


@cython.cfunc
def _sample_round(
    d: cython.int,
    p: cython.double,
    balanced: cython.bint,
    state: cython.ulonglong,
    err_x: cython.uchar[:],
    err_z: cython.uchar[:],
) -> cython.ulonglong:
    """XOR one round of fresh data errors into err_x / err_z."""
    n_data: cython.int = 2 * d * d - 2 * d + 1
    k: cython.int
    x: cython.ulonglong
    for k in range(n_data):
        state = (state + _GAMMA) & _MASK64
        x = _mix64(state)
        if (x >> 11) * _INV53 < p:
            err_x[k] ^= 1
    if balanced:
        for k in range(n_data):
            state = (state + _GAMMA) & _MASK64
            x = _mix64(state)
            if (x >> 11) * _INV53 < p:
                err_z[k] ^= 1
    return state


@cython.cfunc
def _syndrome_z(d: cython.int, err_x: cython.uchar[:], synd: cython.uchar[:]) -> cython.void:
    """Plaquette syndrome of a bit-flip pattern (perfect measurement)."""
    nz: cython.int = d * (d - 1)
    side: cython.int = 2 * d - 1
    i: cython.int
    r: cython.int
    c: cython.int
    k: cython.int
    for i in range(nz):
        synd[i] = 0
    k = 0
    for r in range(side):
        c = r & 1
        while c < side:
            if err_x[k]:
                if r & 1:
                    # odd-odd data: plaquettes above and below
                    synd[((r - 1) >> 1) * (d - 1) + ((c - 1) >> 1)] ^= 1
                    synd[((r + 1) >> 1) * (d - 1) + ((c - 1) >> 1)] ^= 1
                else:
                    # even-even data: plaquettes left and right
                    if c >= 2:
                        synd[(r >> 1) * (d - 1) + ((c - 2) >> 1)] ^= 1
                    if c <= side - 3:
                        synd[(r >> 1) * (d - 1) + (c >> 1)] ^= 1
            k += 1
            c += 2


@cython.cfunc
def _syndrome_x(d: cython.int, err_z: cython.uchar[:], synd: cython.uchar[:]) -> cython.void:
    """Star syndrome of a phase-flip pattern (perfect measurement)."""
    nx: cython.int = d * (d - 1)
    side: cython.int = 2 * d - 1
    i: cython.int
    r: cython.int
    c: cython.int
    k: cython.int
    for i in range(nx):
        synd[i] = 0
    k = 0
    for r in range(side):
        c = r & 1
        while c < side:
            if err_z[k]:
                if r & 1:
                    # odd-odd data: stars left and right
                    synd[((r - 1) >> 1) * d + ((c - 1) >> 1)] ^= 1
                    synd[((r - 1) >> 1) * d + ((c + 1) >> 1)] ^= 1
                else:
                    # even-even data: stars above and below
                    if r >= 2:
                        synd[((r - 2) >> 1) * d + (c >> 1)] ^= 1
                    if r <= side - 3:
                        synd[(r >> 1) * d + (c >> 1)] ^= 1
            k += 1
            c += 2


@cython.ccall
def sample_pattern(
    d: cython.int,
    p: cython.double,
    balanced: cython.bint,
    seed: cython.ulonglong,
    err_x: cython.uchar[:],
    err_z: cython.uchar[:],
) -> cython.void:
    """One round of data errors into zeroed buffers (public sampling op)."""
    n_data: cython.int = 2 * d * d - 2 * d + 1
    k: cython.int
    for k in range(n_data):
        err_x[k] = 0
        err_z[k] = 0
    _sample_round(d, p, balanced, seed, err_x, err_z)


@cython.ccall
def compute_syndromes(
    d: cython.int,
    err_x: cython.uchar[:],
    err_z: cython.uchar[:],
    synd_z: cython.uchar[:],
    synd_x: cython.uchar[:],
) -> cython.void:
    _syndrome_z(d, err_x, synd_z)
    _syndrome_x(d, err_z, synd_x)


# ---------------------------------------------------------------------------
# exact minimum-weight perfect matching (dense blossom, integer duals)
# ---------------------------------------------------------------------------
#
# 1-indexed with 0 as null.  Node ids 1..n are graph vertices, n+1..2n are
# contracted blossoms.  st[x] maps a node to its surface blossom; g stores,
# for every surface pair, the best original edge between them as a
# (u, v, w) triple split over gu/gv/gw; slack_[x] caches, for each non-outer
# surface x, the outer original vertex with the tightest edge into x.


@cython.cfunc
@cython.inline
@cython.exceptval(check=False)
def _edelta(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    n2: cython.int, x: cython.int, y: cython.int,
) -> cython.int:
    u: cython.int = gu[x * n2 + y]
    v: cython.int = gv[x * n2 + y]
    return lab[u] + lab[v] - 2 * gw[u * n2 + v]


@cython.cfunc
def _update_slack(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    slack_: cython.int[:], n2: cython.int, u: cython.int, x: cython.int,
) -> cython.void:
    if slack_[x] == 0 or _edelta(gu, gv, gw, lab, n2, u, x) < _edelta(
        gu, gv, gw, lab, n2, slack_[x], x
    ):
        slack_[x] = u


@cython.cfunc
def _set_slack(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    slack_: cython.int[:], st: cython.int[:], s_lab: cython.int[:],
    n: cython.int, n2: cython.int, x: cython.int,
) -> cython.void:
    slack_[x] = 0
    u: cython.int
    for u in range(1, n + 1):
        if gw[u * n2 + x] > 0 and st[u] != x and s_lab[st[u]] == 0:
            _update_slack(gu, gv, gw, lab, slack_, n2, u, x)


@cython.cfunc
def _q_push(
    q_arr: cython.int[:], q_state: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:],
    fpitch: cython.int, n: cython.int, x: cython.int,
) -> cython.void:
    i: cython.int
    if x <= n:
        if q_state[1] >= q_state[3]:
            raise AssertionError("matcher queue capacity exceeded")
        q_arr[q_state[1]] = x
        q_state[1] += 1
    else:
        for i in range(flower_len[x]):
            _q_push(q_arr, q_state, flower, flower_len, fpitch, n, flower[x * fpitch + i])


@cython.cfunc
def _set_st(
    st: cython.int[:], flower: cython.int[:], flower_len: cython.int[:],
    fpitch: cython.int, n: cython.int, x: cython.int, b: cython.int,
) -> cython.void:
    st[x] = b
    i: cython.int
    if x > n:
        for i in range(flower_len[x]):
            _set_st(st, flower, flower_len, fpitch, n, flower[x * fpitch + i], b)


@cython.cfunc
def _get_pr(
    flower: cython.int[:], flower_len: cython.int[:],
    fpitch: cython.int, b: cython.int, xr: cython.int,
) -> cython.int:
    ln: cython.int = flower_len[b]
    pr: cython.int = 0
    i: cython.int
    j: cython.int
    t: cython.int
    for i in range(ln):
        if flower[b * fpitch + i] == xr:
            pr = i
            break
    if pr & 1:
        # reverse the cycle past the base so xr lands on an even position
        i = 1
        j = ln - 1
        while i < j:
            t = flower[b * fpitch + i]
            flower[b * fpitch + i] = flower[b * fpitch + j]
            flower[b * fpitch + j] = t
            i += 1
            j -= 1
        return ln - pr
    return pr


@cython.cfunc
def _set_match(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:],
    mate: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:],
    n: cython.int, n2: cython.int, fpitch: cython.int, ffpitch: cython.int,
    u: cython.int, v: cython.int,
) -> cython.void:
    eu: cython.int = gu[u * n2 + v]
    ev: cython.int = gv[u * n2 + v]
    mate[u] = ev
    if u <= n:
        return
    xr: cython.int = flower_from[u * ffpitch + eu]
    pr: cython.int = _get_pr(flower, flower_len, fpitch, u, xr)
    i: cython.int
    for i in range(pr):
        _set_match(
            gu, gv, gw, mate, flower, flower_len, flower_from, tmp,
            n, n2, fpitch, ffpitch,
            flower[u * fpitch + i], flower[u * fpitch + (i ^ 1)],
        )
    _set_match(
        gu, gv, gw, mate, flower, flower_len, flower_from, tmp,
        n, n2, fpitch, ffpitch, xr, v,
    )
    # rotate the cycle left by pr so xr becomes the base
    ln: cython.int = flower_len[u]
    for i in range(ln):
        tmp[i] = flower[u * fpitch + ((i + pr) % ln)]
    for i in range(ln):
        flower[u * fpitch + i] = tmp[i]


@cython.cfunc
def _augment(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:],
    mate: cython.int[:], st: cython.int[:], pa: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:],
    n: cython.int, n2: cython.int, fpitch: cython.int, ffpitch: cython.int,
    u: cython.int, v: cython.int,
) -> cython.void:
    xnv: cython.int
    while True:
        xnv = st[mate[u]]
        _set_match(
            gu, gv, gw, mate, flower, flower_len, flower_from, tmp,
            n, n2, fpitch, ffpitch, u, v,
        )
        if xnv == 0:
            return
        _set_match(
            gu, gv, gw, mate, flower, flower_len, flower_from, tmp,
            n, n2, fpitch, ffpitch, xnv, st[pa[xnv]],
        )
        u = st[pa[xnv]]
        v = xnv


@cython.cfunc
def _get_lca(
    mate: cython.int[:], st: cython.int[:], pa: cython.int[:], vis: cython.int[:],
    q_state: cython.int[:], u: cython.int, v: cython.int,
) -> cython.int:
    q_state[2] += 1
    t: cython.int = q_state[2]
    w: cython.int
    while u != 0 or v != 0:
        if u != 0:
            if vis[u] == t:
                return u
            vis[u] = t
            u = st[mate[u]]
            if u != 0:
                u = st[pa[u]]
        w = u
        u = v
        v = w
    return 0


@cython.cfunc
def _add_blossom(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    q_arr: cython.int[:], q_state: cython.int[:],
    n: cython.int, n2: cython.int, fpitch: cython.int, ffpitch: cython.int,
    u: cython.int, lca: cython.int, v: cython.int,
) -> cython.int:
    """Contract the odd cycle through u, lca, v into a new blossom; returns
    the updated top node count n_x."""
    n_x: cython.int = q_state[0]
    b: cython.int = n + 1
    while b <= n_x and st[b] != 0:
        b += 1
    if b > n_x:
        n_x += 1
        q_state[0] = n_x
    lab[b] = 0
    s_lab[b] = 0
    mate[b] = mate[lca]
    ln: cython.int = 0
    flower[b * fpitch + ln] = lca
    ln += 1
    x: cython.int = u
    y: cython.int
    i: cython.int
    j: cython.int
    t: cython.int
    while x != lca:
        flower[b * fpitch + ln] = x
        ln += 1
        y = st[mate[x]]
        flower[b * fpitch + ln] = y
        ln += 1
        _q_push(q_arr, q_state, flower, flower_len, fpitch, n, y)
        x = st[pa[y]]
    # reverse everything past the base, then append the v-side path
    i = 1
    j = ln - 1
    while i < j:
        t = flower[b * fpitch + i]
        flower[b * fpitch + i] = flower[b * fpitch + j]
        flower[b * fpitch + j] = t
        i += 1
        j -= 1
    x = v
    while x != lca:
        flower[b * fpitch + ln] = x
        ln += 1
        y = st[mate[x]]
        flower[b * fpitch + ln] = y
        ln += 1
        _q_push(q_arr, q_state, flower, flower_len, fpitch, n, y)
        x = st[pa[y]]
    flower_len[b] = ln
    _set_st(st, flower, flower_len, fpitch, n, b, b)
    for x in range(1, n_x + 1):
        gw[b * n2 + x] = 0
        gw[x * n2 + b] = 0
    for x in range(1, n + 1):
        flower_from[b * ffpitch + x] = 0
    xs: cython.int
    for i in range(ln):
        xs = flower[b * fpitch + i]
        for x in range(1, n_x + 1):
            if gw[b * n2 + x] == 0 or _edelta(gu, gv, gw, lab, n2, xs, x) < _edelta(
                gu, gv, gw, lab, n2, b, x
            ):
                gu[b * n2 + x] = gu[xs * n2 + x]
                gv[b * n2 + x] = gv[xs * n2 + x]
                gw[b * n2 + x] = gw[xs * n2 + x]
                gu[x * n2 + b] = gu[x * n2 + xs]
                gv[x * n2 + b] = gv[x * n2 + xs]
                gw[x * n2 + b] = gw[x * n2 + xs]
        for x in range(1, n + 1):
            if flower_from[xs * ffpitch + x] != 0:
                flower_from[b * ffpitch + x] = xs
    _set_slack(gu, gv, gw, lab, slack_, st, s_lab, n, n2, b)
    return q_state[0]


@cython.cfunc
def _expand_blossom(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    q_arr: cython.int[:], q_state: cython.int[:],
    n: cython.int, n2: cython.int, fpitch: cython.int, ffpitch: cython.int,
    b: cython.int,
) -> cython.void:
    i: cython.int
    for i in range(flower_len[b]):
        _set_st(
            st, flower, flower_len, fpitch, n,
            flower[b * fpitch + i], flower[b * fpitch + i],
        )
    xr: cython.int = flower_from[b * ffpitch + gu[b * n2 + pa[b]]]
    pr: cython.int = _get_pr(flower, flower_len, fpitch, b, xr)
    xs: cython.int
    xns: cython.int
    i = 0
    while i < pr:
        xs = flower[b * fpitch + i]
        xns = flower[b * fpitch + i + 1]
        pa[xs] = gu[xns * n2 + xs]
        s_lab[xs] = 1
        s_lab[xns] = 0
        slack_[xs] = 0
        _set_slack(gu, gv, gw, lab, slack_, st, s_lab, n, n2, xns)
        _q_push(q_arr, q_state, flower, flower_len, fpitch, n, xns)
        i += 2
    s_lab[xr] = 1
    pa[xr] = pa[b]
    for i in range(pr + 1, flower_len[b]):
        xs = flower[b * fpitch + i]
        s_lab[xs] = -1
        _set_slack(gu, gv, gw, lab, slack_, st, s_lab, n, n2, xs)
    st[b] = 0


@cython.cfunc
def _on_found_edge(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:], vis: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:], q_arr: cython.int[:], q_state: cython.int[:],
    n: cython.int, n2: cython.int, fpitch: cython.int, ffpitch: cython.int,
    eu: cython.int, ev: cython.int,
) -> cython.bint:
    u: cython.int = st[eu]
    v: cython.int = st[ev]
    nu: cython.int
    lca: cython.int
    if s_lab[v] == -1:
        pa[v] = eu
        s_lab[v] = 1
        nu = st[mate[v]]
        slack_[v] = 0
        slack_[nu] = 0
        s_lab[nu] = 0
        _q_push(q_arr, q_state, flower, flower_len, fpitch, n, nu)
    elif s_lab[v] == 0:
        lca = _get_lca(mate, st, pa, vis, q_state, u, v)
        if lca == 0:
            _augment(
                gu, gv, gw, mate, st, pa, flower, flower_len, flower_from, tmp,
                n, n2, fpitch, ffpitch, u, v,
            )
            _augment(
                gu, gv, gw, mate, st, pa, flower, flower_len, flower_from, tmp,
                n, n2, fpitch, ffpitch, v, u,
            )
            return True
        _add_blossom(
            gu, gv, gw, lab, mate, slack_, st, pa, s_lab,
            flower, flower_len, flower_from, q_arr, q_state,
            n, n2, fpitch, ffpitch, u, lca, v,
        )
    return False


@cython.cfunc
def _matching_phase(
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:], vis: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:], q_arr: cython.int[:], q_state: cython.int[:],
    n: cython.int, n2: cython.int, fpitch: cython.int, ffpitch: cython.int,
) -> cython.bint:
    """Grow alternating trees from every free node until one augmentation
    happens (True) or the duals prove no augmenting path exists (False)."""
    n_x: cython.int = q_state[0]
    x: cython.int
    u: cython.int
    v: cython.int
    b: cython.int
    dlt: cython.int
    sl: cython.int
    for x in range(1, n_x + 1):
        s_lab[x] = -1
        slack_[x] = 0
    q_state[1] = 0
    q_head: cython.int = 0
    for x in range(1, n_x + 1):
        if st[x] == x and mate[x] == 0:
            pa[x] = 0
            s_lab[x] = 0
            _q_push(q_arr, q_state, flower, flower_len, fpitch, n, x)
    if q_state[1] == 0:
        return False
    while True:
        while q_head < q_state[1]:
            u = q_arr[q_head]
            q_head += 1
            if s_lab[st[u]] == 1:
                continue
            for v in range(1, n + 1):
                if gw[u * n2 + v] > 0 and st[u] != st[v]:
                    if _edelta(gu, gv, gw, lab, n2, u, v) == 0:
                        if _on_found_edge(
                            gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
                            flower, flower_len, flower_from, tmp, q_arr, q_state,
                            n, n2, fpitch, ffpitch, u, v,
                        ):
                            return True
                        n_x = q_state[0]
                    else:
                        _update_slack(gu, gv, gw, lab, slack_, n2, u, st[v])
        n_x = q_state[0]
        dlt = _INF
        for b in range(n + 1, n_x + 1):
            if st[b] == b and s_lab[b] == 1:
                sl = lab[b] >> 1
                if sl < dlt:
                    dlt = sl
        for x in range(1, n_x + 1):
            if st[x] == x and slack_[x] != 0:
                sl = _edelta(gu, gv, gw, lab, n2, slack_[x], x)
                if s_lab[x] == -1:
                    if sl < dlt:
                        dlt = sl
                elif s_lab[x] == 0:
                    sl >>= 1
                    if sl < dlt:
                        dlt = sl
        for u in range(1, n + 1):
            if s_lab[st[u]] == 0:
                if lab[u] <= dlt:
                    return False
                lab[u] -= dlt
            elif s_lab[st[u]] == 1:
                lab[u] += dlt
        for b in range(n + 1, n_x + 1):
            if st[b] == b:
                if s_lab[b] == 0:
                    lab[b] += 2 * dlt
                elif s_lab[b] == 1:
                    lab[b] -= 2 * dlt
        for x in range(1, n_x + 1):
            if (
                st[x] == x
                and slack_[x] != 0
                and st[slack_[x]] != x
                and _edelta(gu, gv, gw, lab, n2, slack_[x], x) == 0
            ):
                if _on_found_edge(
                    gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
                    flower, flower_len, flower_from, tmp, q_arr, q_state,
                    n, n2, fpitch, ffpitch, gu[slack_[x] * n2 + x], gv[slack_[x] * n2 + x],
                ):
                    return True
                n_x = q_state[0]
        for b in range(n + 1, n_x + 1):
            if st[b] == b and s_lab[b] == 1 and lab[b] == 0:
                _expand_blossom(
                    gu, gv, gw, lab, mate, slack_, st, pa, s_lab,
                    flower, flower_len, flower_from, q_arr, q_state,
                    n, n2, fpitch, ffpitch, b,
                )
        n_x = q_state[0]


@cython.cfunc
def _match_dense_min(
    n: cython.int,
    weights: cython.int[:],
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:], vis: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:], q_arr: cython.int[:], q_state: cython.int[:],
    mate_out: cython.int[:],
) -> cython.long:
    """Exact min-weight perfect matching of the complete graph on n nodes
    (n even) given a row-major n*n weight matrix.  Fills mate_out
    (0-indexed) and returns the total weight."""
    n2: cython.int = 2 * n + 2
    fpitch: cython.int = n + 2
    ffpitch: cython.int = n + 2
    u: cython.int
    v: cython.int
    x: cython.int
    w_max: cython.int = 0
    if n == 0:
        return 0
    for u in range(n):
        for v in range(n):
            if u != v and weights[u * n + v] > w_max:
                w_max = weights[u * n + v]
    # maximize (w_max + 1 - w): all transformed weights >= 1, so the
    # maximum matching of the complete even graph is perfect and minimizes
    # the original total weight
    shift: cython.int = w_max + 1
    for x in range(2 * n + 1):
        mate[x] = 0
        st[x] = x
        pa[x] = 0
        vis[x] = 0
        lab[x] = 0
        s_lab[x] = -1
        slack_[x] = 0
        flower_len[x] = 0
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            gu[u * n2 + v] = u
            gv[u * n2 + v] = v
            gw[u * n2 + v] = 0 if u == v else shift - weights[(u - 1) * n + (v - 1)]
            flower_from[u * ffpitch + v] = u if u == v else 0
    for u in range(1, n + 1):
        lab[u] = shift - 1  # max transformed weight
    q_state[0] = n  # current top node count n_x
    q_state[1] = 0  # queue tail
    q_state[2] = 0  # lca timestamp
    while _matching_phase(
        gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
        flower, flower_len, flower_from, tmp, q_arr, q_state,
        n, n2, fpitch, ffpitch,
    ):
        pass
    total: cython.long = 0
    for u in range(1, n + 1):
        if mate[u] == 0:
            raise AssertionError("dense matcher failed to produce a perfect matching")
        mate_out[u - 1] = mate[u] - 1
        if mate[u] > u:
            total += weights[(u - 1) * n + (mate[u] - 1)]
    return total


def make_matcher_workspace(max_nodes: int) -> dict:
    """Preallocated buffers for the dense matcher (max_nodes graph nodes,
    rounded up to even, plus blossom headroom)."""
    if max_nodes > MATCH_NODE_HARD_CAP:
        raise ValueError(
            f"matcher workspace capped at {MATCH_NODE_HARD_CAP} nodes, got {max_nodes}"
        )
    cap = max_nodes + (max_nodes & 1)
    cap = max(cap, 2)
    n2 = 2 * cap + 2
    fpitch = cap + 2
    qcap = n2 * fpitch
    ws = {
        "cap": cap,
        "w": array("i", bytes(4 * cap * cap)),
        "gu": array("i", bytes(4 * n2 * n2)),
        "gv": array("i", bytes(4 * n2 * n2)),
        "gw": array("i", bytes(4 * n2 * n2)),
        "lab": array("i", bytes(4 * n2)),
        "mate": array("i", bytes(4 * n2)),
        "slack": array("i", bytes(4 * n2)),
        "st": array("i", bytes(4 * n2)),
        "pa": array("i", bytes(4 * n2)),
        "s": array("i", bytes(4 * n2)),
        "vis": array("i", bytes(4 * n2)),
        "flower": array("i", bytes(4 * n2 * fpitch)),
        "flower_len": array("i", bytes(4 * n2)),
        "flower_from": array("i", bytes(4 * n2 * fpitch)),
        "tmp": array("i", bytes(4 * fpitch)),
        "q": array("i", bytes(4 * qcap)),
        "q_state": array("i", bytes(4 * 4)),
        "mate_out": array("i", bytes(4 * cap)),
    }
    ws["q_state"][3] = qcap
    return ws


def match_dense_min(n: int, weights, ws: dict) -> tuple:
    """Public wrapper: min-weight perfect matching of an n-node complete
    graph (row-major weights, n even).  Returns (mate list, total weight)."""
    if n % 2 != 0:
        raise ValueError("perfect matching needs an even node count")
    if n > ws["cap"]:
        raise ValueError(f"workspace holds {ws['cap']} nodes, got {n}")
    total = _match_dense_min(
        n, weights,
        ws["gu"], ws["gv"], ws["gw"], ws["lab"], ws["mate"], ws["slack"],
        ws["st"], ws["pa"], ws["s"], ws["vis"],
        ws["flower"], ws["flower_len"], ws["flower_from"],
        ws["tmp"], ws["q"], ws["q_state"], ws["mate_out"],
    )
    return list(ws["mate_out"][:n]), total


# ---------------------------------------------------------------------------
# defect matching with boundary reduction
# ---------------------------------------------------------------------------


@cython.cfunc
def _match_defects(
    m: cython.int,
    dt: cython.int[:], dr: cython.int[:], dc: cython.int[:], bd: cython.int[:],
    w: cython.int[:],
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:], vis: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:], q_arr: cython.int[:], q_state: cython.int[:],
    mate_out: cython.int[:],
) -> cython.int:
    """Match m defects (3D coordinates + boundary distances) exactly.

    Boundary pairing is folded into the edge weights; a virtual node is
    appended when m is odd.  Returns the node count n used (m or m+1);
    mate_out[0..n-1] holds the matching."""
    n: cython.int = m + (m & 1)
    i: cython.int
    j: cython.int
    dd: cython.int
    bb: cython.int
    for i in range(m):
        for j in range(m):
            if i == j:
                w[i * n + j] = 0
                continue
            dd = dt[i] - dt[j]
            if dd < 0:
                dd = -dd
            if dr[i] >= dr[j]:
                dd += dr[i] - dr[j]
            else:
                dd += dr[j] - dr[i]
            if dc[i] >= dc[j]:
                dd += dc[i] - dc[j]
            else:
                dd += dc[j] - dc[i]
            bb = bd[i] + bd[j]
            w[i * n + j] = dd if dd <= bb else bb
    if n != m:
        for i in range(m):
            w[i * n + m] = bd[i]
            w[m * n + i] = bd[i]
        w[m * n + m] = 0
    _match_dense_min(
        n, w,
        gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
        flower, flower_len, flower_from, tmp, q_arr, q_state, mate_out,
    )
    return n


@cython.cfunc
@cython.inline
@cython.exceptval(check=False)
def _pair_is_direct(
    dt: cython.int[:], dr: cython.int[:], dc: cython.int[:], bd: cython.int[:],
    i: cython.int, j: cython.int,
) -> cython.bint:
    """Direct-path rule for a matched defect pair: use the connecting path
    when its length does not exceed the two-boundary detour (ties prefer
    the direct path)."""
    dd: cython.int = dt[i] - dt[j]
    if dd < 0:
        dd = -dd
    if dr[i] >= dr[j]:
        dd += dr[i] - dr[j]
    else:
        dd += dr[j] - dr[i]
    if dc[i] >= dc[j]:
        dd += dc[i] - dc[j]
    else:
        dd += dc[j] - dc[i]
    return dd <= bd[i] + bd[j]


@cython.cfunc
def _apply_z_pair_correction(
    d: cython.int, err_x: cython.uchar[:],
    r1: cython.int, c1: cython.int, r2: cython.int, c2: cython.int,
) -> cython.void:
    """Toggle bit-flips along the canonical L-path between two plaquette
    checks at reduced (r1, c1) and (r2, c2): rows first at column c1, then
    columns at row r2."""
    side: cython.int = 2 * d - 1
    rr: cython.int
    cc: cython.int
    lo: cython.int
    hi: cython.int
    if r1 <= r2:
        lo = r1
        hi = r2
    else:
        lo = r2
        hi = r1
    for rr in range(lo, hi):
        err_x[_data_index(d, 2 * rr + 1, 2 * c1 + 1)] ^= 1
    if c1 <= c2:
        lo = c1
        hi = c2
    else:
        lo = c2
        hi = c1
    for cc in range(lo, hi):
        err_x[_data_index(d, 2 * r2, 2 * cc + 2)] ^= 1


@cython.cfunc
def _apply_z_boundary_correction(
    d: cython.int, err_x: cython.uchar[:], r: cython.int, c: cython.int
) -> cython.void:
    """Toggle bit-flips from plaquette (r, c) to its nearer rough edge
    (left on ties)."""
    cc: cython.int
    if c + 1 <= d - 1 - c:
        for cc in range(0, c + 1):
            err_x[_data_index(d, 2 * r, 2 * cc)] ^= 1
    else:
        for cc in range(c + 1, d):
            err_x[_data_index(d, 2 * r, 2 * cc)] ^= 1


@cython.cfunc
def _apply_x_pair_correction(
    d: cython.int, err_z: cython.uchar[:],
    r1: cython.int, c1: cython.int, r2: cython.int, c2: cython.int,
) -> cython.void:
    """Transpose of the plaquette case: toggle phase-flips along the
    L-path between two star checks."""
    rr: cython.int
    cc: cython.int
    lo: cython.int
    hi: cython.int
    if c1 <= c2:
        lo = c1
        hi = c2
    else:
        lo = c2
        hi = c1
    for cc in range(lo, hi):
        err_z[_data_index(d, 2 * r1 + 1, 2 * cc + 1)] ^= 1
    if r1 <= r2:
        lo = r1
        hi = r2
    else:
        lo = r2
        hi = r1
    for rr in range(lo, hi):
        err_z[_data_index(d, 2 * rr + 2, 2 * c2)] ^= 1


@cython.cfunc
def _apply_x_boundary_correction(
    d: cython.int, err_z: cython.uchar[:], r: cython.int, c: cython.int
) -> cython.void:
    """Toggle phase-flips from star (r, c) to its nearer rough edge (top on
    ties)."""
    rr: cython.int
    if r + 1 <= d - 1 - r:
        for rr in range(0, r + 1):
            err_z[_data_index(d, 2 * rr, 2 * c)] ^= 1
    else:
        for rr in range(r + 1, d):
            err_z[_data_index(d, 2 * rr, 2 * c)] ^= 1


@cython.cfunc
def _decode_and_correct(
    d: cython.int,
    ztype: cython.bint,
    m: cython.int,
    dt: cython.int[:], dr: cython.int[:], dc: cython.int[:], bd: cython.int[:],
    err: cython.uchar[:],
    w: cython.int[:],
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:], vis: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:], q_arr: cython.int[:], q_state: cython.int[:],
    mate_out: cython.int[:],
) -> cython.void:
    """Match the defect list of one check type and XOR the implied
    correction into the error buffer."""
    if m == 0:
        return
    n: cython.int = _match_defects(
        m, dt, dr, dc, bd, w,
        gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
        flower, flower_len, flower_from, tmp, q_arr, q_state, mate_out,
    )
    i: cython.int
    j: cython.int
    for i in range(m):
        j = mate_out[i]
        if j < i:
            continue
        if j >= m or not _pair_is_direct(dt, dr, dc, bd, i, j):
            # routed through the boundary (virtual partner or cheaper detour)
            if ztype:
                _apply_z_boundary_correction(d, err, dr[i], dc[i])
                if j < m:
                    _apply_z_boundary_correction(d, err, dr[j], dc[j])
            else:
                _apply_x_boundary_correction(d, err, dr[i], dc[i])
                if j < m:
                    _apply_x_boundary_correction(d, err, dr[j], dc[j])
        else:
            if ztype:
                _apply_z_pair_correction(d, err, dr[i], dc[i], dr[j], dc[j])
            else:
                _apply_x_pair_correction(d, err, dr[i], dc[i], dr[j], dc[j])


# ---------------------------------------------------------------------------
# full trials
# ---------------------------------------------------------------------------


@cython.cfunc
def _run_trial(
    d: cython.int,
    rounds: cython.int,
    cap: cython.int,
    p: cython.double,
    q_meas: cython.double,
    balanced: cython.bint,
    seed: cython.ulonglong,
    err_x: cython.uchar[:], err_z: cython.uchar[:],
    synd_z: cython.uchar[:], synd_x: cython.uchar[:],
    prev_z: cython.uchar[:], prev_x: cython.uchar[:],
    dzt: cython.int[:], dzr: cython.int[:], dzc: cython.int[:], dzb: cython.int[:],
    dxt: cython.int[:], dxr: cython.int[:], dxc: cython.int[:], dxb: cython.int[:],
    w: cython.int[:],
    gu: cython.int[:], gv: cython.int[:], gw: cython.int[:], lab: cython.int[:],
    mate: cython.int[:], slack_: cython.int[:], st: cython.int[:], pa: cython.int[:],
    s_lab: cython.int[:], vis: cython.int[:],
    flower: cython.int[:], flower_len: cython.int[:], flower_from: cython.int[:],
    tmp: cython.int[:], q_arr: cython.int[:], q_state: cython.int[:],
    mate_out: cython.int[:],
    out: cython.int[:],
) -> cython.void:
    """One complete trial; fills out = (x_failed, z_failed, m_z, m_x).

    Raises if the residual error still triggers any check (decoder
    conversion bug guard, checked on every trial)."""
    n_data: cython.int = 2 * d * d - 2 * d + 1
    n_chk: cython.int = d * (d - 1)
    side: cython.int = 2 * d - 1
    state: cython.ulonglong = seed
    k: cython.int
    t: cython.int
    i: cython.int
    x: cython.ulonglong
    rr: cython.int
    cc: cython.int
    bl: cython.int
    br: cython.int
    mz: cython.int = 0
    mx: cython.int = 0
    for k in range(n_data):
        err_x[k] = 0
        err_z[k] = 0
    for k in range(n_chk):
        prev_z[k] = 0
        prev_x[k] = 0
    for t in range(rounds):
        state = _sample_round(d, p, balanced, state, err_x, err_z)
        _syndrome_z(d, err_x, synd_z)
        if balanced:
            _syndrome_x(d, err_z, synd_x)
        if t < rounds - 1 and q_meas > 0.0:
            for k in range(n_chk):
                state = (state + _GAMMA) & _MASK64
                x = _mix64(state)
                if (x >> 11) * _INV53 < q_meas:
                    synd_z[k] ^= 1
            if balanced:
                for k in range(n_chk):
                    state = (state + _GAMMA) & _MASK64
                    x = _mix64(state)
                    if (x >> 11) * _INV53 < q_meas:
                        synd_x[k] ^= 1
        for k in range(n_chk):
            if synd_z[k] != prev_z[k]:
                rr = k // (d - 1)
                cc = k % (d - 1)
                dzt[mz] = t
                dzr[mz] = rr
                dzc[mz] = cc
                bl = cc + 1
                br = d - 1 - cc
                dzb[mz] = bl if bl <= br else br
                mz += 1
            prev_z[k] = synd_z[k]
        if balanced:
            for k in range(n_chk):
                if synd_x[k] != prev_x[k]:
                    rr = k // d
                    cc = k % d
                    dxt[mx] = t
                    dxr[mx] = rr
                    dxc[mx] = cc
                    bl = rr + 1
                    br = d - 1 - rr
                    dxb[mx] = bl if bl <= br else br
                    mx += 1
                prev_x[k] = synd_x[k]
    if mz + 1 > cap or mx + 1 > cap:
        raise ValueError(
            f"defect count ({mz}, {mx}) exceeds matcher capacity {cap}; "
            "this run is far beyond the supported desk scale"
        )
    _decode_and_correct(
        d, True, mz, dzt, dzr, dzc, dzb, err_x, w,
        gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
        flower, flower_len, flower_from, tmp, q_arr, q_state, mate_out,
    )
    if balanced:
        _decode_and_correct(
            d, False, mx, dxt, dxr, dxc, dxb, err_z, w,
            gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
            flower, flower_len, flower_from, tmp, q_arr, q_state, mate_out,
        )
    # residual syndrome must vanish on every trial
    _syndrome_z(d, err_x, synd_z)
    _syndrome_x(d, err_z, synd_x)
    for k in range(n_chk):
        if synd_z[k] != 0 or (balanced and synd_x[k] != 0):
            raise NonTrivialResidualSyndromeError(
                f"residual syndrome after correction (seed {seed})"
            )
    xf: cython.int = 0
    zf: cython.int = 0
    for i in range(d):
        xf ^= err_x[i * side]
        zf ^= err_z[i]
    out[0] = xf
    out[1] = zf
    out[2] = mz
    out[3] = mx


def make_sim_workspace(d: int, rounds: int) -> dict:
    """All buffers needed to run trials at one (distance, rounds) setting."""
    n_data = num_data_sites(d)
    n_chk = num_checks(d)
    slots = n_chk * rounds
    cap = min(slots + 1, MATCH_NODE_HARD_CAP)
    ws = make_matcher_workspace(cap)
    ws.update(
        d=d,
        rounds=rounds,
        max_defects=slots,
        err_x=bytearray(n_data),
        err_z=bytearray(n_data),
        synd_z=bytearray(n_chk),
        synd_x=bytearray(n_chk),
        prev_z=bytearray(n_chk),
        prev_x=bytearray(n_chk),
        dzt=array("i", bytes(4 * slots)),
        dzr=array("i", bytes(4 * slots)),
        dzc=array("i", bytes(4 * slots)),
        dzb=array("i", bytes(4 * slots)),
        dxt=array("i", bytes(4 * slots)),
        dxr=array("i", bytes(4 * slots)),
        dxc=array("i", bytes(4 * slots)),
        dxb=array("i", bytes(4 * slots)),
        out=array("i", bytes(4 * 4)),
    )
    return ws


def run_trial(ws: dict, p: float, q_meas: float, balanced: bool, seed: int) -> tuple:
    """Single trial; returns (x_failed, z_failed, defects_z, defects_x)."""
    _run_trial(
        ws["d"], ws["rounds"], ws["cap"], p, q_meas, balanced, seed,
        ws["err_x"], ws["err_z"], ws["synd_z"], ws["synd_x"],
        ws["prev_z"], ws["prev_x"],
        ws["dzt"], ws["dzr"], ws["dzc"], ws["dzb"],
        ws["dxt"], ws["dxr"], ws["dxc"], ws["dxb"],
        ws["w"], ws["gu"], ws["gv"], ws["gw"], ws["lab"], ws["mate"],
        ws["slack"], ws["st"], ws["pa"], ws["s"], ws["vis"],
        ws["flower"], ws["flower_len"], ws["flower_from"],
        ws["tmp"], ws["q"], ws["q_state"], ws["mate_out"], ws["out"],
    )
    o = ws["out"]
    return (bool(o[0]), bool(o[1]), int(o[2]), int(o[3]))


def run_chunk(
    ws: dict,
    p: float,
    q_meas: float,
    balanced: bool,
    base_seed: int,
    start: int,
    count: int,
    defect_ceiling: int,
) -> tuple:
    """Aggregate trials for seeds base_seed+start .. base_seed+start+count-1.

    Returns (x_failures, z_failures, either_failures, ceiling_hits,
    max_defects_seen).  Aggregation is a plain sum, so any partition of the
    seed range gives identical totals."""
    d: cython.int = ws["d"]
    rounds: cython.int = ws["rounds"]
    cap: cython.int = ws["cap"]
    err_x: cython.uchar[:] = ws["err_x"]
    err_z: cython.uchar[:] = ws["err_z"]
    synd_z: cython.uchar[:] = ws["synd_z"]
    synd_x: cython.uchar[:] = ws["synd_x"]
    prev_z: cython.uchar[:] = ws["prev_z"]
    prev_x: cython.uchar[:] = ws["prev_x"]
    dzt: cython.int[:] = ws["dzt"]
    dzr: cython.int[:] = ws["dzr"]
    dzc: cython.int[:] = ws["dzc"]
    dzb: cython.int[:] = ws["dzb"]
    dxt: cython.int[:] = ws["dxt"]
    dxr: cython.int[:] = ws["dxr"]
    dxc: cython.int[:] = ws["dxc"]
    dxb: cython.int[:] = ws["dxb"]
    w: cython.int[:] = ws["w"]
    gu: cython.int[:] = ws["gu"]
    gv: cython.int[:] = ws["gv"]
    gw: cython.int[:] = ws["gw"]
    lab: cython.int[:] = ws["lab"]
    mate: cython.int[:] = ws["mate"]
    slack_: cython.int[:] = ws["slack"]
    st: cython.int[:] = ws["st"]
    pa: cython.int[:] = ws["pa"]
    s_lab: cython.int[:] = ws["s"]
    vis: cython.int[:] = ws["vis"]
    flower: cython.int[:] = ws["flower"]
    flower_len: cython.int[:] = ws["flower_len"]
    flower_from: cython.int[:] = ws["flower_from"]
    tmp: cython.int[:] = ws["tmp"]
    q_arr: cython.int[:] = ws["q"]
    q_state: cython.int[:] = ws["q_state"]
    mate_out: cython.int[:] = ws["mate_out"]
    out: cython.int[:] = ws["out"]
    pp: cython.double = p
    qq: cython.double = q_meas
    bal: cython.bint = balanced
    base: cython.ulonglong = base_seed
    lo: cython.long = start
    nn: cython.long = count
    ceil_: cython.int = defect_ceiling
    xf: cython.long = 0
    zf: cython.long = 0
    ef: cython.long = 0
    ch: cython.long = 0
    mmax: cython.int = 0
    t: cython.long
    md: cython.int
    for t in range(nn):
        _run_trial(
            d, rounds, cap, pp, qq, bal, (base + lo + t) & _MASK64,
            err_x, err_z, synd_z, synd_x, prev_z, prev_x,
            dzt, dzr, dzc, dzb, dxt, dxr, dxc, dxb,
            w, gu, gv, gw, lab, mate, slack_, st, pa, s_lab, vis,
            flower, flower_len, flower_from, tmp, q_arr, q_state, mate_out, out,
        )
        md = out[2] if out[2] >= out[3] else out[3]
        if md > mmax:
            mmax = md
        if md > ceil_:
            ch += 1
        if out[0]:
            xf += 1
        if out[1]:
            zf += 1
        if out[0] or out[1]:
            ef += 1
    return (xf, zf, ef, ch, mmax)


def match_defect_list(ws: dict, ztype: bool, defects: list) -> list:
    """Match a defect list [(t, r, c)] of one check type; returns pairs
    [(i, j)] with j = -1 for a boundary match.  Uses the exact same code
    path as the trial loop."""
    d = ws["d"]
    m = len(defects)
    if m == 0:
        return []
    if m > ws["cap"]:
        raise ValueError(f"defect count {m} exceeds workspace capacity {ws['cap']}")
    dt_, dr_, dc_, db_ = (
        (ws["dzt"], ws["dzr"], ws["dzc"], ws["dzb"])
        if ztype
        else (ws["dxt"], ws["dxr"], ws["dxc"], ws["dxb"])
    )
    for i, (t, r, c) in enumerate(defects):
        dt_[i] = t
        dr_[i] = r
        dc_[i] = c
        db_[i] = min(c + 1, d - 1 - c) if ztype else min(r + 1, d - 1 - r)
    n = _match_defects(
        m, dt_, dr_, dc_, db_, ws["w"],
        ws["gu"], ws["gv"], ws["gw"], ws["lab"], ws["mate"], ws["slack"],
        ws["st"], ws["pa"], ws["s"], ws["vis"],
        ws["flower"], ws["flower_len"], ws["flower_from"],
        ws["tmp"], ws["q"], ws["q_state"], ws["mate_out"],
    )
    pairs = []
    for i in range(m):
        j = ws["mate_out"][i]
        if j < i:
            continue
        if j >= m or not _pair_is_direct(dt_, dr_, dc_, db_, i, j):
            pairs.append((i, -1))
            if j < m:
                pairs.append((j, -1))
        else:
            pairs.append((i, j))
    return pairs


def apply_correction(ws: dict, ztype: bool, defects: list, pairs: list, err) -> None:
    """XOR the correction implied by matched pairs into a data-error buffer.

    ``pairs`` uses the format returned by match_defect_list."""
    d = ws["d"]
    for i, j in pairs:
        ti, ri, ci = defects[i]
        if j < 0:
            if ztype:
                _apply_z_boundary_correction(d, err, ri, ci)
            else:
                _apply_x_boundary_correction(d, err, ri, ci)
        else:
            tj, rj, cj = defects[j]
            if ztype:
                _apply_z_pair_correction(d, err, ri, ci, rj, cj)
            else:
                _apply_x_pair_correction(d, err, ri, ci, rj, cj)
