"""Compiled inner loop of the solver.

Masks are ``uint64`` (core capped at 8x8). The DFS is iterative over explicit
per-depth arrays, so a call can stop after a node quota and later resume from
exactly the same place; the Python side uses that for time limits, solution
draining and cancellation.

Table tuples passed in from :mod:`starpath.solver`:

``moves``  (move_off, move_dst, move_bits)
``bound``  (full, star_bit, attack, lmax, margin_positive, queen, end_id)
``lines``  (line_bits, star_lines, ray_bits, end_seg, end_seg_ok, use_cover)
``memo``   (memo_key, memo_lo, memo_hi, scratch)
"""

from __future__ import annotations

import numpy as np
from numba import njit

U0 = np.uint64(0)
U1 = np.uint64(1)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)
_DEBRUIJN_INDEX = np.zeros(64, dtype=np.int64)
for _i in range(64):
    _DEBRUIJN_INDEX[((1 << _i) * 0x03F79D71B4CB0A89 & (2**64 - 1)) >> 58] = _i

DONE = 0
FOUND = 1
PAUSED = 2
BUFFER_FULL = 3


@njit(cache=True)
def popcount(x):
    x = x - ((x >> U1) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True)
def low_index(x):
    low = x & (U0 - x)
    return _DEBRUIJN_INDEX[np.int64((low * _DEBRUIJN) >> np.uint64(58))]


@njit(cache=True)
def mix(x):
    x = (x ^ (x >> np.uint64(30))) * _MIX1
    x = (x ^ (x >> np.uint64(27))) * _MIX2
    return x ^ (x >> np.uint64(31))


@njit(cache=True)
def chain_bound(u, lmax, margin_positive, current_covered):
    if u == 0:
        return 0
    if lmax == 1:
        return 1
    if margin_positive:
        return (u + lmax - 1) // lmax
    if current_covered:
        return (u + lmax - 2) // (lmax - 1)
    rest = u - lmax
    if rest < 0:
        rest = 0
    return 1 + (rest + lmax - 2) // (lmax - 1)


@njit(cache=True)
def independence_bound(uncovered, attack, queen):
    if uncovered == U0:
        return 0
    if not queen:
        return 1
    count = 0
    while uncovered != U0:
        uncovered = uncovered & ~attack[low_index(uncovered)]
        count += 1
    return count


@njit(cache=True)
def cheap_bound(q, cov, bound):
    full, star_bit, attack, lmax, margin_positive, queen, end_id = bound
    unc = full & ~cov
    if unc == U0:
        if end_id >= 0 and q != end_id:
            return 1
        return 0
    sb = star_bit[q]
    cur = margin_positive or (sb != U0 and (cov & sb) != U0)
    c = chain_bound(popcount(unc), lmax, margin_positive, cur)
    d = independence_bound(unc, attack, queen)
    return c if c > d else d


@njit(cache=True)
def line_cover(unc, r, lines, attack, lmax, memo):
    """True when ``r`` queen lines can jointly contain every star of ``unc``."""
    if unc == U0:
        return True
    if r <= 0:
        return False
    u = popcount(unc)
    if u > r * lmax:
        return False
    line_bits, star_lines = lines[0], lines[1]
    if r == 1:
        s = low_index(unc)
        for k in range(4):
            L = star_lines[s, k]
            if L >= 0 and (unc & ~line_bits[L]) == U0:
                return True
        return False
    if independence_bound(unc, attack, True) > r:
        return False
    # feasibility is monotone in r: each entry keeps the largest r proven
    # infeasible (lo - 1) and the smallest proven feasible (hi)
    memo_key, memo_lo, memo_hi, scratch = memo
    slot = np.int64(mix(unc) & np.uint64(memo_key.shape[0] - 1))
    if memo_key[slot] == unc:
        if r >= memo_hi[slot]:
            return True
        if r < memo_lo[slot]:
            return False
    else:
        memo_key[slot] = unc
        memo_lo[slot] = 0
        memo_hi[slot] = 1 << 30
    counts = scratch[r]
    nl = line_bits.shape[0]
    for L in range(nl):
        counts[L] = popcount(unc & line_bits[L])
    # the r fullest lines must hold every open star
    total = 0
    taken = 0
    prev = 1 << 30
    while taken < r:
        best = 0
        for L in range(nl):
            c = counts[L]
            if c < prev and c > best:
                best = c
        if best == 0:
            break
        ties = 0
        for L in range(nl):
            if counts[L] == best:
                ties += 1
        if ties > r - taken:
            ties = r - taken
        total += best * ties
        taken += ties
        prev = best
        if total >= u:
            break
    result = False
    if total >= u:
        # branch on the star whose fullest line is emptiest
        best_star = -1
        best = 1 << 30
        x = unc
        while x != U0:
            s = low_index(x)
            x = x & (x - U1)
            m = 0
            for k in range(4):
                L = star_lines[s, k]
                if L >= 0 and counts[L] > m:
                    m = counts[L]
            if m < best:
                best = m
                best_star = s
                if m == 1:
                    break
        seen0 = U0
        seen1 = U0
        seen2 = U0
        nseen = 0
        for k in range(4):
            L = star_lines[best_star, k]
            if L < 0:
                continue
            rest = unc & ~line_bits[L]
            if (nseen > 0 and rest == seen0) or (nseen > 1 and rest == seen1) or (
                nseen > 2 and rest == seen2
            ):
                continue
            if nseen == 0:
                seen0 = rest
            elif nseen == 1:
                seen1 = rest
            else:
                seen2 = rest
            nseen += 1
            if line_cover(rest, r - 1, lines, attack, lmax, memo):
                result = True
                break
    # the recursion may have evicted this entry
    if memo_key[slot] != unc:
        memo_key[slot] = unc
        memo_lo[slot] = 0
        memo_hi[slot] = 1 << 30
    if result:
        if r < memo_hi[slot]:
            memo_hi[slot] = r
    elif r + 1 > memo_lo[slot]:
        memo_lo[slot] = r + 1
    return result


@njit(cache=True)
def cover_feasible(q, cov, r, bound, lines, memo):
    """Can the stars still open be reached by ``r`` strokes leaving ``q``?

    Every stroke lies on one queen line, so the open stars must fit on ``r``
    lines. The first stroke covers only a ray out of ``q``; with a fixed end
    the last covers only a ray into it, and a lone stroke must be the segment
    to the end.
    """
    full, attack, lmax, end_id = bound[0], bound[2], bound[3], bound[6]
    ray_bits, end_seg, end_seg_ok = lines[2], lines[3], lines[4]
    unc = full & ~cov
    if unc == U0:
        return True
    if r <= 0:
        return False
    if end_id >= 0 and r == 1:
        return end_seg_ok[q] and (unc & ~end_seg[q]) == U0
    if not line_cover(unc, r, lines, attack, lmax, memo):
        return False
    # a ray whose remainder fails on its own is useless in any pairing
    nray = ray_bits.shape[1]
    rest_q = np.empty(nray, dtype=np.uint64)
    nq = 0
    for a in range(nray):
        rest = unc & ~ray_bits[q, a]
        dup = False
        for i in range(nq):
            if rest_q[i] == rest:
                dup = True
                break
        if dup:
            continue
        if line_cover(rest, r - 1, lines, attack, lmax, memo):
            if end_id < 0:
                return True
            rest_q[nq] = rest
            nq += 1
    if end_id < 0 or nq == 0:
        return False
    ray_e = np.empty(nray, dtype=np.uint64)
    ne = 0
    for b in range(nray):
        ray = ray_bits[end_id, b] & unc
        dup = False
        for i in range(ne):
            if ray_e[i] == ray:
                dup = True
                break
        if dup:
            continue
        if line_cover(unc & ~ray, r - 1, lines, attack, lmax, memo):
            ray_e[ne] = ray
            ne += 1
    for i in range(nq):
        for j in range(ne):
            if line_cover(rest_q[i] & ~ray_e[j], r - 2, lines, attack, lmax, memo):
                return True
    return False


@njit(cache=True)
def full_bound(q, cov, r_max, bound, lines, memo):
    """Smallest r <= r_max passing every test, or r_max + 1."""
    r = cheap_bound(q, cov, bound)
    use_cover = lines[5]
    while r <= r_max:
        if not use_cover or cover_feasible(q, cov, r, bound, lines, memo):
            return r
        r += 1
    return r_max + 1


@njit(cache=True)
def expand(sp, pid, cov, z, limit, moves, bound, lines, memo, flags, ch_q, ch_cov, ch_nz, ch_gain):
    """Fill level ``sp`` with the children of a node that survive every bound.

    ``limit`` is the number of strokes still allowed after the child's stroke;
    ``flags`` is (progressive, zero-run cap or -1, sort by gain).
    """
    move_off, move_dst, move_bits = moves
    progressive, zcap, sort_by_gain = flags
    use_cover = lines[5]
    cnt = 0
    for m in range(move_off[pid], move_off[pid + 1]):
        q = move_dst[m]
        nc = cov | move_bits[m]
        gain = popcount(nc & ~cov)
        nz = 0
        if gain == 0:
            if progressive or (zcap >= 0 and z >= zcap):
                continue
            nz = z + 1
        if cheap_bound(q, nc, bound) > limit:
            continue
        if use_cover and not cover_feasible(q, nc, limit, bound, lines, memo):
            continue
        # stable insertion by gain, descending
        j = cnt
        if sort_by_gain:
            while j > 0 and ch_gain[sp, j - 1] < gain:
                ch_q[sp, j] = ch_q[sp, j - 1]
                ch_cov[sp, j] = ch_cov[sp, j - 1]
                ch_nz[sp, j] = ch_nz[sp, j - 1]
                ch_gain[sp, j] = ch_gain[sp, j - 1]
                j -= 1
        ch_q[sp, j] = q
        ch_cov[sp, j] = nc
        ch_nz[sp, j] = nz
        ch_gain[sp, j] = gain
        cnt += 1
    return cnt


@njit(cache=True)
def _tt_key(pid, z, used, exact):
    aux = np.int64(pid) | (np.int64(z) << 16)
    if exact >= 0:
        aux |= np.int64(used) << 32
    return aux


@njit(cache=True)
def search(moves, bound, lines, memo, flags, rules, stack, tt, sol, sol_len, counters, node_quota):
    """Run or resume the DFS.

    ``rules`` is (exact stroke count or -1, max strokes, first-only, strokes
    used before the stack root). ``stack`` holds the per-depth arrays with
    ``sp_box[0]`` as the top; ``counters`` is [nodes, buffered solutions].
    Returns DONE, FOUND, PAUSED or BUFFER_FULL.
    """
    full, end_id = bound[0], bound[6]
    exact, max_strokes, first_mode, base_used = rules
    st_pid, st_cov, st_z, st_hit, ch_cnt, ch_pos, ch_q, ch_cov, ch_nz, ch_gain, sp_box = stack
    tt_cov, tt_aux, tt_rem = tt
    tt_mask = np.uint64(tt_cov.shape[0] - 1)
    sp = sp_box[0]
    stop_at = counters[0] + node_quota
    while sp >= 0:
        if ch_pos[sp] == -1:
            if counters[0] >= stop_at:
                sp_box[0] = sp
                return PAUSED
            if counters[1] >= sol.shape[0]:
                sp_box[0] = sp
                return BUFFER_FULL
            counters[0] += 1
            st_hit[sp] = False
            ch_pos[sp] = -2
            ch_cnt[sp] = 0
            if (st_cov[sp] == full and (end_id < 0 or st_pid[sp] == end_id)
                    and (exact < 0 or base_used + sp == exact)):
                k = counters[1]
                for i in range(sp + 1):
                    sol[k, i] = st_pid[i]
                sol_len[k] = sp + 1
                counters[1] = k + 1
                st_hit[sp] = True
                if first_mode:
                    sp_box[0] = sp
                    return FOUND
        if ch_pos[sp] == -2:
            ch_pos[sp] = 0
            pid = st_pid[sp]
            cov = st_cov[sp]
            z = st_z[sp]
            used = base_used + sp
            rem = max_strokes - used
            if rem <= 0:
                continue
            aux = _tt_key(pid, z, used, exact)
            slot = np.int64(mix(cov ^ mix(np.uint64(aux))) & tt_mask)
            if tt_rem[slot] >= rem and tt_cov[slot] == cov and tt_aux[slot] == aux:
                continue
            ch_cnt[sp] = expand(sp, pid, cov, z, rem - 1, moves, bound, lines, memo, flags,
                                ch_q, ch_cov, ch_nz, ch_gain)
            continue
        i = ch_pos[sp]
        if i < ch_cnt[sp]:
            ch_pos[sp] = i + 1
            c = sp + 1
            st_pid[c] = ch_q[sp, i]
            st_cov[c] = ch_cov[sp, i]
            st_z[c] = ch_nz[sp, i]
            ch_pos[c] = -1
            sp = c
            continue
        # subtree exhausted: remember dead states, pass hits upward
        if not st_hit[sp]:
            used = base_used + sp
            rem = max_strokes - used
            if rem > 0:
                cov = st_cov[sp]
                aux = _tt_key(st_pid[sp], st_z[sp], used, exact)
                slot = np.int64(mix(cov ^ mix(np.uint64(aux))) & tt_mask)
                tt_cov[slot] = cov
                tt_aux[slot] = aux
                tt_rem[slot] = rem
        elif sp > 0:
            st_hit[sp - 1] = True
        sp -= 1
    sp_box[0] = sp
    return DONE
