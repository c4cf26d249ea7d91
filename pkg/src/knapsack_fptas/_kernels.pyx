# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels; same results as ``_purekernels``."""

import numpy as np

from . import _purekernels as _pure

BACKEND = "cython"

ctypedef long long i64

cdef i64 INF = 0x3FFFFFFFFFFFFFFF
SAFE = 2 ** 61


cdef inline i64 ceil_div(i64 a, i64 b) noexcept nogil:
    if a >= 0:
        return (a + b - 1) // b
    return -((-a) // b)


cdef inline int side(i64 ox, i64 oy, i64 px, i64 py, i64 nx, i64 ny) noexcept nogil:
    # sign of cross(prev, next, p): +1 when p is above the chord prev-next
    cdef i64 c = (nx - ox) * (py - oy) - (ny - oy) * (px - ox)
    return (c > 0) - (c < 0)


cdef Py_ssize_t beat_time(i64 old, i64 new, Py_ssize_t q0, Py_ssize_t n,
                          i64* ys, i64* phi, i64* gamma) noexcept nogil:
    cdef Py_ssize_t lo = q0, hi = n, mid
    cdef i64 y
    while lo < hi:
        mid = (lo + hi) >> 1
        y = ys[mid]
        if phi[y - old] + gamma[old] <= phi[y - new] + gamma[new]:
            hi = mid
        else:
            lo = mid + 1
    return lo


cdef void stack_pass(i64* cs, i64* ys, Py_ssize_t n, i64* phi, i64* gamma,
                     i64* eta, i64 L, i64* st_c, Py_ssize_t* st_t) noexcept nogil:
    cdef Py_ssize_t sp = 0, q, t
    cdef i64 c, y, v, best
    for q in range(n):
        c = cs[q]
        if c >= 0:
            t = n
            while sp > 0:
                t = beat_time(st_c[sp - 1], c, q, n, ys, phi, gamma)
                if t >= n or (sp >= 2 and t >= st_t[sp - 1]):
                    sp -= 1
                    t = n
                    continue
                break
            st_c[sp] = c
            st_t[sp] = t
            sp += 1
        while sp >= 2 and q >= st_t[sp - 1]:
            sp -= 1
        y = ys[q]
        if sp > 0 and y < L:
            best = st_c[sp - 1]
            v = phi[y - best] + gamma[best]
            if v < eta[y]:
                eta[y] = v


cdef void lower_conv_c(i64* phi, Py_ssize_t X, i64* gamma, Py_ssize_t Y, i64* eta,
                       i64* cs, i64* ys, i64* st_c, Py_ssize_t* st_t) noexcept nogil:
    cdef Py_ssize_t L = X + Y - 1, S, start, q, n
    cdef i64 c
    for q in range(L):
        eta[q] = INF
    if X == 1:
        for q in range(Y):
            eta[q] = phi[0] + gamma[q]
        return
    S = X - 1
    start = 0
    while start < L:
        n = S if S < L - start else L - start
        for q in range(n):
            c = start + q
            cs[q] = c if c < Y else -1
            ys[q] = start + q
        stack_pass(cs, ys, n, phi, gamma, eta, L, st_c, st_t)
        if start > 0:
            for q in range(S):
                c = start - 1 - q
                cs[q] = c if c < Y else -1
                ys[q] = start + S - 1 - q
            stack_pass(cs, ys, S, phi, gamma, eta, L, st_c, st_t)
        start += S


def lower_block_conv(phi, gamma):
    """eta[y] = min_i phi[i] + gamma[y - i] for phi with non-increasing differences."""
    cdef Py_ssize_t X = len(phi), Y = len(gamma)
    if X == 0 or Y == 0:
        return []
    big = max(abs(int(v)) for v in phi) + max(abs(int(v)) for v in gamma)
    if big >= SAFE:
        return _pure.lower_block_conv(phi, gamma)
    cdef i64[::1] p = np.asarray(phi, dtype=np.int64)
    cdef i64[::1] g = np.asarray(gamma, dtype=np.int64)
    cdef i64[::1] eta = np.empty(X + Y - 1, dtype=np.int64)
    cdef i64[::1] cs = np.empty(X + 1, dtype=np.int64)
    cdef i64[::1] ys = np.empty(X + 1, dtype=np.int64)
    cdef i64[::1] st_c = np.empty(X + 1, dtype=np.int64)
    cdef Py_ssize_t[::1] st_t = np.empty(X + 1, dtype=np.intp)
    with nogil:
        lower_conv_c(&p[0], X, &g[0], Y, &eta[0], &cs[0], &ys[0], &st_c[0], &st_t[0])
    return [int(v) for v in eta]


def maxplus_steps(ax, ay, bx, by):
    """Canonical breakpoints of the max-plus convolution of two step functions."""
    big = (max(abs(int(v)) for v in ax) + max(abs(int(v)) for v in bx)
           + max(abs(int(v)) for v in ay) + max(abs(int(v)) for v in by))
    if big >= SAFE:
        return _pure.maxplus_steps(ax, ay, bx, by)
    xa = np.asarray(ax, dtype=np.int64)
    xb = np.asarray(bx, dtype=np.int64)
    sx = np.add.outer(xa, xb).ravel()
    sy = np.add.outer(np.asarray(ay, dtype=np.int64), np.asarray(by, dtype=np.int64)).ravel()
    order = np.lexsort((sy, sx))
    cdef i64[::1] ox = np.ascontiguousarray(sx[order])
    cdef i64[::1] oy = np.ascontiguousarray(sy[order])
    cdef Py_ssize_t n = ox.shape[0], i, m = 0
    cdef i64[::1] rx = np.empty(n, dtype=np.int64)
    cdef i64[::1] ry = np.empty(n, dtype=np.int64)
    with nogil:
        for i in range(n):
            if m > 0 and oy[i] <= ry[m - 1]:
                continue
            if m > 0 and rx[m - 1] == ox[i]:
                ry[m - 1] = oy[i]
            else:
                rx[m] = ox[i]
                ry[m] = oy[i]
                m += 1
    return [int(v) for v in rx[:m]], [int(v) for v in ry[:m]]


cdef Py_ssize_t contour_reduce(i64* fx, i64* fy, Py_ssize_t k, i64 delta,
                               i64* px, i64* py, i64* ox, i64* oy, Py_ssize_t* stack) noexcept nogil:
    # staircase of the step function, then the apex-stack sparsification
    cdef Py_ssize_t n = 0, i, j, m, sp, t
    cdef i64 xx, xy, nx = 0, ny = 0, rx, ry, gap
    cdef int s, sy, is_apex, has_next
    px[0] = fx[0]
    py[0] = fy[0]
    n = 1
    for i in range(1, k):
        px[n] = fx[i]
        py[n] = py[n - 1]
        px[n + 1] = fx[i]
        py[n + 1] = fy[i]
        n += 2
    if n <= 2:
        for i in range(n):
            ox[i] = px[i]
            oy[i] = py[i]
        return n
    ox[0] = px[0]
    oy[0] = py[0]
    m = 1
    stack[0] = 0
    sp = 1
    for j in range(1, n):
        xx = px[j]
        xy = py[j]
        has_next = j + 1 < n
        if has_next:
            nx = px[j + 1]
            ny = py[j + 1]
        ox[m] = xx
        oy[m] = xy
        m += 1
        if has_next:
            s = side(ox[m - 2], oy[m - 2], xx, xy, nx, ny)
            if s == 0:
                m -= 1
                continue
            if s < 0:
                continue
        is_apex = 1
        while sp > 0:
            t = stack[sp - 1]
            gap = xy - oy[t]
            if not (0 < gap <= delta):
                break
            ox[t + 1] = xx
            oy[t + 1] = xy
            m = t + 2
            if has_next:
                s = side(ox[t], oy[t], xx, xy, nx, ny)
                if s <= 0:
                    if s == 0:
                        m -= 1
                    is_apex = 0
            if t > 0:
                if t + 1 < m:
                    rx = ox[t + 1]
                    ry = oy[t + 1]
                else:
                    rx = nx
                    ry = ny
                sy = side(ox[t - 1], oy[t - 1], ox[t], oy[t], rx, ry)
                if sy <= 0:
                    sp -= 1
                    if sy == 0:
                        if t + 1 < m:
                            ox[t] = ox[t + 1]
                            oy[t] = oy[t + 1]
                        m -= 1
                    if is_apex:
                        continue
                    break
            break
        if is_apex:
            stack[sp] = m - 1
            sp += 1
    return m


cdef Py_ssize_t decompose_c(i64* x, i64* y, Py_ssize_t m, Py_ssize_t* bs, Py_ssize_t* be,
                            int* kind) noexcept nogil:
    # kind 1 = upper hull, 0 = lower hull; two-point blocks count as upper
    cdef Py_ssize_t nb = 0, i, s
    cdef int prev_t, cur_t
    if m == 1:
        bs[0] = 0
        be[0] = 0
        kind[0] = 1
        return 1
    prev_t = 1
    bs[0] = 0
    nb = 1
    for i in range(1, m - 1):
        cur_t = 1 if side(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]) > 0 else 0
        if cur_t != prev_t:
            bs[nb] = i
            nb += 1
        prev_t = cur_t
    for i in range(nb):
        be[i] = bs[i + 1] if i + 1 < nb else m - 1
        s = bs[i]
        if be[i] - s == 1:
            kind[i] = 1
        else:
            kind[i] = 1 if side(x[s], y[s], x[s + 1], y[s + 1], x[s + 2], y[s + 2]) > 0 else 0
    return nb


cdef void sample_ceil(i64* x, i64* y, Py_ssize_t s, Py_ssize_t e, i64* out) noexcept nogil:
    cdef Py_ssize_t i, k = 1
    cdef i64 dx, dy, t
    out[0] = x[s]
    for i in range(s, e):
        dy = y[i + 1] - y[i]
        if dy == 0:
            continue
        dx = x[i + 1] - x[i]
        for t in range(1, dy + 1):
            out[k] = x[i] + ceil_div(t * dx, dy)
            k += 1


cdef i64 gcd_c(i64 a, i64 b) noexcept nogil:
    while b:
        a, b = b, a % b
    return a


cdef i64 lcm_heights(i64* y, Py_ssize_t s, Py_ssize_t e, i64 limit) noexcept nogil:
    # lcm of positive segment heights, or -1 once it exceeds limit
    cdef i64 D = 1, dy, g
    cdef Py_ssize_t i
    for i in range(s, e):
        dy = y[i + 1] - y[i]
        if dy == 0:
            continue
        g = gcd_c(D, dy)
        if D // g > limit // dy:
            return -1
        D = D // g * dy
    return D


cdef void sample_scaled(i64* x, i64* y, Py_ssize_t s, Py_ssize_t e, i64 D, i64* out) noexcept nogil:
    cdef Py_ssize_t i, k = 1
    cdef i64 dy, step, base, t
    out[0] = x[s] * D
    for i in range(s, e):
        dy = y[i + 1] - y[i]
        if dy == 0:
            continue
        step = (x[i + 1] - x[i]) * (D // dy)
        base = x[i] * D
        for t in range(1, dy + 1):
            out[k] = base + t * step
            k += 1


cdef void fold_upper(i64* xa, i64* ya, Py_ssize_t sa, Py_ssize_t ea,
                     i64* xb, i64* yb, Py_ssize_t sb, Py_ssize_t eb,
                     i64* best, i64 lo) noexcept nogil:
    # Minkowski sum of two upper hulls, sampled at every integer level
    cdef Py_ssize_t i = sa, j = sb
    cdef i64 cx = xa[sa] + xb[sb], cy = ya[sa] + yb[sb], dx, dy, t, v
    if cx < best[cy - lo]:
        best[cy - lo] = cx
    while i < ea or j < eb:
        if j == eb:
            dx = xa[i + 1] - xa[i]
            dy = ya[i + 1] - ya[i]
            i += 1
        elif i == ea:
            dx = xb[j + 1] - xb[j]
            dy = yb[j + 1] - yb[j]
            j += 1
        elif (xa[i + 1] - xa[i]) * (yb[j + 1] - yb[j]) - (ya[i + 1] - ya[i]) * (xb[j + 1] - xb[j]) > 0:
            dx = xb[j + 1] - xb[j]
            dy = yb[j + 1] - yb[j]
            j += 1
        else:
            dx = xa[i + 1] - xa[i]
            dy = ya[i + 1] - ya[i]
            i += 1
        if dy > 0:
            for t in range(1, dy + 1):
                v = cx + ceil_div(t * dx, dy)
                if v < best[cy + t - lo]:
                    best[cy + t - lo] = v
        cx += dx
        cy += dy


def level_merge(ax, ay, bx, by, sigma, delta):
    """Reduce both staircases, combine them sigma-accurately, round values up to 2*sigma."""
    cdef i64 sig = sigma, dlt = delta
    maxx = int(ax[len(ax) - 1]) + int(bx[len(bx) - 1])
    maxy = int(ay[len(ay) - 1]) + int(by[len(by) - 1])
    if maxx * (maxy + 1) >= SAFE or maxx >= SAFE or maxy >= SAFE:
        return _pure.level_merge(ax, ay, bx, by, sigma, delta)
    cdef i64[::1] fax = np.asarray(ax, dtype=np.int64)
    cdef i64[::1] fay = np.asarray(ay, dtype=np.int64)
    cdef i64[::1] fbx = np.asarray(bx, dtype=np.int64)
    cdef i64[::1] fby = np.asarray(by, dtype=np.int64)
    cdef Py_ssize_t ka = fax.shape[0], kb = fbx.shape[0]
    cdef Py_ssize_t na = 2 * ka - 1, nb = 2 * kb - 1, nmax = na if na > nb else nb
    cdef i64[::1] tx = np.empty(nmax, dtype=np.int64)
    cdef i64[::1] ty = np.empty(nmax, dtype=np.int64)
    cdef Py_ssize_t[::1] stk = np.empty(nmax, dtype=np.intp)
    cdef i64[::1] pax = np.empty(na, dtype=np.int64)
    cdef i64[::1] pay = np.empty(na, dtype=np.int64)
    cdef i64[::1] pbx = np.empty(nb, dtype=np.int64)
    cdef i64[::1] pby = np.empty(nb, dtype=np.int64)
    cdef Py_ssize_t ma, mb, i, j
    with nogil:
        ma = contour_reduce(&fax[0], &fay[0], ka, dlt, &tx[0], &ty[0], &pax[0], &pay[0], &stk[0])
        mb = contour_reduce(&fbx[0], &fby[0], kb, dlt, &tx[0], &ty[0], &pbx[0], &pby[0], &stk[0])
        for i in range(ma):
            pay[i] = pay[i] // sig
        for i in range(mb):
            pby[i] = pby[i] // sig
    result = _combine_sampled(pax, pay, ma, pbx, pby, mb, maxx)
    if result is None:
        return _pure.level_merge(ax, ay, bx, by, sigma, delta)
    lo, best = result
    cdef i64[::1] bv = best
    cdef Py_ssize_t L = bv.shape[0], m = 0
    cdef i64[::1] rx = np.empty(L, dtype=np.int64)
    cdef i64[::1] ry = np.empty(L, dtype=np.int64)
    cdef i64 lvl, yv, base = lo
    with nogil:
        for i in range(L):
            lvl = base + i
            yv = (lvl + (lvl & 1)) * sig
            if m > 0 and rx[m - 1] == bv[i]:
                ry[m - 1] = yv
            elif m > 0 and ry[m - 1] == yv:
                continue
            else:
                rx[m] = bv[i]
                ry[m] = yv
                m += 1
    return [int(v) for v in rx[:m]], [int(v) for v in ry[:m]]


def combine_sampled(xa, ya, xb, yb):
    """Per-level least x of R(Pa) + R(Pb) for point sets with integer levels.

    Returns ``(first_level, list)`` or None when the compiled path would overflow.
    """
    cdef i64[::1] a_x = np.asarray(xa, dtype=np.int64)
    cdef i64[::1] a_y = np.asarray(ya, dtype=np.int64)
    cdef i64[::1] b_x = np.asarray(xb, dtype=np.int64)
    cdef i64[::1] b_y = np.asarray(yb, dtype=np.int64)
    maxx = int(xa[len(xa) - 1]) + int(xb[len(xb) - 1])
    if maxx * (int(ya[len(ya) - 1]) + int(yb[len(yb) - 1]) + 1) >= SAFE:
        return None
    res = _combine_sampled(a_x, a_y, len(xa), b_x, b_y, len(xb), maxx)
    if res is None:
        return None
    return res[0], [int(v) for v in res[1]]


# vertex pairs sampled per chain point when tightening the frontier bound
cdef Py_ssize_t BOUND_WORK = 256

cdef struct PairCtx:
    i64* ax
    i64* ay
    i64* bx
    i64* by
    Py_ssize_t* bsa
    Py_ssize_t* bea
    Py_ssize_t* bsb
    Py_ssize_t* beb
    int* ka
    int* kb
    i64* Da
    i64* Db
    i64* ca
    i64* cb
    i64* sa
    i64* sb
    i64* offa
    i64* offb
    i64* gam
    i64* eta
    i64* cs
    i64* qs
    i64* st_c
    Py_ssize_t* st_t
    i64* best
    i64 lo


cdef void pair_work(PairCtx* c, Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    cdef Py_ssize_t X, Y, t
    cdef i64 D, off, v
    cdef i64* phi
    cdef i64* other
    if c.ka[i] == 1 and c.kb[j] == 1:
        fold_upper(c.ax, c.ay, c.bsa[i], c.bea[i], c.bx, c.by, c.bsb[j], c.beb[j], c.best, c.lo)
        return
    if c.ka[i] == 0:
        D = c.Da[i]
        phi = &c.sa[c.offa[i]]
        X = c.offa[i + 1] - c.offa[i]
        other = &c.cb[c.offb[j]]
        Y = c.offb[j + 1] - c.offb[j]
    else:
        D = c.Db[j]
        phi = &c.sb[c.offb[j]]
        X = c.offb[j + 1] - c.offb[j]
        other = &c.ca[c.offa[i]]
        Y = c.offa[i + 1] - c.offa[i]
    for t in range(Y):
        c.gam[t] = other[t] * D
    lower_conv_c(phi, X, c.gam, Y, c.eta, c.cs, c.qs, c.st_c, c.st_t)
    off = c.ay[c.bsa[i]] + c.by[c.bsb[j]] - c.lo
    for t in range(X + Y - 1):
        v = ceil_div(c.eta[t], D)
        if v < c.best[off + t]:
            c.best[off + t] = v


cdef object _combine_sampled(i64[::1] ax, i64[::1] ay, Py_ssize_t ma,
                             i64[::1] bx, i64[::1] by, Py_ssize_t mb, object maxx):
    cdef Py_ssize_t[::1] bsa = np.empty(ma + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] bea = np.empty(ma + 1, dtype=np.intp)
    cdef int[::1] ka = np.empty(ma + 1, dtype=np.intc)
    cdef Py_ssize_t[::1] bsb = np.empty(mb + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] beb = np.empty(mb + 1, dtype=np.intp)
    cdef int[::1] kb = np.empty(mb + 1, dtype=np.intc)
    cdef Py_ssize_t nba, nbb, i, j, t
    cdef i64 limit = (<i64> 2305843009213693952) // (<i64> maxx + 1)
    with nogil:
        nba = decompose_c(&ax[0], &ay[0], ma, &bsa[0], &bea[0], &ka[0])
        nbb = decompose_c(&bx[0], &by[0], mb, &bsb[0], &beb[0], &kb[0])

    # per-block samples: ceil frontier for every block, exact scaled frontier for lower hulls
    cdef i64[::1] offa = np.empty(nba + 1, dtype=np.int64)
    cdef i64[::1] offb = np.empty(nbb + 1, dtype=np.int64)
    cdef i64 tot = 0, maxh = 1
    for i in range(nba):
        offa[i] = tot
        tot += ay[bea[i]] - ay[bsa[i]] + 1
        maxh = max(maxh, ay[bea[i]] - ay[bsa[i]] + 1)
    offa[nba] = tot
    cdef i64[::1] ca = np.empty(tot, dtype=np.int64)
    cdef i64[::1] sa = np.empty(tot, dtype=np.int64)
    tot = 0
    for i in range(nbb):
        offb[i] = tot
        tot += by[beb[i]] - by[bsb[i]] + 1
        maxh = max(maxh, by[beb[i]] - by[bsb[i]] + 1)
    offb[nbb] = tot
    cdef i64[::1] cb = np.empty(tot, dtype=np.int64)
    cdef i64[::1] sb = np.empty(tot, dtype=np.int64)
    cdef i64[::1] Da = np.ones(nba, dtype=np.int64)
    cdef i64[::1] Db = np.ones(nbb, dtype=np.int64)
    cdef int failed = 0
    with nogil:
        for i in range(nba):
            sample_ceil(&ax[0], &ay[0], bsa[i], bea[i], &ca[offa[i]])
            if ka[i] == 0:
                Da[i] = lcm_heights(&ay[0], bsa[i], bea[i], limit)
                if Da[i] < 0:
                    failed = 1
                    break
                sample_scaled(&ax[0], &ay[0], bsa[i], bea[i], Da[i], &sa[offa[i]])
        if not failed:
            for i in range(nbb):
                sample_ceil(&bx[0], &by[0], bsb[i], beb[i], &cb[offb[i]])
                if kb[i] == 0:
                    Db[i] = lcm_heights(&by[0], bsb[i], beb[i], limit)
                    if Db[i] < 0:
                        failed = 1
                        break
                    sample_scaled(&bx[0], &by[0], bsb[i], beb[i], Db[i], &sb[offb[i]])
    if failed:
        return None

    cdef i64 lo = ay[0] + by[0]
    cdef Py_ssize_t L = ay[ma - 1] + by[mb - 1] - lo + 1
    best_arr = np.full(L, INF, dtype=np.int64)
    cdef i64[::1] best = best_arr
    cdef i64[::1] bound = np.empty(L, dtype=np.int64)
    cdef i64[::1] gam = np.empty(maxh, dtype=np.int64)
    cdef i64[::1] eta = np.empty(2 * maxh, dtype=np.int64)
    cdef i64[::1] cs = np.empty(maxh + 1, dtype=np.int64)
    cdef i64[::1] qs = np.empty(maxh + 1, dtype=np.int64)
    cdef i64[::1] st_c = np.empty(maxh + 1, dtype=np.int64)
    cdef Py_ssize_t[::1] st_t = np.empty(maxh + 1, dtype=np.intp)
    # block index ranges touched by a point (boundary points sit in two blocks)
    cdef Py_ssize_t[::1] a_first = np.empty(ma, dtype=np.intp)
    cdef Py_ssize_t[::1] a_last = np.empty(ma, dtype=np.intp)
    cdef Py_ssize_t[::1] b_first = np.empty(mb, dtype=np.intp)
    cdef Py_ssize_t[::1] b_last = np.empty(mb, dtype=np.intp)
    cdef Py_ssize_t[::1] band_lo = np.empty(nba, dtype=np.intp)
    cdef Py_ssize_t[::1] band_hi = np.empty(nba, dtype=np.intp)
    cdef PairCtx ctx
    cdef Py_ssize_t pi, pj, w = 2, jl, jh, stride, sp, l, r, mid
    cdef Py_ssize_t st_l[160]
    cdef Py_ssize_t st_r[160]

    ctx.ax = &ax[0]; ctx.ay = &ay[0]; ctx.bx = &bx[0]; ctx.by = &by[0]
    ctx.bsa = &bsa[0]; ctx.bea = &bea[0]; ctx.bsb = &bsb[0]; ctx.beb = &beb[0]
    ctx.ka = &ka[0]; ctx.kb = &kb[0]; ctx.Da = &Da[0]; ctx.Db = &Db[0]
    ctx.ca = &ca[0]; ctx.cb = &cb[0]; ctx.sa = &sa[0]; ctx.sb = &sb[0]
    ctx.offa = &offa[0]; ctx.offb = &offb[0]
    ctx.gam = &gam[0]; ctx.eta = &eta[0]; ctx.cs = &cs[0]; ctx.qs = &qs[0]
    ctx.st_c = &st_c[0]; ctx.st_t = &st_t[0]; ctx.best = &best[0]; ctx.lo = lo
    with nogil:
        for i in range(nba - 1, -1, -1):
            for t in range(bsa[i], bea[i] + 1):
                a_first[t] = i
        for i in range(nba):
            for t in range(bsa[i], bea[i] + 1):
                a_last[t] = i
            band_lo[i] = nbb
            band_hi[i] = -1
        for j in range(nbb - 1, -1, -1):
            for t in range(bsb[j], beb[j] + 1):
                b_first[t] = j
        for j in range(nbb):
            for t in range(bsb[j], beb[j] + 1):
                b_last[t] = j
        # the merge path of the two full chains is a feasible frontier and
        # tells which block pairs line up
        fold_upper(&ax[0], &ay[0], 0, ma - 1, &bx[0], &by[0], 0, mb - 1, &best[0], lo)
        pi = 0
        pj = 0
        while True:
            for i in range(a_first[pi], a_last[pi] + 1):
                if b_first[pj] < band_lo[i]:
                    band_lo[i] = b_first[pj]
                if b_last[pj] > band_hi[i]:
                    band_hi[i] = b_last[pj]
            if pi == ma - 1 and pj == mb - 1:
                break
            if pj == mb - 1 or (pi < ma - 1 and (ax[pi + 1] - ax[pi]) * (by[pj + 1] - by[pj])
                                 - (ay[pi + 1] - ay[pi]) * (bx[pj + 1] - bx[pj]) <= 0):
                pi += 1
            else:
                pj += 1
        # every sum of two vertices is feasible; this tightens the frontier
        # enough that the corner test below discards almost every block pair
        stride = 1
        while (ma // stride) * (mb // stride) > BOUND_WORK * (ma + mb):
            stride += 1
        pi = 0
        while pi < ma:
            pj = 0
            while pj < mb:
                t = ay[pi] + by[pj] - lo
                if ax[pi] + bx[pj] < best[t]:
                    best[t] = ax[pi] + bx[pj]
                pj += stride
            pi += stride
        for t in range(L - 2, -1, -1):
            if best[t] > best[t + 1]:
                best[t] = best[t + 1]
        for i in range(nba):
            band_lo[i] = band_lo[i] - w if band_lo[i] >= w else 0
            band_hi[i] = band_hi[i] + w if band_hi[i] + w < nbb else nbb - 1
            for j in range(band_lo[i], band_hi[i] + 1):
                pair_work(&ctx, i, j)
        bound[L - 1] = best[L - 1]
        for t in range(L - 2, -1, -1):
            bound[t] = best[t] if best[t] < bound[t + 1] else bound[t + 1]
        # a range of B blocks starts no further left than its first block and
        # reaches no higher than its last, so one test can discard the range
        for i in range(nba):
            jl = band_lo[i]
            jh = band_hi[i]
            sp = 0
            st_l[0] = 0
            st_r[0] = nbb - 1
            sp = 1
            while sp > 0:
                sp -= 1
                l = st_l[sp]
                r = st_r[sp]
                if ax[bsa[i]] + bx[bsb[l]] >= bound[ay[bea[i]] + by[beb[r]] - lo]:
                    continue
                if l == r:
                    if l < jl or l > jh:
                        pair_work(&ctx, i, l)
                    continue
                mid = (l + r) // 2
                st_l[sp] = mid + 1
                st_r[sp] = r
                st_l[sp + 1] = l
                st_r[sp + 1] = mid
                sp += 2
    return lo, best_arr
