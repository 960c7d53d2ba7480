# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-Python segment-pair kernel.

Identical scan, identical statuses, identical crossing tuples; all
intermediate arithmetic runs in 128-bit integers.  Callers must ensure
(via `kernels._fits_compiled`) that no intermediate can reach 127 bits
and that at most 256 corner points are supplied.
"""

cdef extern from *:
    ctypedef long long i128 "__int128"

DEF MAXV = 256

OK = 0
FAIL_DEGENERATE_SEGMENT = 1
FAIL_VERTEX_COINCIDE = 2
FAIL_VERTEX_ON_SEGMENT = 3
FAIL_INTERSECT_3D = 4
FALLBACK_OVERFLOW = 5


cdef object _py(i128 val):
    """Exact conversion of a 128-bit value to a Python int."""
    cdef bint neg = val < 0
    cdef unsigned long long lo, hi
    if neg:
        val = -val
    lo = <unsigned long long> (val & <i128> 0xFFFFFFFFFFFFFFFF)
    hi = <unsigned long long> (val >> 64)
    out = (int(hi) << 64) | int(lo)
    return -out if neg else out


def find_crossings(polys, u, v, d):
    cdef long long ux = u[0], uy = u[1], uz = u[2]
    cdef long long vx = v[0], vy = v[1], vz = v[2]
    cdef long long dx = d[0], dy = d[1], dz = d[2]
    cdef i128 px[MAXV]
    cdef i128 py[MAXV]
    cdef i128 ph[MAXV]
    cdef int nxt[MAXV]
    cdef int nv = 0
    cdef int ci, i, m, base, s, t, a, b, w, si, ti, sj, tj
    cdef long long x, y, z
    cdef i128 ax, ay, bx, by, cx, cy, ex, ey, rx, ry, dot
    cdef i128 e1x, e1y, e2x, e2y, c1, c2, c3, c4
    cdef i128 cr, tnum, snum, den, hi_, hj_
    cdef int i_over, sign

    if len(polys) > 2:
        raise ValueError("expected one or two closed curves")
    cdef int starts[2]
    cdef int lens[2]
    cdef int ncurves = len(polys)
    for ci in range(ncurves):
        poly = polys[ci]
        starts[ci] = nv
        lens[ci] = len(poly)
        if nv + lens[ci] > MAXV:
            return (FALLBACK_OVERFLOW, None)
        for p in poly:
            x = p[0]
            y = p[1]
            z = p[2]
            px[nv] = <i128> ux * x + <i128> uy * y + <i128> uz * z
            py[nv] = <i128> vx * x + <i128> vy * y + <i128> vz * z
            ph[nv] = <i128> dx * x + <i128> dy * y + <i128> dz * z
            nv += 1
    for ci in range(ncurves):
        base = starts[ci]
        m = lens[ci]
        for i in range(m):
            nxt[base + i] = base + (i + 1) % m

    for s in range(nv):
        t = nxt[s]
        if px[s] == px[t] and py[s] == py[t]:
            for ci in range(ncurves - 1, -1, -1):
                if s >= starts[ci]:
                    return (FAIL_DEGENERATE_SEGMENT, (ci, s))

    for a in range(nv):
        for b in range(a + 1, nv):
            if px[a] == px[b] and py[a] == py[b]:
                return (FAIL_VERTEX_COINCIDE, (a, b))

    for w in range(nv):
        for s in range(nv):
            t = nxt[s]
            if w == s or w == t:
                continue
            ax = px[s]
            ay = py[s]
            ex = px[t] - ax
            ey = py[t] - ay
            rx = px[w] - ax
            ry = py[w] - ay
            if ex * ry - ey * rx != 0:
                continue
            dot = ex * rx + ey * ry
            if 0 < dot and dot < ex * ex + ey * ey:
                return (FAIL_VERTEX_ON_SEGMENT, (w, s))

    crossings = []
    for si in range(nv):
        ti = nxt[si]
        ax = px[si]
        ay = py[si]
        e1x = px[ti] - ax
        e1y = py[ti] - ay
        for sj in range(si + 1, nv):
            tj = nxt[sj]
            if sj == ti or tj == si or tj == ti:
                continue
            cx = px[sj]
            cy = py[sj]
            e2x = px[tj] - cx
            e2y = py[tj] - cy
            c1 = e1x * (cy - ay) - e1y * (cx - ax)
            c2 = e1x * (py[tj] - ay) - e1y * (px[tj] - ax)
            if (c1 > 0) == (c2 > 0) or c1 == 0 or c2 == 0:
                continue
            c3 = e2x * (ay - cy) - e2y * (ax - cx)
            c4 = e2x * (py[ti] - cy) - e2y * (px[ti] - cx)
            if (c3 > 0) == (c4 > 0) or c3 == 0 or c4 == 0:
                continue
            cr = e1x * e2y - e1y * e2x
            tnum = (cx - ax) * e2y - (cy - ay) * e2x
            snum = (cx - ax) * e1y - (cy - ay) * e1x
            den = cr
            if den < 0:
                den = -den
                tnum = -tnum
                snum = -snum
            hi_ = ph[si] * den + tnum * (ph[ti] - ph[si])
            hj_ = ph[sj] * den + snum * (ph[tj] - ph[sj])
            if hi_ == hj_:
                return (FAIL_INTERSECT_3D, (si, sj))
            i_over = 1 if hi_ > hj_ else 0
            if i_over:
                sign = 1 if cr > 0 else -1
            else:
                sign = -1 if cr > 0 else 1
            crossings.append((si, sj, _py(tnum), _py(snum), _py(den), i_over, sign))
    return (OK, crossings)
