# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Svetlichny search kernel.

Line-for-line mirror of ``_svetlichny_py`` (see that module for the
algorithm description).  Both backends must perform the same floating
point operations in the same order; keep them in sync and build with
-ffp-contract=off so the compiler does not fuse multiply-adds.
"""

from libc.math cimport cos, sin

import numpy as np

DEF DIM = 12
DEF NPTS = 13  # DIM + 1 simplex vertices
cdef double STEP = 0.3


cdef double _objective(const double* m, const double* x) noexcept nogil:
    cdef double st
    cdef double a1, a2, a3, d1, d2, d3, b1, b2, b3, e1, e2, e3, c1, c2, c3, g1, g2, g3
    st = sin(x[0])
    a1 = st * cos(x[1]); a2 = st * sin(x[1]); a3 = cos(x[0])
    st = sin(x[2])
    d1 = st * cos(x[3]); d2 = st * sin(x[3]); d3 = cos(x[2])
    st = sin(x[4])
    b1 = st * cos(x[5]); b2 = st * sin(x[5]); b3 = cos(x[4])
    st = sin(x[6])
    e1 = st * cos(x[7]); e2 = st * sin(x[7]); e3 = cos(x[6])
    st = sin(x[8])
    c1 = st * cos(x[9]); c2 = st * sin(x[9]); c3 = cos(x[8])
    st = sin(x[10])
    g1 = st * cos(x[11]); g2 = st * sin(x[11]); g3 = cos(x[10])

    cdef double a[3]
    cdef double ap[3]
    cdef double b[3]
    cdef double bp[3]
    cdef double c[3]
    cdef double cp[3]
    a[0] = a1; a[1] = a2; a[2] = a3
    ap[0] = d1; ap[1] = d2; ap[2] = d3
    b[0] = b1; b[1] = b2; b[2] = b3
    bp[0] = e1; bp[1] = e2; bp[2] = e3
    c[0] = c1; c[1] = c2; c[2] = c3
    cp[0] = g1; cp[1] = g2; cp[2] = g3

    cdef double total = 0.0
    cdef double pi, qi, bj, ej, mv
    cdef int i, j, k, base, row
    for i in range(3):
        pi = 0.0
        qi = 0.0
        base = 9 * i
        for j in range(3):
            bj = b[j]; ej = bp[j]
            row = base + 3 * j
            for k in range(3):
                mv = m[row + k]
                pi += mv * (bj * cp[k] + ej * c[k])
                qi += mv * (bj * c[k] - ej * cp[k])
        total += (a[i] + ap[i]) * pi + (a[i] - ap[i]) * qi
    return total


cdef double _nelder_mead(const double* m, const double* x0, double ftol,
                         int max_iter, double* out_x) noexcept nogil:
    cdef double sim[NPTS][DIM]
    cdef double fv[NPTS]
    cdef double cen[DIM]
    cdef double xr[DIM]
    cdef double xe[DIM]
    cdef double xc[DIM]
    cdef double fr, fe, fc
    cdef int n = DIM
    cdef int i, j, it, ib, iw, isec
    cdef bint accept

    for j in range(n):
        sim[0][j] = x0[j]
    for i in range(n):
        for j in range(n):
            sim[i + 1][j] = x0[j]
        sim[i + 1][i] += STEP
    for i in range(n + 1):
        fv[i] = -_objective(m, sim[i])

    for it in range(max_iter):
        ib = 0
        iw = 0
        for i in range(1, n + 1):
            if fv[i] < fv[ib]:
                ib = i
            if fv[i] > fv[iw]:
                iw = i
        isec = ib
        for i in range(n + 1):
            if i != iw and fv[i] > fv[isec]:
                isec = i
        if fv[iw] - fv[ib] <= ftol:
            break

        for j in range(n):
            cen[j] = 0.0
        for i in range(n + 1):
            if i == iw:
                continue
            for j in range(n):
                cen[j] += sim[i][j]
        for j in range(n):
            cen[j] /= n

        for j in range(n):
            xr[j] = cen[j] + (cen[j] - sim[iw][j])
        fr = -_objective(m, xr)
        if fr < fv[ib]:
            for j in range(n):
                xe[j] = cen[j] + 2.0 * (cen[j] - sim[iw][j])
            fe = -_objective(m, xe)
            if fe < fr:
                for j in range(n):
                    sim[iw][j] = xe[j]
                fv[iw] = fe
            else:
                for j in range(n):
                    sim[iw][j] = xr[j]
                fv[iw] = fr
        elif fr < fv[isec]:
            for j in range(n):
                sim[iw][j] = xr[j]
            fv[iw] = fr
        else:
            if fr < fv[iw]:
                for j in range(n):
                    xc[j] = cen[j] + 0.5 * (xr[j] - cen[j])
                fc = -_objective(m, xc)
                accept = fc <= fr
            else:
                for j in range(n):
                    xc[j] = cen[j] + 0.5 * (sim[iw][j] - cen[j])
                fc = -_objective(m, xc)
                accept = fc < fv[iw]
            if accept:
                for j in range(n):
                    sim[iw][j] = xc[j]
                fv[iw] = fc
            else:
                for i in range(n + 1):
                    if i == ib:
                        continue
                    for j in range(n):
                        sim[i][j] = sim[ib][j] + 0.5 * (sim[i][j] - sim[ib][j])
                    fv[i] = -_objective(m, sim[i])

    ib = 0
    for i in range(1, n + 1):
        if fv[i] < fv[ib]:
            ib = i
    for j in range(n):
        out_x[j] = sim[ib][j]
    return -fv[ib]


def multistart_maximize(m_flat, starts, double ftol, int max_iter):
    """Best contraction value over all start points; see the Python twin."""
    cdef double[::1] m = np.ascontiguousarray(m_flat, dtype=np.float64)
    cdef double[:, ::1] st = np.ascontiguousarray(starts, dtype=np.float64)
    if m.shape[0] != 27:
        raise ValueError("correlation tensor must flatten to 27 entries")
    if st.shape[1] != DIM:
        raise ValueError("each start needs 12 angles")

    cdef double best = -np.inf
    cdef double val
    cdef double x[DIM]
    cdef double best_x[DIM]
    cdef int s, j
    cdef int nstarts = st.shape[0]
    for j in range(DIM):
        best_x[j] = 0.0
    with nogil:
        for s in range(nstarts):
            val = _nelder_mead(&m[0], &st[s, 0], ftol, max_iter, x)
            if val > best:
                best = val
                for j in range(DIM):
                    best_x[j] = x[j]
    return float(best), [best_x[j] for j in range(DIM)]
