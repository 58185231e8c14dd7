"""Pure-Python twin of the compiled Svetlichny search kernel.

Given the 3x3x3 Pauli correlation tensor M of a 3-qubit state, the
expectation of the Bell-type operator built from unit vectors
a, a', b, b', c, c' is the multilinear contraction

    sum_ijk M[i,j,k] * [ (a+a')_i (b_j c'_k + b'_j c_k)
                         + (a-a')_i (b_j c_k - b'_j c'_k) ].

Each of the six vectors is parametrized by polar angles (theta, phi), so a
candidate setting is a point in R^12; the kernel refines many seeded start
points with Nelder-Mead and keeps the best value found.

This module must stay line-for-line equivalent to ``_svetlichny.pyx`` --
same arithmetic, same operation order -- so both backends return identical
floats and the benchmark can assert bitwise agreement.
"""

from math import cos, inf, sin

_DIM = 12
_STEP = 0.3  # initial simplex edge, radians


def _objective(m, x):
    """Contraction value at angles x (flat M of length 27, index 9i+3j+k)."""
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

    a = (a1, a2, a3); ap = (d1, d2, d3)
    b = (b1, b2, b3); bp = (e1, e2, e3)
    c = (c1, c2, c3); cp = (g1, g2, g3)

    total = 0.0
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


def _nelder_mead(m, x0, ftol, max_iter):
    """Maximize the contraction from one start; returns (value, angles)."""
    n = _DIM
    sim = [list(x0)]
    for i in range(n):
        pt = list(x0)
        pt[i] += _STEP
        sim.append(pt)
    fv = [-_objective(m, pt) for pt in sim]

    for _ in range(max_iter):
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

        cen = [0.0] * n
        for i in range(n + 1):
            if i == iw:
                continue
            pt = sim[i]
            for j in range(n):
                cen[j] += pt[j]
        for j in range(n):
            cen[j] /= n

        xr = [cen[j] + (cen[j] - sim[iw][j]) for j in range(n)]
        fr = -_objective(m, xr)
        if fr < fv[ib]:
            xe = [cen[j] + 2.0 * (cen[j] - sim[iw][j]) for j in range(n)]
            fe = -_objective(m, xe)
            if fe < fr:
                sim[iw] = xe
                fv[iw] = fe
            else:
                sim[iw] = xr
                fv[iw] = fr
        elif fr < fv[isec]:
            sim[iw] = xr
            fv[iw] = fr
        else:
            if fr < fv[iw]:
                xc = [cen[j] + 0.5 * (xr[j] - cen[j]) for j in range(n)]
                fc = -_objective(m, xc)
                accept = fc <= fr
            else:
                xc = [cen[j] + 0.5 * (sim[iw][j] - cen[j]) for j in range(n)]
                fc = -_objective(m, xc)
                accept = fc < fv[iw]
            if accept:
                sim[iw] = xc
                fv[iw] = fc
            else:
                best = sim[ib]
                for i in range(n + 1):
                    if i == ib:
                        continue
                    pt = sim[i]
                    for j in range(n):
                        pt[j] = best[j] + 0.5 * (pt[j] - best[j])
                    fv[i] = -_objective(m, pt)

    ib = 0
    for i in range(1, n + 1):
        if fv[i] < fv[ib]:
            ib = i
    return -fv[ib], sim[ib]


def multistart_maximize(m_flat, starts, ftol, max_iter):
    """Best contraction value over all start points.

    m_flat: length-27 sequence (flattened correlation tensor).
    starts: (n, 12) sequence of angle rows.
    Returns (best value, list of 12 best angles).
    """
    m = [float(v) for v in m_flat]
    best = -inf
    best_x = [0.0] * _DIM
    for row in starts:
        val, x = _nelder_mead(m, [float(v) for v in row], ftol, max_iter)
        if val > best:
            best = val
            best_x = list(x)
    return best, best_x
