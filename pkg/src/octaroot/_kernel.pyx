# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled basin kernel.

Mirrors the hardware-precision path of :mod:`octaroot.methods` operation by
operation: complex products, sums and quotients follow CPython's own
``complex`` arithmetic (integer constants are promoted to ``(k, 0.0)``, the
quotient is CPython's scaled division), so both backends agree bit for bit.
Build with ``-ffp-contract=off`` and without fast-math.
"""

from cython.parallel cimport prange
from libc.math cimport NAN, hypot, isfinite

import numpy as np

cdef struct cpx:
    double re
    double im

# step outcomes
cdef enum:
    OK = 0
    EXACT = 1
    BREAK = -1

# method codes, shared with basins.METHOD_CODES
cdef enum:
    M_NEWTON = 0
    M_KT4 = 1
    M_KT8 = 2
    M_FAMILY = 3
    M_CHUN_LEE = 4
    M_NETA = 5
    M_SHARMA = 6
    M_BCST = 7


cdef inline cpx mk(double re, double im) noexcept nogil:
    cdef cpx r
    r.re = re
    r.im = im
    return r


cdef inline cpx K(double k) noexcept nogil:
    return mk(k, 0.0)


cdef inline cpx add(cpx a, cpx b) noexcept nogil:
    return mk(a.re + b.re, a.im + b.im)


cdef inline cpx sub(cpx a, cpx b) noexcept nogil:
    return mk(a.re - b.re, a.im - b.im)


cdef inline cpx mul(cpx a, cpx b) noexcept nogil:
    return mk(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


cdef inline cpx neg(cpx a) noexcept nogil:
    return mk(-a.re, -a.im)


cdef inline bint finite(cpx a) noexcept nogil:
    return isfinite(a.re) and isfinite(a.im)


cdef inline bint is_zero(cpx a) noexcept nogil:
    return a.re == 0.0 and a.im == 0.0


cdef inline double cabs_(cpx a) noexcept nogil:
    return hypot(a.re, a.im)


cdef inline int quot(cpx a, cpx b, cpx* r) noexcept nogil:
    # CPython's _Py_c_quot; a zero divisor is the only failure
    cdef double abs_br = -b.re if b.re < 0 else b.re
    cdef double abs_bi = -b.im if b.im < 0 else b.im
    cdef double ratio, denom
    if abs_br >= abs_bi:
        if abs_br == 0.0:
            return BREAK
        ratio = b.im / b.re
        denom = b.re + b.im * ratio
        r.re = (a.re + a.im * ratio) / denom
        r.im = (a.im - a.re * ratio) / denom
    elif abs_bi >= abs_br:
        ratio = b.re / b.im
        denom = b.re * ratio + b.im
        r.re = (a.re * ratio + a.im) / denom
        r.im = (a.im * ratio - a.re) / denom
    else:
        r.re = NAN
        r.im = NAN
    return OK


# --------------------------------------------------------------------------
# polynomial


cdef struct Poly:
    const double* cs  # interleaved re, im; highest degree first
    int n             # number of coefficients


cdef inline cpx coef(Poly* p, int k) noexcept nogil:
    return mk(p.cs[2 * k], p.cs[2 * k + 1])


cdef inline cpx pval(Poly* p, cpx z) noexcept nogil:
    cdef cpx v = coef(p, 0)
    cdef int k
    for k in range(1, p.n):
        v = add(mul(v, z), coef(p, k))
    return v


cdef inline void pval2(Poly* p, cpx z, cpx* v, cpx* dv) noexcept nogil:
    cdef cpx pp = coef(p, 0)
    cdef cpx dp = mul(pp, K(0.0))
    cdef int k
    for k in range(1, p.n):
        dp = add(mul(dp, z), pp)
        pp = add(mul(pp, z), coef(p, k))
    v[0] = pp
    dv[0] = dp


# --------------------------------------------------------------------------
# steps; every helper returns OK, EXACT (out holds the exact root) or BREAK


cdef inline int f_at(Poly* p, cpx x, cpx* fx, cpx* out) noexcept nogil:
    fx[0] = pval(p, x)
    if not finite(fx[0]):
        return BREAK
    if is_zero(fx[0]):
        out[0] = x
        return EXACT
    return OK


cdef inline int start(Poly* p, cpx x, cpx* fx, cpx* dfx, cpx* out) noexcept nogil:
    pval2(p, x, fx, dfx)
    if not finite(fx[0]) or not finite(dfx[0]):
        return BREAK
    if is_zero(fx[0]):
        out[0] = x
        return EXACT
    return OK


cdef inline int guard(cpx v) noexcept nogil:
    return OK if finite(v) else BREAK


cdef int kt_y_z(Poly* p, cpx x, cpx* fx, cpx* dfx, cpx* y, cpx* fy, cpx* z,
                cpx* out) noexcept nogil:
    cdef int st
    cdef cpx w, d, q
    st = start(p, x, fx, dfx, out)
    if st != OK:
        return st
    if quot(fx[0], dfx[0], &w) != OK:
        return BREAK
    y[0] = sub(x, w)
    if guard(y[0]) != OK:
        return BREAK
    st = f_at(p, y[0], fy, out)
    if st != OK:
        return st
    d = sub(fx[0], fy[0])
    if quot(mul(fx[0], fy[0]), mul(d, d), &q) != OK:
        return BREAK
    z[0] = sub(y[0], mul(q, w))
    return guard(z[0])


cdef int weight_J(cpx t, cpx u, cpx a, cpx b, cpx* r) noexcept nogil:
    cdef cpx tt = mul(t, t)
    cdef cpx num = add(
        add(add(add(K(1.0), mul(a, t)), mul(add(K(2.0), b), u)),
            mul(add(mul(K(2.0), a), K(1.0)), tt)),
        mul(mul(K(4.0), a), mul(tt, t)))
    cdef cpx den = add(add(add(K(1.0), mul(sub(a, K(2.0)), t)), mul(b, u)), tt)
    return quot(num, den, r)


cdef int weight_G(cpx s, cpx c, cpx* r) noexcept nogil:
    return quot(add(K(1.0), mul(c, s)), add(K(1.0), mul(sub(c, K(1.0)), s)), r)


cdef int step_newton(Poly* p, cpx x, cpx* out) noexcept nogil:
    cdef cpx fx, dfx, q
    cdef int st = start(p, x, &fx, &dfx, out)
    if st != OK:
        return st
    if quot(fx, dfx, &q) != OK:
        return BREAK
    out[0] = sub(x, q)
    return guard(out[0])


cdef int step_kt4(Poly* p, cpx x, cpx* out) noexcept nogil:
    cdef cpx fx, dfx, y, fy, z
    cdef int st = kt_y_z(p, x, &fx, &dfx, &y, &fy, &z, out)
    if st != OK:
        return st
    out[0] = z
    return OK


cdef int step_kt8(Poly* p, cpx x, cpx* out) noexcept nogil:
    cdef cpx fx, dfx, y, fy, z, fz, dfz, fz2, q
    cdef int st = kt_y_z(p, x, &fx, &dfx, &y, &fy, &z, out)
    if st != OK:
        return st
    st = f_at(p, z, &fz, out)
    if st != OK:
        return st
    pval2(p, z, &fz2, &dfz)
    if guard(dfz) != OK:
        return BREAK
    if quot(fz, dfz, &q) != OK:
        return BREAK
    out[0] = sub(z, q)
    return guard(out[0])


cdef int step_family(Poly* p, const cpx* prm, cpx x, cpx* out) noexcept nogil:
    cdef cpx fx, dfx, y, fy, z, fz, t, u, s, jw, gw, q
    cdef int st = kt_y_z(p, x, &fx, &dfx, &y, &fy, &z, out)
    if st != OK:
        return st
    st = f_at(p, z, &fz, out)
    if st != OK:
        return st
    if quot(fy, fx, &t) != OK or quot(fz, fx, &u) != OK or quot(fz, fy, &s) != OK:
        return BREAK
    if weight_J(t, u, prm[0], prm[1], &jw) != OK:
        return BREAK
    if weight_G(s, prm[2], &gw) != OK:
        return BREAK
    if quot(fz, dfx, &q) != OK:
        return BREAK
    out[0] = sub(z, mul(mul(q, jw), gw))
    return guard(out[0])


cdef int step_chun_lee(Poly* p, const cpx* prm, cpx x, cpx* out) noexcept nogil:
    cdef cpx beta = prm[0]
    cdef cpx gamma = prm[1]
    cdef cpx fx, dfx, y, fy, z, fz, q, q2, t, omt, s, u, h, jw, pw, w, tt, hs
    cdef int st = start(p, x, &fx, &dfx, out)
    if st != OK:
        return st
    if quot(fx, dfx, &q) != OK:
        return BREAK
    y = sub(x, q)
    if guard(y) != OK:
        return BREAK
    st = f_at(p, y, &fy, out)
    if st != OK:
        return st
    if quot(fy, fx, &t) != OK:
        return BREAK
    omt = sub(K(1.0), t)
    if quot(fy, dfx, &q) != OK or quot(K(1.0), mul(omt, omt), &q2) != OK:
        return BREAK
    z = sub(y, mul(q, q2))
    if guard(z) != OK:
        return BREAK
    st = f_at(p, z, &fz, out)
    if st != OK:
        return st
    if quot(fz, fx, &s) != OK or quot(fz, fy, &u) != OK:
        return BREAK
    tt = mul(t, t)
    quot(tt, K(2.0), &q)
    quot(mul(tt, t), K(2.0), &q2)
    h = sub(add(add(sub(neg(beta), gamma), t), q), q2)
    quot(s, K(2.0), &hs)
    jw = add(beta, hs)
    quot(u, K(2.0), &hs)
    pw = add(gamma, hs)
    w = sub(sub(sub(K(1.0), h), jw), pw)
    if quot(fz, dfx, &q) != OK or quot(K(1.0), mul(w, w), &q2) != OK:
        return BREAK
    out[0] = sub(z, mul(q, q2))
    return guard(out[0])


cdef int step_neta(Poly* p, const cpx* prm, cpx x, cpx* out) noexcept nogil:
    cdef cpx A = prm[0]
    cdef cpx fx, dfx, y, fy, z, fz, q, q2, Fy, Fz, inv_d, zy, zz, d1, d2, fx2
    cdef int st = start(p, x, &fx, &dfx, out)
    if st != OK:
        return st
    if quot(fx, dfx, &q) != OK:
        return BREAK
    y = sub(x, q)
    if guard(y) != OK:
        return BREAK
    st = f_at(p, y, &fy, out)
    if st != OK:
        return st
    if quot(add(fx, mul(A, fy)), add(fx, mul(sub(A, K(2.0)), fy)), &q) != OK:
        return BREAK
    if quot(fy, dfx, &q2) != OK:
        return BREAK
    z = sub(y, mul(q, q2))
    if guard(z) != OK:
        return BREAK
    st = f_at(p, z, &fz, out)
    if st != OK:
        return st
    Fy = sub(fy, fx)
    Fz = sub(fz, fx)
    if quot(K(1.0), dfx, &inv_d) != OK:
        return BREAK
    if quot(sub(y, x), Fy, &q) != OK or quot(sub(q, inv_d), Fy, &zy) != OK:
        return BREAK
    if quot(sub(z, x), Fz, &q) != OK or quot(sub(q, inv_d), Fz, &zz) != OK:
        return BREAK
    if quot(sub(zy, zz), sub(Fy, Fz), &q) != OK:
        return BREAK
    d2 = neg(q)
    d1 = add(zy, mul(d2, Fy))
    fx2 = mul(fx, fx)
    out[0] = add(add(y, mul(d1, fx2)), mul(d2, mul(fx2, fx)))
    return guard(out[0])


cdef inline int dd(cpx fa, cpx fb, cpx a, cpx b, cpx* r) noexcept nogil:
    return quot(sub(fa, fb), sub(a, b), r)


cdef int step_sharma(Poly* p, const cpx* prm, cpx x, cpx* out) noexcept nogil:
    cdef cpx alpha = prm[0]
    cdef cpx fx, dfx, y, fy, z, fz, q, q2, fxy, fxz, fyz, t, W
    cdef int st = start(p, x, &fx, &dfx, out)
    if st != OK:
        return st
    if quot(fx, dfx, &q) != OK:
        return BREAK
    y = sub(x, q)
    if guard(y) != OK:
        return BREAK
    st = f_at(p, y, &fy, out)
    if st != OK:
        return st
    if quot(fy, dfx, &q) != OK or quot(fx, sub(fx, mul(K(2.0), fy)), &q2) != OK:
        return BREAK
    z = sub(y, mul(q, q2))
    if guard(z) != OK:
        return BREAK
    st = f_at(p, z, &fz, out)
    if st != OK:
        return st
    if dd(fx, fy, x, y, &fxy) != OK or dd(fx, fz, x, z, &fxz) != OK or dd(fy, fz, y, z, &fyz) != OK:
        return BREAK
    if quot(fz, fx, &t) != OK:
        return BREAK
    if quot(t, add(K(1.0), mul(alpha, t)), &q) != OK:
        return BREAK
    W = add(K(1.0), q)
    if quot(mul(fxy, fz), mul(fxz, fyz), &q) != OK:
        return BREAK
    out[0] = sub(z, mul(q, W))
    return guard(out[0])


cdef int step_bcst(Poly* p, cpx x, cpx* out) noexcept nogil:
    cdef cpx fx, dfx, w, w2, w5, y, fy, t, omt, z, fz, s, u, t2, num, den, q, q2
    cdef int st = start(p, x, &fx, &dfx, out)
    if st != OK:
        return st
    if quot(fx, dfx, &w) != OK:
        return BREAK
    w2 = mul(w, w)
    w5 = mul(mul(w2, w2), w)
    y = sub(x, mul(w, add(K(1.0), w5)))
    if guard(y) != OK:
        return BREAK
    st = f_at(p, y, &fy, out)
    if st != OK:
        return st
    if quot(fy, fx, &t) != OK:
        return BREAK
    omt = sub(K(1.0), t)
    if quot(fy, dfx, &q) != OK or quot(K(1.0), mul(omt, omt), &q2) != OK:
        return BREAK
    z = sub(y, mul(q, q2))
    if guard(z) != OK:
        return BREAK
    st = f_at(p, z, &fz, out)
    if st != OK:
        return st
    if quot(fz, fy, &s) != OK or quot(fz, fx, &u) != OK:
        return BREAK
    t2 = mul(t, t)
    num = add(add(add(K(1.0), t2), mul(K(5.0), mul(t2, t2))), s)
    den = sub(sub(K(1.0), t), u)
    if quot(fz, dfx, &q) != OK or quot(num, mul(den, den), &q2) != OK:
        return BREAK
    out[0] = sub(z, mul(q, q2))
    return guard(out[0])


cdef inline int do_step(int mid, Poly* p, const cpx* prm, cpx x, cpx* out) noexcept nogil:
    cdef int st
    if mid == M_NEWTON:
        st = step_newton(p, x, out)
    elif mid == M_KT4:
        st = step_kt4(p, x, out)
    elif mid == M_KT8:
        st = step_kt8(p, x, out)
    elif mid == M_FAMILY:
        st = step_family(p, prm, x, out)
    elif mid == M_CHUN_LEE:
        st = step_chun_lee(p, prm, x, out)
    elif mid == M_NETA:
        st = step_neta(p, prm, x, out)
    elif mid == M_SHARMA:
        st = step_sharma(p, prm, x, out)
    else:
        st = step_bcst(p, x, out)
    return BREAK if st == BREAK else OK


# --------------------------------------------------------------------------
# pixels


cdef inline int nearest(cpx z, const cpx* roots, int nr, double tol) noexcept nogil:
    cdef int k, best = -1
    cdef double d, bd = 0.0
    for k in range(nr):
        d = cabs_(sub(z, roots[k]))
        if best < 0 or d < bd:
            best = k
            bd = d
    return best if bd < tol else -1


cdef inline void classify(int mid, Poly* p, const cpx* prm, const cpx* roots, int nr,
                          cpx z, int max_iters, double tol, double escape,
                          short* root_out, int* iters_out) noexcept nogil:
    cdef int n, k
    cdef cpx nz
    k = nearest(z, roots, nr, tol)
    if k >= 0:
        root_out[0] = k
        iters_out[0] = 0
        return
    for n in range(1, max_iters + 1):
        if do_step(mid, p, prm, z, &nz) != OK:
            root_out[0] = -1
            iters_out[0] = n
            return
        z = nz
        if not finite(z) or cabs_(z) > escape:
            root_out[0] = -1
            iters_out[0] = n
            return
        k = nearest(z, roots, nr, tol)
        if k >= 0:
            root_out[0] = k
            iters_out[0] = n
            return
    root_out[0] = -1
    iters_out[0] = max_iters


def render(int method_code, params, coeffs, roots, double x_min, double x_max,
           double y_min, double y_max, int width, int height, int max_iters,
           double tol, double escape=1e8, int threads=1, int row0=0, int rows=-1):
    """Classify every pixel of a grid (or of rows ``row0 .. row0+rows``).

    Returns ``(root_index int16[rows, width], iters int32[rows, width])``;
    ``-1`` marks a nonconvergent pixel.
    """
    if rows < 0:
        rows = height - row0
    cdef double[:, ::1] cs = np.ascontiguousarray(
        np.column_stack([np.real(coeffs), np.imag(coeffs)]), dtype=np.float64)
    cdef double[:, ::1] rs = np.ascontiguousarray(
        np.column_stack([np.real(roots), np.imag(roots)]).reshape(-1, 2), dtype=np.float64)
    prm_list = list(params) + [0j] * (4 - len(params))
    cdef double[:, ::1] pm = np.ascontiguousarray(
        np.column_stack([np.real(prm_list), np.imag(prm_list)]), dtype=np.float64)
    out_root = np.empty((rows, width), dtype=np.int16)
    out_iters = np.empty((rows, width), dtype=np.int32)
    cdef short[:, ::1] ro = out_root
    cdef int[:, ::1] it = out_iters
    cdef Poly poly
    poly.cs = &cs[0, 0]
    poly.n = cs.shape[0]
    cdef const cpx* prm = <const cpx*> &pm[0, 0]
    cdef const cpx* rts = <const cpx*> &rs[0, 0]
    cdef int nr = rs.shape[0]
    cdef double dx = (x_max - x_min) / width
    cdef double dy = (y_max - y_min) / height
    cdef int i, j
    cdef cpx z0
    if threads < 1:
        threads = 1
    for j in prange(rows, nogil=True, schedule="static", num_threads=threads):
        for i in range(width):
            z0 = mk(x_min + (i + 0.5) * dx, y_max - (row0 + j + 0.5) * dy)
            classify(method_code, &poly, prm, rts, nr, z0, max_iters, tol, escape,
                     &ro[j, i], &it[j, i])
    return out_root, out_iters


def quotient(a, b):
    """Scaled complex division as done by the kernel (test hook)."""
    cdef cpx r
    if quot(mk(a.real, a.imag), mk(b.real, b.imag), &r) != OK:
        raise ZeroDivisionError("complex division by zero")
    return complex(r.re, r.im)


def step(int method_code, params, coeffs, z):
    """One kernel step at ``z``; returns the new point or ``None`` on breakdown."""
    cdef double[:, ::1] cs = np.ascontiguousarray(
        np.column_stack([np.real(coeffs), np.imag(coeffs)]), dtype=np.float64)
    prm_list = list(params) + [0j] * (4 - len(params))
    cdef double[:, ::1] pm = np.ascontiguousarray(
        np.column_stack([np.real(prm_list), np.imag(prm_list)]), dtype=np.float64)
    cdef Poly poly
    poly.cs = &cs[0, 0]
    poly.n = cs.shape[0]
    cdef cpx out
    if do_step(method_code, &poly, <const cpx*> &pm[0, 0], mk(z.real, z.imag), &out) != OK:
        return None
    return complex(out.re, out.im)
