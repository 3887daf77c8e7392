# cython: language_level=3
"""Fused elementwise loops over flat contiguous float64 buffers.

Complex spectra are passed as interleaved float64 views with ``stride == 2``;
weights are indexed per complex element.
"""


def etd_coefficients(const double[::1] y, double tau,
                     double[::1] r13, double[::1] q13, double[::1] phi,
                     double[::1] phi1, double[::1] phi2, double[::1] phi3):
    cdef Py_ssize_t i, n = y.shape[0]
    cdef double yi, d1, d2
    with nogil:
        for i in range(n):
            yi = y[i]
            d1 = 24.0 + yi * (18.0 + yi * (6.0 + yi))
            d2 = 192.0 + yi * (72.0 + yi * (12.0 + yi))
            r13[i] = (24.0 - 6.0 * yi) / d1
            q13[i] = 24.0 * (8.0 - yi) / d2
            phi[i] = tau * (96.0 + yi * (12.0 + yi)) / d2
            phi1[i] = tau * (4.0 - yi) / d1
            phi2[i] = 2.0 * tau * (4.0 + yi) / d1
            phi3[i] = tau * (4.0 + yi * (3.0 + yi)) / d1


def combine2(const double[::1] c1, const double[::1] x1,
             const double[::1] c2, const double[::1] x2,
             double[::1] out, int stride):
    cdef Py_ssize_t i, j, n = c1.shape[0]
    cdef double a, b
    with nogil:
        if stride == 1:
            for i in range(n):
                out[i] = c1[i] * x1[i] + c2[i] * x2[i]
        else:
            for i in range(n):
                a = c1[i]
                b = c2[i]
                j = 2 * i
                out[j] = a * x1[j] + b * x2[j]
                out[j + 1] = a * x1[j + 1] + b * x2[j + 1]


def combine4(const double[::1] c0, const double[::1] x0,
             const double[::1] c1, const double[::1] x1,
             const double[::1] c2, const double[::1] x2,
             const double[::1] c3, const double[::1] x3,
             double[::1] out, int stride):
    cdef Py_ssize_t i, j, n = c0.shape[0]
    cdef double a, b, c, d
    with nogil:
        if stride == 1:
            for i in range(n):
                out[i] = c0[i] * x0[i] + c1[i] * x1[i] + c2[i] * x2[i] + c3[i] * x3[i]
        else:
            for i in range(n):
                a = c0[i]
                b = c1[i]
                c = c2[i]
                d = c3[i]
                j = 2 * i
                out[j] = a * x0[j] + b * x1[j] + c * x2[j] + d * x3[j]
                out[j + 1] = a * x0[j + 1] + b * x1[j + 1] + c * x2[j + 1] + d * x3[j + 1]


def gray_scott(const double[::1] u, const double[::1] v, double F, double K,
               double[::1] fu, double[::1] fv):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double uvv
    with nogil:
        for i in range(n):
            uvv = u[i] * v[i] * v[i]
            fu[i] = -uvv + F * (1.0 - u[i])
            fv[i] = uvv - (F + K) * v[i]


def schnakenberg(const double[::1] u, const double[::1] v, double gamma, double a, double b,
                 double[::1] fu, double[::1] fv):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double uuv
    with nogil:
        for i in range(n):
            uuv = u[i] * u[i] * v[i]
            fu[i] = gamma * (a - u[i] + uuv)
            fv[i] = gamma * (b - uuv)


def fitzhugh_nagumo(const double[::1] u, const double[::1] v, double mu, double eps,
                    double beta, double gamma, double delta,
                    double[::1] fu, double[::1] fv):
    cdef Py_ssize_t i, n = u.shape[0]
    with nogil:
        for i in range(n):
            fu[i] = u[i] * (1.0 - u[i]) * (u[i] - mu) - v[i]
            fv[i] = eps * (beta * u[i] - gamma * v[i] - delta)


def gierer_meinhardt(const double[::1] u, const double[::1] v, double eps, double mu,
                     double[::1] fu, double[::1] fv):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef Py_ssize_t bad = 0
    cdef double uu
    with nogil:
        for i in range(n):
            if not (v[i] > 0.0):
                bad += 1
            uu = u[i] * u[i]
            fu[i] = uu / v[i] - u[i]
            fv[i] = uu / (eps * mu) - v[i] / mu
    return bad
