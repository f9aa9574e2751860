# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled series kernel.  Same contract as ``_pykernel``."""

from libc.math cimport exp, cos, sin, fabs, M_PI


cdef inline void _neumaier(double *s, double *c, double x) nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def theta_sum(double ep0, double e, double complex z, double complex tau, long n_max, int order):
    cdef double tr = tau.real, ti = tau.imag
    cdef double wr = z.real + e, wi = z.imag
    cdef double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0
    cdef double u, mag, ang, pr, pi_, tre, tim, a, b
    cdef long k, n, j
    cdef int side, sides
    with nogil:
        for k in range(n_max + 1):
            sides = 1 if k == 0 else 2
            for side in range(sides):
                n = k if side == 0 else -k
                u = n + ep0
                # exponent = pi i u^2 tau + 2 pi i u w
                mag = -M_PI * u * u * ti - 2.0 * M_PI * u * wi
                ang = M_PI * u * u * tr + 2.0 * M_PI * u * wr
                tre = exp(mag) * cos(ang)
                tim = exp(mag) * sin(ang)
                for j in range(order):
                    # multiply by 2 pi i u
                    a = -2.0 * M_PI * u * tim
                    b = 2.0 * M_PI * u * tre
                    tre = a
                    tim = b
                _neumaier(&sr, &cr, tre)
                _neumaier(&si, &ci, tim)
    return complex(sr + cr, si + ci)


def max_term(double ep0, double e, double complex z, double complex tau, long n_max):
    cdef double y = tau.imag, s = z.imag, best = 0.0, u, v
    cdef long n
    for n in range(-n_max, n_max + 1):
        u = n + ep0
        v = exp(-M_PI * y * u * u - 2.0 * M_PI * u * s)
        if v > best:
            best = v
    return best
