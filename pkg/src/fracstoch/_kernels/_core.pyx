# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled sampling kernels: Kanter stable draws, weighted-sum
increments, and the fixed-resolution first-passage walk.

Mirrors ``pybackend``; selected at import when built.  Uniform and
exponential variates are filled in blocks through numpy's C interface,
so the hot loops run without per-draw indirection.  Draw order within a
batch differs from the vectorized fallback, so streams are reproducible
per backend."""

import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport pow, sin
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport (random_standard_exponential_fill,
                                           random_standard_uniform_fill)

from ..errors import HorizonExceeded

cnp.import_array()

NAME = "cython"

cdef double _PI = 3.14159265358979323846
cdef Py_ssize_t _BLOCK = 8192


cdef struct DrawBuf:
    bitgen_t *rng
    double *u
    double *e
    Py_ssize_t pos
    Py_ssize_t size


cdef inline void _refill(DrawBuf *buf) noexcept nogil:
    random_standard_uniform_fill(buf.rng, buf.size, buf.u)
    random_standard_exponential_fill(buf.rng, buf.size, buf.e)
    buf.pos = 0


cdef inline double _kanter(DrawBuf *buf, double alpha) noexcept nogil:
    cdef double u, e
    if buf.pos >= buf.size:
        _refill(buf)
    u = _PI * buf.u[buf.pos]
    e = buf.e[buf.pos]
    buf.pos += 1
    return (sin(alpha * u) / pow(sin(u), 1.0 / alpha)
            * pow(sin((1.0 - alpha) * u) / e, 1.0 / alpha - 1.0))


cdef inline bitgen_t *_state(object capsule):
    return <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")


def stable_standard(double alpha, Py_ssize_t n, object generator):
    """n standard positive alpha-stable variates (Kanter construction)."""
    cdef object bg = generator.bit_generator
    out = np.empty(n, dtype=np.float64)
    scratch_u = np.empty(_BLOCK, dtype=np.float64)
    scratch_e = np.empty(_BLOCK, dtype=np.float64)
    cdef double[::1] o = out
    cdef double[::1] su = scratch_u
    cdef double[::1] se = scratch_e
    cdef DrawBuf buf
    buf.rng = _state(bg.capsule)
    buf.u = &su[0]
    buf.e = &se[0]
    buf.size = _BLOCK
    buf.pos = _BLOCK
    cdef Py_ssize_t i
    with bg.lock, nogil:
        for i in range(n):
            o[i] = _kanter(&buf, alpha)
    return out


cdef inline double _combo_one(DrawBuf *buf, double dt, double[::1] orders,
                              double[::1] weights, double outer) noexcept nogil:
    cdef double w, total, a
    cdef Py_ssize_t r
    if outer != 0.0:
        w = pow(dt, 1.0 / outer) * _kanter(buf, outer)
    else:
        w = dt
    total = 0.0
    for r in range(orders.shape[0]):
        a = orders[r]
        if a == 1.0:
            total += weights[r] * w
        else:
            total += pow(weights[r] * w, 1.0 / a) * _kanter(buf, a)
    return total


def combo_increments(object dt, object orders, object weights, double outer,
                     object generator):
    """Increments of the weighted stable sum over spans ``dt``."""
    cdef cnp.ndarray[double, ndim=1] dt_arr = np.ascontiguousarray(dt, dtype=np.float64)
    cdef double[::1] ov = np.ascontiguousarray(orders, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef object bg = generator.bit_generator
    out = np.empty(dt_arr.shape[0], dtype=np.float64)
    scratch_u = np.empty(_BLOCK, dtype=np.float64)
    scratch_e = np.empty(_BLOCK, dtype=np.float64)
    cdef double[::1] o = out
    cdef double[::1] su = scratch_u
    cdef double[::1] se = scratch_e
    cdef double[::1] d = dt_arr
    cdef DrawBuf buf
    buf.rng = _state(bg.capsule)
    buf.u = &su[0]
    buf.e = &se[0]
    buf.size = _BLOCK
    buf.pos = _BLOCK
    cdef Py_ssize_t i
    with bg.lock, nogil:
        for i in range(d.shape[0]):
            o[i] = _combo_one(&buf, d[i], ov, wv, outer)
    return out


def first_passage_batch(double level, double resolution, Py_ssize_t n_paths,
                        object orders, object weights, double outer,
                        object generator, max_steps=None):
    """First times the summed-subordinator path exceeds ``level``.

    Fixed-resolution walk, bracket midpoint reported (bias at most
    resolution/2); same contract as the fallback implementation.
    """
    cdef double[::1] ov = np.ascontiguousarray(orders, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(weights, dtype=np.float64)
    cdef long cap
    cdef double amax = float(np.max(orders))
    if max_steps is None:
        cap = <long> (5e7 / max(n_paths, 1)) + <long> (200.0 * pow(max(level, 1.0),
                                                                   1.0 / amax) / resolution)
    else:
        cap = <long> max_steps
    cdef object bg = generator.bit_generator
    out = np.empty(n_paths, dtype=np.float64)
    scratch_u = np.empty(_BLOCK, dtype=np.float64)
    scratch_e = np.empty(_BLOCK, dtype=np.float64)
    cdef double[::1] o = out
    cdef double[::1] su = scratch_u
    cdef double[::1] se = scratch_e
    cdef DrawBuf buf
    buf.rng = _state(bg.capsule)
    buf.u = &su[0]
    buf.e = &se[0]
    buf.size = _BLOCK
    buf.pos = _BLOCK
    cdef Py_ssize_t i
    cdef long k
    cdef double v
    cdef bint exceeded = False
    with bg.lock, nogil:
        for i in range(n_paths):
            v = 0.0
            k = 0
            while True:
                v += _combo_one(&buf, resolution, ov, wv, outer)
                if v >= level:
                    o[i] = (k + 0.5) * resolution
                    break
                k += 1
                if k > cap:
                    exceeded = True
                    break
            if exceeded:
                break
    if exceeded:
        raise HorizonExceeded(
            f"path failed to cross {level} within {cap} steps of {resolution}")
    return out
