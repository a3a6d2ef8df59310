# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _kernel_py: the coefficient inner loops.

Coefficients stay Python objects (int or Fraction) because the arithmetic
is exact and arbitrary-precision; the speedup comes from C-level loop
control and slot-indexed list access instead of interpreter dispatch.
Semantics must match _kernel_py exactly; the test suite runs both.
"""

from cpython.list cimport PyList_GET_ITEM, PyList_GET_SIZE, PyList_SET_ITEM
from cpython.ref cimport Py_INCREF

from fractions import Fraction

IMPLEMENTATION = "cython"


def mul_dense(a, b, Py_ssize_t nmax):
    """Cauchy product of a and b, truncated to nmax coefficients."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t n, i, j, jmax
    if la == 0 or lb == 0:
        return []
    n = la + lb - 1
    if nmax < n:
        n = nmax
    a = list(a)
    b = list(b)
    out = [0] * n
    cdef object ai, bj, cur
    for i in range(min(la, n)):
        ai = <object>PyList_GET_ITEM(a, i)
        if not ai:
            continue
        jmax = lb
        if n - i < jmax:
            jmax = n - i
        for j in range(jmax):
            bj = <object>PyList_GET_ITEM(b, j)
            if bj:
                cur = <object>PyList_GET_ITEM(out, i + j)
                out[i + j] = cur + ai * bj
    return out


def mul_binom(a, Py_ssize_t e, c, Py_ssize_t nmax):
    """Multiply a by (1 - c*t**e) with e > 0, truncated to nmax coefficients."""
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t n = la + e
    cdef Py_ssize_t i
    if nmax < n:
        n = nmax
    a = list(a)
    cdef Py_ssize_t head = la if la < n else n
    out = list(a[:head]) + [0] * (n - head)
    cdef object ai, cur
    for i in range(e, n):
        if i - e < la:
            ai = <object>PyList_GET_ITEM(a, i - e)
            if ai:
                cur = <object>PyList_GET_ITEM(out, i)
                out[i] = cur - c * ai
    return out


def div_binom(a, Py_ssize_t e, c, Py_ssize_t nmax):
    """Divide a by (1 - c*t**e) with e > 0, extended to nmax coefficients."""
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t i
    a = list(a)
    out = [0] * nmax
    for i in range(la if la < nmax else nmax):
        out[i] = <object>PyList_GET_ITEM(a, i)
    cdef object prev, cur
    for i in range(e, nmax):
        prev = <object>PyList_GET_ITEM(out, i - e)
        if prev:
            cur = <object>PyList_GET_ITEM(out, i)
            out[i] = cur + c * prev
    return out


def inv_dense(a, Py_ssize_t nmax):
    """Inverse of a series with a[0] != 0, to nmax coefficients."""
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t k, i, imax
    a = list(a)
    lead = <object>PyList_GET_ITEM(a, 0)
    out = [0] * nmax
    cdef bint lead_is_one = lead == 1
    out[0] = 1 if lead_is_one else 1 / Fraction(lead)
    cdef object acc, ai
    for k in range(1, nmax):
        acc = 0
        imax = k if k < la - 1 else la - 1
        for i in range(1, imax + 1):
            ai = <object>PyList_GET_ITEM(a, i)
            if ai:
                acc = acc + ai * (<object>PyList_GET_ITEM(out, k - i))
        if acc:
            out[k] = -acc if lead_is_one else -acc / Fraction(lead)
    return out


def add_shifted(a, b, Py_ssize_t off, Py_ssize_t nmax):
    """a + t**off * b (off >= 0), truncated to nmax coefficients."""
    cdef Py_ssize_t la = len(a), lb = len(b)
    cdef Py_ssize_t n = la if la > lb + off else lb + off
    cdef Py_ssize_t i, jmax
    if nmax < n:
        n = nmax
    a = list(a)
    b = list(b)
    cdef Py_ssize_t head = la if la < n else n
    out = list(a[:head]) + [0] * (n - head)
    jmax = lb
    if n - off < jmax:
        jmax = n - off
    cdef object bj, cur
    for i in range(jmax):
        bj = <object>PyList_GET_ITEM(b, i)
        if bj:
            cur = <object>PyList_GET_ITEM(out, i + off)
            out[i + off] = cur + bj
    return out


def scale(a, c):
    """Multiply every coefficient by the nonzero scalar c."""
    if c == 1:
        return list(a)
    return [c * x if x else 0 for x in a]
