"""Pure-Python coefficient kernels for truncated series arithmetic.

All functions operate on plain lists of exact numbers (int or Fraction),
indexed from the valuation: a[i] is the coefficient of t**(minexp + i).
Offset bookkeeping lives in qseries.series; these loops only ever see
window-relative indices.

The compiled twin (_coeffkernel.pyx) implements the same six functions
with identical semantics; qseries.kernel picks one at import time.
"""

IMPLEMENTATION = "python"


def mul_dense(a, b, nmax):
    """Cauchy product of a and b, truncated to nmax coefficients."""
    la, lb = len(a), len(b)
    n = min(nmax, la + lb - 1) if la and lb else 0
    out = [0] * n
    for i in range(min(la, n)):
        ai = a[i]
        if not ai:
            continue
        jmax = min(lb, n - i)
        for j in range(jmax):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def mul_binom(a, e, c, nmax):
    """Multiply a by (1 - c*t**e) with e > 0, truncated to nmax coefficients."""
    la = len(a)
    n = min(nmax, la + e)
    out = list(a[:n]) + [0] * (n - min(la, n))
    for i in range(e, n):
        ai = a[i - e] if i - e < la else 0
        if ai:
            out[i] -= c * ai
    return out


def div_binom(a, e, c, nmax):
    """Divide a by (1 - c*t**e) with e > 0, extended to nmax coefficients."""
    la = len(a)
    out = [0] * nmax
    for i in range(min(la, nmax)):
        out[i] = a[i]
    for i in range(e, nmax):
        prev = out[i - e]
        if prev:
            out[i] += c * prev
    return out


def inv_dense(a, nmax):
    """Inverse of a series with a[0] != 0, to nmax coefficients."""
    lead = a[0]
    la = len(a)
    out = [0] * nmax
    out[0] = 1 / _frac(lead) if lead != 1 else 1
    for k in range(1, nmax):
        acc = 0
        for i in range(1, min(k, la - 1) + 1):
            ai = a[i]
            if ai:
                acc += ai * out[k - i]
        if acc:
            out[k] = -acc if lead == 1 else -acc / _frac(lead)
    return out


def add_shifted(a, b, off, nmax):
    """a + t**off * b (off >= 0), truncated to nmax coefficients."""
    la, lb = len(a), len(b)
    n = min(nmax, max(la, lb + off))
    out = list(a[:n]) + [0] * (n - min(la, n))
    for j in range(min(lb, n - off)):
        bj = b[j]
        if bj:
            out[j + off] += bj
    return out


def scale(a, c):
    """Multiply every coefficient by the nonzero scalar c."""
    if c == 1:
        return list(a)
    return [c * x if x else 0 for x in a]


def _frac(x):
    from fractions import Fraction

    return x if isinstance(x, Fraction) else Fraction(x)
