"""Truncated Laurent series in t with exact rational coefficients.

A series is a window of exact coefficients [minexp, order): everything below
order is known exactly, everything at or above it is unknown.  order=None
means the value is exact (a Laurent polynomial, no truncation).  Every
operation computes the tightest honest order of its result; truncation never
silently widens.

Values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

from qseries import kernel


class ZeroLeadingCoefficient(ArithmeticError):
    """Inversion of a series that is zero up to its truncation order."""


def _norm(c):
    """Collapse integral Fractions to int so hot loops stay on machine ints."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def _min_order(o1, o2):
    if o1 is None:
        return o2
    if o2 is None:
        return o1
    return min(o1, o2)


def _add_order(o, shift):
    return None if o is None else o + shift


class LaurentSeries:
    __slots__ = ("minexp", "coeffs", "order")

    def __init__(self, minexp, coeffs, order=None, _trusted=False):
        if not _trusted:
            coeffs = [_norm(c) for c in coeffs]
            if order is not None:
                keep = order - minexp
                if keep < len(coeffs):
                    coeffs = coeffs[: max(keep, 0)]
            lead = 0
            n = len(coeffs)
            while lead < n and not coeffs[lead]:
                lead += 1
            tail = n
            while tail > lead and not coeffs[tail - 1]:
                tail -= 1
            coeffs = coeffs[lead:tail]
            minexp = minexp + lead if coeffs else 0
        self.minexp = minexp
        self.coeffs = tuple(coeffs)
        self.order = order

    # ---------------------------------------------------------------- basics

    @staticmethod
    def zero(order=None):
        return LaurentSeries(0, (), order, _trusted=True)

    @staticmethod
    def one():
        return LaurentSeries(0, (1,), None, _trusted=True)

    @staticmethod
    def monomial(c, e):
        c = _norm(c)
        if not c:
            return LaurentSeries.zero()
        return LaurentSeries(e, (c,), None, _trusted=True)

    @property
    def is_zero(self):
        """True when no nonzero coefficient is known (exact zero iff order is None)."""
        return not self.coeffs

    def val_floor(self):
        """Valuation, or for a window of zeros the order (a lower bound), or None for exact 0."""
        if self.coeffs:
            return self.minexp
        return self.order

    def coeff(self, e):
        i = e - self.minexp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        if self.order is not None and e >= self.order:
            raise ValueError(f"coefficient of t^{e} is beyond truncation order {self.order}")
        return 0

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.minexp + i, c

    def truncate(self, order):
        order = _min_order(self.order, order)
        return LaurentSeries(self.minexp, self.coeffs, order)

    # ------------------------------------------------------------ arithmetic

    def __neg__(self):
        return LaurentSeries(self.minexp, [-c for c in self.coeffs], self.order, _trusted=True)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.monomial(other, 0)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        order = _min_order(self.order, other.order)
        if not self.coeffs:
            return LaurentSeries(other.minexp, other.coeffs, order)
        if not other.coeffs:
            return LaurentSeries(self.minexp, self.coeffs, order)
        lo = min(self.minexp, other.minexp)
        hi = max(self.minexp + len(self.coeffs), other.minexp + len(other.coeffs))
        if order is not None:
            hi = min(hi, order)
        base = [0] * (self.minexp - lo) + list(self.coeffs)
        out = kernel.add_shifted(base, other.coeffs, other.minexp - lo, hi - lo)
        return LaurentSeries(lo, out, order)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.monomial(other, 0)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        va, vb = self.val_floor(), other.val_floor()
        order = _min_order(
            _add_order(self.order, vb) if vb is not None else None,
            _add_order(other.order, va) if va is not None else None,
        )
        if not self.coeffs or not other.coeffs:
            return LaurentSeries.zero(order)
        minexp = self.minexp + other.minexp
        nmax = len(self.coeffs) + len(other.coeffs) - 1
        if order is not None:
            nmax = min(nmax, order - minexp)
        out = kernel.mul_dense(self.coeffs, other.coeffs, nmax)
        return LaurentSeries(minexp, out, order)

    __rmul__ = __mul__

    def scale(self, c):
        c = _norm(c)
        if not c:
            return LaurentSeries.zero()
        return LaurentSeries(self.minexp, kernel.scale(self.coeffs, c), self.order, _trusted=True)

    def shift(self, e):
        """Multiply by t**e."""
        if self.is_zero:
            return LaurentSeries.zero(_add_order(self.order, e))
        return LaurentSeries(self.minexp + e, self.coeffs, _add_order(self.order, e), _trusted=True)

    def times_binom(self, c, e):
        """Multiply by the exact binomial (1 - c*t**e).

        Any integer e is accepted; e == 0 collapses to the scalar (1 - c).
        """
        c = _norm(c)
        if not c:
            return self
        if e == 0:
            return self.scale(1 - c)
        if not self.coeffs:
            return LaurentSeries.zero(_add_order(self.order, min(0, e)))
        if e < 0:
            # (1 - c*t^e) = -c*t^e * (1 - (1/c)*t^-e)
            return self.shift(e).scale(-c).times_binom(_inv_scalar(c), -e)
        order = self.order
        nmax = len(self.coeffs) + e
        if order is not None:
            nmax = min(nmax, order - self.minexp)
        out = kernel.mul_binom(self.coeffs, e, c, nmax)
        return LaurentSeries(self.minexp, out, order)

    def over_binom(self, c, e, order=None):
        """Divide by the exact binomial (1 - c*t**e).

        The result of a division is truncated; when self is exact the caller
        must supply the target order.
        """
        c = _norm(c)
        if not c:
            return self if order is None else self.truncate(order)
        if e == 0:
            if c == 1:
                raise ZeroDivisionError("division by the zero binomial (1 - 1)")
            return self.scale(_inv_scalar(1 - c))
        if e < 0:
            return self.shift(-e).scale(-_inv_scalar(c)).over_binom(_inv_scalar(c), -e, order)
        eff = _min_order(self.order, order)
        if eff is None:
            raise ValueError("dividing an exact series requires an explicit order")
        if not self.coeffs:
            return LaurentSeries.zero(eff)
        nmax = eff - self.minexp
        if nmax <= 0:
            return LaurentSeries.zero(eff)
        out = kernel.div_binom(self.coeffs, e, c, nmax)
        return LaurentSeries(self.minexp, out, eff)

    def inverse(self, order=None):
        """Multiplicative inverse; requires a nonzero leading coefficient."""
        if not self.coeffs:
            raise ZeroLeadingCoefficient("cannot invert a series with no known nonzero coefficient")
        v = self.minexp
        if self.order is None and len(self.coeffs) == 1:
            return LaurentSeries.monomial(_inv_scalar(self.coeffs[0]), -v)
        eff = _min_order(self.order, order)
        if eff is None:
            raise ValueError("inverting an exact multi-term series requires an explicit order")
        out_order = eff - 2 * v
        nmax = eff - v  # relative precision: as many coefficients as were known
        if nmax <= 0:
            return LaurentSeries.zero(out_order)
        out = kernel.inv_dense(self.coeffs, nmax)
        return LaurentSeries(-v, out, out_order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(_inv_scalar(other))
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self * other.inverse()

    # ------------------------------------------------------------ comparison

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.monomial(other, 0)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.minexp == other.minexp
            and self.order == other.order
            and len(self.coeffs) == len(other.coeffs)
            and all(x == y for x, y in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.minexp, self.coeffs, self.order))

    def first_difference(self, other, upto=None):
        """Lowest exponent where the two series differ, or None if they agree.

        Comparison runs over the window where both are known (bounded above by
        upto when given).  Returns (exponent, self_coeff, other_coeff).
        """
        hi = _min_order(self.order, other.order)
        hi = _min_order(hi, upto)
        lo_candidates = [s.minexp for s in (self, other) if s.coeffs]
        if not lo_candidates:
            return None
        lo = min(lo_candidates)
        if hi is None:
            hi = max(
                (s.minexp + len(s.coeffs) for s in (self, other) if s.coeffs),
                default=lo,
            )
        for e in range(lo, hi):
            cs = self.coeff(e)
            co = other.coeff(e)
            if cs != co:
                return e, cs, co
        return None

    def agrees_with(self, other, upto=None):
        return self.first_difference(other, upto) is None

    # ------------------------------------------------------------------ misc

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            shown = 0
            for e, c in self.terms():
                parts.append(f"{c}*t^{e}" if e else f"{c}")
                shown += 1
                if shown >= 8:
                    parts.append("...")
                    break
            body = " + ".join(parts)
        tail = "" if self.order is None else f" + O(t^{self.order})"
        return f"<{body}{tail}>"


def _inv_scalar(c):
    if c == 1:
        return 1
    if c == -1:
        return -1
    return 1 / Fraction(c)
