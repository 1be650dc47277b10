"""Truncated power series over exact rationals.

A series is a fixed-order jet: coefficients c[0..N] in the single variable
``var``.  All ring operations discard the tail beyond x^N, so order-N inputs
always produce order-N outputs.  Coefficients are ``fractions.Fraction``;
nothing in this module ever rounds.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, StructuralError

__all__ = ["TruncatedSeries", "series_arith", "qpoch_series", "qpoch_log_series"]


class TruncatedSeries:
    """Coefficient jet c0 + c1 x + ... + cN x^N with exact arithmetic."""

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs, order=None, var="x"):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise StructuralError("series order must be >= 0")
        if len(coeffs) < order + 1:
            coeffs = coeffs + [Fraction(0)] * (order + 1 - len(coeffs))
        self.coeffs = coeffs[: order + 1]
        self.order = order
        self.var = var

    @classmethod
    def zero(cls, order, var="x"):
        return cls([Fraction(0)], order, var)

    @classmethod
    def one(cls, order, var="x"):
        return cls([Fraction(1)], order, var)

    @classmethod
    def x(cls, order, var="x"):
        return cls([Fraction(0), Fraction(1)], order, var)

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise StructuralError("expected a TruncatedSeries, got %r" % type(other))
        if other.order != self.order:
            raise StructuralError(
                "order mismatch: %d vs %d" % (self.order, other.order))
        if other.var != self.var:
            raise StructuralError("variable mismatch: %s vs %s" % (self.var, other.var))

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and self.var == other.var
                and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.order, tuple(self.coeffs)))

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs], self.order, self.var)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            k = Fraction(other)
            return TruncatedSeries([k * a for a in self.coeffs], self.order, self.var)
        self._check(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(0, n - i + 1):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncatedSeries(out, n, self.var)

    __rmul__ = __mul__

    def invert(self):
        """Multiplicative inverse; requires a unit constant term."""
        if self.coeffs[0] == 0:
            raise DomainError("cannot invert a series with zero constant term")
        n = self.order
        a = self.coeffs
        inv0 = Fraction(1) / a[0]
        out = [inv0] + [Fraction(0)] * n
        for k in range(1, n + 1):
            s = Fraction(0)
            for i in range(1, k + 1):
                if a[i] != 0:
                    s += a[i] * out[k - i]
            out[k] = -inv0 * s
        return TruncatedSeries(out, n, self.var)

    def exp(self):
        """exp of a series with zero constant term.

        E' = A' E gives n*E_n = sum_{k=1..n} k*A_k*E_{n-k}.
        """
        if self.coeffs[0] != 0:
            raise DomainError("exp requires zero constant term")
        n = self.order
        a = self.coeffs
        out = [Fraction(1)] + [Fraction(0)] * n
        for m in range(1, n + 1):
            s = Fraction(0)
            for k in range(1, m + 1):
                if a[k] != 0:
                    s += k * a[k] * out[m - k]
            out[m] = s / m
        return TruncatedSeries(out, n, self.var)

    def log(self):
        """log of a series with unit constant term.

        A L' = A' gives n*L_n = n*A_n - sum_{k=1..n-1} k*L_k*A_{n-k}.
        """
        if self.coeffs[0] != 1:
            raise DomainError("log requires unit constant term")
        n = self.order
        a = self.coeffs
        out = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            s = m * a[m]
            for k in range(1, m):
                if out[k] != 0 and a[m - k] != 0:
                    s -= k * out[k] * a[m - k]
            out[m] = Fraction(s, m) if isinstance(s, int) else s / m
        return TruncatedSeries(out, n, self.var)

    def scale_argument(self, s):
        """x -> s*x, i.e. c_k -> c_k * s^k (s exact)."""
        s = Fraction(s)
        out, pw = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= s
        return TruncatedSeries(out, self.order, self.var)

    def divide_exact(self, other):
        """Exact division: raises if ``other`` does not divide self in the jet ring.

        Used for divisibility assertions such as pulling a (1 - x) factor
        out of a kernel.  Requires other.c0 != 0 after shifting out common
        leading zeros.
        """
        self._check(other)
        a, b = list(self.coeffs), list(other.coeffs)
        shift = 0
        while shift <= self.order and b[0] == 0:
            if a[0] != 0:
                raise DomainError("not divisible: valuation mismatch")
            a.pop(0)
            b.pop(0)
            shift += 1
        if not b or b[0] == 0:
            raise DomainError("division by zero series")
        n = len(a) - 1
        out = [Fraction(0)] * (n + 1)
        for k in range(n + 1):
            s = a[k]
            for i in range(1, k + 1):
                s -= b[i] * out[k - i] if i < len(b) else 0
            out[k] = s / b[0]
        out += [Fraction(0)] * (self.order - n)
        return TruncatedSeries(out[: self.order + 1], self.order, self.var)

    def eval_mpc(self, x, digits):
        """Horner evaluation at a complex point (for diagnostics)."""
        import mpmath as mp
        with mp.workdps(digits + 10):
            x = mp.mpc(x)
            acc = mp.mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * x + mp.mpf(c.numerator) / mp.mpf(c.denominator)
            return acc

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:4])
        tail = ", ..." if self.order > 3 else ""
        return "TruncatedSeries([%s%s], order=%d, var=%r)" % (head, tail, self.order, self.var)


def series_arith(a, b, op):
    """Dispatcher over the series ring operations.

    op in {add, mul, invert, exp, log}; ``b`` is ignored (pass None) for the
    unary ones.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        if b is not None:
            raise StructuralError("invert is unary")
        return a.invert()
    if op == "exp":
        if b is not None:
            raise StructuralError("exp is unary")
        return a.exp()
    if op == "log":
        if b is not None:
            raise StructuralError("log is unary")
        return a.log()
    raise StructuralError("unknown op %r" % op)


def qpoch_series(c, b, order, power=1, var="x"):
    """Truncated-product q-Pochhammer jet: prod_{n=0..order} (1 - c*x*b^n).

    Only the factors n <= order are multiplied (for b = 0 the single
    surviving factor is 1 - c*x); with power=-1 the product is inverted in
    the jet ring.  Note this is the finite product, not the jet of the
    infinite product: coefficients of the latter pick up b-power tails from
    every factor, see ``qpoch_log_series``.
    """
    c = Fraction(c)
    b = Fraction(b)
    if power not in (1, -1):
        raise StructuralError("power must be +1 or -1")
    out = TruncatedSeries.one(order, var)
    scale = c
    for n in range(order + 1):
        if scale == 0:
            break
        f = TruncatedSeries([Fraction(1), -scale], order, var)
        out = out * f
        scale *= b
    return out.invert() if power == -1 else out


def qpoch_log_series(c, b, order, power=1, var="x"):
    """Exact jet of the infinite product prod_{n>=0} (1 - c*x*b^n)**power.

    log prod (1 - c x b^n) = -sum_{m>=1} (c x)^m / (m (1 - b^m)), requiring
    |b| != 1 exactly; each coefficient is a closed-form rational, so the
    result is the true series of the infinite product (unlike the truncated
    product above).
    """
    c = Fraction(c)
    b = Fraction(b)
    if abs(b) >= 1:
        raise DomainError("need |b| < 1 for the infinite product, got %s" % b)
    coeffs = [Fraction(0)] * (order + 1)
    cm = Fraction(1)
    for m in range(1, order + 1):
        cm *= c
        coeffs[m] = -cm / (m * (1 - b ** m))
    L = TruncatedSeries(coeffs, order, var)
    if power == -1:
        L = -L
    elif power != 1:
        raise StructuralError("power must be +1 or -1")
    return L.exp()
