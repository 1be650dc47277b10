"""Free-boson currents: mode brackets, contractions, OPE kernels, delta extraction.

The deformed Heisenberg algebra underlying everything here is

    [a_n, a_m] = (1/n) (q^n - q^-n) ((qp)^n - (qp)^-n) (p^n + p^-n - 1) delta_{n+m,0},
    [P, Q] = 1,

with two normalized mode families

    s_n^+ = a_n / (q^n - q^-n),        s_n^- = a_n / ((qp)^n - (qp)^-n),

assembled into the fields phi(z) = sum_{n != 0} s_n^+ z^-n and
psi(z) = sum_{n != 0} s_n^- z^-n.  The level-1 currents are

    E(z) = e^Q z^P :exp(phi(z)):,      F(z) = e^-Q z^-P :exp(-psi(z)):,
    H^{+-}(z) = z^-1 :E(z p^{+-1/2}) F(z p^{-+1/2}): .

An OPE kernel A(z) B(w) = K(z, w) :A(z) B(w): collects (i) the exponential of
the signed pairwise contractions of the field exponents and (ii) the monomial
from commuting z^P-type zero modes past e^{+-Q} (z^A e^B = e^B z^[A,B] z^A for
central [A,B]).  Kernels are stored in closed form as lists of q-Pochhammer
factors (base 0 factors are plain 1 - c*x), so they can be expanded exactly
as jets or evaluated numerically at complex points.

Half-integer p-powers enter through the H currents, so exact parameters carry
sqrt(p) as the primitive rational (see DeformationParams).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DomainError, PoleError, StructuralError, UnsupportedError
from .scalars import workdps
from .series import TruncatedSeries
from .theta import qpoch_eval

__all__ = [
    "DeformationParams",
    "QPochFactor",
    "VertexOperatorSpec",
    "Kernel",
    "DeltaTerm",
    "mode_bracket",
    "contraction_series",
    "exp_contraction_closed",
    "ope_kernel",
    "delta_decompose",
    "build_H",
    "E_current",
    "F_current",
    "compose_normal_ordered",
    "kernel_repr",
]

FIELD_KINDS = ("phi", "psi")


@dataclass(frozen=True)
class DeformationParams:
    """Exact deformation point: rational q and p with 0 < q, p < 1.

    The H currents shift arguments by p^{1/2}, so anything touching them
    needs sqrt_p supplied as an exact rational (usually one draws sqrt_p
    and squares it).  Integer-power work (mode brackets, contractions,
    E/F kernels) is fine without it.
    """

    q: Fraction
    p: Fraction
    sqrt_p: Fraction = None

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "p", Fraction(self.p))
        if not (0 < self.q < 1):
            raise DomainError("need 0 < q < 1, got %s" % self.q)
        if not (0 < self.p < 1):
            raise DomainError("need 0 < p < 1, got %s" % self.p)
        if self.sqrt_p is not None:
            object.__setattr__(self, "sqrt_p", Fraction(self.sqrt_p))
            if self.sqrt_p * self.sqrt_p != self.p:
                raise StructuralError("sqrt_p**2 != p")

    @classmethod
    def from_sqrt(cls, q, sqrt_p):
        sqrt_p = Fraction(sqrt_p)
        return cls(Fraction(q), sqrt_p * sqrt_p, sqrt_p)

    def p_power(self, half_exponent):
        """p**half_exponent for integer or half-integer exponents, exact."""
        e = Fraction(half_exponent)
        two_e = e * 2
        if two_e.denominator != 1:
            raise StructuralError("only half-integer p-powers are exact: %s" % e)
        if two_e.numerator % 2 == 0:
            return self.p ** (two_e.numerator // 2)
        if self.sqrt_p is None:
            raise StructuralError("half-integer p-power needs sqrt_p")
        return self.sqrt_p ** int(two_e)


def mode_bracket(n, m, params):
    """[a_n, a_m]; nonzero only on the diagonal n + m = 0, n != 0."""
    if n + m != 0 or n == 0:
        return Fraction(0)
    q, p = params.q, params.p
    qp = q * p
    return (Fraction(1, n)
            * (q ** n - q ** -n)
            * (qp ** n - qp ** -n)
            * (p ** n + p ** -n - 1))


def _contraction_coeff(kind1, kind2, n, params):
    # <phi phi>, <psi psi>, <phi psi> coefficient of x^n, n >= 1; the sum
    # starts at n = 1, so every contraction has zero constant term.
    q, p = params.q, params.p
    qp = q * p
    core = p ** n + p ** -n - 1
    if kind1 == "phi" and kind2 == "phi":
        val = (qp ** n - qp ** -n) * core / (q ** n - q ** -n)
    elif kind1 == "psi" and kind2 == "psi":
        val = (q ** n - q ** -n) * core / (qp ** n - qp ** -n)
    else:
        val = core
    return Fraction(-1, n) * val


def contraction_series(kind1, kind2, params, order, var="x"):
    """Jet of <field1(z) field2(w)> in x = w/z (exact rationals)."""
    if kind1 not in FIELD_KINDS or kind2 not in FIELD_KINDS:
        raise StructuralError("unknown field kind (%r, %r)" % (kind1, kind2))
    coeffs = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        coeffs[n] = _contraction_coeff(kind1, kind2, n, params)
    return TruncatedSeries(coeffs, order, var)


@dataclass(frozen=True)
class QPochFactor:
    """(c*x | b)_inf ** power as a closed-form building block; b = 0 degenerates to (1 - c*x)."""

    c: Fraction
    b: Fraction
    power: int

    def __post_init__(self):
        if self.power not in (1, -1):
            raise StructuralError("factor power must be +1 or -1")

    def inverted(self):
        return QPochFactor(self.c, self.b, -self.power)


def exp_contraction_closed(kind1, kind2, params):
    """Closed form of exp<field1 field2> as a factor list.

    exp<phi phi> = (x p^-2 | q^2)(x q^2 p | q^2)(x | q^2)
                   / [(x (qp)^2 | q^2)(x p^-1 | q^2)(x q^2 | q^2)]
    exp<psi psi> = (x p^2 | Q)(x Q p^-1 | Q)(x | Q)
                   / [(x Q p^-2 | Q)(x p | Q)(x Q | Q)],     Q = (qp)^2
    exp<phi psi> = (1 - x p)(1 - x p^-1) / (1 - x)
    """
    q, p = params.q, params.p
    if kind1 == "phi" and kind2 == "phi":
        b = q * q
        num = [p ** -2, q * q * p, Fraction(1)]
        den = [(q * p) ** 2, p ** -1, q * q]
    elif kind1 == "psi" and kind2 == "psi":
        b = (q * p) ** 2
        num = [p * p, b * p ** -1, Fraction(1)]
        den = [b * p ** -2, p, b]
    elif {kind1, kind2} == {"phi", "psi"}:
        b = Fraction(0)
        num = [p, p ** -1]
        den = [Fraction(1)]
    else:
        raise StructuralError("unknown field pair (%r, %r)" % (kind1, kind2))
    return tuple([QPochFactor(c, b, 1) for c in num]
                 + [QPochFactor(c, b, -1) for c in den])


@dataclass(frozen=True)
class VertexOperatorSpec:
    """A normal-ordered exponential current with zero-mode bookkeeping.

    field_terms: tuple of (kind, sign, shift) meaning the exponent carries
      sign * field_kind(shift * z); shift is an exact scalar (p-power).
    charge: coefficient of Q in the zero mode, momentum: power of z^P.
    The zero-mode monomial u(z) = u_scalar * z^momentum is what passes other
    operators' e^{charge Q} factors; prefactor_* is a plain c-number monomial
    in front (the z^-1 of the H currents).
    """

    label: str
    charge: int
    momentum: int
    field_terms: tuple
    prefactor_scalar: Fraction = Fraction(1)
    prefactor_z_exp: int = 0
    u_scalar: Fraction = Fraction(1)

    @property
    def parity(self):
        return self.charge % 2

    def at_multiple(self, mult):
        """Substitute z -> mult * z (mult an exact scalar)."""
        mult = Fraction(mult)
        fields = tuple((k, s, sh * mult) for (k, s, sh) in self.field_terms)
        return VertexOperatorSpec(
            label="%s@%s" % (self.label, mult),
            charge=self.charge,
            momentum=self.momentum,
            field_terms=fields,
            prefactor_scalar=self.prefactor_scalar * mult ** self.prefactor_z_exp,
            prefactor_z_exp=self.prefactor_z_exp,
            u_scalar=self.u_scalar * mult ** self.momentum,
        )

    def same_fields(self, other):
        return (sorted(self.field_terms) == sorted(other.field_terms)
                and self.charge == other.charge
                and self.momentum == other.momentum)


def E_current(params):
    return VertexOperatorSpec("E", 1, 1, (("phi", 1, Fraction(1)),))


def F_current(params):
    return VertexOperatorSpec("F", -1, -1, (("psi", -1, Fraction(1)),))


def build_H(sign, params):
    """H^{+-}(z) = z^-1 :E(z p^{+-1/2}) F(z p^{-+1/2}):  (sign = +1 or -1)."""
    if sign not in (1, -1):
        raise StructuralError("sign must be +1 or -1")
    sp = params.p_power(Fraction(sign, 2))
    sm = params.p_power(Fraction(-sign, 2))
    return VertexOperatorSpec(
        label="H+" if sign == 1 else "H-",
        charge=0,
        momentum=0,
        field_terms=(("phi", 1, sp), ("psi", -1, sm)),
        prefactor_scalar=Fraction(1),
        prefactor_z_exp=-1,
        u_scalar=sp / sm,                   # p^{sign}
    )


def compose_normal_ordered(*parts):
    """:A(m1 z) B(m2 z) ...: as one spec; parts are (spec, multiplier) pairs."""
    fields = []
    charge = momentum = 0
    pref_s = Fraction(1)
    pref_e = 0
    u_s = Fraction(1)
    labels = []
    for spec, mult in parts:
        s = spec.at_multiple(mult)
        fields.extend(s.field_terms)
        charge += s.charge
        momentum += s.momentum
        pref_s *= s.prefactor_scalar
        pref_e += s.prefactor_z_exp
        u_s *= s.u_scalar
        labels.append(s.label)
    return VertexOperatorSpec(
        label=":" + " ".join(labels) + ":",
        charge=charge,
        momentum=momentum,
        field_terms=tuple(fields),
        prefactor_scalar=pref_s,
        prefactor_z_exp=pref_e,
        u_scalar=u_s,
    )


class Kernel:
    """Closed form and exact jet of A(z) B(w) = K(z, w) :A(z) B(w): .

    K = scalar * z^z_exp * w^w_exp * prod_i (c_i * x | b_i)^{power_i},
    x = w / z.  The series attribute is the exact jet of the product part
    (the true infinite-product expansion, not a truncated product).
    """

    def __init__(self, params, order, scalar, z_exp, w_exp, factors, contractions):
        self.params = params
        self.order = order
        self.scalar = Fraction(scalar)
        self.z_exp = z_exp
        self.w_exp = w_exp
        self.factors = tuple(factors)
        self._contractions = contractions  # list of (series sign, kind1, kind2, ratio)
        self._series = None

    @property
    def series(self):
        if self._series is None:
            acc = TruncatedSeries.zero(self.order)
            for sgn, k1, k2, ratio in self._contractions:
                jet = contraction_series(k1, k2, self.params, self.order)
                jet = jet.scale_argument(ratio)
                acc = acc + (jet if sgn == 1 else -jet)
            self._series = acc.exp()
        return self._series

    def series_from_closed_form(self):
        """Exact jet of prod factors via log expansion; equals .series."""
        from .series import qpoch_log_series
        acc = TruncatedSeries.one(self.order)
        for f in self.factors:
            acc = acc * qpoch_log_series(f.c, f.b, self.order, f.power)
        return acc

    def eval_product(self, x, digits):
        """Numeric value of the factor product at complex x."""
        with workdps(digits + 10):
            x = mp.mpc(x)
            acc = mp.mpc(1)
            for f in self.factors:
                c = mp.mpf(f.c.numerator) / mp.mpf(f.c.denominator)
                if f.b == 0:
                    v = 1 - c * x
                else:
                    b = mp.mpf(f.b.numerator) / mp.mpf(f.b.denominator)
                    v = qpoch_eval(c * x, b, digits)
                if f.power == -1:
                    if abs(v) < mp.mpf(10) ** (-digits):
                        raise PoleError("kernel pole at x = %s" % x, factor=f)
                    acc /= v
                else:
                    acc *= v
            return acc

    def eval_at(self, z, w, digits):
        with workdps(digits + 10):
            z = mp.mpc(z)
            w = mp.mpc(w)
            mono = (mp.mpf(self.scalar.numerator) / mp.mpf(self.scalar.denominator)
                    * z ** self.z_exp * w ** self.w_exp)
            return mono * self.eval_product(w / z, digits)

    def near_singular(self, x, tol=1e-6):
        """True if x is within tol of a zero of any factor (either power)."""
        x = mp.mpc(x)
        for f in self.factors:
            c = mp.mpf(f.c.numerator) / mp.mpf(f.c.denominator)
            if f.b == 0:
                if abs(1 - c * x) < tol:
                    return True
                continue
            b = mp.mpf(f.b.numerator) / mp.mpf(f.b.denominator)
            arg = c * x
            # zeros at arg = b^-n, n >= 0 ... but |arg| < 1 territory only
            # needs n with |arg| b^n near 1
            n = 0
            val = arg
            while abs(val) > tol and n < 10_000:
                if abs(1 - val) < tol:
                    return True
                val *= b
                n += 1
        return False


def ope_kernel(a_spec, b_spec, params, order=30):
    """Kernel of A(z) B(w) for two vertex-operator specs."""
    scalar = (a_spec.prefactor_scalar * b_spec.prefactor_scalar
              * a_spec.u_scalar ** b_spec.charge)
    z_exp = a_spec.prefactor_z_exp + a_spec.momentum * b_spec.charge
    w_exp = b_spec.prefactor_z_exp
    factors = []
    contractions = []
    for (k1, e1, s1) in a_spec.field_terms:
        for (k2, e2, s2) in b_spec.field_terms:
            ratio = s2 / s1
            sgn = e1 * e2
            contractions.append((sgn, k1, k2, ratio))
            for f in exp_contraction_closed(k1, k2, params):
                factors.append(QPochFactor(f.c * ratio, f.b, f.power * sgn))
    return Kernel(params, order, scalar, z_exp, w_exp, factors, contractions)


@dataclass(frozen=True)
class DeltaTerm:
    """residue * z^z_exp * w^w_exp * delta at support w/z = support_x.

    support_x = p^k presents as delta(z / (w p^-k)) for k < 0 (support
    z = w p^-k) and delta(w / (z p^-... )) symmetrically; both spellings
    denote the same bilateral sum sum_n (x / support_x)^n.
    """

    support_x: Fraction
    residue: Fraction
    scalar: Fraction
    z_exp: int
    w_exp: int

    def coefficient_on_support(self):
        """Exact scalar coefficient after eliminating z = w/support_x.

        Returns (scalar_coefficient, w_exponent): the delta term equals
        scalar_coefficient * w**w_exponent * delta * :AB: .
        """
        coeff = self.scalar * self.residue * self.support_x ** (-self.z_exp)
        return coeff, self.z_exp + self.w_exp


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_eval(poly, x):
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def delta_decompose(kernel):
    """Bilateral partial-fraction extraction of delta terms from a rational kernel.

    For a kernel whose factors are all base-0 (a genuine rational function of
    x), the anticommutator pairing K_AB expanded in x plus K_BA expanded in
    x^-1 collapses; writing the proper part as sum_j A_j / (1 - d_j x), each
    pole contributes A_j * delta(x d_j), supported at x = 1/d_j.  Polynomial
    parts cancel between the two expansion regions and carry no delta, so
    they are dropped (recorded on the result).  Higher-order poles are not
    supported.
    """
    num = [Fraction(1)]
    dens = []
    for f in kernel.factors:
        if f.b != 0:
            raise UnsupportedError("delta_decompose needs a rational kernel; "
                                   "found base %s" % f.b)
        if f.power == 1:
            num = _poly_mul(num, [Fraction(1), -f.c])
        else:
            if f.c == 0:
                raise UnsupportedError("constant denominator factor")
            dens.append(f.c)
    if len(set(dens)) != len(dens):
        raise UnsupportedError("higher-order pole: repeated denominator root")
    terms = []
    for j, d in enumerate(dens):
        x0 = Fraction(1) / d
        denom = Fraction(1)
        for i, d2 in enumerate(dens):
            if i != j:
                denom *= (1 - d2 * x0)
        residue = _poly_eval(num, x0) / denom
        terms.append(DeltaTerm(support_x=x0, residue=residue,
                               scalar=kernel.scalar,
                               z_exp=kernel.z_exp, w_exp=kernel.w_exp))
    discarded_poly = len(num) - 1 >= len(dens) and len(dens) > 0
    terms.sort(key=lambda t: (t.support_x.numerator, t.support_x.denominator))
    return terms, discarded_poly


def _monomial_repr(scalar, z_exp, w_exp, factors):
    # render z^1 * (1 - x) * rest as the familiar (z - w) * rest, peeling the
    # leading 1 - x off an (x | b) factor if needed
    unit = next((f for f in factors if f.c == 1 and f.power == 1), None)
    if scalar == 1 and (z_exp, w_exp) == (1, 0) and unit is not None:
        rest = list(factors)
        rest.remove(unit)
        if unit.b != 0:
            rest.append(QPochFactor(unit.b, unit.b, 1))
        return ["(z - w)"], tuple(rest)
    parts = []
    if scalar != 1:
        parts.append(str(scalar))
    if z_exp:
        parts.append("z^%d" % z_exp)
    if w_exp:
        parts.append("w^%d" % w_exp)
    return parts, factors


def kernel_repr(kernel):
    """Human-readable closed form: monomial, then factor stack, then jet head."""
    parts, factors = _monomial_repr(kernel.scalar, kernel.z_exp, kernel.w_exp,
                                    kernel.factors)
    num = [f for f in factors if f.power == 1]
    den = [f for f in factors if f.power == -1]
    for f in list(num):  # drop factor pairs that cancel exactly
        match = next((g for g in den if (g.c, g.b) == (f.c, f.b)), None)
        if match is not None:
            num.remove(f)
            den.remove(match)

    def fmt(f):
        if f.b == 0:
            return "(1 - %s x)" % f.c if f.c != 1 else "(1 - x)"
        return "(%s x | %s)" % (f.c, f.b)

    lines = []
    if parts:
        lines.append(" * ".join(parts))
    if num:
        lines.append("numerator:   " + " ".join(fmt(f) for f in num))
    if den:
        lines.append("denominator: " + " ".join(fmt(f) for f in den))
    head = kernel.series.coeffs[: min(5, kernel.order + 1)]
    lines.append("jet: " + ", ".join(str(c) for c in head) + ", ...")
    return "\n".join(lines)
