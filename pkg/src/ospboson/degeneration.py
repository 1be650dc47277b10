"""Scaling limits of the exchange structure functions.

Two successive degenerations are checked numerically:

  elliptic (two deformation parameters)  -->  trigonometric  -->  rational

The re-parameterization is q = e^{eps/eta}, p = e^{eps*hbar}, with spectral
points entering through z = e^{eps*u}, so x = w/z = e^{-eps(u-v)}.  The
second deformation nome obeys 1/eta' - 1/eta = hbar*c.  As eps -> 0 each
four-theta exchange ratio degenerates into a ratio of sines in the
arguments 2*pi*eta*(u - v + a*hbar) (eta' on the qt2 side), and as eta -> 0
each sine ratio further collapses to the ratio of its affine arguments.

Nome convention.  The printed q = e^{eps/eta} exceeds 1, where the theta
triple product diverges; the limit statement only makes sense through the
modular side.  We fix the convention once: a theta factor on base q^2 is
evaluated at the base B = e^{-eps/(2 eta)}, one on base qt^2 at
B' = e^{-eps/(2 eta')}.  This is the unique rescaling under which
theta_B(B^y) ~ sin(pi*y) reproduces the displayed sine arguments: a factor
theta(x p^a) maps to y = ln(x p^a)/ln(B) = 2 eta (u - v - a hbar).  The
residual exponential prefactors of the modular bridge cancel only up to
O(eps) in balanced four-theta ratios, which is exactly the convergence
rate limit_check measures; the measured elliptic/trig ratios are logged
per run so a surviving constant would be visible, not hidden.

The trigonometric targets are derived mechanically from the canonical
relation catalog (same factor lists, same signs), not typed in from the
degenerate displays.  Where the degenerate displays disagree with the
mechanical limit of the canonical catalog, the discrepancy is recorded in
TRIG_DISPLAY_AUDIT: the F-side displays (H^{+-}F and FF) appear with
numerator and denominator interchanged relative to the limit of the
catalog that the realization satisfies, i.e. with u-v negated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from mpmath import mp

from .errors import DomainError, PoleError, StructuralError
from .relations import eval_structure_function, relation_catalog
from .scalars import workdps

EPSILON_LADDER = (0.1, 0.05, 0.025, 0.0125)

LIMIT_NAMES = ("H+E", "H-E", "H+F", "H-F", "HH", "H+H-", "EE", "FF")

# how the printed degenerate displays compare with the mechanical limit of
# the canonical catalog ("matches" / "reciprocal" = num and den swapped)
TRIG_DISPLAY_AUDIT = {
    "H+E": "matches",
    "H-E": "matches",
    "H+F": "reciprocal",
    "H-F": "reciprocal",
    "HH": "matches",
    "H+H-": "matches",
    "EE": "matches",
    "FF": "reciprocal",
    "EF": "matches",
}


def eta_prime(eta, hbar, c):
    """Solve 1/eta' - 1/eta = hbar*c for eta'."""
    eta = mp.mpf(eta)
    if eta == 0:
        raise DomainError("eta must be nonzero")
    denom = 1 / eta + mp.mpf(hbar) * mp.mpf(c)
    if denom == 0:
        raise DomainError("1/eta + hbar*c vanishes; eta' undefined")
    return 1 / denom


@dataclass(frozen=True)
class ScalingParams:
    """One point of the re-parameterized family.

    q = e^{eps/eta}, p = e^{eps*hbar}, x = e^{-eps(u-v)}; level is the
    central charge entering the c-dependent shifts and eta'.
    """

    epsilon: float
    hbar: float
    eta: float
    u: complex = 0.0
    v: complex = 0.0
    level: int = 1

    def __post_init__(self):
        if not self.epsilon > 0:
            raise DomainError("epsilon must be positive")
        if self.eta == 0:
            raise DomainError("eta must be nonzero")

    @property
    def u_minus_v(self):
        return mp.mpc(self.u) - mp.mpc(self.v)

    @property
    def eta_prime(self):
        return eta_prime(self.eta, self.hbar, self.level)

    @property
    def p(self):
        return mp.e ** (mp.mpf(self.epsilon) * mp.mpf(self.hbar))

    @property
    def x(self):
        return mp.e ** (-mp.mpf(self.epsilon) * self.u_minus_v)

    @property
    def nome_q2(self):
        return mp.e ** (-mp.mpf(self.epsilon) / (2 * mp.mpf(self.eta)))

    @property
    def nome_qt2(self):
        return mp.e ** (-mp.mpf(self.epsilon) / (2 * self.eta_prime))


def _exchange_relation(name):
    for rel in relation_catalog(mode="canonical"):
        if rel.rel_id == name:
            if rel.kind != "exchange":
                raise StructuralError(
                    "%s is not an exchange relation; no structure-function limit" % name
                )
            return rel
    raise StructuralError("unknown relation %r" % (name,))


def _factor_affine_shift(tf, c):
    if tf.orient != 1:
        raise StructuralError(
            "mixed-orientation display factors have no scaling-limit target"
        )
    shift = tf.p_shift + tf.c_shift * c
    return mp.mpf(shift.numerator) / shift.denominator


def trig_structure_function(name, u_minus_v, *, eta, hbar, c=1, digits=30):
    """The sine-ratio structure function of the once-degenerate algebra.

    Derived factor-by-factor from the canonical elliptic catalog: a theta
    factor with argument x*p^a on base q^2 becomes sin(2 pi eta (u-v-a*hbar)),
    with eta' replacing eta on base qt^2; the overall sign survives and the
    p^{+-1} prefactor drops (p -> 1).
    """
    rel = _exchange_relation(name)
    f = rel.structure_function
    with workdps(digits + 10):
        s = mp.mpc(u_minus_v)
        hb = mp.mpf(hbar)
        etap = eta_prime(eta, hbar, c)
        scales = {"q2": 2 * mp.pi * mp.mpf(eta), "qt2": 2 * mp.pi * etap}
        acc = mp.mpc(f.sign)
        floor = mp.mpf(10) ** (2 - digits)
        for tf in f.factors:
            shift = _factor_affine_shift(tf, c)
            val = mp.sin(scales[tf.base] * (s - shift * hb))
            if tf.power == -1 and abs(val) < floor:
                raise PoleError("sine denominator vanishes", factor=tf)
            acc = acc * val if tf.power == 1 else acc / val
        return acc


def rational_structure_function(name, u_minus_v, hbar, c=1, digits=30):
    """The eta -> 0 limit: each sine replaced by its affine argument."""
    rel = _exchange_relation(name)
    f = rel.structure_function
    with workdps(digits + 10):
        s = mp.mpc(u_minus_v)
        hb = mp.mpf(hbar)
        acc = mp.mpc(f.sign)
        floor = mp.mpf(10) ** (2 - digits)
        for tf in f.factors:
            shift = _factor_affine_shift(tf, c)
            val = s - shift * hb
            if tf.power == -1 and abs(val) < floor:
                raise PoleError("rational denominator vanishes", factor=tf)
            acc = acc * val if tf.power == 1 else acc / val
        return acc


def ef_trig_data(hbar, c=1):
    """Degenerate data of the {E, F} relation.

    The delta supports and the H^{+-} argument shifts follow exactly from
    the elliptic relation under the re-parameterization (support x = p^{-c}
    maps to u-v = c*hbar, and argument factors p^{c/2} map to +c*hbar/2).
    The displayed coefficient 1/(2 hbar) mixes the limit of the elliptic
    prefactor (p^{1/2}+p^{-1/2})^{-1} -> 1/2 with a conventional
    normalization of the additive delta function; the mapping of the
    multiplicative delta onto delta(u-v -+ c hbar) has no canonical scale,
    so the 1/hbar part is recorded as display bookkeeping, not derived.
    """
    hb = mp.mpf(hbar)
    if hb == 0:
        raise DomainError("hbar must be nonzero")
    cc = mp.mpf(c)
    return {
        "relation": "EF",
        "coefficient_display": "1/(2*hbar)",
        "coefficient_value": 1 / (2 * hb),
        "elliptic_prefactor_limit": mp.mpf("0.5"),
        "delta_supports": (cc * hb, -cc * hb),
        "h_plus_argument": "v + hbar*c/2",
        "h_minus_argument": "u + hbar*c/2",
    }


def ef_rational_data(hbar, c=1):
    """The same data for the eta -> 0 double degeneration.

    The source text notes a sign difference between the two delta terms in
    this regime without fixing a convention; it is tied to the H^- -> -H^-
    rescaling freedom, so we surface it as a flag instead of choosing.
    """
    data = ef_trig_data(hbar, c)
    data = dict(data)
    data["sign_difference_flagged"] = True
    data["note"] = (
        "relative sign of the two delta terms differs between the trigonometric "
        "and rational presentations; equivalent to the H^- rescaling freedom"
    )
    return data


def half_period_factor_counts(name):
    """Factor counts per theta base; each base's count is even, so shifting
    u-v by the half period 1/(2 eta) (resp. 1/(2 eta')) leaves the ratio
    invariant: every sine on that base flips sign."""
    rel = _exchange_relation(name)
    counts = {"q2": 0, "qt2": 0}
    for tf in rel.structure_function.factors:
        counts[tf.base] += 1
    signs = {base: (-1) ** n for base, n in counts.items()}
    return counts, signs


def limit_check(name, u_minus_v, epsilons=EPSILON_LADDER, *, eta, hbar, c=1,
                digits=30, target_name=None):
    """Convergence of the elliptic structure function to its trig limit.

    Evaluates the canonical elliptic structure function at each epsilon of
    a decreasing ladder, under the documented nome convention, against the
    trigonometric target (by default the same relation; passing a different
    target_name gives a negative control).  Reports the error sequence,
    empirical convergence orders from successive ratios, and the measured
    elliptic/trig prefactor ratios.
    """
    epsilons = tuple(float(e) for e in epsilons)
    if len(epsilons) < 3:
        raise DomainError("need at least three epsilon values")
    if any(e <= 0 for e in epsilons):
        raise DomainError("epsilon values must be positive")
    if any(a <= b for a, b in zip(epsilons, epsilons[1:])):
        raise DomainError("epsilon ladder must be strictly decreasing")
    rel = _exchange_relation(name)
    f = rel.structure_function
    with workdps(digits + 10):
        target = trig_structure_function(
            target_name or name, u_minus_v, eta=eta, hbar=hbar, c=c, digits=digits
        )
        s = mp.mpc(u_minus_v)
        etap = eta_prime(eta, hbar, c)
        errors = []
        ratios = []
        for eps in epsilons:
            eps_mp = mp.mpf(eps)
            p = mp.e ** (eps_mp * mp.mpf(hbar))
            x = mp.e ** (-eps_mp * s)
            bases = {
                "q2": mp.e ** (-eps_mp / (2 * mp.mpf(eta))),
                "qt2": mp.e ** (-eps_mp / (2 * etap)),
            }
            value = eval_structure_function(f, x, None, p, c, digits, bases=bases)
            errors.append(float(abs(value - target)))
            ratios.append(mp.nstr(value / target, 12))
        orders = []
        for (e0, e1), (x0, x1) in zip(zip(errors, errors[1:]), zip(epsilons, epsilons[1:])):
            if e1 == 0:
                orders.append(float("inf"))
            else:
                orders.append(float(mp.log(e0 / e1) / mp.log(mp.mpf(x0) / mp.mpf(x1))))
        monotone = all(a > b for a, b in zip(errors, errors[1:]))
        # a degenerate-to-exact case (e.g. the H blocks at c = 0 cancel to 1
        # on both sides) has an identically-vanishing error ladder
        floor = float(mp.mpf(10) ** (5 - digits))
        exact = all(e <= floor for e in errors)
        if exact:
            verdict = "pass"
        else:
            verdict = "pass" if monotone and orders and min(orders) >= 0.8 else "fail"
    return {
        "check": "scaling-limit",
        "name": name,
        "target": target_name or name,
        "params": {
            "eta": float(eta),
            "hbar": float(hbar),
            "c": c,
            "u_minus_v": str(u_minus_v),
            "digits": digits,
        },
        "nome_convention": (
            "theta bases exp(-eps/(2*eta)) and exp(-eps/(2*eta')); "
            "x = exp(-eps*(u-v)), p = exp(eps*hbar)"
        ),
        "epsilons": list(epsilons),
        "errors": errors,
        "empirical_orders": orders,
        "prefactor_log": {
            "ratios": ratios,
            "note": "measured elliptic/trig ratio per epsilon; drift toward 1 "
                    "means no residual constant survives the modular bridge",
        },
        "monotone": monotone,
        "exact": exact,
        "verdict": verdict,
    }


def sample_limit_inputs(seed, count, c=1):
    """Pole-guarded random (u-v, eta, hbar) samples for limit checks.

    Keeps u-v away from every affine zero s = a*hbar of every factor of
    every exchange relation; the window sizes make the k != 0 sine zeros
    unreachable, so this single guard covers both sides of the comparison.
    """
    shifts = set()
    for name in LIMIT_NAMES:
        rel = _exchange_relation(name)
        for tf in rel.structure_function.factors:
            shifts.add(_factor_affine_shift(tf, c))
    rng = random.Random(("limit-samples", seed, count, c).__repr__())
    samples = []
    for _ in range(count):
        for _attempt in range(50):
            eta = rng.uniform(0.2, 0.35)
            hbar = rng.uniform(0.08, 0.18)
            s = rng.uniform(0.25, 0.65)
            if min(abs(s - float(a) * hbar) for a in shifts) >= 0.04:
                samples.append({"u_minus_v": s, "eta": eta, "hbar": hbar})
                break
        else:
            raise DomainError("could not find a pole-free sample point")
    return samples
