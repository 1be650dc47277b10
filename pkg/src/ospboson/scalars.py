"""Exact scalars, high-precision complex numbers, and deterministic samplers.

Two coefficient domains are used throughout the package:

* exact rationals (``fractions.Fraction``) for series identities that must
  hold coefficient-by-coefficient, and
* arbitrary-precision complex numbers (``mpmath.mpc``) for evaluating
  infinite products and theta functions at sample points.

Identities in the deformation parameters (q, p) are checked by substituting
exact rational values drawn from a seeded sampler rather than by symbolic
bivariate arithmetic.  Because half-integer powers of p occur in the level-1
currents, the sampler draws sqrt(p) as the primitive rational and squares it,
so p**(1/2) stays inside the rational field.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath as mp

from .errors import DomainError

__all__ = [
    "ExactScalar",
    "scalar_to_str",
    "scalar_from_str",
    "mpc_to_str",
    "sample_parameters",
    "sample_annulus_point",
    "workdps",
]

ExactScalar = Fraction


def scalar_to_str(x):
    """Serialize an exact scalar as a ``num/den`` string."""
    f = Fraction(x)
    return "%d/%d" % (f.numerator, f.denominator)


def scalar_from_str(s):
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def mpc_to_str(value, digits):
    """Fixed-precision decimal serialization with an explicit digits field."""
    with mp.workdps(digits):
        v = mp.mpc(value)
        return {"re": mp.nstr(v.real, digits), "im": mp.nstr(v.imag, digits), "digits": digits}


def workdps(digits):
    """mpmath working-precision context; callers never mutate global state."""
    if digits < 10:
        raise DomainError("need at least 10 working digits, got %d" % digits)
    return mp.workdps(digits)


def sample_parameters(seed, count=3):
    """Seeded exact rational samples of the deformation parameters.

    Returns ``count`` triples (q, p, sqrt_p) with q, sqrt_p rational in a
    window that keeps every infinite product in the package absolutely
    convergent and well-conditioned: q, sqrt_p in [1/5, 3/4], q != p,
    q*p != 1.
    """
    rng = random.Random(("params", seed).__repr__())
    out = []
    seen = set()
    while len(out) < count:
        q = Fraction(rng.randint(12, 45), 60)
        r = Fraction(rng.randint(12, 45), 60)  # sqrt(p)
        p = r * r
        if q == p or q * p == 1:
            continue
        if (q, p) in seen:
            continue
        seen.add((q, p))
        out.append((q, p, r))
    return out


def sample_annulus_point(rng, digits, rmin=0.1, rmax=0.9):
    """One uniform-in-annulus complex sample, |x| in [rmin, rmax]."""
    with mp.workdps(digits):
        # uniform area density: r^2 uniform between the squared radii
        u = rng.random()
        r = mp.sqrt(rmin * rmin + u * (rmax * rmax - rmin * rmin))
        phi = mp.mpf(2) * mp.pi * rng.random()
        return mp.mpc(r * mp.cos(phi), r * mp.sin(phi))
