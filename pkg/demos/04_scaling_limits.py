"""Degeneration ladder: elliptic -> trigonometric -> rational.

The elliptic structure functions are evaluated on the scaling family
q = exp(eps/eta), p = exp(eps*hbar), x = exp(-eps(u-v)) and compared
against the sine ratios; the error should shrink linearly in eps.
Sending eta -> 0 afterwards collapses each sine to its affine argument.
"""

from mpmath import mp

from ospboson.degeneration import (
    LIMIT_NAMES,
    eta_prime,
    limit_check,
    rational_structure_function,
    trig_structure_function,
)

eta, hbar, s = 0.25, 0.12, 0.4

print("eta' at level 1:", mp.nstr(eta_prime(eta, hbar, 1), 10),
      " (1/eta' - 1/eta = hbar)")
print()

print("elliptic -> trig, default epsilon ladder:")
for name in LIMIT_NAMES:
    rep = limit_check(name, s, eta=eta, hbar=hbar, c=1)
    orders = ", ".join("%.3f" % o for o in rep["empirical_orders"])
    print("  %-5s errors %s  orders [%s]  -> %s"
          % (name, ["%.2e" % e for e in rep["errors"]], orders,
             rep["verdict"]))
print()

bad = limit_check("EE", s, eta=eta, hbar=hbar, c=1, target_name="FF")
print("negative control (EE against the FF target):", bad["verdict"])
print()

print("trig -> rational as eta -> 0 (EE at s=0.7, hbar=0.2):")
target = rational_structure_function("EE", 0.7, 0.2)
print("  rational value:", mp.nstr(target, 12))
for e in (0.1, 0.05, 0.025):
    t = trig_structure_function("EE", 0.7, eta=e, hbar=0.2)
    k = abs(t - target) / mp.mpf(e) ** 2
    print("  eta=%-6s trig=%s  K=|diff|/eta^2=%s"
          % (e, mp.nstr(t, 12), mp.nstr(k, 6)))
print()

prod = rational_structure_function("EE", 0.37, 0.11) * \
    rational_structure_function("FF", 0.37, 0.11)
print("rational EE * FF =", mp.nstr(prod, 12), " (unitary pair)")
