"""
Transporting stability parameters
=================================

The transform sends the charge at ``(beta, m(H + nf))`` to the charge at
``(beta', omega')`` up to the factor ``-i r0 m``.  Phases are compared
exactly, with no floating point.
"""

from fractions import Fraction

from mukai_kit import StabilityParams, k3_with_section, phase_cmp, z_hat
from mukai_kit.charge import act_scale_rot, hat_geo_check
from mukai_kit.fixtures import relative_fm
from mukai_kit.fm import stability_image

X = k3_with_section()
fm = relative_fm(X, r0=1)

img = stability_image(fm, m=5, n=3)
print("alpha: quarter turns", img.quarter_turns, "scale", img.scale)
print("omega' =", img.omega_prime)
for check in img.preconditions:
    print(f"  {check.name}: {check.passed}")
print("charge identity:", img.charge_identity)

## Point classes sit at phase 1
p = StabilityParams((0, 0), (1, 3))
z_pt = z_hat(X, p, X.rho())
z_o = z_hat(X, p, X.mukai_vector(X.one()))
print("Z(rho) =", z_pt, " Z(O) =", z_o, " cmp:", phase_cmp(z_pt, z_o))

## The C-action used above
print("exp(-pi i alpha) * 1 =", act_scale_rot(1, 5, 1))

## Charge identity behind the large volume limit, over Q(sqrt d)
print("hat/geo identity:", hat_geo_check(X, (Fraction(1, 3), 0), (1, 3), 2, X.one()))
