"""
Mukai vectors on an elliptic K3 surface
=======================================

Pairings, exponentials and the beta-expansion on the lattice spanned by a
section and a fiber.
"""

from fractions import Fraction

from mukai_kit import CohVector, k3_with_section

X = k3_with_section()
print(X.name, "gram", X.gram)

## The Mukai pairing
one, pt = X.one(), X.rho()
print("<1, rho> =", X.pair(one, pt))
print("<H, f>   =", X.pair(CohVector.divisor(X.H), CohVector.divisor(X.f)))

## Exponentials are isotropic
beta = (Fraction(1, 2), -3)
e = X.exp(beta)
print("e^beta =", e, " <e^beta, e^beta> =", X.pair(e, e))

## Mukai vector of the structure sheaf
print("v(O_X) =", X.mukai_vector(one))

## beta-expansion: v = e^beta (r + pH + qf + D + a rho)
v = CohVector(2, (3, -1), 5)
ex = X.beta_expand(v, beta)
print("r, p, q, a =", ex.r, ex.p, ex.q, ex.a, " D =", ex.D)
assert X.reassemble(ex) == v

## The smallest positive value of (D.L)/(L^2)
for L in [(1, 3), (2, 6)]:
    print("delta_min", L, "=", X.delta_min(L))
