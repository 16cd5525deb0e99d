"""
Scanning along a ray of stability conditions
============================================

Follow ``sigma(beta', t omega')`` for ``1 <= t <= t_max`` and record where it
crosses walls through the fiber class.  The result is drawn as an SVG.
"""

import sys
from pathlib import Path

from mukai_kit import fmt_rational, k3_with_section
from mukai_kit.svg import render_scan
from mukai_kit.walls import WallProblem, chamber_signature, scan

X = k3_with_section()
prob = WallProblem(X, 2)
beta_p = (-1, 0)

hits = scan(prob, beta_p, r0=1, m=10, n=5, t_max=15)
for h in hits:
    print("t^2 =", h.t2, "wall", h.wall.key, "u =", h.wall.u)

out = Path(sys.argv[1] if len(sys.argv) > 1 else "wall_scan.svg")
out.write_text(render_scan([{"t2": fmt_rational(h.t2), "key": list(h.wall.key)} for h in hits], 15))
print("wrote", out)

## Far out, the chamber is pinned down by the fiber class
for n, m in ((10, 10**2), (10**2, 10**4), (10**3, 10**6)):
    sig = chamber_signature(prob, beta_p, 1, m, n)
    print(f"n={n:5d}: (nu+beta') coefficient {float(sig.nu_beta_coeff):.3e}")
