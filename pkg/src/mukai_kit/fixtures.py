"""Ready-made surfaces used throughout the tests and demos."""

from .lattice import SurfaceData


def k3_with_section(name: str = "K3 with section") -> SurfaceData:
    """Elliptic K3 with a section ``sigma``: basis ``(sigma, f)``, ``H = sigma + f``."""
    return SurfaceData(
        name,
        chi=2,
        gram=[[-2, 1], [1, 0]],
        f=(0, 1),
        H=(1, 1),
        K=(0, 0),
        basis_names=("sigma", "f"),
    )


def k3_with_a1_fiber(name: str = "K3 with section and I2 fiber") -> SurfaceData:
    """Basis ``(sigma, f, C)`` where ``C`` is the fiber component missed by the section."""
    return SurfaceData(
        name,
        chi=2,
        gram=[[-2, 1, 0], [1, 0, 0], [0, 0, -2]],
        f=(0, 1, 0),
        H=(1, 1, 0),
        K=(0, 0, 0),
        minus2_fiber_classes=((0, 0, 1),),
        basis_names=("sigma", "f", "C"),
    )


def relative_fm(X: SurfaceData, r0: int, b=None, beta0=None, beta_prime=None):
    """Transform for ``v0 = r0 f + b rho`` with the target taken as a copy of ``X``.

    ``b`` defaults to the smallest value keeping ``v0`` primitive and ``beta`` is
    solved from ``<e^beta, v0> = 0`` starting at ``beta0``.
    """
    from .fm import FMData

    if b is None:
        b = 0 if r0 == 1 else 1
    zero = tuple(0 for _ in range(X.ns_rank))
    beta = X.beta_solve(tuple(r0 * c for c in X.f), b, zero if beta0 is None else beta0)
    target = SurfaceData(
        X.name + " (dual)",
        chi=X.chi,
        gram=X.gram,
        f=X.f,
        H=X.H,
        K=X.K,
        minus2_fiber_classes=X.minus2_fiber_classes,
        integrality_scale_l=X.integrality_scale_l,
        basis_names=tuple(s + "'" for s in X.basis_names),
    )
    return FMData(X, target, r0, b, beta, zero if beta_prime is None else beta_prime)
