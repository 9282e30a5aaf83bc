"""Reduced radial problem: effective potential, turning points, orbit classes.

For angular momentum j the radial motion happens in the effective
potential

    W(r) = -k cot_k(r) + j**2 / (2 sin_k(r)**2)
         = -k u + (j**2/2) (u**2 + kappa),      u = cos_k(r)/sin_k(r),

whose landmark energies (circular minimum, and on the hyperbolic plane
the escape plateau -k*sqrt(-kappa)) split the (j, E) plane into the
orbit classes below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    CurvedKeplerError,
    DomainError,
    InfeasibleError,
    SingularityError,
)
from .ktrig import atan_k, cos_k, curvature_value, radial_limit, sin_k

#: relative half-width of the bands around landmark energies inside
#: which classify_orbit reports the boundary class itself
LANDMARK_RTOL = 1e-9

_TANGENCY_RTOL = 1e-12
_GRID_NODES = 256
# beyond this many curvature radii the hyperbolic potential is flat to
# double precision and a scan would see spurious roots of W - E
_HYP_SCAN_CAP = 16.0


class OrbitLabel(Enum):
    """Qualitative orbit classes of the curved Kepler problem."""

    CIRCLE = "circle"
    SPHERICAL_ELLIPSE_SUB = "spherical_ellipse_sub"
    SPHERICAL_ELLIPSE_EQUATORIAL = "spherical_ellipse_equatorial"
    SPHERICAL_ELLIPSE_SUPER = "spherical_ellipse_super"
    HYP_CIRCLE = "hyp_circle"
    HYP_ELLIPSE = "hyp_ellipse"
    HYP_HOROELLIPSE = "hyp_horoellipse"
    HYP_OPEN = "hyp_open"
    FLAT_ELLIPSE = "flat_ellipse"
    FLAT_PARABOLA = "flat_parabola"
    FLAT_HYPERBOLA = "flat_hyperbola"
    RADIAL_COLLISION = "radial_collision"


#: labels whose orbits stay in a bounded region of the surface
BOUNDED_LABELS = frozenset(
    {
        OrbitLabel.CIRCLE,
        OrbitLabel.SPHERICAL_ELLIPSE_SUB,
        OrbitLabel.SPHERICAL_ELLIPSE_EQUATORIAL,
        OrbitLabel.SPHERICAL_ELLIPSE_SUPER,
        OrbitLabel.HYP_CIRCLE,
        OrbitLabel.HYP_ELLIPSE,
        OrbitLabel.FLAT_ELLIPSE,
    }
)


@dataclass(frozen=True)
class OrbitClass:
    label: OrbitLabel
    bounded: bool


@dataclass(frozen=True)
class PotentialProfile:
    """Landmarks of W for one (kappa, k, j) triple.

    ``zero_crossings`` lists the radii where W itself vanishes.  The
    escape landmarks ``e_infinity``/``j_infinity`` exist only on the
    hyperbolic plane; ``notes`` says why the critical point is absent
    when it is.
    """

    kappa: float
    k: float
    j: float
    critical_radius: float | None
    critical_value: float | None
    zero_crossings: tuple[float, ...]
    e_cir: float | None
    e_infinity: float | None
    j_infinity: float | None
    notes: str | None = None


def _validate_coupling(k: float) -> float:
    if not (math.isfinite(k) and k > 0.0):
        raise DomainError(f"coupling k must be positive, got {k!r}")
    return float(k)


def w_eff(kappa, k: float, j: float, r: float) -> float:
    """Effective radial potential at radius r."""
    kap = curvature_value(kappa)
    k = _validate_coupling(k)
    if not math.isfinite(j):
        raise DomainError(f"angular momentum must be finite, got {j!r}")
    if not math.isfinite(r) or r <= 0.0:
        raise SingularityError(f"radius must be positive, got {r!r}")
    if r >= radial_limit(kap):
        raise DomainError(f"radius {r!r} outside the chart for kappa={kap!r}")
    u = cos_k(kap, r) / sin_k(kap, r)
    return -k * u + 0.5 * j * j * (u * u + kap)


def critical_point(kappa, k: float, j: float):
    """Location and value (r_min, w_min) of the minimum of W, if any.

    The sphere and the plane always have one for j != 0.  On the
    hyperbolic plane the centrifugal barrier flattens out once
    sqrt(-kappa) j**2 / k >= 1 and the minimum disappears; j = 0 has no
    barrier at all.  Both cases return None.
    """
    kap = curvature_value(kappa)
    k = _validate_coupling(k)
    if not math.isfinite(j):
        raise DomainError(f"angular momentum must be finite, got {j!r}")
    if j == 0.0:
        return None
    try:
        r_min = atan_k(kap, j * j / k)
    except DomainError:
        # hyperbolic saturation: tan_k never reaches j^2/k
        return None
    w_min = 0.5 * (kap * j * j - (k * k) / (j * j))
    return (r_min, w_min)


def escape_energy(kappa, k: float) -> float:
    """Plateau value of W at infinity on the hyperbolic plane, -k*sqrt(-kappa)."""
    kap = curvature_value(kappa)
    k = _validate_coupling(k)
    if kap >= 0.0:
        raise DomainError("the escape plateau exists only for kappa < 0")
    return -k * math.sqrt(-kap)


def escape_angular_momentum(kappa, k: float) -> float:
    """j above which W loses its minimum on the hyperbolic plane: j^2 = k/sqrt(-kappa)."""
    kap = curvature_value(kappa)
    k = _validate_coupling(k)
    if kap >= 0.0:
        raise DomainError("the escape angular momentum exists only for kappa < 0")
    return math.sqrt(k / math.sqrt(-kap))


def _bisect(g, a: float, b: float, ga: float) -> float:
    for _ in range(200):
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (ga < 0.0) != (gm < 0.0):
            b = mid
        else:
            a, ga = mid, gm
    return 0.5 * (a + b)


def turning_points(kappa, k: float, j: float, e: float) -> list[float]:
    """All radii with W(r) = e, sorted; a tangency is reported twice.

    Bracketing scan over a log-spaced grid (with the critical radius
    inserted as a node) followed by bisection to float resolution; each
    root is verified to satisfy |W(r) - e| < 1e-11 * max(1, |e|).
    """
    kap = curvature_value(kappa)
    k = _validate_coupling(k)
    if not (math.isfinite(j) and math.isfinite(e)):
        raise DomainError(f"need finite (j, e), got ({j!r}, {e!r})")

    def g(r):
        return w_eff(kap, k, j, r) - e

    crit = critical_point(kap, k, j)
    if crit is not None:
        r_m, w_m = crit
        if abs(e - w_m) <= _TANGENCY_RTOL * max(1.0, abs(e), abs(w_m)):
            return [r_m, r_m]
        if e < w_m:
            return []

    # inner edge: W -> +inf for j != 0, -inf for j = 0, so walk inward
    # until the sign is settled
    want_positive = j != 0.0
    r_lo = 1e-8 / (1.0 + math.sqrt(abs(e)))
    for _ in range(40):
        glo = g(r_lo)
        if (glo > 0.0) == want_positive and glo != 0.0:
            break
        r_lo *= 1e-2
    else:
        raise CurvedKeplerError("could not settle the inner scan edge")

    # outer edge by regime
    if kap > 0.0:
        r_hi = radial_limit(kap) * (1.0 - 1e-9)
    else:
        cap = _HYP_SCAN_CAP / math.sqrt(-kap) if kap < 0.0 else 1e15
        r_hi = max(1.0, 2.0 * (crit[0] if crit else j * j / k + 1.0))
        while r_hi < cap and g(r_hi) <= 0.0:
            r_hi *= 2.0
        r_hi = min(r_hi, cap)

    nodes = [float(x) for x in np.geomspace(r_lo, r_hi, _GRID_NODES)]
    if crit is not None and r_lo < crit[0] < r_hi:
        nodes.append(crit[0])
        nodes.sort()

    roots = []
    ga = g(nodes[0])
    for a, b in zip(nodes, nodes[1:]):
        gb = g(b)
        if ga == 0.0:
            roots.append(a)
        elif (ga < 0.0) != (gb < 0.0):
            roots.append(_bisect(g, a, b, ga))
        ga = gb
    if ga == 0.0:
        roots.append(nodes[-1])

    # drop duplicates from a root sitting exactly on a node
    out = []
    for r in sorted(roots):
        if out and abs(r - out[-1]) <= 1e-12 * max(1.0, r):
            continue
        out.append(r)
    for r in out:
        if abs(g(r)) >= 1e-11 * max(1.0, abs(e)):
            raise CurvedKeplerError(
                f"turning point verification failed at r={r!r}"
            )
    return out


def classify_orbit(
    kappa, k: float, j: float, e: float, landmark_rtol: float = LANDMARK_RTOL
) -> OrbitClass:
    """Qualitative orbit class of an (energy, angular momentum) pair.

    Classification is purely by landmark energies.  Energies within
    ``landmark_rtol`` (relative) of a landmark get the boundary class;
    energies below the attainable range raise InfeasibleError.
    """
    kap = curvature_value(kappa)
    k = _validate_coupling(k)
    if not (math.isfinite(j) and math.isfinite(e)):
        raise DomainError(f"need finite (j, e), got ({j!r}, {e!r})")

    if j == 0.0:
        return OrbitClass(OrbitLabel.RADIAL_COLLISION, bounded=False)

    crit = critical_point(kap, k, j)

    def near(value, landmark):
        return abs(value - landmark) <= landmark_rtol * max(1.0, abs(landmark))

    if crit is not None:
        w_m = crit[1]
        if near(e, w_m):
            label = OrbitLabel.HYP_CIRCLE if kap < 0.0 else OrbitLabel.CIRCLE
            return OrbitClass(label, bounded=True)
        if e < w_m:
            raise InfeasibleError(
                f"energy {e!r} below the potential minimum {w_m!r}"
            )

    if kap > 0.0:
        # every spherical orbit is a closed curve; the split is by how
        # it sits relative to the equator, i.e. by the sign of the
        # partial energy e_p = e - kappa j^2 / 2
        e_p = e - 0.5 * kap * j * j
        if abs(e_p) <= landmark_rtol * max(1.0, 0.5 * kap * j * j, abs(e)):
            return OrbitClass(OrbitLabel.SPHERICAL_ELLIPSE_EQUATORIAL, True)
        if e_p < 0.0:
            return OrbitClass(OrbitLabel.SPHERICAL_ELLIPSE_SUB, True)
        return OrbitClass(OrbitLabel.SPHERICAL_ELLIPSE_SUPER, True)

    if kap == 0.0:
        if near(e, 0.0) or e == 0.0:
            return OrbitClass(OrbitLabel.FLAT_PARABOLA, bounded=False)
        if e < 0.0:
            return OrbitClass(OrbitLabel.FLAT_ELLIPSE, bounded=True)
        return OrbitClass(OrbitLabel.FLAT_HYPERBOLA, bounded=False)

    e_inf = escape_energy(kap, k)
    if crit is None:
        # no minimum: W decreases monotonically to the plateau, so only
        # energies above it occur
        if e <= e_inf:
            raise InfeasibleError(
                f"energy {e!r} not attainable without a potential well "
                f"(plateau {e_inf!r})"
            )
        return OrbitClass(OrbitLabel.HYP_OPEN, bounded=False)
    if near(e, e_inf):
        return OrbitClass(OrbitLabel.HYP_HOROELLIPSE, bounded=False)
    if e < e_inf:
        return OrbitClass(OrbitLabel.HYP_ELLIPSE, bounded=True)
    return OrbitClass(OrbitLabel.HYP_OPEN, bounded=False)


def potential_profile(kappa, k: float, j: float) -> PotentialProfile:
    """All landmarks of W for (kappa, k, j) in one record."""
    kap = curvature_value(kappa)
    k = _validate_coupling(k)
    crit = critical_point(kap, k, j)
    if crit is None:
        if j == 0.0:
            notes = "no centrifugal barrier: potential is monotone"
        else:
            notes = "centrifugal term saturates: no minimum"
        r_min = w_min = None
    else:
        r_min, w_min = crit
        notes = None
    if kap < 0.0:
        e_inf = escape_energy(kap, k)
        j_inf = escape_angular_momentum(kap, k)
    else:
        e_inf = j_inf = None
    return PotentialProfile(
        kappa=kap,
        k=k,
        j=j,
        critical_radius=r_min,
        critical_value=w_min,
        zero_crossings=tuple(turning_points(kap, k, j, 0.0)),
        e_cir=w_min,
        e_infinity=e_inf,
        j_infinity=j_inf,
        notes=notes,
    )
