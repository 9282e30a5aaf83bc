"""Conics with a focus at the origin on constant-curvature surfaces.

Every curve Tan_k(r) = D / (1 + ecc cos(phi - axis)) is a conic with one
focus at the pole.  On the sphere D = tan_k(p) for a unique semi-latus
length p.  On the hyperbolic plane tan_k saturates at 1/sqrt(-kappa), so
the size parameter D needs three charts: a latus length p while
D < 1/sqrt(-kappa), a complementary "colatus" length p_tilde beyond it,
and the separatrix exactly at the saturation value.  Classification by
eccentricity then depends on the size chart: hyperbolic geometry splits
the flat parabola point e = 1 into a whole interval of parabolas fenced
by horoellipses below and horohyperbolas above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateError, DomainError, InfeasibleError
from .geometry import PolarPoint, geodesic_distance
from .ktrig import acot_k, atan_k, cos_k, curvature_value, radial_limit, sin_k, tan_k

#: relative half-width of the measure-zero classification boundaries
BOUNDARY_RTOL = 1e-10


class ConicFamily(Enum):
    """Size chart of a conic: which length parametrizes D."""

    LATUS = "latus"
    COLATUS = "colatus"
    SEPARATRIX = "separatrix"


class ConicLabel(Enum):
    CIRCLE = "circle"
    ELLIPSE = "ellipse"
    HOROELLIPSE = "horoellipse"
    PARABOLA = "parabola"
    EQUIPARABOLA = "equiparabola"
    HOROHYPERBOLA = "horohyperbola"
    HYPERBOLA = "hyperbola"
    LINE_PAIR = "line_pair"


class FocalKind(Enum):
    TWO_FOCI = "two_foci"
    FOCUS_LINE = "focus_line"


@dataclass(frozen=True)
class ConicSpec:
    """A conic: curvature, eccentricity and a size parameter.

    Exactly one of ``p`` (latus family), ``p_tilde`` (colatus family,
    hyperbolic plane only) or neither (separatrix, hyperbolic plane
    only) is set, matching ``family``.
    """

    kappa: float
    ecc: float
    family: ConicFamily
    p: float | None = None
    p_tilde: float | None = None

    def __post_init__(self):
        kap = curvature_value(self.kappa)
        object.__setattr__(self, "kappa", kap)
        if not self.ecc >= 0.0:
            raise DomainError(f"eccentricity must be >= 0, got {self.ecc!r}")
        if self.family is ConicFamily.LATUS:
            if self.p is None or not 0.0 < self.p < radial_limit(kap):
                raise DomainError(f"latus family needs 0 < p in range, got {self.p!r}")
            if self.p_tilde is not None:
                raise DomainError("latus family takes no p_tilde")
        elif self.family is ConicFamily.COLATUS:
            if kap >= 0.0:
                raise DomainError("colatus family exists only for kappa < 0")
            if self.p_tilde is None or not self.p_tilde > 0.0:
                raise DomainError(f"colatus family needs p_tilde > 0, got {self.p_tilde!r}")
            if self.p is not None:
                raise DomainError("colatus family takes no p")
        else:
            if kap >= 0.0:
                raise DomainError("the separatrix exists only for kappa < 0")
            if self.p is not None or self.p_tilde is not None:
                raise DomainError("the separatrix has no length parameter")

    @property
    def d(self) -> float:
        """Size parameter D of Tan_k(r) = D/(1 + ecc cos(phi))."""
        if self.family is ConicFamily.LATUS:
            return tan_k(self.kappa, self.p)
        if self.family is ConicFamily.COLATUS:
            return 1.0 / ((-self.kappa) * tan_k(self.kappa, self.p_tilde))
        return 1.0 / math.sqrt(-self.kappa)


@dataclass(frozen=True)
class ConicType:
    """Classified conic: table label plus the spherical sub-annotation.

    On the sphere every conic is an ellipse; ``higgs`` records whether it
    stays below the focus' equator ("sub"), touches it ("equatorial") or
    crosses into the far hemisphere ("super").
    """

    label: ConicLabel
    higgs: str | None = None


@dataclass(frozen=True)
class FocalElements:
    """Metric elements of a conic definition.

    Two-foci conics: ``half_separation`` = f (half the focal distance),
    ``half_axis`` = a (half the distance sum for ellipses, half the
    absolute difference for hyperbolas).  Focus-line conics use the
    analogous halves of the point-line data.  ``axis`` is the polar
    angle of the periastron direction; the second focus sits at
    (2f, axis + pi).
    """

    kind: FocalKind
    half_separation: float
    half_axis: float
    axis: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.half_separation) and self.half_separation >= 0.0):
            raise DomainError(
                f"half separation must be finite and >= 0, got {self.half_separation!r}"
            )
        if not (math.isfinite(self.half_axis) and self.half_axis > 0.0):
            raise DomainError(
                f"half axis must be finite and > 0, got {self.half_axis!r}"
            )

    @classmethod
    def two_foci(cls, f: float, a: float, axis: float = 0.0) -> "FocalElements":
        return cls(FocalKind.TWO_FOCI, f, a, axis)

    @classmethod
    def focus_line(cls, varphi: float, alpha: float, axis: float = 0.0) -> "FocalElements":
        return cls(FocalKind.FOCUS_LINE, varphi, alpha, axis)


def _near(x: float, target: float) -> bool:
    return abs(x - target) <= BOUNDARY_RTOL * max(1.0, abs(target))


def conic_from_dynamics(kappa, d: float, ecc: float) -> ConicSpec:
    """Conic of the orbit family with size D = d and eccentricity ecc.

    Solves the size chart: latus length when tan_k(p) = d has a
    solution, otherwise (hyperbolic plane, d beyond saturation) the
    complementary colatus length, or the separatrix at the saturation
    value exactly.
    """
    kap = curvature_value(kappa)
    if not (math.isfinite(d) and d > 0.0):
        raise DomainError(f"conic size must be positive and finite, got {d!r}")
    if not ecc >= 0.0:
        raise DomainError(f"eccentricity must be >= 0, got {ecc!r}")
    if kap >= 0.0:
        return ConicSpec(kap, ecc, ConicFamily.LATUS, p=atan_k(kap, d))
    sat = 1.0 / math.sqrt(-kap)
    if d / (1.0 + ecc) >= sat:
        raise DomainError(
            f"no periastron: d/(1+ecc) = {d / (1.0 + ecc)!r} does not stay "
            f"below the saturation length {sat!r}"
        )
    if d < sat:
        return ConicSpec(kap, ecc, ConicFamily.LATUS, p=atan_k(kap, d))
    if d == sat:
        return ConicSpec(kap, ecc, ConicFamily.SEPARATRIX)
    return ConicSpec(kap, ecc, ConicFamily.COLATUS, p_tilde=atan_k(kap, 1.0 / ((-kap) * d)))


def classify_conic(spec: ConicSpec) -> ConicType:
    """Eccentricity-interval classification of a conic.

    The thresholds depend on the size chart; measure-zero boundary
    classes (horoellipse, horohyperbola, flat parabola, equiparabola,
    spherical equatorial) are detected inside a relative band of
    ``BOUNDARY_RTOL`` because floating-point orbits never sit exactly on
    them.
    """
    kap = spec.kappa
    ecc = spec.ecc
    if math.isinf(ecc):
        return ConicType(ConicLabel.LINE_PAIR)
    if kap > 0.0:
        if ecc == 0.0:
            return ConicType(ConicLabel.CIRCLE)
        if _near(ecc, 1.0):
            return ConicType(ConicLabel.ELLIPSE, higgs="equatorial")
        return ConicType(ConicLabel.ELLIPSE, higgs="sub" if ecc < 1.0 else "super")
    if kap == 0.0:
        if ecc == 0.0:
            return ConicType(ConicLabel.CIRCLE)
        if _near(ecc, 1.0):
            return ConicType(ConicLabel.PARABOLA)
        if ecc < 1.0:
            return ConicType(ConicLabel.ELLIPSE)
        return ConicType(ConicLabel.HYPERBOLA)

    c = math.sqrt(-kap)
    if spec.family is ConicFamily.LATUS:
        t = c * tan_k(kap, spec.p)  # = tanh(c p), in (0, 1)
        lo, hi = 1.0 - t, 1.0 + t
        if ecc == 0.0:
            return ConicType(ConicLabel.CIRCLE)
        if _near(ecc, lo):
            return ConicType(ConicLabel.HOROELLIPSE)
        if ecc < lo:
            return ConicType(ConicLabel.ELLIPSE)
        if _near(ecc, hi):
            return ConicType(ConicLabel.HOROHYPERBOLA)
        if ecc > hi:
            return ConicType(ConicLabel.HYPERBOLA)
        if _near(ecc, equiparabola_ecc(spec)):
            return ConicType(ConicLabel.EQUIPARABOLA)
        return ConicType(ConicLabel.PARABOLA)
    if spec.family is ConicFamily.COLATUS:
        t = c * tan_k(kap, spec.p_tilde)
        hi = 1.0 + 1.0 / t
        if _near(ecc, hi):
            return ConicType(ConicLabel.HOROHYPERBOLA)
        if ecc > hi:
            return ConicType(ConicLabel.HYPERBOLA)
        if _near(ecc, equiparabola_ecc(spec)):
            return ConicType(ConicLabel.EQUIPARABOLA)
        return ConicType(ConicLabel.PARABOLA)
    # separatrix: the common p -> inf limit, parabolas up to ecc = 2
    if _near(ecc, 2.0):
        return ConicType(ConicLabel.HOROHYPERBOLA)
    if ecc > 2.0:
        return ConicType(ConicLabel.HYPERBOLA)
    return ConicType(ConicLabel.PARABOLA)


def equiparabola_ecc(spec: ConicSpec) -> float:
    """Eccentricity of the equiparabola sharing the conic's size chart.

    1/cos_k(p) in the latus chart and cos_k(p_tilde) in the colatus
    chart; equals sqrt(1 + kappa tan_k(p)**2) and degenerates to 1 (the
    unique parabola) on the flat plane.
    """
    if spec.family is ConicFamily.LATUS:
        return 1.0 / cos_k(spec.kappa, spec.p)
    if spec.family is ConicFamily.COLATUS:
        return cos_k(spec.kappa, spec.p_tilde)
    raise DegenerateError("the separatrix chart carries no equiparabola value")


def ecc_from_focal(kappa, fe: FocalElements) -> float:
    """Eccentricity from metric focal elements.

    sin_k(2f)/sin_k(2a) for two-foci conics, cos_k(2 varphi)/cos_k(2 alpha)
    for focus-line conics (identically 1 on the flat plane).
    """
    kap = curvature_value(kappa)
    if fe.kind is FocalKind.TWO_FOCI:
        den = sin_k(kap, 2.0 * fe.half_axis)
        # the exact zero (2a at the antipode on the sphere) lands on a
        # float residue ~1e-16, so degeneracy needs a snap window
        if abs(den) < 1e-14:
            raise DegenerateError(
                f"degenerate axis: sin_k(2a) = 0 at a = {fe.half_axis!r}"
            )
        return sin_k(kap, 2.0 * fe.half_separation) / den
    den = cos_k(kap, 2.0 * fe.half_axis)
    if abs(den) < 1e-14:
        raise DegenerateError(
            f"degenerate axis: cos_k(2 alpha) = 0 at alpha = {fe.half_axis!r}"
        )
    return cos_k(kap, 2.0 * fe.half_separation) / den


def focal_from_vertices(kappa, r_per: float, r_apo: float, axis: float = 0.0) -> FocalElements:
    """Two-foci elements of the conic with vertices at r_per and r_apo.

    Both vertices lie on the symmetry axis on opposite sides of the
    origin focus, so the focal half-separation and half-axis follow
    from plain lengths along one geodesic: f = (r_apo - r_per)/2,
    a = (r_per + r_apo)/2.
    """
    kap = curvature_value(kappa)
    if not math.isfinite(r_apo):
        raise InfeasibleError("unbounded orbit: no outer vertex, no focal elements")
    if not 0.0 < r_per <= r_apo:
        raise DomainError(f"need 0 < r_per <= r_apo, got {r_per!r}, {r_apo!r}")
    if r_apo >= radial_limit(kap):
        raise DomainError(
            f"outer vertex {r_apo!r} reaches the antipode bound {radial_limit(kap)!r}"
        )
    return FocalElements.two_foci(
        0.5 * (r_apo - r_per), 0.5 * (r_per + r_apo), axis=axis
    )


def verify_conic_definition(kappa, samples, fe: FocalElements, sign: str = "sum") -> float:
    """Max deviation of samples from the metric conic definition.

    For each sample point computes the geodesic distances d1, d2 to the
    origin focus and to the second focus, and returns
    max |(d1 + d2) - 2a| (sign="sum", ellipses) or max ||d1 - d2| - 2a|
    (sign="difference", hyperbolas).  The second focus sits on the
    symmetry axis at distance 2f: opposite the periastron (axis + pi)
    for a sum conic, through the periastron vertex (axis) for a
    difference conic, whose near branch bends around the origin focus.
    """
    kap = curvature_value(kappa)
    if len(samples) < 8:
        raise DomainError(f"need at least 8 sample points, got {len(samples)}")
    if sign not in ("sum", "difference"):
        raise DomainError(f"sign must be 'sum' or 'difference', got {sign!r}")
    origin = PolarPoint(0.0, 0.0)
    other_angle = fe.axis + math.pi if sign == "sum" else fe.axis
    other = PolarPoint(2.0 * fe.half_separation, other_angle)
    worst = 0.0
    for pt in samples:
        d1 = geodesic_distance(kap, pt, origin)
        d2 = geodesic_distance(kap, pt, other)
        combined = d1 + d2 if sign == "sum" else abs(d1 - d2)
        worst = max(worst, abs(combined - 2.0 * fe.half_axis))
    return worst


@dataclass(frozen=True)
class PeriastronFamily:
    """Size landmarks of the conics sharing one periastron radius.

    All entries are D values (tangents of latus lengths).  Growing the
    eccentricity at fixed periastron sweeps D upward from ``d_circle``;
    ``d_horoellipse`` and ``d_horohyperbola`` fence the parabola band
    (they coincide on the flat plane, where the parabola is unique).
    ``colatus_tangent`` is tan_k(p_tilde) at the horohyperbola landmark
    when that landmark lives in the colatus chart, else None.
    """

    kappa: float
    r_per: float
    d_circle: float
    d_horoellipse: float
    d_horohyperbola: float
    colatus_tangent: float | None

    @property
    def ecc_horoellipse(self) -> float:
        return self.d_horoellipse / self.d_circle - 1.0

    @property
    def ecc_horohyperbola(self) -> float:
        return self.d_horohyperbola / self.d_circle - 1.0

    @property
    def ecc_equiparabola(self) -> float:
        """Eccentricity of the family member that is an equiparabola.

        Solving ecc = 1/cos_k(p) with D = d_circle (1 + ecc) gives
        (1 - (cT)^2)/(1 + (cT)^2); on the flat plane this is 1, the
        parabola itself.
        """
        ct2 = -self.kappa * self.d_circle * self.d_circle
        return (1.0 - ct2) / (1.0 + ct2)

    @property
    def parabola_band_width(self) -> float:
        return self.d_horohyperbola - self.d_horoellipse


def periastron_family(kappa, r_per: float) -> PeriastronFamily:
    """Landmark D values of the conic family with periastron r_per.

    With D = Tan_k(r_per) (1 + ecc), the classification thresholds
    become D landmarks: D < 2T/(1 + cT) are ellipses, the parabola band
    runs up to 2T/(1 - cT) (c = sqrt(-kappa)), and everything above is a
    hyperbola.  On the flat plane both landmarks collapse to 2 r_per.
    """
    kap = curvature_value(kappa)
    if kap > 0.0:
        raise DomainError(
            "no landmark chain on the sphere: every eccentricity gives an ellipse"
        )
    if not (math.isfinite(r_per) and r_per > 0.0):
        raise DomainError(f"periastron radius must be positive and finite, got {r_per!r}")
    t = tan_k(kap, r_per)
    if kap == 0.0:
        return PeriastronFamily(kap, r_per, t, 2.0 * t, 2.0 * t, None)
    c = math.sqrt(-kap)
    ct = c * t  # = tanh(c r_per) < 1, so the guard below cannot trip
    if ct >= 1.0:
        raise DomainError(f"periastron tangent {t!r} reaches saturation {1.0 / c!r}")
    d_he = 2.0 * t / (1.0 + ct)
    d_hh = 2.0 * t / (1.0 - ct)
    # the horohyperbola landmark crosses into the colatus chart once
    # d_hh exceeds the saturation size 1/c
    colatus_tangent = (1.0 - ct) / (2.0 * c * c * t) if d_hh > 1.0 / c else None
    return PeriastronFamily(kap, r_per, t, d_he, d_hh, colatus_tangent)


def sample_conic(spec: ConicSpec, phi_grid) -> list[PolarPoint]:
    """Physical-branch points of the conic at the grid angles.

    Angles whose ray misses the curve (open conics past their
    asymptotes) are omitted; on the sphere every angle has a point and
    super-equatorial conics cross r = pi/(2 sqrt(kappa)) smoothly.
    """
    kap = spec.kappa
    d = spec.d
    asym = math.sqrt(-kap) if kap < 0.0 else 0.0
    out = []
    for phi in phi_grid:
        phi = float(phi)
        u = (1.0 + spec.ecc * math.cos(phi)) / d
        if kap <= 0.0 and u <= asym:
            continue
        out.append(PolarPoint(acot_k(kap, u), phi))
    return out
