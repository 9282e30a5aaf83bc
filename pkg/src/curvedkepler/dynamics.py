"""Curved Kepler dynamics: equations of motion, first integrals, integrator.

States are points (r, phi, v_r, v_phi) of the tangent bundle in geodesic
polar coordinates.  The Kepler potential on curvature kappa is
U(r) = -k cos_k(r)/sin_k(r); its gradient k/sin_k(r)**2 makes the flux
through geodesic circles constant, exactly like the inverse-square law
in the plane.

The integrator is an adaptive embedded Runge-Kutta 5(4) pair
(Dormand-Prince coefficients) with a quartic dense-output interpolant,
step rejection on conserved-quantity spikes, and collision termination
for radial orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DomainError,
    InfeasibleError,
    SingularityError,
    StiffnessError,
)
from .geometry import PolarPoint
from .ktrig import atan_k, cos_k, curvature_value, radial_limit, sin_k

COLLISION_RADIUS = 1e-10
# below this radius a step-size underflow is interpreted as reaching the
# center: double precision cannot track the fall all the way to 1e-10
_COLLISION_SOFT = 1e-4

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class PhaseState:
    """Point (r, phi, v_r, v_phi) of the tangent bundle."""

    r: float
    phi: float
    v_r: float
    v_phi: float

    def __post_init__(self):
        vals = (self.r, self.phi, self.v_r, self.v_phi)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"phase state must be finite, got {vals!r}")

    def point(self) -> PolarPoint:
        return PolarPoint(self.r, self.phi)


@dataclass(frozen=True)
class KeplerParams:
    """Curvature and coupling of the attractive Kepler problem."""

    kappa: float
    k: float

    def __post_init__(self):
        object.__setattr__(self, "kappa", curvature_value(self.kappa))
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise DomainError(f"coupling k must be positive, got {self.k!r}")


@dataclass(frozen=True)
class Momenta:
    """Noether momenta of the two translation-like flows and the rotation."""

    p1: float
    p2: float
    j: float


@dataclass(frozen=True)
class ConservedSet:
    """Every first integral of a Kepler state in one record."""

    e: float
    j: float
    e_p: float
    i3: float
    i4: float

    @classmethod
    def from_state(cls, state: PhaseState, params: KeplerParams) -> "ConservedSet":
        mom = momenta(params.kappa, state)
        e = energy(state, params)
        e_p = e - 0.5 * params.kappa * mom.j * mom.j
        i3, i4 = runge_lenz(params.kappa, state, params)
        return cls(e=e, j=mom.j, e_p=e_p, i3=i3, i4=i4)


def _check_radius_interior(kappa: float, r: float) -> float:
    if not math.isfinite(r) or r <= 0.0:
        raise SingularityError(f"radius must be positive, got {r!r}")
    if r >= radial_limit(kappa):
        raise DomainError(f"radius {r!r} outside the chart for kappa={kappa!r}")
    return r


def kepler_potential(params: KeplerParams, r: float) -> float:
    """Attractive Kepler potential -k cos_k(r)/sin_k(r).

    Evaluated in cotangent form so the equator (kappa > 0) is an
    ordinary zero instead of a tangent pole.
    """
    kappa = params.kappa
    r = _check_radius_interior(kappa, r)
    c = cos_k(kappa, r)
    if kappa > 0.0 and abs(c) < 1e-15:
        # r sits within a couple of ulps of the equator radius
        # pi/(2 sqrt(kappa)); the true cotangent there is below double
        # resolution, so report the crossing value itself
        return 0.0
    return -params.k * c / sin_k(kappa, r)


def kepler_potential_gradient(params: KeplerParams, r: float) -> float:
    """dU/dr = k / sin_k(r)**2 (always positive: the force pulls inward)."""
    kappa = params.kappa
    r = _check_radius_interior(kappa, r)
    s = sin_k(kappa, r)
    return params.k / (s * s)


def gauss_law_flux(params: KeplerParams, r: float) -> float:
    """Flux 4*pi*sin_k(r)**2 * U'(r) through the geodesic circle of radius r.

    Constant and equal to 4*pi*k for every admissible r: this is what
    singles out the cotangent potential as the curved point source.
    """
    kappa = params.kappa
    r = _check_radius_interior(kappa, r)
    s = sin_k(kappa, r)
    return FOUR_PI * (s * s) * kepler_potential_gradient(params, r)


def eom_rhs(state: PhaseState, params: KeplerParams):
    """Right-hand side (dr, dphi, dv_r, dv_phi) of the Kepler equations."""
    kappa = params.kappa
    r = _check_radius_interior(kappa, state.r)
    s = sin_k(kappa, r)
    c = cos_k(kappa, r)
    f_r = s * c * state.v_phi**2 - params.k / (s * s)
    f_phi = -2.0 * (c / s) * state.v_r * state.v_phi
    return (state.v_r, state.v_phi, f_r, f_phi)


def momenta(kappa, state: PhaseState) -> Momenta:
    """Noether momenta P1, P2 and the angular momentum J = sin_k(r)^2 v_phi."""
    k = curvature_value(kappa)
    s = sin_k(k, state.r)
    c = cos_k(k, state.r)
    cs = c * s
    cphi, sphi = math.cos(state.phi), math.sin(state.phi)
    p1 = cphi * state.v_r - cs * sphi * state.v_phi
    p2 = sphi * state.v_r + cs * cphi * state.v_phi
    j = s * s * state.v_phi
    return Momenta(p1=p1, p2=p2, j=j)


def kinetic_energy(kappa, state: PhaseState) -> float:
    """T = (v_r**2 + sin_k(r)**2 v_phi**2) / 2."""
    k = curvature_value(kappa)
    s = sin_k(k, state.r)
    return 0.5 * (state.v_r**2 + s * s * state.v_phi**2)


def energy(state: PhaseState, params: KeplerParams, potential=None) -> float:
    """Total energy T + U.  ``potential`` overrides the Kepler default."""
    u = kepler_potential(params, state.r) if potential is None else potential(state.r)
    return kinetic_energy(params.kappa, state) + u


def runge_lenz(kappa, state: PhaseState, params: KeplerParams):
    """The two Runge-Lenz-type integrals (i3, i4) of the curved Kepler flow."""
    k = curvature_value(kappa)
    mom = momenta(k, state)
    i3 = mom.p2 * mom.j - params.k * math.cos(state.phi)
    i4 = mom.p1 * mom.j + params.k * math.sin(state.phi)
    return (i3, i4)


def killing_fields(kappa, p: PolarPoint):
    """Components of the three Killing fields at p in the (d/dr, d/dphi) basis.

    Returns (Y1, Y2, YJ).  The polar chart is singular at r = 0 where the
    angular components blow up.
    """
    k = curvature_value(kappa)
    if p.r == 0.0:
        raise SingularityError("Killing fields in polar components need r > 0")
    cot = cos_k(k, p.r) / sin_k(k, p.r)
    cphi, sphi = math.cos(p.phi), math.sin(p.phi)
    y1 = (cphi, -cot * sphi)
    y2 = (sphi, cot * cphi)
    yj = (0.0, 1.0)
    return (y1, y2, yj)


def separable_integrals(kappa, state: PhaseState, f: Callable, g: Callable):
    """Integrals (i1, i2) of a separable potential U = F(r) + G(phi)/sin_k(r)^2.

    i1 = p1^2 + p2^2 + 2F + 2G/tan_k(r)^2 and i2 = j^2 + 2G; together
    they split the energy as 2E = i1 + kappa*i2.
    """
    k = curvature_value(kappa)
    r = _check_radius_interior(k, state.r)
    mom = momenta(k, state)
    cot = cos_k(k, r) / sin_k(k, r)
    g_val = g(state.phi)
    i1 = mom.p1**2 + mom.p2**2 + 2.0 * f(r) + 2.0 * g_val * cot * cot
    i2 = mom.j**2 + 2.0 * g_val
    return (i1, i2)


def circular_state(params: KeplerParams, j: float, phi: float = 0.0) -> PhaseState:
    """State of the circular orbit with angular momentum j.

    The circular radius solves tan_k(r) = j**2/k; on the hyperbolic plane
    it exists only below the escape angular momentum, otherwise the
    underlying inverse raises :class:`DomainError`.
    """
    if j == 0.0:
        raise InfeasibleError("circular orbits need nonzero angular momentum")
    r = atan_k(params.kappa, j * j / params.k)
    s = sin_k(params.kappa, r)
    return PhaseState(r=r, phi=phi, v_r=0.0, v_phi=j / (s * s))


# ----------------------------------------------------------------------
# Dormand-Prince 5(4) with dense output
# ----------------------------------------------------------------------

_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
)
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = (
    35.0 / 384.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
)
# difference between the 5th- and 4th-order weights (7 stages, FSAL)
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)
# quartic dense-output matrix (stage x theta-power)
_P = (
    (
        1.0,
        -8048581381.0 / 2820520608.0,
        8663915743.0 / 2820520608.0,
        -12715105075.0 / 11282082432.0,
    ),
    (0.0, 0.0, 0.0, 0.0),
    (
        0.0,
        131558114200.0 / 32700410799.0,
        -68118460800.0 / 10900136933.0,
        87487479700.0 / 32700410799.0,
    ),
    (
        0.0,
        -1754552775.0 / 470086768.0,
        14199869525.0 / 1410260304.0,
        -10690763975.0 / 1880347072.0,
    ),
    (
        0.0,
        127303824393.0 / 49829197408.0,
        -318862633887.0 / 49829197408.0,
        701980252875.0 / 199316789632.0,
    ),
    (
        0.0,
        -282668133.0 / 205662961.0,
        2019193451.0 / 616988883.0,
        -1453857185.0 / 822651844.0,
    ),
    (0.0, 40617522.0 / 29380423.0, -110615467.0 / 29380423.0, 69997945.0 / 29380423.0),
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_SPIKE_FACTOR = 10.0
# local errors are controlled this far below the requested tolerance so
# that global drift over long runs lands near the tolerance itself
_DRIFT_MARGIN = 0.1


class Trajectory:
    """Result of an adaptive integration.

    Stores the accepted step endpoints (``times``, ``states``) and, when
    dense output was requested, a quartic interpolant per step that
    :meth:`state_at` and :meth:`first_crossing` evaluate.  Instances are
    immutable by convention: nothing in the package mutates them after
    construction, so they can be shared freely across threads.
    """

    def __init__(self, kappa, times, states, dense=None, event=None, event_time=None):
        self.kappa = kappa
        self.times = np.asarray(times, dtype=float)
        self.states = np.asarray(states, dtype=float)
        self.event = event
        self.event_time = event_time
        self._dense = dense

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    def __len__(self) -> int:
        return len(self.times)

    def final_state(self) -> PhaseState:
        r, phi, v_r, v_phi = self.states[-1]
        return PhaseState(r, phi, v_r, v_phi)

    def state_at(self, t: float) -> PhaseState:
        """Dense-output state at any time inside the integrated span."""
        if self._dense is None:
            raise DomainError("trajectory was integrated without dense output")
        if not (self.times[0] <= t <= self.times[-1]):
            raise DomainError(
                f"t={t!r} outside the integrated span "
                f"[{self.times[0]!r}, {self.times[-1]!r}]"
            )
        idx = int(np.searchsorted(self.times, t, side="right")) - 1
        idx = min(max(idx, 0), len(self._dense) - 1)
        t0, h, y0, d = self._dense[idx]
        theta = (t - t0) / h
        out = []
        for i in range(4):
            poly = theta * (d[0][i] + theta * (d[1][i] + theta * (d[2][i] + theta * d[3][i])))
            out.append(y0[i] + h * poly)
        return PhaseState(out[0], out[1], out[2], out[3])

    def sample(self, t_grid: Sequence[float]) -> np.ndarray:
        """Dense states at each time of t_grid, as an (n, 4) array."""
        return np.array(
            [
                (s.r, s.phi, s.v_r, s.v_phi)
                for s in (self.state_at(float(t)) for t in t_grid)
            ]
        )

    def first_crossing(self, func, t_lo=None, t_hi=None) -> float | None:
        """First time in [t_lo, t_hi] where func(t, state) crosses zero.

        Scans accepted steps for a sign change, then bisects on the dense
        interpolant.  Returns None if no crossing is found.
        """
        if self._dense is None:
            raise DomainError("event queries need dense output")
        t_lo = self.times[0] if t_lo is None else t_lo
        t_hi = self.times[-1] if t_hi is None else t_hi
        prev_t = None
        prev_g = None
        for t, row in zip(self.times, self.states):
            if t < t_lo or t > t_hi:
                continue
            g = func(t, PhaseState(*row))
            if prev_g is not None and (g == 0.0 or (prev_g < 0.0) != (g < 0.0)):
                a, b = prev_t, t
                ga = prev_g
                for _ in range(200):
                    mid = 0.5 * (a + b)
                    gm = func(mid, self.state_at(mid))
                    if gm == 0.0:
                        return mid
                    if (ga < 0.0) != (gm < 0.0):
                        b = mid
                    else:
                        a, ga = mid, gm
                    if b - a <= 1e-14 * max(1.0, abs(a)):
                        break
                return 0.5 * (a + b)
            prev_t, prev_g = t, g
        return None


def _initial_step(rhs, y0, f0, t_end, rtol, atol):
    scale = [atol + rtol * abs(v) for v in y0]
    d0 = math.sqrt(sum((y / s) ** 2 for y, s in zip(y0, scale)) / 4.0)
    d1 = math.sqrt(sum((f / s) ** 2 for f, s in zip(f0, scale)) / 4.0)
    h0 = 1e-6 if d0 < 1e-5 or d1 < 1e-5 else 0.01 * d0 / d1
    y1 = tuple(y + h0 * f for y, f in zip(y0, f0))
    try:
        f1 = rhs(*y1)
    except (ValueError, OverflowError, ZeroDivisionError):
        return min(h0 * 1e-3, t_end)
    d2 = (
        math.sqrt(sum(((a - b) / s) ** 2 for a, b, s in zip(f1, f0, scale)) / 4.0)
        / h0
    )
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, t_end)


def _integrate_adaptive(
    rhs,
    y0,
    t_end,
    tol,
    kappa,
    invariants=None,
    dense=False,
    r_max=None,
    max_steps=5_000_000,
):
    """Generic DOPRI5(4) driver on 4-component float tuples.

    ``tol`` is a trajectory-accuracy target, not a per-step bound: the
    controller holds each local error an order of magnitude below it so
    that drift accumulated over thousands of steps stays near ``tol``
    instead of ``steps * tol``.

    ``invariants`` maps a state tuple to conserved values; a step that
    moves any of them by more than 10x the tolerance (relative) is
    rejected and retried at half the step, which keeps isolated spikes
    near close approaches out of the output.
    """
    rtol = atol = _DRIFT_MARGIN * tol
    t = 0.0
    y = tuple(map(float, y0))
    try:
        f = rhs(*y)
    except (ValueError, OverflowError, ZeroDivisionError) as exc:
        raise SingularityError(f"right-hand side failed at the initial state: {exc}")
    inv0 = invariants(*y) if invariants is not None else None

    times = [0.0]
    states = [y]
    dense_segs = [] if dense else None
    event = None
    event_time = None

    h = _initial_step(rhs, y, f, t_end, rtol, atol)
    steps = 0
    while t < t_end:
        if steps > max_steps:
            raise StiffnessError(f"step budget exhausted after {steps} steps")
        h = min(h, t_end - t)
        if h < 1e-14 * max(1.0, abs(t)):
            if y[0] < _COLLISION_SOFT and y[2] < 0.0:
                event, event_time = "collision", t
                break
            raise StiffnessError(f"step size underflow at t={t!r} (h={h!r})")
        steps += 1

        bad_stage = False
        try:
            k1 = f
            y2 = tuple(y[i] + h * _A21 * k1[i] for i in range(4))
            k2 = rhs(*y2)
            y3 = tuple(y[i] + h * (_A31 * k1[i] + _A32 * k2[i]) for i in range(4))
            k3 = rhs(*y3)
            y4 = tuple(
                y[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
                for i in range(4)
            )
            k4 = rhs(*y4)
            y5 = tuple(
                y[i]
                + h * (_A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i] + _A54 * k4[i])
                for i in range(4)
            )
            k5 = rhs(*y5)
            y6 = tuple(
                y[i]
                + h
                * (
                    _A61 * k1[i]
                    + _A62 * k2[i]
                    + _A63 * k3[i]
                    + _A64 * k4[i]
                    + _A65 * k5[i]
                )
                for i in range(4)
            )
            k6 = rhs(*y6)
            y_new = tuple(
                y[i]
                + h
                * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i] + _B5 * k5[i] + _B6 * k6[i])
                for i in range(4)
            )
            k7 = rhs(*y_new)
        except (ValueError, OverflowError, ZeroDivisionError):
            bad_stage = True

        if not bad_stage:
            stage_rs = (y2[0], y3[0], y4[0], y5[0], y6[0], y_new[0])
            if any(not math.isfinite(v) for v in y_new) or any(
                rr <= 0.0 for rr in stage_rs
            ):
                bad_stage = True
            elif r_max is not None and any(rr >= r_max for rr in stage_rs):
                bad_stage = True

        if bad_stage:
            h *= 0.5
            continue

        err_terms = tuple(
            h
            * (
                _E1 * k1[i]
                + _E3 * k3[i]
                + _E4 * k4[i]
                + _E5 * k5[i]
                + _E6 * k6[i]
                + _E7 * k7[i]
            )
            for i in range(4)
        )
        err = math.sqrt(
            sum(
                (err_terms[i] / (atol + rtol * max(abs(y[i]), abs(y_new[i])))) ** 2
                for i in range(4)
            )
            / 4.0
        )
        if err > 1.0:
            h *= max(_MIN_FACTOR, _SAFETY * err**-0.2)
            continue

        if invariants is not None:
            inv1 = invariants(*y_new)
            spike = any(
                abs(a - b) > _SPIKE_FACTOR * tol * max(1.0, abs(a))
                for a, b in zip(inv0, inv1)
            )
            if spike:
                h *= 0.5
                continue
            inv0 = inv1

        t_new = t + h
        times.append(t_new)
        states.append(y_new)
        if dense:
            ks = (k1, k2, k3, k4, k5, k6, k7)
            d = tuple(
                tuple(
                    sum(_P[s][m] * ks[s][i] for s in range(7)) for i in range(4)
                )
                for m in range(4)
            )
            dense_segs.append((t, h, y, d))

        if y_new[0] <= COLLISION_RADIUS:
            event, event_time = "collision", t_new
            break

        y, f, t = y_new, k7, t_new
        if err == 0.0:
            h *= _MAX_FACTOR
        else:
            h *= min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err**-0.2))

    return Trajectory(
        kappa,
        times,
        states,
        dense=dense_segs,
        event=event,
        event_time=event_time,
    )


def _kepler_rhs_factory(kappa: float, k: float):
    if kappa > 0.0:
        c = math.sqrt(kappa)

        def rhs(r, phi, vr, vphi):
            s = math.sin(c * r) / c
            cc = math.cos(c * r)
            inv_s2 = 1.0 / (s * s)
            return (
                vr,
                vphi,
                s * cc * vphi * vphi - k * inv_s2,
                -2.0 * (cc / s) * vr * vphi,
            )

    elif kappa == 0.0:

        def rhs(r, phi, vr, vphi):
            inv_r = 1.0 / r
            return (
                vr,
                vphi,
                r * vphi * vphi - k * inv_r * inv_r,
                -2.0 * inv_r * vr * vphi,
            )

    else:
        c = math.sqrt(-kappa)

        def rhs(r, phi, vr, vphi):
            s = math.sinh(c * r) / c
            cc = math.cosh(c * r)
            inv_s2 = 1.0 / (s * s)
            return (
                vr,
                vphi,
                s * cc * vphi * vphi - k * inv_s2,
                -2.0 * (cc / s) * vr * vphi,
            )

    return rhs


def _kepler_invariants_factory(kappa: float, k: float):
    def inv(r, phi, vr, vphi):
        s = sin_k(kappa, r)
        c = cos_k(kappa, r)
        e = 0.5 * (vr * vr + s * s * vphi * vphi) - k * c / s
        return (e, s * s * vphi)

    return inv


def integrate(
    state0: PhaseState,
    params: KeplerParams,
    t_end: float,
    tol: float = 1e-9,
    dense: bool = True,
) -> Trajectory:
    """Integrate the Kepler flow from state0 for a time span t_end.

    Parameters
    ----------
    state0 : PhaseState
        Initial condition; r must be strictly inside the chart.
    params : KeplerParams
        Curvature and coupling.
    t_end : float
        Length of the integration window (must be positive).
    tol : float
        Trajectory accuracy target, within [1e-13, 1e-6].  Local step
        errors are controlled an order of magnitude below it so drift
        over long runs stays near tol; 10x tol is the conserved-quantity
        spike threshold.
    dense : bool
        Keep the per-step interpolant so the result supports
        :meth:`Trajectory.state_at` and event queries.  Costs memory on
        long runs; endpoint data is always kept.

    A radial fall that reaches the collision radius truncates the
    trajectory and records the ``collision`` event instead of raising.
    """
    kappa = params.kappa
    _check_radius_interior(kappa, state0.r)
    if not (1e-13 <= tol <= 1e-6):
        raise DomainError(f"tol must lie in [1e-13, 1e-6], got {tol!r}")
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise DomainError(f"t_end must be positive and finite, got {t_end!r}")
    rhs = _kepler_rhs_factory(kappa, params.k)
    inv = _kepler_invariants_factory(kappa, params.k)
    y0 = (state0.r, state0.phi, state0.v_r, state0.v_phi)
    r_max = radial_limit(kappa)
    return _integrate_adaptive(
        rhs,
        y0,
        t_end,
        tol,
        kappa,
        invariants=inv,
        dense=dense,
        r_max=r_max if math.isfinite(r_max) else None,
    )


def integrate_separable(
    kappa,
    state0: PhaseState,
    f: Callable,
    df: Callable,
    g: Callable,
    dg: Callable,
    t_end: float,
    tol: float = 1e-9,
    dense: bool = False,
) -> Trajectory:
    """Integrate motion in a separable potential U = F(r) + G(phi)/sin_k(r)^2.

    ``f``/``df`` evaluate F and dF/dr, ``g``/``dg`` evaluate G and
    dG/dphi.  The conserved-spike guard watches the separability
    integrals (i1, i2) and the energy.
    """
    k = curvature_value(kappa)
    _check_radius_interior(k, state0.r)
    if not (1e-13 <= tol <= 1e-6):
        raise DomainError(f"tol must lie in [1e-13, 1e-6], got {tol!r}")

    def rhs(r, phi, vr, vphi):
        s = sin_k(k, r)
        c = cos_k(k, r)
        inv_s2 = 1.0 / (s * s)
        g_val = g(phi)
        # dU/dr = F' - 2 G cos/sin^3 ; dU/dphi = G'/sin^2
        f_r = s * c * vphi * vphi - (df(r) - 2.0 * g_val * c * inv_s2 / s)
        f_phi = -2.0 * (c / s) * vr * vphi - dg(phi) * inv_s2 * inv_s2
        return (vr, vphi, f_r, f_phi)

    def inv(r, phi, vr, vphi):
        state = PhaseState(r, phi, vr, vphi)
        i1, i2 = separable_integrals(k, state, f, g)
        s = sin_k(k, r)
        e = 0.5 * (vr * vr + s * s * vphi * vphi) + f(r) + g(phi) / (s * s)
        return (e, i1, i2)

    y0 = (state0.r, state0.phi, state0.v_r, state0.v_phi)
    r_max = radial_limit(k)
    return _integrate_adaptive(
        rhs,
        y0,
        t_end,
        tol,
        k,
        invariants=inv,
        dense=dense,
        r_max=r_max if math.isfinite(r_max) else None,
    )
