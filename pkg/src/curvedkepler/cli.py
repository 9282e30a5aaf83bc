"""Command-line front-end.

Subcommands: ``simulate`` (integrate an orbit and dump rows plus a
conserved-quantity drift report), ``classify`` (JSON record for a
(kappa, k, J, E) pair), ``potential-scan`` (CSV of the effective
potential with its landmark header), ``conic`` (sampled conic or a whole
fixed-periastron landmark family) and ``trig-check`` (randomized
self-test of the curvature-tagged trig kernel).

Exit codes: 0 ok, 2 configuration error, 3 infeasible physics (includes
a collision ending a simulated orbit), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .conics import classify_conic, conic_from_dynamics, periastron_family, sample_conic
from .dynamics import ConservedSet, KeplerParams, PhaseState, integrate
from .effective_potential import classify_orbit, potential_profile, turning_points, w_eff
from .errors import (
    CurvedKeplerError,
    DomainError,
    InfeasibleError,
    StiffnessError,
)
from .geometry import PolarPoint, to_ambient, to_poincare_disk
from .ktrig import atan_k, cos_k, curvature_value, radial_limit, sin_k, tan_k

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_NUMERICAL = 4

SCHEMA_VERSION = 1
OUTPUT_FORMATS = ("csv", "json")
CHARTS = ("polar", "ambient", "poincare_disk")

TRIG_CHECK_TOL = 1e-13


class ConfigError(Exception):
    """Anything wrong with flags or the config file (exit code 2)."""


def _fmt(x) -> str:
    """Serialize one numeric field: 17 significant digits round-trip."""
    return format(float(x), ".17g")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


# ----------------------------------------------------------------------
# charts
# ----------------------------------------------------------------------


def _chart_names(chart: str) -> tuple[str, ...]:
    if chart == "ambient":
        return ("chart_x", "chart_y", "chart_z")
    return ("chart_x", "chart_y")


def _chart_values(chart: str, kappa: float, r: float, phi: float) -> tuple[float, ...]:
    if chart == "polar":
        return (r * math.cos(phi), r * math.sin(phi))
    if chart == "ambient":
        a = to_ambient(kappa, PolarPoint(r, phi))
        return (a.x, a.y, a.z)
    return to_poincare_disk(kappa, PolarPoint(r, phi))


def _check_chart(chart: str, kappa: float) -> None:
    _require(chart in CHARTS, f"chart must be one of {CHARTS}, got {chart!r}")
    if chart == "poincare_disk" and kappa >= 0.0:
        raise ConfigError("the poincare_disk chart needs kappa < 0")


# ----------------------------------------------------------------------
# simulate: config handling
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Merged simulate configuration (file values overridden by flags)."""

    kappa: float
    k: float
    state: tuple | None
    elements: tuple | None
    t_end: float
    tol: float
    output: str
    chart: str

    def validated(self) -> "RunConfig":
        _require(
            math.isfinite(self.kappa), f"kappa must be a finite real, got {self.kappa!r}"
        )
        _require(self.k > 0.0, f"coupling k must be > 0, got {self.k!r}")
        _require(
            (self.state is None) != (self.elements is None),
            "exactly one initial-condition form is needed: state or elements",
        )
        if self.state is not None:
            _require(len(self.state) == 4, "state needs 4 numbers: r,phi,v_r,v_phi")
        if self.elements is not None:
            _require(len(self.elements) == 3, "elements needs 3 numbers: E,J,phi0")
        _require(
            math.isfinite(self.t_end) and self.t_end > 0.0,
            f"t_end must be > 0, got {self.t_end!r}",
        )
        _require(
            1e-13 <= self.tol <= 1e-6,
            f"tol must lie in [1e-13, 1e-6], got {self.tol!r}",
        )
        _require(
            self.output in OUTPUT_FORMATS,
            f"output must be one of {OUTPUT_FORMATS}, got {self.output!r}",
        )
        _check_chart(self.chart, self.kappa)
        return self


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    _require(isinstance(raw, dict), "config file must hold a JSON object")
    schema = raw.get("schema", SCHEMA_VERSION)
    _require(schema == SCHEMA_VERSION, f"unsupported config schema {schema!r}")
    return raw


def _parse_numbers(text: str, n: int, what: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    _require(len(parts) == n, f"{what} needs {n} comma-separated numbers, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"{what}: {exc}") from exc


def _merge_run_config(args) -> RunConfig:
    raw = _load_config_file(args.config) if args.config else {}
    initial = raw.get("initial", {})
    _require(isinstance(initial, dict), 'config "initial" must be an object')
    state = initial.get("state")
    elements = initial.get("elements")
    if args.state is not None or args.elements is not None:
        # flag-provided initial conditions replace the file's entirely
        state = _parse_numbers(args.state, 4, "--state") if args.state else None
        elements = _parse_numbers(args.elements, 3, "--elements") if args.elements else None

    def pick(flag, key, default=None):
        return flag if flag is not None else raw.get(key, default)

    kappa = pick(args.kappa, "kappa")
    k = pick(args.k, "k")
    t_end = pick(args.t_end, "t_end")
    _require(kappa is not None, "kappa is needed (flag --kappa or config)")
    _require(k is not None, "k is needed (flag --k or config)")
    _require(t_end is not None, "t_end is needed (flag --t-end or config)")
    return RunConfig(
        kappa=float(kappa),
        k=float(k),
        state=tuple(state) if state is not None else None,
        elements=tuple(elements) if elements is not None else None,
        t_end=float(t_end),
        tol=float(pick(args.tol, "tol", 1e-9)),
        output=str(pick(args.output, "output", "csv")),
        chart=str(pick(args.chart, "chart", "polar")),
    ).validated()


def _resolve_initial(config: RunConfig) -> PhaseState:
    """Initial phase state: as given, or at a turning point of (E, J)."""
    if config.state is not None:
        try:
            state = PhaseState(*config.state)
        except DomainError as exc:
            raise ConfigError(f"bad initial state: {exc}") from exc
        _require(
            0.0 < state.r < radial_limit(config.kappa),
            f"initial radius {state.r!r} outside the radial chart",
        )
        return state
    e, j, phi0 = config.elements
    roots = turning_points(config.kappa, config.k, j, e)
    if not roots:
        raise InfeasibleError(
            f"no turning point: (E={e!r}, J={j!r}) is not attainable as a "
            "rest-or-periastron start"
        )
    if j == 0.0:
        # radial drop from rest at the outermost zero of the potential
        return PhaseState(roots[-1], phi0, 0.0, 0.0)
    r_per = roots[0]
    s = sin_k(config.kappa, r_per)
    return PhaseState(r_per, phi0, 0.0, j / (s * s))


# ----------------------------------------------------------------------
# simulate
# ----------------------------------------------------------------------


def cmd_simulate(config: RunConfig, out) -> int:
    params = KeplerParams(config.kappa, config.k)
    state0 = _resolve_initial(config)
    try:
        traj = integrate(state0, params, config.t_end, tol=config.tol, dense=False)
    except StiffnessError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    c0 = ConservedSet.from_state(state0, params)
    base = {"E": c0.e, "J": c0.j, "I3": c0.i3, "I4": c0.i4}
    columns = ["t", "r", "phi", "v_r", "v_phi", "E", "J", "I3", "I4"]
    columns += list(_chart_names(config.chart))
    rows = []
    drift = dict.fromkeys(base, 0.0)
    for t, raw in zip(traj.times, traj.states):
        st = PhaseState(*raw)
        cs = ConservedSet.from_state(st, params)
        now = {"E": cs.e, "J": cs.j, "I3": cs.i3, "I4": cs.i4}
        for key, ref in base.items():
            drift[key] = max(drift[key], abs(now[key] - ref) / max(1.0, abs(ref)))
        rows.append(
            (float(t), st.r, st.phi, st.v_r, st.v_phi, now["E"], now["J"], now["I3"], now["I4"])
            + _chart_values(config.chart, config.kappa, st.r, st.phi)
        )
    event = None
    if traj.event is not None:
        event = {"kind": traj.event, "t": float(traj.event_time)}

    if config.output == "csv":
        print(f"# schema,{SCHEMA_VERSION}", file=out)
        print(f"# kappa,{_fmt(config.kappa)},k,{_fmt(config.k)}", file=out)
        print(f"# t_end,{_fmt(config.t_end)},tol,{_fmt(config.tol)}", file=out)
        print(",".join(columns), file=out)
        for row in rows:
            print(",".join(_fmt(x) for x in row), file=out)
        print(
            "# drift," + ",".join(f"{key},{_fmt(val)}" for key, val in drift.items()),
            file=out,
        )
        if event is not None:
            print(f"# event,{event['kind']},t,{_fmt(event['t'])}", file=out)
    else:
        doc = {
            "schema": SCHEMA_VERSION,
            "kappa": float(config.kappa),
            "k": float(config.k),
            "t_end": float(config.t_end),
            "tol": float(config.tol),
            "chart": config.chart,
            "columns": columns,
            "rows": [[float(x) for x in row] for row in rows],
            "drift": {key: float(val) for key, val in drift.items()},
            "event": event,
        }
        print(json.dumps(doc, indent=2), file=out)
    return EXIT_INFEASIBLE if event is not None else EXIT_OK


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------


def _conic_thresholds(spec) -> dict:
    from .conics import ConicFamily, equiparabola_ecc

    kap = spec.kappa
    if kap > 0.0:
        return {"ecc_equatorial": 1.0}
    if kap == 0.0:
        return {"ecc_parabola": 1.0}
    c = math.sqrt(-kap)
    if spec.family is ConicFamily.LATUS:
        t = c * tan_k(kap, spec.p)
        return {
            "ecc_horoellipse": 1.0 - t,
            "ecc_horohyperbola": 1.0 + t,
            "ecc_equiparabola": equiparabola_ecc(spec),
        }
    if spec.family is ConicFamily.COLATUS:
        t = c * tan_k(kap, spec.p_tilde)
        return {
            "ecc_horohyperbola": 1.0 + 1.0 / t,
            "ecc_equiparabola": equiparabola_ecc(spec),
        }
    return {"ecc_horohyperbola": 2.0}


def classify_record(kappa, k: float, j: float, e: float) -> dict:
    """Classification record for one (kappa, k, J, E) pair, JSON-ready."""
    kap = curvature_value(kappa)
    orbit_class = classify_orbit(kap, k, j, e)  # raises InfeasibleError
    prof = potential_profile(kap, k, j)
    record = {
        "schema": SCHEMA_VERSION,
        "kappa": float(kap),
        "k": float(k),
        "j": float(j),
        "e": float(e),
        "label": orbit_class.label.value,
        "bounded": orbit_class.bounded,
    }
    if j == 0.0:
        record.update({"ecc": None, "d": None, "conic": None, "thresholds": None})
    else:
        e_p = e - 0.5 * kap * j * j
        one_plus_z = 1.0 + 2.0 * e_p * j * j / (k * k)
        ecc = math.sqrt(max(0.0, one_plus_z))
        d = j * j / k
        spec = conic_from_dynamics(kap, d, ecc)
        conic_type = classify_conic(spec)
        record["ecc"] = float(ecc)
        record["d"] = float(d)
        record["conic"] = {
            "family": spec.family.value,
            "label": conic_type.label.value,
            "higgs": conic_type.higgs,
            "p": None if spec.p is None else float(spec.p),
            "p_tilde": None if spec.p_tilde is None else float(spec.p_tilde),
        }
        record["thresholds"] = {
            key: float(val) for key, val in _conic_thresholds(spec).items()
        }
    record["landmarks"] = {
        "e_circular": None if prof.e_cir is None else float(prof.e_cir),
        "e_infinity": None if prof.e_infinity is None else float(prof.e_infinity),
        "j_infinity": None if prof.j_infinity is None else float(prof.j_infinity),
    }
    return record


def cmd_classify(kappa: float, k: float, j: float, e: float, out) -> int:
    record = classify_record(kappa, k, j, e)
    print(json.dumps(record, indent=2), file=out)
    return EXIT_OK


# ----------------------------------------------------------------------
# potential-scan
# ----------------------------------------------------------------------


def cmd_potential_scan(kappa, k, j, r_lo, r_hi, steps, out) -> int:
    kap = curvature_value(kappa)
    _require(k > 0.0, f"coupling k must be > 0, got {k!r}")
    limit = radial_limit(kap)
    _require(
        0.0 < r_lo < r_hi < limit,
        f"need 0 < r_min < r_max < {limit!r}, got [{r_lo!r}, {r_hi!r}]",
    )
    _require(steps >= 2, f"need at least 2 grid steps, got {steps!r}")
    prof = potential_profile(kap, k, j)
    print(f"# schema,{SCHEMA_VERSION}", file=out)
    print(f"# kappa,{_fmt(kap)},k,{_fmt(k)},J,{_fmt(j)}", file=out)
    if prof.critical_radius is not None:
        print(
            f"# critical_r,{_fmt(prof.critical_radius)},critical_w,{_fmt(prof.critical_value)}",
            file=out,
        )
    else:
        print(f"# critical,none,{prof.notes}", file=out)
    for crossing in prof.zero_crossings:
        print(f"# zero_crossing,{_fmt(crossing)}", file=out)
    if kap < 0.0:
        print(
            f"# e_infinity,{_fmt(prof.e_infinity)},j_infinity,{_fmt(prof.j_infinity)}",
            file=out,
        )
    print("r,w", file=out)
    for r in np.linspace(r_lo, r_hi, steps):
        print(f"{_fmt(r)},{_fmt(w_eff(kap, k, j, float(r)))}", file=out)
    return EXIT_OK


# ----------------------------------------------------------------------
# conic
# ----------------------------------------------------------------------


def _conic_rows(spec, chart: str, steps: int):
    phis = np.linspace(0.0, 2.0 * math.pi, steps, endpoint=False)
    rows = []
    for pt in sample_conic(spec, phis):
        rows.append((pt.phi, pt.r) + _chart_values(chart, spec.kappa, pt.r, pt.phi))
    return rows


def _family_specimens(fam) -> list[tuple[str, float]]:
    if fam.kappa == 0.0:
        return [("circle", 0.0), ("ellipse", 0.5), ("parabola", 1.0), ("hyperbola", 2.0)]
    return [
        ("circle", 0.0),
        ("ellipse", 0.5 * fam.ecc_horoellipse),
        ("horoellipse", fam.ecc_horoellipse),
        ("equiparabola", fam.ecc_equiparabola),
        ("parabola", 1.0),
        ("horohyperbola", fam.ecc_horohyperbola),
        ("hyperbola", 1.5 * fam.ecc_horohyperbola),
    ]


def cmd_conic(args, out) -> int:
    kap = curvature_value(args.kappa)
    _check_chart(args.chart, kap)
    _require(args.phi_steps >= 8, f"need at least 8 angles, got {args.phi_steps!r}")
    chart_names = _chart_names(args.chart)

    if args.periastron is not None:
        _require(
            0.0 < args.periastron < radial_limit(kap),
            f"periastron must lie in the radial chart, got {args.periastron!r}",
        )
        fam = periastron_family(kap, args.periastron)  # kappa > 0 -> DomainError
        specimens = []
        for label, ecc in _family_specimens(fam):
            spec = conic_from_dynamics(kap, fam.d_circle * (1.0 + ecc), ecc)
            specimens.append((label, ecc, spec))
        if args.output == "csv":
            print(f"# schema,{SCHEMA_VERSION}", file=out)
            print(f"# kappa,{_fmt(kap)},r_per,{_fmt(args.periastron)}", file=out)
            print(
                f"# d_circle,{_fmt(fam.d_circle)},d_horoellipse,{_fmt(fam.d_horoellipse)}"
                f",d_horohyperbola,{_fmt(fam.d_horohyperbola)}",
                file=out,
            )
            print(",".join(("label", "ecc", "phi", "r") + chart_names), file=out)
            for label, ecc, spec in specimens:
                for row in _conic_rows(spec, args.chart, args.phi_steps):
                    print(label + "," + ",".join(_fmt(x) for x in (ecc,) + row), file=out)
        else:
            doc = {
                "schema": SCHEMA_VERSION,
                "kappa": float(kap),
                "r_per": float(args.periastron),
                "landmarks": {
                    "d_circle": float(fam.d_circle),
                    "d_horoellipse": float(fam.d_horoellipse),
                    "d_horohyperbola": float(fam.d_horohyperbola),
                    "ecc_horoellipse": float(fam.ecc_horoellipse),
                    "ecc_horohyperbola": float(fam.ecc_horohyperbola),
                    "ecc_equiparabola": float(fam.ecc_equiparabola),
                },
                "columns": ["phi", "r", *chart_names],
                "specimens": [
                    {
                        "label": label,
                        "ecc": float(ecc),
                        "rows": [
                            [float(x) for x in row]
                            for row in _conic_rows(spec, args.chart, args.phi_steps)
                        ],
                    }
                    for label, ecc, spec in specimens
                ],
            }
            print(json.dumps(doc, indent=2), file=out)
        return EXIT_OK

    _require(args.d is not None and args.ecc is not None, "give --d and --ecc (or --periastron)")
    _require(args.d > 0.0, f"size d must be > 0, got {args.d!r}")
    _require(args.ecc >= 0.0, f"eccentricity must be >= 0, got {args.ecc!r}")
    spec = conic_from_dynamics(kap, args.d, args.ecc)  # infeasible -> DomainError
    conic_type = classify_conic(spec)
    rows = _conic_rows(spec, args.chart, args.phi_steps)
    if args.output == "csv":
        print(f"# schema,{SCHEMA_VERSION}", file=out)
        print(f"# kappa,{_fmt(kap)},d,{_fmt(args.d)},ecc,{_fmt(args.ecc)}", file=out)
        higgs = "" if conic_type.higgs is None else conic_type.higgs
        print(f"# family,{spec.family.value},label,{conic_type.label.value},{higgs}", file=out)
        print(",".join(("phi", "r") + chart_names), file=out)
        for row in rows:
            print(",".join(_fmt(x) for x in row), file=out)
    else:
        doc = {
            "schema": SCHEMA_VERSION,
            "kappa": float(kap),
            "d": float(args.d),
            "ecc": float(args.ecc),
            "family": spec.family.value,
            "label": conic_type.label.value,
            "higgs": conic_type.higgs,
            "columns": ["phi", "r", *chart_names],
            "rows": [[float(x) for x in row] for row in rows],
        }
        print(json.dumps(doc, indent=2), file=out)
    return EXIT_OK


# ----------------------------------------------------------------------
# trig-check
# ----------------------------------------------------------------------


def cmd_trig_check(pairs: int, seed: int, out) -> int:
    _require(pairs > 0, f"need a positive pair count, got {pairs!r}")
    rng = np.random.default_rng(seed)
    max_identity = 0.0
    max_inverse = 0.0
    for _ in range(pairs):
        kap = float(rng.uniform(-4.0, 4.0))
        if kap > 0.0:
            x_hi = 0.9 * math.pi / math.sqrt(kap)
            y_hi = 0.45 * math.pi / math.sqrt(kap)
        else:
            scale = math.sqrt(max(-kap, 1.0))
            x_hi = 5.0 / scale
            y_hi = 2.5 / scale
        x = float(rng.uniform(-x_hi, x_hi))
        c, s = cos_k(kap, x), sin_k(kap, x)
        dev = abs(c * c + kap * s * s - 1.0) / max(1.0, c * c, abs(kap) * s * s)
        max_identity = max(max_identity, dev)
        y = float(rng.uniform(-y_hi, y_hi))
        back = atan_k(kap, tan_k(kap, y))
        max_inverse = max(max_inverse, abs(back - y) / max(1.0, abs(y)))
    ok = max_identity <= TRIG_CHECK_TOL and max_inverse <= TRIG_CHECK_TOL
    doc = {
        "schema": SCHEMA_VERSION,
        "pairs": pairs,
        "seed": seed,
        "max_identity_deviation": max_identity,
        "max_inverse_deviation": max_inverse,
        "tolerance": TRIG_CHECK_TOL,
        "ok": ok,
    }
    print(json.dumps(doc, indent=2), file=out)
    return EXIT_OK if ok else EXIT_NUMERICAL


# ----------------------------------------------------------------------
# argument parsing and dispatch
# ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvedkepler",
        description="Kepler orbits and conics on constant-curvature surfaces.",
    )
    parser.add_argument("--seed", type=int, default=42, help="seed for randomized commands")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="integrate an orbit and dump the trajectory")
    sim.add_argument("--config", help="JSON config file (flags override it)")
    sim.add_argument("--kappa", type=float)
    sim.add_argument("--k", type=float)
    sim.add_argument("--state", help="initial r,phi,v_r,v_phi")
    sim.add_argument("--elements", help="initial E,J,phi0 (starts at a turning point)")
    sim.add_argument("--t-end", dest="t_end", type=float)
    sim.add_argument("--tol", type=float)
    sim.add_argument("--output", choices=OUTPUT_FORMATS)
    sim.add_argument("--chart", choices=CHARTS)
    sim.add_argument("--out", help="output file (default stdout)")

    cls = sub.add_parser("classify", help="classify one (kappa, k, J, E) pair")
    cls.add_argument("--kappa", type=float, required=True)
    cls.add_argument("--k", type=float, required=True)
    cls.add_argument("--J", dest="j", type=float, required=True)
    cls.add_argument("--E", dest="e", type=float, required=True)
    cls.add_argument("--out")

    scan = sub.add_parser("potential-scan", help="sample the effective potential")
    scan.add_argument("--kappa", type=float, required=True)
    scan.add_argument("--k", type=float, required=True)
    scan.add_argument("--J", dest="j", type=float, required=True)
    scan.add_argument("--r-min", dest="r_min", type=float, default=0.1)
    scan.add_argument("--r-max", dest="r_max", type=float, default=None)
    scan.add_argument("--steps", type=int, default=200)
    scan.add_argument("--out")

    con = sub.add_parser("conic", help="sample a conic or a periastron family")
    con.add_argument("--kappa", type=float, required=True)
    con.add_argument("--d", type=float, help="size parameter D")
    con.add_argument("--ecc", type=float, help="eccentricity")
    con.add_argument(
        "--periastron",
        type=float,
        help="emit the whole landmark family with this periastron instead",
    )
    con.add_argument("--phi-steps", dest="phi_steps", type=int, default=360)
    con.add_argument("--chart", choices=CHARTS, default="polar")
    con.add_argument("--output", choices=OUTPUT_FORMATS, default="csv")
    con.add_argument("--out")

    trig = sub.add_parser("trig-check", help="randomized trig-kernel self-test")
    trig.add_argument("--pairs", type=int, default=100_000)
    trig.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on bad flags (and on --help)
        return EXIT_OK if not exc.code else EXIT_CONFIG
    out = sys.stdout
    opened = None
    if getattr(args, "out", None):
        try:
            opened = open(args.out, "w", encoding="utf-8")
        except OSError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        out = opened
    try:
        if args.command == "simulate":
            config = _merge_run_config(args)
            return cmd_simulate(config, out)
        if args.command == "classify":
            return cmd_classify(args.kappa, args.k, args.j, args.e, out)
        if args.command == "potential-scan":
            kap = curvature_value(args.kappa)
            r_max = args.r_max
            if r_max is None:
                r_max = 0.9 * radial_limit(kap) if kap > 0.0 else 5.0
            return cmd_potential_scan(args.kappa, args.k, args.j, args.r_min, r_max, args.steps, out)
        if args.command == "conic":
            return cmd_conic(args, out)
        return cmd_trig_check(args.pairs, args.seed, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DomainError as exc:
        # bad physics inputs that passed flag validation (infeasible
        # periastron, spherical periastron family, chart limits...)
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except StiffnessError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except CurvedKeplerError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    finally:
        if opened is not None:
            opened.close()
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
