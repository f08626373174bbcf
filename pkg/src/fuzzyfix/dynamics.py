"""Picard orbits, regularity and Cauchy certification, and the solver.

An orbit trace records the iterate sequence together with its per-scale
step-nearness series.  Certification over a trace is always a statement
about the observed prefix:

* ``regularity_check`` decides whether step nearness approaches 1, per
  scale (threshold or trend) and uniformly over a truncated decreasing
  scale sequence (threshold at the tail only, since genuinely uniform
  behaviour effectively requires eventually constant orbits),
* ``m_cauchy_check`` looks, per (threshold, scale), for the smallest cut
  N such that every observed pair beyond it clears the nearness bound,
* ``g_cauchy_check`` does the same for fixed index gaps, the weaker
  notion that the harmonic-sums counterexample separates from the former,
* ``cauchy_criterion_check`` certifies the implication "blended nearness
  past 1-rho forces next-step nearness past 1-r" over observed pairs,
* ``solve_fixed_point`` audits a theorem route's preconditions, runs the
  orbit, certifies it, and reports the fixed point with a uniqueness scan
  on finite carriers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .algebra import DomainError
from .contractions import (
    CheckStatus,
    ClassificationReport,
    MParams,
    SelfMap,
    _ThresholdIndex,
    cm_contractive_check,
    m_contractive_check,
)
from .defaults import DEFAULT_R_GRID, DEFAULT_T_GRID, clamp_unit_grid
from .spaces import FuzzySpace

DEFAULT_MAX_LEN = 10000
DEFAULT_STOP_TOLERANCE = 1e-9
DEFAULT_TAIL_TOLERANCE = 1e-6
DEFAULT_I_MAX = 50

# A deficit series counts as converging to zero on the prefix when its tail
# keeps shrinking by at least this factor over the observed half-window.
TREND_DECAY = 0.75


class StopReason(Enum):
    START_FIXED = "start_fixed"
    FIXED_POINT = "fixed_point"
    TOLERANCE = "tolerance"
    MAX_LEN = "max_len"
    PRESCRIBED = "prescribed"


@dataclass
class OrbitTrace:
    """A Picard iterate sequence with per-scale step-nearness series."""

    points: tuple[float, ...]
    t_grid: tuple[float, ...]
    step_nearness: np.ndarray        # shape (len(points)-1, len(t_grid))
    stop_reason: StopReason
    map_name: str = "unknown"

    @property
    def length(self) -> int:
        return len(self.points)

    @property
    def steps(self) -> int:
        return len(self.points) - 1

    def limit_estimate(self, t: float) -> float:
        """Final observed step nearness at scale t (1.0 for a single point)."""
        if self.steps == 0:
            return 1.0
        j = self.t_grid.index(t)
        return float(self.step_nearness[-1, j])

    def rows(self) -> list[dict]:
        """Tabular records (n, x_n, step nearness per grid scale)."""
        out = []
        for n, x in enumerate(self.points):
            row = {"n": n, "x": x}
            if n < self.steps:
                row["step_nearness"] = [float(v) for v in self.step_nearness[n]]
            out.append(row)
        return out

    @classmethod
    def from_points(cls, space: FuzzySpace, points: Sequence[float],
                    t_grid: Optional[Sequence[float]] = None,
                    map_name: str = "prescribed") -> "OrbitTrace":
        """Wrap an explicit sequence (not necessarily a Picard orbit)."""
        grid = tuple(float(t) for t in
                     (t_grid if t_grid is not None else DEFAULT_T_GRID))
        pts = tuple(float(p) for p in points)
        if not pts:
            raise DomainError("a trace needs at least one point")
        ts = np.array(grid)
        rows = [np.asarray(space.m(a, b, ts), dtype=float)
                for a, b in zip(pts[:-1], pts[1:])]
        series = np.array(rows) if rows else np.zeros((0, len(grid)))
        return cls(pts, grid, series, StopReason.PRESCRIBED, map_name)


def picard_orbit(space: FuzzySpace, T: SelfMap, x0: float,
                 max_len: int = DEFAULT_MAX_LEN,
                 stop_tolerance: float = DEFAULT_STOP_TOLERANCE,
                 t_grid: Optional[Sequence[float]] = None) -> OrbitTrace:
    """Iterate T from x0 for at most ``max_len`` applications.

    Stops early when the iterate repeats exactly (the repeat is kept in the
    trace), or when the worst step nearness over the scale grid exceeds
    1 - ``stop_tolerance``.  A fixed start yields a single-point trace.
    """
    if max_len < 1:
        raise DomainError("max_len must be >= 1")
    grid = tuple(float(t) for t in
                 (t_grid if t_grid is not None else DEFAULT_T_GRID))
    carrier = space.carrier
    if not carrier.contains(x0):
        raise DomainError(f"start point {x0!r} outside the carrier")
    ts = np.array(grid)
    if T.apply(x0, carrier) == x0:
        return OrbitTrace((float(x0),), grid, np.zeros((0, len(grid))),
                          StopReason.START_FIXED, T.name)
    points = [float(x0)]
    rows = []
    reason = StopReason.MAX_LEN
    for _ in range(max_len):
        x = points[-1]
        x_next = T.apply(x, carrier)
        points.append(x_next)
        near = np.asarray(space.m(x, x_next, ts), dtype=float)
        rows.append(near)
        if x_next == x:
            reason = StopReason.FIXED_POINT
            break
        if float(near.min()) > 1.0 - stop_tolerance:
            reason = StopReason.TOLERANCE
            break
    return OrbitTrace(tuple(points), grid, np.array(rows), reason, T.name)


def _tail_converges_to_zero(deficits: np.ndarray, tol: float) -> bool:
    """Prefix evidence that a nonnegative series tends to zero.

    True when the final value is below ``tol``, or when the tail is
    nonincreasing and still shrinking by ``TREND_DECAY`` across the second
    half of the window.
    """
    d = np.asarray(deficits, dtype=float)
    if d.size == 0:
        return True
    if d[-1] <= tol:
        return True
    if d.size < 4:
        return False
    half = d[d.size // 2:]
    if np.any(np.diff(half) > 1e-15):
        return False
    return d[-1] <= TREND_DECAY * half[0]


@dataclass
class RegularityReport:
    t_grid: tuple[float, ...]
    scale_sequence: tuple[float, ...]
    tail_tolerance: float
    plain: dict
    uniform_sup_deficit: float
    uniform: bool

    @property
    def plain_all(self) -> bool:
        return all(self.plain.values())

    def to_dict(self) -> dict:
        return {"t_grid": list(self.t_grid),
                "scale_sequence": list(self.scale_sequence),
                "tail_tolerance": self.tail_tolerance,
                "plain": {str(k): v for k, v in self.plain.items()},
                "plain_all": self.plain_all,
                "uniform_sup_deficit": self.uniform_sup_deficit,
                "uniform": self.uniform}


def regularity_check(space: FuzzySpace, trace: OrbitTrace,
                     t_grid: Optional[Sequence[float]] = None,
                     e_spec: tuple[float, int] = (1.0, DEFAULT_I_MAX),
                     tail_tolerance: float = DEFAULT_TAIL_TOLERANCE,
                     ) -> RegularityReport:
    """Step-nearness regularity of a trace.

    Plain verdict per grid scale: the deficit series 1 - M(x_n, x_{n+1}, t)
    converges to zero on the prefix (threshold or trend).  Uniform verdict
    over the truncated decreasing scale sequence {t/i : 1 <= i <= i_max}:
    the supremum of the final-step deficits must already be below the
    tolerance, an intentionally strict truncation of the limit statement.
    """
    if trace.length < 3:
        raise DomainError("regularity needs a trace of length >= 3")
    grid = tuple(float(t) for t in (t_grid if t_grid is not None else trace.t_grid))
    t_base, i_max = float(e_spec[0]), int(e_spec[1])
    if t_base <= 0 or i_max < 1:
        raise DomainError("scale sequence spec must be positive")
    plain = {}
    for t in grid:
        series = np.array([float(space.m(a, b, t)) for a, b in
                           zip(trace.points[:-1], trace.points[1:])])
        plain[t] = _tail_converges_to_zero(1.0 - series, tail_tolerance)
    seq = tuple(t_base / i for i in range(1, i_max + 1))
    a, b = trace.points[-2], trace.points[-1]
    finals = np.array([1.0 - float(space.m(a, b, t)) for t in seq])
    sup = float(finals.max())
    return RegularityReport(grid, seq, tail_tolerance, plain, sup,
                            sup <= tail_tolerance)


class CauchyKind(Enum):
    M_CAUCHY = "m_cauchy"
    G_CAUCHY = "g_cauchy"


class CauchyVerdict(Enum):
    HOLDS_ON_PREFIX = "holds_on_prefix"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


@dataclass
class CauchyCertificate:
    kind: CauchyKind
    verdict: CauchyVerdict
    r_grid: tuple[float, ...]
    t_grid: tuple[float, ...]
    m_grid: tuple[int, ...] = ()
    records: list[dict] = field(default_factory=list)
    witness: Optional[dict] = None

    @property
    def holds(self) -> bool:
        return self.verdict is CauchyVerdict.HOLDS_ON_PREFIX

    def record_for(self, **keys) -> Optional[dict]:
        for rec in self.records:
            if all(rec.get(k) == v for k, v in keys.items()):
                return rec
        return None

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "verdict": self.verdict.value,
                "r_grid": list(self.r_grid), "t_grid": list(self.t_grid),
                "m_grid": list(self.m_grid),
                "records": self.records, "witness": self.witness}


# All-pairs certification of traces longer than this works on an even index
# subsample; the certified pairs remain genuine observed pairs of the trace.
PAIR_CERT_CAP = 512


def _cert_indices(length: int) -> np.ndarray:
    if length <= PAIR_CERT_CAP:
        return np.arange(length)
    idx = np.unique(np.round(np.linspace(0, length - 1, PAIR_CERT_CAP)))
    return idx.astype(int)


def m_cauchy_check(space: FuzzySpace, trace: OrbitTrace,
                   r_grid: Optional[Sequence[float]] = None,
                   t_grid: Optional[Sequence[float]] = None,
                   ) -> CauchyCertificate:
    """Prefix certificate of the all-pairs Cauchy property.

    For each (r, t) the smallest cut N is recorded such that every observed
    pair beyond N has nearness above 1-r; the certificate holds on the
    prefix when a cut with at least one pair exists for every grid point.
    When even the final adjacent pair fails a bound, the grid point is
    refuted and the most violating pair is reported.  Long traces are
    certified on an even index subsample of at most ``PAIR_CERT_CAP``
    points.
    """
    if trace.length < 2:
        raise DomainError("the Cauchy check needs a trace of length >= 2")
    rs = clamp_unit_grid(r_grid if r_grid is not None else DEFAULT_R_GRID)
    grid = tuple(float(t) for t in (t_grid if t_grid is not None else trace.t_grid))
    idx = _cert_indices(trace.length)
    pts = np.array(trace.points)[idx]
    cert = CauchyCertificate(CauchyKind.M_CAUCHY, CauchyVerdict.HOLDS_ON_PREFIX,
                             rs, grid)
    n = len(pts)
    for t in grid:
        near = np.asarray(space.m(pts[:, None], pts[None, :], t), dtype=float)
        iu = np.triu_indices(n, k=1)
        row_min = np.full(n, np.inf)
        upper = np.full((n, n), np.inf)
        upper[iu] = near[iu]
        row_min[:-1] = upper[:-1].min(axis=1)
        # g[k] = worst nearness among pairs fully beyond cut k
        g = np.minimum.accumulate(row_min[::-1])[::-1]
        for r in rs:
            bound = 1.0 - r
            valid = np.nonzero(g[:n - 1] > bound)[0]
            if valid.size:
                cert.records.append({"t": t, "r": r, "N": int(idx[valid[0]])})
            else:
                k = int(np.argmin(upper[iu]))
                cert.verdict = CauchyVerdict.VIOLATED
                cert.witness = {"t": t, "r": r, "n": int(idx[iu[0][k]]),
                                "m": int(idx[iu[1][k]]),
                                "nearness": float(near[iu][k])}
                return cert
    return cert


def g_cauchy_check(space: FuzzySpace, trace: OrbitTrace,
                   m_grid: Sequence[int] = (1, 2, 5),
                   t_grid: Optional[Sequence[float]] = None,
                   tail_tolerance: float = DEFAULT_TAIL_TOLERANCE,
                   ) -> CauchyCertificate:
    """Prefix certificate of the fixed-gap Cauchy property.

    The fixed-gap notion is a limit statement, so per gap m and scale t
    the gap-m nearness series must converge to 1 on the prefix (threshold
    or trend).  Strictly weaker than the all-pairs certificate: sequences
    with shrinking steps but unbounded drift pass here and fail there.
    """
    gaps = tuple(int(m) for m in m_grid)
    if trace.length <= max(gaps):
        raise DomainError("trace shorter than the largest gap")
    grid = tuple(float(t) for t in (t_grid if t_grid is not None else trace.t_grid))
    pts = np.array(trace.points)
    cert = CauchyCertificate(CauchyKind.G_CAUCHY, CauchyVerdict.HOLDS_ON_PREFIX,
                             (), grid, m_grid=gaps)
    for m in gaps:
        xs, ys = pts[:-m], pts[m:]
        for t in grid:
            series = np.asarray(space.m(xs, ys, t), dtype=float)
            deficits = 1.0 - series
            ok = _tail_converges_to_zero(deficits, tail_tolerance)
            rec = {"m": m, "t": t, "converged": bool(ok),
                   "final_deficit": float(deficits[-1])}
            cert.records.append(rec)
            if not ok:
                k = int(np.argmax(deficits[len(deficits) // 2:]))
                cert.verdict = CauchyVerdict.VIOLATED
                cert.witness = {"m": m, "t": t,
                                "n": int(len(deficits) // 2 + k),
                                "deficit": float(deficits[len(deficits) // 2 + k])}
                return cert
    return cert


def cauchy_criterion_check(space: FuzzySpace, trace: OrbitTrace,
                           f_kind: str = "plain",
                           params: Optional[MParams] = None,
                           r_grid: Optional[Sequence[float]] = None,
                           t_grid: Optional[Sequence[float]] = None,
                           T: Optional[SelfMap] = None) -> CauchyCertificate:
    """Certify the pairwise improvement implication along a trace.

    For each (t, r) a threshold rho in (r, 1) and a cut N are searched such
    that for all observed indices p, q >= N the blended nearness of
    (x_p, x_q) above 1-rho forces the nearness of (x_{p+1}, x_{q+1}) past
    1-r.  ``f_kind`` selects plain nearness or the blended comparison
    (``m_generalized`` with ``params`` and the trace's map).
    """
    if f_kind not in ("plain", "m_generalized"):
        raise DomainError(f"unknown f_kind {f_kind!r}")
    if f_kind == "m_generalized" and (params is None or T is None):
        raise DomainError("m_generalized needs params and the map")
    if trace.length < 3:
        raise DomainError("the criterion needs a trace of length >= 3")
    rs = clamp_unit_grid(r_grid if r_grid is not None else DEFAULT_R_GRID)
    grid = tuple(float(t) for t in (t_grid if t_grid is not None else trace.t_grid))
    pts = np.array(trace.points)
    sub = _cert_indices(trace.length - 1)   # pairs need successors
    xi, yi = np.triu_indices(len(sub), k=0)
    xi, yi = sub[xi], sub[yi]
    xs, ys = pts[xi], pts[yi]
    nxs, nys = pts[xi + 1], pts[yi + 1]
    cert = CauchyCertificate(CauchyKind.M_CAUCHY, CauchyVerdict.HOLDS_ON_PREFIX,
                             rs, grid)
    min_idx = np.minimum(xi, yi)
    for t in grid:
        if f_kind == "plain":
            F = np.asarray(space.m(xs, ys, t), dtype=float)
        else:
            base = np.asarray(space.m(xs, ys, t), dtype=float)
            fx = np.asarray(space.m(xs, nxs, t), dtype=float) ** params.alpha
            fy = np.asarray(space.m(ys, nys, t), dtype=float) ** params.beta
            norm = space.tnorm
            F = np.asarray(norm.apply(norm.apply(base, fx), fy), dtype=float)
        E = np.asarray(space.m(nxs, nys, t), dtype=float)
        for r in rs:
            found = None
            witness = None
            # the window beyond the cut must keep at least two indices, so
            # that it contains a pair of distinct successors
            for cut in (c for c in sub if c < sub[-1]):
                sel = min_idx >= cut
                index = _ThresholdIndex(F[sel], E[sel])
                # the implication premise is one-sided: any pair whose blend
                # clears 1-rho must already improve past 1-r
                rec, k = index.search(r, onesided=True, finite=True)
                if rec is not None:
                    found = {"t": t, "N": int(cut), **rec}
                    break
                if witness is None:
                    orig = np.nonzero(sel)[0][k]
                    witness = {"t": t, "r": r, "p": int(xi[orig]),
                               "q": int(yi[orig]), "blend": float(F[orig]),
                               "next_nearness": float(E[orig])}
            if found is None:
                cert.verdict = CauchyVerdict.VIOLATED
                cert.witness = witness
                return cert
            cert.records.append(found)
    return cert


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------

class Route(Enum):
    AUTO = "auto"
    CM_STRONG = "cm-strong"
    CM_GENERAL = "cm-general"
    M_FINAL = "m-final"


@dataclass
class SolverConfig:
    max_len: int = DEFAULT_MAX_LEN
    stop_tolerance: float = DEFAULT_STOP_TOLERANCE
    tail_tolerance: float = DEFAULT_TAIL_TOLERANCE
    i_max: int = DEFAULT_I_MAX
    t_grid: Optional[tuple[float, ...]] = None
    r_grid: Optional[tuple[float, ...]] = None
    complete: bool = True            # declared scenario attribute
    alpha: float = 0.0
    beta: float = 0.0
    psi: Optional[object] = None     # optional gauge for the blended route


@dataclass
class AuditItem:
    condition: str
    passed: bool
    detail: Optional[dict] = None

    def to_dict(self) -> dict:
        return {"condition": self.condition, "passed": self.passed,
                "detail": self.detail}


@dataclass
class FixedPointResult:
    route: Route
    converged: bool
    audit: list[AuditItem]
    fixed_point: Optional[float] = None
    exact: bool = False
    iterations: Optional[int] = None
    unique: Optional[bool] = None
    fixed_points_found: Optional[list[float]] = None
    trace: Optional[OrbitTrace] = None
    cauchy: Optional[CauchyCertificate] = None
    diagnosis: Optional[str] = None

    @property
    def audit_passed(self) -> bool:
        return all(a.passed for a in self.audit)

    def failing_condition(self) -> Optional[str]:
        for a in self.audit:
            if not a.passed:
                return a.condition
        return None

    def to_dict(self) -> dict:
        return {"route": self.route.value, "converged": self.converged,
                "audit": [a.to_dict() for a in self.audit],
                "audit_passed": self.audit_passed,
                "fixed_point": self.fixed_point, "exact": self.exact,
                "iterations": self.iterations, "unique": self.unique,
                "fixed_points_found": self.fixed_points_found,
                "diagnosis": self.diagnosis,
                "trace_length": self.trace.length if self.trace else None,
                "cauchy": self.cauchy.to_dict() if self.cauchy else None}


def _classification_audit(name: str, report: ClassificationReport) -> AuditItem:
    detail = {"definition": report.definition, "status": report.status.value}
    if report.status is not CheckStatus.SATISFIED:
        for cond in report.conditions:
            if cond.status is CheckStatus.VIOLATED:
                detail["failed_condition"] = cond.name
                detail["witness"] = cond.witness
                break
    return AuditItem(name, report.satisfied, detail)


def solve_fixed_point(space: FuzzySpace, T: SelfMap, x0: float,
                      route: Route | str = Route.AUTO,
                      config: Optional[SolverConfig] = None,
                      ) -> FixedPointResult:
    """Audit a theorem route, run the Picard orbit, certify, and report.

    Routes: ``cm-strong`` needs a declared-complete strong space and the
    threshold-implication contraction; ``cm-general`` drops strongness but
    needs uniform regularity at the start point; ``m-final`` uses the
    blended form with a continuous map and (uniform, or plain when strong)
    regularity.  ``auto`` picks the first route whose audit passes.  When
    an audit fails the result carries the named failing condition and makes
    no convergence claim.
    """
    cfg = config or SolverConfig()
    route = Route(route)
    grid = tuple(cfg.t_grid if cfg.t_grid is not None else DEFAULT_T_GRID)
    rs = tuple(cfg.r_grid if cfg.r_grid is not None else DEFAULT_R_GRID)
    params = MParams(cfg.alpha, cfg.beta)

    if route is Route.AUTO:
        for candidate in (Route.CM_STRONG, Route.CM_GENERAL, Route.M_FINAL):
            result = solve_fixed_point(space, T, x0, candidate, cfg)
            if result.audit_passed:
                return result
        return result

    audit = [AuditItem("declared-complete", bool(cfg.complete))]
    trace = picard_orbit(space, T, x0, cfg.max_len, cfg.stop_tolerance, grid)
    regularity = None
    if trace.length >= 3:
        regularity = regularity_check(space, trace, grid,
                                      (grid[0] if grid else 1.0, cfg.i_max),
                                      cfg.tail_tolerance)

    if route is Route.CM_STRONG:
        audit.append(AuditItem("declared-strong", space.strong))
        cm = cm_contractive_check(space, T, rs, grid)
        audit.append(_classification_audit("contraction", cm))
    elif route is Route.CM_GENERAL:
        cm = cm_contractive_check(space, T, rs, grid)
        audit.append(_classification_audit("contraction", cm))
        uniform = regularity.uniform if regularity else True
        audit.append(AuditItem("uniform-regularity-at-start", uniform,
                               {"sup_deficit": regularity.uniform_sup_deficit
                                if regularity else 0.0}))
    else:
        audit.append(AuditItem("map-continuity", T.continuous,
                               {"source": T.continuity_source}))
        mc = m_contractive_check(space, T, params, psi=cfg.psi,
                                 r_grid=rs, t_grid=grid)
        audit.append(_classification_audit("blended-contraction", mc))
        if space.strong:
            reg_ok = regularity.plain_all if regularity else True
            audit.append(AuditItem("regularity-at-start", reg_ok, None))
        else:
            reg_ok = regularity.uniform if regularity else True
            audit.append(AuditItem("uniform-regularity-at-start", reg_ok, None))

    result = FixedPointResult(route, False, audit, trace=trace)
    if not result.audit_passed:
        result.diagnosis = f"precondition failed: {result.failing_condition()}"
        return result

    if trace.length >= 2:
        result.cauchy = m_cauchy_check(space, trace, rs, grid)
    carrier = space.carrier
    z = trace.points[-1]
    if carrier.is_finite:
        if T.apply(z, carrier) == z:
            result.fixed_point = z
            result.exact = True
            result.converged = True
            result.iterations = trace.points.index(z)
            fixed = [p for p in carrier.points if T.apply(p, carrier) == p]
            result.fixed_points_found = fixed
            result.unique = fixed == [z]
        else:
            result.diagnosis = ("no fixed point reached within "
                                f"{cfg.max_len} steps")
    else:
        result.fixed_point = z
        result.exact = False
        result.iterations = trace.steps
        near_fixed = all(
            float(space.m(z, T.apply(z, carrier), t)) > 1.0 - cfg.tail_tolerance
            for t in (grid[-1],))
        result.converged = bool(near_fixed or
                                trace.stop_reason is StopReason.TOLERANCE)
        if not result.converged:
            result.diagnosis = ("orbit not yet within stop tolerance; "
                                "limit estimate reported")
            result.converged = result.cauchy.holds if result.cauchy else False
    return result
