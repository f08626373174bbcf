"""Tests for orbits, regularity, Cauchy certification, and the solver."""

import math

import numpy as np
import pytest

from fuzzyfix.algebra import DomainError, gauge
from fuzzyfix.contractions import MParams, cm_contractive_check, self_map, table_map
from fuzzyfix.dynamics import (
    CauchyVerdict,
    OrbitTrace,
    Route,
    SolverConfig,
    StopReason,
    cauchy_criterion_check,
    g_cauchy_check,
    m_cauchy_check,
    picard_orbit,
    regularity_check,
    solve_fixed_point,
)
from fuzzyfix.spaces import (
    Carrier,
    exponential_fuzzy_metric,
    metric,
    standard_fuzzy_metric,
)

GRID_1_100 = tuple(float(t) for t in np.logspace(0, 2, 20))
SMALL_R = (0.05, 0.1, 0.3, 0.5, 0.9)


@pytest.fixture
def quad_space():
    return exponential_fuzzy_metric(Carrier.finite([0, 1, 2, 5]),
                                    metric("euclidean"))


@pytest.fixture
def perm_map():
    return self_map("perm-0-1-2-5")


@pytest.fixture
def ray_space():
    return standard_fuzzy_metric(Carrier.interval(0, 10, 201),
                                 metric("max-jachymski"))


@pytest.fixture
def step_map():
    return self_map("phi-step")


@pytest.fixture
def line_space():
    # unbounded-ish line for prescribed traces
    return standard_fuzzy_metric(Carrier.interval(0, 1000, 101),
                                 metric("euclidean"))


def harmonic_trace(space, n=1000, t_grid=GRID_1_100):
    sums = np.cumsum(1.0 / np.arange(1, n + 1))
    return OrbitTrace.from_points(space, sums, t_grid, map_name="harmonic-sums")


class TestPicardOrbit:
    def test_quad_orbit_from_one(self, quad_space, perm_map):
        trace = picard_orbit(quad_space, perm_map, 1, t_grid=GRID_1_100)
        assert trace.points == (1.0, 5.0, 2.0, 0.0, 0.0)
        assert trace.stop_reason is StopReason.FIXED_POINT

    def test_fixed_start_gives_single_point(self, quad_space, perm_map):
        trace = picard_orbit(quad_space, perm_map, 0, t_grid=GRID_1_100)
        assert trace.points == (0.0,)
        assert trace.stop_reason is StopReason.START_FIXED

    def test_ray_orbit_prefix(self, ray_space, step_map):
        trace = picard_orbit(ray_space, step_map, 0.7, max_len=10,
                             t_grid=GRID_1_100)
        assert trace.points[:4] == (0.7, 0.5, 1 / 3, 0.25)
        assert trace.stop_reason is StopReason.MAX_LEN
        # tail follows x_n = 1/(n+1)
        for n in range(1, 10):
            assert trace.points[n] == pytest.approx(1 / (n + 1), abs=1e-15)

    def test_step_series_monotone_for_contractive_map(self, ray_space, step_map):
        trace = picard_orbit(ray_space, step_map, 0.7, max_len=40,
                             t_grid=GRID_1_100)
        series = trace.step_nearness
        assert np.all(np.diff(series, axis=0) > 0)

    def test_rows_export(self, quad_space, perm_map):
        trace = picard_orbit(quad_space, perm_map, 1, t_grid=(1.0, 2.0))
        rows = trace.rows()
        assert rows[0]["n"] == 0 and rows[0]["x"] == 1.0
        assert len(rows[0]["step_nearness"]) == 2
        assert "step_nearness" not in rows[-1]

    def test_start_outside_carrier(self, quad_space, perm_map):
        with pytest.raises(DomainError):
            picard_orbit(quad_space, perm_map, 3)


class TestRegularity:
    def test_stabilized_orbit_plain_and_uniform(self, quad_space, perm_map):
        trace = picard_orbit(quad_space, perm_map, 1, t_grid=GRID_1_100)
        report = regularity_check(quad_space, trace, GRID_1_100, (1.0, 50))
        assert report.plain_all
        assert report.uniform
        assert report.uniform_sup_deficit == 0.0

    def test_ray_orbit_plain_holds_uniform_fails(self, ray_space, step_map):
        trace = picard_orbit(ray_space, step_map, 0.7, max_len=60,
                             t_grid=GRID_1_100)
        report = regularity_check(ray_space, trace, GRID_1_100, (1.0, 50))
        assert report.plain_all            # deficits shrink like 1/n
        assert not report.uniform          # sup over shrinking scales stays large
        # the sup at truncation is attained at the smallest scale 1/50;
        # the final step pair is (x_59, x_60) with distance x_59 = 1/60
        d = 1 / (trace.length - 1)
        expected = d / (1 / 50 + d)
        assert report.uniform_sup_deficit == pytest.approx(expected, rel=1e-6)

    def test_constant_trace_uniform(self, quad_space):
        trace = OrbitTrace.from_points(quad_space, [2.0] * 10, GRID_1_100)
        report = regularity_check(quad_space, trace, GRID_1_100, (1.0, 50))
        assert report.plain_all and report.uniform

    def test_uniform_implies_plain_on_scale_sequence(self, quad_space, perm_map):
        trace = picard_orbit(quad_space, perm_map, 1, t_grid=GRID_1_100)
        report = regularity_check(quad_space, trace, GRID_1_100, (1.0, 20))
        assert report.uniform
        follow = regularity_check(quad_space, trace,
                                  report.scale_sequence, (1.0, 20))
        assert follow.plain_all

    def test_short_trace_rejected(self, quad_space):
        trace = OrbitTrace.from_points(quad_space, [0.0, 1.0], GRID_1_100)
        with pytest.raises(DomainError):
            regularity_check(quad_space, trace)


class TestMCauchy:
    def test_ray_trace_certified_with_exact_cut(self, ray_space, step_map):
        trace = picard_orbit(ray_space, step_map, 0.7, max_len=60,
                             t_grid=GRID_1_100)
        cert = m_cauchy_check(ray_space, trace, r_grid=(0.1,), t_grid=(1.0,))
        assert cert.holds
        # x_N < 1/9 first holds at N = 9 (x_9 = 0.1)
        assert cert.records[0]["N"] == 9

    def test_ray_trace_full_grids(self, ray_space, step_map):
        trace = picard_orbit(ray_space, step_map, 0.7, max_len=60,
                             t_grid=GRID_1_100)
        cert = m_cauchy_check(ray_space, trace)   # default r grid, trace t grid
        assert cert.holds

    def test_divergent_trace_violated(self, line_space):
        trace = OrbitTrace.from_points(line_space, np.arange(50.0), GRID_1_100)
        cert = m_cauchy_check(line_space, trace, r_grid=(0.5,), t_grid=(1.0,))
        assert cert.verdict is CauchyVerdict.VIOLATED
        w = cert.witness
        # witness pair re-evaluates below the bound
        near = line_space.m_scalar(trace.points[w["n"]], trace.points[w["m"]],
                                   w["t"])
        assert near <= 1 - w["r"]

    def test_constant_tail_cut_at_stabilization(self, quad_space, perm_map):
        trace = picard_orbit(quad_space, perm_map, 1, t_grid=(0.5,))
        cert = m_cauchy_check(quad_space, trace, r_grid=(0.5,), t_grid=(0.5,))
        assert cert.holds
        # pairs involving 1, 5, 2 at t=0.5 are far; only the constant tail works
        assert cert.records[0]["N"] == 3


class TestGCauchy:
    def test_harmonic_g_holds_m_violated(self, line_space):
        # step gaps shrink like 1/n, so the fixed-gap series converge, but
        # the partial sums drift without bound; at a small scale even the
        # final adjacent pair misses the all-pairs bound
        trace = harmonic_trace(line_space)
        grid = tuple(float(t) for t in np.logspace(-2, 2, 10))
        g = g_cauchy_check(line_space, trace, m_grid=(1, 2, 5), t_grid=grid)
        assert g.holds
        m = m_cauchy_check(line_space, trace, r_grid=(0.05,), t_grid=(0.01,))
        assert m.verdict is CauchyVerdict.VIOLATED
        w = m.witness
        gap = abs(trace.points[w["m"]] - trace.points[w["n"]])
        assert w["t"] / (w["t"] + gap) <= 0.95

    def test_m_certified_implies_g(self, ray_space, step_map, quad_space,
                                   perm_map):
        # the stabilized orbit is continued so that gap series reach the tail
        settled = [1.0, 5.0, 2.0] + [0.0] * 9
        cases = [
            (ray_space, picard_orbit(ray_space, step_map, 0.7, max_len=60,
                                     t_grid=GRID_1_100)),
            (quad_space, OrbitTrace.from_points(quad_space, settled,
                                                GRID_1_100)),
            (quad_space, OrbitTrace.from_points(quad_space, [2.0] * 12,
                                                GRID_1_100)),
        ]
        for space, trace in cases:
            m = m_cauchy_check(space, trace, t_grid=GRID_1_100)
            g = g_cauchy_check(space, trace, m_grid=(1, 2),
                               t_grid=GRID_1_100)
            assert m.holds
            assert g.holds

    def test_too_short_trace(self, quad_space):
        trace = OrbitTrace.from_points(quad_space, [0.0, 1.0, 2.0], GRID_1_100)
        with pytest.raises(DomainError):
            g_cauchy_check(quad_space, trace, m_grid=(5,))


class TestCauchyCriterion:
    def test_ray_orbit_plain_criterion(self, ray_space, step_map):
        trace = picard_orbit(ray_space, step_map, 0.7, max_len=60,
                             t_grid=GRID_1_100)
        cert = cauchy_criterion_check(ray_space, trace, "plain",
                                      r_grid=SMALL_R, t_grid=(1.0, 10.0))
        assert cert.holds, cert.to_dict()

    def test_quad_blended_criterion(self, quad_space, perm_map):
        trace = picard_orbit(quad_space, perm_map, 1, t_grid=GRID_1_100)
        cert = cauchy_criterion_check(quad_space, trace, "m_generalized",
                                      params=MParams(2, 2), T=perm_map,
                                      r_grid=SMALL_R, t_grid=(1.0, 10.0))
        assert cert.holds

    def test_expanding_cycle_violated(self):
        # 0 -> 0.1 -> 5 -> 5.1 -> 0: near points map to far points forever
        carrier = Carrier.finite([0.0, 0.1, 5.0, 5.1])
        space = exponential_fuzzy_metric(carrier, metric("euclidean"))
        T = table_map({0.0: 0.1, 0.1: 5.0, 5.0: 5.1, 5.1: 0.0}, carrier,
                      name="expander")
        trace = picard_orbit(space, T, 0.0, max_len=12, t_grid=(10.0,))
        cert = cauchy_criterion_check(space, trace, "plain",
                                      r_grid=(0.05,), t_grid=(10.0,))
        assert cert.verdict is CauchyVerdict.VIOLATED
        w = cert.witness
        blend = space.m_scalar(trace.points[w["p"]], trace.points[w["q"]], w["t"])
        nxt = space.m_scalar(trace.points[w["p"] + 1], trace.points[w["q"] + 1],
                             w["t"])
        assert blend == pytest.approx(w["blend"], abs=1e-12)
        assert nxt < 1 - w["r"]


class TestContractionTraceInvariants:
    @pytest.fixture
    def collapse_map(self, quad_space):
        # strictly distance-decreasing table map on {0,1,2,5}
        return table_map({0: 0, 1: 0, 2: 0, 5: 1}, quad_space.carrier,
                         name="collapse")

    def test_cm_map_traces_are_plain_regular(self, quad_space, collapse_map):
        report = cm_contractive_check(quad_space, collapse_map,
                                      r_grid=SMALL_R, t_grid=GRID_1_100)
        assert report.satisfied, report.to_dict()
        for x0 in (1.0, 2.0, 5.0):
            trace = picard_orbit(quad_space, collapse_map, x0,
                                 t_grid=GRID_1_100)
            if trace.length < 3:
                continue
            rep = regularity_check(quad_space, trace, GRID_1_100, (1.0, 20))
            assert rep.plain_all

    def test_cm_map_traces_on_strong_space_certified(self, quad_space,
                                                     collapse_map):
        assert quad_space.strong
        for x0 in (1.0, 2.0, 5.0):
            trace = picard_orbit(quad_space, collapse_map, x0,
                                 t_grid=GRID_1_100)
            if trace.length < 2:
                continue
            cert = m_cauchy_check(quad_space, trace, t_grid=GRID_1_100)
            assert cert.holds


class TestSolver:
    def test_quad_blended_route(self, quad_space, perm_map):
        cfg = SolverConfig(t_grid=GRID_1_100, r_grid=SMALL_R, alpha=2, beta=2,
                           psi=gauge("power:5/7"))
        result = solve_fixed_point(quad_space, perm_map, 1, Route.M_FINAL, cfg)
        assert result.audit_passed, result.to_dict()
        assert result.converged
        assert result.fixed_point == 0.0
        assert result.exact
        assert result.iterations == 3
        assert result.unique
        assert result.fixed_points_found == [0.0]

    def test_quad_all_starts_converge(self, quad_space, perm_map):
        cfg = SolverConfig(t_grid=GRID_1_100, r_grid=SMALL_R, alpha=2, beta=2,
                           psi=gauge("power:5/7"))
        for x0 in (0, 1, 2, 5):
            result = solve_fixed_point(quad_space, perm_map, x0, Route.M_FINAL,
                                       cfg)
            assert result.fixed_point == 0.0
            assert result.converged

    def test_quad_cm_route_fails_precondition(self, quad_space, perm_map):
        cfg = SolverConfig(t_grid=GRID_1_100, r_grid=SMALL_R)
        result = solve_fixed_point(quad_space, perm_map, 1, Route.CM_STRONG, cfg)
        assert not result.audit_passed
        assert result.failing_condition() == "contraction"
        assert not result.converged
        item = [a for a in result.audit if a.condition == "contraction"][0]
        assert item.detail["witness"]["x"] == 0.0
        assert item.detail["witness"]["y"] == 1.0

    def test_ray_cm_strong_converges_toward_zero(self, ray_space, step_map):
        cfg = SolverConfig(t_grid=GRID_1_100, r_grid=SMALL_R, max_len=2000)
        result = solve_fixed_point(ray_space, step_map, 0.7, Route.CM_STRONG,
                                   cfg)
        assert result.audit_passed, result.to_dict()
        assert result.fixed_point == pytest.approx(0.0, abs=1e-3)
        assert not result.exact

    def test_auto_route_picks_cm_strong(self, ray_space, step_map):
        cfg = SolverConfig(t_grid=GRID_1_100, r_grid=SMALL_R, max_len=500)
        result = solve_fixed_point(ray_space, step_map, 0.7, Route.AUTO, cfg)
        assert result.route is Route.CM_STRONG
        assert result.audit_passed

    def test_incomplete_scenario_fails_audit(self, quad_space, perm_map):
        cfg = SolverConfig(t_grid=GRID_1_100, r_grid=SMALL_R, complete=False,
                           alpha=2, beta=2, psi=gauge("power:5/7"))
        result = solve_fixed_point(quad_space, perm_map, 1, Route.M_FINAL, cfg)
        assert not result.audit_passed
        assert result.failing_condition() == "declared-complete"
