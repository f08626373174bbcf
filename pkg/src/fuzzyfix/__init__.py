"""Fuzzy metric spaces, contraction classifiers, and fixed-point certification."""

from .algebra import (
    ClassTag,
    DomainError,
    Gauge,
    GaugeDomain,
    InversionError,
    MembershipCertificate,
    TNorm,
    Verdict,
    class_membership,
    conjugate_gauge,
    gauge,
    gauge_eval,
    invert_eta,
    tnorm,
    tnorm_apply,
    tnorm_axiom_check,
)
from .contractions import (
    CheckStatus,
    ClassificationReport,
    EmpiricalGauge,
    MParams,
    PreconditionError,
    SelfMap,
    cm_contractive_check,
    equivalence_probe,
    extract_empirical_gauge,
    m_contractive_check,
    m_value,
    psi_contractive_check,
    self_map,
    table_map,
)
from .dynamics import (
    CauchyCertificate,
    CauchyVerdict,
    FixedPointResult,
    OrbitTrace,
    RegularityReport,
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
from .expressions import ExpressionError, evaluate, parse_expression, pretty
from .papersuite import run_all as run_paper_suites
from .scenario import Scenario, SchemaError, load_scenario, parse_scenario
from .spaces import (
    BaseMetric,
    Carrier,
    FuzzySpace,
    axiom_check,
    base_metric_check,
    exponential_fuzzy_metric,
    metric,
    standard_fuzzy_metric,
    table_fuzzy_metric,
)

__version__ = "0.1.0"

__all__ = [
    "BaseMetric",
    "Carrier",
    "CauchyCertificate",
    "CauchyVerdict",
    "CheckStatus",
    "ClassTag",
    "ClassificationReport",
    "DomainError",
    "EmpiricalGauge",
    "ExpressionError",
    "FixedPointResult",
    "FuzzySpace",
    "Gauge",
    "GaugeDomain",
    "InversionError",
    "MParams",
    "MembershipCertificate",
    "OrbitTrace",
    "PreconditionError",
    "RegularityReport",
    "Route",
    "Scenario",
    "SchemaError",
    "SelfMap",
    "SolverConfig",
    "StopReason",
    "TNorm",
    "Verdict",
    "axiom_check",
    "base_metric_check",
    "cauchy_criterion_check",
    "class_membership",
    "cm_contractive_check",
    "conjugate_gauge",
    "equivalence_probe",
    "evaluate",
    "exponential_fuzzy_metric",
    "extract_empirical_gauge",
    "g_cauchy_check",
    "gauge",
    "gauge_eval",
    "invert_eta",
    "load_scenario",
    "m_cauchy_check",
    "m_contractive_check",
    "m_value",
    "metric",
    "parse_expression",
    "parse_scenario",
    "picard_orbit",
    "pretty",
    "psi_contractive_check",
    "regularity_check",
    "run_paper_suites",
    "self_map",
    "solve_fixed_point",
    "standard_fuzzy_metric",
    "table_fuzzy_metric",
    "table_map",
    "tnorm",
    "tnorm_apply",
    "tnorm_axiom_check",
    "__version__",
]
