"""Exact schedulers for perpetually growing bamboos.

n bamboos grow at rational rates h_1 >= ... >= h_n (sum at most 1); one may
be cut to the ground each day.  The library provides three schedulers with
proven guarantees on the maximum height ever standing, exact-rational
simulation to observe those maxima, and naive reference implementations to
cross-check the tree-backed oracles decision by decision.
"""

from .core import (
    DO_NOTHING,
    Instance,
    Rational,
    TrimDecision,
    canonicalize,
    ceil_div,
    floor_log2,
    format_rational,
    height,
    instance_from_json,
    instance_to_json,
    load_instance,
    parse_rational,
    save_instance,
    trim,
)
from .envelope import Line, UpperEnvelope
from .m2_oracle import (
    DyadicRate,
    M2Oracle,
    OracleTree,
    RegularOracle,
    boost_rates,
    build_m2,
    build_tree,
    round_rates,
)
from .pst import Point, PrioritySearchTree
from .rf_oracle import RFOracle, naive_reduce_fastest_step, rf_bound
from .rm_oracle import RMOracle, naive_reduce_max_step
from .sim import (
    BambooStats,
    EquivalenceReport,
    SimulationReport,
    default_horizon,
    equivalence_check,
    make_scheduler,
    naive_reduce_fastest_trace,
    naive_reduce_max_trace,
    report_json,
    simulate,
    simulate_fast,
    trace_csv,
    verify,
)

__version__ = "0.1.0"

__all__ = [
    "DO_NOTHING",
    "Instance",
    "Rational",
    "TrimDecision",
    "canonicalize",
    "ceil_div",
    "floor_log2",
    "format_rational",
    "height",
    "instance_from_json",
    "instance_to_json",
    "load_instance",
    "parse_rational",
    "save_instance",
    "trim",
    "Line",
    "UpperEnvelope",
    "Point",
    "PrioritySearchTree",
    "RFOracle",
    "naive_reduce_fastest_step",
    "rf_bound",
    "RMOracle",
    "naive_reduce_max_step",
    "DyadicRate",
    "M2Oracle",
    "OracleTree",
    "RegularOracle",
    "boost_rates",
    "build_m2",
    "build_tree",
    "round_rates",
    "BambooStats",
    "EquivalenceReport",
    "SimulationReport",
    "default_horizon",
    "equivalence_check",
    "make_scheduler",
    "naive_reduce_fastest_trace",
    "naive_reduce_max_trace",
    "report_json",
    "simulate",
    "simulate_fast",
    "trace_csv",
    "verify",
]
