"""Exact analysis of finite dynamical systems carrying credal sets.

Represents a self-map T on a finite state space together with a finitely
generated credal set (an upper expectation), and computes -- exactly, in
rational arithmetic -- its periodic components, period lattice, ergodic
decompositions, strong ergodicity verdicts, and the attainment of the
upper expectation by period-step time means.
"""

from .credal import (
    CredalSet,
    InvarianceVerdict,
    Permutation,
    ProbVec,
    canonical,
    check_invariance,
    core_of_capacity,
    extreme_points,
    invariant_surrogate,
    lower_expectation,
    membership,
    pushforward,
    pushforward_permutation,
    upper_expectation,
    upper_probability,
)
from .decomposition import (
    CheckResult,
    cesaro_upper,
    check_gcd_reduction,
    check_iterated_decomposition,
    check_monotone_inclusion,
    check_shift_identity,
    e_d_closed_form,
    e_d_lp,
    theta_d,
)
from .ergodicity import (
    ErgodicReport,
    TimeMeanVerdict,
    cycle_time_mean,
    ergodic_decomposition,
    ergodic_theorem_check,
    invariant_core,
    invariant_core_equality,
    is_ergodic,
    strong_ergodicity_check,
)
from .gallery import gen_cycle, gen_product_shift, gen_random_invariant
from .periods import (
    PeriodReport,
    check_period_characterization,
    check_period_lattice,
    dominating_component,
    period_of,
    period_of_component,
    period_report,
    periodic_decomposition_check,
)
from .reports import AnalysisReport, analyze, check_ledger, surrogate_check
from .systems import (
    InvariantPartition,
    Observable,
    OrbitStructure,
    SystemMap,
    compose_power,
    invariant_partition,
    orbit_structure,
)

__version__ = "0.1.0"
