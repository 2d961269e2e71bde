"""Proportional rules, representation axioms and priceability for public decisions under constraints."""

from pubdec.axioms import (
    AxiomVerdict,
    Violation,
    check_agr_ejr,
    check_axiom,
    check_coh_jr,
    check_cohesive_ejr,
)
from pubdec.constraints import (
    OutcomeImplicationGraph,
    Restrictiveness,
    build_graph,
    fixed_decisions,
    has_nfd,
    reachable,
    restrictiveness,
    satisfying_assignments,
    verify_implication_equivalence,
)
from pubdec.deviations import DeviationWitness, deviation_closure, enumerate_deviations, is_deviation
from pubdec.errors import (
    CapExceeded,
    ConstraintError,
    GenerationError,
    InfeasibleOutcomeError,
    InstanceError,
    ModelError,
    PubDecError,
    TraceError,
)
from pubdec.fileformat import load_instance, parse_instance, serialize_instance
from pubdec.fixtures import FIXTURE_NAMES, fixture
from pubdec.generate import GenSpec, generate_instance
from pubdec.model import (
    ImplicationRule,
    Instance,
    agreement,
    fix_decisions,
    satisfaction,
    satisfactions,
    validate_instance,
)
from pubdec.oracle import brute_force_axiom_check, brute_force_deviations, exists_satisfying_outcome
from pubdec.priceability import (
    PriceSystem,
    check_priceable_bound,
    extract_price_system,
    verify_price_system,
)
from pubdec.rules import (
    RuleTrace,
    mes_min_rho,
    partition_agreeing_groups,
    pav_score,
    replay_trace,
    run_greedy_mecora,
    run_ls_pav,
    run_mecora,
    run_mes,
    verify_trace,
)

__version__ = "0.1.0"
