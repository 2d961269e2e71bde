from pubdec.rules.lspav import harmonic, pav_score, pav_upper_bound, run_ls_pav, step_bound
from pubdec.rules.mecora import (
    AgreeingBlock,
    final_ledger,
    partition_agreeing_groups,
    run_greedy_mecora,
    run_mecora,
)
from pubdec.rules.mes import FIXED, UNIT, mes_min_rho, run_mes
from pubdec.rules.trace import (
    Completion,
    Flip,
    Move,
    Purchase,
    ReplayState,
    RuleTrace,
    price_increments,
    replay_trace,
    verify_trace,
)

__all__ = [
    "AgreeingBlock",
    "Completion",
    "FIXED",
    "Flip",
    "Move",
    "Purchase",
    "ReplayState",
    "RuleTrace",
    "UNIT",
    "final_ledger",
    "harmonic",
    "mes_min_rho",
    "partition_agreeing_groups",
    "pav_score",
    "pav_upper_bound",
    "price_increments",
    "replay_trace",
    "run_greedy_mecora",
    "run_ls_pav",
    "run_mecora",
    "run_mes",
    "step_bound",
    "verify_trace",
]
