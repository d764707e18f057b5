"""Casino profit of the two-armed Futurity slot machine."""

from ._core import (
    NumericFailure,
    ValidationError,
    ars_profit,
    block_swap_delta,
    block_vector,
    canonical_rotation,
    exact_profit,
    fair_payout,
    futurity_rate,
    mills_modes,
    mills_oracle_profit,
    oracle_profit,
    profit_via_rates,
    random_mix_oracle,
    random_mix_profit,
    simulate,
    single_arm_futurity_rate,
    sweep_csv,
    trajectory,
)

REFERENCE_STRATEGIES = ("AB", "AABB", "AAABB", "AAAABBBBAAAAAABBB")

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
