"""Equilibrium solvers for the two-provider spectrum-sharing game."""

from ._specshare import (
    Allocation,
    DisagreementPoint,
    EquilibriumSolution,
    ExistenceReport,
    MarketParams,
    MoneyFlows,
    OutsideMaximum,
    OutsideSolveResult,
    OutsideSubscriptions,
    PayoffPair,
    PriceProfile,
    PricingOutcome,
    SolveResult,
    SolverError,
    SubscriptionSplit,
    TransportCosts,
    base_payoffs,
    best_response_gain,
    corner_prices,
    eu_utilities,
    grid_argmax_u_excess,
    hotelling_split,
    interior_prices,
    maximize_outside_objective,
    money_flows,
    nbs_split,
    outside_demand,
    outside_objective,
    outside_stage2_prices,
    outside_u_excess,
    params_from_text,
    resource_cost_metric,
    solve_base,
    solve_base_disagreement,
    solve_corner,
    solve_outside,
    solve_outside_disagreement,
    total_base_payoff,
    transport_costs,
    u_excess,
)

__all__ = [name for name in dir() if not name.startswith("_")]
