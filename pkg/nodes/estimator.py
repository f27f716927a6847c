"""
Union Estimator Node

Runs the union estimator over the set system. The union counts labelled
tuples; unlabelled and motif counts divide it by k!.
"""

import math
from typing import Dict

from fptras import with_provenance
from karp_luby import estimate_union
from state import EstimationState
from utils import console


def estimator_node(state: EstimationState) -> Dict:
    """
    LangGraph node that estimates the union size.

    Args:
        state: Current EstimationState

    Returns:
        Updated state: estimate, metrics
    """
    console.banner("ESTIMATOR NODE")
    plan = state["plan"]
    system = state["system"]
    console.step(f"ε = {state['epsilon']}, δ = {plan.delta_estimator} for the estimator, "
                 f"seed {state['seed']}, {state['workers']} worker(s)")

    estimate = estimate_union(system, state["epsilon"], plan.delta_estimator, state["seed"], state["workers"],
                              state.get("trial_rule", "sets"))
    estimate = with_provenance(estimate, plan, state["delta"])
    if state["mode"] == "motif" or not state["labelled"]:
        estimate = estimate.scaled(math.factorial(state["k"]))

    if estimate.trials == 0:
        console.warn("every set is empty; the count is exactly 0")
    else:
        console.step(f"{estimate.trials} trials sized by {estimate.trial_rule} "
                     f"(m = {estimate.m}, multiplicity bound {estimate.multiplicity})")
        console.ok(f"{estimate.accepted}/{estimate.trials} trials accepted, total size {estimate.total_size}")
    console.ok(f"estimate: {float(estimate.value):.4f}")

    return {
        "estimate": estimate,
        "metrics": {
            **state.get("metrics", {}),
            "trials": estimate.trials,
            "accepted": estimate.accepted,
        },
    }
