"""
Hash Family Node

Builds the k-perfect hash family for the run and splits the failure
probability between the family and the estimator.
"""

from typing import Dict

from fptras import plan_family
from state import EstimationState
from utils import console


def family_builder_node(state: EstimationState) -> Dict:
    """
    LangGraph node that builds the hash family.

    Args:
        state: Current EstimationState

    Returns:
        Updated state: plan, metrics
    """
    console.banner("HASH FAMILY NODE")
    graph = state["graph"]
    k = state["k"]
    console.step(f"Building a {k}-perfect family on {graph.n} vertices (mode: {state['family_mode']})")

    plan = plan_family(graph.n, k, state["family_mode"], state["delta"], state["seed"])

    console.ok(f"{len(plan.family)} functions, construction: {plan.family.mode}")
    if plan.delta_family:
        console.step(f"  δ split: family {plan.delta_family}, estimator {plan.delta_estimator}")

    return {
        "plan": plan,
        "metrics": {
            **state.get("metrics", {}),
            "family_mode": plan.family.mode,
            "family_size": len(plan.family),
        },
    }
