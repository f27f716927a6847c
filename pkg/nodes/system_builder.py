"""
Set System Node

Creates the indexed sets A_{f,σ,H} for a property, or A_{f,σ,H,d} for a
colored motif, from the family built upstream.
"""

import math
from typing import Dict

from errors import NonSymmetricPropertyError
from fptras import build_motif_set_system, build_set_system
from state import EstimationState
from utils import console


def system_builder_node(state: EstimationState) -> Dict:
    """
    LangGraph node that builds the set system.

    Args:
        state: Current EstimationState

    Returns:
        Updated state: system, metrics
    """
    console.banner("SET SYSTEM NODE")
    prop = state["prop"]
    k = state["k"]
    family = state["plan"].family

    if state["mode"] == "motif":
        system = build_motif_set_system(state["graph"], state["coloring"], state["motif"], prop, family)
    else:
        if not state["labelled"] and not prop.symmetric:
            raise NonSymmetricPropertyError(f"property {prop.name!r} is not symmetric; count it labelled")
        system = build_set_system(state["graph"], k, prop, family)

    console.ok(f"{len(system.patterns)} minimal pattern(s), {math.factorial(k)} color orders")
    console.ok(f"{system.m} indexed sets")

    return {
        "system": system,
        "metrics": {
            **state.get("metrics", {}),
            "minimal_patterns": len(system.patterns),
            "indexed_sets": system.m,
        },
    }
