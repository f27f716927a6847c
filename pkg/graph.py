"""
LangGraph Orchestration

Defines the two workflows behind the CLI.

Estimation Flow (approx, motif --approximate):
1. Family Builder → k-perfect hash family, δ split
2. System Builder → indexed sets A_{f,σ,H}
3. Estimator → union estimate, rescaled by k! for unlabelled counts
4. Assembler → report fields

Verify Flow:
1. Suite Runner → runs one identity suite
   - If suites remain queued → LOOP BACK to Suite Runner
   - If the queue is empty → proceed to Assembler
2. Assembler → pass/fail summary
"""

from typing import Literal

from langgraph.graph import END, StateGraph

from nodes.assembler import estimate_assembler_node, verify_assembler_node
from nodes.estimator import estimator_node
from nodes.family_builder import family_builder_node
from nodes.suite_runner import suite_runner_node
from nodes.system_builder import system_builder_node
from state import EstimationState, VerifyState
from utils import console


def create_estimation_graph():
    """
    Create the LangGraph state graph for approximate counting.

    Returns:
        Compiled StateGraph ready for execution
    """
    workflow = StateGraph(EstimationState)

    workflow.add_node("family_builder", family_builder_node)
    workflow.add_node("system_builder", system_builder_node)
    workflow.add_node("estimator", estimator_node)
    workflow.add_node("assembler", estimate_assembler_node)

    workflow.set_entry_point("family_builder")
    workflow.add_edge("family_builder", "system_builder")
    workflow.add_edge("system_builder", "estimator")
    workflow.add_edge("estimator", "assembler")
    workflow.add_edge("assembler", END)

    return workflow.compile()


def should_run_next_suite(state: VerifyState) -> Literal["suite_runner", "assembler"]:
    """
    Routing function: loop back to the suite runner while suites remain.

    Args:
        state: Current VerifyState

    Returns:
        "suite_runner" if suites remain queued, "assembler" otherwise
    """
    if state.get("needs_more_suites", False):
        console.step(f"\n→ ROUTING: {len(state['suite_queue'])} suite(s) queued, looping back to Suite Runner")
        return "suite_runner"
    console.step("\n→ ROUTING: All suites run, proceeding to Assembler")
    return "assembler"


def create_verify_graph():
    """
    Create the LangGraph state graph for the identity suites.

    Returns:
        Compiled StateGraph ready for execution
    """
    workflow = StateGraph(VerifyState)

    workflow.add_node("suite_runner", suite_runner_node)
    workflow.add_node("assembler", verify_assembler_node)

    workflow.set_entry_point("suite_runner")
    workflow.add_conditional_edges(
        "suite_runner",
        should_run_next_suite,
        {
            "suite_runner": "suite_runner",  # LOOPBACK
            "assembler": "assembler",        # PROCEED
        },
    )
    workflow.add_edge("assembler", END)

    return workflow.compile()
