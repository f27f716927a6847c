"""
Suite Runner Node

Runs one identity suite per visit. The graph loops back here while suites
remain queued.
"""

from typing import Dict

from state import VerifyState
from utils import console
from verification import run_suite


def suite_runner_node(state: VerifyState) -> Dict:
    """
    LangGraph node that runs the next queued suite.

    Args:
        state: Current VerifyState

    Returns:
        Updated state: suite_queue, completed_suites, results, needs_more_suites
    """
    queue = list(state["suite_queue"])
    name = queue.pop(0)
    console.banner(f"SUITE: {name}")

    results = run_suite(name, state["settings"])
    for r in results:
        if r.passed:
            console.ok(f"{r.parameters}: {r.detail}")
        else:
            console.fail(f"{r.parameters}: {r.detail}")

    return {
        "suite_queue": queue,
        "completed_suites": state["completed_suites"] + [name],
        "results": state["results"] + results,
        "needs_more_suites": bool(queue),
    }
