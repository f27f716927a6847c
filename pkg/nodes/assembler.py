"""
Report Assembly Nodes

Turn the pipeline results into report fields: the estimate provenance for
approximate counts, and the pass/fail summary for the identity suites.
"""

from typing import Dict

from karp_luby import Estimate
from models import EstimateDetails
from state import EstimationState, VerifyState
from utils import console


def estimate_details(estimate: Estimate) -> EstimateDetails:
    return EstimateDetails(
        epsilon=estimate.epsilon,
        delta=estimate.delta,
        trials=estimate.trials,
        accepted=estimate.accepted,
        total_size=estimate.total_size,
        sets=estimate.m,
        nonempty_sets=estimate.m_nonempty,
        multiplicity=estimate.multiplicity,
        trial_rule=estimate.trial_rule,
        divisor=estimate.divisor,
        family_mode=estimate.family_mode,
        family_size=estimate.family_size,
        delta_family=estimate.delta_family,
        delta_estimator=estimate.delta_estimator,
    )


def estimate_assembler_node(state: EstimationState) -> Dict:
    """
    LangGraph node that assembles the estimate fields of a report.

    Args:
        state: Current EstimationState

    Returns:
        Updated state: result, metrics
    """
    console.banner("REPORT ASSEMBLY NODE")
    estimate = state["estimate"]
    result = {
        "value": float(estimate.value),
        "value_exact": str(estimate.value),
        "estimate": estimate_details(estimate),
        "seed": estimate.seed,
    }
    console.ok(f"value {result['value_exact']} (≈ {result['value']:.4f})")
    return {
        "result": result,
        "metrics": {**state.get("metrics", {}), "value": result["value"]},
    }


def verify_assembler_node(state: VerifyState) -> Dict:
    """
    LangGraph node that summarizes the identity suites.

    Args:
        state: Current VerifyState

    Returns:
        Updated state: passed, metrics
    """
    console.banner("VERIFICATION SUMMARY")
    results = state["results"]
    failed = [r for r in results if not r.passed]

    by_suite: Dict[str, Dict[str, int]] = {}
    for r in results:
        entry = by_suite.setdefault(r.name, {"passed": 0, "failed": 0})
        entry["passed" if r.passed else "failed"] += 1
    for name, counts in by_suite.items():
        if counts["failed"]:
            console.fail(f"{name}: {counts['failed']} failed, {counts['passed']} passed")
        else:
            console.ok(f"{name}: {counts['passed']} passed")

    return {
        "passed": not failed,
        "metrics": {
            **state.get("metrics", {}),
            "identities_checked": len(results),
            "identities_failed": len(failed),
        },
    }
