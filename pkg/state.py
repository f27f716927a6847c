"""
State Schema for the Counting Workflows

Typed states that flow through the LangGraph nodes: one for approximate
counting (property or motif), one for the identity-suite loop.
"""

from typing import Any, Dict, List, Literal, Optional, TypedDict

from typing_extensions import NotRequired

from fptras import FamilyPlan
from graphs import Coloring, ColorMultiset, Graph
from karp_luby import Estimate, SetSystem
from models import IdentityResult
from properties import Property


class EstimationState(TypedDict):
    """
    State of the approximate counting pipeline.

    Workflow:
    1. Family Builder builds the hash family and splits δ
    2. System Builder creates the indexed sets A_{f,σ,H} (or A_{f,σ,H,d})
    3. Estimator runs the union estimator and rescales by k! if required
    4. Assembler turns the estimate into report fields
    """

    # Input
    mode: Literal["property", "motif"]
    graph: Graph
    k: int
    prop: Property
    coloring: NotRequired[Optional[Coloring]]
    motif: NotRequired[Optional[ColorMultiset]]
    labelled: bool  # keep the tuple count (no division by k!)

    # Accuracy and reproducibility
    epsilon: float
    delta: float
    seed: int
    family_mode: str
    workers: int
    trial_rule: NotRequired[str]  # "sets" (default) or "multiplicity"

    # Pipeline
    plan: NotRequired[FamilyPlan]
    system: NotRequired[SetSystem]
    estimate: NotRequired[Estimate]
    result: NotRequired[Dict[str, Any]]

    # Metrics and logging
    metrics: Dict[str, Any]


class SuiteSettings(TypedDict):
    k_max: int
    instances: int
    seed: int
    inject_fault: bool
    timing: bool


class VerifyState(TypedDict):
    """
    State of the identity-suite loop.

    Workflow:
    1. Suite Runner pops the next suite from suite_queue and runs it
       - If suites remain → LOOP BACK to Suite Runner
       - If the queue is empty → proceed to Assembler
    2. Assembler summarizes pass/fail
    """
    settings: SuiteSettings
    suite_queue: List[str]
    completed_suites: List[str]
    results: List[IdentityResult]
    needs_more_suites: bool
    passed: NotRequired[bool]
    metrics: Dict[str, Any]
