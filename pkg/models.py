"""
Pydantic Models for Run Configurations and Reports

RunConfig validates command-line arguments; the report models are what the
CLI writes as JSON. Every report embeds the RunConfig that produced it, so a
report can be reproduced from its own contents.
"""

import os
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

import config

Command = Literal["exact", "approx", "motif", "verify", "gen"]
FamilyOption = Literal["auto", "exact-greedy", "randomized"]
TrialRuleOption = Literal["sets", "multiplicity"]
NamedInstance = Literal["cycle", "complete", "petersen", "star"]


# ============================================================================
# Run configuration
# ============================================================================

class RunConfig(BaseModel):
    """Validated arguments of one CLI invocation."""
    command: Command
    graph: Optional[str] = Field(default=None, description="Edge-list file of the host graph")
    coloring: Optional[str] = Field(default=None, description="Coloring file ('vertex color' lines)")
    property: Optional[str] = Field(default=None, description="Bundled property name")
    pattern_file: Optional[str] = Field(default=None, description="Minimal-pattern list defining a property")
    k: Optional[int] = Field(default=None, ge=1, description="Pattern size")
    motif: Optional[str] = Field(default=None, description="Motif spec 'color:mult,color:mult,...'")
    labelled: bool = Field(default=False, description="Report labelled (tuple) counts")
    approximate: bool = Field(default=False, description="Estimate motif counts instead of enumerating")
    epsilon: float = Field(default=0.1, gt=0, description="Relative error")
    delta: float = Field(default=0.05, gt=0, lt=1, description="Failure probability")
    seed: int = Field(default=config.DEFAULT_SEED, description="Base seed")
    family: FamilyOption = Field(default="auto", description="Hash family construction")
    workers: int = Field(default=config.DEFAULT_WORKERS, ge=1, description="Worker processes for trials")
    trial_rule: TrialRuleOption = Field(default="sets", description="Trial count sized by m or by the multiplicity bound")
    save_family: Optional[str] = Field(default=None, description="Write the hash family used as JSON")
    k_max: int = Field(default=4, ge=1, description="Largest k in the identity suites")
    instances: int = Field(default=5, ge=1, description="Random instances per identity suite")
    inject_fault: bool = Field(default=False, description="Flip one meet-matrix entry (negative control)")
    n: Optional[int] = Field(default=None, ge=0, description="Vertices of a generated graph")
    p: float = Field(default=0.5, ge=0, le=1, description="Edge probability of a generated graph")
    colors: Optional[int] = Field(default=None, ge=1, description="Colors of a generated coloring")
    named: Optional[NamedInstance] = Field(default=None, description="Named instance to generate")
    coloring_output: Optional[str] = Field(default=None, description="Where gen writes the coloring")
    output: Optional[str] = Field(default=None, description="Report (or gen graph) path; stdout if absent")
    timing: bool = Field(default=False, description="Add wall-clock fields to the report")

    @field_validator("graph", "coloring", "pattern_file")
    @classmethod
    def file_exists(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and not os.path.isfile(value):
            raise ValueError(f"file not found: {value}")
        return value

    @model_validator(mode="after")
    def required_inputs(self) -> "RunConfig":
        if self.command in ("exact", "approx", "motif") and self.graph is None:
            raise ValueError(f"{self.command} needs --graph")
        if self.command in ("exact", "approx"):
            if (self.property is None) == (self.pattern_file is None):
                raise ValueError("give exactly one of --property and --pattern-file")
            if self.k is None and self.pattern_file is None:
                raise ValueError(f"{self.command} needs -k")
        if self.command == "motif" and (self.coloring is None or self.motif is None):
            raise ValueError("motif needs --coloring and --motif")
        if self.command == "gen":
            if self.n is None and self.named is None:
                raise ValueError("gen needs --n or --named")
            if self.output is None:
                raise ValueError("gen needs --output for the graph")
            if self.colors is not None and self.coloring_output is None:
                raise ValueError("--colors needs --coloring-output")
        return self


# ============================================================================
# Reports
# ============================================================================

class EstimateDetails(BaseModel):
    """Provenance of one union estimate."""
    epsilon: float
    delta: float
    trials: int
    accepted: int
    total_size: int
    sets: int = Field(..., description="Indexed sets in the system")
    nonempty_sets: int
    multiplicity: int = Field(..., description="Bound on sets per element")
    trial_rule: TrialRuleOption = Field(..., description="sets: trials from m; multiplicity: from the bound")
    divisor: int = Field(..., description="Labelled estimate was divided by this")
    family_mode: Optional[str] = None
    family_size: Optional[int] = None
    delta_family: Optional[float] = None
    delta_estimator: Optional[float] = None


class ExactReport(BaseModel):
    config: RunConfig
    property: str
    k: int
    symmetric: bool
    count: int = Field(..., description="k-subsets U with φ(G[U]) = 1 (some ordering, if not symmetric)")
    labelled_count: int = Field(..., description="Tuples of k distinct vertices satisfying φ")
    wall_time_ms: Optional[float] = None


class EstimateReport(BaseModel):
    config: RunConfig
    property: str
    k: int
    labelled: bool
    value: float
    value_exact: str = Field(..., description="The estimate as an exact fraction")
    estimate: EstimateDetails
    seed: int
    wall_time_ms: Optional[float] = None


class MotifReport(BaseModel):
    config: RunConfig
    motif: Dict[str, int] = Field(..., description="Color name → multiplicity")
    k: int
    method: Literal["exact", "approximate"]
    value: float
    value_exact: str
    estimate: Optional[EstimateDetails] = None
    seed: int
    wall_time_ms: Optional[float] = None


class IdentityResult(BaseModel):
    name: str
    parameters: Dict[str, Any]
    passed: bool
    detail: str
    elapsed_ms: Optional[float] = None


class VerifyReport(BaseModel):
    config: RunConfig
    passed: bool
    checked: int
    failed: int
    results: List[IdentityResult]
    wall_time_ms: Optional[float] = None


class GenReport(BaseModel):
    config: RunConfig
    n: int
    m: int
    graph_path: Optional[str] = None
    coloring_path: Optional[str] = None
    colors: Optional[int] = None
    wall_time_ms: Optional[float] = None
