"""
Main entry point for the Subgraph Counter

Provides CLI and programmatic interfaces for exact and approximate counting
of induced subgraphs with a property, colored motifs, the identity suites and
random-instance generation.
"""

import argparse
import random
import sys
import time
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ValidationError

import config
import storage
from errors import CountingError, InstanceError, PatternError
from exact_lab import brute_count, brute_count_labelled, brute_count_motif
from graph import create_estimation_graph, create_verify_graph
from graphs import ColorMultiset, Graph, dump_coloring, dump_graph, random_coloring, random_graph, read_coloring, read_graph
from instances import named_instance
from models import EstimateReport, ExactReport, GenReport, MotifReport, RunConfig, VerifyReport
from properties import CONNECTED, Property, get_property, read_pattern_file
from state import EstimationState, SuiteSettings, VerifyState
from utils import console
from verification import SUITE_ORDER


class SubgraphCounter:
    """
    High-level interface: one validated RunConfig in, one report out.
    """

    def __init__(self, run: RunConfig):
        """
        Args:
            run: validated arguments of the command to execute
        """
        self.run = run

    def execute(self) -> BaseModel:
        """Run the configured command; adds wall_time_ms when timing is on."""
        started = time.perf_counter()
        report = getattr(self, self.run.command)()
        if self.run.timing:
            report = report.model_copy(update={"wall_time_ms": round((time.perf_counter() - started) * 1000, 3)})
        return report

    # ------------------------------------------------------------------
    # Inputs
    # ------------------------------------------------------------------

    def _graph(self) -> Graph:
        return read_graph(self.run.graph)

    def _property(self) -> Tuple[Property, int]:
        if self.run.pattern_file is not None:
            prop = read_pattern_file(self.run.pattern_file)
            if self.run.k is not None and self.run.k != prop.pattern_size:
                raise PatternError(f"-k {self.run.k} does not match the pattern file's k = {prop.pattern_size}")
            return prop, prop.pattern_size
        return get_property(self.run.property), self.run.k

    def _estimation_state(self, graph: Graph, k: int, prop: Property, **extra) -> EstimationState:
        return EstimationState(
            graph=graph,
            k=k,
            prop=prop,
            epsilon=self.run.epsilon,
            delta=self.run.delta,
            seed=self.run.seed,
            family_mode=self.run.family,
            workers=self.run.workers,
            trial_rule=self.run.trial_rule,
            metrics={},
            **extra,
        )

    def _estimate(self, state: EstimationState) -> Dict:
        console.step("\nExecuting LangGraph workflow...")
        result = create_estimation_graph().invoke(state)
        if self.run.save_family is not None:
            storage.save_hash_family(result["plan"].family, self.run.save_family)
            console.ok(f"Hash family saved to: {self.run.save_family}")
        return result

    # ------------------------------------------------------------------
    # Commands
    # ------------------------------------------------------------------

    def exact(self) -> ExactReport:
        graph = self._graph()
        prop, k = self._property()
        console.banner("EXACT COUNT")
        console.step(f"Graph: {graph.n} vertices, {graph.m} edges; property {prop.name}, k = {k}")

        count = brute_count(graph, k, prop)
        labelled = brute_count_labelled(graph, k, prop)
        console.ok(f"count {count} (labelled {labelled})")
        return ExactReport(config=self.run, property=prop.name, k=k, symmetric=prop.symmetric,
                           count=count, labelled_count=labelled)

    def approx(self) -> EstimateReport:
        graph = self._graph()
        prop, k = self._property()
        console.banner("SUBGRAPH COUNTER - Approximate Count")
        console.step(f"Graph: {graph.n} vertices, {graph.m} edges; property {prop.name}, k = {k}")
        if k > graph.n:
            raise InstanceError(f"k = {k} exceeds the {graph.n} vertices of the graph")

        result = self._estimate(self._estimation_state(graph, k, prop, mode="property", labelled=self.run.labelled))
        return EstimateReport(config=self.run, property=prop.name, k=k, labelled=self.run.labelled,
                              **result["result"])

    def motif(self) -> MotifReport:
        graph = self._graph()
        coloring = read_coloring(self.run.coloring, graph.n)
        motif = ColorMultiset.parse(self.run.motif, coloring)
        k = motif.size
        names = _motif_names(self.run.motif)
        console.banner("SUBGRAPH COUNTER - Graph Motif")
        console.step(f"Graph: {graph.n} vertices, {graph.m} edges; motif {names}")
        if k > graph.n:
            raise InstanceError(f"motif has {k} vertices but the graph only {graph.n}")

        if not self.run.approximate:
            count = brute_count_motif(graph, coloring, motif)
            console.ok(f"count {count}")
            return MotifReport(config=self.run, motif=names, k=k, method="exact", value=float(count),
                               value_exact=str(count), seed=self.run.seed)

        state = self._estimation_state(graph, k, CONNECTED, mode="motif", labelled=False,
                                       coloring=coloring, motif=motif)
        result = self._estimate(state)
        return MotifReport(config=self.run, motif=names, k=k, method="approximate", **result["result"])

    def verify(self) -> VerifyReport:
        console.banner("SUBGRAPH COUNTER - Identity Suites")
        console.step(f"k_max = {self.run.k_max}, {self.run.instances} instance(s) per suite, seed {self.run.seed}")
        state = VerifyState(
            settings=SuiteSettings(
                k_max=self.run.k_max,
                instances=self.run.instances,
                seed=self.run.seed,
                inject_fault=self.run.inject_fault,
                timing=self.run.timing,
            ),
            suite_queue=list(SUITE_ORDER),
            completed_suites=[],
            results=[],
            needs_more_suites=True,
            metrics={},
        )
        result = create_verify_graph().invoke(state, {"recursion_limit": 4 * len(SUITE_ORDER) + 10})
        results = result["results"]
        failed = sum(1 for r in results if not r.passed)
        return VerifyReport(config=self.run, passed=result["passed"], checked=len(results),
                            failed=failed, results=results)

    def gen(self) -> GenReport:
        console.banner("SUBGRAPH COUNTER - Instance Generator")
        coloring = None
        if self.run.named is not None:
            graph, coloring = named_instance(self.run.named, self.run.n)
            console.step(f"Named instance: {self.run.named}")
        else:
            graph = random_graph(self.run.n, self.run.p, self.run.seed)
            console.step(f"G({self.run.n}, {self.run.p}) with seed {self.run.seed}")
        if self.run.colors is not None:
            coloring = random_coloring(graph.n, self.run.colors, self.run.seed + 1)

        storage.write_text(dump_graph(graph), self.run.output)
        console.ok(f"Graph written to: {self.run.output}")
        coloring_path = None
        if coloring is not None and self.run.coloring_output is not None:
            coloring_path = self.run.coloring_output
            storage.write_text(dump_coloring(coloring), coloring_path)
            console.ok(f"Coloring written to: {coloring_path}")
        return GenReport(config=self.run, n=graph.n, m=graph.m, graph_path=self.run.output,
                         coloring_path=coloring_path, colors=len(coloring.palette) if coloring_path else None)


def _motif_names(spec: str) -> Dict[str, int]:
    """Motif spec as written: color token → total multiplicity."""
    names: Dict[str, int] = {}
    for item in spec.split(","):
        token, _, mult = item.strip().rpartition(":")
        if token:
            names[token] = names.get(token, 0) + int(mult)
    return names


def _seed_arg(value: str) -> int:
    if value == "random":
        return random.SystemRandom().randrange(2 ** 31)
    try:
        return int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer or 'random', got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed_arg, default=config.DEFAULT_SEED,
                        help=f"Integer seed or 'random' (default: {config.DEFAULT_SEED})")
    common.add_argument("--output", "-o", help="Write the report (gen: the graph) here instead of stdout")
    common.add_argument("--timing", action="store_true", help="Add wall-clock fields to the report")
    common.add_argument("--quiet", "-q", action="store_true", help="Silence progress on stderr")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--graph", "-g", required=True, help="Edge-list file ('n m' header, 'u v' lines)")

    prop = argparse.ArgumentParser(add_help=False)
    choice = prop.add_mutually_exclusive_group(required=True)
    choice.add_argument("--property", help="Bundled property: connected, hamiltonian, non-bipartite, clique, path, edgeless")
    choice.add_argument("--pattern-file", help="Minimal-pattern list ('k p' header, 'u-v,...' lines)")
    prop.add_argument("-k", type=int, help="Pattern size (implied by --pattern-file)")
    prop.add_argument("--labelled", action="store_true", help="Count tuples instead of vertex sets")

    accuracy = argparse.ArgumentParser(add_help=False)
    accuracy.add_argument("--eps", dest="epsilon", type=float, default=0.1, help="Relative error (default: 0.1)")
    accuracy.add_argument("--delta", type=float, default=0.05, help="Failure probability (default: 0.05)")
    accuracy.add_argument("--family", choices=["auto", "exact-greedy", "randomized"], default="auto",
                          help="Hash family construction (default: auto)")
    accuracy.add_argument("--workers", type=int, default=config.DEFAULT_WORKERS,
                          help="Worker processes for the trials; the result does not depend on it")
    accuracy.add_argument("--trial-rule", choices=["sets", "multiplicity"], default="sets",
                          help="Size the trial count by the number of sets m (default) or by the "
                               "bound on sets per element")
    accuracy.add_argument("--save-family", help="Write the hash family used as JSON")

    parser = argparse.ArgumentParser(
        description="Count induced subgraphs with a graph property, exactly or approximately"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("exact", parents=[common, instance, prop], help="Brute-force count")
    commands.add_parser("approx", parents=[common, instance, prop, accuracy], help="Color-coding estimate")

    motif = commands.add_parser("motif", parents=[common, instance, accuracy], help="Colored motif count")
    motif.add_argument("--coloring", "-c", required=True, help="Coloring file ('vertex color' lines)")
    motif.add_argument("--motif", "-m", required=True, help="Motif spec, e.g. red:1,blue:2")
    motif.add_argument("--approximate", action="store_true", help="Estimate instead of enumerating")

    verify = commands.add_parser("verify", parents=[common], help="Run the identity suites")
    verify.add_argument("--k-max", type=int, default=4, help="Largest k in the suites (default: 4)")
    verify.add_argument("--instances", type=int, default=5, help="Random instances per suite (default: 5)")
    verify.add_argument("--inject-fault", action="store_true", help="Flip one meet-matrix entry")

    gen = commands.add_parser("gen", parents=[common], help="Write a random or named instance")
    gen.add_argument("--n", type=int, help="Vertex count")
    gen.add_argument("--p", type=float, default=0.5, help="Edge probability (default: 0.5)")
    gen.add_argument("--colors", type=int, help="Also draw a uniform coloring with this many colors")
    gen.add_argument("--named", choices=["cycle", "complete", "petersen", "star"], help="Named instance")
    gen.add_argument("--coloring-output", help="Where to write the coloring")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    console.set_quiet(args.quiet)

    fields = {name: value for name, value in vars(args).items()
              if name in RunConfig.model_fields and value is not None}
    try:
        run = RunConfig(**fields)
    except ValidationError as e:
        for err in e.errors():
            console.error(f"invalid arguments: {err['msg']}")
        return 2

    try:
        report = SubgraphCounter(run).execute()
    except CountingError as e:
        console.error(str(e))
        return e.exit_code

    storage.write_report(report, None if run.command == "gen" else run.output)
    if isinstance(report, VerifyReport) and not report.passed:
        console.fail(f"{report.failed} of {report.checked} identities failed")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
