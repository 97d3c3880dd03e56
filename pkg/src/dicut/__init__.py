"""dicut: bipartitions of directed graphs maximizing the smaller directional cut."""

from .core import (
    Bipartition,
    CutStats,
    Digraph,
    GraphInputError,
    UnderlyingGraph,
    cut_stats,
    read_edge_list,
    write_edge_list,
)
from .decomposition import (
    Matching,
    StarDecomposition,
    TightReport,
    maximize_free_vertices,
    maximum_matching,
    star_decompose,
    tight_components,
)
from .generators import (
    GadgetSpec,
    concluding_gadgets,
    d1_gadget,
    eulerian_complete,
    lower_bound_gadget,
    random_min_outdeg,
)
from .oracle import OracleResult, exact_judicious
from .pipeline import (
    PartitionResult,
    PipelineConfig,
    StructuralDiagnostic,
    guarantee_target,
    local_search,
    run,
    run_d2,
    run_d3,
)
from .samplers import (
    SampleOutcome,
    SamplerConfig,
    expected_cuts,
    quarter_partition,
    second_moment_partition,
    star_bisection,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "CutStats",
    "Digraph",
    "GadgetSpec",
    "GraphInputError",
    "Matching",
    "OracleResult",
    "PartitionResult",
    "PipelineConfig",
    "SampleOutcome",
    "SamplerConfig",
    "StarDecomposition",
    "StructuralDiagnostic",
    "TightReport",
    "UnderlyingGraph",
    "concluding_gadgets",
    "cut_stats",
    "d1_gadget",
    "eulerian_complete",
    "exact_judicious",
    "expected_cuts",
    "guarantee_target",
    "local_search",
    "lower_bound_gadget",
    "maximize_free_vertices",
    "maximum_matching",
    "quarter_partition",
    "random_min_outdeg",
    "read_edge_list",
    "run",
    "run_d2",
    "run_d3",
    "second_moment_partition",
    "star_bisection",
    "star_decompose",
    "tight_components",
    "write_edge_list",
]
