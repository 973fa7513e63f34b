"""Multi-goal path finding: informed sampling planner and a uniform baseline."""

from ._core import (
    CSV_HEADER,
    Baseline,
    Box,
    Env,
    IstStar,
    MgpfError,
    Path,
    Planner,
    Rng,
    TraceRow,
    compare,
    generate_terminals,
    heuristic,
    kruskal_weight,
    optimal_path_cost,
    run_config,
    sample_informed,
    sample_uniform_free,
    sweep,
)

__all__ = [
    "CSV_HEADER",
    "Baseline",
    "Box",
    "Env",
    "IstStar",
    "MgpfError",
    "Path",
    "Planner",
    "Rng",
    "TraceRow",
    "compare",
    "generate_terminals",
    "heuristic",
    "kruskal_weight",
    "optimal_path_cost",
    "run_config",
    "sample_informed",
    "sample_uniform_free",
    "sweep",
]
