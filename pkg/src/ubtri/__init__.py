"""Balanced and unbalanced triangle counting on uncertain signed graphs."""

from .balance import (
    ClassCounts,
    Threshold,
    TriangleClass,
    absolute_value,
    balance_probability,
    classify,
    lemma2_excluded,
    lemma3_bound,
    pairwise_bound,
    unbalance_probability,
)
from .exact import (
    TriangleResult,
    brute_force_oracle,
    brute_force_triangles,
    count_baseline,
    count_improved,
    enumerate_triangles,
    top_k,
)
from .genprob import DistributionSpec, assign, describe
from .graph import (
    EdgeListError,
    EdgeRecord,
    RawEdges,
    UncertainSignedGraph,
    aeo_before,
    build_graph,
    load_edge_list,
    read_graph,
    write_edge_list,
)
from .sampling import (
    SampleReport,
    edge_estimate,
    edge_local_count,
    estimate,
    mape,
    vertex_estimate,
    vertex_local_count,
)

__version__ = "0.1.0"
