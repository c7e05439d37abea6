"""2-rigidity of 2-step nilpotent graph Lie algebras, with checkable certificates."""

from .classify import ClassificationReport, ClassificationRow, paper_table_check, run_classification
from .cohomology import (
    CohomologyDims,
    alvarez_test,
    cocycle_not_coboundary,
    cohomology_dimensions,
    delta1_matrix,
    delta2_matrix,
    h2_nil_dimension,
    tangency_matrix,
    trace_matrix,
)
from .exact import ExactMatrix
from .graph import (
    Graph,
    canonical_key,
    enumerate_graphs,
    incident_edges,
    is_complete,
    isolated_vertices,
    parse_graph6,
    serialize_graph6,
)
from .liealg import (
    BasisLabel,
    StructureConstants,
    Subspace,
    abelian_factor_dimension,
    bracket,
    center,
    derived_subalgebra,
    graph_algebra,
    jacobi_check,
    two_step_check,
)
from .rigidity import (
    Method,
    RigidityVerdict,
    Status,
    classify_graph,
    expected_verdict,
    theorem_d_witness,
    three_rigid_flag,
)

__version__ = "0.1.0"
