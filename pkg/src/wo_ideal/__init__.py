"""Edge ideals of vertex-weighted oriented graphs: strong-cover primary
decomposition, unmixed / Cohen-Macaulay / Gorenstein verdicts for chordal
and simplicial underlying graphs, and a homological cross-check."""
from importlib.resources import files

from .classification import ClassificationReport, classify, system_of_parameters
from .covers import (
    CoverPartition,
    cover_partition,
    is_strong_cover,
    minimal_vertex_covers,
    strong_vertex_covers,
)
from .errors import (
    BudgetExceeded,
    CapacityError,
    InvalidGraphError,
    InvariantViolation,
    NotACoverError,
    NotApplicableError,
    NotStrongCoverError,
    WoIdealError,
)
from .graph_core import (
    SimpleGraph,
    SimplexPartition,
    WeightedOrientedGraph,
    build_graph,
    is_chordal,
    simplex_partition,
    simplicial_analysis,
    underlying,
)
from .graph_io import parse_graph, serialize
from .monomial_algebra import (
    IrreducibleComponent,
    MonomialIdeal,
    edge_ideal,
    intersect,
    irreducible_component,
    is_unmixed,
    primary_decomposition,
    radical,
)
from .oracle import (
    OracleReport,
    SimplicialComplex,
    is_cm_reisner,
    oracle_verify,
    polarize,
    reduced_homology_ranks,
    stanley_reisner,
)

__version__ = "0.1.0"


def bundled(name: str) -> str:
    """Path of a bundled example graph, e.g. ``bundled("example10.json")``."""
    return str(files(__package__) / "data" / name)
