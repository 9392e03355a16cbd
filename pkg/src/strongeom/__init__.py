"""Exact chirotopes, wedge chirotopes and strong geometries of rational point
configurations, with Gauss codes of polygonal knots and linear spatial graphs
read off from sign data alone."""

from .chirotope import (
    AFFINE,
    LINEAR,
    Chirotope,
    PointConfig,
    SignedCircuit,
    affine_chirotope,
    check_axioms,
    circuit_of,
    general_position,
    linear_chirotope,
    witness_chirotope,
)
from .gauss import Entry, GaussDiagram, canonical_form, diagrams_equal, parse, serialize
from .graph import (
    AbstractGraph,
    LinearSpatialGraph,
    cyclic_order_at,
    extract_graphoid,
    extract_graphoid_geometric,
    spatial_graphs_equivalent,
)
from .knot import (
    PolygonalKnot,
    crossing_exists,
    crossing_sign,
    extract_gauss_combinatorial,
    extract_gauss_geometric,
    order_crossings,
    validate_input,
)
from .predicates import det_sign, hyperplane_vector, oriented_projection_basis
from .reconstruct import check_realizable, diagram_isomorphic, faces
from .wedge import (
    StrongGeometry,
    compare_strong_geometries,
    recover_base_from_wedge,
    strong_geometry,
    wedge_chirotope,
    wedge_family,
    witnessed_wedge_chirotope,
)

__version__ = "0.1.0"
