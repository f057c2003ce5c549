"""Nonobtuse simplices, vertex Gramians and the matrix classes they induce."""
from .scalar import EXACT, FLOAT, DimensionMismatch, Field, ParseError, Q, to_rational
from .linalg import NotPositiveDefinite, Singular, cholesky_upper, det, inverse, is_spd, solve
from .simplex import (
    Degenerate,
    FaceAccess,
    Simplex,
    VertexGramian,
    all_vertex_gramians,
    dihedral_angles,
    dihedral_report,
    face_gramian,
    gramian_at_vertex,
    gramian_from_simplex,
    normal_data,
    normal_matrix,
    project_onto_face,
    radii,
    reconstruct_simplex,
)
from .classes import (
    NoMatching,
    blocking_columns,
    chain_level,
    classify,
    equilibrium_potential,
    in_Ddd,
    in_M,
    in_Mdd,
    is_nonblocking,
    is_stieltjes,
    is_strictly_ultrametric,
    is_type_d,
    is_ultrametric,
    minimal_blocking_submatrix,
    sign_pattern_decomposition,
)
from .dual import (
    classify_tetrahedron,
    classify_triangle,
    cylinder_side,
    dual_hull_cell,
    in_suborthocentric_set,
    is_suborthocentric_simplex,
    nu,
    suborthocentric_cells,
)
from .cp import CpFactor, constructive_ordering, cp_factor_nonobtuse_facets, nonneg_cholesky

__version__ = "0.1.0"
