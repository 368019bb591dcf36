//! Plücker geometry of `Gr(2,5)` and of the fourfold `Y`: subspaces, lines, planes,
//! the vertex conic and its dual, and the plane sweep `R`.

mod conic;
mod flag;
mod planes;
mod pluecker;
mod subspace;

pub use conic::{
    dual_conic, dual_conic_ideal, on_vertex_conic, p4_ring, vertex_conic_ideal,
    vertex_conic_point, ConicParam,
};
pub use flag::{lines_with_vertex, vertex_map, FlagLine, LineFamily, LineFamilyKind};
pub use planes::{
    ideal_of_r, line_in_some_pt, line_in_variety, make_pt, make_s, plane_meet,
    planes_containing_line, v4_of, PlaneInY, PlaneKind,
};
pub use pluecker::{
    linear_values, on_y, pluecker_index, pluecker_relations, pluecker_ring, wedge, wedge2,
    y_ideal, y_linear_form_vectors, y_linear_forms, PlueckerVector, PAIRS, PLUCKER,
};
pub use subspace::Subspace;

pub(crate) use planes::linear_poly;
