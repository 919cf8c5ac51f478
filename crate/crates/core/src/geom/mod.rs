//! Newton polyhedra at the origin and the cone machinery behind the
//! lattice sums over their normal fans.

mod cone;
mod polyhedron;

pub use cone::{triangulate_half_open, Cone, HalfOpenSimplicialCone};
pub use polyhedron::{enumerate_faces, newton_polyhedron, Face, Facet, LinearData, NewtonPolyhedron};
