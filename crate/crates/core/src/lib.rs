//! Newton-polyhedron invariants, exponential sums modulo prime powers and
//! Igusa local zeta functions for integer polynomials that are
//! non-degenerate with respect to the faces of their Newton polyhedron at
//! the origin.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: exact sparse integer polynomials, parsing, modular sweeps.
//! * [`field`]: finite fields `F_{p^k}` and polynomials over them.
//! * [`geom`]: Newton polyhedra, face lattices, normal cones and half-open
//!   simplicial decompositions with their lattice-point generating data.
//! * [`invariants`]: sigma/kappa, face polynomials, hyperplane support,
//!   non-degeneracy certificates and critical-locus estimates.
//! * [`expsum`]: brute-force and cone-decomposed exponential sums, torus
//!   character sums and bound reports.
//! * [`zeta`]: exact rational functions in `t = p^{-s}`, the explicit
//!   face/cone formula for the local zeta function, its series oracle and
//!   pole data.
//! * [`harness`]: corpus, run configuration and verification suites used by
//!   the command line front end.

pub mod error;
pub mod expsum;
pub mod field;
pub mod geom;
pub mod harness;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod zeta;

pub use error::{Error, Result};
pub use field::{FFPolynomial, GaloisField};
pub use geom::{Cone, Face, HalfOpenSimplicialCone, LinearData, NewtonPolyhedron};
pub use poly::{ExponentVector, IntPolynomial};
