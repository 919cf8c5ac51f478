//! Exponential sums `S_f(p, m)`: the brute-force oracle, finite-field torus
//! character sums, the evaluation through the normal fan of the Newton
//! polyhedron, and empirical bound reports.

mod bounds;
mod complex;
mod conegf;
mod decomposed;
mod naive;

pub use bounds::{bound_report, ff_bound_report, BoundReport, BoundRow, FFBoundReport, FFBoundRow, IgusaRow};
pub use complex::ComplexValue;
pub use conegf::{a_b_tau, cone_generating_function, ConeGF, ConePiece};
pub use decomposed::expsum_decomposed;
pub use naive::{char_sum_naive, torus_char_sum};
