//! Invariants of a polynomial read off from its Newton polyhedron, the
//! hyperplane-support decomposition and non-degeneracy checks over finite
//! fields.

mod critical;
mod hyperplane;
mod nondeg;
mod sigma;

pub use critical::{critical_dim_estimate, CriticalDimEstimate};
pub use hyperplane::{build_f_i, hyperplane_support, HyperplaneDecomposition};
pub use nondeg::{
    default_k_max, nondegeneracy_check, verify_witness, FaceCheck, FaceVerdict, Mode,
    NondegCertificate, Verdict,
};
pub use sigma::{
    face_polynomial, sigma_kappa, sigma_of_face, sigma_of_polynomial, SigmaInvariants,
};
