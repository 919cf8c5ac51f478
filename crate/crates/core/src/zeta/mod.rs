//! Igusa's local zeta function in `t = p^{-s}`: the explicit formula over
//! the faces of `Delta_0(f)`, an independent oracle from residue counts, and
//! pole data at `s = -sigma`.

mod formula;
mod oracle;
mod poles;
mod ratfun;

pub use formula::{
    collapse_terms, count_torus_zeros, igusa_zeta, l_tau_rational, s_tau_rational, ZetaResult, ZetaTerm,
};
pub use oracle::{zero_counts, zeta_series_oracle};
pub use poles::{
    dh_limit_check, pole_report, CandidateOrder, ConeLimitRow, DHConstants, DHReport, DHRow, PoleReport,
    TorusCountRow,
};
pub use ratfun::{Poly, RationalFunctionT};
