use serde::{Serialize, Serializer};

use crate::field::{self, FFPolynomial, LogEvaluator};
use crate::poly::IntPolynomial;
use crate::{Error, Result};

/// Point counts of the critical locus `C_f = {grad f = 0}` over `F_{p^k}`
/// and a dimension guess from their growth.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalDimEstimate {
    pub p: u64,
    /// `(k, #C_f(F_{p^k}))`.
    pub counts: Vec<(u32, u64)>,
    /// `None` stands for an empty locus (dimension minus infinity).
    #[serde(serialize_with = "ser_dim")]
    pub delta_hat: Option<i64>,
    pub note: String,
}

fn ser_dim<S: Serializer>(d: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match d {
        Some(v) => s.serialize_i64(*v),
        None => s.serialize_str("-inf"),
    }
}

pub fn critical_dim_estimate(
    f: &IntPolynomial,
    p: u64,
    ks: &[u32],
    budget: u64,
) -> Result<CriticalDimEstimate> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("the zero polynomial has no critical locus".into()));
    }
    let n = f.nvars();
    let cost: u128 = ks.iter().map(|&k| (p as u128).pow(k * n as u32)).sum();
    if cost > budget as u128 {
        return Err(Error::budget(cost, budget));
    }
    let mut counts = Vec::new();
    for &k in ks {
        let fb = FFPolynomial::reduce(f, p, k)?;
        let grads: Vec<LogEvaluator> = fb.gradient().iter().map(LogEvaluator::new).collect();
        let c = field::affine_fold(
            fb.field(),
            n,
            || 0u64,
            |acc, logs| {
                if grads.iter().all(|g| g.eval_affine(logs) == 0) {
                    *acc += 1;
                }
            },
            |a, b| a + b,
        );
        counts.push((k, c));
    }
    let positive: Vec<(u32, u64)> = counts.iter().copied().filter(|&(_, c)| c > 0).collect();
    let (delta_hat, note) = match positive.as_slice() {
        [] => (None, "no critical points found".to_string()),
        [(k, c)] => (
            Some(((*c as f64).ln() / ((p as f64).ln() * *k as f64)).round() as i64),
            format!("single field: rounded log_q of the count at k = {k}"),
        ),
        _ => {
            let (k0, c0) = positive[0];
            let (k1, c1) = positive[positive.len() - 1];
            let slope = ((c1 as f64).ln() - (c0 as f64).ln()) / ((p as f64).ln() * (k1 - k0) as f64);
            (
                Some(slope.round() as i64),
                format!("slope of log_p(count) between k = {k0} and k = {k1}: {slope:.3}"),
            )
        }
    };
    Ok(CriticalDimEstimate {
        p,
        counts,
        delta_hat,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn est(s: &str) -> CriticalDimEstimate {
        critical_dim_estimate(&parse_polynomial(s).unwrap(), 7, &[1, 2], 10_000_000).unwrap()
    }

    #[test]
    fn isolated_critical_point() {
        let e = est("x1^2+x2^3");
        assert_eq!(e.counts, vec![(1, 1), (2, 1)]);
        assert_eq!(e.delta_hat, Some(0));
    }

    #[test]
    fn critical_curve() {
        let e = est("x1^2*x2^3");
        assert_eq!(e.counts, vec![(1, 13), (2, 97)]);
        assert_eq!(e.delta_hat, Some(1));
    }

    #[test]
    fn empty_critical_locus() {
        let e = est("x1");
        assert_eq!(e.counts, vec![(1, 0), (2, 0)]);
        assert_eq!(e.delta_hat, None);
        assert_eq!(serde_json::to_value(&e).unwrap()["delta_hat"], "-inf");
    }
}
