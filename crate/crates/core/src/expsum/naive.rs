use super::complex::{root_of_unity_sum, ComplexValue};
use crate::field::{self, FFPolynomial, LogEvaluator};
use crate::poly::{IntPolynomial, ResidueSweep};
use crate::{Error, Result};

/// `p^{-mn} sum_{x mod p^m} e^{2 pi i u f(x) / p^m}` by exhaustive
/// enumeration: an exact histogram of `u f(x) mod p^m`, then one
/// fixed-order pass over the roots of unity.
pub fn char_sum_naive(f: &IntPolynomial, p: u64, m: u32, u: u64, budget: u64) -> Result<ComplexValue> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if u % p == 0 {
        return Err(Error::InvalidArgument(format!("twist {u} is not a unit mod {p}")));
    }
    let modulus = (p as u128).pow(m);
    let points = modulus.pow(f.nvars() as u32);
    if points > budget as u128 || modulus > u32::MAX as u128 {
        return Err(Error::budget(points, budget));
    }
    let modulus = modulus as u64;
    let hist = ResidueSweep::new(f, u, modulus, modulus).histogram();
    let weights: Vec<f64> = hist.iter().map(|&c| c as f64).collect();
    Ok(root_of_unity_sum(&weights, modulus).scale(1.0 / points as f64))
}

/// `sum_{x in (F_q^*)^n} e^{2 pi i Tr(twist f(x)) / p}`, unnormalized.
pub fn torus_char_sum(fbar: &FFPolynomial, twist: u32, budget: u64) -> Result<ComplexValue> {
    if twist == 0 {
        return Err(Error::InvalidArgument("the twist must be non-zero".into()));
    }
    let fld = fbar.field().clone();
    let n = fbar.nvars();
    let points = field::torus_size(fld.size() as u64, n);
    if points > budget as u128 {
        return Err(Error::budget(points, budget));
    }
    let p = fld.characteristic() as usize;
    let ev = LogEvaluator::new(&fbar.scaled(twist));
    let hist = field::torus_fold(
        &fld,
        n,
        || vec![0u64; p],
        |h, logs| h[ev.trace_logs(logs) as usize] += 1,
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let weights: Vec<f64> = hist.iter().map(|&c| c as f64).collect();
    Ok(root_of_unity_sum(&weights, p as u64))
}
