//! Taylor coefficients of `Z_f` from residue counts:
//! `coeff_v = M_v / p^{vn} - M_{v+1} / p^{(v+1)n}` with
//! `M_v = #{x mod p^v : f(x) = 0 mod p^v}`.
//!
//! Level 1 is a full sweep of `F_p^n`. Every zero modulo `p^{v+1}` reduces
//! to a zero modulo `p^v`, so level `v+1` is counted by evaluating all
//! `p^n` lifts `x + p^v y` of each zero of level `v`. No derivative
//! information is used.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::poly::{IntPolynomial, ResidueSweep};
use crate::rational::pow_rat;
use crate::{Error, Result};

/// `[M_0, ..., M_levels]`.
pub fn zero_counts(f: &IntPolynomial, p: u64, levels: u32, budget: u64) -> Result<Vec<u64>> {
    let n = f.nvars();
    let top = (p as u128).checked_pow(levels).filter(|&m| m <= u64::MAX as u128);
    if levels > 0 && top.is_none() {
        return Err(Error::InvalidArgument(format!("modulus {p}^{levels} is too large")));
    }
    let lifts = (p as u128).pow(n as u32);
    let mut counts = vec![1u64];
    if levels == 0 {
        return Ok(counts);
    }
    if lifts > budget as u128 {
        return Err(Error::budget(lifts, budget));
    }
    let mut zeros = ResidueSweep::new(f, 1, p, p).zeros();
    counts.push(zeros.len() as u64);
    let mut modulus = p;
    let mut spent = lifts;
    // Lifting the zeros of level v costs p^n per zero, so the work is
    // bounded by p^n times the level-v budget.
    let lift_budget = budget as u128 * lifts;
    for _ in 1..levels {
        let cost = zeros.len() as u128 * lifts;
        spent += cost;
        if spent > lift_budget {
            return Err(Error::budget(spent, budget));
        }
        let next_mod = modulus * p;
        zeros = zeros
            .par_iter()
            .flat_map_iter(|x| {
                let mut found = Vec::new();
                let mut y = x.clone();
                for i in 0..lifts as u64 {
                    let mut r = i;
                    for j in (0..n).rev() {
                        y[j] = x[j] + modulus * (r % p);
                        r /= p;
                    }
                    if f.eval_residue(&y, next_mod) == 0 {
                        found.push(y.clone());
                    }
                }
                found
            })
            .collect();
        counts.push(zeros.len() as u64);
        modulus = next_mod;
    }
    Ok(counts)
}

/// Coefficients of `t^0, ..., t^v`. Requires `p^{vn} <= budget`.
pub fn zeta_series_oracle(f: &IntPolynomial, p: u64, v: u32, budget: u64) -> Result<Vec<BigRational>> {
    let n = f.nvars() as i64;
    let cost = (p as u128).checked_pow(v * n as u32).unwrap_or(u128::MAX);
    if cost > budget as u128 {
        return Err(Error::budget(cost, budget));
    }
    let m = zero_counts(f, p, v + 1, budget)?;
    let level = |k: usize| BigRational::from_integer(BigInt::from(m[k])) * pow_rat(p, -(k as i64) * n);
    Ok((0..=v as usize).map(|k| level(k) - level(k + 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rational::{int, rat};

    #[test]
    fn zero_counts_by_enumeration() {
        let f = parse_polynomial("x1^2").unwrap();
        assert_eq!(zero_counts(&f, 5, 3, 1 << 20).unwrap(), vec![1, 1, 5, 5]);
        let f = parse_polynomial("x1*x2").unwrap();
        // x1 x2 = 0 mod 9: pairs with v(x1) + v(x2) >= 2.
        assert_eq!(zero_counts(&f, 3, 2, 1 << 20).unwrap(), vec![1, 5, 21]);
    }

    #[test]
    fn lifting_matches_full_sweep() {
        let f = parse_polynomial("x1^2+x2^3").unwrap();
        let counts = zero_counts(&f, 5, 3, 1 << 24).unwrap();
        for (v, &c) in counts.iter().enumerate().skip(1) {
            let m = 5u64.pow(v as u32);
            let direct = ResidueSweep::new(&f, 1, m, m).histogram()[0];
            assert_eq!(c, direct);
        }
    }

    #[test]
    fn oracle_examples() {
        let f = parse_polynomial("x1^2").unwrap();
        assert_eq!(
            zeta_series_oracle(&f, 5, 2, 1 << 20).unwrap(),
            vec![rat(4, 5), int(0), rat(4, 25)]
        );
        let f = parse_polynomial("x1").unwrap();
        assert_eq!(
            zeta_series_oracle(&f, 3, 2, 1 << 20).unwrap(),
            vec![rat(2, 3), rat(2, 9), rat(2, 27)]
        );
        assert!(zeta_series_oracle(&f, 3, 30, 1 << 20).is_err());
    }
}
