use num_rational::BigRational;
use serde::Serialize;

use super::naive::{char_sum_naive, torus_char_sum};
use crate::field::FFPolynomial;
use crate::geom::newton_polyhedron;
use crate::invariants::{hyperplane_support, nondegeneracy_check, sigma_kappa, Mode};
use crate::poly::IntPolynomial;
use crate::rational;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub p: u64,
    pub m: u32,
    pub abs: f64,
    /// `|S| p^{sigma m} m^{1 - kappa}`.
    pub normalized: f64,
    /// Certified non-degenerate at `p` (over `F_p`).
    pub certified: bool,
    pub exceeds_stored: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IgusaRow {
    pub p: u64,
    pub m: u32,
    /// `|S| p^{sigma_0 m} m^{1 - n}` with `sigma_0 = min(1, sigma)`.
    pub normalized: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub id: String,
    #[serde(with = "rational::as_string")]
    pub sigma: BigRational,
    pub kappa: usize,
    #[serde(with = "rational::as_string")]
    pub sigma0: BigRational,
    pub hyperplane_support: bool,
    /// Rows covered by the bound: `m >= 2`, or any `m` with hyperplane
    /// support.
    pub rows: Vec<BoundRow>,
    /// `m = 1` rows for polynomials without hyperplane support.
    pub m1_rows: Vec<BoundRow>,
    pub igusa_rows: Vec<IgusaRow>,
    /// Grid points skipped for exceeding the enumeration budget.
    pub skipped: Vec<(u64, u32)>,
    /// Maximum of `normalized` over certified covered rows.
    pub c_empirical: f64,
    pub c_empirical_igusa: f64,
    pub stored_constant: Option<f64>,
    pub violations: usize,
}

pub fn bound_report(
    id: &str,
    f: &IntPolynomial,
    primes: &[u64],
    ms: &[u32],
    budget: u64,
    stored_constant: Option<f64>,
) -> Result<BoundReport> {
    let n = f.nvars();
    let poly = newton_polyhedron(&f.support())?;
    let inv = sigma_kappa(&poly);
    let sigma = inv.sigma_f64();
    let sigma0 = rational::to_f64(&inv.lct);
    let hyper = hyperplane_support(f).exists;
    let mut report = BoundReport {
        id: id.to_string(),
        sigma: inv.sigma.clone(),
        kappa: inv.kappa,
        sigma0: inv.lct.clone(),
        hyperplane_support: hyper,
        rows: Vec::new(),
        m1_rows: Vec::new(),
        igusa_rows: Vec::new(),
        skipped: Vec::new(),
        c_empirical: 0.0,
        c_empirical_igusa: 0.0,
        stored_constant,
        violations: 0,
    };
    for &p in primes {
        let certified = nondegeneracy_check(f, &poly, p, Mode::Strong, Some(1), budget)
            .map(|c| c.is_certified())
            .unwrap_or(false);
        for &m in ms {
            let s = match char_sum_naive(f, p, m, 1, budget) {
                Ok(s) => s,
                Err(Error::BudgetExceeded { .. }) => {
                    report.skipped.push((p, m));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let abs = s.abs();
            let pf = p as f64;
            let mf = m as f64;
            let normalized = abs * pf.powf(sigma * mf) * mf.powf(1.0 - inv.kappa as f64);
            let covered = m >= 2 || hyper;
            let exceeds = covered && certified && stored_constant.is_some_and(|c| normalized > c);
            let row = BoundRow {
                p,
                m,
                abs,
                normalized,
                certified,
                exceeds_stored: exceeds,
            };
            if covered {
                if certified {
                    report.c_empirical = report.c_empirical.max(normalized);
                }
                report.violations += exceeds as usize;
                report.rows.push(row);
            } else {
                report.m1_rows.push(row);
            }
            if covered {
                let ig = abs * pf.powf(sigma0 * mf) * mf.powf(1.0 - n as f64);
                report.c_empirical_igusa = report.c_empirical_igusa.max(ig);
                report.igusa_rows.push(IgusaRow { p, m, normalized: ig });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct FFBoundRow {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// `|(q-1)^{-n} sum_{x in (F_q^*)^n} psi(Tr f(x))|`.
    pub abs: f64,
    /// `abs * q^sigma`.
    pub normalized: f64,
    /// `p` divides the hyperplane offset `b`.
    pub bad_prime: bool,
    pub certified: bool,
    pub exceeds_stored: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FFBoundReport {
    pub id: String,
    #[serde(with = "rational::as_string")]
    pub sigma: BigRational,
    pub hyperplane_offset: i64,
    pub rows: Vec<FFBoundRow>,
    pub skipped: Vec<(u64, u32)>,
    /// Maximum of `normalized` over certified rows at good primes.
    pub c_empirical: f64,
    pub stored_constant: Option<f64>,
    pub violations: usize,
}

/// Normalized torus sums over `F_q`, `q = p^k`. Rows at primes dividing the
/// hyperplane offset, or where non-degeneracy is not certified over
/// `F_{p^k}`, are kept but not counted.
pub fn ff_bound_report(
    id: &str,
    f: &IntPolynomial,
    fields: &[(u64, u32)],
    budget: u64,
    stored_constant: Option<f64>,
) -> Result<FFBoundReport> {
    let d = hyperplane_support(f);
    if !d.exists {
        return Err(Error::Hypothesis(
            "the support does not lie on a hyperplane avoiding the origin".into(),
        ));
    }
    let n = f.nvars();
    let poly = newton_polyhedron(&f.support())?;
    let inv = sigma_kappa(&poly);
    let sigma = inv.sigma_f64();
    let mut report = FFBoundReport {
        id: id.to_string(),
        sigma: inv.sigma.clone(),
        hyperplane_offset: d.b,
        rows: Vec::new(),
        skipped: Vec::new(),
        c_empirical: 0.0,
        stored_constant,
        violations: 0,
    };
    for &(p, k) in fields {
        let q = p.pow(k);
        let fb = FFPolynomial::reduce(f, p, k)?;
        let s = match torus_char_sum(&fb, 1, budget) {
            Ok(s) => s,
            Err(Error::BudgetExceeded { .. }) => {
                report.skipped.push((p, k));
                continue;
            }
            Err(e) => return Err(e),
        };
        let certified = nondegeneracy_check(f, &poly, p, Mode::Strong, Some(k), budget)
            .map(|c| c.is_certified())
            .unwrap_or(false);
        let abs = s.abs() / ((q - 1) as f64).powi(n as i32);
        let normalized = abs * (q as f64).powf(sigma);
        let bad_prime = d.b % p as i64 == 0;
        let counted = certified && !bad_prime;
        let exceeds = counted && stored_constant.is_some_and(|c| normalized > c);
        if counted {
            report.c_empirical = report.c_empirical.max(normalized);
        }
        report.violations += exceeds as usize;
        report.rows.push(FFBoundRow {
            p,
            k,
            q,
            abs,
            normalized,
            bad_prime,
            certified,
            exceeds_stored: exceeds,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    const BUDGET: u64 = 100_000_000;

    #[test]
    fn squares_are_sharp() {
        let f = parse_polynomial("x1^2").unwrap();
        let r = bound_report("sq", &f, &[3, 5, 7, 13], &[1, 2, 3], BUDGET, Some(1.0 + 1e-9)).unwrap();
        assert!(r.m1_rows.is_empty());
        assert_eq!(r.rows.len(), 12);
        for row in &r.rows {
            assert!((row.normalized - 1.0).abs() < 1e-9, "{row:?}");
        }
        assert!((r.c_empirical - 1.0).abs() < 1e-9);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn linear_rows_vanish() {
        let f = parse_polynomial("x1").unwrap();
        let r = bound_report("lin", &f, &[3, 5], &[1, 2], BUDGET, None).unwrap();
        assert!(r.rows.iter().all(|row| row.abs < 1e-12));
    }

    #[test]
    fn no_hyperplane_separates_m1() {
        let f = parse_polynomial("x1^2*x2 - x1").unwrap();
        let r = bound_report("fold", &f, &[5, 7], &[1, 2, 3], BUDGET, None).unwrap();
        assert_eq!(r.m1_rows.len(), 2);
        assert_eq!(r.rows.len(), 4);
        assert!(r.c_empirical.is_finite());
    }

    #[test]
    fn finite_field_rows() {
        let f = parse_polynomial("x1").unwrap();
        let r = ff_bound_report("lin", &f, &[(3, 1), (5, 1), (7, 1), (2, 3)], BUDGET, Some(2.0)).unwrap();
        for row in &r.rows {
            // |sum| = 1, so abs * q = q / (q - 1) < 2
            assert!((row.normalized - row.q as f64 / (row.q - 1) as f64).abs() < 1e-12);
        }
        assert_eq!(r.violations, 0);
        let g = parse_polynomial("x1^2*x2 - x1").unwrap();
        assert!(matches!(ff_bound_report("fold", &g, &[(5, 1)], BUDGET, None), Err(Error::Hypothesis(_))));
    }
}
