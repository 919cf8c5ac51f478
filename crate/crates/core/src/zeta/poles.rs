//! Candidate poles, the actual pole order at `s = -sigma`, and the leading
//! coefficient `lim_{s -> -sigma} (p^{s+sigma} - 1)^E Z(s)` together with its
//! behaviour as `p` varies.
//!
//! With `t = p^{-s}`, the factor `1 - p^{-nu} t^N` vanishes at `s = -sigma`
//! exactly when `nu = sigma N`, and near there it equals `1 - p^{-eps N}` with
//! `eps = s + sigma`, so it contributes `1/N` to the limit. All other factors
//! and numerators are evaluated at `t = p^sigma` in floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::formula::{cone_pieces, count_torus_zeros, igusa_zeta, ZetaResult};
use super::ratfun::{pdivrem, Poly};
use crate::field::FFPolynomial;
use crate::geom::newton_polyhedron;
use crate::invariants::{face_polynomial, sigma_kappa, sigma_of_face, SigmaInvariants};
use crate::poly::IntPolynomial;
use crate::rational::{self, as_string, to_f64, vec_as_string};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CandidateOrder {
    #[serde(with = "as_string")]
    pub s: BigRational,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoleReport {
    pub p: u64,
    #[serde(with = "as_string")]
    pub sigma: BigRational,
    pub kappa: usize,
    /// `{-nu/N}` over all denominator factors, and `-1`; largest first.
    #[serde(with = "vec_as_string")]
    pub candidates: Vec<BigRational>,
    pub orders: Vec<CandidateOrder>,
    #[serde(with = "as_string")]
    pub largest_candidate: BigRational,
    /// Largest candidate that is an actual pole of the canonical `Z`.
    #[serde(with = "rational::option_as_string")]
    pub largest_pole: Option<BigRational>,
    pub order_at_sigma: usize,
    pub expected_order: usize,
    /// Largest number of factors of a single term vanishing at `-sigma`.
    pub term_order_bound: usize,
    pub leading_limit: f64,
    pub method: String,
    /// `lim (p^{s+sigma} - 1)^order_at_sigma Z(s)`, from the canonical form.
    pub actual_order_limit: f64,
}

impl PoleReport {
    /// The largest actual pole is `-sigma` or `-1`.
    pub fn dichotomy_holds(&self) -> bool {
        match &self.largest_pole {
            None => true,
            Some(s) => *s == -&self.sigma || *s == -BigRational::one(),
        }
    }
}

/// `t^b - p^a`, the minimal polynomial of `p^{a/b}` over the rationals.
fn pole_polynomial(p: u64, r: &BigRational) -> Poly {
    let a = r.numer().to_u32().expect("small pole numerator");
    let b = r.denom().to_usize().expect("small pole denominator");
    let mut d = vec![BigRational::zero(); b + 1];
    d[0] = -BigRational::from_integer(num_traits::pow(BigInt::from(p), a as usize));
    d[b] = BigRational::one();
    d
}

/// Evaluates an exact polynomial at `t = p^sigma`.
fn eval_at_power(a: &[BigRational], p: u64, sigma: &BigRational) -> f64 {
    let (pf, sf) = (p as f64, to_f64(sigma));
    a.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| to_f64(c) * pf.powf(sf * e as f64))
        .sum()
}

/// Writing the canonical denominator as `(t^b - t0^b)^k R(t)` with
/// `t0 = p^sigma`, and using `p^{s+sigma} - 1 = t0/t - 1`, the limit of
/// `(p^{s+sigma} - 1)^k Z` is `(-1)^k N(t0) / (t0^k (b t0^{b-1})^k R(t0))`.
fn canonical_limit(z: &super::RationalFunctionT, p: u64, sigma: &BigRational, k: usize) -> f64 {
    let d = pole_polynomial(p, sigma);
    let mut rest = z.denominator().to_vec();
    for _ in 0..k {
        rest = pdivrem(&rest, &d).0;
    }
    let b = sigma.denom().to_f64().unwrap_or(1.0);
    let t0 = (p as f64).powf(to_f64(sigma));
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let slope = b * t0.powf(b - 1.0);
    sign * eval_at_power(z.numerator(), p, sigma)
        / ((t0 * slope).powi(k as i32) * eval_at_power(&rest, p, sigma))
}

fn vanishes(nu: i64, e: i64, sigma: &BigRational) -> bool {
    BigRational::from_integer(BigInt::from(nu)) == sigma * BigRational::from_integer(BigInt::from(e))
}

/// `lim (p^{s+sigma} - 1)^order * numerator(t) / prod (1 - p^{-nu} t^N)` at
/// `s = -sigma`; `None` when more than `order` factors vanish there.
pub(crate) fn term_limit(numerator: &[BigRational], factors: &[(i64, i64)], p: u64, sigma: &BigRational, order: usize) -> Option<f64> {
    let k = factors.iter().filter(|&&(nu, e)| vanishes(nu, e, sigma)).count();
    if k > order {
        return None;
    }
    if k < order {
        return Some(0.0);
    }
    let pf = p as f64;
    let mut value = eval_at_power(numerator, p, sigma);
    for &(nu, e) in factors {
        if vanishes(nu, e, sigma) {
            value /= e as f64;
        } else {
            let x = sigma * BigRational::from_integer(BigInt::from(e)) - BigRational::from_integer(BigInt::from(nu));
            value /= 1.0 - pf.powf(to_f64(&x));
        }
    }
    Some(value)
}

pub fn pole_report(zr: &ZetaResult, inv: &SigmaInvariants) -> PoleReport {
    let p = zr.p;
    let sigma = inv.sigma.clone();
    let mut candidates: Vec<BigRational> = zr
        .terms
        .iter()
        .flat_map(|t| t.factors.iter())
        .map(|&(nu, e)| -BigRational::new(BigInt::from(nu), BigInt::from(e)))
        .chain(std::iter::once(-BigRational::one()))
        .collect();
    candidates.sort_by(|a, b| b.cmp(a));
    candidates.dedup();
    let orders: Vec<CandidateOrder> = candidates
        .iter()
        .map(|s| CandidateOrder {
            s: s.clone(),
            order: zr.z.denominator_multiplicity(&pole_polynomial(p, &-s)),
        })
        .collect();
    let largest_pole = orders.iter().find(|c| c.order > 0).map(|c| c.s.clone());
    let order_at_sigma = zr.z.denominator_multiplicity(&pole_polynomial(p, &sigma));
    let expected_order = inv.kappa + usize::from(sigma.is_one());
    let term_order_bound = zr
        .terms
        .iter()
        .map(|t| t.factors.iter().filter(|&&(nu, e)| vanishes(nu, e, &sigma)).count())
        .max()
        .unwrap_or(0);
    let (leading_limit, method) = if order_at_sigma < expected_order {
        (0.0, "exact: the pole order is below the expected order".to_string())
    } else {
        let parts: Option<Vec<f64>> = zr
            .terms
            .iter()
            .map(|t| term_limit(&t.numerator, &t.factors, p, &sigma, expected_order))
            .collect();
        match parts {
            Some(v) => (
                v.iter().sum(),
                "per-term: vanishing factors contribute 1/N, other factors evaluated at t = p^sigma".to_string(),
            ),
            None => (f64::NAN, "a term has more vanishing factors than the expected order".to_string()),
        }
    };
    let actual_order_limit = canonical_limit(&zr.z, p, &sigma, order_at_sigma);
    PoleReport {
        p,
        actual_order_limit,
        sigma,
        kappa: inv.kappa,
        largest_candidate: candidates[0].clone(),
        candidates,
        orders,
        largest_pole,
        order_at_sigma,
        expected_order,
        term_order_bound,
        leading_limit,
        method,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DHRow {
    pub p: u64,
    pub limit: f64,
    /// `p^{1 - max(1, sigma)}`.
    pub normalizer: f64,
    pub ratio: f64,
    pub order_at_sigma: usize,
    pub expected_order: usize,
    /// The largest actual pole is `-sigma` or `-1`.
    pub dichotomy: bool,
}

/// `|p #{f_tau = 0 on the torus} - (p-1)^n| / p^{n+1-sigma(f_tau)}`.
#[derive(Clone, Debug, Serialize)]
pub struct TorusCountRow {
    pub p: u64,
    pub face: usize,
    pub count: u64,
    #[serde(with = "as_string")]
    pub sigma_face: BigRational,
    pub normalized: f64,
}

/// `|lim (p^{s+sigma} - 1)^kappa S_tau(s)| p^{sigma - sigma(f_tau)}`.
#[derive(Clone, Debug, Serialize)]
pub struct ConeLimitRow {
    pub p: u64,
    pub face: usize,
    pub limit: f64,
    #[serde(with = "as_string")]
    pub sigma_face: BigRational,
    pub normalized: f64,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct DHConstants {
    pub limit: Option<f64>,
    pub torus_count: Option<f64>,
    pub cone_limit: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DHReport {
    pub id: String,
    #[serde(with = "as_string")]
    pub sigma: BigRational,
    pub kappa: usize,
    pub rows: Vec<DHRow>,
    pub torus_count_rows: Vec<TorusCountRow>,
    pub cone_limit_rows: Vec<ConeLimitRow>,
    /// Primes without a certificate, with the reason.
    pub skipped: Vec<(u64, String)>,
    pub c_empirical: f64,
    pub torus_count_max: f64,
    pub cone_limit_max: f64,
    pub stored: DHConstants,
    pub violations: usize,
    pub passed: bool,
}

fn max_of(v: impl Iterator<Item = f64>) -> f64 {
    v.fold(0.0, f64::max)
}

/// Leading coefficients at `-sigma` over `primes`, normalized by
/// `p^{1 - max(1, sigma)}`, plus the two per-face estimates feeding them for
/// every face inside `tau_0`.
pub fn dh_limit_check(id: &str, f: &IntPolynomial, primes: &[u64], budget: u64, stored: DHConstants) -> Result<DHReport> {
    let n = f.nvars();
    let poly = newton_polyhedron(&f.support())?;
    let inv = sigma_kappa(&poly);
    let sigma = inv.sigma.clone();
    let tau0 = poly.face(inv.tau0);
    let inner: Vec<_> = poly.faces().iter().filter(|t| poly.face_contains(tau0, t)).collect();
    let top = if sigma > BigRational::one() { sigma.clone() } else { BigRational::one() };
    let mut rows = Vec::new();
    let mut torus_count_rows = Vec::new();
    let mut cone_limit_rows = Vec::new();
    let mut skipped = Vec::new();
    for &p in primes {
        let zr = match igusa_zeta(f, p, budget) {
            Ok(z) => z,
            Err(Error::NotCertified { reason, .. }) => {
                skipped.push((p, reason));
                continue;
            }
            Err(e) => return Err(e),
        };
        let rep = pole_report(&zr, &inv);
        let pf = p as f64;
        let normalizer = pf.powf(1.0 - to_f64(&top));
        rows.push(DHRow {
            p,
            limit: rep.leading_limit,
            normalizer,
            ratio: rep.leading_limit.abs() / normalizer,
            order_at_sigma: rep.order_at_sigma,
            expected_order: rep.expected_order,
            dichotomy: rep.dichotomy_holds(),
        });
        for face in &inner {
            let sigma_face = sigma_of_face(face);
            let fbar = FFPolynomial::reduce(&face_polynomial(f, face), p, 1)?;
            let count = count_torus_zeros(&fbar, budget)?;
            let dev = (BigInt::from(p) * BigInt::from(count) - num_traits::pow(BigInt::from(p - 1), n)).abs();
            let scale = pf.powf(n as f64 + 1.0 - to_f64(&sigma_face));
            torus_count_rows.push(TorusCountRow {
                p,
                face: face.id,
                count,
                sigma_face: sigma_face.clone(),
                normalized: dev.to_f64().unwrap_or(f64::INFINITY) / scale,
            });
            let mut limit = 0.0;
            for (num, factors) in cone_pieces(&poly, face, p)? {
                limit += term_limit(&num, &factors, p, &sigma, inv.kappa).unwrap_or(f64::NAN);
            }
            cone_limit_rows.push(ConeLimitRow {
                p,
                face: face.id,
                limit,
                sigma_face: sigma_face.clone(),
                normalized: limit.abs() * pf.powf(to_f64(&(&sigma - &sigma_face))),
            });
        }
    }
    let c_empirical = max_of(rows.iter().map(|r| r.ratio));
    let torus_count_max = max_of(torus_count_rows.iter().map(|r| r.normalized));
    let cone_limit_max = max_of(cone_limit_rows.iter().map(|r| r.normalized));
    let over = |v: f64, c: Option<f64>| !v.is_finite() || c.is_some_and(|c| v > c);
    let violations = rows.iter().filter(|r| over(r.ratio, stored.limit)).count()
        + torus_count_rows.iter().filter(|r| over(r.normalized, stored.torus_count)).count()
        + cone_limit_rows.iter().filter(|r| over(r.normalized, stored.cone_limit)).count();
    Ok(DHReport {
        id: id.to_string(),
        sigma,
        kappa: inv.kappa,
        rows,
        torus_count_rows,
        cone_limit_rows,
        skipped,
        c_empirical,
        torus_count_max,
        cone_limit_max,
        stored,
        violations,
        passed: violations == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rational::rat;

    fn report(s: &str, p: u64) -> PoleReport {
        let f = parse_polynomial(s).unwrap();
        let poly = newton_polyhedron(&f.support()).unwrap();
        pole_report(&igusa_zeta(&f, p, 1 << 24).unwrap(), &sigma_kappa(&poly))
    }

    #[test]
    fn square_of_a_variable() {
        let r = report("x1^2", 5);
        assert_eq!(r.candidates, vec![rat(-1, 2), rat(-1, 1)]);
        assert_eq!(r.order_at_sigma, 1);
        assert_eq!(r.expected_order, 1);
        assert!((r.leading_limit - 0.4).abs() < 1e-12);
        assert!((r.actual_order_limit - 0.4).abs() < 1e-12);
        assert!(r.dichotomy_holds());
    }

    #[test]
    fn single_variable() {
        for p in [3u64, 7] {
            let r = report("x1", p);
            assert_eq!(r.candidates, vec![rat(-1, 1)]);
            assert_eq!(r.order_at_sigma, 1);
            assert_eq!(r.expected_order, 2);
            assert_eq!(r.leading_limit, 0.0);
            assert!((r.actual_order_limit - (1.0 - 1.0 / p as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn product_of_variables_has_lower_order() {
        let r = report("x1*x2", 5);
        assert_eq!(r.expected_order, 3);
        assert_eq!(r.order_at_sigma, 2);
        assert_eq!(r.leading_limit, 0.0);
        assert!(r.term_order_bound <= r.expected_order);
    }

    #[test]
    fn cusp_pole_matches_sigma() {
        for p in [5u64, 7, 11] {
            let r = report("x1^2+x2^3", p);
            assert_eq!(r.sigma, rat(5, 6));
            assert_eq!(r.order_at_sigma, r.expected_order);
            assert_eq!(r.largest_pole, Some(rat(-5, 6)));
            assert!(r.leading_limit.is_finite() && r.leading_limit != 0.0);
            let rel = (r.leading_limit - r.actual_order_limit).abs() / r.leading_limit.abs();
            assert!(rel < 1e-10, "{} vs {}", r.leading_limit, r.actual_order_limit);
        }
    }

    #[test]
    fn dh_ratios_for_a_square() {
        let f = parse_polynomial("x1^2").unwrap();
        let rep = dh_limit_check("x1^2", &f, &[3, 5, 7, 11], 1 << 24, DHConstants::default()).unwrap();
        for r in &rep.rows {
            let want = (1.0 - 1.0 / r.p as f64) / 2.0;
            assert!((r.ratio - want).abs() < 1e-12);
        }
        assert!(rep.passed);
    }
}
