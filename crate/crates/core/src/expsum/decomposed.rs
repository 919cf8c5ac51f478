use num_rational::BigRational;
use num_traits::{One, Zero};

use super::complex::ComplexValue;
use super::conegf::{a_b_tau, cone_generating_function};
use super::naive::torus_char_sum;
use crate::field::FFPolynomial;
use crate::geom::newton_polyhedron;
use crate::invariants::{face_polynomial, nondegeneracy_check, Mode, Verdict};
use crate::poly::IntPolynomial;
use crate::rational::{self, pow_rat};
use crate::{Error, Result};

/// `S_f(p, m)` through the normal fan of `Delta_0(f)`:
///
/// `(1 - 1/p)^n sum_tau [A_tau + B_tau (p-1)^{-n} sum_{x in (F_p^*)^n} psi(f_tau(x))]`.
///
/// Valid when no face polynomial has a critical point on `(F_p^*)^n` and the
/// support survives reduction mod `p`; both are checked first.
pub fn expsum_decomposed(f: &IntPolynomial, p: u64, m: u32, budget: u64) -> Result<ComplexValue> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let n = f.nvars();
    let poly = newton_polyhedron(&f.support())?;
    let cert = nondegeneracy_check(f, &poly, p, Mode::Strong, Some(1), budget)?;
    match cert.verdict {
        Verdict::NondegenerateUpToK => {}
        Verdict::SupportChanged => {
            return Err(Error::NotCertified {
                p,
                reason: "a coefficient vanishes mod p".into(),
            })
        }
        Verdict::Degenerate => {
            return Err(Error::NotCertified {
                p,
                reason: "a face polynomial has a critical point on the torus over F_p".into(),
            })
        }
    }
    let mut exact = BigRational::zero();
    let mut re = 0.0;
    let mut im = 0.0;
    let mut err = 0.0;
    let torus_norm = ((p - 1) as f64).powi(n as i32).recip();
    for face in poly.faces() {
        let g = cone_generating_function(&poly, face, p)?;
        let (a, b) = a_b_tau(&g, m);
        exact += a;
        if b.is_zero() {
            continue;
        }
        let fb = FFPolynomial::reduce(&face_polynomial(f, face), p, 1)?;
        let t = torus_char_sum(&fb, 1, budget)?;
        let w = rational::to_f64(&b) * torus_norm;
        re += w * t.re;
        im += w * t.im;
        err += w.abs() * (t.err_bound + 4.0 * f64::EPSILON * t.abs());
    }
    let scale = rational::to_f64(&(BigRational::one() - pow_rat(p, -1)).pow(n as i32));
    let a = rational::to_f64(&exact);
    Ok(ComplexValue::new(
        scale * (a + re),
        scale * im,
        scale * (err + 4.0 * f64::EPSILON * (a.abs() + re.abs() + im.abs())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expsum::char_sum_naive;
    use crate::poly::parse_polynomial;

    const BUDGET: u64 = 100_000_000;

    #[test]
    fn matches_closed_forms() {
        let f = parse_polynomial("x1^2").unwrap();
        let s = expsum_decomposed(&f, 5, 2, BUDGET).unwrap();
        assert!((s.re - 0.2).abs() < 1e-12 && s.im.abs() < 1e-12);
        let s = expsum_decomposed(&f, 5, 1, BUDGET).unwrap();
        assert!((s.abs() - 5f64.powf(-0.5)).abs() < 1e-12);
        let g = parse_polynomial("x1").unwrap();
        for m in 1..4 {
            assert!(expsum_decomposed(&g, 7, m, BUDGET).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn matches_the_oracle() {
        for s in ["x1^2+x2^3", "x1*x2", "x1^3+x2^3"] {
            let f = parse_polynomial(s).unwrap();
            for p in [5, 7] {
                for m in 1..=3 {
                    let a = expsum_decomposed(&f, p, m, BUDGET).unwrap();
                    let b = char_sum_naive(&f, p, m, 1, BUDGET).unwrap();
                    assert!(a.dist(&b) < 1e-9, "{s} p={p} m={m}: {a:?} vs {b:?}");
                }
            }
        }
    }

    #[test]
    fn refuses_degenerate_input() {
        let f = parse_polynomial("(x1+x2)^2").unwrap();
        assert!(matches!(expsum_decomposed(&f, 5, 2, BUDGET), Err(Error::NotCertified { .. })));
    }
}
