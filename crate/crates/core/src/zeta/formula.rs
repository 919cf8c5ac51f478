//! `Z_f(s) = L_{Delta_0}(s) + sum_tau L_tau(s) S_tau(s)` in `t = p^{-s}`, for
//! `f` without singular zeros of any face polynomial on `(F_p^*)^n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ratfun::{one_minus, pmul, pscale, Poly, RationalFunctionT};
use crate::expsum::cone_generating_function;
use crate::field::{torus_fold, torus_size, FFPolynomial, LogEvaluator};
use crate::geom::{newton_polyhedron, Face, NewtonPolyhedron};
use crate::invariants::{face_polynomial, nondegeneracy_check, Mode, NondegCertificate, Verdict};
use crate::poly::IntPolynomial;
use crate::rational::{pow_rat, vec_as_string};
use crate::{Error, Result};

/// One summand `numerator(t) / prod (1 - p^{-nu} t^N)` of the explicit
/// formula, tagged by the face and half-open cone piece it came from.
/// The factor `(1, 1)` may come from `L_tau` as well as from a cone.
#[derive(Clone, Debug, Serialize)]
pub struct ZetaTerm {
    pub face: usize,
    pub piece: Option<usize>,
    pub torus_zeros: u64,
    #[serde(with = "vec_as_string")]
    pub numerator: Poly,
    /// `(nu, N)` with `N > 0`, repeated by multiplicity.
    pub factors: Vec<(i64, i64)>,
}

impl ZetaTerm {
    pub fn to_rational(&self, p: u64) -> RationalFunctionT {
        let den = self
            .factors
            .iter()
            .fold(vec![BigRational::one()], |d, &(nu, e)| pmul(&d, &one_minus(&pow_rat(p, -nu), e as usize)));
        RationalFunctionT::new(self.numerator.clone(), den).expect("nonzero denominator")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaResult {
    pub p: u64,
    #[serde(flatten)]
    pub z: RationalFunctionT,
    pub terms: Vec<ZetaTerm>,
    pub certificate: NondegCertificate,
}

impl ZetaResult {
    /// The terms added one at a time with canonical rational arithmetic.
    pub fn term_sum(&self) -> RationalFunctionT {
        self.terms
            .iter()
            .fold(RationalFunctionT::zero(), |acc, t| acc.add(&t.to_rational(self.p)))
    }
}

/// `#{x in (F_p^*)^n : fbar(x) = 0}`.
pub fn count_torus_zeros(fbar: &FFPolynomial, budget: u64) -> Result<u64> {
    let n = fbar.nvars();
    let cost = torus_size(fbar.field().size() as u64, n);
    if cost > budget as u128 {
        return Err(Error::budget(cost, budget));
    }
    let ev = LogEvaluator::new(fbar);
    Ok(torus_fold(
        fbar.field(),
        n,
        || 0u64,
        |c, logs| {
            if ev.eval_logs(logs) == 0 {
                *c += 1
            }
        },
        |a, b| a + b,
    ))
}

/// `(numerator, has (1 - t/p) factor)` with
/// `L = p^{-n}((p-1)^n - count (1-t)/(1-t/p))`.
fn l_tau_parts(p: u64, n: usize, count: u64) -> (Poly, bool) {
    let big = BigRational::from_integer(num_traits::pow(BigInt::from(p - 1), n));
    let scale = pow_rat(p, -(n as i64));
    if count == 0 {
        return (vec![big * scale], false);
    }
    let c = BigRational::from_integer(BigInt::from(count));
    let c0 = &big - &c;
    let c1 = c - big / BigRational::from_integer(BigInt::from(p));
    (pscale(&[c0, c1], &scale), true)
}

pub fn l_tau_rational(p: u64, n: usize, count: u64) -> RationalFunctionT {
    let (num, pole) = l_tau_parts(p, n, count);
    let den = if pole {
        one_minus(&pow_rat(p, -1), 1)
    } else {
        vec![BigRational::one()]
    };
    RationalFunctionT::new(num, den).expect("nonzero denominator")
}

/// `sum_{a : F(a) = tau} p^{-nu(a)} t^{N(a)}`, or `1` for `Delta_0` itself.
pub fn s_tau_rational(poly: &NewtonPolyhedron, face: &Face, p: u64) -> Result<RationalFunctionT> {
    Ok(cone_pieces(poly, face, p)?
        .into_iter()
        .fold(RationalFunctionT::zero(), |acc, (num, factors)| {
            let t = ZetaTerm {
                face: face.id,
                piece: None,
                torus_zeros: 0,
                numerator: num,
                factors,
            };
            acc.add(&t.to_rational(p))
        }))
}

/// Per piece: numerator with `N = 0` generators folded in, and the
/// remaining `(nu, N)` factors.
pub(crate) fn cone_pieces(poly: &NewtonPolyhedron, face: &Face, p: u64) -> Result<Vec<(Poly, Vec<(i64, i64)>)>> {
    let gf = cone_generating_function(poly, face, p)?;
    Ok(gf
        .pieces
        .iter()
        .map(|piece| {
            let deg = piece.numerator.iter().map(|&(_, e)| e).max().unwrap_or(0) as usize;
            let mut num = vec![BigRational::zero(); deg + 1];
            for &(nu, e) in &piece.numerator {
                num[e as usize] += pow_rat(p, -nu);
            }
            let mut factors = Vec::new();
            for &(nu, e) in &piece.denominator {
                if e == 0 {
                    let s = (BigRational::one() - pow_rat(p, -nu)).recip();
                    num = pscale(&num, &s);
                } else {
                    factors.push((nu, e));
                }
            }
            factors.sort();
            (num, factors)
        })
        .collect())
}

/// Sum of terms over the least common denominator of their factors.
pub fn collapse_terms(terms: &[ZetaTerm], p: u64) -> RationalFunctionT {
    let mut lcd: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for t in terms {
        for (k, m) in multiplicities(&t.factors) {
            let e = lcd.entry(k).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let factor = |&(nu, e): &(i64, i64)| one_minus(&pow_rat(p, -nu), e as usize);
    let mut den = vec![BigRational::one()];
    for (k, &m) in &lcd {
        for _ in 0..m {
            den = pmul(&den, &factor(k));
        }
    }
    let mut num: Poly = Vec::new();
    for t in terms {
        let own = multiplicities(&t.factors);
        let mut part = t.numerator.clone();
        for (k, &m) in &lcd {
            for _ in own.get(k).copied().unwrap_or(0)..m {
                part = pmul(&part, &factor(k));
            }
        }
        num = super::ratfun::padd(&num, &part);
    }
    RationalFunctionT::new(num, den).expect("nonzero denominator")
}

fn multiplicities(factors: &[(i64, i64)]) -> BTreeMap<(i64, i64), usize> {
    let mut m = BTreeMap::new();
    for &k in factors {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

/// Igusa's local zeta function of `f` at `p` in `t = p^{-s}`. Requires every
/// face polynomial, `Delta_0` included, to have no singular zero on
/// `(F_p^*)^n`, with the support unchanged mod `p`.
pub fn igusa_zeta(f: &IntPolynomial, p: u64, budget: u64) -> Result<ZetaResult> {
    let n = f.nvars();
    let poly = newton_polyhedron(&f.support())?;
    let certificate = nondegeneracy_check(f, &poly, p, Mode::Weak, Some(1), budget)?;
    match certificate.verdict {
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
                reason: "a face polynomial has a singular zero on the torus over F_p".into(),
            })
        }
    }
    let mut terms = Vec::new();
    for face in poly.faces() {
        let fbar = FFPolynomial::reduce(&face_polynomial(f, face), p, 1)?;
        let count = count_torus_zeros(&fbar, budget)?;
        let (l_num, l_pole) = l_tau_parts(p, n, count);
        let pieces = cone_pieces(&poly, face, p)?;
        let single = pieces.len() == 1 && !face.is_proper;
        for (i, (num, mut factors)) in pieces.into_iter().enumerate() {
            if l_pole {
                factors.push((1, 1));
                factors.sort();
            }
            terms.push(ZetaTerm {
                face: face.id,
                piece: if single { None } else { Some(i) },
                torus_zeros: count,
                numerator: pmul(&l_num, &num),
                factors,
            });
        }
    }
    let z = collapse_terms(&terms, p);
    Ok(ZetaResult {
        p,
        z,
        terms,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rational::{int, rat};

    fn f(s: &str) -> IntPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn rf(num: &[BigRational], den: &[BigRational]) -> RationalFunctionT {
        RationalFunctionT::new(num.to_vec(), den.to_vec()).unwrap()
    }

    #[test]
    fn torus_zero_counts() {
        let c = |s: &str, p| count_torus_zeros(&FFPolynomial::reduce(&f(s), p, 1).unwrap(), 1 << 20).unwrap();
        assert_eq!(c("x1+x2", 3), 2);
        assert_eq!(c("x1^2", 7), 0);
        assert_eq!(c("x1*x2-1", 5), 4);
    }

    #[test]
    fn l_tau_examples() {
        assert_eq!(l_tau_rational(5, 1, 0), RationalFunctionT::constant(rat(4, 5)));
        assert_eq!(l_tau_rational(3, 2, 2), rf(&[int(6), int(2)], &[int(27), int(-9)]));
        for (p, n, c) in [(3u64, 2usize, 2u64), (5, 2, 7), (7, 3, 30)] {
            let v = l_tau_rational(p, n, c).evaluate(&int(1)).unwrap();
            assert_eq!(v, num_traits::pow(rat(p as i64 - 1, p as i64), n));
        }
    }

    #[test]
    fn s_tau_examples() {
        let g = f("x1^2");
        let poly = newton_polyhedron(&g.support()).unwrap();
        let v = poly.proper_faces().find(|t| t.dim == 0).unwrap();
        assert_eq!(
            s_tau_rational(&poly, v, 5).unwrap(),
            rf(&[int(0), int(0), rat(1, 5)], &[int(1), int(0), rat(-1, 5)])
        );
        assert_eq!(s_tau_rational(&poly, poly.whole(), 5).unwrap(), RationalFunctionT::one());

        let g = f("x1^2+x2^3");
        let poly = newton_polyhedron(&g.support()).unwrap();
        let v = poly
            .proper_faces()
            .find(|t| t.dim == 0 && poly.vertices()[t.vertices[0]] == vec![2, 0])
            .unwrap();
        let num = [int(0), int(0), rat(1, 25), int(0), rat(1, 625), int(0), rat(1, 15625)];
        let mut den = vec![BigRational::zero(); 7];
        den[0] = rat(4, 5);
        den[6] = rat(-4, 15625);
        assert_eq!(s_tau_rational(&poly, v, 5).unwrap(), rf(&num, &den));
    }

    #[test]
    fn closed_forms() {
        for p in [3u64, 5, 7, 13] {
            let z = igusa_zeta(&f("x1^2"), p, 1 << 24).unwrap();
            let expect = rf(&[rat(p as i64 - 1, p as i64)], &[int(1), int(0), rat(-1, p as i64)]);
            assert_eq!(z.z, expect);
            let z = igusa_zeta(&f("x1"), p, 1 << 24).unwrap();
            let expect = rf(&[rat(p as i64 - 1, p as i64)], &[int(1), rat(-1, p as i64)]);
            assert_eq!(z.z, expect);
        }
    }

    #[test]
    fn collapse_agrees_with_term_sum() {
        for s in ["x1*x2", "x1^2+x2^3", "x1^3+x2^3", "x1^2+x2^3+x3^2"] {
            for p in [5u64, 7] {
                let z = igusa_zeta(&f(s), p, 1 << 24).unwrap();
                assert_eq!(z.term_sum(), z.z, "{s} at {p}");
                let c0 = z.z.series_expand(0).unwrap()[0].clone();
                assert!(c0 > BigRational::zero() && c0 <= BigRational::one());
            }
        }
    }

    #[test]
    fn degenerate_input_is_refused() {
        assert!(matches!(
            igusa_zeta(&f("(x1+x2)^2"), 5, 1 << 20),
            Err(Error::NotCertified { .. })
        ));
    }
}
