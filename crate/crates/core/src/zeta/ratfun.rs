//! Exact rational functions in one variable `t` with rational coefficients.
//!
//! Polynomials are dense coefficient vectors, constant term first, with no
//! trailing zeros. A `RationalFunctionT` is kept in canonical form: the
//! numerator and denominator are coprime and the denominator is monic, so
//! equality of values is structural equality.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{to_f64, vec_as_string};
use crate::{Error, Result};

pub type Poly = Vec<BigRational>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn padd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub(crate) fn pmul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn pscale(a: &[BigRational], c: &BigRational) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn pdivrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(a: Poly) -> Poly {
    match a.last().cloned() {
        Some(l) => a.into_iter().map(|c| c / &l).collect(),
        None => a,
    }
}

pub(crate) fn pgcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y);
        x = y;
        y = monic(r);
    }
    monic(x)
}

pub(crate) fn peval(a: &[BigRational], t: &BigRational) -> BigRational {
    a.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
}

/// `1 - c t^e` as a dense polynomial.
pub(crate) fn one_minus(c: &BigRational, e: usize) -> Poly {
    let mut out = vec![BigRational::zero(); e + 1];
    out[0] += BigRational::one();
    out[e] -= c;
    trim(out)
}

/// Multiplicity of `d` as a factor of `a` (`a` nonzero, `deg d >= 1`).
pub(crate) fn multiplicity(a: &[BigRational], d: &[BigRational]) -> usize {
    let mut a = trim(a.to_vec());
    let mut k = 0;
    loop {
        let (q, r) = pdivrem(&a, d);
        if !r.is_empty() || q.is_empty() {
            return k;
        }
        a = q;
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionT {
    #[serde(with = "vec_as_string")]
    numerator: Poly,
    #[serde(with = "vec_as_string")]
    denominator: Poly,
}

impl RationalFunctionT {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<Self> {
        let den = trim(denominator);
        if den.is_empty() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::canonical(trim(numerator), den))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::canonical(vec![c], vec![BigRational::one()])
    }

    pub fn polynomial(p: Poly) -> Self {
        Self::canonical(trim(p), vec![BigRational::one()])
    }

    pub fn zero() -> Self {
        Self::constant(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_empty() {
            return RationalFunctionT {
                numerator: Vec::new(),
                denominator: vec![BigRational::one()],
            };
        }
        let g = pgcd(&num, &den);
        let (mut num, _) = pdivrem(&num, &g);
        let (mut den, _) = pdivrem(&den, &g);
        let lead = den.last().unwrap().clone();
        num.iter_mut().for_each(|c| *c /= &lead);
        den.iter_mut().for_each(|c| *c /= &lead);
        RationalFunctionT {
            numerator: num,
            denominator: den,
        }
    }

    pub fn numerator(&self) -> &[BigRational] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BigRational] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = padd(
            &pmul(&self.numerator, &other.denominator),
            &pmul(&other.numerator, &self.denominator),
        );
        Self::canonical(num, pmul(&self.denominator, &other.denominator))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::canonical(
            pmul(&self.numerator, &other.numerator),
            pmul(&self.denominator, &other.denominator),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::canonical(pscale(&self.numerator, c), self.denominator.clone())
    }

    /// Taylor coefficients of `t^0, ..., t^v`.
    pub fn series_expand(&self, v: usize) -> Result<Vec<BigRational>> {
        let d0 = self.denominator[0].clone();
        if d0.is_zero() {
            return Err(Error::PoleAtEvaluation);
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(v + 1);
        for k in 0..=v {
            let mut c = self.numerator.get(k).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..self.denominator.len().min(k + 1) {
                c -= &self.denominator[j] * &out[k - j];
            }
            out.push(c / &d0);
        }
        Ok(out)
    }

    pub fn evaluate(&self, t: &BigRational) -> Result<BigRational> {
        let d = peval(&self.denominator, t);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluation);
        }
        Ok(peval(&self.numerator, t) / d)
    }

    pub fn evaluate_f64(&self, t: f64) -> Result<f64> {
        let ev = |a: &[BigRational]| a.iter().rev().fold(0.0, |acc, c| acc * t + to_f64(c));
        let d = ev(&self.denominator);
        if d == 0.0 {
            return Err(Error::PoleAtEvaluation);
        }
        Ok(ev(&self.numerator) / d)
    }

    /// Multiplicity of `d` in the canonical denominator.
    pub fn denominator_multiplicity(&self, d: &[BigRational]) -> usize {
        multiplicity(&self.denominator, d)
    }
}
