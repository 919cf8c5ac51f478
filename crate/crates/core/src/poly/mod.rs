//! Exact sparse multivariate polynomials with integer coefficients.

mod parse;
mod sweep;

pub use parse::{parse_polynomial, parse_polynomial_in};
pub use sweep::ResidueSweep;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exponent vector `(i_1, ..., i_n)` of a monomial `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }

    fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, j: usize) -> &u32 {
        &self.0[j]
    }
}

/// A polynomial `f = sum c_i x^i` in `nvars` variables, stored sparsely
/// without zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "polynomials need at least one variable");
        IntPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    pub fn monomial(exp: ExponentVector, c: impl Into<BigInt>) -> Self {
        let mut f = Self::zero(exp.len());
        f.add_term(exp, c.into());
        f
    }

    /// `x_{j+1}` (variables are indexed from zero internally).
    pub fn var(nvars: usize, j: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, j), 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// like terms.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut f = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            f.add_term(ExponentVector(e), c.into());
        }
        f
    }

    fn add_term(&mut self, exp: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &ExponentVector) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff the constant term is absent, i.e. `f(0) = 0`.
    pub fn vanishes_at_origin(&self) -> bool {
        !self.terms.contains_key(&ExponentVector::zero(self.nvars))
    }

    /// The exponent vectors with non-zero coefficient.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// Highest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut m = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (j, &x) in e.0.iter().enumerate() {
                m[j] = m[j].max(x);
            }
        }
        m
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&ExponentVector) -> bool) -> IntPolynomial {
        IntPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-embeds into `nvars` variables, sending variable `j` to `map[j]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> IntPolynomial {
        assert_eq!(map.len(), self.nvars);
        let mut out = IntPolynomial::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; nvars];
            for (j, &x) in e.0.iter().enumerate() {
                ne[map[j]] += x;
            }
            out.add_term(ExponentVector(ne), c.clone());
        }
        out
    }

    /// Formal partial derivative with respect to `x_{j+1}`.
    pub fn partial(&self, j: usize) -> IntPolynomial {
        let mut out = IntPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.0[j] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[j] -= 1;
            out.add_term(ne, c * BigInt::from(e.0[j]));
        }
        out
    }

    /// The `n` formal partial derivatives.
    pub fn gradient(&self) -> Vec<IntPolynomial> {
        (0..self.nvars).map(|j| self.partial(j)).collect()
    }

    pub fn pow(&self, k: u32) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.nvars, 1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `f(x) + g(y)` in `n + m` variables, `g` shifted into the last `m`.
    pub fn disjoint_sum(&self, g: &IntPolynomial) -> IntPolynomial {
        let n = self.nvars;
        let total = n + g.nvars;
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..total).collect();
        &self.remap(total, &left) + &g.remap(total, &right)
    }

    /// `f(x) * g(y)` in `n + m` variables.
    pub fn disjoint_product(&self, g: &IntPolynomial) -> IntPolynomial {
        let n = self.nvars;
        let total = n + g.nvars;
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..total).collect();
        &self.remap(total, &left) * &g.remap(total, &right)
    }

    /// `f(x_1, ..., x_{n-1}, x_{n-1})` as a polynomial in `n - 1` variables.
    pub fn merge_last_two_vars(&self) -> IntPolynomial {
        assert!(self.nvars >= 2, "merge_last_two_vars needs n >= 2");
        let n = self.nvars;
        let mut map: Vec<usize> = (0..n).collect();
        map[n - 1] = n - 2;
        self.remap(n - 1, &map)
    }

    /// `f(point) mod modulus`, with every intermediate reduced.
    pub fn eval_residue(&self, point: &[u64], modulus: u64) -> u64 {
        assert_eq!(point.len(), self.nvars);
        assert!(modulus >= 1);
        let m = modulus as u128;
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let mut v = reduce_bigint(c, modulus) as u128;
            for (j, &x) in e.0.iter().enumerate() {
                v = v * pow_mod(point[j] % modulus, x as u64, modulus) as u128 % m;
            }
            acc = (acc + v) % m;
        }
        acc as u64
    }

    /// Exact integer evaluation.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (j, &x) in e.0.iter().enumerate() {
                v *= num_traits::pow(point[j].clone(), x as usize);
            }
            acc += v;
        }
        acc
    }

    /// gcd of all coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

pub(crate) fn reduce_bigint(c: &BigInt, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let r = c.mod_floor(&m);
    r.to_u64().expect("residue fits")
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = IntPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders in the input grammar, highest exponent vector first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(mag.to_string());
            }
            for (j, &x) in e.0.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("x{}", j + 1)),
                    _ => factors.push(format!("x{}^{}", j + 1, x)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        parse_polynomial(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn support_of(f: &IntPolynomial) -> Vec<Vec<u32>> {
        f.support().into_iter().map(|e| e.0).collect()
    }

    #[test]
    fn support_examples() {
        assert_eq!(support_of(&p("x1^2+x2^3")), vec![vec![0, 3], vec![2, 0]]);
        assert!(p("x1-x1").support().is_empty());
        assert_eq!(support_of(&p("x1^2*x2^3")), vec![vec![2, 3]]);
    }

    #[test]
    fn eval_residue_examples() {
        assert_eq!(p("x1^2+x2^3").eval_residue(&[2, 3], 25), 6);
        assert_eq!(IntPolynomial::zero(2).eval_residue(&[4, 1], 25), 0);
        assert_eq!(p("x1").eval_residue(&[24], 25), 24);
        assert_eq!(p("-3*x1").eval_residue(&[1], 7), 4);
    }

    #[test]
    fn gradient_examples() {
        let g = p("x1^2+x2^3").gradient();
        assert_eq!(g, vec![parse_polynomial_in("2*x1", 2).unwrap(), parse_polynomial_in("3*x2^2", 2).unwrap()]);
        let g = p("x1*x2").gradient();
        assert_eq!(g[0], parse_polynomial_in("x2", 2).unwrap());
        assert_eq!(g[1], parse_polynomial_in("x1", 2).unwrap());
        let z = IntPolynomial::zero(3).gradient();
        assert!(z.iter().all(|d| d.is_zero()) && z.len() == 3);
    }

    #[test]
    fn disjoint_sum_examples() {
        let x2 = p("x1^2");
        let y3 = p("x1^3");
        assert_eq!(x2.disjoint_sum(&y3), p("x1^2+x2^3"));
        assert_eq!(
            IntPolynomial::zero(1).disjoint_sum(&p("x1")),
            parse_polynomial_in("x2", 2).unwrap()
        );
        assert_eq!(p("x1").disjoint_sum(&p("x1")), p("x1+x2"));
    }

    #[test]
    fn disjoint_product_examples() {
        assert_eq!(p("x1^2").disjoint_product(&p("x1^3")), p("x1^2*x2^3"));
        assert_eq!(p("x1+x1^2").disjoint_product(&p("x1")), p("x1*x2+x1^2*x2"));
        assert!(IntPolynomial::zero(1).disjoint_product(&p("x1")).is_zero());
    }

    #[test]
    fn merge_examples() {
        assert_eq!(p("x1*x2").merge_last_two_vars(), p("x1^2"));
        assert_eq!(p("x1+x2").merge_last_two_vars(), p("2*x1"));
        assert!(p("x1-x2").merge_last_two_vars().is_zero());
    }

    #[test]
    fn render_round_trip() {
        for s in ["x1^2*x2 - x1", "-x1", "3*x1*x2^4 + 7", "0"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s}");
        }
        assert_eq!(p("x1^2*x2 - x1").to_string(), "x1^2*x2 - x1");
    }
}
