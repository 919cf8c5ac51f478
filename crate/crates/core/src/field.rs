//! Finite fields `F_{p^k}` (k <= 8) and polynomials over them.
//!
//! Elements are integers in `[0, q)`: the base-`p` digits of an element are
//! its coordinates in the power basis of `F_p[x]/(m(x))`, where `m` is the
//! smallest monic irreducible of degree `k` (coefficient tuple
//! `(c_{k-1}, ..., c_0)` compared lexicographically). Multiplication goes
//! through discrete log tables for a fixed primitive element; addition is
//! digit-wise and is batched by packing digits into 16-bit lanes (8-bit lanes
//! for degrees above 4).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::poly::{ExponentVector, IntPolynomial};
use crate::{Error, Result};

pub const MAX_DEGREE: u32 = 8;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    packed: Vec<u64>,
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<GaloisField>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<GaloisField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// Shared instance of `F_{p^k}`.
    pub fn get(p: u64, k: u32) -> Result<Arc<GaloisField>> {
        if !is_prime(p) || p > 1 << 15 {
            return Err(Error::InvalidArgument(format!("{p} is not a supported prime")));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!(
                "extension degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        if p.checked_pow(k).filter(|&q| q <= 1 << 24).is_none() {
            return Err(Error::InvalidArgument(format!("field of size {p}^{k} is too large")));
        }
        let key = (p as u32, k);
        let mut cache = field_cache().lock().expect("field cache poisoned");
        if let Some(f) = cache.get(&key) {
            return Ok(f.clone());
        }
        let f = Arc::new(GaloisField::build(p as u32, k));
        cache.insert(key, f.clone());
        Ok(f)
    }

    fn build(p: u32, k: u32) -> GaloisField {
        let q = p.pow(k);
        let modulus = smallest_irreducible(p, k);
        let mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, k);
            let db = digits(b, p, k);
            encode(&poly_mulmod(&da, &db, &modulus, p), p)
        };
        // Smallest primitive element.
        let mut exp = Vec::new();
        for g in 1..q {
            let mut table = Vec::with_capacity((q - 1) as usize);
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..q - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                table.push(x);
                x = mul(x, g);
            }
            if ok && x == 1 {
                exp = table;
                break;
            }
        }
        assert_eq!(exp.len() as u32, q - 1, "no primitive element found");
        let mut log = vec![u32::MAX; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let packed: Vec<u64> = (0..q)
            .map(|a| {
                digits(a, p, k)
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (i, &d)| acc | (d as u64) << (lane_bits(k) * i as u32))
            })
            .collect();
        let add = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, k);
            let db = digits(b, p, k);
            encode(&da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect::<Vec<_>>(), p)
        };
        let mut trace = vec![0u32; q as usize];
        for a in 1..q {
            let l = log[a as usize] as u64;
            let mut t = 0u32;
            let mut pi = 1u64;
            for _ in 0..k {
                t = add(t, exp[((l * pi) % (q as u64 - 1)) as usize]);
                pi *= p as u64;
            }
            debug_assert!(t < p, "trace must land in the prime field");
            trace[a as usize] = t;
        }
        GaloisField {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            trace,
            packed,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    /// Coefficients `c_0..c_{k-1}` of the defining monic polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let v = self.packed[a as usize] + self.packed[b as usize];
        self.unpack(v)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d = digits(a, self.p, self.k);
        encode(&d.iter().map(|x| (self.p - x) % self.p).collect::<Vec<_>>(), self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(l % (self.q as u64 - 1)) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u128 * e as u128;
        self.exp[(l % (self.q as u128 - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    /// Discrete log to the fixed primitive element (`None` for zero).
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, l: u64) -> u32 {
        self.exp[(l % (self.q as u64 - 1)) as usize]
    }

    /// Absolute trace to `F_p`, returned as an integer in `[0, p)`.
    pub fn trace(&self, a: u32) -> u32 {
        self.trace[a as usize]
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        digits(a, self.p, self.k)
    }

    #[inline]
    fn packed(&self, a: u32) -> u64 {
        self.packed[a as usize]
    }

    #[inline]
    fn unpack(&self, v: u64) -> u32 {
        let mut idx = 0u32;
        let mut pi = 1u32;
        let bits = lane_bits(self.k);
        let mask = (1u64 << bits) - 1;
        for i in 0..self.k {
            let d = ((v >> (bits * i)) & mask) as u32 % self.p;
            idx += d * pi;
            pi *= self.p;
        }
        idx
    }

    /// How many packed values can be summed before a lane may overflow.
    fn lane_capacity(&self) -> usize {
        let lane_max = (1usize << lane_bits(self.k)) - 1;
        (lane_max / (self.p as usize - 1).max(1)).max(1)
    }
}

fn lane_bits(k: u32) -> u32 {
    if k <= 4 {
        16
    } else {
        8
    }
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(a % p);
        a /= p;
    }
    d
}

fn encode(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0u32, |acc, &x| acc * p + x)
}

/// Product of two residues mod the monic polynomial `x^k + sum c_i x^i`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        // x^d = x^{d-k} * x^k = -x^{d-k} * sum c_i x^i
        for (i, &m) in modulus.iter().enumerate() {
            let sub = c * m as u64 % p as u64;
            prod[d - k + i] = (prod[d - k + i] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|x| x as u32).collect()
}

/// Remainder of `a` (dense, low degree first) modulo the monic `b`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.pop().unwrap() % p as u64;
        if c == 0 {
            continue;
        }
        let shift = r.len() - db;
        for i in 0..db {
            let sub = c * b[i] as u64 % p as u64;
            r[shift + i] = (r[shift + i] + p as u64 - sub) % p as u64;
        }
    }
    r.into_iter().map(|x| x as u32).collect()
}

fn monic_from_index(n: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut c = digits(n, p, deg);
    c.push(1);
    c
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() as u32 - 1;
    for d in 1..=k / 2 {
        for n in 0..p.pow(d) {
            let div = monic_from_index(n, p, d);
            if poly_rem(poly, &div, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    for n in 0..p.pow(k) {
        let cand = monic_from_index(n, p, k);
        if is_irreducible(&cand, p) {
            return cand[..k as usize].to_vec();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A polynomial with coefficients in `F_{p^k}`, obtained by reducing an
/// integer polynomial through the prime subfield.
#[derive(Clone, Debug)]
pub struct FFPolynomial {
    field: Arc<GaloisField>,
    nvars: usize,
    terms: Vec<(ExponentVector, u32)>,
    support_changed: bool,
}

impl FFPolynomial {
    /// `f mod p`, viewed over `F_{p^k}`.
    pub fn reduce(f: &IntPolynomial, p: u64, k: u32) -> Result<FFPolynomial> {
        let field = GaloisField::get(p, k)?;
        let mut terms = Vec::new();
        let mut changed = false;
        for (e, c) in f.terms() {
            let r = crate::poly::reduce_bigint(c, p) as u32;
            if r == 0 {
                changed = true;
            } else {
                terms.push((e.clone(), r));
            }
        }
        Ok(FFPolynomial {
            field,
            nvars: f.nvars(),
            terms,
            support_changed: changed,
        })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(ExponentVector, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff some coefficient vanished modulo `p`.
    pub fn support_changed(&self) -> bool {
        self.support_changed
    }

    pub fn partial(&self, j: usize) -> FFPolynomial {
        let fld = &self.field;
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let m = fld.mul(*c, fld.from_int(e[j] as i64));
            if m == 0 {
                continue;
            }
            let mut ne = e.entries().to_vec();
            ne[j] -= 1;
            terms.push((ExponentVector::new(ne), m));
        }
        terms.sort();
        FFPolynomial {
            field: fld.clone(),
            nvars: self.nvars,
            terms,
            support_changed: false,
        }
    }

    pub fn gradient(&self) -> Vec<FFPolynomial> {
        (0..self.nvars).map(|j| self.partial(j)).collect()
    }

    /// Direct evaluation at a point of `F_q^n` (elements as integers).
    pub fn eval(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.nvars);
        let fld = &self.field;
        let mut acc = 0u32;
        for (e, c) in &self.terms {
            let mut v = *c;
            for (j, &x) in point.iter().enumerate() {
                v = fld.mul(v, fld.pow(x, e[j] as u64));
            }
            acc = fld.add(acc, v);
        }
        acc
    }

    /// The same polynomial with coefficients multiplied by `twist`.
    pub fn scaled(&self, twist: u32) -> FFPolynomial {
        let fld = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), fld.mul(*c, twist)))
            .filter(|(_, c)| *c != 0)
            .collect();
        FFPolynomial {
            field: fld.clone(),
            nvars: self.nvars,
            terms,
            support_changed: self.support_changed,
        }
    }
}

/// Precomputed log-form of a polynomial for evaluation at torus points
/// given by the discrete logs of their coordinates.
#[derive(Clone, Debug)]
pub struct LogEvaluator {
    field: Arc<GaloisField>,
    terms: Vec<(u64, Vec<u64>)>,
}

impl LogEvaluator {
    pub fn new(f: &FFPolynomial) -> Self {
        let fld = f.field.clone();
        let terms = f
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    fld.log(*c).expect("non-zero coefficient") as u64,
                    e.entries().iter().map(|&x| x as u64).collect(),
                )
            })
            .collect();
        LogEvaluator { field: fld, terms }
    }

    #[inline]
    fn term_log(&self, t: usize, logs: &[u64]) -> u64 {
        let (lc, e) = &self.terms[t];
        let mut l = *lc;
        for (ej, lj) in e.iter().zip(logs) {
            l += ej * lj;
        }
        l % (self.field.q as u64 - 1)
    }

    /// Value at the torus point with coordinate logs `logs`.
    #[inline]
    pub fn eval_logs(&self, logs: &[u64]) -> u32 {
        let fld = &self.field;
        let cap = fld.lane_capacity();
        let mut acc = 0u64;
        for t in 0..self.terms.len() {
            if t > 0 && t % cap == 0 {
                acc = fld.packed(fld.unpack(acc));
            }
            acc += fld.packed(fld.exp[self.term_log(t, logs) as usize]);
        }
        fld.unpack(acc)
    }

    /// `Tr(f(x))` in `[0, p)` at the torus point with coordinate logs `logs`.
    #[inline]
    pub fn trace_logs(&self, logs: &[u64]) -> u32 {
        let fld = &self.field;
        let mut acc = 0u32;
        for t in 0..self.terms.len() {
            acc += fld.trace[fld.exp[self.term_log(t, logs) as usize] as usize];
            if acc >= fld.p {
                acc -= fld.p;
            }
        }
        acc
    }

    /// Value at an arbitrary point, coordinates given as `Some(log)` or
    /// `None` for zero.
    pub fn eval_affine(&self, logs: &[Option<u64>]) -> u32 {
        let fld = &self.field;
        let cap = fld.lane_capacity();
        let mut acc = 0u64;
        let mut count = 0usize;
        'terms: for (lc, e) in &self.terms {
            let mut l = *lc;
            for (ej, lj) in e.iter().zip(logs) {
                match lj {
                    Some(lj) => l += ej * lj,
                    None if *ej > 0 => continue 'terms,
                    None => {}
                }
            }
            if count > 0 && count % cap == 0 {
                acc = fld.packed(fld.unpack(acc));
            }
            count += 1;
            acc += fld.packed(fld.exp[(l % (fld.q as u64 - 1)) as usize]);
        }
        fld.unpack(acc)
    }
}

/// Decodes the `i`-th torus point (lexicographic order on element indices
/// `1..q` per coordinate) into coordinate logs.
fn torus_point(field: &GaloisField, mut i: u64, n: usize, elems: &mut [u32], logs: &mut [u64]) {
    let base = field.q as u64 - 1;
    for j in (0..n).rev() {
        let e = (i % base) as u32 + 1;
        i /= base;
        elems[j] = e;
        logs[j] = field.log[e as usize] as u64;
    }
}

/// Number of points of `(F_q^*)^n`.
pub fn torus_size(q: u64, n: usize) -> u128 {
    ((q - 1) as u128).pow(n as u32)
}

/// Lexicographically smallest torus point (by element indices) where
/// `pred` holds, given coordinate logs.
pub fn torus_find_first<P>(field: &Arc<GaloisField>, n: usize, pred: P) -> Option<Vec<u32>>
where
    P: Fn(&[u64]) -> bool + Sync + Send,
{
    let total = torus_size(field.q as u64, n) as u64;
    let block = (field.q as u64 - 1).max(1);
    let blocks = total.div_ceil(block);
    (0..blocks).into_par_iter().find_map_first(|b| {
        let mut elems = vec![0u32; n];
        let mut logs = vec![0u64; n];
        for i in b * block..((b + 1) * block).min(total) {
            torus_point(field, i, n, &mut elems, &mut logs);
            if pred(&logs) {
                return Some(elems.clone());
            }
        }
        None
    })
}

/// Folds a per-point statistic over `(F_q^*)^n`.
pub fn torus_fold<A, I, F, R>(field: &Arc<GaloisField>, n: usize, identity: I, op: F, merge: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[u64]) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    let total = torus_size(field.q as u64, n) as u64;
    let block = (field.q as u64 - 1).max(1);
    let blocks = total.div_ceil(block);
    (0..blocks)
        .into_par_iter()
        .fold(&identity, |mut acc, b| {
            let mut elems = vec![0u32; n];
            let mut logs = vec![0u64; n];
            for i in b * block..((b + 1) * block).min(total) {
                torus_point(field, i, n, &mut elems, &mut logs);
                op(&mut acc, &logs);
            }
            acc
        })
        .reduce(&identity, &merge)
}

/// Folds over all of `F_q^n`, coordinates as `Option<log>`.
pub fn affine_fold<A, I, F, R>(field: &Arc<GaloisField>, n: usize, identity: I, op: F, merge: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[Option<u64>]) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    let q = field.q as u64;
    let total = (q as u128).pow(n as u32) as u64;
    let blocks = total.div_ceil(q);
    (0..blocks)
        .into_par_iter()
        .fold(&identity, |mut acc, b| {
            let mut logs = vec![None; n];
            for i in b * q..((b + 1) * q).min(total) {
                let mut r = i;
                for j in (0..n).rev() {
                    let e = (r % q) as usize;
                    r /= q;
                    logs[j] = if e == 0 { None } else { Some(field.log[e] as u64) };
                }
                op(&mut acc, &logs);
            }
            acc
        })
        .reduce(&identity, &merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn prime_field_arithmetic() {
        let f = GaloisField::get(7, 1).unwrap();
        assert_eq!(f.size(), 7);
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), Some(5));
        for a in 0..7 {
            assert_eq!(f.trace(a), a);
        }
    }

    #[test]
    fn extension_field_axioms() {
        for (p, k) in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3), (2, 4), (2, 5), (3, 5), (2, 7)] {
            let f = GaloisField::get(p, k).unwrap();
            let q = f.size();
            assert_eq!(q, (p as u32).pow(k));
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    // Fermat: a^(q-1) = 1
                    assert_eq!(f.pow(a, (q - 1) as u64), 1);
                }
                for b in [1, q / 2, q - 1] {
                    for c in [2 % q, q / 3] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // Trace is F_p-linear and surjective, each fibre of size q/p.
            let mut counts = vec![0u32; p as usize];
            for a in 0..q {
                counts[f.trace(a) as usize] += 1;
            }
            assert!(counts.iter().all(|&c| c == q / p as u32));
            for (a, b) in [(1, 2), (q - 1, 3 % q), (5 % q, 7 % q)] {
                assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p as u32);
            }
        }
    }

    #[test]
    fn smallest_irreducible_choices() {
        // x^2 + 1 is irreducible mod 3; x^2 + 2 is the first mod 5.
        assert_eq!(GaloisField::get(3, 2).unwrap().modulus(), &[1, 0]);
        assert_eq!(GaloisField::get(5, 2).unwrap().modulus(), &[2, 0]);
        assert_eq!(GaloisField::get(2, 2).unwrap().modulus(), &[1, 1]);
        assert_eq!(GaloisField::get(2, 3).unwrap().modulus(), &[1, 1, 0]);
    }

    #[test]
    fn reduce_mod_examples() {
        let f = parse_polynomial("3*x1+7*x2").unwrap();
        let r = FFPolynomial::reduce(&f, 7, 1).unwrap();
        assert!(r.support_changed());
        assert_eq!(r.terms().len(), 1);
        assert_eq!(r.terms()[0].1, 3);

        let g = parse_polynomial("x1^2+x2^3").unwrap();
        let r = FFPolynomial::reduce(&g, 5, 1).unwrap();
        assert!(!r.support_changed());
        assert_eq!(r.terms().len(), 2);

        let h = parse_polynomial("5*x1").unwrap();
        let r = FFPolynomial::reduce(&h, 5, 1).unwrap();
        assert!(r.is_zero() && r.support_changed());
    }

    #[test]
    fn log_evaluator_agrees_with_direct_evaluation() {
        let f = parse_polynomial("x1^2*x2 + 3*x2^4 - x1 + 2*x1*x2").unwrap();
        for (p, k) in [(5, 1), (3, 2), (2, 3)] {
            let fb = FFPolynomial::reduce(&f, p, k).unwrap();
            let ev = LogEvaluator::new(&fb);
            let fld = fb.field().clone();
            let q = fld.size();
            for a in 0..q {
                for b in 0..q {
                    let direct = fb.eval(&[a, b]);
                    let logs = [fld.log(a).map(u64::from), fld.log(b).map(u64::from)];
                    assert_eq!(ev.eval_affine(&logs), direct);
                    if a != 0 && b != 0 {
                        let l = [logs[0].unwrap(), logs[1].unwrap()];
                        assert_eq!(ev.eval_logs(&l), direct);
                        assert_eq!(ev.trace_logs(&l), fld.trace(direct));
                    }
                }
            }
        }
    }

    #[test]
    fn gradient_commutes_with_reduction() {
        let f = parse_polynomial("7*x1^7*x2 + 5*x1^2 - x2^5*x1").unwrap();
        for p in [3u64, 5, 7] {
            let reduced_then_grad = FFPolynomial::reduce(&f, p, 1).unwrap().gradient();
            let grad_then_reduced: Vec<_> = f
                .gradient()
                .iter()
                .map(|g| FFPolynomial::reduce(g, p, 1).unwrap())
                .collect();
            for (a, b) in reduced_then_grad.iter().zip(&grad_then_reduced) {
                assert_eq!(a.terms(), b.terms(), "p = {p}");
            }
        }
    }

    #[test]
    fn torus_search_is_lexicographic() {
        let f = parse_polynomial("x1+x2").unwrap();
        let fb = FFPolynomial::reduce(&f, 5, 1).unwrap();
        let ev = LogEvaluator::new(&fb);
        let w = torus_find_first(fb.field(), 2, |l| ev.eval_logs(l) == 0).unwrap();
        assert_eq!(w, vec![1, 4]);
    }
}
