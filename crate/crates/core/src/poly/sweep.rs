//! Exhaustive evaluation of `f` over the box `[0, R)^n` modulo `M`.
//!
//! Partial monomial products are carried down the coordinate recursion and
//! the innermost coordinate is evaluated from per-exponent coefficient
//! sums, so each point costs one multiply-add per distinct exponent of the
//! last variable. The outermost coordinate is split across rayon workers;
//! callers fold values into exact integer accumulators, which keeps the
//! result independent of scheduling.

use rayon::prelude::*;

use super::{pow_mod, reduce_bigint, IntPolynomial};

const TABLE_LIMIT: u64 = 1 << 20;

pub struct ResidueSweep {
    nvars: usize,
    modulus: u64,
    range: u64,
    /// (exponents, coefficient mod M); zero residues dropped.
    terms: Vec<(Vec<u32>, u64)>,
    /// Distinct exponents of the last variable, with the terms carrying each.
    last_groups: Vec<(u32, Vec<usize>)>,
    /// `tables[j][e]` = `x^e mod M` for `x < range`, when small enough.
    tables: Option<Vec<Vec<Option<Vec<u64>>>>>,
}

impl ResidueSweep {
    /// Sweep of `scale * f` modulo `modulus` over `[0, range)^n`.
    pub fn new(f: &IntPolynomial, scale: u64, modulus: u64, range: u64) -> Self {
        assert!(modulus >= 1 && modulus <= u32::MAX as u64, "modulus out of range");
        assert!(range >= 1);
        let n = f.nvars();
        let terms: Vec<(Vec<u32>, u64)> = f
            .terms()
            .map(|(e, c)| {
                let c = reduce_bigint(c, modulus) as u128 * (scale % modulus) as u128 % modulus as u128;
                (e.entries().to_vec(), c as u64)
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        let mut last_groups: Vec<(u32, Vec<usize>)> = Vec::new();
        for (t, (e, _)) in terms.iter().enumerate() {
            let le = e[n - 1];
            match last_groups.iter_mut().find(|(x, _)| *x == le) {
                Some((_, v)) => v.push(t),
                None => last_groups.push((le, vec![t])),
            }
        }
        let tables = if range <= TABLE_LIMIT {
            let max_e = f.max_exponents();
            let mut tabs = Vec::with_capacity(n);
            for (j, &me) in max_e.iter().enumerate() {
                let mut per_e: Vec<Option<Vec<u64>>> = vec![None; me as usize + 1];
                for (e, _) in &terms {
                    let ej = e[j] as usize;
                    if per_e[ej].is_none() {
                        per_e[ej] = Some((0..range).map(|x| pow_mod(x, ej as u64, modulus)).collect());
                    }
                }
                tabs.push(per_e);
            }
            Some(tabs)
        } else {
            None
        };
        ResidueSweep {
            nvars: n,
            modulus,
            range,
            terms,
            last_groups,
            tables,
        }
    }

    /// Number of points visited by a full sweep.
    pub fn points(&self) -> u128 {
        (self.range as u128).pow(self.nvars as u32)
    }

    #[inline]
    fn pw(&self, j: usize, e: u32, x: u64) -> u64 {
        match &self.tables {
            Some(t) => t[j][e as usize].as_ref().expect("table present")[x as usize],
            None => pow_mod(x, e as u64, self.modulus),
        }
    }

    fn descend(&self, j: usize, partial: &[u64], sink: &mut impl FnMut(u64)) {
        let m = self.modulus;
        if j + 1 == self.nvars {
            let coeffs: Vec<(u32, u64)> = self
                .last_groups
                .iter()
                .map(|(e, ts)| (*e, ts.iter().fold(0u64, |a, &t| (a + partial[t]) % m)))
                .filter(|(_, c)| *c != 0)
                .collect();
            for x in 0..self.range {
                let mut acc = 0u64;
                for &(e, c) in &coeffs {
                    acc = (acc + c * self.pw(j, e, x) % m) % m;
                }
                sink(acc);
            }
            return;
        }
        let mut next = vec![0u64; partial.len()];
        for x in 0..self.range {
            for (t, (e, _)) in self.terms.iter().enumerate() {
                next[t] = if partial[t] == 0 {
                    0
                } else {
                    partial[t] * self.pw(j, e[j], x) % m
                };
            }
            self.descend(j + 1, &next, sink);
        }
    }

    /// Folds every value `scale * f(x) mod M` into a per-worker accumulator
    /// and merges the accumulators.
    pub fn fold<A, I, F, R>(&self, identity: I, op: F, merge: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(&mut A, u64) + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let base: Vec<u64> = self.terms.iter().map(|(_, c)| *c).collect();
        if self.terms.is_empty() {
            let mut acc = identity();
            let total = self.points();
            // Every value is zero; fold in bounded batches.
            let mut left = total;
            while left > 0 {
                op(&mut acc, 0);
                left -= 1;
            }
            return acc;
        }
        let workers = rayon::current_num_threads().max(1) as u64;
        let min_len = (self.range / (4 * workers)).max(1) as usize;
        if self.nvars == 1 {
            let m = self.modulus;
            let coeffs: Vec<(u32, u64)> = self
                .last_groups
                .iter()
                .map(|(e, ts)| (*e, ts.iter().fold(0u64, |a, &t| (a + base[t]) % m)))
                .collect();
            return (0..self.range as usize)
                .into_par_iter()
                .with_min_len(min_len.max(1 << 12))
                .fold(&identity, |mut acc, x| {
                    let x = x as u64;
                    let mut v = 0u64;
                    for &(e, c) in &coeffs {
                        v = (v + c * self.pw(0, e, x) % m) % m;
                    }
                    op(&mut acc, v);
                    acc
                })
                .reduce(&identity, &merge);
        }
        let m = self.modulus;
        (0..self.range as usize)
            .into_par_iter()
            .with_min_len(min_len)
            .fold(&identity, |mut acc, x0| {
                let x0 = x0 as u64;
                let partial: Vec<u64> = self
                    .terms
                    .iter()
                    .enumerate()
                    .map(|(t, (e, _))| base[t] * self.pw(0, e[0], x0) % m)
                    .collect();
                self.descend(1, &partial, &mut |v| op(&mut acc, v));
                acc
            })
            .reduce(&identity, &merge)
    }

    /// All points with `scale * f(x) = 0 (mod M)`, in lexicographic order.
    pub fn zeros(&self) -> Vec<Vec<u64>> {
        let m = self.modulus;
        let base: Vec<u64> = self.terms.iter().map(|(_, c)| *c).collect();
        let chunks: Vec<Vec<Vec<u64>>> = (0..self.range as usize)
            .into_par_iter()
            .map(|x0| {
                let x0 = x0 as u64;
                let partial: Vec<u64> = self
                    .terms
                    .iter()
                    .enumerate()
                    .map(|(t, (e, _))| base[t] * self.pw(0, e[0], x0) % m)
                    .collect();
                let mut out = Vec::new();
                let mut point = vec![x0; self.nvars];
                self.descend_points(1, &partial, &mut point, &mut out);
                out
            })
            .collect();
        chunks.into_iter().flatten().collect()
    }

    fn descend_points(&self, j: usize, partial: &[u64], point: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let m = self.modulus;
        if j == self.nvars {
            if partial.iter().fold(0u64, |a, &v| (a + v) % m) == 0 {
                out.push(point.clone());
            }
            return;
        }
        let mut next = vec![0u64; partial.len()];
        for x in 0..self.range {
            point[j] = x;
            for (t, (e, _)) in self.terms.iter().enumerate() {
                next[t] = if partial[t] == 0 {
                    0
                } else {
                    partial[t] * self.pw(j, e[j], x) % m
                };
            }
            self.descend_points(j + 1, &next, point, out);
        }
    }

    /// `hist[v]` = number of points with `scale * f(x) = v (mod M)`.
    pub fn histogram(&self) -> Vec<u64> {
        let m = self.modulus as usize;
        self.fold(
            || vec![0u64; m],
            |h, v| h[v as usize] += 1,
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
    }
}
