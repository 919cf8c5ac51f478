use num_bigint::BigInt;
use serde::Serialize;

use crate::linalg::{self, Matrix};
use crate::poly::IntPolynomial;
use crate::{Error, Result};

/// A hyperplane `c . i = b` (`c >= 0`, `b > 0`) containing the support, with
/// the induced splitting `f = h + sum_{j in s} g_j x_j`.
///
/// Variable indices are 0-based: `s_vars` have weight `b`, `t_vars` weight
/// strictly between `0` and `b`, `r_vars` weight `0`.
#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneDecomposition {
    pub exists: bool,
    pub c: Vec<i64>,
    pub b: i64,
    pub s_vars: Vec<usize>,
    pub t_vars: Vec<usize>,
    pub r_vars: Vec<usize>,
    pub h: Option<IntPolynomial>,
    pub g: Vec<IntPolynomial>,
    pub strictly_positive_normal: bool,
}

impl HyperplaneDecomposition {
    fn none() -> Self {
        HyperplaneDecomposition {
            exists: false,
            c: Vec::new(),
            b: 0,
            s_vars: Vec::new(),
            t_vars: Vec::new(),
            r_vars: Vec::new(),
            h: None,
            g: Vec::new(),
            strictly_positive_normal: false,
        }
    }
}

/// Finds the hyperplane through `supp f` avoiding the origin with the most
/// zero weights (ties: smallest `b`, then lexicographically smallest `c`).
///
/// For a fixed zero set `Z`, the solutions `(c, b)` form the kernel of
/// `[i_{Z^c} | -1]`. Scanning zero sets from large to small, a feasible
/// solution at the first feasible level has no further zero weight, and a
/// two-dimensional kernel would contain a solution with an extra zero, so
/// only one-dimensional kernels with a strictly positive generator count.
pub fn hyperplane_support(f: &IntPolynomial) -> HyperplaneDecomposition {
    assert!(!f.is_zero(), "hyperplane support of the zero polynomial");
    let n = f.nvars();
    let supp = f.support();
    for zeros in (0..n).rev() {
        let mut best: Option<(i64, Vec<i64>)> = None;
        for zset in linalg::combinations(n, zeros) {
            let free: Vec<usize> = (0..n).filter(|j| !zset.contains(j)).collect();
            let rows: Matrix = supp
                .iter()
                .map(|e| {
                    let mut r: Vec<i128> = free.iter().map(|&j| e[j] as i128).collect();
                    r.push(-1);
                    r
                })
                .collect();
            let kernel = linalg::nullspace(&rows, free.len() + 1);
            if kernel.len() != 1 {
                continue;
            }
            let mut v = kernel[0].clone();
            if v[free.len()] < 0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            if v.iter().any(|&x| x <= 0) {
                continue;
            }
            let mut c = vec![0i64; n];
            for (k, &j) in free.iter().enumerate() {
                c[j] = v[k] as i64;
            }
            let b = v[free.len()] as i64;
            let better = match &best {
                None => true,
                Some((bb, bc)) => (b, &c) < (*bb, bc),
            };
            if better {
                best = Some((b, c));
            }
        }
        if let Some((b, c)) = best {
            return decompose(f, c, b);
        }
    }
    HyperplaneDecomposition::none()
}

fn decompose(f: &IntPolynomial, c: Vec<i64>, b: i64) -> HyperplaneDecomposition {
    let n = f.nvars();
    let s_vars: Vec<usize> = (0..n).filter(|&j| c[j] == b).collect();
    let t_vars: Vec<usize> = (0..n).filter(|&j| c[j] > 0 && c[j] < b).collect();
    let r_vars: Vec<usize> = (0..n).filter(|&j| c[j] == 0).collect();
    let h = f.filter_terms(|e| s_vars.iter().all(|&j| e[j] == 0));
    let g = s_vars
        .iter()
        .map(|&j| {
            let terms: Vec<(Vec<u32>, BigInt)> = f
                .terms()
                .filter(|(e, _)| e[j] > 0)
                .map(|(e, coef)| {
                    let mut ne = e.entries().to_vec();
                    ne[j] -= 1;
                    (ne, coef.clone())
                })
                .collect();
            IntPolynomial::from_terms(n, terms)
        })
        .collect();
    HyperplaneDecomposition {
        exists: true,
        strictly_positive_normal: r_vars.is_empty(),
        c,
        b,
        s_vars,
        t_vars,
        r_vars,
        h: Some(h),
        g,
    }
}

/// `f_I = h + sum_{j in I} g_j x_j` for `I` a subset of the s-variables,
/// written in the original variables.
pub fn build_f_i(d: &HyperplaneDecomposition, subset: &[usize]) -> Result<IntPolynomial> {
    if !d.exists {
        return Err(Error::Hypothesis("no hyperplane support".into()));
    }
    let h = d.h.as_ref().expect("decomposition carries h");
    let mut out = h.clone();
    for &j in subset {
        let k = d
            .s_vars
            .iter()
            .position(|&s| s == j)
            .ok_or_else(|| Error::InvalidArgument(format!("variable index {j} is not an s-variable")))?;
        let xj = IntPolynomial::var(h.nvars(), j);
        out = &out + &(&d.g[k] * &xj);
    }
    if out.is_zero() {
        return Err(Error::InvalidArgument("f_I is the zero polynomial".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, parse_polynomial_in};

    #[test]
    fn no_hyperplane() {
        let d = hyperplane_support(&parse_polynomial("x1^2*x2 - x1").unwrap());
        assert!(!d.exists);
    }

    #[test]
    fn mixed_classes() {
        let f = parse_polynomial("x2^2 + x1 + x1*x3^2").unwrap();
        let d = hyperplane_support(&f);
        assert!(d.exists);
        assert_eq!(d.c, vec![2, 1, 0]);
        assert_eq!(d.b, 2);
        assert_eq!(d.s_vars, vec![0]);
        assert_eq!(d.t_vars, vec![1]);
        assert_eq!(d.r_vars, vec![2]);
        assert_eq!(d.h.as_ref().unwrap(), &parse_polynomial_in("x2^2", 3).unwrap());
        assert_eq!(d.g[0], parse_polynomial_in("1 + x3^2", 3).unwrap());
        assert!(!d.strictly_positive_normal);

        assert_eq!(build_f_i(&d, &[]).unwrap(), parse_polynomial_in("x2^2", 3).unwrap());
        assert_eq!(build_f_i(&d, &[0]).unwrap(), f);
        assert!(build_f_i(&d, &[1]).is_err());
    }

    #[test]
    fn quasi_homogeneous() {
        let d = hyperplane_support(&parse_polynomial("x1 + x2^2").unwrap());
        assert!(d.exists);
        assert_eq!((d.c.clone(), d.b), (vec![2, 1], 2));
        assert!(d.strictly_positive_normal);
        assert!(d.r_vars.is_empty());
    }

    #[test]
    fn linear_g_parts() {
        // f = x1*g(z) + x2*h(z) with I = {x2}
        let f = parse_polynomial("x1*x3 + x1 + x2*x3^2").unwrap();
        let d = hyperplane_support(&f);
        assert!(d.exists);
        assert_eq!(d.s_vars, vec![0, 1]);
        assert!(d.h.as_ref().unwrap().is_zero());
        assert_eq!(build_f_i(&d, &[1]).unwrap(), parse_polynomial("x2*x3^2").unwrap());
        assert!(build_f_i(&d, &[]).is_err());
    }

    #[test]
    fn every_support_point_lies_on_the_hyperplane() {
        for s in ["x1^3 + x2^3", "x1*x2 + x3^2", "x1^2*x2 + x2^3*x3", "x1 + x2*x3"] {
            let f = parse_polynomial(s).unwrap();
            let d = hyperplane_support(&f);
            assert!(d.exists, "{s}");
            for e in f.support() {
                let v: i64 = e.to_i64().iter().zip(&d.c).map(|(a, b)| a * b).sum();
                assert_eq!(v, d.b, "{s}");
            }
            let mut rebuilt = d.h.clone().unwrap();
            for (k, &j) in d.s_vars.iter().enumerate() {
                rebuilt = &rebuilt + &(&d.g[k] * &IntPolynomial::var(f.nvars(), j));
            }
            assert_eq!(rebuilt, f, "{s}");
        }
    }
}
