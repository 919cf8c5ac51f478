//! Small exact integer/rational linear algebra for polyhedral computations.
//!
//! Matrices are row-major `Vec<Vec<i128>>`. Everything here is meant for
//! the tiny dimensions met in practice (n <= 6), so fraction-free
//! elimination in `i128` is used wherever the intermediate values are
//! bounded by minors of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<i128>>;

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(v: &[i128]) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x));
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

/// Row echelon form by Bareiss elimination; returns `(rank, pivot columns)`.
pub fn echelon(mut a: Matrix) -> (usize, Vec<usize>) {
    let rows = a.len();
    if rows == 0 {
        return (0, Vec::new());
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    let mut prev = 1i128;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

pub fn rank(a: &[Vec<i128>]) -> usize {
    echelon(a.to_vec()).0
}

/// Determinant of a square matrix (Bareiss).
pub fn det(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m = a.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Adjugate of a square matrix, so that `a * adj(a) = det(a) I`.
pub fn adjugate(a: &[Vec<i128>]) -> Matrix {
    let n = a.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Matrix = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = s * det(&minor);
        }
    }
    adj
}

/// The generalized cross product of `n-1` vectors in `Z^n`: a vector
/// orthogonal to all of them, zero iff they are dependent.
pub fn cofactor_normal(rows: &[Vec<i128>]) -> Vec<i128> {
    let n = rows.len() + 1;
    if n == 1 {
        return vec![1];
    }
    (0..n)
        .map(|j| {
            let minor: Matrix = rows
                .iter()
                .map(|r| (0..n).filter(|&c| c != j).map(|c| r[c]).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * det(&minor)
        })
        .collect()
}

/// Basis of the rational nullspace `{x : a x = 0}`, each vector scaled to a
/// primitive integer vector.
pub fn nullspace(a: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in 0..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); cols];
            v[fc] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][fc].clone();
            }
            let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let ints: Vec<i128> = v
                .iter()
                .map(|x| {
                    let y = x * BigRational::from_integer(lcm.clone());
                    i128::try_from(y.to_integer()).expect("nullspace entry overflow")
                })
                .collect();
            primitive(&ints)
        })
        .collect()
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Column-style Hermite reduction of a full-row-rank `d x n` matrix: the
/// lower-triangular `d x d` block `H` with positive diagonal such that
/// `G U = [H | 0]` for some unimodular `U`.
pub fn lower_hermite(g: &[Vec<i128>]) -> Matrix {
    let d = g.len();
    let n = if d == 0 { 0 } else { g[0].len() };
    let mut m = g.to_vec();
    for i in 0..d {
        for j in i + 1..n {
            if m[i][j] == 0 {
                continue;
            }
            let (a, b) = (m[i][i], m[i][j]);
            let (gg, x, y) = ext_gcd(a, b);
            let (ua, ub) = (a / gg, b / gg);
            // [col_i col_j] <- [x col_i + y col_j, -ub col_i + ua col_j]
            for row in m.iter_mut() {
                let ci = row[i];
                let cj = row[j];
                row[i] = x * ci + y * cj;
                row[j] = -ub * ci + ua * cj;
            }
        }
        assert!(m[i][i] != 0, "matrix is not of full row rank");
        if m[i][i] < 0 {
            for row in m.iter_mut() {
                row[i] = -row[i];
            }
        }
        // Reduce the entries left of the diagonal into [0, H_ii).
        for j in 0..i {
            let q = Integer::div_floor(&m[i][j], &m[i][i]);
            if q != 0 {
                for row in m.iter_mut() {
                    row[j] -= q * row[i];
                }
            }
        }
    }
    m.iter().map(|r| r[..d].to_vec()).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// gcd of all maximal minors of a `d x n` matrix with `d <= n`.
pub fn gcd_maximal_minors(g: &[Vec<i128>]) -> i128 {
    let d = g.len();
    let n = if d == 0 { 0 } else { g[0].len() };
    subsets(n, d).iter().fold(0i128, |acc, cols| {
        let minor: Matrix = g.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        gcd(acc, det(&minor))
    })
}

/// Exact rational solution `lambda` of `lambda G = x` when `x` lies in the
/// row space of `G` (rows independent); `None` otherwise.
pub fn row_coordinates(g: &[Vec<i128>], x: &[BigRational]) -> Option<Vec<BigRational>> {
    let d = g.len();
    let n = x.len();
    // Augmented system G^T lambda = x^T.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> =
                (0..d).map(|i| BigRational::from_integer(BigInt::from(g[i][j]))).collect();
            row.push(x[j].clone());
            row
        })
        .collect();
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for c in 0..d {
        let p = (r..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..=d {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[d].is_zero()) {
        return None;
    }
    Some((0..d).map(|i| m[i][d].clone()).collect())
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_nonnegative(v: &[i128]) -> bool {
    v.iter().all(|&x| x >= 0)
}

pub fn to_rational(v: &[i128]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub fn abs_max(v: &[i128]) -> i128 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}
