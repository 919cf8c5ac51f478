//! Individual verification checks. Each returns plain rows so that suites,
//! the acceptance tests and the CLI can share them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expsum::{char_sum_naive, expsum_decomposed};
use crate::geom::{newton_polyhedron, triangulate_half_open, Cone, Face, NewtonPolyhedron};
use crate::invariants::{build_f_i, hyperplane_support, sigma_of_polynomial, HyperplaneDecomposition};
use crate::linalg::{self, Matrix};
use crate::poly::IntPolynomial;
use crate::rational::{as_string, pow_rat, rat};
use crate::zeta::{igusa_zeta, pole_report, zeta_series_oracle, RationalFunctionT};
use crate::{Error, Result};

fn fmt_point(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Canonical text for a face: dimension, compactness, vertices and rays.
pub fn describe_face(poly: &NewtonPolyhedron, face: &Face) -> String {
    let verts: Vec<String> = face.vertices.iter().map(|&i| fmt_point(&poly.vertices()[i])).collect();
    let rays: Vec<String> = face.rays.iter().map(|j| format!("e{}", j + 1)).collect();
    format!(
        "dim={} {} vertices=[{}] rays=[{}]",
        face.dim,
        if face.is_compact { "compact" } else { "unbounded" },
        verts.join(","),
        rays.join(",")
    )
}

pub fn hyperplane_summary(d: &HyperplaneDecomposition) -> String {
    if d.exists {
        format!("c={} b={}", fmt_point(&d.c), d.b)
    } else {
        "none".to_string()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaOracleRow {
    pub p: u64,
    pub certified: bool,
    /// Highest coefficient compared.
    pub v: Option<u32>,
    pub matches: bool,
    pub first_mismatch: Option<usize>,
}

/// Largest `v` with `p^{vn} <= budget`.
pub fn max_series_order(p: u64, n: usize, budget: u64) -> u32 {
    let mut v = 0u32;
    while (p as u128).pow((v + 1) * n as u32) <= budget as u128 {
        v += 1;
    }
    v
}

/// Compares the Taylor expansion of the explicit formula with residue
/// counting, coefficient by coefficient, as exact rationals.
pub fn zeta_master_oracle(f: &IntPolynomial, primes: &[u64], budget: u64) -> Result<Vec<ZetaOracleRow>> {
    let mut rows = Vec::new();
    for &p in primes {
        let z = match igusa_zeta(f, p, budget) {
            Ok(z) => z,
            Err(Error::NotCertified { .. }) => {
                rows.push(ZetaOracleRow {
                    p,
                    certified: false,
                    v: None,
                    matches: true,
                    first_mismatch: None,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let v = max_series_order(p, f.nvars(), budget);
        let series = z.z.series_expand(v as usize)?;
        let oracle = zeta_series_oracle(f, p, v, budget)?;
        let first_mismatch = series.iter().zip(&oracle).position(|(a, b)| a != b);
        rows.push(ZetaOracleRow {
            p,
            certified: true,
            v: Some(v),
            matches: first_mismatch.is_none() && series.len() == oracle.len(),
            first_mismatch,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormRow {
    pub p: u64,
    pub exact_match: bool,
    pub order_at_sigma: usize,
    pub leading_limit: f64,
    pub expected_limit: f64,
    pub passed: bool,
}

/// `Z_{x1^2} = (1 - 1/p)/(1 - t^2/p)`, a simple pole at `s = -1/2` with
/// leading coefficient `(1 - 1/p)/2`.
pub fn square_closed_form(primes: &[u64], budget: u64, tol: f64) -> Result<Vec<ClosedFormRow>> {
    let f = crate::poly::parse_polynomial("x1^2")?;
    let poly = newton_polyhedron(&f.support())?;
    let inv = crate::invariants::sigma_kappa(&poly);
    let mut rows = Vec::new();
    for &p in primes {
        let z = igusa_zeta(&f, p, budget)?;
        let c = BigRational::one() - pow_rat(p, -1);
        let want = RationalFunctionT::new(vec![c], vec![BigRational::one(), BigRational::zero(), -pow_rat(p, -1)])?;
        let rep = pole_report(&z, &inv);
        let expected_limit = (1.0 - 1.0 / p as f64) / 2.0;
        let exact_match = z.z == want;
        let ok = exact_match
            && rep.order_at_sigma == 1
            && inv.sigma == rat(1, 2)
            && (rep.leading_limit - expected_limit).abs() <= tol;
        rows.push(ClosedFormRow {
            p,
            exact_match,
            order_at_sigma: rep.order_at_sigma,
            leading_limit: rep.leading_limit,
            expected_limit,
            passed: ok,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceRow {
    pub p: u64,
    pub m: u32,
    pub naive_re: f64,
    pub naive_im: f64,
    pub decomposed_re: f64,
    pub decomposed_im: f64,
    pub diff: f64,
    pub passed: bool,
}

/// Brute-force sums against the cone decomposition on every certified
/// grid point within budget.
pub fn expsum_equivalence(f: &IntPolynomial, primes: &[u64], ms: &[u32], budget: u64, tol: f64) -> Result<Vec<EquivalenceRow>> {
    let mut rows = Vec::new();
    for &p in primes {
        for &m in ms {
            let dec = match expsum_decomposed(f, p, m, budget) {
                Ok(v) => v,
                Err(Error::NotCertified { .. }) | Err(Error::BudgetExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            let naive = match char_sum_naive(f, p, m, 1, budget) {
                Ok(v) => v,
                Err(Error::BudgetExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            let diff = naive.dist(&dec);
            rows.push(EquivalenceRow {
                p,
                m,
                naive_re: naive.re,
                naive_im: naive.im,
                decomposed_re: dec.re,
                decomposed_im: dec.im,
                diff,
                passed: diff <= tol,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussRow {
    pub p: u64,
    pub m: u32,
    pub abs: f64,
    pub expected: f64,
    pub passed: bool,
}

/// `|S_{x1^2}(p, m)| = p^{-m/2}` for odd `p`.
pub fn gauss_anchor(primes: &[u64], ms: &[u32], budget: u64, tol: f64) -> Result<Vec<GaussRow>> {
    let f = crate::poly::parse_polynomial("x1^2")?;
    let mut rows = Vec::new();
    for &p in primes.iter().filter(|&&p| p % 2 == 1) {
        for &m in ms {
            let abs = char_sum_naive(&f, p, m, 1, budget)?.abs();
            let expected = (p as f64).powf(-(m as f64) / 2.0);
            rows.push(GaussRow {
                p,
                m,
                abs,
                expected,
                passed: (abs - expected).abs() <= tol,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SigmaCalculusReport {
    pub samples: usize,
    pub sum_checked: usize,
    pub product_checked: usize,
    pub merge_checked: usize,
    pub merge_skipped: usize,
    pub triple_checked: usize,
    pub failures: Vec<String>,
}

fn random_polynomial(rng: &mut ChaCha8Rng, nvars: usize) -> IntPolynomial {
    let terms = rng.gen_range(1..=3);
    let mut out = Vec::new();
    while out.len() < terms {
        let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=3)).collect();
        if e.iter().all(|&x| x == 0) {
            continue;
        }
        let c: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        out.push((e, c));
    }
    IntPolynomial::from_terms(nvars, out)
}

/// The additivity, minimum and merging identities for `sigma` on random
/// supports in disjoint variables.
pub fn sigma_calculus(seed: u64, samples: usize) -> SigmaCalculusReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SigmaCalculusReport {
        samples,
        ..Default::default()
    };
    let s = sigma_of_polynomial;
    for i in 0..samples {
        let nf = rng.gen_range(1..=3);
        let ng = rng.gen_range(1..=3);
        let f = random_polynomial(&mut rng, nf);
        let g = random_polynomial(&mut rng, ng);
        let (sf, sg) = (s(&f), s(&g));
        let sum = s(&f.disjoint_sum(&g));
        rep.sum_checked += 1;
        if sum != &sf + &sg {
            rep.failures.push(format!("sample {i}: sigma({f} + {g}) = {sum}, expected {}", &sf + &sg));
        }
        let prod = s(&f.disjoint_product(&g));
        rep.product_checked += 1;
        if prod != sf.clone().min(sg.clone()) {
            rep.failures.push(format!("sample {i}: sigma(({f}) * ({g})) = {prod}"));
        }
        if nf >= 2 {
            let merged = f.merge_last_two_vars();
            if merged.is_zero() {
                rep.merge_skipped += 1;
            } else {
                rep.merge_checked += 1;
                if s(&merged) > sf {
                    rep.failures.push(format!("sample {i}: merging raises sigma of {f}"));
                }
            }
        }
        let nh = rng.gen_range(1..=2);
        let h = random_polynomial(&mut rng, nh);
        let sh = s(&h);
        let f2 = random_polynomial(&mut rng, 1 + (nf > 2) as usize);
        let g2 = random_polynomial(&mut rng, 1 + (ng > 2) as usize);
        let (sf2, sg2) = (s(&f2), s(&g2));
        rep.triple_checked += 1;
        let t_sum = s(&f2.disjoint_sum(&g2).disjoint_sum(&h));
        if t_sum != &(&sf2 + &sg2) + &sh {
            rep.failures.push(format!("sample {i}: triple sum of {f2}, {g2}, {h} gives {t_sum}"));
        }
        let t_prod = s(&f2.disjoint_product(&g2).disjoint_product(&h));
        if t_prod != sf2.min(sg2).min(sh) {
            rep.failures.push(format!("sample {i}: triple product of {f2}, {g2}, {h} gives {t_prod}"));
        }
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneSigmaRow {
    pub subset: Vec<usize>,
    #[serde(with = "as_string")]
    pub sigma_f: BigRational,
    #[serde(with = "as_string")]
    pub sigma_fi: BigRational,
    pub s: usize,
    #[serde(with = "as_string")]
    pub bound: BigRational,
    pub holds: bool,
    pub equality: bool,
}

/// `sigma(f) <= sigma(f_I) + s - |I|` for every subset `I` of the
/// s-variables; empty when there is no hyperplane or `h = 0`.
pub fn hyperplane_sigma_rows(f: &IntPolynomial) -> Result<Vec<HyperplaneSigmaRow>> {
    let d = hyperplane_support(f);
    if !d.exists || d.h.as_ref().map_or(true, |h| h.is_zero()) {
        return Ok(Vec::new());
    }
    let sigma_f = sigma_of_polynomial(f);
    let s = d.s_vars.len();
    let mut rows = Vec::new();
    for mask in 0u32..(1 << s) {
        let subset: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| d.s_vars[i]).collect();
        let fi = build_f_i(&d, &subset)?;
        let sigma_fi = sigma_of_polynomial(&fi);
        let bound = &sigma_fi + BigRational::from_integer(BigInt::from((s - subset.len()) as i64));
        rows.push(HyperplaneSigmaRow {
            holds: sigma_f <= bound,
            equality: sigma_f == bound,
            subset,
            sigma_f: sigma_f.clone(),
            sigma_fi,
            s,
            bound,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GeometryReport {
    pub cones: usize,
    pub pieces: usize,
    pub samples: usize,
    pub inside: usize,
    pub outside: usize,
    pub membership_failures: Vec<String>,
    pub index_failures: Vec<String>,
}

/// Closed-cone membership by Caratheodory: some independent subset of
/// the rays has nonnegative coordinates for `x`.
struct ClosedConeOracle {
    /// `(generators, pivot columns, adjugate, det)` for every basis.
    bases: Vec<(Matrix, Vec<usize>, Matrix, i128)>,
    span: Matrix,
    dim: usize,
}

impl ClosedConeOracle {
    fn new(rays: &[Vec<i64>]) -> Self {
        let g: Matrix = rays.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let dim = linalg::rank(&g);
        let n = g[0].len();
        let mut bases = Vec::new();
        for subset in linalg::combinations(g.len(), dim) {
            let rows: Matrix = subset.iter().map(|&i| g[i].clone()).collect();
            if linalg::rank(&rows) < dim {
                continue;
            }
            for cols in linalg::combinations(n, dim) {
                let block: Matrix = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
                let det = linalg::det(&block);
                if det != 0 {
                    bases.push((rows.clone(), cols, linalg::adjugate(&block), det));
                    break;
                }
            }
        }
        ClosedConeOracle { bases, span: g, dim }
    }

    fn in_span(&self, x: &[i128]) -> bool {
        let mut m = self.span.clone();
        m.push(x.to_vec());
        linalg::rank(&m) == self.dim
    }

    /// Coordinates times `det` in the basis, with the sign of `det` folded in.
    fn coords(basis: &(Matrix, Vec<usize>, Matrix, i128), x: &[i128]) -> Option<Vec<i128>> {
        let (rows, cols, adj, det) = basis;
        let d = rows.len();
        let xp: Vec<i128> = cols.iter().map(|&c| x[c]).collect();
        let lam: Vec<i128> = (0..d).map(|j| (0..d).map(|i| xp[i] * adj[i][j]).sum()).collect();
        // lam G = det x must hold on every coordinate.
        for c in 0..x.len() {
            let v: i128 = (0..d).map(|j| lam[j] * rows[j][c]).sum();
            if v != det * x[c] {
                return None;
            }
        }
        Some(lam.into_iter().map(|l| if *det < 0 { -l } else { l }).collect())
    }

    fn closed_contains(&self, x: &[i128]) -> bool {
        self.bases
            .iter()
            .any(|b| Self::coords(b, x).is_some_and(|l| l.iter().all(|&v| v >= 0)))
    }

    /// `x` is in the relative interior iff it is in the span and
    /// `x - y/K` stays in the cone for `y` the sum of the rays and `K`
    /// beyond every facet functional evaluated at `y`.
    fn relint_contains(&self, x: &[i128]) -> bool {
        if !self.in_span(x) {
            return false;
        }
        const K: i128 = 1 << 24;
        let n = x.len();
        let y: Vec<i128> = (0..n).map(|c| self.span.iter().map(|r| r[c]).sum()).collect();
        let z: Vec<i128> = (0..n).map(|c| K * x[c] - y[c]).collect();
        self.closed_contains(&z)
    }
}

fn sample_cones(rng: &mut ChaCha8Rng) -> Result<Vec<Cone>> {
    let mut cones = Vec::new();
    for n in [2usize, 3] {
        for _ in 0..4 {
            let f = random_polynomial(rng, n);
            let g = random_polynomial(rng, n);
            let poly = newton_polyhedron(&(&f + &g).support())?;
            for face in poly.proper_faces() {
                let c = poly.normal_cone(face);
                if !cones.contains(&c) {
                    cones.push(c);
                }
            }
        }
    }
    for _ in 0..8 {
        let k = rng.gen_range(3..=6);
        let rays: Vec<Vec<i64>> = (0..k)
            .map(|_| loop {
                let r: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
                if r.iter().any(|&x| x != 0) {
                    break r;
                }
            })
            .collect();
        cones.push(Cone::new(3, rays));
    }
    Ok(cones)
}

/// Half-open decompositions of sampled cones: every sampled lattice point
/// lies in exactly one piece when it is in the relative interior and in
/// none otherwise, and each piece's parallelepiped holds exactly
/// `lattice_index` points, counted independently by enumeration.
pub fn geometry_sampling(seed: u64, samples_per_cone: usize) -> Result<GeometryReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cones = sample_cones(&mut rng)?;
    let mut rep = GeometryReport {
        cones: cones.len(),
        ..Default::default()
    };
    for cone in &cones {
        let pieces = triangulate_half_open(cone)?;
        rep.pieces += pieces.len();
        for piece in &pieces {
            let pts = piece.parallelepiped_points();
            let index = piece.lattice_index() as usize;
            let brute = count_parallelepiped(piece.generators(), piece.open_mask());
            if pts.len() != index || brute != index || pts.iter().any(|x| !piece.contains(x)) {
                rep.index_failures.push(format!(
                    "generators {:?}: {} points, index {}, enumerated {}",
                    piece.generators(),
                    pts.len(),
                    index,
                    brute
                ));
            }
        }
        let oracle = ClosedConeOracle::new(cone.generators());
        let rays = cone.generators();
        let n = cone.ambient_dim();
        let bound = rays.iter().flatten().copied().max().unwrap_or(1) * 3;
        for i in 0..samples_per_cone {
            let x: Vec<i64> = if i % 2 == 0 || cone.dim() < n {
                let mut x = vec![0i64; n];
                for r in rays {
                    let c = rng.gen_range(0..=6);
                    for (xi, ri) in x.iter_mut().zip(r) {
                        *xi += c * ri;
                    }
                }
                let d = rng.gen_range(1..=3);
                if x.iter().all(|v| v % d == 0) {
                    x.iter_mut().for_each(|v| *v /= d);
                }
                x
            } else {
                (0..n).map(|_| rng.gen_range(0..=bound)).collect()
            };
            let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
            let expected = oracle.relint_contains(&xi) as usize;
            let hits = pieces.iter().filter(|p| p.contains(&x)).count();
            rep.samples += 1;
            if expected == 1 {
                rep.inside += 1;
            } else {
                rep.outside += 1;
            }
            if hits != expected && rep.membership_failures.len() < 10 {
                rep.membership_failures.push(format!(
                    "cone {:?}: point {:?} in {} pieces, expected {}",
                    rays, x, hits, expected
                ));
            }
        }
    }
    Ok(rep)
}

/// Lattice points of the half-open parallelepiped by scanning its
/// bounding box.
fn count_parallelepiped(gens: &[Vec<i64>], open: &[bool]) -> usize {
    let n = gens[0].len();
    let lo: Vec<i64> = (0..n).map(|c| gens.iter().map(|g| g[c].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..n).map(|c| gens.iter().map(|g| g[c].max(0)).sum()).collect();
    let oracle = ClosedConeOracle::new(gens);
    let basis = &oracle.bases[0];
    let det = basis.3.abs();
    let mut count = 0;
    let mut x = lo.clone();
    loop {
        let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        if let Some(l) = ClosedConeOracle::coords(basis, &xi) {
            let inside = l.iter().zip(open).all(|(&v, &o)| if o { v > 0 && v <= det } else { v >= 0 && v < det });
            count += inside as usize;
        }
        let mut c = 0;
        loop {
            if c == n {
                return count;
            }
            if x[c] < hi[c] {
                x[c] += 1;
                break;
            }
            x[c] = lo[c];
            c += 1;
        }
    }
}
