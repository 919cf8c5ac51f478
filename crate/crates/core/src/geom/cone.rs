use serde::Serialize;

use crate::linalg::{self, Matrix};
use crate::{Error, Result};

/// A pointed rational cone in `R_{>=0}^n` given by its extreme rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    n: usize,
    generators: Vec<Vec<i64>>,
    dim: usize,
}

impl Cone {
    /// Rays are made primitive, deduplicated and sorted.
    pub fn new(n: usize, rays: Vec<Vec<i64>>) -> Cone {
        let mut generators: Vec<Vec<i64>> = rays
            .into_iter()
            .map(|r| {
                let r128: Vec<i128> = r.iter().map(|&x| x as i128).collect();
                linalg::primitive(&r128).into_iter().map(|x| x as i64).collect()
            })
            .collect();
        generators.sort();
        generators.dedup();
        let dim = linalg::rank(&to_matrix(&generators));
        Cone { n, generators, dim }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

fn to_matrix(v: &[Vec<i64>]) -> Matrix {
    v.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

/// `{sum lambda_j g_j}` with `lambda_j > 0` where `open[j]` and
/// `lambda_j >= 0` otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct HalfOpenSimplicialCone {
    generators: Vec<Vec<i64>>,
    open: Vec<bool>,
    #[serde(skip)]
    solver: Coordinates,
}

/// Integer coordinates of a point with respect to independent generators:
/// with `G_P` an invertible square block of columns, `lambda * det(G_P) =
/// x_P * adj(G_P)`.
#[derive(Clone, Debug, Default)]
struct Coordinates {
    gens: Matrix,
    cols: Vec<usize>,
    adj: Matrix,
    det: i128,
}

impl Coordinates {
    fn new(gens: &[Vec<i64>]) -> Coordinates {
        let g = to_matrix(gens);
        let d = g.len();
        let transposed: Matrix = (0..g[0].len()).map(|j| g.iter().map(|r| r[j]).collect()).collect();
        let (rank, _) = linalg::echelon(g.clone());
        assert_eq!(rank, d, "generators must be linearly independent");
        // Pivot rows of G^T are independent columns of G.
        let mut cols = Vec::new();
        let mut acc: Matrix = Vec::new();
        for (j, col) in transposed.iter().enumerate() {
            acc.push(col.clone());
            if linalg::rank(&acc) > cols.len() {
                cols.push(j);
            } else {
                acc.pop();
            }
            if cols.len() == d {
                break;
            }
        }
        let block: Matrix = g.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        let det = linalg::det(&block);
        let adj = linalg::adjugate(&block);
        Coordinates {
            gens: g,
            cols,
            adj,
            det,
        }
    }

    /// `lambda(x) * det`, or `None` when `x` is outside the span.
    fn scaled(&self, x: &[i128]) -> Option<Vec<i128>> {
        let d = self.cols.len();
        let mu: Vec<i128> = (0..d)
            .map(|j| (0..d).map(|i| x[self.cols[i]] * self.adj[i][j]).sum())
            .collect();
        for c in 0..x.len() {
            let lhs: i128 = (0..d).map(|i| mu[i] * self.gens[i][c]).sum();
            if lhs != self.det * x[c] {
                return None;
            }
        }
        Some(mu)
    }

    /// Signs of the coordinates of `x` (`None` outside the span).
    fn signs(&self, x: &[i128]) -> Option<Vec<i8>> {
        let s = self.det.signum() as i8;
        self.scaled(x).map(|mu| mu.iter().map(|m| m.signum() as i8 * s).collect())
    }
}

impl HalfOpenSimplicialCone {
    pub fn new(generators: Vec<Vec<i64>>, open: Vec<bool>) -> HalfOpenSimplicialCone {
        assert_eq!(generators.len(), open.len());
        let solver = Coordinates::new(&generators);
        HalfOpenSimplicialCone {
            generators,
            open,
            solver,
        }
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn open_mask(&self) -> &[bool] {
        &self.open
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let x: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        match self.solver.signs(&x) {
            None => false,
            Some(s) => s
                .iter()
                .zip(&self.open)
                .all(|(&sg, &open)| if open { sg > 0 } else { sg >= 0 }),
        }
    }

    /// `gcd` of the maximal minors of the generator matrix.
    pub fn lattice_index(&self) -> u64 {
        linalg::gcd_maximal_minors(&to_matrix(&self.generators)).unsigned_abs() as u64
    }

    /// The lattice points of the half-open parallelepiped
    /// `{sum lambda_j g_j}` with `lambda_j in (0,1]` on open sides and
    /// `[0,1)` otherwise.
    pub fn parallelepiped_points(&self) -> Vec<Vec<i64>> {
        let g = to_matrix(&self.generators);
        let d = g.len();
        let h = linalg::lower_hermite(&g);
        let delta: i128 = (0..d).map(|i| h[i][i]).product();
        let adj = linalg::adjugate(&h);
        let mut out = Vec::with_capacity(delta as usize);
        let mut r = vec![0i128; d];
        loop {
            // lambda = r H^{-1} = (r adj(H)) / det(H)
            let lam: Vec<i128> = (0..d)
                .map(|j| {
                    let v: i128 = (0..d).map(|i| r[i] * adj[i][j]).sum();
                    let v = v.rem_euclid(delta);
                    if self.open[j] && v == 0 {
                        delta
                    } else {
                        v
                    }
                })
                .collect();
            let n = g[0].len();
            let x: Vec<i64> = (0..n)
                .map(|c| {
                    let s: i128 = (0..d).map(|i| lam[i] * g[i][c]).sum();
                    debug_assert_eq!(s % delta, 0);
                    (s / delta) as i64
                })
                .collect();
            out.push(x);
            // Next coset representative in prod [0, H_ii).
            let mut i = 0;
            loop {
                if i == d {
                    out.sort();
                    return out;
                }
                r[i] += 1;
                if r[i] < h[i][i] {
                    break;
                }
                r[i] = 0;
                i += 1;
            }
        }
    }
}

/// Disjoint cover of the relative interior of `cone` by half-open
/// simplicial cones spanned by its extreme rays.
///
/// The rays are placed in lexicographic order. Which facets of each piece
/// are kept is decided by a generic reference point `y` of the relative
/// interior: the facet opposite `g_j` is kept iff `lambda_j(y) < 0`, so
/// each piece is `{x : x - eps y lies in its interior for small eps > 0}`.
pub fn triangulate_half_open(cone: &Cone) -> Result<Vec<HalfOpenSimplicialCone>> {
    let rays = cone.generators();
    if rays.is_empty() {
        return Err(Error::InvalidArgument("cannot triangulate the zero cone".into()));
    }
    let cells = placing_triangulation(rays);
    let solvers: Vec<Coordinates> = cells
        .iter()
        .map(|c| Coordinates::new(&c.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>()))
        .collect();
    let n = cone.ambient_dim();
    for attempt in 1i128.. {
        let y: Vec<i128> = (0..n)
            .map(|c| {
                rays.iter()
                    .enumerate()
                    .map(|(i, r)| r[c] as i128 * weight(attempt, i))
                    .sum()
            })
            .collect();
        let signs: Vec<Vec<i8>> = solvers
            .iter()
            .map(|s| s.signs(&y).expect("reference point lies in the span"))
            .collect();
        if signs.iter().flatten().any(|&s| s == 0) {
            continue;
        }
        return Ok(cells
            .iter()
            .zip(signs)
            .map(|(cell, sg)| {
                let gens = cell.iter().map(|&i| rays[i].clone()).collect();
                HalfOpenSimplicialCone::new(gens, sg.iter().map(|&s| s > 0).collect())
            })
            .collect());
    }
    unreachable!()
}

/// Positive weights along a moment curve; for all but finitely many
/// attempts the weighted sum avoids every wall of the triangulation.
fn weight(attempt: i128, i: usize) -> i128 {
    let base = attempt + 1;
    1 + base.pow(i as u32 % 16) * (i as i128 + 1)
}

fn placing_triangulation(rays: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = vec![vec![0]];
    let mut span: Matrix = vec![rays[0].iter().map(|&x| x as i128).collect()];
    for (k, r) in rays.iter().enumerate().skip(1) {
        let r128: Vec<i128> = r.iter().map(|&x| x as i128).collect();
        let mut ext = span.clone();
        ext.push(r128.clone());
        if linalg::rank(&ext) > linalg::rank(&span) {
            for c in cells.iter_mut() {
                c.push(k);
            }
            span = ext;
            continue;
        }
        // Boundary facets: (d-1)-subsets that occur in exactly one cell.
        let mut facet_count: std::collections::BTreeMap<Vec<usize>, Vec<(usize, usize)>> =
            Default::default();
        for (ci, c) in cells.iter().enumerate() {
            for drop in 0..c.len() {
                let mut f = c.clone();
                f.remove(drop);
                facet_count.entry(f).or_default().push((ci, drop));
            }
        }
        let mut new_cells = Vec::new();
        for (f, owners) in facet_count {
            if owners.len() != 1 {
                continue;
            }
            let (ci, drop) = owners[0];
            let gens: Vec<Vec<i64>> = cells[ci].iter().map(|&i| rays[i].clone()).collect();
            let signs = Coordinates::new(&gens).signs(&r128).expect("ray lies in the span");
            if signs[drop] < 0 {
                let mut cell = f.clone();
                cell.push(k);
                cell.sort();
                new_cells.push(cell);
            }
        }
        cells.extend(new_cells);
    }
    cells.sort();
    cells
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_open_cone() {
        let c = HalfOpenSimplicialCone::new(vec![vec![1, 0], vec![0, 1]], vec![true, true]);
        assert_eq!(c.parallelepiped_points(), vec![vec![1, 1]]);
        assert!(c.contains(&[1, 1]));
        assert!(!c.contains(&[1, 0]));
    }

    #[test]
    fn parallelepiped_examples() {
        let c = HalfOpenSimplicialCone::new(vec![vec![3, 2], vec![0, 1]], vec![true, true]);
        assert_eq!(c.parallelepiped_points(), vec![vec![1, 1], vec![2, 2], vec![3, 3]]);
        assert_eq!(c.lattice_index(), 3);
        let c = HalfOpenSimplicialCone::new(vec![vec![2, 0], vec![0, 1]], vec![true, true]);
        assert_eq!(c.parallelepiped_points(), vec![vec![1, 1], vec![2, 1]]);
        let c = HalfOpenSimplicialCone::new(vec![vec![2, 0], vec![0, 1]], vec![false, false]);
        assert_eq!(c.parallelepiped_points(), vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn single_ray_excludes_origin() {
        let cone = Cone::new(2, vec![vec![3, 2]]);
        let pieces = triangulate_half_open(&cone).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].open_mask(), &[true]);
        assert!(!pieces[0].contains(&[0, 0]));
        assert!(pieces[0].contains(&[6, 4]));
        assert!(!pieces[0].contains(&[6, 5]));
    }

    #[test]
    fn simplicial_cone_is_one_open_piece() {
        let cone = Cone::new(2, vec![vec![1, 0], vec![0, 1]]);
        let pieces = triangulate_half_open(&cone).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].open_mask(), &[true, true]);
    }

    #[test]
    fn square_cone_splits() {
        let cone = Cone::new(3, vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1], vec![0, 0, 1]]);
        // (1,1,1) = (1,0,1) + (0,1,1) - (0,0,1): a cone over a square.
        let pieces = triangulate_half_open(&cone).unwrap();
        assert_eq!(pieces.len(), 2);
        for x in [[1, 1, 2], [1, 1, 3], [2, 1, 3]] {
            assert_eq!(pieces.iter().filter(|p| p.contains(&x)).count(), 1, "{x:?}");
        }
        for x in [[1, 0, 1], [0, 0, 1], [1, 0, 2], [0, 0, 0]] {
            assert_eq!(pieces.iter().filter(|p| p.contains(&x)).count(), 0, "{x:?}");
        }
    }

    #[test]
    fn zero_cone_is_rejected() {
        assert!(triangulate_half_open(&Cone::new(2, vec![])).is_err());
    }
}
