use std::collections::{BTreeSet, HashMap, VecDeque};

use num_rational::BigRational;
use serde::Serialize;

use super::cone::Cone;
use crate::linalg::{self, Matrix};
use crate::poly::ExponentVector;
use crate::{Error, Result};

/// The half-space `normal . x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn eval(&self, x: &[i64]) -> i64 {
        self.normal.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.eval(x) == self.offset
    }

    pub fn is_coordinate(&self) -> bool {
        self.offset == 0 && self.normal.iter().filter(|&&c| c != 0).count() == 1
    }
}

/// A non-empty face, identified by the set of facets containing it.
#[derive(Clone, Debug, Serialize)]
pub struct Face {
    pub id: usize,
    pub tight: Vec<usize>,
    pub dim: usize,
    pub codim: usize,
    /// Indices into [`NewtonPolyhedron::vertices`].
    pub vertices: Vec<usize>,
    /// Coordinate directions `e_j` contained in the recession cone.
    pub rays: Vec<usize>,
    pub support_points: Vec<ExponentVector>,
    pub is_proper: bool,
    pub is_compact: bool,
    pub span_contains_origin: bool,
}

/// `nu(a)`, `N(a)` and the first meet locus `F(a)` of a weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearData {
    pub nu: i64,
    pub n_min: i64,
    pub face: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonPolyhedron {
    n: usize,
    support: Vec<ExponentVector>,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
    #[serde(skip)]
    face_index: HashMap<Vec<usize>, usize>,
}

pub fn newton_polyhedron(support: &[ExponentVector]) -> Result<NewtonPolyhedron> {
    NewtonPolyhedron::new(support)
}

pub fn enumerate_faces(p: &NewtonPolyhedron) -> Vec<Face> {
    p.faces.clone()
}

fn to_i128(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

impl NewtonPolyhedron {
    pub fn new(support: &[ExponentVector]) -> Result<NewtonPolyhedron> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        if support.iter().any(|e| e.is_zero()) {
            return Err(Error::OriginInSupport);
        }
        let n = support[0].len();
        let support: Vec<ExponentVector> =
            support.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let pts: Vec<Vec<i64>> = support.iter().map(|e| e.to_i64()).collect();
        let minimal: Vec<Vec<i64>> = pts
            .iter()
            .filter(|p| {
                !pts.iter()
                    .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
            })
            .cloned()
            .collect();
        let facets = facet_search(n, &minimal);
        let vertices: Vec<Vec<i64>> = minimal
            .into_iter()
            .filter(|v| {
                let rows: Matrix = facets
                    .iter()
                    .filter(|f| f.is_tight(v))
                    .map(|f| to_i128(&f.normal))
                    .collect();
                linalg::rank(&rows) == n
            })
            .collect();
        let mut poly = NewtonPolyhedron {
            n,
            support,
            vertices,
            facets,
            faces: Vec::new(),
            face_index: HashMap::new(),
        };
        poly.build_faces();
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[ExponentVector] {
        &self.support
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// The face `Delta_0` itself (no tight facets).
    pub fn whole(&self) -> &Face {
        &self.faces[self.face_index[&Vec::new()]]
    }

    pub fn proper_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.is_proper)
    }

    pub fn face_by_tight(&self, tight: &[usize]) -> Option<&Face> {
        self.face_index.get(tight).map(|&i| &self.faces[i])
    }

    /// Exact membership test for a rational point.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.facets.iter().all(|f| {
            let v: BigRational = f
                .normal
                .iter()
                .zip(x)
                .map(|(c, xi)| xi * BigRational::from_integer((*c).into()))
                .sum();
            v >= BigRational::from_integer(f.offset.into())
        })
    }

    /// Facets tight on every given vertex and containing every given ray.
    fn closure(&self, verts: &[usize], rays: &[usize]) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| {
                let f = &self.facets[i];
                verts.iter().all(|&v| f.is_tight(&self.vertices[v]))
                    && rays.iter().all(|&j| f.normal[j] == 0)
            })
            .collect()
    }

    fn face_from_tight(&self, tight: Vec<usize>) -> Face {
        let verts: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| tight.iter().all(|&i| self.facets[i].is_tight(&self.vertices[v])))
            .collect();
        let rays: Vec<usize> = (0..self.n)
            .filter(|&j| tight.iter().all(|&i| self.facets[i].normal[j] == 0))
            .collect();
        let v0 = &self.vertices[verts[0]];
        let mut dirs: Matrix = verts[1..]
            .iter()
            .map(|&v| {
                self.vertices[v]
                    .iter()
                    .zip(v0)
                    .map(|(a, b)| (a - b) as i128)
                    .collect()
            })
            .collect();
        for &j in &rays {
            let mut e = vec![0i128; self.n];
            e[j] = 1;
            dirs.push(e);
        }
        let dim = linalg::rank(&dirs);
        let mut with_base = dirs.clone();
        with_base.push(to_i128(v0));
        let span_contains_origin = linalg::rank(&with_base) == dim;
        let support_points = self
            .support
            .iter()
            .filter(|s| {
                let s = s.to_i64();
                tight.iter().all(|&i| self.facets[i].is_tight(&s))
            })
            .cloned()
            .collect();
        Face {
            id: 0,
            is_proper: !tight.is_empty(),
            is_compact: rays.is_empty(),
            tight,
            dim,
            codim: self.n - dim,
            vertices: verts,
            rays,
            support_points,
            span_contains_origin,
        }
    }

    fn build_faces(&mut self) {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(Vec::new());
        queue.push_back(Vec::<usize>::new());
        while let Some(tight) = queue.pop_front() {
            let face = self.face_from_tight(tight.clone());
            for i in 0..self.facets.len() {
                if tight.contains(&i) {
                    continue;
                }
                let f = &self.facets[i];
                let verts: Vec<usize> = face
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| f.is_tight(&self.vertices[v]))
                    .collect();
                if verts.is_empty() {
                    continue;
                }
                let rays: Vec<usize> =
                    face.rays.iter().copied().filter(|&j| f.normal[j] == 0).collect();
                let sub = self.closure(&verts, &rays);
                if seen.insert(sub.clone()) {
                    queue.push_back(sub);
                }
            }
        }
        let mut faces: Vec<Face> = seen.into_iter().map(|t| self.face_from_tight(t)).collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.tight.cmp(&b.tight)));
        for (id, f) in faces.iter_mut().enumerate() {
            f.id = id;
        }
        self.face_index = faces.iter().map(|f| (f.tight.clone(), f.id)).collect();
        self.faces = faces;
    }

    /// `nu(a)`, `N(a)` and `F(a)` for a non-negative weight vector.
    pub fn first_meet_locus(&self, a: &[i64]) -> LinearData {
        assert_eq!(a.len(), self.n);
        assert!(a.iter().all(|&x| x >= 0), "weights must be non-negative");
        let vals: Vec<i64> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(a).map(|(x, y)| x * y).sum())
            .collect();
        let n_min = *vals.iter().min().expect("a polyhedron has vertices");
        let verts: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == n_min).collect();
        let rays: Vec<usize> = (0..self.n).filter(|&j| a[j] == 0).collect();
        let tight = self.closure(&verts, &rays);
        LinearData {
            nu: a.iter().sum(),
            n_min,
            face: self.face_index[&tight],
        }
    }

    /// `N(a)` alone.
    pub fn n_min(&self, a: &[i64]) -> i64 {
        self.vertices
            .iter()
            .map(|v| v.iter().zip(a).map(|(x, y)| x * y).sum::<i64>())
            .min()
            .expect("a polyhedron has vertices")
    }

    /// The closed cone of weights `a >= 0` with `F(a)` containing `face`.
    pub fn normal_cone(&self, face: &Face) -> Cone {
        Cone::new(self.n, face.tight.iter().map(|&i| self.facets[i].normal.clone()).collect())
    }

    /// Whether `sub` is contained in `sup`.
    pub fn face_contains(&self, sup: &Face, sub: &Face) -> bool {
        sup.tight.iter().all(|t| sub.tight.contains(t))
    }
}

/// All facets of `conv(points) + R_{>=0}^n`, by exhaustive search over
/// hyperplanes spanned by `n` items drawn from the points and the
/// coordinate directions.
fn facet_search(n: usize, points: &[Vec<i64>]) -> Vec<Facet> {
    let m = points.len();
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    for combo in linalg::combinations(m + n, n) {
        if combo[0] >= m {
            continue;
        }
        let base = &points[combo[0]];
        let dirs: Matrix = combo[1..]
            .iter()
            .map(|&i| {
                if i < m {
                    points[i].iter().zip(base).map(|(a, b)| (a - b) as i128).collect()
                } else {
                    let mut e = vec![0i128; n];
                    e[i - m] = 1;
                    e
                }
            })
            .collect();
        let mut c = linalg::cofactor_normal(&dirs);
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        if c.iter().all(|&x| x <= 0) {
            c.iter_mut().for_each(|x| *x = -*x);
        }
        if c.iter().any(|&x| x < 0) {
            continue;
        }
        let c: Vec<i64> = linalg::primitive(&c).iter().map(|&x| x as i64).collect();
        let facet = Facet {
            offset: c.iter().zip(base).map(|(a, b)| a * b).sum(),
            normal: c,
        };
        if points.iter().all(|p| facet.eval(p) >= facet.offset) {
            found.insert(facet);
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn poly(s: &str) -> NewtonPolyhedron {
        newton_polyhedron(&parse_polynomial(s).unwrap().support()).unwrap()
    }

    fn facet(c: &[i64], b: i64) -> Facet {
        Facet {
            normal: c.to_vec(),
            offset: b,
        }
    }

    #[test]
    fn hull_examples() {
        let p = poly("x1^2+x2^3");
        assert_eq!(p.vertices(), &[vec![0, 3], vec![2, 0]]);
        let mut fs = p.facets().to_vec();
        fs.sort();
        let mut want = vec![facet(&[3, 2], 6), facet(&[1, 0], 0), facet(&[0, 1], 0)];
        want.sort();
        assert_eq!(fs, want);

        let p = poly("x1^2*x2^3");
        assert_eq!(p.vertices(), &[vec![2, 3]]);
        let mut fs = p.facets().to_vec();
        fs.sort();
        assert_eq!(fs, vec![facet(&[0, 1], 3), facet(&[1, 0], 2)]);

        let p = poly("x1^2*x2 - x1");
        assert_eq!(p.vertices(), &[vec![1, 0]]);
        let mut fs = p.facets().to_vec();
        fs.sort();
        assert_eq!(fs, vec![facet(&[0, 1], 0), facet(&[1, 0], 1)]);
    }

    #[test]
    fn rejects_degenerate_supports() {
        assert!(matches!(newton_polyhedron(&[]), Err(Error::EmptySupport)));
        let f = parse_polynomial("x1 + 1").unwrap();
        assert!(matches!(newton_polyhedron(&f.support()), Err(Error::OriginInSupport)));
    }

    #[test]
    fn face_counts() {
        let p = poly("x1^2+x2^3");
        assert_eq!(p.proper_faces().count(), 5);
        assert_eq!(p.faces().iter().filter(|f| f.dim == 0).count(), 2);
        assert_eq!(p.faces().iter().filter(|f| f.dim == 1 && f.is_compact).count(), 1);
        assert_eq!(p.faces().iter().filter(|f| f.dim == 1 && !f.is_compact).count(), 2);
        assert_eq!(poly("x1^2*x2^3").proper_faces().count(), 3);
        assert_eq!(poly("x1^2").proper_faces().count(), 1);
        for f in p.faces() {
            assert_eq!(f.dim + f.codim, 2);
            assert!(!f.support_points.is_empty());
        }
    }

    #[test]
    fn first_meet_locus_examples() {
        let p = poly("x1^2+x2^3");
        let d = p.first_meet_locus(&[1, 1]);
        assert_eq!((d.nu, d.n_min), (2, 2));
        let f = p.face(d.face);
        assert_eq!(f.dim, 0);
        assert_eq!(p.vertices()[f.vertices[0]], vec![2, 0]);

        let d = p.first_meet_locus(&[3, 2]);
        assert_eq!((d.nu, d.n_min), (5, 6));
        let f = p.face(d.face);
        assert!(f.dim == 1 && f.is_compact);

        let d = p.first_meet_locus(&[0, 0]);
        assert_eq!(d.n_min, 0);
        assert!(!p.face(d.face).is_proper);
    }

    #[test]
    fn normal_cone_examples() {
        let p = poly("x1^2+x2^3");
        let vertex = p.faces().iter().find(|f| f.dim == 0 && p.vertices()[f.vertices[0]] == vec![2, 0]).unwrap();
        let mut gens = p.normal_cone(vertex).generators().to_vec();
        gens.sort();
        assert_eq!(gens, vec![vec![0, 1], vec![3, 2]]);
        let edge = p.faces().iter().find(|f| f.dim == 1 && f.is_compact).unwrap();
        assert_eq!(p.normal_cone(edge).generators(), &[vec![3, 2]]);
        assert!(p.normal_cone(p.whole()).generators().is_empty());
    }

    #[test]
    fn span_through_origin() {
        let p = poly("x1^2+x2^3");
        let compact = p.faces().iter().find(|f| f.dim == 1 && f.is_compact).unwrap();
        assert!(!compact.span_contains_origin);
        // The unbounded edge {i1 = 0, i2 >= 3} lies on the i2-axis.
        let axis = p
            .faces()
            .iter()
            .find(|f| f.dim == 1 && f.rays == vec![1])
            .unwrap();
        assert!(axis.span_contains_origin);
    }
}
