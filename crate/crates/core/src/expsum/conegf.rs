use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::geom::{triangulate_half_open, Face, NewtonPolyhedron};
use crate::rational::pow_rat;
use crate::Result;

/// One half-open simplicial piece of a normal cone, as the rational
/// function `sum_h p^{-nu(h)} u^{N(h)} / prod_g (1 - p^{-nu(g)} u^{N(g)})`.
#[derive(Clone, Debug, Serialize)]
pub struct ConePiece {
    pub generators: Vec<Vec<i64>>,
    pub open: Vec<bool>,
    /// `(nu(h), N(h))` over the parallelepiped points `h`.
    pub numerator: Vec<(i64, i64)>,
    /// `(nu(g), N(g))` over the generators `g`.
    pub denominator: Vec<(i64, i64)>,
}

/// `G_tau(u) = sum_{a : F(a) = tau} p^{-nu(a)} u^{N(a)}`.
#[derive(Clone, Debug, Serialize)]
pub struct ConeGF {
    pub p: u64,
    pub face: usize,
    pub pieces: Vec<ConePiece>,
}

/// Lattice data of the cone `{a : F(a) = tau}` assembled from its half-open
/// decomposition; `N` is linear on the cone and equals `a . v` for any
/// vertex `v` of `tau`.
pub fn cone_generating_function(poly: &NewtonPolyhedron, face: &Face, p: u64) -> Result<ConeGF> {
    if !face.is_proper {
        return Ok(ConeGF {
            p,
            face: face.id,
            pieces: vec![ConePiece {
                generators: Vec::new(),
                open: Vec::new(),
                numerator: vec![(0, 0)],
                denominator: Vec::new(),
            }],
        });
    }
    let v0 = &poly.vertices()[face.vertices[0]];
    let data = |a: &[i64]| -> (i64, i64) {
        (a.iter().sum(), a.iter().zip(v0).map(|(x, y)| x * y).sum())
    };
    let cone = poly.normal_cone(face);
    let pieces = triangulate_half_open(&cone)?
        .into_iter()
        .map(|s| ConePiece {
            numerator: s.parallelepiped_points().iter().map(|h| data(h)).collect(),
            denominator: s.generators().iter().map(|g| data(g)).collect(),
            generators: s.generators().to_vec(),
            open: s.open_mask().to_vec(),
        })
        .collect();
    Ok(ConeGF {
        p,
        face: face.id,
        pieces,
    })
}

impl ConeGF {
    pub fn with_prime(&self, p: u64) -> ConeGF {
        ConeGF {
            p,
            ..self.clone()
        }
    }

    fn q(&self, nu: i64) -> BigRational {
        pow_rat(self.p, -nu)
    }

    /// Coefficients of `u^0, ..., u^v_max`.
    pub fn series(&self, v_max: usize) -> Vec<BigRational> {
        let mut total = vec![BigRational::zero(); v_max + 1];
        for piece in &self.pieces {
            let mut s = vec![BigRational::zero(); v_max + 1];
            for &(nu, e) in &piece.numerator {
                if (e as usize) <= v_max {
                    s[e as usize] += self.q(nu);
                }
            }
            for &(nu, e) in &piece.denominator {
                let q = self.q(nu);
                if e == 0 {
                    let f = (BigRational::one() - q).recip();
                    s.iter_mut().for_each(|c| *c = &*c * &f);
                } else {
                    let e = e as usize;
                    for k in e..=v_max {
                        let add = &s[k - e] * &q;
                        s[k] += add;
                    }
                }
            }
            for (t, c) in total.iter_mut().zip(s) {
                *t += c;
            }
        }
        total
    }

    /// `G(1)`, finite because every `nu(g) >= 1`.
    pub fn at_one(&self) -> BigRational {
        let mut total = BigRational::zero();
        for piece in &self.pieces {
            let num: BigRational = piece.numerator.iter().map(|&(nu, _)| self.q(nu)).sum();
            let den: BigRational = piece
                .denominator
                .iter()
                .map(|&(nu, _)| BigRational::one() - self.q(nu))
                .product();
            total += num / den;
        }
        total
    }
}

/// `A = sum_{N(a) >= m} p^{-nu(a)}` and `B = sum_{N(a) = m-1} p^{-nu(a)}`.
pub fn a_b_tau(g: &ConeGF, m: u32) -> (BigRational, BigRational) {
    assert!(m >= 1);
    let coeffs = g.series(m as usize - 1);
    let head: BigRational = coeffs.iter().cloned().sum();
    (g.at_one() - head, coeffs[m as usize - 1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::newton_polyhedron;
    use crate::poly::parse_polynomial;
    use crate::rational::rat;

    fn setup(s: &str) -> NewtonPolyhedron {
        newton_polyhedron(&parse_polynomial(s).unwrap().support()).unwrap()
    }

    #[test]
    fn one_variable_vertex() {
        let p = setup("x1^2");
        let v = p.proper_faces().next().unwrap();
        let g = cone_generating_function(&p, v, 5).unwrap();
        // (u^2/5) / (1 - u^2/5)
        assert_eq!(g.series(4), vec![rat(0, 1), rat(0, 1), rat(1, 5), rat(0, 1), rat(1, 25)]);
        assert_eq!(g.at_one(), rat(1, 4));
        assert_eq!(a_b_tau(&g, 2), (rat(1, 4), rat(0, 1)));
        assert_eq!(a_b_tau(&g, 1), (rat(1, 4), rat(0, 1)));
    }

    #[test]
    fn whole_polyhedron_is_constant_one() {
        let p = setup("x1^2+x2^3");
        let g = cone_generating_function(&p, p.whole(), 7).unwrap();
        assert_eq!(g.series(3), vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(a_b_tau(&g, 2), (rat(0, 1), rat(0, 1)));
    }

    #[test]
    fn cusp_vertex() {
        let p = setup("x1^2+x2^3");
        let v = p
            .faces()
            .iter()
            .find(|f| f.dim == 0 && p.vertices()[f.vertices[0]] == vec![2, 0])
            .unwrap();
        let g = cone_generating_function(&p, v, 5).unwrap();
        assert_eq!(g.pieces.len(), 1);
        let mut num = g.pieces[0].numerator.clone();
        num.sort();
        assert_eq!(num, vec![(2, 2), (4, 4), (6, 6)]);
        let mut den = g.pieces[0].denominator.clone();
        den.sort();
        assert_eq!(den, vec![(1, 0), (5, 6)]);
    }
}
