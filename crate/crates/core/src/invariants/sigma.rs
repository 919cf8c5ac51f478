use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::geom::{newton_polyhedron, Face, NewtonPolyhedron};
use crate::poly::IntPolynomial;
use crate::rational;

/// `sigma`, `kappa` and the face `tau_0` met by the diagonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaInvariants {
    /// Smallest `t` with `(t, ..., t)` in the polyhedron.
    #[serde(with = "rational::as_string")]
    pub t0: BigRational,
    #[serde(with = "rational::as_string")]
    pub sigma: BigRational,
    pub tau0: usize,
    pub kappa: usize,
    /// `nu(1) / N(1)`, the value of `sigma` read from the first meet locus of
    /// the all-ones vector.
    #[serde(with = "rational::as_string")]
    pub sigma_f1: BigRational,
    pub agrees: bool,
    /// `min(1, sigma)`.
    #[serde(with = "rational::as_string")]
    pub lct: BigRational,
}

impl SigmaInvariants {
    pub fn sigma_f64(&self) -> f64 {
        rational::to_f64(&self.sigma)
    }
}

pub fn sigma_kappa(p: &NewtonPolyhedron) -> SigmaInvariants {
    let n = p.dim();
    let mut t0 = BigRational::zero();
    let mut ratios = Vec::with_capacity(p.facets().len());
    for f in p.facets() {
        let s: i64 = f.normal.iter().sum();
        let r = BigRational::new(BigInt::from(f.offset), BigInt::from(s));
        if r > t0 {
            t0 = r.clone();
        }
        ratios.push(r);
    }
    assert!(t0 > BigRational::zero(), "the origin lies outside a Newton polyhedron at the origin");
    let tight: Vec<usize> = (0..ratios.len()).filter(|&i| ratios[i] == t0).collect();
    let tau0 = p.face_by_tight(&tight).expect("diagonal face is a face");
    let sigma = t0.recip();
    let ones = vec![1i64; n];
    let n1 = p.n_min(&ones);
    let sigma_f1 = BigRational::new(BigInt::from(n as i64), BigInt::from(n1));
    let lct = if sigma > BigRational::one() {
        BigRational::one()
    } else {
        sigma.clone()
    };
    SigmaInvariants {
        agrees: sigma == sigma_f1,
        t0,
        sigma,
        tau0: tau0.id,
        kappa: tau0.codim,
        sigma_f1,
        lct,
    }
}

/// `sigma(f)`, with `sigma(0) = 0`.
pub fn sigma_of_polynomial(f: &IntPolynomial) -> BigRational {
    if f.is_zero() {
        return BigRational::zero();
    }
    let p = newton_polyhedron(&f.support()).expect("f vanishes at the origin");
    sigma_kappa(&p).sigma
}

/// The terms of `f` whose exponents lie on `face`.
pub fn face_polynomial(f: &IntPolynomial, face: &Face) -> IntPolynomial {
    f.filter_terms(|e| face.support_points.contains(e))
}

/// `sigma` of the polyhedron `face + R_{>=0}^n`.
pub fn sigma_of_face(face: &Face) -> BigRational {
    let p = newton_polyhedron(&face.support_points).expect("faces carry support points");
    sigma_kappa(&p).sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::rational::rat;

    fn inv(s: &str) -> (NewtonPolyhedron, SigmaInvariants) {
        let p = newton_polyhedron(&parse_polynomial(s).unwrap().support()).unwrap();
        let i = sigma_kappa(&p);
        (p, i)
    }

    #[test]
    fn cusp() {
        let (p, i) = inv("x1^2+x2^3");
        assert_eq!(i.t0, rat(6, 5));
        assert_eq!(i.sigma, rat(5, 6));
        assert_eq!(i.kappa, 1);
        let tau0 = p.face(i.tau0);
        assert!(tau0.is_compact && tau0.dim == 1);
        // N(1,1) = 2 is attained at the vertex (2,0) only.
        assert_eq!(i.sigma_f1, rat(1, 1));
        assert!(!i.agrees);
        assert_eq!(i.lct, rat(5, 6));
    }

    #[test]
    fn node() {
        let (p, i) = inv("x1*x2");
        assert_eq!(i.t0, rat(1, 1));
        assert_eq!(i.sigma, rat(1, 1));
        assert_eq!(i.kappa, 2);
        assert_eq!(p.face(i.tau0).dim, 0);
        assert!(i.agrees);
    }

    #[test]
    fn monomial_with_distinct_exponents() {
        let (p, i) = inv("x1^2*x2^3");
        assert_eq!(i.t0, rat(3, 1));
        assert_eq!(i.sigma, rat(1, 3));
        assert_eq!(i.kappa, 1);
        let tau0 = p.face(i.tau0);
        assert_eq!(tau0.dim, 1);
        assert!(!tau0.is_compact);
        assert_eq!(p.facets()[tau0.tight[0]].normal, vec![0, 1]);
        assert_eq!(i.sigma_f1, rat(2, 5));
        assert!(!i.agrees);
    }

    #[test]
    fn face_polynomials() {
        let f = parse_polynomial("x1^2+x1*x2+x2^3").unwrap();
        let p = newton_polyhedron(&f.support()).unwrap();
        let compact: Vec<_> = p.faces().iter().filter(|t| t.dim == 1 && t.is_compact).collect();
        assert_eq!(compact.len(), 2);
        let polys: Vec<String> = compact.iter().map(|t| face_polynomial(&f, t).to_string()).collect();
        assert!(polys.contains(&"x1^2 + x1*x2".to_string()), "{polys:?}");

        let g = parse_polynomial("x1^2+x2^3").unwrap();
        let p = newton_polyhedron(&g.support()).unwrap();
        let edge = p.faces().iter().find(|t| t.dim == 1 && t.is_compact).unwrap();
        assert_eq!(face_polynomial(&g, edge), g);
        let v = p.faces().iter().find(|t| t.dim == 0 && p.vertices()[t.vertices[0]] == vec![2, 0]).unwrap();
        assert_eq!(face_polynomial(&g, v).to_string(), "x1^2");
    }

    #[test]
    fn sigma_of_faces() {
        let g = parse_polynomial("x1^2+x2^3").unwrap();
        let p = newton_polyhedron(&g.support()).unwrap();
        let i = sigma_kappa(&p);
        for t in p.faces().iter().filter(|t| t.dim == 0) {
            let want = if p.vertices()[t.vertices[0]] == vec![2, 0] { rat(1, 2) } else { rat(1, 3) };
            assert_eq!(sigma_of_face(t), want);
        }
        assert_eq!(sigma_of_face(p.face(i.tau0)), i.sigma);
        assert_eq!(sigma_of_polynomial(&IntPolynomial::zero(2)), rat(0, 1));
    }
}
