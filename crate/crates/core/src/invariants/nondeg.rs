use serde::{Deserialize, Serialize};

use super::sigma::face_polynomial;
use crate::field::{self, FFPolynomial, LogEvaluator};
use crate::geom::NewtonPolyhedron;
use crate::poly::IntPolynomial;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// No face polynomial has a critical point on the torus.
    Strong,
    /// No face polynomial has a singular zero on the torus.
    Weak,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "strong" => Ok(Mode::Strong),
            "weak" => Ok(Mode::Weak),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FaceVerdict {
    /// No witness exists over `F_{p^k}` for `k <= k_max`.
    NondegenerateUpToK { k_max: u32 },
    /// A torus point of `F_{p^k}^n` (elements in the power basis of the
    /// field's defining polynomial, base-`p` digits) where the equations
    /// hold.
    Degenerate {
        point: Vec<u32>,
        field_degree: u32,
        field_modulus: Vec<u32>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceCheck {
    pub face: usize,
    pub face_polynomial: IntPolynomial,
    #[serde(flatten)]
    pub verdict: FaceVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NondegenerateUpToK,
    Degenerate,
    /// Some coefficient vanishes mod `p`, so the polyhedron changes.
    SupportChanged,
}

#[derive(Clone, Debug, Serialize)]
pub struct NondegCertificate {
    pub mode: Mode,
    pub p: u64,
    pub k_max: u32,
    pub support_changed: bool,
    pub faces: Vec<FaceCheck>,
    pub verdict: Verdict,
}

impl NondegCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::NondegenerateUpToK
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &FaceCheck> {
        self.faces
            .iter()
            .filter(|f| matches!(f.verdict, FaceVerdict::Degenerate { .. }))
    }
}

fn search_cost(p: u64, n: usize, k_max: u32) -> u128 {
    (1..=k_max)
        .map(|k| field::torus_size(p.pow(k), n))
        .sum()
}

/// Largest `k <= 3` whose cumulative torus search fits in `budget`.
pub fn default_k_max(p: u64, n: usize, budget: u64) -> Result<u32> {
    let mut best = 0;
    for k in 1..=3u32 {
        let q = (p as u128).pow(k);
        if q > 1 << 24 {
            break;
        }
        if search_cost(p, n, k) <= budget as u128 {
            best = k;
        }
    }
    if best == 0 {
        return Err(Error::budget(search_cost(p, n, 1), budget));
    }
    Ok(best)
}

/// Exhaustive search for critical points (strong) or singular zeros (weak)
/// of every face polynomial, `Delta_0` included, over the tori of
/// `F_{p^k}` for `k = 1..=k_max`. Witnesses are the lexicographically
/// smallest points found.
pub fn nondegeneracy_check(
    f: &IntPolynomial,
    poly: &NewtonPolyhedron,
    p: u64,
    mode: Mode,
    k_max: Option<u32>,
    budget: u64,
) -> Result<NondegCertificate> {
    let n = f.nvars();
    let k_max = match k_max {
        Some(k) => {
            let cost = search_cost(p, n, k);
            if cost > budget as u128 {
                return Err(Error::budget(cost, budget));
            }
            k
        }
        None => default_k_max(p, n, budget)?,
    };
    let reduced = FFPolynomial::reduce(f, p, 1)?;
    if reduced.support_changed() {
        return Ok(NondegCertificate {
            mode,
            p,
            k_max,
            support_changed: true,
            faces: Vec::new(),
            verdict: Verdict::SupportChanged,
        });
    }
    let mut faces = Vec::with_capacity(poly.faces().len());
    for face in poly.faces() {
        let ft = face_polynomial(f, face);
        let mut verdict = FaceVerdict::NondegenerateUpToK { k_max };
        for k in 1..=k_max {
            if let Some(point) = find_witness(&ft, p, k, mode)? {
                verdict = FaceVerdict::Degenerate {
                    point,
                    field_degree: k,
                    field_modulus: field::GaloisField::get(p, k)?.modulus().to_vec(),
                };
                break;
            }
        }
        faces.push(FaceCheck {
            face: face.id,
            face_polynomial: ft,
            verdict,
        });
    }
    let degenerate = faces
        .iter()
        .any(|c| matches!(c.verdict, FaceVerdict::Degenerate { .. }));
    Ok(NondegCertificate {
        mode,
        p,
        k_max,
        support_changed: false,
        faces,
        verdict: if degenerate {
            Verdict::Degenerate
        } else {
            Verdict::NondegenerateUpToK
        },
    })
}

fn find_witness(ft: &IntPolynomial, p: u64, k: u32, mode: Mode) -> Result<Option<Vec<u32>>> {
    let fb = FFPolynomial::reduce(ft, p, k)?;
    let grads: Vec<LogEvaluator> = fb.gradient().iter().map(LogEvaluator::new).collect();
    let value = LogEvaluator::new(&fb);
    let weak = mode == Mode::Weak;
    Ok(field::torus_find_first(fb.field(), ft.nvars(), |logs| {
        grads.iter().all(|g| g.eval_logs(logs) == 0) && (!weak || value.eval_logs(logs) == 0)
    }))
}

/// Re-evaluates every degeneracy witness by direct field arithmetic.
pub fn verify_witness(cert: &NondegCertificate) -> bool {
    cert.faces.iter().all(|c| match &c.verdict {
        FaceVerdict::NondegenerateUpToK { .. } => true,
        FaceVerdict::Degenerate {
            point,
            field_degree,
            ..
        } => {
            let Ok(fb) = FFPolynomial::reduce(&c.face_polynomial, cert.p, *field_degree) else {
                return false;
            };
            point.iter().all(|&x| x != 0)
                && fb.gradient().iter().all(|g| g.eval(point) == 0)
                && (cert.mode == Mode::Strong || fb.eval(point) == 0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::newton_polyhedron;
    use crate::poly::parse_polynomial;

    fn check(s: &str, p: u64, mode: Mode, k: u32) -> NondegCertificate {
        let f = parse_polynomial(s).unwrap();
        let poly = newton_polyhedron(&f.support()).unwrap();
        nondegeneracy_check(&f, &poly, p, mode, Some(k), 100_000_000).unwrap()
    }

    #[test]
    fn cusp_is_nondegenerate() {
        let c = check("x1^2+x2^3", 5, Mode::Strong, 2);
        assert!(c.is_certified());
        assert_eq!(c.faces.len(), 6);
    }

    #[test]
    fn square_of_linear_form_is_degenerate() {
        let c = check("(x1+x2)^2", 5, Mode::Strong, 2);
        assert_eq!(c.verdict, Verdict::Degenerate);
        assert!(verify_witness(&c));
        let w: Vec<_> = c.witnesses().collect();
        assert!(w.iter().any(|fc| fc.verdict
            == FaceVerdict::Degenerate {
                point: vec![1, 4],
                field_degree: 1,
                field_modulus: vec![0]
            }));
    }

    #[test]
    fn monomial_nondegenerate_away_from_exponents() {
        for p in [5, 7, 11] {
            assert!(check("x1^2*x2^3", p, Mode::Strong, 2).is_certified());
        }
        // Over F_3 only the derivative in x2 vanishes identically.
        assert!(check("x1^2*x2^3", 3, Mode::Strong, 1).is_certified());
        assert_eq!(check("x1^3*x2^3", 3, Mode::Strong, 1).verdict, Verdict::Degenerate);
    }

    #[test]
    fn weak_mode_needs_a_zero() {
        // f' = x(2 + 3x) vanishes at x = -2/3 where f = 4/27 is non-zero.
        let strong = check("x1^2 + x1^3", 7, Mode::Strong, 1);
        let weak = check("x1^2 + x1^3", 7, Mode::Weak, 1);
        assert_eq!(strong.verdict, Verdict::Degenerate);
        assert!(verify_witness(&strong));
        assert!(weak.is_certified());
    }

    #[test]
    fn support_change_is_reported() {
        let c = check("7*x1 + x2^2", 7, Mode::Strong, 1);
        assert_eq!(c.verdict, Verdict::SupportChanged);
    }

    #[test]
    fn default_depth_respects_budget() {
        assert_eq!(default_k_max(5, 2, 100_000_000).unwrap(), 3);
        assert_eq!(default_k_max(13, 3, 100_000_000).unwrap(), 2);
        assert!(default_k_max(101, 5, 1000).is_err());
    }
}
