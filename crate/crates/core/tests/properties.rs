use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use newton_sums::expsum::cone_generating_function;
use newton_sums::invariants::sigma_of_polynomial;
use newton_sums::poly::{parse_polynomial, parse_polynomial_in};
use newton_sums::zeta::RationalFunctionT;
use newton_sums::{IntPolynomial, NewtonPolyhedron};

fn poly_strategy(nvars: usize) -> impl Strategy<Value = IntPolynomial> {
    let term = (prop::collection::vec(0u32..=3, nvars), prop_oneof![-3i64..=-1, 1i64..=3]);
    prop::collection::vec(term, 1..=3)
        .prop_filter("a term must vanish at the origin", |ts| {
            ts.iter().all(|(e, _)| e.iter().any(|&x| x > 0))
        })
        .prop_map(move |ts| IntPolynomial::from_terms(nvars, ts))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn two_polys() -> impl Strategy<Value = (IntPolynomial, IntPolynomial)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| (poly_strategy(a), poly_strategy(b)))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

/// Rational functions whose denominator does not vanish at 0.
fn ratfun() -> impl Strategy<Value = RationalFunctionT> {
    (
        prop::collection::vec(small_rational(), 0..4),
        (1i64..=4, prop::collection::vec(small_rational(), 0..3)),
    )
        .prop_map(|(num, (d0, rest))| {
            let mut den = vec![ratio(d0, 1)];
            den.extend(rest);
            RationalFunctionT::new(num, den).unwrap()
        })
}

fn convolve(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    (0..a.len())
        .map(|k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sigma_adds_over_disjoint_sums((f, g) in two_polys()) {
        let s = sigma_of_polynomial;
        prop_assert_eq!(s(&f.disjoint_sum(&g)), s(&f) + s(&g));
    }

    #[test]
    fn sigma_of_disjoint_product_is_the_minimum((f, g) in two_polys()) {
        let s = sigma_of_polynomial;
        prop_assert_eq!(s(&f.disjoint_product(&g)), s(&f).min(s(&g)));
    }

    #[test]
    fn merging_variables_does_not_raise_sigma(f in poly_strategy(3)) {
        let merged = f.merge_last_two_vars();
        prop_assume!(!merged.is_zero());
        prop_assert!(sigma_of_polynomial(&merged) <= sigma_of_polynomial(&f));
    }

    #[test]
    fn polynomial_text_round_trips(f in poly_strategy(3)) {
        let back = parse_polynomial_in(&f.to_string(), 3).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn series_is_a_ring_homomorphism(a in ratfun(), b in ratfun()) {
        let v = 6;
        let sa = a.series_expand(v).unwrap();
        let sb = b.series_expand(v).unwrap();
        let sum: Vec<BigRational> = sa.iter().zip(&sb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(a.add(&b).series_expand(v).unwrap(), sum);
        prop_assert_eq!(a.mul(&b).series_expand(v).unwrap(), convolve(&sa, &sb));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in ratfun(), b in ratfun(), t in small_rational()) {
        if let (Ok(x), Ok(y)) = (a.evaluate(&t), b.evaluate(&t)) {
            prop_assert_eq!(a.add(&b).evaluate(&t).unwrap(), &x + &y);
            prop_assert_eq!(a.mul(&b).evaluate(&t).unwrap(), &x * &y);
        }
    }

    #[test]
    fn rational_functions_round_trip_through_json(a in ratfun()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: RationalFunctionT = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}

/// Monomials `x^nu u^N` with `nu <= v_max` of the cone pieces, expanded
/// exactly as power series.
fn cone_monomials(poly: &NewtonPolyhedron, face: usize, v_max: i64) -> BTreeMap<(i64, i64), u64> {
    let g = cone_generating_function(poly, poly.face(face), 2).unwrap();
    let mut total = BTreeMap::new();
    for piece in &g.pieces {
        let mut s: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        for &m in &piece.numerator {
            if m.0 <= v_max {
                *s.entry(m).or_default() += 1;
            }
        }
        for &(nu, n) in &piece.denominator {
            assert!(nu >= 1);
            let mut next = BTreeMap::new();
            for (&(a, b), &c) in &s {
                let mut k = 0;
                while a + k * nu <= v_max {
                    *next.entry((a + k * nu, b + k * n)).or_default() += c;
                    k += 1;
                }
            }
            s = next;
        }
        for (k, c) in s {
            *total.entry(k).or_default() += c;
        }
    }
    total
}

fn lattice_monomials(poly: &NewtonPolyhedron, face: usize, v_max: i64) -> BTreeMap<(i64, i64), u64> {
    let n = poly.dim();
    let mut out = BTreeMap::new();
    let mut a = vec![0i64; n];
    loop {
        if a.iter().sum::<i64>() <= v_max {
            let data = poly.first_meet_locus(&a);
            if data.face == face {
                *out.entry((data.nu, data.n_min)).or_default() += 1;
            }
        }
        let mut j = 0;
        while j < n {
            a[j] += 1;
            if a[j] <= v_max {
                break;
            }
            a[j] = 0;
            j += 1;
        }
        if j == n {
            return out;
        }
    }
}

#[test]
fn cone_generating_functions_match_lattice_enumeration() {
    for text in ["x1^2+x2^3", "x1*x2", "x1^2*x2^3", "x1^2+x2^3+x3^2", "x2^2+x1+x1*x3^2", "x1^3+x1*x2^2+x3^4"] {
        let f = parse_polynomial(text).unwrap();
        let poly = NewtonPolyhedron::new(&f.support()).unwrap();
        for face in poly.faces() {
            let expected = lattice_monomials(&poly, face.id, 12);
            assert!(!expected.is_empty(), "{text}, face {} has no small lattice points", face.id);
            assert_eq!(
                cone_monomials(&poly, face.id, 12),
                expected,
                "{text}, face {}",
                face.id
            );
        }
    }
}

#[test]
fn cone_series_counts_weighted_lattice_points() {
    // With every generator of positive weight, G(u) truncated at u^8 is
    // the exact sum of p^{-nu(a)} over points with N(a) <= 8 and nu(a) <= 40;
    // the omitted tail is below p^{-40} per point.
    let f = parse_polynomial("x1^2+x2^3").unwrap();
    let poly = NewtonPolyhedron::new(&f.support()).unwrap();
    let p = 5u64;
    for face in poly.faces() {
        let g = cone_generating_function(&poly, face, p).unwrap();
        let series = g.series(8);
        let mut direct = vec![0.0f64; 9];
        for a1 in 0..=40i64 {
            for a2 in 0..=40 - a1 {
                let data = poly.first_meet_locus(&[a1, a2]);
                if data.face == face.id && data.n_min <= 8 {
                    direct[data.n_min as usize] += (p as f64).powi(-(data.nu as i32));
                }
            }
        }
        for (k, c) in series.iter().enumerate() {
            let exact = newton_sums::rational::to_f64(c);
            assert!((exact - direct[k]).abs() <= 1e-12, "face {} coefficient {k}: {exact} vs {}", face.id, direct[k]);
        }
    }
}

#[test]
fn run_config_round_trips_through_toml() {
    let config = newton_sums::harness::RunConfig::default();
    let text = toml::to_string(&config).unwrap();
    let back = newton_sums::harness::RunConfig::parse(&text).unwrap();
    assert_eq!(serde_json::to_value(&back).unwrap(), serde_json::to_value(&config).unwrap());
}

#[test]
fn corpus_round_trips_through_toml() {
    let corpus = newton_sums::harness::Corpus::builtin();
    let text = toml::to_string(&corpus).unwrap();
    let back = newton_sums::harness::Corpus::parse(&text).unwrap();
    assert_eq!(serde_json::to_value(&back).unwrap(), serde_json::to_value(&corpus).unwrap());
}
