//! Verification suites over the corpus. Every check produces a JSON detail
//! payload and a pass/fail flag; a suite passes iff all its checks do.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use super::checks::{
    describe_face, expsum_equivalence, gauss_anchor, geometry_sampling, hyperplane_sigma_rows, hyperplane_summary,
    sigma_calculus, square_closed_form, zeta_master_oracle,
};
use super::{Corpus, RunConfig};
use crate::expsum::{bound_report, ff_bound_report};
use crate::geom::newton_polyhedron;
use crate::invariants::{
    critical_dim_estimate, hyperplane_support, nondegeneracy_check, sigma_kappa, verify_witness, Mode, Verdict,
};
use crate::rational;
use crate::zeta::{dh_limit_check, igusa_zeta, DHConstants};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Bounds,
    FfBounds,
    SigmaProps,
    Dh,
    Geometry,
    Zeta,
    Nondeg,
    Corpus,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Corpus,
        Suite::SigmaProps,
        Suite::Geometry,
        Suite::Nondeg,
        Suite::Bounds,
        Suite::FfBounds,
        Suite::Zeta,
        Suite::Dh,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::FfBounds => "ff-bounds",
            Suite::SigmaProps => "sigma-props",
            Suite::Dh => "dh",
            Suite::Geometry => "geometry",
            Suite::Zeta => "zeta",
            Suite::Nondeg => "nondeg",
            Suite::Corpus => "corpus",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Serialize) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: serde_json::to_value(detail).unwrap_or(Value::Null),
    }
}

pub fn run_verify(suite: Suite, corpus: &Corpus, config: &RunConfig) -> Result<VerifyReport> {
    let list: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let mut suites = Vec::new();
    for s in list {
        suites.push(run_suite(s, corpus, config)?);
    }
    Ok(VerifyReport {
        passed: suites.iter().all(|s| s.passed),
        seed: config.seed,
        suites,
    })
}

pub fn run_suite(suite: Suite, corpus: &Corpus, config: &RunConfig) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Bounds => bounds(corpus, config)?,
        Suite::FfBounds => ff_bounds(corpus, config)?,
        Suite::SigmaProps => sigma_props(corpus, config)?,
        Suite::Dh => dh(corpus, config)?,
        Suite::Geometry => {
            let rep = geometry_sampling(config.seed, config.geometry_samples)?;
            let ok = rep.membership_failures.is_empty() && rep.index_failures.is_empty();
            vec![check("half-open decomposition sampling", ok, rep)]
        }
        Suite::Zeta => zeta(corpus, config)?,
        Suite::Nondeg => nondeg(corpus, config)?,
        Suite::Corpus => golden(corpus)?,
        Suite::All => unreachable!("expanded by run_verify"),
    };
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn golden(corpus: &Corpus) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for e in &corpus.entries {
        let f = e.polynomial()?;
        let poly = newton_polyhedron(&f.support())?;
        let inv = sigma_kappa(&poly);
        let tau0 = describe_face(&poly, poly.face(inv.tau0));
        let hyper = hyperplane_summary(&hyperplane_support(&f));
        let sigma = rational::to_string(&inv.sigma);
        let mut ok = sigma == e.sigma && inv.kappa == e.kappa && tau0 == e.tau0 && hyper == e.hyperplane;
        let mut estimate = None;
        if e.delta.is_some() || e.critical_locus_empty {
            let est = critical_dim_estimate(&f, 5, &[1, 2], u64::MAX)?;
            let want = if e.critical_locus_empty { None } else { e.delta };
            ok &= est.delta_hat == want;
            estimate = Some(est);
        }
        out.push(check(
            format!("golden values / {}", e.name),
            ok,
            json!({
                "sigma": sigma, "kappa": inv.kappa, "tau0": tau0, "hyperplane": hyper,
                "critical_dim": estimate,
            }),
        ));
    }
    Ok(out)
}

fn bounds(corpus: &Corpus, config: &RunConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for e in &corpus.entries {
        let f = e.polynomial()?;
        let rep = bound_report(&e.name, &f, &config.primes, &config.ms, config.budget, e.constants.expsum)?;
        let sane = rep.rows.iter().chain(&rep.m1_rows).all(|r| r.abs <= 1.0 + config.tolerance);
        out.push(check(
            format!("bound grid / {}", e.name),
            rep.violations == 0 && rep.c_empirical.is_finite() && sane,
            &rep,
        ));
        let rows = expsum_equivalence(&f, &config.primes, &config.ms, config.budget, config.tolerance)?;
        out.push(check(
            format!("decomposition matches brute force / {}", e.name),
            rows.iter().all(|r| r.passed),
            &rows,
        ));
    }
    let odd: Vec<u64> = config.primes.iter().copied().filter(|&p| p <= 13).collect();
    let rows = gauss_anchor(&odd, &[1, 2, 3], config.budget, config.tolerance)?;
    out.push(check("quadratic Gauss sums", rows.iter().all(|r| r.passed), &rows));
    Ok(out)
}

fn ff_bounds(corpus: &Corpus, config: &RunConfig) -> Result<Vec<Check>> {
    let fields = config.ff_fields();
    let mut out = Vec::new();
    for e in corpus.entries.iter().filter(|e| e.hyperplane != "none") {
        let f = e.polynomial()?;
        let rep = ff_bound_report(&e.name, &f, &fields, config.budget, e.constants.ff)?;
        out.push(check(
            format!("finite-field sums / {}", e.name),
            rep.violations == 0 && rep.c_empirical.is_finite(),
            &rep,
        ));
    }
    Ok(out)
}

fn sigma_props(corpus: &Corpus, config: &RunConfig) -> Result<Vec<Check>> {
    let rep = sigma_calculus(config.seed, config.sigma_samples);
    let mut out = vec![check("sum, product and merge identities", rep.failures.is_empty(), &rep)];
    for e in &corpus.entries {
        let f = e.polynomial()?;
        let rows = hyperplane_sigma_rows(&f)?;
        if !rows.is_empty() {
            out.push(check(
                format!("sigma of the s-variable restrictions / {}", e.name),
                rows.iter().all(|r| r.holds),
                &rows,
            ));
        }
        let inv = sigma_kappa(&newton_polyhedron(&f.support())?);
        out.push(check(
            format!("sigma at most n / N(1) / {}", e.name),
            inv.sigma <= inv.sigma_f1,
            json!({"sigma": rational::to_string(&inv.sigma), "sigma_f1": rational::to_string(&inv.sigma_f1)}),
        ));
        if let (true, Some(d)) = (e.nondegenerate, e.delta) {
            let bound = BigRational::new(BigInt::from(f.nvars() as i64 - d), BigInt::from(2));
            out.push(check(
                format!("sigma at most (n - delta)/2 / {}", e.name),
                inv.sigma <= bound,
                json!({"sigma": rational::to_string(&inv.sigma), "bound": rational::to_string(&bound)}),
            ));
        }
    }
    if let Some(e) = corpus.get("x2^2+x1+x1*x3^2") {
        let rows = hyperplane_sigma_rows(&e.polynomial()?)?;
        let ok = rows.iter().any(|r| r.subset.is_empty() && r.equality);
        out.push(check("restriction bound is sharp for the empty subset", ok, &rows));
    }
    Ok(out)
}

fn dh(corpus: &Corpus, config: &RunConfig) -> Result<Vec<Check>> {
    let primes = config.dh_primes();
    let mut out = Vec::new();
    for e in &corpus.entries {
        let f = e.polynomial()?;
        let stored = DHConstants {
            limit: e.constants.dh,
            torus_count: e.constants.torus_count,
            cone_limit: e.constants.cone_limit,
        };
        let rep = dh_limit_check(&e.name, &f, &primes, config.budget, stored)?;
        let sigma_lt_one = rep.sigma < BigRational::from_integer(1.into());
        let orders = rep.rows.iter().all(|r| {
            r.order_at_sigma <= r.expected_order && (!sigma_lt_one || r.order_at_sigma == r.expected_order) && r.dichotomy
        });
        let mut ok = rep.passed && orders;
        if e.poly == "x1^2" {
            ok &= rep
                .rows
                .iter()
                .all(|r| (r.ratio - (1.0 - 1.0 / r.p as f64) / 2.0).abs() <= config.tolerance && r.ratio < 0.5);
        }
        out.push(check(format!("leading coefficient at -sigma / {}", e.name), ok, &rep));
    }
    Ok(out)
}

fn zeta(corpus: &Corpus, config: &RunConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for e in &corpus.entries {
        let f = e.polynomial()?;
        let rows = zeta_master_oracle(&f, &config.zeta_primes, config.budget)?;
        out.push(check(
            format!("series of the explicit formula equals residue counts / {}", e.name),
            rows.iter().all(|r| r.matches),
            &rows,
        ));
        let mut sums = Vec::new();
        for &p in &config.zeta_primes {
            match igusa_zeta(&f, p, config.budget) {
                Ok(z) => sums.push(json!({"p": p, "collapsed_equals_term_sum": z.term_sum() == z.z})),
                Err(Error::NotCertified { .. }) => {}
                Err(err) => return Err(err),
            }
        }
        let ok = sums.iter().all(|v| v["collapsed_equals_term_sum"] == json!(true));
        out.push(check(format!("collapsed terms equal the canonical form / {}", e.name), ok, &sums));
    }
    let rows = square_closed_form(&[3, 5, 7, 13], config.budget, 1e-10)?;
    out.push(check("closed form for x1^2", rows.iter().all(|r| r.passed), &rows));
    Ok(out)
}

fn nondeg(corpus: &Corpus, config: &RunConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for e in &corpus.entries {
        let f = e.polynomial()?;
        let poly = newton_polyhedron(&f.support())?;
        let mut rows = Vec::new();
        let mut ok = true;
        for &p in &config.primes {
            let cert = nondegeneracy_check(&f, &poly, p, Mode::Strong, Some(config.k_max), config.budget)?;
            let witnesses_ok = verify_witness(&cert);
            ok &= witnesses_ok;
            if !e.nondegenerate && p > 2 {
                ok &= cert.verdict == Verdict::Degenerate;
            }
            rows.push(json!({"p": p, "verdict": cert.verdict, "witnesses_verified": witnesses_ok, "certificate": cert}));
        }
        out.push(check(format!("non-degeneracy certificates / {}", e.name), ok, &rows));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain(std::iter::once(&Suite::All)) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn golden_values_match() {
        let rep = run_suite(Suite::Corpus, &Corpus::builtin(), &RunConfig::default()).unwrap();
        let bad: Vec<_> = rep.checks.iter().filter(|c| !c.passed).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
