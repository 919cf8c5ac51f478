//! Run configuration, read from a flat TOML document.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Primes for the exponential-sum grid and non-degeneracy checks.
    pub primes: Vec<u64>,
    /// Exponents `m` for the exponential-sum grid.
    pub ms: Vec<u32>,
    /// Primes for the zeta oracle comparison.
    pub zeta_primes: Vec<u64>,
    /// Largest prime for the leading-coefficient check.
    pub dh_max_prime: u64,
    /// Largest field size `q = p^k` for the finite-field sums.
    pub ff_max_q: u64,
    /// Largest extension degree searched for non-degeneracy witnesses.
    pub k_max: u32,
    /// Work budget (points evaluated) for each brute-force computation.
    pub budget: u64,
    pub tolerance: f64,
    pub seed: u64,
    /// Random support pairs for the sigma identities.
    pub sigma_samples: usize,
    /// Sampled lattice points per cone in the geometry check.
    pub geometry_samples: usize,
    pub corpus: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            primes: vec![2, 3, 5, 7, 11, 13],
            ms: vec![1, 2, 3, 4],
            zeta_primes: vec![5, 7, 11, 13],
            dh_max_prime: 97,
            ff_max_q: 169,
            k_max: 2,
            budget: 100_000_000,
            tolerance: 1e-9,
            seed: 42,
            sigma_samples: 200,
            geometry_samples: 10_000,
            corpus: None,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        RunConfig::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        if self.primes.iter().chain(&self.zeta_primes).any(|&p| !crate::field::is_prime(p)) {
            return Err(Error::Config("prime lists may only contain primes".into()));
        }
        if self.ms.contains(&0) {
            return Err(Error::Config("m must be at least 1".into()));
        }
        Ok(())
    }

    pub fn dh_primes(&self) -> Vec<u64> {
        (2..=self.dh_max_prime).filter(|&p| crate::field::is_prime(p)).collect()
    }

    /// `(p, k)` with `p^k <= ff_max_q`, ordered by `q`.
    pub fn ff_fields(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for p in (2..=self.ff_max_q).filter(|&p| crate::field::is_prime(p)) {
            let mut q = p;
            let mut k = 1;
            while q <= self.ff_max_q && k <= crate::field::MAX_DEGREE {
                out.push((p, k));
                q *= p;
                k += 1;
            }
        }
        out.sort_by_key(|&(p, k)| (p.pow(k), p));
        out
    }
}
