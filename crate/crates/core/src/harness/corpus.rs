//! The polynomial corpus with golden values and calibrated constants.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::poly::{parse_polynomial, IntPolynomial};
use crate::{Error, Result};

const BUILTIN: &str = include_str!("../../data/corpus.toml");

/// Upper bounds produced by a calibration run, with margin.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Constants {
    /// `|S_f(p,m)| p^{sigma m} m^{1-kappa}`.
    pub expsum: Option<f64>,
    /// `|(q-1)^{-n} sum psi(f)| q^sigma` over the torus.
    pub ff: Option<f64>,
    /// `|lim (p^{s+sigma}-1)^E Z(s)| p^{max(1,sigma)-1}`.
    pub dh: Option<f64>,
    pub torus_count: Option<f64>,
    pub cone_limit: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub poly: String,
    pub sigma: String,
    pub kappa: usize,
    pub tau0: String,
    /// Dimension of the critical locus; absent when unknown.
    pub delta: Option<i64>,
    /// The critical locus is empty.
    #[serde(default)]
    pub critical_locus_empty: bool,
    /// Non-degenerate over the complex numbers for every face.
    pub nondegenerate: bool,
    /// `"c=(..) b=.."` or `"none"`.
    pub hyperplane: String,
    /// How each golden value was obtained.
    #[serde(default)]
    pub source: BTreeMap<String, String>,
    #[serde(default)]
    pub constants: Constants,
}

impl CorpusEntry {
    pub fn polynomial(&self) -> Result<IntPolynomial> {
        parse_polynomial(&self.poly)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Corpus {
    pub version: u32,
    #[serde(rename = "entry")]
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn builtin() -> Corpus {
        Corpus::parse(BUILTIN).expect("bundled corpus parses")
    }

    pub fn parse(text: &str) -> Result<Corpus> {
        let c: Corpus = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        for e in &c.entries {
            e.polynomial()?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Corpus> {
        Corpus::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name || e.poly == name)
    }
}
