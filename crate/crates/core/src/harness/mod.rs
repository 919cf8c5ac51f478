//! Corpus, run configuration and the verification suites behind the CLI.

pub mod checks;
mod config;
mod corpus;

pub use config::RunConfig;
pub use corpus::{Constants, Corpus, CorpusEntry};
mod suites;

pub use suites::{run_suite, run_verify, Check, Suite, SuiteReport, VerifyReport};
