//! Named verification checks and the harness that replays them.
//!
//! Every check re-derives a classification statement from scratch at desk
//! scale (exhaustive enumeration where the guards allow, seeded sampling
//! beyond) and reports pass/fail with a minimal counterexample datum on
//! failure. The `verify` CLI command drives [`run_all`] / [`run_check`].

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2::GF2Vec;

mod checks;
pub use checks::*;

/// Outcome of one named check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
    pub counterexample: Option<String>,
}

impl CheckReport {
    #[must_use]
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            details: Vec::new(),
            counterexample: None,
        }
    }

    pub fn detail(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    /// Records a failed condition; the first failure keeps its datum.
    pub fn require(&mut self, cond: bool, counterexample: impl FnOnce() -> String) {
        if !cond && self.passed {
            self.passed = false;
            self.counterexample = Some(counterexample());
        }
    }

    /// Folds an error into the report as a failure, passing values through.
    pub fn require_ok<T>(
        &mut self,
        value: std::result::Result<T, Error>,
        context: &str,
    ) -> Option<T> {
        match value {
            Ok(v) => Some(v),
            Err(e) => {
                self.require(false, || format!("{context}: {e}"));
                None
            }
        }
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "counterexample": self.counterexample,
        })
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "check {}: {}",
            self.name,
            if self.passed { "ok" } else { "FAILED" }
        )?;
        for d in &self.details {
            writeln!(f, "  {d}")?;
        }
        if let Some(ce) = &self.counterexample {
            writeln!(f, "  counterexample: {ce}")?;
        }
        Ok(())
    }
}

/// Options narrowing a verification run.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Cap on the genus ranges of every check.
    pub max_g: usize,
    /// Restrict to a single genus where the check supports it.
    pub g: Option<usize>,
    /// Explicit linear-section parameters (length g+1).
    pub rho: Option<GF2Vec>,
    /// Explicit quadratic-section parameters (length 2g).
    pub r: Option<GF2Vec>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_g: 3,
            g: None,
            rho: None,
            r: None,
        }
    }
}

impl VerifyOptions {
    /// The genus values a check with the given cap iterates: either the
    /// explicit genus (ignored above the cap, so multi-part checks skip the
    /// parts it exceeds) or the full range up to `min(cap, max_g)`.
    pub(crate) fn genus_range(&self, cap: usize) -> Vec<usize> {
        match self.g {
            Some(g) if g <= cap => vec![g],
            Some(_) => Vec::new(),
            None => (1..=cap.min(self.max_g)).collect(),
        }
    }
}

/// The largest genus each named check supports.
#[must_use]
pub fn check_cap(name: &str) -> Option<usize> {
    let cap = match name {
        "kernon" | "1" | "1234" | "uti" | "trans" | "01" | "genkt" => 5,
        "jn" | "mi" | "symsym" | "gene" | "ader" | "an" | "s" => 4,
        "2g" => 8,
        "bot" => 6,
        "gs" | "2=4" => 3,
        "1,24" => 2,
        _ => return None,
    };
    Some(cap)
}

/// The names accepted by `verify --theorem`, in the order `run_all` uses.
pub const CHECK_NAMES: &[&str] = &[
    "kernon", "jn", "mi", "1", "1234", "uti", "trans", "01", "s", "2g", "bot", "gs", "genkt",
    "2=4", "1,24", "symsym", "gene", "ader", "an",
];

/// Runs one named check.
pub fn run_check(name: &str, opts: &VerifyOptions) -> Result<CheckReport> {
    if let (Some(g), Some(cap)) = (opts.g, check_cap(name)) {
        if g > cap {
            return Err(Error::Precondition(format!(
                "check {name:?} supports genus up to {cap}, got {g}"
            )));
        }
    }
    match name {
        "kernon" => Ok(check_kernon(opts)),
        "jn" => Ok(check_jn(opts)),
        "mi" => Ok(check_mi(opts)),
        "1" => Ok(check_thm1(opts)),
        "1234" => Ok(check_1234(opts)),
        "uti" => Ok(check_uti(opts)),
        "trans" => Ok(check_trans(opts)),
        "01" => Ok(check_01(opts)),
        "s" => Ok(check_s(opts)),
        "2g" => Ok(check_2g(opts)),
        "bot" => Ok(check_bot(opts)),
        "gs" => Ok(check_gs(opts)),
        "genkt" => Ok(check_genkt(opts)),
        "2=4" => Ok(check_2eq4(opts)),
        "1,24" => Ok(check_cor124(opts)),
        "symsym" => Ok(check_symsym(opts)),
        "gene" => Ok(check_gene(opts)),
        "ader" => Ok(check_ader(opts)),
        "an" => Ok(check_an(opts)),
        other => Err(Error::Precondition(format!(
            "unknown check {other:?}; known checks: {}",
            CHECK_NAMES.join(", ")
        ))),
    }
}

/// Runs every named check in the fixed order of [`CHECK_NAMES`].
#[must_use]
pub fn run_all(opts: &VerifyOptions) -> Vec<CheckReport> {
    CHECK_NAMES
        .iter()
        .map(|name| run_check(name, opts).expect("known name"))
        .collect()
}
