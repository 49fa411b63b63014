//! Batch verification: a registry of checkable statements, a sweep over
//! `(n, k, r, family, simplex)` cases, and JSON Lines reports.

mod algebra;
mod decomposition;
mod extension;
mod registry;
mod star;

pub mod commands;
pub mod two_cell;

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::AltForm;
use crate::polyform::Family;
use crate::scalar::Rational;

pub use registry::{statements, Statement};

/// Which simplices geometry-dependent statements run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplexSource {
    Reference,
    RandomRational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub min_n: usize,
    pub max_n: usize,
    /// Allows `max_n = 4`.
    pub include_n4: bool,
    /// Overrides the per-dimension degree bound (4 for n ≤ 2, 3 for n = 3, 2 for n = 4).
    pub max_r: Option<u32>,
    pub families: Vec<Family>,
    pub seed: u64,
    pub simplex_source: SimplexSource,
    /// Random simplices (and random affine maps) per case.
    pub random_simplices: usize,
    /// Random polynomial forms per case.
    pub random_forms: usize,
    /// Restricts the run to these statement names.
    pub statements: Option<Vec<String>>,
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            min_n: 1,
            max_n: 3,
            include_n4: false,
            max_r: None,
            families: vec![Family::Full, Family::Trimmed],
            seed: 0,
            simplex_source: SimplexSource::RandomRational,
            random_simplices: 5,
            random_forms: 10,
            statements: None,
            timing: false,
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_n == 0 {
            return Err(Error::InvalidInput("min_n must be at least 1".into()));
        }
        if self.max_n > 4 || (self.max_n == 4 && !self.include_n4) {
            return Err(Error::InvalidInput(
                "n = 4 needs include_n4; n > 4 is unsupported".into(),
            ));
        }
        if let Some(f) = self
            .families
            .iter()
            .find(|f| !matches!(f, Family::Full | Family::Trimmed))
        {
            return Err(Error::InvalidInput(format!("family {f} cannot be swept")));
        }
        if let Some(names) = &self.statements {
            let known: Vec<&str> = statements().iter().map(|s| s.name).collect();
            if let Some(bad) = names.iter().find(|n| !known.contains(&n.as_str())) {
                return Err(Error::InvalidInput(format!("unknown statement {bad:?}")));
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> std::ops::RangeInclusive<usize> {
        self.min_n..=self.max_n
    }

    pub fn max_r_for(&self, n: usize) -> u32 {
        self.max_r.unwrap_or(match n {
            0..=2 => 4,
            3 => 3,
            _ => 2,
        })
    }

    fn selected(&self, name: &str) -> bool {
        self.statements
            .as_ref()
            .is_none_or(|s| s.iter().any(|x| x == name))
    }
}

/// Simplex a case runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sample {
    Reference,
    Random(usize),
}

impl std::fmt::Display for Sample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sample::Reference => write!(f, "reference"),
            Sample::Random(i) => write!(f, "random-{i}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Case {
    pub n: usize,
    pub k: Option<usize>,
    pub r: Option<u32>,
    pub family: Option<Family>,
    pub sample: Sample,
    pub seed: u64,
    pub random_forms: usize,
    pub random_simplices: usize,
}

impl Case {
    fn new(n: usize) -> Self {
        Case {
            n,
            k: None,
            r: None,
            family: None,
            sample: Sample::Reference,
            seed: 0,
            random_forms: 0,
            random_simplices: 0,
        }
    }

    pub(crate) fn k(&self) -> usize {
        self.k.expect("case has a form degree")
    }

    pub(crate) fn r(&self) -> u32 {
        self.r.expect("case has a polynomial degree")
    }

    pub(crate) fn family(&self) -> Family {
        self.family.expect("case has a family")
    }
}

/// Result of a single check.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
    pub witness: Option<String>,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            pass: true,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn fail(detail: impl Into<String>, witness: impl Into<String>) -> Self {
        Outcome {
            pass: false,
            detail: detail.into(),
            witness: Some(witness.into()),
        }
    }

    /// Passes with `detail`, or fails with the first witness found.
    pub fn from_witness(detail: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Outcome::pass(detail),
            Some(w) => Outcome::fail(detail, w),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub statement: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<Family>,
    pub simplex: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Replaceable operators, so tests can inject faults.
#[derive(Clone, Copy)]
pub struct Hooks {
    pub hodge: fn(&AltForm<Rational>) -> AltForm<Rational>,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            hodge: AltForm::hodge,
        }
    }
}

/// Stable per-case seed (independent of which statements are selected).
fn case_seed(base: u64, name: &str, case: &Case) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ base;
    let family = case.family.map_or(0, |f| f as u64 + 1);
    let sample = match case.sample {
        Sample::Reference => 0,
        Sample::Random(i) => i as u64 + 1,
    };
    let fields = [
        case.n as u64,
        case.k.map_or(u64::MAX, |k| k as u64),
        case.r.map_or(u64::MAX, u64::from),
        family,
        sample,
    ];
    let bytes = name.bytes().map(u64::from).chain(fields);
    for b in bytes {
        h ^= b;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Every case of every selected statement, in registry order.
pub fn plan(cfg: &Config) -> Vec<(&'static Statement, Case)> {
    let mut out = Vec::new();
    for st in statements() {
        if !cfg.selected(st.name) {
            continue;
        }
        for mut case in (st.cases)(cfg) {
            case.seed = case_seed(cfg.seed, st.name, &case);
            case.random_forms = cfg.random_forms;
            case.random_simplices = cfg.random_simplices;
            out.push((st, case));
        }
    }
    out
}

pub fn run_case(st: &Statement, case: &Case, hooks: &Hooks, timing: bool) -> Report {
    let start = Instant::now();
    let outcome = (st.check)(case, hooks)
        .unwrap_or_else(|e| Outcome::fail("check raised an error", e.to_string()));
    let elapsed = start.elapsed();
    Report {
        statement: st.name.to_string(),
        n: case.n,
        k: case.k,
        r: case.r,
        family: case.family,
        simplex: case.sample.to_string(),
        seed: case.seed,
        verdict: if outcome.pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        detail: outcome.detail,
        witness: outcome.witness,
        timing_ms: timing.then_some(elapsed.as_millis() as u64),
    }
}

pub fn run_suite(cfg: &Config) -> Result<Vec<Report>> {
    run_suite_with(cfg, &Hooks::default())
}

/// Runs the cases in parallel; the output keeps the planned order.
pub fn run_suite_with(cfg: &Config, hooks: &Hooks) -> Result<Vec<Report>> {
    cfg.validate()?;
    let cases = plan(cfg);
    Ok(cases
        .par_iter()
        .map(|(st, case)| run_case(st, case, hooks, cfg.timing))
        .collect())
}

pub fn write_jsonl<W: Write>(reports: &[Report], mut out: W) -> std::io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// `p/q` with an explicit denominator.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests;
