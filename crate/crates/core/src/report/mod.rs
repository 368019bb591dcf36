//! Verification suites and the machine-readable report.

mod suites;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::ffcount::MAX_PRIME;

pub const SCHEMA: &str = "dp4-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Pluecker,
    Elimination,
    LemmaQ3,
    Planes,
    Lines,
    Dbar,
    Counts,
    Poincare,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Pluecker,
        Suite::Elimination,
        Suite::LemmaQ3,
        Suite::Planes,
        Suite::Lines,
        Suite::Dbar,
        Suite::Counts,
        Suite::Poincare,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Pluecker => "pluecker",
            Suite::Elimination => "elimination",
            Suite::LemmaQ3 => "lemma-q3",
            Suite::Planes => "planes",
            Suite::Lines => "lines",
            Suite::Dbar => "dbar",
            Suite::Counts => "counts",
            Suite::Poincare => "poincare",
        }
    }

    /// Suites whose checks compute ranks of quadratic forms over `F_q`.
    fn needs_odd_primes(self) -> bool {
        matches!(self, Suite::Lines | Suite::Counts | Suite::Poincare)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

/// Parses `all` or a comma-separated list of suite ids, returning them in canonical order.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("no suite given".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    #[serde(rename = "random_samples")]
    pub samples: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Worker threads; not part of the serialized report.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            primes: vec![3, 5, 7, 11],
            samples: 100,
            seed: 0,
            suites: Suite::ALL.to_vec(),
            jobs: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::InvalidInput("at least one prime is required".into()));
        }
        for &p in &self.primes {
            Field::prime(p)?;
            if p > MAX_PRIME {
                return Err(Error::InvalidPrime(p));
            }
            if p == 2 && self.suites.iter().any(|s| s.needs_odd_primes()) {
                return Err(Error::RankNeedsOddPrime);
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportItem {
    pub check_id: String,
    pub paper_anchor: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    pub elapsed_ms: u64,
    pub evidence: Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: RunConfig,
    pub items: Vec<ReportItem>,
    pub summary: Summary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every `elapsed_ms` set to zero.
    pub fn without_timings(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(items) = v["items"].as_array_mut() {
            for it in items {
                it["elapsed_ms"] = Value::from(0);
            }
        }
        v
    }

    pub fn item(&self, check_id: &str) -> Option<&ReportItem> {
        self.items.iter().find(|i| i.check_id == check_id)
    }
}

/// Claim identifiers used as `paper_anchor` values.
pub const ANCHORS: [&str; 14] = [
    "claim/y-definition",
    "claim/vertex-conic",
    "claim/plane-family",
    "claim/plane-intersections",
    "claim/line-blowup",
    "claim/line-types",
    "claim/chart-x3",
    "claim/chart-x4",
    "claim/quadric-q3",
    "claim/singular-fibers",
    "claim/double-line-fibration",
    "claim/conic-space",
    "claim/nonfree-lines",
    "claim/poincare-chain",
];

/// Runs the configured suites; the item order depends only on the configuration.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let jobs = config.jobs.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let per_suite: Vec<Vec<ReportItem>> = pool.install(|| {
        if jobs > 1 {
            suites.par_iter().map(|&s| suites::run_suite(s, config)).collect()
        } else {
            suites.iter().map(|&s| suites::run_suite(s, config)).collect()
        }
    });
    let items: Vec<ReportItem> = per_suite.into_iter().flatten().collect();
    let mut summary = Summary::default();
    for it in &items {
        match it.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Flagged => summary.flagged += 1,
        }
    }
    Ok(Report {
        schema: SCHEMA,
        config: RunConfig {
            suites,
            ..config.clone()
        },
        items,
        summary,
    })
}
