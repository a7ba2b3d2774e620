use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use reflexive_core::linalg::describe;
use reflexive_core::verifiers::{SearchRecord, SearchSummary, Verdict, VerificationReport};

pub const TOOL: &str = "reflexive";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output of `check`. Field order and map ordering are fixed, and no
/// timings are included, so identical runs serialize identically.
#[derive(Debug, Serialize)]
pub struct CheckDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: String,
    pub cap: usize,
    pub allow_inconclusive: bool,
    pub jobs: Vec<VerificationReport>,
    pub summary: BTreeMap<String, usize>,
    pub success: bool,
}

impl CheckDocument {
    pub fn new(input: String, cap: usize, allow_inconclusive: bool, jobs: Vec<VerificationReport>) -> Self {
        let mut summary = BTreeMap::new();
        for v in ["holds", "fails", "inconclusive"] {
            summary.insert(v.to_string(), 0);
        }
        for j in &jobs {
            *summary.get_mut(&j.verdict.to_string()).unwrap() += 1;
        }
        let success = jobs.iter().all(|j| match j.verdict {
            Verdict::Holds => true,
            Verdict::Inconclusive => allow_inconclusive,
            Verdict::Fails => false,
        });
        CheckDocument { tool: TOOL, version: VERSION, input, cap, allow_inconclusive, jobs, summary, success }
    }
}

#[derive(Debug, Serialize)]
pub struct SearchDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub summary: SearchSummary,
    pub records: Vec<SearchRecord>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

/// `Z/2 + Z` style rendering of stored invariant factors.
pub fn group_text(inv: &[String]) -> String {
    let v: Vec<BigInt> = inv.iter().map(|s| s.parse().unwrap_or_default()).collect();
    describe(&v)
}

pub fn human(rep: &VerificationReport) -> String {
    let mut out = format!("[{}] {} on {}", rep.verdict, rep.statement, rep.instance);
    for (k, g) in &rep.groups {
        out.push_str(&format!("\n    {k} = {}", group_text(g)));
    }
    let failed: Vec<&str> = rep.checks.iter().filter(|(_, v)| !**v).map(|(k, _)| k.as_str()).collect();
    if !failed.is_empty() {
        out.push_str(&format!("\n    failed checks: {}", failed.join(", ")));
    }
    for n in &rep.notes {
        out.push_str(&format!("\n    note: {n}"));
    }
    out
}
