use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use reflexive_core::catalog::{catalog_entries, default_diagram, ring_by_name, RING_NAMES};
use reflexive_core::verifiers::{run_statement, search_counterexample, SearchBounds, Statement, VerifyError};

use crate::instance_file::to_text;
use crate::load::{document_of, load_text, LoadError};
use crate::report::{human, to_json, CheckDocument, SearchDocument};

/// Exit statuses: 0 success, 1 a verdict other than `holds` (or
/// `inconclusive` when allowed), 2 usage, input or validation errors.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Load { path: String, source: LoadError },
    #[error("cannot read {0}: {1}")]
    Read(String, std::io::Error),
    #[error("cannot write {0}: {1}")]
    Write(String, std::io::Error),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("{0}")]
    Usage(String),
}

pub const DEMOS: &[(&str, &str)] = &[
    ("z-torsion", include_str!("../demos/z-torsion.inst")),
    ("z-mixed", include_str!("../demos/z-mixed.inst")),
    ("matrix-columns", include_str!("../demos/matrix-columns.inst")),
    ("triangular", include_str!("../demos/triangular.inst")),
    ("small-diagram", include_str!("../demos/small-diagram.inst")),
];

pub struct CheckOptions {
    pub cap: usize,
    pub out: Option<PathBuf>,
    pub allow_inconclusive: bool,
    pub jobs: Option<usize>,
    pub only: Vec<Statement>,
    pub json: bool,
}

fn read_input(file: &str) -> Result<String, CliError> {
    if let Some(demo) = file.strip_prefix("demo:") {
        return DEMOS
            .iter()
            .find(|(n, _)| *n == demo)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| CliError::UnknownName(file.to_string()));
    }
    fs::read_to_string(file).map_err(|e| CliError::Read(file.to_string(), e))
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Write(path.display().to_string(), e))
}

pub fn cmd_check(file: &str, opts: &CheckOptions, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let text = read_input(file)?;
    let loaded = load_text(&text).map_err(|source| CliError::Load { path: file.to_string(), source })?;
    let jobs: Vec<_> = loaded
        .jobs
        .into_iter()
        .filter(|j| opts.only.is_empty() || opts.only.contains(&j.statement))
        .map(|mut j| {
            j.instance.cap = opts.cap;
            j
        })
        .collect();
    let run = || -> Result<Vec<_>, VerifyError> {
        jobs.par_iter().map(|j| run_statement(j.statement, &j.instance)).collect()
    };
    let reports = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let doc = CheckDocument::new(file.to_string(), opts.cap, opts.allow_inconclusive, reports);
    let json = to_json(&doc);
    if opts.json {
        let _ = stdout.write_all(json.as_bytes());
    } else {
        for r in &doc.jobs {
            let _ = writeln!(stdout, "{}", human(r));
        }
        let _ = writeln!(
            stdout,
            "{} jobs: {} holds, {} fails, {} inconclusive",
            doc.jobs.len(),
            doc.summary["holds"],
            doc.summary["fails"],
            doc.summary["inconclusive"]
        );
    }
    if let Some(p) = &opts.out {
        write_out(p, &json)?;
    }
    Ok(if doc.success { EXIT_OK } else { EXIT_VERDICT })
}

pub fn cmd_search(bounds: &[String], out: Option<&Path>, quiet: bool, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let bounds = SearchBounds::parse(&bounds.join(","))?;
    let mut records = Vec::new();
    let summary = search_counterexample(&bounds, &mut |r| {
        if !quiet {
            let exact = r.exact.map_or("unchecked".to_string(), |e| if e { "exact" } else { "not exact" }.to_string());
            let _ = writeln!(
                stdout,
                "{:?}\torders={}\tN={:?}\tM={:?}\t{}\t{}",
                r.class,
                r.ring.orders.join("/"),
                r.right.relations,
                r.left.relations,
                r.criterion.as_deref().unwrap_or("-"),
                exact
            );
        }
        records.push(r);
    })?;
    let _ = writeln!(
        stdout,
        "{} rings, {} instances: {} covered ({} also checked), {} exact, {} failed",
        summary.rings, summary.instances, summary.covered, summary.covered_checked, summary.exact, summary.failed
    );
    if let Some(p) = out {
        let doc = SearchDocument { tool: crate::report::TOOL, version: crate::report::VERSION, summary, records };
        write_out(p, &to_json(&doc))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_catalog_list(stdout: &mut dyn Write) -> Result<i32, CliError> {
    let _ = writeln!(stdout, "rings (syntax):");
    for n in RING_NAMES {
        let _ = writeln!(stdout, "  {n}");
    }
    let _ = writeln!(stdout, "catalog rings and modules:");
    for e in catalog_entries() {
        let names = |v: &[reflexive_core::catalog::CatalogModule]| v.iter().map(|m| m.name.clone()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(stdout, "  {}: left [{}], right [{}]", e.ring.name(), names(&e.left), names(&e.right));
    }
    let _ = writeln!(stdout, "demos (use as `demo:NAME`):");
    for (n, _) in DEMOS {
        let _ = writeln!(stdout, "  {n}");
    }
    Ok(EXIT_OK)
}

/// Prints a ring's structure constants, or a demo file. With `as_instance`
/// the ring, its catalog modules and default diagram are printed as an
/// instance file instead.
pub fn cmd_catalog_show(name: &str, as_instance: bool, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if let Some((_, text)) = DEMOS.iter().find(|(n, _)| *n == name) {
        let _ = stdout.write_all(text.as_bytes());
        return Ok(EXIT_OK);
    }
    let ring = ring_by_name(name).map_err(|_| CliError::UnknownName(name.to_string()))?;
    let entry = catalog_entries().into_iter().find(|e| e.ring.same_structure(&ring));
    if as_instance {
        let mods: Vec<_> = entry
            .iter()
            .flat_map(|e| e.left.iter().chain(&e.right))
            .map(|m| (m.name.clone(), m.module.clone(), m.flat))
            .collect();
        let doc = document_of(&ring, &mods, Some(&default_diagram(&ring)));
        let _ = stdout.write_all(to_text(&doc).as_bytes());
        return Ok(EXIT_OK);
    }
    let _ = writeln!(stdout, "{}", ring.name());
    let _ = stdout.write_all(ring.table_string().as_bytes());
    if let Some(e) = entry {
        for m in e.left.iter().chain(&e.right) {
            let _ = writeln!(
                stdout,
                "module {} ({}, {} generator(s), flat={}): relations {:?}",
                m.name,
                m.module.side().as_str(),
                m.module.gens(),
                m.flat,
                m.module.relations()
            );
        }
    }
    Ok(EXIT_OK)
}
