//! Statement-level checks over concrete instances, the natural
//! transformation harness, reflexivity checks and the counterexample search.

mod nat;
mod reflexivity;
mod search;
mod statements;

pub use nat::*;
pub use reflexivity::*;
pub use search::*;
pub use statements::*;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{default_diagram, CatalogModule, Diagram};
use crate::linalg::{FgAbGroup, LinalgError};
use crate::module::{FpModule, ModuleError, Side};
use crate::ring::{RingError, StructureRing};
use crate::tensoralg::TensorAlgError;
use crate::tensorhom::{Bimodule, Witness};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("search bounds exceed the hard limits: {0}")]
    Bounds(String),
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    TensorAlg(#[from] TensorAlgError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A base ring, a left module `M`, a right module `N` and a finite diagram
/// of algebras standing in for "all algebras".
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub ring: StructureRing,
    pub left: FpModule,
    pub right: FpModule,
    pub diagram: Diagram,
    pub left_flat: bool,
    pub right_flat: bool,
    pub cap: usize,
}

impl Instance {
    pub fn new(name: impl Into<String>, left: FpModule, right: FpModule, diagram: Diagram) -> Result<Self, VerifyError> {
        let ring = left.ring().clone();
        if left.side() != Side::Left || right.side() != Side::Right {
            return Err(VerifyError::Instance("expected a left module M and a right module N".into()));
        }
        if !right.ring().same_structure(&ring) || !diagram.base.same_structure(&ring) {
            return Err(VerifyError::Instance("modules and diagram live over different rings".into()));
        }
        Ok(Instance {
            name: name.into(),
            ring,
            left,
            right,
            diagram,
            left_flat: false,
            right_flat: false,
            cap: 3,
        })
    }

    /// Instance built from two catalog modules and the default diagram.
    pub fn from_catalog(n: &CatalogModule, m: &CatalogModule) -> Result<Self, VerifyError> {
        let ring = m.module.ring().clone();
        let mut inst = Instance::new(
            format!("{} | N={} | M={}", ring.name(), n.name, m.name),
            m.module.clone(),
            n.module.clone(),
            default_diagram(&ring),
        )?;
        inst.left_flat = m.flat;
        inst.right_flat = n.flat;
        Ok(inst)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// A bimodule structure on `M`, when one is evident: over a commutative
    /// ring, or when `M` is free of rank one.
    pub fn declared_bimodule(&self) -> Option<Bimodule> {
        declared_bimodule(&self.left)
    }

    /// `N` carries an evident bimodule structure.
    pub fn right_is_bimodule(&self) -> bool {
        self.ring.is_commutative() || is_regular(&self.right)
    }
}

pub fn is_regular(m: &FpModule) -> bool {
    m.gens() == 1 && m.relations().is_empty()
}

pub fn declared_bimodule(m: &FpModule) -> Option<Bimodule> {
    let ring = m.ring();
    if ring.is_commutative() {
        return Bimodule::from_commutative(m.structure()).ok();
    }
    if is_regular(m) {
        let right = (0..ring.rank()).map(|i| ring.right_mult_matrix(&ring.basis(i))).collect();
        return Bimodule::new(m.structure().clone(), right).ok();
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of one statement on one instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: String,
    pub instance: String,
    pub verdict: Verdict,
    /// Invariant factors of every computed group (0 = infinite cyclic).
    pub groups: BTreeMap<String, Vec<String>>,
    /// Named boolean checks that make up the verdict.
    pub checks: BTreeMap<String, bool>,
    pub notes: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub caps: Vec<usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(statement: Statement, instance: &str) -> Self {
        VerificationReport {
            statement: statement.as_str().to_string(),
            instance: instance.to_string(),
            verdict: Verdict::Inconclusive,
            groups: BTreeMap::new(),
            checks: BTreeMap::new(),
            notes: Vec::new(),
            witnesses: Vec::new(),
            caps: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn group(&mut self, key: impl Into<String>, g: &FgAbGroup) {
        self.groups.insert(key.into(), invariants(g));
    }

    pub fn check(&mut self, key: impl Into<String>, ok: bool) -> bool {
        let key = key.into();
        let prev = self.checks.get(&key).copied().unwrap_or(true);
        self.checks.insert(key, prev && ok);
        ok
    }

    /// Verdict from the recorded checks.
    pub fn conclude(mut self) -> Self {
        self.verdict = Verdict::from_bool(self.checks.values().all(|b| *b));
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

pub fn invariants(g: &FgAbGroup) -> Vec<String> {
    g.invariant_factors().iter().map(BigInt::to_string).collect()
}

/// The executable statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statement {
    Hypothesis,
    BimoduleFlat,
    CentralSplit,
    ExtensionFormula,
    Symmetry,
    KernelLemma,
    NatTransform,
    Reflexivity,
    VeeReflexivity,
}

impl Statement {
    pub const ALL: [Statement; 9] = [
        Statement::Hypothesis,
        Statement::BimoduleFlat,
        Statement::CentralSplit,
        Statement::ExtensionFormula,
        Statement::Symmetry,
        Statement::KernelLemma,
        Statement::NatTransform,
        Statement::Reflexivity,
        Statement::VeeReflexivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Statement::Hypothesis => "hypothesis",
            Statement::BimoduleFlat => "bimodule-flat",
            Statement::CentralSplit => "central-split",
            Statement::ExtensionFormula => "extension-formula",
            Statement::Symmetry => "symmetry",
            Statement::KernelLemma => "kernel-lemma",
            Statement::NatTransform => "nat-transform",
            Statement::Reflexivity => "reflexivity",
            Statement::VeeReflexivity => "vee-reflexivity",
        }
    }
}

impl FromStr for Statement {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Statement::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| VerifyError::UnknownStatement(s.to_string()))
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Runs one statement on an instance and records its wall time.
pub fn run_statement(st: Statement, inst: &Instance) -> Result<VerificationReport, VerifyError> {
    let start = std::time::Instant::now();
    let mut rep = match st {
        Statement::Hypothesis => verify_hypothesis(inst)?,
        Statement::BimoduleFlat => verify_bimodule_flat_case(inst)?,
        Statement::CentralSplit => {
            verify_central_split_case(&inst.ring, &[inst.ring.one()], &[(inst.right.clone(), inst.left.clone())], &inst.name)?
        }
        Statement::ExtensionFormula => verify_extension_formula(inst)?,
        Statement::Symmetry => verify_symmetry(inst)?,
        Statement::KernelLemma => verify_kernel_lemma(inst)?,
        Statement::NatTransform => verify_nat_harness(inst)?,
        Statement::Reflexivity => verify_reflexivity(&inst.left, &inst.diagram, &inst.name)?,
        Statement::VeeReflexivity => verify_vee_reflexivity(&inst.left, &inst.diagram, inst.cap, &inst.name)?,
    };
    rep.elapsed = start.elapsed();
    Ok(rep)
}

#[cfg(test)]
mod tests;
