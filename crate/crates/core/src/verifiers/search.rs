use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::hnf_only;
use crate::module::{module_from_presentation, FpModule, Side};
use crate::ring::{is_central_subring_split, ring_validate, RingData, StructureRing};
use crate::tensorhom::{check_hypothesis, from_strings, to_strings, Witness};

use super::{declared_bimodule, is_regular, VerifyError};

const ALLOWED_ORDERS: [i64; 4] = [0, 2, 3, 4];
const MAX_RANK: usize = 3;
const MAX_GENS: usize = 2;
const MAX_RELATIONS: usize = 2;

/// Limits of the enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_rank: usize,
    pub orders: Vec<i64>,
    pub max_gens: usize,
    pub max_relations: usize,
    pub commutative_only: bool,
    /// Also run the fork on instances a sufficiency criterion covers.
    pub check_covered: bool,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_rank: 3,
            orders: ALLOWED_ORDERS.to_vec(),
            max_gens: 1,
            max_relations: 1,
            commutative_only: false,
            check_covered: true,
        }
    }
}

impl SearchBounds {
    pub fn validate(&self) -> Result<(), VerifyError> {
        if self.max_rank == 0 || self.max_rank > MAX_RANK {
            return Err(VerifyError::Bounds(format!("rank must be in 1..={MAX_RANK}")));
        }
        if self.orders.is_empty() || self.orders.iter().any(|o| !ALLOWED_ORDERS.contains(o)) {
            return Err(VerifyError::Bounds("orders must be a nonempty subset of {0, 2, 3, 4}".into()));
        }
        if self.max_gens == 0 || self.max_gens > MAX_GENS {
            return Err(VerifyError::Bounds(format!("gens must be in 1..={MAX_GENS}")));
        }
        if self.max_relations > MAX_RELATIONS {
            return Err(VerifyError::Bounds(format!("relations must be at most {MAX_RELATIONS}")));
        }
        Ok(())
    }

    /// Parses `key=value` pairs separated by commas, starting from the
    /// defaults. Keys: `rank`, `orders` (slash separated), `gens`,
    /// `relations`, `commutative`, `check-covered`. The word
    /// `commutative-only` is accepted as a shorthand.
    pub fn parse(spec: &str) -> Result<Self, VerifyError> {
        let mut b = SearchBounds::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "commutative-only" {
                b.commutative_only = true;
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| VerifyError::Bounds(format!("expected key=value, got `{item}`")))?;
            let num = |v: &str| v.trim().parse::<usize>().map_err(|_| VerifyError::Bounds(format!("bad number `{v}`")));
            let flag = |v: &str| v.trim().parse::<bool>().map_err(|_| VerifyError::Bounds(format!("bad flag `{v}`")));
            match k.trim() {
                "rank" => b.max_rank = num(v)?,
                "gens" => b.max_gens = num(v)?,
                "relations" => b.max_relations = num(v)?,
                "commutative" => b.commutative_only = flag(v)?,
                "check-covered" => b.check_covered = flag(v)?,
                "orders" => {
                    b.orders = v
                        .split('/')
                        .map(|o| o.trim().parse::<i64>().map_err(|_| VerifyError::Bounds(format!("bad order `{o}`"))))
                        .collect::<Result<_, _>>()?
                }
                other => return Err(VerifyError::Bounds(format!("unknown key `{other}`"))),
            }
        }
        b.validate()?;
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    /// A sufficiency criterion applies (and, when checked, the fork is exact).
    Covered,
    /// No criterion applies and the fork is exact.
    Exact,
    /// The fork is not exact.
    Failed,
}

/// A ring table in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub orders: Vec<String>,
    pub constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

impl RingSpec {
    pub fn of(r: &StructureRing) -> Self {
        let d = r.data();
        RingSpec {
            orders: to_strings(&d.orders),
            constants: d.constants.iter().map(|row| row.iter().map(|v| to_strings(v)).collect()).collect(),
            unit: to_strings(&d.unit),
        }
    }

    pub fn to_ring(&self, name: &str) -> Result<StructureRing, VerifyError> {
        let mut data = RingData::new(name, from_strings(&self.orders), from_strings(&self.unit));
        data.constants = self.constants.iter().map(|row| row.iter().map(|v| from_strings(v)).collect()).collect();
        Ok(ring_validate(data)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub side: String,
    pub gens: usize,
    pub relations: Vec<Vec<Vec<String>>>,
}

impl ModuleSpec {
    pub fn of(m: &FpModule) -> Self {
        ModuleSpec {
            side: m.side().as_str().to_string(),
            gens: m.gens(),
            relations: m.relations().iter().map(|rel| rel.iter().map(|v| to_strings(v)).collect()).collect(),
        }
    }

    pub fn to_module(&self, ring: &StructureRing) -> Result<FpModule, VerifyError> {
        let side = if self.side == "left" { Side::Left } else { Side::Right };
        let rels = self.relations.iter().map(|rel| rel.iter().map(|v| from_strings(v)).collect()).collect();
        Ok(module_from_presentation(ring, side, self.gens, rels)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchRecord {
    pub ring: RingSpec,
    pub right: ModuleSpec,
    pub left: ModuleSpec,
    pub class: Classification,
    /// Which sufficiency criterion applies, if any.
    pub criterion: Option<String>,
    /// Fork exactness, when it was run.
    pub exact: Option<bool>,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchSummary {
    pub bounds: SearchBounds,
    pub rings: usize,
    pub instances: usize,
    pub covered: usize,
    pub exact: usize,
    pub failed: usize,
    /// Covered instances on which the fork was also run.
    pub covered_checked: usize,
}

/// Enumerates rings and module pairs within the bounds and classifies each
/// pair. Records are handed to `sink` as they are produced.
pub fn search_counterexample(
    bounds: &SearchBounds,
    sink: &mut dyn FnMut(SearchRecord),
) -> Result<SearchSummary, VerifyError> {
    bounds.validate()?;
    let rings = enumerate_rings(bounds);
    let mut summary = SearchSummary {
        bounds: bounds.clone(),
        rings: rings.len(),
        instances: 0,
        covered: 0,
        exact: 0,
        failed: 0,
        covered_checked: 0,
    };
    for ring in &rings {
        let spec = RingSpec::of(ring);
        let split = matches!(is_central_subring_split(ring, &[ring.one()]), Ok(true));
        let lefts = enumerate_modules(ring, Side::Left, bounds);
        let rights = enumerate_modules(ring, Side::Right, bounds);
        for n in &rights {
            for m in &lefts {
                summary.instances += 1;
                let criterion = if ring.is_commutative() {
                    Some("commutative")
                } else if declared_bimodule(m).is_some() || is_regular(n) {
                    Some("bimodule")
                } else if split {
                    Some("central-split")
                } else {
                    None
                };
                let run = criterion.is_none() || bounds.check_covered;
                let (exact, witnesses) = if run {
                    let (_, ex) = check_hypothesis(n.structure(), m.structure())?;
                    (Some(ex.exact()), ex.witnesses)
                } else {
                    (None, Vec::new())
                };
                let class = match (criterion, exact) {
                    (_, Some(false)) => Classification::Failed,
                    (Some(_), _) => Classification::Covered,
                    (None, _) => Classification::Exact,
                };
                match class {
                    Classification::Covered => {
                        summary.covered += 1;
                        if exact.is_some() {
                            summary.covered_checked += 1;
                        }
                    }
                    Classification::Exact => summary.exact += 1,
                    Classification::Failed => summary.failed += 1,
                }
                sink(SearchRecord {
                    ring: spec.clone(),
                    right: ModuleSpec::of(n),
                    left: ModuleSpec::of(m),
                    class,
                    criterion: criterion.map(str::to_string),
                    exact,
                    witnesses,
                });
            }
        }
    }
    Ok(summary)
}

/// Rebuilds the instance of a record and re-checks every witness.
pub fn replay_record(r: &SearchRecord) -> Result<bool, VerifyError> {
    let ring = r.ring.to_ring("replay")?;
    let n = r.right.to_module(&ring)?;
    let m = r.left.to_module(&ring)?;
    let (fork, ex) = check_hypothesis(n.structure(), m.structure())?;
    if let Some(e) = r.exact {
        if e != ex.exact() {
            return Ok(false);
        }
    }
    Ok(r.witnesses.iter().all(|w| fork.maps.replay(w)))
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn coefficient_range(order: &BigInt) -> Vec<BigInt> {
    if order.is_zero() {
        vec![big(-1), big(0), big(1)]
    } else {
        let d = i64::try_from(order).unwrap_or(4);
        (0..d).map(big).collect()
    }
}

/// Rings with `1` as the first additive generator.
pub fn enumerate_rings(bounds: &SearchBounds) -> Vec<StructureRing> {
    let mut out = Vec::new();
    let orders: Vec<BigInt> = bounds.orders.iter().map(|o| big(*o)).collect();
    for d in &orders {
        let mut data = RingData::new(format!("rank1[{d}]"), vec![d.clone()], vec![big(1)]);
        data.set(0, 0, 0, 1);
        if let Ok(r) = ring_validate(data) {
            out.push(r);
        }
    }
    if bounds.max_rank >= 2 {
        for d0 in &orders {
            for d1 in &orders {
                if !d0.is_zero() && (d1.is_zero() || !d0.is_multiple_of(d1)) {
                    continue;
                }
                for a in coefficient_range(d0) {
                    for b in coefficient_range(d1) {
                        let mut data = RingData::new(format!("rank2[{d0},{d1}]"), vec![d0.clone(), d1.clone()], vec![big(1), big(0)]);
                        data.set(0, 0, 0, 1);
                        data.set(0, 1, 1, 1);
                        data.set(1, 0, 1, 1);
                        data.set(1, 1, 0, a.clone());
                        data.set(1, 1, 1, b.clone());
                        if let Ok(r) = ring_validate(data) {
                            out.push(r);
                        }
                    }
                }
            }
        }
    }
    if bounds.max_rank >= 3 && bounds.orders.contains(&2) {
        out.extend(rank3_f2_algebras());
    }
    if bounds.commutative_only {
        out.retain(StructureRing::is_commutative);
    }
    out
}

/// Unital three-dimensional algebras over `Z/2` with basis `1, a, b`, one
/// per isomorphism class.
fn rank3_f2_algebras() -> Vec<StructureRing> {
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut out = Vec::new();
    let changes = basis_changes_f2();
    for code in 0u32..(1 << 12) {
        let bit = |k: u32| i64::from((code >> k) & 1);
        let mut data = RingData::new("rank3[2,2,2]", vec![big(2); 3], vec![big(1), big(0), big(0)]);
        for i in 0..3 {
            data.set(0, i, i, 1);
            data.set(i, 0, i, 1);
        }
        let mut k = 0;
        for i in 1..3 {
            for j in 1..3 {
                for c in 0..3 {
                    data.set(i, j, c, bit(k));
                    k += 1;
                }
            }
        }
        let Ok(r) = ring_validate(data) else { continue };
        let key = changes.iter().map(|(p, pinv)| transformed_table(&r, p, pinv)).min().unwrap();
        if seen.insert(key) {
            out.push(r.renamed(format!("rank3[2,2,2]#{}", out.len())));
        }
    }
    out
}

type Mat3 = [[u8; 3]; 3];

/// Basis changes fixing `1`, as pairs (new basis rows, inverse).
fn basis_changes_f2() -> Vec<(Mat3, Mat3)> {
    let mut all = Vec::new();
    for code in 0u32..(1 << 6) {
        let b = |k: u32| ((code >> k) & 1) as u8;
        let p: Mat3 = [[1, 0, 0], [b(0), b(1), b(2)], [b(3), b(4), b(5)]];
        all.push(p);
    }
    let mul = |a: &Mat3, b: &Mat3| -> Mat3 {
        let mut c = [[0u8; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u8>() % 2;
            }
        }
        c
    };
    let id: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut out = Vec::new();
    for p in &all {
        if let Some(q) = all.iter().find(|q| mul(p, q) == id) {
            out.push((*p, *q));
        }
    }
    out
}

fn transformed_table(r: &StructureRing, p: &Mat3, pinv: &Mat3) -> Vec<u8> {
    let row = |i: usize| -> Vec<BigInt> { p[i].iter().map(|&v| big(i64::from(v))).collect() };
    let mut key = Vec::with_capacity(27);
    for i in 0..3 {
        for j in 0..3 {
            let prod = r.reduce(&r.mul(&row(i), &row(j)));
            for k in 0..3 {
                let v: i64 = (0..3)
                    .map(|l| i64::try_from(&prod[l]).unwrap() * i64::from(pinv[l][k]))
                    .sum();
                key.push((v.rem_euclid(2)) as u8);
            }
        }
    }
    key
}

/// Modules with at most `max_gens` generators and `max_relations`
/// relations drawn from a small coefficient range, one per relation
/// submodule.
pub fn enumerate_modules(ring: &StructureRing, side: Side, bounds: &SearchBounds) -> Vec<FpModule> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<(usize, Vec<Vec<String>>)> = BTreeSet::new();
    let elems = ring_elements(ring);
    for g in 1..=bounds.max_gens {
        let tuples = tuples_of(&elems, g);
        let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
        for k in 1..=bounds.max_relations {
            choices.extend(combinations(tuples.len(), k));
        }
        for choice in choices {
            let rels: Vec<Vec<Vec<BigInt>>> = choice.iter().map(|&t| tuples[t].clone()).collect();
            let Ok(m) = module_from_presentation(ring, side, g, rels) else { continue };
            let key = (
                g,
                hnf_only(&m.underlying().relation_rows())
                    .row_vecs()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
            );
            if seen.insert(key) {
                out.push(m);
            }
        }
    }
    out
}

fn ring_elements(ring: &StructureRing) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for d in ring.orders() {
        let range = coefficient_range(d);
        out = out
            .into_iter()
            .flat_map(|v| {
                range.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    out.retain(|v| !v.iter().all(Zero::is_zero));
    out
}

fn tuples_of(elems: &[Vec<BigInt>], g: usize) -> Vec<Vec<Vec<BigInt>>> {
    let n = elems.first().map_or(0, Vec::len);
    let mut with_zero = vec![vec![BigInt::zero(); n]];
    with_zero.extend(elems.iter().cloned());
    let mut out: Vec<Vec<Vec<BigInt>>> = vec![Vec::new()];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|t| {
                with_zero.iter().map(move |e| {
                    let mut u = t.clone();
                    u.push(e.clone());
                    u
                })
            })
            .collect();
    }
    out.retain(|t| t.iter().any(|e| !e.iter().all(Zero::is_zero)));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
