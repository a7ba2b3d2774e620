//! Sectioned key-value instance files.
//!
//! ```text
//! [ring]
//! name = Z
//! rank = 1
//! orders = 0
//! unit = 1
//! mul = 0 0 0 1
//!
//! [module "M"]
//! side = left
//! gens = 1
//! relation = 2
//!
//! [algebra "S"]
//! catalog = mod 9
//!
//! [diagram]
//! include-default = false
//! map = base -> S
//!
//! [jobs]
//! run = reflexivity M
//! ```
//!
//! Ring elements are coordinate vectors over the additive generators. A
//! relation lists one vector per module generator, separated by `;`; ring
//! map matrices list the images of the source generators the same way.

use std::fmt::Write as _;

use num_bigint::BigInt;
use thiserror::Error;

use reflexive_core::catalog::{dual_extension, matrix_over, reduction_mod, ring_by_name, square};
use reflexive_core::ring::{ring_validate, Algebra, RingData, StructureRing};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub line: usize,
    pub side: String,
    pub gens: usize,
    pub relations: Vec<Vec<Vec<BigInt>>>,
    pub flat: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: String,
    pub line: usize,
    pub ring: RingData,
    /// Images of the base generators.
    pub map: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub line: usize,
    pub from: String,
    pub to: String,
    /// `None` means the structure map of the target.
    pub matrix: Option<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramDecl {
    pub line: usize,
    pub include_default: bool,
    pub maps: Vec<MapDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobDecl {
    pub line: usize,
    pub statement: String,
    pub refs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceDoc {
    pub ring: RingData,
    pub ring_line: usize,
    pub modules: Vec<ModuleDecl>,
    pub algebras: Vec<AlgebraDecl>,
    pub diagram: Option<DiagramDecl>,
    pub jobs: Vec<JobDecl>,
}

enum Section {
    Ring,
    Module(String),
    Algebra(String),
    Diagram,
    Jobs,
}

/// Keys of one section in order, with their line numbers.
struct Block {
    kind: Section,
    line: usize,
    entries: Vec<(usize, String, String)>,
}

impl Block {
    fn single(&self, key: &str) -> Result<Option<(usize, &str)>, ParseError> {
        let mut found = None;
        for (l, k, v) in &self.entries {
            if k == key {
                if found.is_some() {
                    return err(*l, format!("duplicate key `{key}`"));
                }
                found = Some((*l, v.as_str()));
            }
        }
        Ok(found)
    }

    fn required(&self, key: &str) -> Result<(usize, &str), ParseError> {
        self.single(key)?
            .ok_or_else(|| ParseError { line: self.line, msg: format!("missing key `{key}`") })
    }

    fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = (usize, &'a str)> + 'a {
        self.entries.iter().filter(move |(_, k, _)| k == key).map(|(l, _, v)| (*l, v.as_str()))
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), ParseError> {
        for (l, k, _) in &self.entries {
            if !allowed.contains(&k.as_str()) {
                return err(*l, format!("unknown key `{k}`"));
            }
        }
        Ok(())
    }
}

fn tokenize(text: &str) -> Result<Vec<Block>, ParseError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(head) = content.strip_prefix('[') {
            let Some(head) = head.strip_suffix(']') else {
                return err(line, "unterminated section header");
            };
            let (word, rest) = head.split_once(char::is_whitespace).unwrap_or((head, ""));
            let name = || -> Result<String, ParseError> {
                let n = rest.trim();
                match n.strip_prefix('"').and_then(|n| n.strip_suffix('"')) {
                    Some(n) if valid_name(n) => Ok(n.to_string()),
                    _ => err(line, format!("section `{word}` needs a quoted name without spaces")),
                }
            };
            let kind = match word {
                "ring" => Section::Ring,
                "module" => Section::Module(name()?),
                "algebra" => Section::Algebra(name()?),
                "diagram" => Section::Diagram,
                "jobs" => Section::Jobs,
                other => return err(line, format!("unknown section `{other}`")),
            };
            if matches!(kind, Section::Ring | Section::Diagram | Section::Jobs) && !rest.trim().is_empty() {
                return err(line, format!("section `{word}` takes no name"));
            }
            blocks.push(Block { kind, line, entries: Vec::new() });
            continue;
        }
        let Some((k, v)) = content.split_once('=') else {
            return err(line, "expected `key = value`");
        };
        let Some(block) = blocks.last_mut() else {
            return err(line, "entry outside of any section");
        };
        block.entries.push((line, k.trim().to_string(), v.trim().to_string()));
    }
    Ok(blocks)
}

pub fn valid_name(n: &str) -> bool {
    !n.is_empty() && !n.chars().any(|c| c.is_whitespace() || matches!(c, '"' | ';' | ':' | '#' | '[' | ']' | '='))
}

fn ints(line: usize, s: &str) -> Result<Vec<BigInt>, ParseError> {
    s.split_whitespace()
        .map(|t| t.parse::<BigInt>().or_else(|_| err(line, format!("`{t}` is not an integer"))))
        .collect()
}

fn usize_of(line: usize, s: &str) -> Result<usize, ParseError> {
    s.trim().parse().or_else(|_| err(line, format!("`{s}` is not a non-negative integer")))
}

/// `v1 ; v2 ; ...`, each of length `width`.
fn vectors(line: usize, s: &str, count: usize, width: usize) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != count {
        return err(line, format!("expected {count} vectors separated by `;`, found {}", parts.len()));
    }
    parts
        .into_iter()
        .map(|p| {
            let v = ints(line, p)?;
            if v.len() != width {
                return err(line, format!("expected {width} coordinates, found {}", v.len()));
            }
            Ok(v)
        })
        .collect()
}

/// Ring keys shared by `[ring]` and `[algebra]`. Axioms are checked on load.
fn ring_data(b: &Block, name: &str) -> Result<RingData, ParseError> {
    let (rl, rank) = b.required("rank")?;
    let rank = usize_of(rl, rank)?;
    if rank == 0 {
        return err(rl, "rank must be positive");
    }
    let (ol, orders) = b.required("orders")?;
    let orders = ints(ol, orders)?;
    if orders.len() != rank {
        return err(ol, format!("expected {rank} orders"));
    }
    let (ul, unit) = b.required("unit")?;
    let unit = ints(ul, unit)?;
    if unit.len() != rank {
        return err(ul, format!("expected {rank} unit coordinates"));
    }
    let mut data = RingData::new(name, orders, unit);
    for (l, v) in b.all("mul") {
        let t = ints(l, v)?;
        let [i, j, k, c] = t.as_slice() else {
            return err(l, "expected `mul = i j k c`");
        };
        let idx = |x: &BigInt| usize::try_from(x).ok().filter(|x| *x < rank);
        let (Some(i), Some(j), Some(k)) = (idx(i), idx(j), idx(k)) else {
            return err(l, format!("indices must be below the rank {rank}"));
        };
        data.constants[i][j][k] = c.clone();
    }
    Ok(data)
}

fn flag(b: &Block, key: &str) -> Result<bool, ParseError> {
    match b.single(key)? {
        None | Some((_, "false")) => Ok(false),
        Some((_, "true")) => Ok(true),
        Some((l, v)) => err(l, format!("expected true or false, found `{v}`")),
    }
}

fn catalog_ring(line: usize, name: &str) -> Result<StructureRing, ParseError> {
    ring_by_name(name).or_else(|e| err(line, e.to_string()))
}

fn catalog_algebra(line: usize, base: &RingData, spec: &str) -> Result<Algebra, ParseError> {
    let r = ring_validate(base.clone()).or_else(|e| err(line, e.to_string()))?;
    let words: Vec<&str> = spec.split_whitespace().collect();
    let alg = match words.as_slice() {
        ["square"] => Some(square(&r)),
        ["dual"] => Some(dual_extension(&r)),
        ["matrix"] => matrix_over(&r),
        ["mod", n] => {
            let n: i64 = n.parse().or_else(|_| err(line, format!("`{n}` is not an integer")))?;
            reduction_mod(&r, n)
        }
        _ => return err(line, format!("unknown algebra `{spec}` (expected square, dual, matrix or mod n)")),
    };
    alg.ok_or_else(|| ParseError { line, msg: format!("`{spec}` is not available over this ring") })
}

pub fn parse(text: &str) -> Result<InstanceDoc, ParseError> {
    let blocks = tokenize(text)?;
    let mut ring: Option<(RingData, usize)> = None;
    let mut modules = Vec::new();
    let mut algebras: Vec<AlgebraDecl> = Vec::new();
    let mut diagram: Option<DiagramDecl> = None;
    let mut jobs = Vec::new();
    for b in &blocks {
        if !matches!(b.kind, Section::Ring) && ring.is_none() {
            return err(b.line, "the [ring] section must come first");
        }
        match &b.kind {
            Section::Ring => {
                if ring.is_some() {
                    return err(b.line, "duplicate [ring] section");
                }
                let name = b.single("name")?.map_or("R", |(_, v)| v).to_string();
                let data = if let Some((l, c)) = b.single("catalog")? {
                    b.check_keys(&["catalog", "name"])?;
                    let mut d = catalog_ring(l, c)?.data().clone();
                    if b.single("name")?.is_some() {
                        d.name = name;
                    }
                    d
                } else {
                    b.check_keys(&["name", "rank", "orders", "unit", "mul"])?;
                    ring_data(b, &name)?
                };
                ring = Some((data, b.line));
            }
            Section::Module(name) => {
                b.check_keys(&["side", "gens", "relation", "flat"])?;
                if modules.iter().any(|m: &ModuleDecl| &m.name == name) {
                    return err(b.line, format!("duplicate module `{name}`"));
                }
                let (sl, side) = b.required("side")?;
                if side != "left" && side != "right" {
                    return err(sl, "side must be `left` or `right`");
                }
                let (gl, gens) = b.required("gens")?;
                let gens = usize_of(gl, gens)?;
                let width = ring.as_ref().unwrap().0.orders.len();
                let relations = b.all("relation").map(|(l, v)| vectors(l, v, gens, width)).collect::<Result<_, _>>()?;
                let flat = flag(b, "flat")?;
                modules.push(ModuleDecl { name: name.clone(), line: b.line, side: side.to_string(), gens, relations, flat });
            }
            Section::Algebra(name) => {
                if name == "base" || algebras.iter().any(|a| &a.name == name) {
                    return err(b.line, format!("duplicate or reserved algebra name `{name}`"));
                }
                let base = &ring.as_ref().unwrap().0;
                let decl = if let Some((l, c)) = b.single("catalog")? {
                    b.check_keys(&["catalog"])?;
                    let a = catalog_algebra(l, base, c)?;
                    let mut data = a.ring.data().clone();
                    data.name = name.clone();
                    AlgebraDecl { name: name.clone(), line: b.line, ring: data, map: a.structure_map.matrix().row_vecs() }
                } else {
                    b.check_keys(&["rank", "orders", "unit", "mul", "map"])?;
                    let data = ring_data(b, name)?;
                    let (ml, m) = b.required("map")?;
                    let map = vectors(ml, m, base.orders.len(), data.orders.len())?;
                    AlgebraDecl { name: name.clone(), line: b.line, ring: data, map }
                };
                algebras.push(decl);
            }
            Section::Diagram => {
                if diagram.is_some() {
                    return err(b.line, "duplicate [diagram] section");
                }
                b.check_keys(&["include-default", "map"])?;
                let include_default = flag(b, "include-default")?;
                let mut maps = Vec::new();
                for (l, v) in b.all("map") {
                    let (ends, matrix) = match v.split_once(':') {
                        Some((e, m)) => (e, Some(m)),
                        None => (v, None),
                    };
                    let Some((from, to)) = ends.split_once("->") else {
                        return err(l, "expected `map = FROM -> TO [: rows]`");
                    };
                    let matrix = match matrix {
                        None => None,
                        Some(m) => Some(
                            m.split(';').map(|row| ints(l, row)).collect::<Result<Vec<_>, _>>()?,
                        ),
                    };
                    maps.push(MapDecl { line: l, from: from.trim().to_string(), to: to.trim().to_string(), matrix });
                }
                diagram = Some(DiagramDecl { line: b.line, include_default, maps });
            }
            Section::Jobs => {
                b.check_keys(&["run"])?;
                for (l, v) in b.all("run") {
                    let mut words = v.split_whitespace().map(str::to_string);
                    let Some(statement) = words.next() else {
                        return err(l, "empty job");
                    };
                    jobs.push(JobDecl { line: l, statement, refs: words.collect() });
                }
            }
        }
    }
    let Some((ring, ring_line)) = ring else {
        return err(1, "missing [ring] section");
    };
    Ok(InstanceDoc { ring, ring_line, modules, algebras, diagram, jobs })
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn join_rows(rows: &[Vec<BigInt>]) -> String {
    rows.iter().map(|r| join(r)).collect::<Vec<_>>().join(" ; ")
}

fn write_ring(out: &mut String, d: &RingData, with_name: bool) {
    if with_name {
        let _ = writeln!(out, "name = {}", d.name);
    }
    let _ = writeln!(out, "rank = {}", d.orders.len());
    let _ = writeln!(out, "orders = {}", join(&d.orders));
    let _ = writeln!(out, "unit = {}", join(&d.unit));
    for (i, row) in d.constants.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            for (k, c) in v.iter().enumerate() {
                if *c != BigInt::from(0) {
                    let _ = writeln!(out, "mul = {i} {j} {k} {c}");
                }
            }
        }
    }
}

/// Serializes with explicit tables; `parse` reads it back to an equal
/// document up to line numbers.
pub fn to_text(doc: &InstanceDoc) -> String {
    let mut out = String::from("[ring]\n");
    write_ring(&mut out, &doc.ring, true);
    for m in &doc.modules {
        let _ = writeln!(out, "\n[module \"{}\"]", m.name);
        let _ = writeln!(out, "side = {}", m.side);
        let _ = writeln!(out, "gens = {}", m.gens);
        for r in &m.relations {
            let _ = writeln!(out, "relation = {}", join_rows(r));
        }
        if m.flat {
            out.push_str("flat = true\n");
        }
    }
    for a in &doc.algebras {
        let _ = writeln!(out, "\n[algebra \"{}\"]", a.name);
        write_ring(&mut out, &a.ring, false);
        let _ = writeln!(out, "map = {}", join_rows(&a.map));
    }
    if let Some(d) = &doc.diagram {
        out.push_str("\n[diagram]\n");
        let _ = writeln!(out, "include-default = {}", d.include_default);
        for m in &d.maps {
            match &m.matrix {
                Some(rows) => {
                    let _ = writeln!(out, "map = {} -> {} : {}", m.from, m.to, join_rows(rows));
                }
                None => {
                    let _ = writeln!(out, "map = {} -> {}", m.from, m.to);
                }
            }
        }
    }
    if !doc.jobs.is_empty() {
        out.push_str("\n[jobs]\n");
        for j in &doc.jobs {
            let mut line = j.statement.clone();
            for r in &j.refs {
                line.push(' ');
                line.push_str(r);
            }
            let _ = writeln!(out, "run = {line}");
        }
    }
    out
}

/// Equality ignoring line numbers.
pub fn same_document(a: &InstanceDoc, b: &InstanceDoc) -> bool {
    let strip = |d: &InstanceDoc| {
        let mut d = d.clone();
        d.ring_line = 0;
        d.modules.iter_mut().for_each(|m| m.line = 0);
        d.algebras.iter_mut().for_each(|m| m.line = 0);
        if let Some(g) = &mut d.diagram {
            g.line = 0;
            g.maps.iter_mut().for_each(|m| m.line = 0);
        }
        d.jobs.iter_mut().for_each(|j| j.line = 0);
        d
    };
    strip(a) == strip(b)
}
