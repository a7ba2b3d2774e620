use std::collections::BTreeMap;

use thiserror::Error;

use reflexive_core::catalog::{default_diagram, Diagram};
use reflexive_core::linalg::IntMatrix;
use reflexive_core::module::{free_module, module_from_presentation, FpModule, Side};
use reflexive_core::ring::{ring_validate, Algebra, RingMap, StructureRing};
use reflexive_core::verifiers::{Instance, Statement};

use crate::instance_file::{parse, InstanceDoc, ParseError};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
}

fn invalid<T>(line: usize, msg: impl Into<String>) -> Result<T, LoadError> {
    Err(LoadError::Invalid { line, msg: msg.into() })
}

/// One job with its references resolved.
#[derive(Clone, Debug)]
pub struct Job {
    pub line: usize,
    pub statement: Statement,
    pub instance: Instance,
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub ring: StructureRing,
    pub modules: BTreeMap<String, FpModule>,
    pub flat: BTreeMap<String, bool>,
    pub diagram: Diagram,
    pub jobs: Vec<Job>,
}

pub fn load_text(text: &str) -> Result<Loaded, LoadError> {
    load(&parse(text)?)
}

/// Validates every component and resolves every reference.
pub fn load(doc: &InstanceDoc) -> Result<Loaded, LoadError> {
    let ring = ring_validate(doc.ring.clone()).or_else(|e| invalid(doc.ring_line, format!("[ring]: {e}")))?;

    let mut modules = BTreeMap::new();
    let mut flat = BTreeMap::new();
    for m in &doc.modules {
        let side = if m.side == "left" { Side::Left } else { Side::Right };
        let fm = module_from_presentation(&ring, side, m.gens, m.relations.clone())
            .or_else(|e| invalid(m.line, format!("module `{}`: {e}", m.name)))?;
        modules.insert(m.name.clone(), fm);
        flat.insert(m.name.clone(), m.flat);
    }

    let mut algebras = Vec::new();
    for a in &doc.algebras {
        let s = ring_validate(a.ring.clone()).or_else(|e| invalid(a.line, format!("algebra `{}`: {e}", a.name)))?;
        let map = RingMap::new(ring.clone(), s.clone(), IntMatrix::from_row_vecs(s.rank(), a.map.clone()))
            .or_else(|e| invalid(a.line, format!("algebra `{}` structure map: {e}", a.name)))?;
        algebras.push((a.line, Algebra::new(a.name.clone(), map)));
    }

    let diagram = build_diagram(doc, &ring, algebras)?;

    let mut jobs = Vec::new();
    for j in &doc.jobs {
        let statements: Vec<Statement> = if j.statement == "all" {
            Statement::ALL.to_vec()
        } else {
            vec![j
                .statement
                .parse()
                .or_else(|_| invalid(j.line, format!("unknown statement `{}`", j.statement)))?]
        };
        let mut left = None;
        let mut right = None;
        let mut picked = Vec::new();
        for r in &j.refs {
            if let Some(m) = modules.get(r) {
                let slot = if m.side() == Side::Left { &mut left } else { &mut right };
                if slot.is_some() {
                    return invalid(j.line, format!("two {} modules given", m.side().as_str()));
                }
                *slot = Some((r.clone(), m.clone()));
            } else if let Some(k) = diagram.algebras.iter().position(|a| &a.name == r) {
                picked.push(k);
            } else {
                return invalid(j.line, format!("unresolved reference `{r}`"));
            }
        }
        let (mname, m) = left.unwrap_or_else(|| ("R".into(), free_module(&ring, Side::Left, 1)));
        let (nname, n) = right.unwrap_or_else(|| ("R".into(), free_module(&ring, Side::Right, 1)));
        let dg = if picked.is_empty() { diagram.clone() } else { sub_diagram(&diagram, &picked) };
        let name = format!("{} | N={nname} | M={mname}", ring.name());
        let mut instance = Instance::new(name, m, n, dg).or_else(|e| invalid(j.line, e.to_string()))?;
        instance.left_flat = flat.get(&mname).copied().unwrap_or(false);
        instance.right_flat = flat.get(&nname).copied().unwrap_or(false);
        for statement in statements {
            jobs.push(Job { line: j.line, statement, instance: instance.clone() });
        }
    }
    Ok(Loaded { ring, modules, flat, diagram, jobs })
}

fn build_diagram(doc: &InstanceDoc, ring: &StructureRing, algebras: Vec<(usize, Algebra)>) -> Result<Diagram, LoadError> {
    let (include_default, maps) = match &doc.diagram {
        None => (true, None),
        Some(d) => (d.include_default, Some(&d.maps)),
    };
    let mut dg = if include_default { default_diagram(ring) } else { Diagram::new(ring) };
    let mut declared = Vec::new();
    for (l, a) in algebras {
        if dg.algebras.iter().any(|b| b.name == a.name) {
            return invalid(l, format!("algebra name `{}` clashes with a diagram algebra", a.name));
        }
        declared.push((l, dg.push(a)));
    }
    let find = |dg: &Diagram, name: &str| -> Option<usize> {
        if name == "base" {
            Some(0)
        } else {
            dg.algebras.iter().position(|a| a.name == name)
        }
    };
    match maps {
        None => {
            for (l, k) in declared {
                let f = dg.algebras[k].structure_map.clone();
                dg.connect(0, k, f).or_else(|e| invalid(l, e.to_string()))?;
            }
        }
        Some(maps) => {
            for m in maps {
                let (Some(a), Some(b)) = (find(&dg, &m.from), find(&dg, &m.to)) else {
                    return invalid(m.line, format!("unresolved algebra in `{} -> {}`", m.from, m.to));
                };
                let f = match &m.matrix {
                    None if a == 0 => dg.algebras[b].structure_map.clone(),
                    None => return invalid(m.line, "only maps out of `base` may omit the matrix"),
                    Some(rows) => {
                        let (src, tgt) = (dg.algebras[a].ring.clone(), dg.algebras[b].ring.clone());
                        if rows.len() != src.rank() || rows.iter().any(|r| r.len() != tgt.rank()) {
                            return invalid(m.line, format!("matrix must be {}x{}", src.rank(), tgt.rank()));
                        }
                        RingMap::new(src, tgt.clone(), IntMatrix::from_row_vecs(tgt.rank(), rows.clone()))
                            .or_else(|e| invalid(m.line, e.to_string()))?
                    }
                };
                dg.connect(a, b, f).or_else(|e| invalid(m.line, e.to_string()))?;
            }
        }
    }
    Ok(dg)
}

/// The base together with the chosen algebras and the maps among them.
fn sub_diagram(d: &Diagram, picked: &[usize]) -> Diagram {
    let mut keep: Vec<usize> = vec![0];
    for &k in picked {
        if !keep.contains(&k) {
            keep.push(k);
        }
    }
    let mut out = Diagram::new(&d.base);
    let mut index = BTreeMap::new();
    index.insert(0usize, 0usize);
    for &k in &keep[1..] {
        index.insert(k, out.push(d.algebras[k].clone()));
    }
    for (a, b, f) in &d.maps {
        if let (Some(&x), Some(&y)) = (index.get(a), index.get(b)) {
            out.maps.push((x, y, f.clone()));
        }
    }
    out
}

/// Serializes a ring, modules and a diagram into a document with explicit
/// tables; algebra names are made file-safe.
pub fn document_of(ring: &StructureRing, modules: &[(String, FpModule, bool)], diagram: Option<&Diagram>) -> InstanceDoc {
    use crate::instance_file::{AlgebraDecl, DiagramDecl, MapDecl, ModuleDecl};
    let safe = |s: &str| -> String {
        s.chars().map(|c| if crate::instance_file::valid_name(&c.to_string()) { c } else { '_' }).collect()
    };
    let mut data = ring.data().clone();
    data.name = safe(&data.name);
    let mut taken = std::collections::BTreeSet::new();
    let mods = modules
        .iter()
        .map(|(name, m, flat)| {
            let mut name = safe(name);
            if !taken.insert(name.clone()) {
                name = format!("{name}-{}", m.side().as_str());
                taken.insert(name.clone());
            }
            (name, m, flat)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|(name, m, flat)| ModuleDecl {
            name,
            line: 0,
            side: m.side().as_str().to_string(),
            gens: m.gens(),
            relations: m.relations().to_vec(),
            flat: *flat,
        })
        .collect();
    let mut algebras = Vec::new();
    let mut dg = None;
    if let Some(d) = diagram {
        let names: Vec<String> = d
            .algebras
            .iter()
            .enumerate()
            .map(|(k, a)| if k == 0 { "base".to_string() } else { format!("{}_{k}", safe(&a.name)) })
            .collect();
        for (k, a) in d.algebras.iter().enumerate().skip(1) {
            let mut r = a.ring.data().clone();
            r.name = names[k].clone();
            algebras.push(AlgebraDecl { name: names[k].clone(), line: 0, ring: r, map: a.structure_map.matrix().row_vecs() });
        }
        let maps = d
            .maps
            .iter()
            .map(|(a, b, f)| MapDecl {
                line: 0,
                from: names[*a].clone(),
                to: names[*b].clone(),
                matrix: Some(f.matrix().row_vecs()),
            })
            .collect();
        dg = Some(DiagramDecl { line: 0, include_default: false, maps });
    }
    InstanceDoc { ring: data, ring_line: 0, modules: mods, algebras, diagram: dg, jobs: Vec::new() }
}
