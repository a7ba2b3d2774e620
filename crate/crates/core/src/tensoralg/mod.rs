//! Degree-truncated tensor algebras, the maps `h_x`, `q1`, `q2`, `π_S`, and
//! the extension `F̄` computed straight from its kernel definition.

mod extension;
mod words;

pub use extension::*;
pub use words::*;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::{FgAbGroup, GroupMap, IntMatrix};
use crate::module::{module_from_presentation, FpModule, ModuleError, Side};
use crate::ring::StructureRing;

#[derive(Debug, Error)]
pub enum TensorAlgError {
    #[error("degree cap {cap} is too small, need at least {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("expected a {0} module")]
    WrongSide(&'static str),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `R⟨M⟩` up to degree `degree_cap`; component `n` is `M^{⊗n} ⊗_Z R`.
#[derive(Clone, Debug)]
pub struct TruncTensorAlgebra {
    pub ring: StructureRing,
    pub module: FpModule,
    pub degree_cap: usize,
    pub components: Vec<FgAbGroup>,
    pub words: WordAlgebra,
}

pub fn trunc_algebra(ring: &StructureRing, m: &FpModule, d: usize) -> Result<TruncTensorAlgebra, TensorAlgError> {
    if d < 1 {
        return Err(TensorAlgError::CapTooSmall { cap: d, needed: 1 });
    }
    if m.side() != Side::Left {
        return Err(TensorAlgError::WrongSide("left"));
    }
    if !m.ring().same_structure(ring) {
        return Err(ModuleError::RingMismatch.into());
    }
    let words = WordAlgebra::new(ring, m.structure(), d);
    let components = (0..=d)
        .map(|n| words.layout(&Pattern::m_power(n)).group())
        .collect();
    Ok(TruncTensorAlgebra {
        ring: ring.clone(),
        module: m.clone(),
        degree_cap: d,
        components,
        words,
    })
}

impl TruncTensorAlgebra {
    pub fn layout(&self, n: usize) -> DiagTensor {
        self.words.layout(&Pattern::m_power(n))
    }

    /// Product of basis elements of components `p` and `q` as a vector of
    /// component `p + q`; `None` beyond the cap.
    pub fn product(&self, p: usize, i: usize, q: usize, j: usize) -> Option<Vec<BigInt>> {
        let prod = self
            .words
            .basis_product(&Pattern::m_power(p), i, &Pattern::m_power(q), j)?;
        let mut v = vec![BigInt::from(0); self.layout(p + q).size()];
        if let Some(s) = prod.get(&Pattern::m_power(p + q)) {
            for (k, c) in s {
                v[*k] = c.clone();
            }
        }
        Some(v)
    }

    /// Associativity on basis triples with total degree within the cap.
    /// Every `stride`-th triple is tested (1 = exhaustive).
    pub fn check_associativity(&self, stride: usize) -> bool {
        let stride = stride.max(1);
        let mut count = 0usize;
        let d = self.degree_cap;
        for p in 0..=d {
            for q in 0..=d - p {
                for r in 0..=d - p - q {
                    let (sp, sq, sr) = (self.layout(p).size(), self.layout(q).size(), self.layout(r).size());
                    for i in 0..sp {
                        for j in 0..sq {
                            for k in 0..sr {
                                count += 1;
                                if !count.is_multiple_of(stride) {
                                    continue;
                                }
                                let (pp, pq, pr) = (Pattern::m_power(p), Pattern::m_power(q), Pattern::m_power(r));
                                let a = self.words.basis_word(&pp, i);
                                let b = self.words.basis_word(&pq, j);
                                let c = self.words.basis_word(&pr, k);
                                let left = self.words.mul(&self.words.mul(&a, &b).unwrap(), &c).unwrap();
                                let right = self.words.mul(&a, &self.words.mul(&b, &c).unwrap()).unwrap();
                                if !elems_equal(&self.words, &left, &right) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Number of basis triples within the cap.
    pub fn triple_count(&self) -> usize {
        let d = self.degree_cap;
        let mut total = 0;
        for p in 0..=d {
            for q in 0..=d - p {
                for r in 0..=d - p - q {
                    total += self.layout(p).size() * self.layout(q).size() * self.layout(r).size();
                }
            }
        }
        total
    }
}

/// `M ⊕ Rx` with its structure maps.
#[derive(Clone, Debug)]
pub struct AdjoinedX {
    pub module: FpModule,
    /// Ambient coordinates of `x`.
    pub x: Vec<BigInt>,
    pub inclusion: GroupMap,
    pub projection: GroupMap,
    /// Projection onto the `Rx` summand, landing in the additive group of `R`.
    pub x_coordinate: GroupMap,
}

pub fn adjoin_x(m: &FpModule) -> Result<AdjoinedX, TensorAlgError> {
    let ring = m.ring();
    let n = ring.rank();
    let g = m.gens();
    let relations = m
        .relations()
        .iter()
        .map(|rel| {
            let mut r = rel.clone();
            r.push(vec![BigInt::from(0); n]);
            r
        })
        .collect();
    let module = module_from_presentation(ring, m.side(), g + 1, relations)?;
    let k = g * n;
    let mut inc = IntMatrix::zeros(k, k + n);
    let mut proj = IntMatrix::zeros(k + n, k);
    for i in 0..k {
        inc[(i, i)] = BigInt::from(1);
        proj[(i, i)] = BigInt::from(1);
    }
    let mut xc = IntMatrix::zeros(k + n, n);
    for i in 0..n {
        xc[(k + i, i)] = BigInt::from(1);
    }
    let radd = ring.additive().clone();
    Ok(AdjoinedX {
        x: module.generator(g),
        inclusion: GroupMap::new(m.underlying().clone(), module.underlying().clone(), inc).map_err(ModuleError::from)?,
        projection: GroupMap::new(module.underlying().clone(), m.underlying().clone(), proj).map_err(ModuleError::from)?,
        x_coordinate: GroupMap::new(module.underlying().clone(), radd, xc).map_err(ModuleError::from)?,
        module,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeShift {
    /// `n ↦ 2n`
    Double,
    /// `n ↦ n + 1`
    Successor,
    /// `n ↦ n + (number of M-letters)`
    PlusMLetters,
}

impl DegreeShift {
    pub fn target_degree(self, p: &Pattern) -> usize {
        match self {
            DegreeShift::Double => 2 * p.degree(),
            DegreeShift::Successor => p.degree() + 1,
            DegreeShift::PlusMLetters => p.degree() + p.m_letters(),
        }
    }
}

/// Images of every basis word of the source components.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub shift: DegreeShift,
    pub validity_cap: usize,
    pub images: BTreeMap<Pattern, Vec<WordElem>>,
}

impl GradedMap {
    pub fn image(&self, p: &Pattern, i: usize) -> Option<&WordElem> {
        self.images.get(p).and_then(|v| v.get(i))
    }

    /// Every image lies in the degree prescribed by the shift.
    pub fn degrees_consistent(&self) -> bool {
        self.images.iter().all(|(p, imgs)| {
            let want = self.shift.target_degree(p);
            imgs.iter().all(|e| e.keys().all(|q| q.degree() == want))
        })
    }
}

/// `h_x` on all words of degree `≤ d` in `R⟨M ⊕ Rx⟩`.
pub fn map_hx(alg: &WordAlgebra, d: usize) -> Result<GradedMap, TensorAlgError> {
    if alg.cap < 2 * d {
        return Err(TensorAlgError::CapTooSmall { cap: alg.cap, needed: 2 * d });
    }
    let mut images = BTreeMap::new();
    for p in WordAlgebra::all_patterns(d) {
        let size = alg.layout(&p).size();
        let imgs = (0..size)
            .map(|i| alg.hx_letterwise(&p, i).expect("cap checked"))
            .collect();
        images.insert(p, imgs);
    }
    Ok(GradedMap {
        shift: DegreeShift::PlusMLetters,
        validity_cap: d,
        images,
    })
}

#[cfg(test)]
mod tests;
