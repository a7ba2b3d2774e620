//! Finitely presented modules, module structures on abelian groups, module
//! maps and Hom groups.
//!
//! A [`ModuleStructure`] is an abelian group with one action matrix per
//! additive generator `e_i` of the ring: `x ↦ e_i·x` for left modules and
//! `x ↦ x·e_i` for right modules. A right `R`-module is literally a left
//! `R^op`-module with the same matrices; [`ModuleStructure::mirror`] performs
//! that change of viewpoint.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::catalog::Diagram;
use crate::linalg::{
    hom_group, vec_mul, FgAbGroup, GroupMap, HomGroup, IntMatrix, LinalgError, Simplification,
};
use crate::ring::{ring_opposite, Algebra, RingMap, StructureRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("action axiom fails for basis pair ({0}, {1})")]
    ActionAxiom(usize, usize),
    #[error("unit does not act as the identity")]
    UnitAction,
    #[error("relation has wrong shape")]
    BadRelation,
    #[error("modules live over different rings or sides")]
    RingMismatch,
    #[error("map is not linear over the ring")]
    NotLinear,
    #[error("naturality square fails for diagram map {0}")]
    Naturality(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// An abelian group with a left or right action of a ring.
#[derive(Clone, Debug)]
pub struct ModuleStructure {
    pub ring: StructureRing,
    pub side: Side,
    pub group: FgAbGroup,
    pub action: Vec<IntMatrix>,
}

impl ModuleStructure {
    pub fn new(ring: StructureRing, side: Side, group: FgAbGroup, action: Vec<IntMatrix>) -> Result<Self, ModuleError> {
        let m = ModuleStructure { ring, side, group, action };
        m.check_axioms()?;
        Ok(m)
    }

    pub fn new_unchecked(ring: StructureRing, side: Side, group: FgAbGroup, action: Vec<IntMatrix>) -> Self {
        ModuleStructure { ring, side, group, action }
    }

    /// The ring acting on itself from the given side.
    pub fn regular(ring: &StructureRing, side: Side) -> Self {
        let action = (0..ring.rank())
            .map(|i| match side {
                Side::Left => ring.left_mult_matrix(&ring.basis(i)),
                Side::Right => ring.right_mult_matrix(&ring.basis(i)),
            })
            .collect();
        ModuleStructure::new_unchecked(ring.clone(), side, ring.additive().clone(), action)
    }

    /// An algebra `S` regarded as a left (or right) module over its base
    /// ring through the structure map.
    pub fn algebra_over_base(a: &Algebra, side: Side) -> Self {
        let s = &a.ring;
        let r = a.base_ring();
        let action = (0..r.rank())
            .map(|i| {
                let img = a.image(&r.basis(i));
                match side {
                    Side::Left => s.left_mult_matrix(&img),
                    Side::Right => s.right_mult_matrix(&img),
                }
            })
            .collect();
        ModuleStructure::new_unchecked(r.clone(), side, s.additive().clone(), action)
    }

    pub fn zero_module(ring: &StructureRing, side: Side) -> Self {
        let g = FgAbGroup::trivial();
        ModuleStructure::new_unchecked(ring.clone(), side, g, vec![IntMatrix::zeros(0, 0); ring.rank()])
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Checks the action axioms exactly.
    pub fn check_axioms(&self) -> Result<(), ModuleError> {
        let r = &self.ring;
        let n = r.rank();
        let k = self.rank();
        if self.action.len() != n || self.action.iter().any(|a| a.rows() != k || a.cols() != k) {
            return Err(ModuleError::BadRelation);
        }
        for (i, a) in self.action.iter().enumerate() {
            if GroupMap::new(self.group.clone(), self.group.clone(), a.clone()).is_err() {
                return Err(ModuleError::ActionAxiom(i, i));
            }
        }
        let same = |a: &IntMatrix, b: &IntMatrix| {
            a.sub(b).row_vecs().iter().all(|row| self.group.is_zero(row))
        };
        for i in 0..n {
            for j in 0..n {
                let composite = match self.side {
                    Side::Left => self.action[j].mul(&self.action[i]),
                    Side::Right => self.action[i].mul(&self.action[j]),
                };
                let expected = self.act_matrix(&r.basis_product(i, j));
                if !same(&composite, &expected) {
                    return Err(ModuleError::ActionAxiom(i, j));
                }
            }
        }
        if !same(&self.act_matrix(&r.one()), &IntMatrix::identity(k)) {
            return Err(ModuleError::UnitAction);
        }
        Ok(())
    }

    /// Matrix of the action of a ring element.
    pub fn act_matrix(&self, r: &[BigInt]) -> IntMatrix {
        let k = self.rank();
        let mut out = IntMatrix::zeros(k, k);
        for (c, a) in r.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&a.scale(c));
            }
        }
        out
    }

    /// `r·x` (left) or `x·r` (right).
    pub fn act(&self, r: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rank()];
        for (c, a) in r.iter().zip(&self.action) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(vec_mul(x, a)) {
                *o += c * v;
            }
        }
        self.group.reduce(&out)
    }

    /// Same module over the opposite ring with the other side.
    pub fn mirror(&self) -> ModuleStructure {
        ModuleStructure::new_unchecked(ring_opposite(&self.ring), self.side.flip(), self.group.clone(), self.action.clone())
    }

    /// Diagonal presentation without trivial generators, plus the change of
    /// coordinates.
    pub fn simplified(&self) -> (ModuleStructure, Simplification) {
        let s = self.group.simplify();
        let action = self.action.iter().map(|a| s.from.mul(a).mul(&s.to)).collect();
        (
            ModuleStructure::new_unchecked(self.ring.clone(), self.side, s.group.clone(), action),
            s,
        )
    }

    pub fn is_diagonal_simplified(&self) -> bool {
        self.group
            .orders()
            .is_some_and(|o| o.iter().all(|d| d != &BigInt::from(1)))
    }

    pub fn compatible(&self, other: &ModuleStructure) -> bool {
        self.side == other.side && self.ring.same_structure(&other.ring)
    }

    /// Restriction of scalars along a ring map `φ: R' → R`.
    pub fn restrict(&self, phi: &RingMap) -> ModuleStructure {
        let action = (0..phi.source().rank())
            .map(|i| self.act_matrix(&phi.apply(&phi.source().basis(i))))
            .collect();
        ModuleStructure::new_unchecked(phi.source().clone(), self.side, self.group.clone(), action)
    }
}

struct FpInner {
    ring: StructureRing,
    side: Side,
    gens: usize,
    relations: Vec<Vec<Vec<BigInt>>>,
    structure: ModuleStructure,
    simple: ModuleStructure,
    simp: Simplification,
}

/// A finitely presented module `R^g / (relations)`; elements are vectors in
/// `R^g` written block by block (`g` blocks of ring coordinates).
#[derive(Clone)]
pub struct FpModule(Arc<FpInner>);

impl std::fmt::Debug for FpModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FpModule({} {} over {}, {} gens, {} rels, {})",
            self.side().as_str(),
            self.0.structure.group,
            self.ring().name(),
            self.gens(),
            self.relations().len(),
            if self.0.structure.group.is_trivial() { "zero" } else { "nonzero" }
        )
    }
}

pub fn module_from_presentation(
    ring: &StructureRing,
    side: Side,
    gens: usize,
    relations: Vec<Vec<Vec<BigInt>>>,
) -> Result<FpModule, ModuleError> {
    let n = ring.rank();
    if relations.iter().any(|rel| rel.len() != gens || rel.iter().any(|r| r.len() != n)) {
        return Err(ModuleError::BadRelation);
    }
    let k = gens * n;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for a in 0..gens {
        for (i, d) in ring.orders().iter().enumerate() {
            if !d.is_zero() {
                let mut v = vec![BigInt::zero(); k];
                v[a * n + i] = d.clone();
                rows.push(v);
            }
        }
    }
    for rel in &relations {
        for i in 0..n {
            let e = ring.basis(i);
            let mut v = Vec::with_capacity(k);
            for r in rel {
                v.extend(match side {
                    Side::Left => ring.mul(&e, r),
                    Side::Right => ring.mul(r, &e),
                });
            }
            rows.push(v);
        }
    }
    let group = FgAbGroup::from_presentation(k, &IntMatrix::from_row_vecs(k, rows))?;
    let action = (0..n)
        .map(|i| {
            let e = ring.basis(i);
            let block = match side {
                Side::Left => ring.left_mult_matrix(&e),
                Side::Right => ring.right_mult_matrix(&e),
            };
            block_diagonal(&block, gens)
        })
        .collect();
    let structure = ModuleStructure::new(ring.clone(), side, group, action)?;
    let (simple, simp) = structure.simplified();
    Ok(FpModule(Arc::new(FpInner {
        ring: ring.clone(),
        side,
        gens,
        relations,
        structure,
        simple,
        simp,
    })))
}

/// Free module of rank `g`.
pub fn free_module(ring: &StructureRing, side: Side, g: usize) -> FpModule {
    module_from_presentation(ring, side, g, Vec::new()).expect("free modules are valid")
}

pub(crate) fn block_diagonal(block: &IntMatrix, copies: usize) -> IntMatrix {
    let (r, c) = (block.rows(), block.cols());
    let mut out = IntMatrix::zeros(r * copies, c * copies);
    for a in 0..copies {
        for i in 0..r {
            for j in 0..c {
                out[(a * r + i, a * c + j)] = block[(i, j)].clone();
            }
        }
    }
    out
}

impl FpModule {
    pub fn ring(&self) -> &StructureRing {
        &self.0.ring
    }

    pub fn side(&self) -> Side {
        self.0.side
    }

    pub fn gens(&self) -> usize {
        self.0.gens
    }

    pub fn relations(&self) -> &[Vec<Vec<BigInt>>] {
        &self.0.relations
    }

    /// Underlying group on ambient coordinates `R^g`.
    pub fn underlying(&self) -> &FgAbGroup {
        &self.0.structure.group
    }

    /// Structure on ambient coordinates.
    pub fn structure(&self) -> &ModuleStructure {
        &self.0.structure
    }

    /// Structure on simplified (diagonal) coordinates.
    pub fn simple(&self) -> &ModuleStructure {
        &self.0.simple
    }

    pub fn simplification(&self) -> &Simplification {
        &self.0.simp
    }

    pub fn ambient_rank(&self) -> usize {
        self.gens() * self.ring().rank()
    }

    /// Element with ring coefficient `r` in generator slot `a`.
    pub fn element(&self, coeffs: &[Vec<BigInt>]) -> Vec<BigInt> {
        let v: Vec<BigInt> = coeffs.iter().flatten().cloned().collect();
        self.underlying().reduce(&v)
    }

    pub fn generator(&self, a: usize) -> Vec<BigInt> {
        let n = self.ring().rank();
        let mut v = vec![BigInt::zero(); self.ambient_rank()];
        for (i, u) in self.ring().one().into_iter().enumerate() {
            v[a * n + i] = u;
        }
        v
    }

    /// Ring coefficient of generator slot `a` in an ambient vector.
    pub fn block<'a>(&self, x: &'a [BigInt], a: usize) -> &'a [BigInt] {
        let n = self.ring().rank();
        &x[a * n..(a + 1) * n]
    }

    pub fn act(&self, r: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        self.0.structure.act(r, x)
    }

    pub fn is_zero_module(&self) -> bool {
        self.underlying().is_trivial()
    }
}

/// `S ⊗_R M` (left modules) or `M ⊗_R S` (right modules) as a module over
/// `S`, presented by the same generators with relations pushed through the
/// structure map.
pub fn base_change(m: &FpModule, a: &Algebra) -> Result<FpModule, ModuleError> {
    if !m.ring().same_structure(a.base_ring()) {
        return Err(ModuleError::RingMismatch);
    }
    let rels = m
        .relations()
        .iter()
        .map(|rel| rel.iter().map(|r| a.image(r)).collect())
        .collect();
    module_from_presentation(&a.ring, m.side(), m.gens(), rels)
}

/// The map `S ⊗ M → T ⊗ M` induced by an algebra map `φ: S → T`, on
/// ambient coordinates of the two base changes.
pub fn base_change_map(ms: &FpModule, mt: &FpModule, phi: &RingMap) -> GroupMap {
    GroupMap::new(
        ms.underlying().clone(),
        mt.underlying().clone(),
        block_diagonal(phi.matrix(), ms.gens()),
    )
    .expect("ring maps induce well-defined maps of base changes")
}

/// A module homomorphism between modules on the same side over the same
/// ring, acting on ambient coordinates.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: ModuleStructure,
    pub target: ModuleStructure,
    pub map: GroupMap,
}

impl ModuleMap {
    pub fn new(source: ModuleStructure, target: ModuleStructure, matrix: IntMatrix) -> Result<Self, ModuleError> {
        if !source.compatible(&target) {
            return Err(ModuleError::RingMismatch);
        }
        let map = GroupMap::new(source.group.clone(), target.group.clone(), matrix)?;
        let f = ModuleMap { source, target, map };
        for i in 0..f.source.ring.rank() {
            let lhs = f.source.action[i].mul(f.map.matrix());
            let rhs = f.map.matrix().mul(&f.target.action[i]);
            if !lhs.sub(&rhs).row_vecs().iter().all(|r| f.target.group.is_zero(r)) {
                return Err(ModuleError::NotLinear);
            }
        }
        Ok(f)
    }

    /// The map of finitely presented modules sending generator `a` to
    /// `images[a]` (ambient coordinates of the target).
    pub fn from_generator_images(m: &FpModule, target: &ModuleStructure, images: &[Vec<BigInt>]) -> Result<Self, ModuleError> {
        if images.len() != m.gens() {
            return Err(ModuleError::BadRelation);
        }
        let n = m.ring().rank();
        let mut rows = Vec::with_capacity(m.ambient_rank());
        for img in images {
            for i in 0..n {
                rows.push(target.act(&m.ring().basis(i), img));
            }
        }
        ModuleMap::new(m.structure().clone(), target.clone(), IntMatrix::from_row_vecs(target.rank(), rows))
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.map.apply(x)
    }
}

/// `Hom_R(M, P)` as the subgroup of `Hom_Z(M, P)` cut out by linearity.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub group: FgAbGroup,
    pub source: ModuleStructure,
    pub target: ModuleStructure,
    zhom: HomGroup,
    /// `group -> zhom.group`
    inclusion: GroupMap,
}

impl HomModule {
    /// Matrix (ambient source x ambient target) of the homomorphism `f`.
    pub fn matrix_of(&self, f: &[BigInt]) -> IntMatrix {
        self.zhom.matrix_of(&self.inclusion.apply(f))
    }

    pub fn evaluate(&self, f: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        self.zhom.evaluate(&self.inclusion.apply(f), x)
    }

    /// Coordinates of a linear map given by its matrix.
    pub fn from_matrix(&self, x: &IntMatrix) -> Result<Vec<BigInt>, ModuleError> {
        let z = self.zhom.from_matrix(x)?;
        self.inclusion.preimage(&z).ok_or(ModuleError::NotLinear)
    }

    pub fn to_map(&self, f: &[BigInt]) -> ModuleMap {
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            map: GroupMap::new(self.source.group.clone(), self.target.group.clone(), self.matrix_of(f))
                .expect("Hom elements are well defined"),
        }
    }
}

/// `Hom_R(M, P)` through the linearity conditions `f(e_i x) = e_i f(x)`.
pub fn hom_r(m: &ModuleStructure, p: &ModuleStructure) -> Result<HomModule, ModuleError> {
    if !m.compatible(p) {
        return Err(ModuleError::RingMismatch);
    }
    let zhom = hom_group(&m.group, &p.group);
    let n = m.ring.rank();
    let k = m.rank();
    let blocks = n * k;
    let target = FgAbGroup::direct_sum(&vec![p.group.clone(); blocks]);
    let constraint = |f: &[BigInt]| -> Vec<BigInt> {
        let x = zhom.matrix_of(f);
        let mut out = Vec::with_capacity(blocks * p.rank());
        for i in 0..n {
            let d = m.action[i].mul(&x).sub(&x.mul(&p.action[i]));
            for row in d.row_vecs() {
                out.extend(row);
            }
        }
        out
    };
    let rows: Vec<Vec<BigInt>> = (0..zhom.group.rank())
        .map(|t| constraint(&zhom.group.generator(t)))
        .collect();
    let phi = GroupMap::new(zhom.group.clone(), target, IntMatrix::from_row_vecs(blocks * p.rank(), rows))?;
    let (group, inclusion) = phi.kernel().as_group();
    Ok(HomModule {
        group,
        source: m.clone(),
        target: p.clone(),
        zhom,
        inclusion,
    })
}

/// `Hom_R(M, P)` for finitely presented `M` as tuples of generator images
/// killed by the relations: an independent route to the same group.
pub fn hom_by_generators(m: &FpModule, p: &ModuleStructure) -> Result<(FgAbGroup, GroupMap), ModuleError> {
    if !m.structure().compatible(p) {
        return Err(ModuleError::RingMismatch);
    }
    let g = m.gens();
    let src = FgAbGroup::direct_sum(&vec![p.group.clone(); g]);
    let nrel = m.relations().len();
    let tgt = FgAbGroup::direct_sum(&vec![p.group.clone(); nrel]);
    let k = p.rank();
    let mut mat = IntMatrix::zeros(g * k, nrel * k);
    for (j, rel) in m.relations().iter().enumerate() {
        for (a, r) in rel.iter().enumerate() {
            let act = p.act_matrix(r);
            for s in 0..k {
                for t in 0..k {
                    mat[(a * k + s, j * k + t)] = act[(s, t)].clone();
                }
            }
        }
    }
    let phi = GroupMap::new(src, tgt, mat)?;
    Ok(phi.kernel().as_group())
}

/// `Hom_R(M, S)` with its right `S`-module structure `(f·s)(m) = f(m)·s`.
#[derive(Clone, Debug)]
pub struct DualValue {
    pub hom: HomModule,
    pub algebra: Algebra,
    /// Right module over `S` on the coordinates of `hom.group`.
    pub structure: ModuleStructure,
}

impl DualValue {
    pub fn evaluate(&self, f: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        self.hom.evaluate(f, x)
    }
}

pub fn dual_at(m: &FpModule, a: &Algebra) -> Result<DualValue, ModuleError> {
    if m.side() != Side::Left || !m.ring().same_structure(a.base_ring()) {
        return Err(ModuleError::RingMismatch);
    }
    let target = ModuleStructure::algebra_over_base(a, Side::Left);
    let hom = hom_r(m.structure(), &target)?;
    let s = &a.ring;
    let action = (0..s.rank())
        .map(|j| {
            let right = s.right_mult_matrix(&s.basis(j));
            let rows = (0..hom.group.rank())
                .map(|t| {
                    let x = hom.matrix_of(&hom.group.generator(t)).mul(&right);
                    hom.from_matrix(&x).expect("f·s is R-linear")
                })
                .collect();
            IntMatrix::from_row_vecs(hom.group.rank(), rows)
        })
        .collect();
    let structure = ModuleStructure::new(s.clone(), Side::Right, hom.group.clone(), action)?;
    Ok(DualValue {
        hom,
        algebra: a.clone(),
        structure,
    })
}

/// The family `id_S ⊗ w` over every algebra of a diagram, with naturality
/// checked along every diagram map.
#[derive(Clone, Debug)]
pub struct QcFamily {
    pub components: Vec<GroupMap>,
    pub sources: Vec<FpModule>,
    pub targets: Vec<FpModule>,
}

pub fn qc_hom_from_linear(
    m: &FpModule,
    n: &FpModule,
    images: &[Vec<BigInt>],
    diagram: &Diagram,
) -> Result<QcFamily, ModuleError> {
    ModuleMap::from_generator_images(m, n.structure(), images)?;
    let nr = n.ring().rank();
    let mut components = Vec::new();
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for alg in &diagram.algebras {
        let ms = base_change(m, alg)?;
        let ns = base_change(n, alg)?;
        let pushed: Vec<Vec<BigInt>> = images
            .iter()
            .map(|img| {
                (0..n.gens())
                    .flat_map(|b| alg.image(&img[b * nr..(b + 1) * nr]))
                    .collect()
            })
            .collect();
        let f = ModuleMap::from_generator_images(&ms, ns.structure(), &pushed)?;
        components.push(f.map);
        sources.push(ms);
        targets.push(ns);
    }
    for (idx, (from, to, phi)) in diagram.maps.iter().enumerate() {
        let left = base_change_map(&sources[*from], &sources[*to], phi).then(&components[*to])?;
        let right = components[*from].then(&base_change_map(&targets[*from], &targets[*to], phi))?;
        if !left.equals(&right) {
            return Err(ModuleError::Naturality(idx));
        }
    }
    Ok(QcFamily {
        components,
        sources,
        targets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, default_diagram, integers, matrix};
    use crate::linalg::ints;

    fn z_mod(n: i64) -> FpModule {
        let z = integers();
        module_from_presentation(&z, Side::Left, 1, vec![vec![ints(&[n])]]).unwrap()
    }

    #[test]
    fn presentations() {
        assert_eq!(z_mod(2).underlying().invariant_factors(), &ints(&[2])[..]);
        let m = matrix(2, 2);
        let free = free_module(&m, Side::Left, 1);
        assert!(free.underlying().is_isomorphic(m.additive()));
        let cols = module_from_presentation(&m, Side::Left, 1, vec![vec![m.basis(1)], vec![m.basis(3)]]).unwrap();
        assert_eq!(cols.underlying().order(), Some(BigInt::from(4)));
    }

    #[test]
    fn base_change_examples() {
        let z4 = Algebra::new("Z/4", RingMap::from_integers(&cyclic(4)));
        let m = base_change(&z_mod(2), &z4).unwrap();
        assert_eq!(m.underlying().invariant_factors(), &ints(&[2])[..]);
        let f = base_change(&free_module(&integers(), Side::Left, 1), &z4).unwrap();
        assert!(f.underlying().is_isomorphic(&FgAbGroup::cyclic(4)));
    }

    #[test]
    fn hom_examples() {
        let z = integers();
        let zz = ModuleStructure::regular(&z, Side::Left);
        assert!(hom_r(z_mod(2).structure(), &zz).unwrap().group.is_trivial());
        let z4 = z_mod(4);
        let h = hom_r(z_mod(2).structure(), z4.structure()).unwrap();
        assert_eq!(h.group.invariant_factors(), &ints(&[2])[..]);
        let (g, _) = hom_by_generators(&z_mod(2), z4.structure()).unwrap();
        assert!(g.is_isomorphic(&h.group));
        let m = matrix(2, 2);
        let free = free_module(&m, Side::Left, 1);
        let cols = module_from_presentation(&m, Side::Left, 1, vec![vec![m.basis(1)], vec![m.basis(3)]]).unwrap();
        let h = hom_r(free.structure(), cols.structure()).unwrap();
        assert!(h.group.is_isomorphic(cols.underlying()));
    }

    #[test]
    fn dual_examples() {
        let z = integers();
        let d = dual_at(&z_mod(2), &Algebra::base(&z)).unwrap();
        assert!(d.hom.group.is_trivial());
        let z4 = Algebra::new("Z/4", RingMap::from_integers(&cyclic(4)));
        let d = dual_at(&z_mod(2), &z4).unwrap();
        assert_eq!(d.hom.group.invariant_factors(), &ints(&[2])[..]);
        let m = matrix(2, 2);
        let free = free_module(&m, Side::Left, 1);
        let d = dual_at(&free, &Algebra::base(&m)).unwrap();
        assert!(d.hom.group.is_isomorphic(m.additive()));
    }

    #[test]
    fn qc_family_of_doubling() {
        let z = integers();
        let free = free_module(&z, Side::Left, 1);
        let diagram = default_diagram(&z);
        let fam = qc_hom_from_linear(&free, &free, &[ints(&[2])], &diagram).unwrap();
        let z4 = diagram.algebras.iter().position(|a| a.ring.orders() == ints(&[2]).as_slice());
        assert!(z4.is_some());
        assert_eq!(fam.components[0].matrix(), &IntMatrix::from_i64(&[&[2]]));
    }
}
