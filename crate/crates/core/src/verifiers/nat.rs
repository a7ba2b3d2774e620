use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::catalog::Diagram;
use crate::linalg::{unit_vec, vec_mul, FgAbGroup, GroupMap, IntMatrix};
use crate::module::{dual_at, DualValue, FpModule, ModuleStructure, Side};
use crate::ring::{ring_validate, Algebra, RingData, RingMap};
use crate::tensoralg::t0_right_mult;
use crate::tensorhom::{kernel_extension, tensor_over_r, HypothesisFork, TensorGroup};

use super::{Instance, Statement, VerificationReport, VerifyError};

/// A family of maps `Hom_R(M, S) → N ⊗_R S`, one per diagram algebra.
#[derive(Clone, Debug)]
pub struct NaturalTransformation {
    pub source: String,
    pub target: String,
    pub components: Vec<GroupMap>,
    /// Every naturality square commutes.
    pub natural: bool,
    /// Every component is right `S`-linear.
    pub linear: bool,
}

/// Precomputed duals and tensor products over a diagram for a pair
/// `(N, M)`.
#[derive(Clone, Debug)]
pub struct NatContext {
    pub fork: HypothesisFork,
    pub diagram: Diagram,
    pub duals: Vec<DualValue>,
    pub tensors: Vec<TensorGroup>,
}

impl NatContext {
    pub fn new(n: &FpModule, m: &FpModule, diagram: &Diagram) -> Result<Self, VerifyError> {
        let (_, _, fork) = kernel_extension(n.structure(), m.structure())?;
        let mut duals = Vec::new();
        let mut tensors = Vec::new();
        for a in &diagram.algebras {
            duals.push(dual_at(m, a)?);
            let left = ModuleStructure::algebra_over_base(a, Side::Left);
            tensors.push(tensor_over_r(n.structure(), &left)?);
        }
        Ok(NatContext {
            fork,
            diagram: diagram.clone(),
            duals,
            tensors,
        })
    }

    /// `f ↦ Σ n_j ⊗ f(m_j)·ρ(r_j)` for `w = Σ n_j ⊗ m_j ⊗ r_j` in `t1`.
    pub fn component(&self, w: &[BigInt], s: usize) -> GroupMap {
        let d = &self.duals[s];
        let ts = &self.tensors[s];
        let alg = &self.diagram.algebras[s];
        let t = &self.fork.tensor;
        let nr = self.fork.maps.ring_rank;
        let hg = &d.hom.group;
        let rows: Vec<Vec<BigInt>> = (0..hg.rank())
            .map(|h| {
                let f = hg.generator(h);
                let mut acc = ts.group.zero();
                for (idx, wv) in w.iter().enumerate() {
                    if wv.is_zero() {
                        continue;
                    }
                    let (a, l) = (idx / nr, idx % nr);
                    let rho = alg.image(&alg.base_ring().basis(l));
                    for (b, c, coef) in t.expansion(a) {
                        let n_amb = t.left_simp.from.row(b).to_vec();
                        let m_amb = t.right_simp.from.row(c).to_vec();
                        let y = alg.ring.mul(&d.evaluate(&f, &m_amb), &rho);
                        let k = wv * coef;
                        for (o, v) in acc.iter_mut().zip(ts.pure(&n_amb, &y)) {
                            *o += &k * v;
                        }
                    }
                }
                ts.group.reduce(&acc)
            })
            .collect();
        GroupMap::new(hg.clone(), ts.group.clone(), IntMatrix::from_row_vecs(ts.group.rank(), rows))
            .expect("components are well defined")
    }

    /// `f ↦ φ ∘ f` from `Hom_R(M, S_i)` to `Hom_R(M, S_j)`.
    fn postcompose(&self, i: usize, j: usize, phi: &RingMap) -> Result<GroupMap, VerifyError> {
        let (di, dj) = (&self.duals[i], &self.duals[j]);
        let rows = (0..di.hom.group.rank())
            .map(|h| {
                let x = di.hom.matrix_of(&di.hom.group.generator(h)).mul(phi.matrix());
                dj.hom.from_matrix(&x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupMap::new(
            di.hom.group.clone(),
            dj.hom.group.clone(),
            IntMatrix::from_row_vecs(dj.hom.group.rank(), rows),
        )?)
    }

    /// `id_N ⊗ φ`.
    fn tensor_map(&self, i: usize, j: usize, phi: &RingMap) -> Result<GroupMap, VerifyError> {
        let (ti, tj) = (&self.tensors[i], &self.tensors[j]);
        let rows = (0..ti.rank())
            .map(|a| {
                let mut acc = tj.group.zero();
                for (b, c, coef) in ti.expansion(a) {
                    let n_amb = ti.left_simp.from.row(b).to_vec();
                    let y = phi.apply(ti.right_simp.from.row(c));
                    for (o, v) in acc.iter_mut().zip(tj.pure(&n_amb, &y)) {
                        *o += &coef * v;
                    }
                }
                tj.group.reduce(&acc)
            })
            .collect();
        Ok(GroupMap::new(ti.group.clone(), tj.group.clone(), IntMatrix::from_row_vecs(tj.rank(), rows))?)
    }

    pub fn naturality(&self, comps: &[GroupMap]) -> Result<bool, VerifyError> {
        for (i, j, phi) in &self.diagram.maps {
            let lhs = comps[*i].then(&self.tensor_map(*i, *j, phi)?)?;
            let rhs = self.postcompose(*i, *j, phi)?.then(&comps[*j])?;
            if !lhs.equals(&rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn linearity(&self, comps: &[GroupMap]) -> Result<bool, VerifyError> {
        for (s, comp) in comps.iter().enumerate() {
            let alg = &self.diagram.algebras[s];
            let d = &self.duals[s];
            for (b, act) in d.structure.action.iter().enumerate() {
                let on_hom = GroupMap::new(d.hom.group.clone(), d.hom.group.clone(), act.clone())?;
                let on_t = t0_right_mult(&self.tensors[s], alg, &alg.ring.basis(b));
                if !on_hom.then(comp)?.equals(&comp.then(&on_t)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn transformation(&self, w: &[BigInt]) -> Result<NaturalTransformation, VerifyError> {
        let components: Vec<GroupMap> = (0..self.diagram.algebras.len()).map(|s| self.component(w, s)).collect();
        Ok(NaturalTransformation {
            source: "M*".into(),
            target: "N".into(),
            natural: self.naturality(&components)?,
            linear: self.linearity(&components)?,
            components,
        })
    }

    /// `w ↦ (component_S(w)(f))` over all algebras `S` and generators `f`,
    /// on a group mapping into `t1`.
    pub fn evaluation_map(&self, group: &FgAbGroup, incl: &GroupMap) -> Result<GroupMap, VerifyError> {
        let mut targets = Vec::new();
        for (s, ts) in self.tensors.iter().enumerate() {
            for _ in 0..self.duals[s].hom.group.rank() {
                targets.push(ts.group.clone());
            }
        }
        let target = FgAbGroup::direct_sum(&targets);
        let rows: Vec<Vec<BigInt>> = (0..group.rank())
            .map(|k| {
                let w = incl.apply(&group.generator(k));
                let mut row = Vec::with_capacity(target.rank());
                for s in 0..self.tensors.len() {
                    let c = self.component(&w, s);
                    for r in c.matrix().row_vecs() {
                        row.extend(r);
                    }
                }
                row
            })
            .collect();
        Ok(GroupMap::new(group.clone(), target.clone(), IntMatrix::from_row_vecs(target.rank(), rows))?)
    }
}

/// Natural transformation attached to an element `w` of `Ker(p1 − p2)`.
pub fn kernel_element_to_nat(w: &[BigInt], inst: &Instance) -> Result<NaturalTransformation, VerifyError> {
    let ctx = NatContext::new(&inst.right, &inst.left, &inst.diagram)?;
    let fork = &ctx.fork;
    if !fork.maps.t2.is_zero(&fork.maps.difference().apply(w)) {
        return Err(VerifyError::Instance("element is not in the kernel".into()));
    }
    ctx.transformation(w)
}

/// The square-zero extension `R ⊕ (M ⊗_Z R)` with
/// `(a + x)(b + y) = ab + a·y + x·b`. The map `m ↦ m ⊗ 1` is `R`-linear
/// and universal among maps out of `M` into algebras of this shape.
pub fn square_zero_algebra(m: &FpModule) -> Result<Algebra, VerifyError> {
    let ring = m.ring();
    let (ms, _) = m.structure().simplified();
    let n = ring.rank();
    let k = ms.rank();
    let mo = ms.group.orders().unwrap().to_vec();
    let ro = ring.orders();
    let size = n + k * n;
    let x = |b: usize, l: usize| n + b * n + l;
    let mut orders: Vec<BigInt> = ro.to_vec();
    for b in 0..k {
        for l in 0..n {
            orders.push(mo[b].gcd(&ro[l]));
        }
    }
    let mut unit = ring.one();
    unit.resize(size, BigInt::zero());
    let mut data = RingData::new(format!("{}+{}", ring.name(), "M"), orders, unit);
    for i in 0..n {
        for j in 0..n {
            for (kk, c) in ring.basis_product(i, j).into_iter().enumerate() {
                data.set(i, j, kk, c);
            }
        }
        for b in 0..k {
            let row = ms.action[i].row(b);
            for l in 0..n {
                for (b2, c) in row.iter().enumerate() {
                    data.set(i, x(b, l), x(b2, l), c.clone());
                }
            }
        }
    }
    for b in 0..k {
        for l in 0..n {
            for j in 0..n {
                for (kk, c) in ring.basis_product(l, j).into_iter().enumerate() {
                    data.set(x(b, l), j, x(b, kk), c);
                }
            }
        }
    }
    let s = ring_validate(data)?;
    let inc = IntMatrix::identity(n).hstack(&IntMatrix::zeros(n, k * n));
    let map = RingMap::new(ring.clone(), s, inc)?;
    Ok(Algebra::new(map.target().name().to_string(), map))
}

/// The diagram extended by the square-zero algebra of `M`, with its
/// inclusion and projection.
pub fn augmented_diagram(m: &FpModule, diagram: &Diagram) -> Result<Diagram, VerifyError> {
    let mut dg = diagram.clone();
    let sz = square_zero_algebra(m)?;
    let n = m.ring().rank();
    let size = sz.ring.rank();
    let proj = IntMatrix::identity(n).vstack(&IntMatrix::zeros(size - n, n));
    let proj = RingMap::new(sz.ring.clone(), m.ring().clone(), proj)?;
    let f = sz.structure_map.clone();
    let base = dg
        .algebras
        .iter()
        .position(|a| a.ring.same_structure(&dg.base))
        .ok_or_else(|| VerifyError::Instance("diagram must contain the base ring".into()))?;
    let idx = dg.push(sz);
    let f = RingMap::new(dg.algebras[base].ring.clone(), dg.algebras[idx].ring.clone(), f.matrix().clone())?;
    dg.connect(base, idx, f)?;
    let proj = RingMap::new(dg.algebras[idx].ring.clone(), dg.algebras[base].ring.clone(), proj.matrix().clone())?;
    dg.connect(idx, base, proj)?;
    Ok(dg)
}

/// Naturality, linearity, additivity, the classical pairing and
/// injectivity for every generator of `Ker(p1 − p2)`.
pub fn verify_nat_harness(inst: &Instance) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::NatTransform, &inst.name);
    let ctx = NatContext::new(&inst.right, &inst.left, &inst.diagram)?;
    rep.check(
        "diagram_size",
        inst.diagram.algebras.len() >= 3 && inst.diagram.maps.len() >= 4 && inst.diagram.contains_base(),
    );
    let kernel = ctx.fork.maps.kernel();
    let (kg, kincl) = kernel.as_group();
    rep.group("extension", &kg);
    let gens: Vec<Vec<BigInt>> = (0..kg.rank()).map(|k| kincl.apply(&kg.generator(k))).collect();
    let mut comps = Vec::new();
    for w in &gens {
        let t = ctx.transformation(w)?;
        rep.check("natural", t.natural);
        rep.check("linear", t.linear);
        comps.push(t.components);
    }
    let zero = ctx.transformation(&ctx.fork.t1().zero())?;
    rep.check("zero_to_zero", zero.components.iter().all(GroupMap::is_zero_map));
    for a in 0..gens.len().min(4) {
        for b in a..gens.len().min(4) {
            let sum: Vec<BigInt> = gens[a].iter().zip(&gens[b]).map(|(x, y)| x + y).collect();
            let ok = (0..inst.diagram.algebras.len()).all(|s| {
                let lhs = ctx.component(&sum, s);
                let rhs = comps[a][s].add(&comps[b][s]).expect("parallel");
                lhs.equals(&rhs)
            });
            rep.check("additive", ok);
        }
    }
    rep.check("classical_pairing", classical_pairing(&ctx)?);

    let plain = ctx.evaluation_map(&kg, &kincl)?.is_injective();
    rep.notes.push(format!("injective on the plain diagram: {plain}"));
    let aug = augmented_diagram(&inst.left, &inst.diagram)?;
    let actx = NatContext::new(&inst.right, &inst.left, &aug)?;
    rep.check("injective", actx.evaluation_map(&kg, &kincl)?.is_injective());
    let sz = aug.algebras.len() - 1;
    let last: Vec<GroupMap> = gens.iter().map(|w| actx.component(w, sz)).collect();
    let mut all = Vec::new();
    for (w, c) in gens.iter().zip(last) {
        let mut full: Vec<GroupMap> = (0..sz).map(|s| actx.component(w, s)).collect();
        full.push(c);
        all.push(full);
    }
    let natural = all.iter().map(|c| actx.naturality(c)).collect::<Result<Vec<_>, _>>()?;
    rep.check("natural_augmented", natural.into_iter().all(|b| b));
    Ok(rep.conclude())
}

/// For `w = i(n ⊗ m)` on simplified generators, the component is
/// `f ↦ n ⊗ f(m)`.
fn classical_pairing(ctx: &NatContext) -> Result<bool, VerifyError> {
    let t = &ctx.fork.tensor;
    let (kn, km) = (t.left_simple.rank(), t.right_simple.rank());
    for b in 0..kn.min(4) {
        for c in 0..km.min(4) {
            let x = t.pure_simple(&unit_vec(kn, b), &unit_vec(km, c));
            let w = ctx.fork.maps.i.apply(&x);
            for s in 0..ctx.diagram.algebras.len() {
                let comp = ctx.component(&w, s);
                let d = &ctx.duals[s];
                let ts = &ctx.tensors[s];
                let n_amb = vec_mul(&unit_vec(kn, b), &t.left_simp.from);
                let m_amb = vec_mul(&unit_vec(km, c), &t.right_simp.from);
                for h in 0..d.hom.group.rank() {
                    let f = d.hom.group.generator(h);
                    let want = ts.pure(&n_amb, &d.evaluate(&f, &m_amb));
                    if !ts.group.elements_equal(&comp.apply(&f), &want) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
