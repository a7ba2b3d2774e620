use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::words::{add_term, terms, DiagTensor, Letter, Pattern, Sparse, WordAlgebra, WordElem};
use super::{DegreeShift, GradedMap, TensorAlgError};
use crate::linalg::sparse::{sparse_kernel, SparseVec};
use crate::linalg::{kron_vec, vec_mul, FgAbGroup, GroupMap, IntMatrix, Subgroup};
use crate::module::{hom_by_generators, FpModule, ModuleError, ModuleStructure, Side};
use crate::ring::{Algebra, StructureRing};
use crate::tensorhom::{build_fork, tensor_over_r, tensor_with_ring, HypothesisFork, TensorGroup};

/// Graded pieces of `N ⊗_R R⟨M ⊕ Rx⟩`. The first letter is absorbed into
/// the head: an `M`-head lives in `N ⊗_R M`, an `x`-head in `N`.
#[derive(Clone, Debug)]
pub struct NWordSpace {
    pub tensor: TensorGroup,
    n_orders: Vec<BigInt>,
    t0: Vec<BigInt>,
    u: Vec<BigInt>,
    r: Vec<BigInt>,
    unit: Vec<(usize, BigInt)>,
}

impl NWordSpace {
    pub fn new(n: &ModuleStructure, m: &ModuleStructure) -> Result<Self, TensorAlgError> {
        if n.side != Side::Right {
            return Err(TensorAlgError::WrongSide("right"));
        }
        if m.side != Side::Left {
            return Err(TensorAlgError::WrongSide("left"));
        }
        let tensor = tensor_over_r(n, m)?;
        Ok(Self::from_tensor(tensor))
    }

    pub fn from_tensor(tensor: TensorGroup) -> Self {
        let ring = tensor.left.ring.clone();
        NWordSpace {
            n_orders: tensor.left_simple.group.orders().unwrap().to_vec(),
            t0: tensor.group.orders().unwrap().to_vec(),
            u: tensor.right_simple.group.orders().unwrap().to_vec(),
            r: ring.orders().to_vec(),
            unit: terms(&ring.one()),
            tensor,
        }
    }

    pub fn layout(&self, p: &Pattern) -> DiagTensor {
        let Some(first) = p.0.first() else {
            return DiagTensor::new(vec![self.n_orders.clone()]);
        };
        let mut f = vec![match first {
            Letter::M => self.t0.clone(),
            Letter::X => self.n_orders.clone(),
        }];
        for l in &p.0[1..] {
            f.push(match l {
                Letter::M => self.u.clone(),
                Letter::X => self.r.clone(),
            });
        }
        f.push(self.r.clone());
        DiagTensor::new(f)
    }

    /// `q1`: an `x` after every `M`-letter.
    pub fn q1(&self, n: usize, i: usize) -> WordElem {
        let src = self.layout(&Pattern::m_power(n));
        let d = src.decode(i);
        let target = Pattern::mx_power(n);
        if n == 0 {
            return BTreeMap::from([(target, Sparse::from([(i, BigInt::from(1))]))]);
        }
        let lay = self.layout(&target);
        let mut partial: Vec<(Vec<usize>, BigInt)> = vec![(Vec::new(), BigInt::from(1))];
        for &digit in &d[..n] {
            let mut next = Vec::with_capacity(partial.len() * self.unit.len());
            for (digits, c) in &partial {
                for (k, u) in &self.unit {
                    let mut dd = digits.clone();
                    dd.push(digit);
                    dd.push(*k);
                    next.push((dd, c * u));
                }
            }
            partial = next;
        }
        let mut s = Sparse::new();
        for (mut digits, c) in partial {
            digits.push(d[n]);
            add_term(&mut s, lay.encode(&digits), c);
        }
        BTreeMap::from([(target, s)])
    }

    /// `q2`: right multiplication by `x`.
    pub fn q2(&self, n: usize, i: usize) -> WordElem {
        let mut d = self.layout(&Pattern::m_power(n)).decode(i);
        let target = Pattern::m_power_x(n);
        let lay = self.layout(&target);
        let mut s = Sparse::new();
        for (k, u) in &self.unit {
            d.push(*k);
            add_term(&mut s, lay.encode(&d), u.clone());
            d.pop();
        }
        BTreeMap::from([(target, s)])
    }
}

pub fn maps_q1_q2(n: &ModuleStructure, m: &ModuleStructure, d: usize) -> Result<(GradedMap, GradedMap), TensorAlgError> {
    let space = NWordSpace::new(n, m)?;
    Ok(q_maps(&space, d))
}

fn q_maps(space: &NWordSpace, d: usize) -> (GradedMap, GradedMap) {
    let mut i1 = BTreeMap::new();
    let mut i2 = BTreeMap::new();
    for k in 0..=d {
        let p = Pattern::m_power(k);
        let size = space.layout(&p).size();
        i1.insert(p.clone(), (0..size).map(|i| space.q1(k, i)).collect());
        i2.insert(p, (0..size).map(|i| space.q2(k, i)).collect());
    }
    (
        GradedMap {
            shift: DegreeShift::Double,
            validity_cap: d,
            images: i1,
        },
        GradedMap {
            shift: DegreeShift::Successor,
            validity_cap: d,
            images: i2,
        },
    )
}

/// Assigns global column numbers to pattern-indexed coordinates.
struct Columns<K: Ord + Clone> {
    offsets: BTreeMap<K, (usize, DiagTensor)>,
    starts: BTreeMap<usize, K>,
    next: usize,
}

impl<K: Ord + Clone> Columns<K> {
    fn new() -> Self {
        Columns {
            offsets: BTreeMap::new(),
            starts: BTreeMap::new(),
            next: 0,
        }
    }

    fn col(&mut self, key: &K, layout: impl FnOnce() -> DiagTensor, local: usize) -> usize {
        if let Some((off, _)) = self.offsets.get(key) {
            return off + local;
        }
        let lay = layout();
        let off = self.next;
        self.next += lay.size();
        self.starts.insert(off, key.clone());
        self.offsets.insert(key.clone(), (off, lay));
        off + local
    }

    fn order(&self, c: usize) -> BigInt {
        let (start, key) = self.starts.range(..=c).next_back().expect("registered column");
        let (_, lay) = &self.offsets[key];
        lay.order(c - start)
    }
}

fn reduce_mod(v: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() {
        v.clone()
    } else {
        v.mod_floor(d)
    }
}

/// Kernel of `q1 − q2` on `N ⊗_R R⟨M⟩` in degrees `≤ d`.
#[derive(Clone, Debug)]
pub struct DefinitionalKernel {
    /// Degree-one part, inside `(N ⊗_R M) ⊗_Z R`.
    pub degree_one: Subgroup,
    /// No kernel element has a nonzero component outside degree one.
    pub concentrated: bool,
    pub cap: usize,
}

pub fn definitional_kernel(space: &NWordSpace, d: usize) -> DefinitionalKernel {
    let (q1, q2) = q_maps(space, d);
    let layouts: Vec<DiagTensor> = (0..=d).map(|k| space.layout(&Pattern::m_power(k))).collect();
    let mut offsets = vec![0usize; d + 2];
    for k in 0..=d {
        offsets[k + 1] = offsets[k] + layouts[k].size();
    }
    let mut cols: Columns<Pattern> = Columns::new();
    let mut rows: Vec<SparseVec> = Vec::with_capacity(offsets[d + 1]);
    for k in 0..=d {
        let p = Pattern::m_power(k);
        for i in 0..layouts[k].size() {
            let mut acc = Sparse::new();
            for (sign, img) in [(1, q1.image(&p, i).unwrap()), (-1, q2.image(&p, i).unwrap())] {
                for (tp, s) in img {
                    for (j, c) in s {
                        let col = cols.col(tp, || space.layout(tp), *j);
                        add_term(&mut acc, col, c * sign);
                    }
                }
            }
            rows.push(acc.into_iter().collect());
        }
    }
    let gens = sparse_kernel(&rows, &|c| cols.order(c));
    let t1 = layouts[1].group();
    let mut concentrated = true;
    let mut deg1 = Vec::new();
    for g in gens {
        let mut v = vec![BigInt::zero(); layouts[1].size()];
        for (idx, c) in g {
            let k = offsets.partition_point(|&o| o <= idx) - 1;
            let local = idx - offsets[k];
            let c = reduce_mod(&c, &layouts[k].order(local));
            if c.is_zero() {
                continue;
            }
            if k == 1 {
                v[local] = c;
            } else {
                concentrated = false;
            }
        }
        if !t1.is_zero(&v) {
            deg1.push(v);
        }
    }
    let k = t1.rank();
    DefinitionalKernel {
        degree_one: Subgroup::new(t1, IntMatrix::from_row_vecs(k, deg1)).expect("sized"),
        concentrated,
        cap: d,
    }
}

/// Kernel of `q1 − q2` compared with the kernel of the fork.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub kernel: Subgroup,
    pub concentrated: bool,
    pub equals_fork: bool,
    pub stable: bool,
    pub fork: HypothesisFork,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.concentrated && self.equals_fork && self.stable
    }
}

pub fn compare_kernels_lemma(n: &ModuleStructure, m: &ModuleStructure, d: usize) -> Result<LemmaReport, TensorAlgError> {
    if d < 2 {
        return Err(TensorAlgError::CapTooSmall { cap: d, needed: 2 });
    }
    let space = NWordSpace::new(n, m)?;
    let fork = build_fork(n, m)?;
    let at_d = definitional_kernel(&space, d);
    let at_next = definitional_kernel(&space, d + 1);
    let fork_kernel = fork.maps.kernel();
    let kernel = Subgroup::new(fork.t1().clone(), at_d.degree_one.generators().clone()).expect("same ambient");
    let next = Subgroup::new(fork.t1().clone(), at_next.degree_one.generators().clone()).expect("same ambient");
    Ok(LemmaReport {
        equals_fork: kernel.equals(&fork_kernel).unwrap_or(false),
        stable: kernel.equals(&next).unwrap_or(false) && at_d.concentrated == at_next.concentrated,
        concentrated: at_d.concentrated && at_next.concentrated,
        kernel,
        fork,
    })
}

/// The two functor shapes whose extension can be computed from the
/// definition.
#[derive(Clone, Debug)]
pub enum FunctorShape {
    /// `Q ↦ N ⊗_R Q` for a right module `N`.
    Quasicoherent(ModuleStructure),
    /// `Q ↦ Hom_R(M, Q)` for a finitely presented left module `M`.
    ExtendedDual(FpModule),
}

#[derive(Clone, Debug)]
pub struct ExtensionValue {
    pub group: FgAbGroup,
    /// The value inside the degree-one component.
    pub embedding: Subgroup,
    pub concentrated: bool,
    pub stable: bool,
    /// Agrees with the closed formula (`kernel_extension` for the
    /// quasicoherent shape, `Hom_R(M, Q)` for the dual shape).
    pub matches_formula: bool,
    pub cap: usize,
}

impl ExtensionValue {
    pub fn is_reportable(&self) -> bool {
        self.stable && self.concentrated
    }
}

pub fn extension_via_definition(
    shape: &FunctorShape,
    arg: &ModuleStructure,
    d: usize,
) -> Result<ExtensionValue, TensorAlgError> {
    if d < 2 {
        return Err(TensorAlgError::CapTooSmall { cap: d, needed: 2 });
    }
    match shape {
        FunctorShape::Quasicoherent(n) => {
            let rep = compare_kernels_lemma(n, arg, d)?;
            let (group, _) = rep.kernel.as_group();
            Ok(ExtensionValue {
                group: group.simplify().group,
                embedding: rep.kernel.clone(),
                concentrated: rep.concentrated,
                stable: rep.stable,
                matches_formula: rep.equals_fork,
                cap: d,
            })
        }
        FunctorShape::ExtendedDual(m) => {
            let at_d = dual_definitional(m, arg, d)?;
            let at_next = dual_definitional(m, arg, d + 1)?;
            let expected = dual_expected(m, arg)?;
            let (group, _) = at_d.degree_one.as_group();
            Ok(ExtensionValue {
                group: group.simplify().group,
                matches_formula: at_d.degree_one.equals(&expected).unwrap_or(false),
                stable: at_d.degree_one.equals(&at_next.degree_one).unwrap_or(false),
                concentrated: at_d.concentrated && at_next.concentrated,
                embedding: at_d.degree_one,
                cap: d,
            })
        }
    }
}

/// Tuples `(p_a)` in `R⟨Q⟩^g` killed by the relations of `M` and by
/// `p ↦ h_x(p) − p·x`, solved one degree at a time.
fn dual_definitional(m: &FpModule, q: &ModuleStructure, d: usize) -> Result<DefinitionalKernel, TensorAlgError> {
    if m.side() != Side::Left || q.side != Side::Left {
        return Err(TensorAlgError::WrongSide("left"));
    }
    if !m.structure().compatible(q) {
        return Err(ModuleError::RingMismatch.into());
    }
    let ring = m.ring().clone();
    let words = WordAlgebra::new(&ring, q, 2 * d + 2);
    let g = m.gens();
    let mut concentrated = true;
    let mut degree_one = None;
    for n in 0..=d {
        let p = Pattern::m_power(n);
        let lay = words.layout(&p);
        let size = lay.size();
        let rel_acts: Vec<Vec<IntMatrix>> = m
            .relations()
            .iter()
            .map(|rel| rel.iter().map(|r| words.module.act_matrix(r)).collect())
            .collect();
        let mut cols: Columns<(usize, Pattern)> = Columns::new();
        let mut rows: Vec<SparseVec> = Vec::with_capacity(g * size);
        for a in 0..g {
            for i in 0..size {
                let mut acc = Sparse::new();
                let digits = lay.decode(i);
                for (j, acts) in rel_acts.iter().enumerate() {
                    for (v, c) in left_act(&ring, &acts[a], &m.relations()[j][a], n, &digits) {
                        let mut dd = digits.clone();
                        dd[0] = v;
                        let col = cols.col(&(j, p.clone()), || lay.clone(), lay.encode(&dd));
                        add_term(&mut acc, col, c);
                    }
                }
                let hx = words.hx_letterwise(&p, i).expect("cap");
                let tx = words.times_x_append(&p, i).expect("cap");
                for (sign, img) in [(1, hx), (-1, tx)] {
                    for (tp, s) in &img {
                        let key = (g + a, tp.clone());
                        for (jj, c) in s {
                            let col = cols.col(&key, || words.layout(tp), *jj);
                            add_term(&mut acc, col, c * sign);
                        }
                    }
                }
                rows.push(acc.into_iter().collect());
            }
        }
        let gens = sparse_kernel(&rows, &|c| cols.order(c));
        let amb = FgAbGroup::direct_sum(&vec![lay.group(); g]);
        let dense: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|v| {
                let mut out = vec![BigInt::zero(); g * size];
                for (k, c) in v {
                    out[*k] = c.clone();
                }
                amb.reduce(&out)
            })
            .filter(|v| !amb.is_zero(v))
            .collect();
        if n == 1 {
            degree_one = Some(Subgroup::new(amb.clone(), IntMatrix::from_row_vecs(g * size, dense)).expect("sized"));
        } else if !dense.is_empty() {
            concentrated = false;
        }
    }
    Ok(DefinitionalKernel {
        degree_one: degree_one.expect("d ≥ 1"),
        concentrated,
        cap: d,
    })
}

/// `r` acting on the left of a basis word: on the ring in degree 0, on the
/// first letter otherwise.
fn left_act(ring: &StructureRing, act: &IntMatrix, r: &[BigInt], n: usize, digits: &[usize]) -> Vec<(usize, BigInt)> {
    if n == 0 {
        terms(&ring.mul(r, &ring.basis(digits[0])))
    } else {
        terms(act.row(digits[0]))
    }
}

/// `Hom_R(M, Q)` embedded in degree one as `f ↦ (f(gen_a) ⊗ 1)_a`.
fn dual_expected(m: &FpModule, q: &ModuleStructure) -> Result<Subgroup, TensorAlgError> {
    let (qs, _) = q.simplified();
    let (hom, incl) = hom_by_generators(m, &qs)?;
    let ring = m.ring();
    let unit = ring.one();
    let g = m.gens();
    let k = qs.rank();
    let nr = ring.rank();
    let c1 = DiagTensor::new(vec![qs.group.orders().unwrap().to_vec(), ring.orders().to_vec()]).group();
    let amb = FgAbGroup::direct_sum(&vec![c1; g]);
    let rows: Vec<Vec<BigInt>> = (0..hom.rank())
        .map(|h| {
            let tuple = incl.apply(&hom.generator(h));
            let mut out = Vec::with_capacity(g * k * nr);
            for a in 0..g {
                out.extend(kron_vec(&tuple[a * k..(a + 1) * k], &unit));
            }
            out
        })
        .collect();
    let width = amb.rank();
    Ok(Subgroup::new(amb, IntMatrix::from_row_vecs(width, rows)).expect("sized"))
}

/// `π_S : R⟨S⟩ → S`, multiplying the letters in `S`.
#[derive(Clone, Debug)]
pub struct PiS {
    pub algebra: Algebra,
    pub words: WordAlgebra,
    /// Simplified letter coordinates back to ring coordinates of `S`.
    letters: IntMatrix,
}

pub fn pi_s(s: &Algebra, d: usize) -> PiS {
    let left = ModuleStructure::algebra_over_base(s, Side::Left);
    let (_, simp) = left.simplified();
    PiS {
        algebra: s.clone(),
        words: WordAlgebra::new(s.base_ring(), &left, d),
        letters: simp.from,
    }
}

impl PiS {
    /// Image of a basis word of `R⟨S⟩` (an `M`-only pattern).
    pub fn apply(&self, n: usize, i: usize) -> Vec<BigInt> {
        let d = self.words.layout(&Pattern::m_power(n)).decode(i);
        let ring = &self.algebra.ring;
        let mut acc = ring.one();
        for b in &d[..n] {
            acc = ring.mul(&acc, self.letters.row(*b));
        }
        let rho = self.algebra.image(&self.words.ring.basis(d[n]));
        ring.reduce(&ring.mul(&acc, &rho))
    }

    pub fn apply_elem(&self, e: &WordElem) -> Vec<BigInt> {
        let ring = &self.algebra.ring;
        let mut out = ring.zero();
        for (p, s) in e {
            assert_eq!(p.m_letters(), p.degree(), "π_S is defined on R⟨S⟩");
            for (i, c) in s {
                out = ring.add(&out, &ring.scale(c, &self.apply(p.degree(), *i)));
            }
        }
        ring.reduce(&out)
    }

    /// Multiplicativity on basis pairs within the cap, every `stride`-th.
    pub fn check_multiplicative(&self, stride: usize) -> bool {
        let stride = stride.max(1);
        let ring = &self.algebra.ring;
        let mut count = 0usize;
        for p in 0..=self.words.cap {
            for q in 0..=self.words.cap - p {
                let (pp, pq) = (Pattern::m_power(p), Pattern::m_power(q));
                for i in 0..self.words.layout(&pp).size() {
                    for j in 0..self.words.layout(&pq).size() {
                        count += 1;
                        if !count.is_multiple_of(stride) {
                            continue;
                        }
                        let prod = self.words.basis_product(&pp, i, &pq, j).unwrap();
                        let lhs = self.apply_elem(&prod);
                        let rhs = ring.mul(&self.apply(p, i), &self.apply(q, j));
                        if !ring.eq_elem(&lhs, &rhs) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `S → R⟨S⟩ → S` is the identity on every basis element of `S`.
    pub fn unit_law(&self) -> bool {
        let ring = &self.algebra.ring;
        let lay = self.words.layout(&Pattern::m_power(1));
        let unit = terms(&self.words.ring.one());
        let to_simple = ModuleStructure::algebra_over_base(&self.algebra, Side::Left).simplified().1.to;
        (0..ring.rank()).all(|b| {
            let y = vec_mul(&ring.basis(b), &to_simple);
            let mut e = Sparse::new();
            for (v, c) in terms(&y) {
                for (k, u) in &unit {
                    add_term(&mut e, lay.encode(&[v, *k]), &c * u);
                }
            }
            let img = self.apply_elem(&BTreeMap::from([(Pattern::m_power(1), e)]));
            ring.eq_elem(&img, &ring.basis(b))
        })
    }
}

/// `F̄(S)` for the quasicoherent functor of `N`, with `S` viewed as a left
/// `R`-module, together with the pieces needed to act on it.
#[derive(Clone, Debug)]
pub struct QcValueAtAlgebra {
    pub algebra: Algebra,
    pub lemma: LemmaReport,
    /// `F̄(S)` as an abstract group with its inclusion into `t1`.
    pub group: FgAbGroup,
    pub inclusion: GroupMap,
    /// `(N ⊗ S) ⊗ R → N ⊗ S`, `(n ⊗ y) ⊗ r ↦ n ⊗ y·ρ(r)`.
    pub pi: GroupMap,
}

pub fn qc_value_at_algebra(n: &ModuleStructure, s: &Algebra, d: usize) -> Result<QcValueAtAlgebra, TensorAlgError> {
    let left = ModuleStructure::algebra_over_base(s, Side::Left);
    let lemma = compare_kernels_lemma(n, &left, d)?;
    let (group, inclusion) = lemma.kernel.as_group();
    let t = &lemma.fork.tensor;
    let nr = s.base_ring().rank();
    let t1 = lemma.fork.t1().clone();
    let rows: Vec<Vec<BigInt>> = (0..t1.rank())
        .map(|idx| {
            let (a, l) = (idx / nr, idx % nr);
            let rho = s.image(&s.base_ring().basis(l));
            t0_right_mult_gen(t, s, a, &rho)
        })
        .collect();
    let pi = GroupMap::new(t1, t.group.clone(), IntMatrix::from_row_vecs(t.group.rank(), rows)).map_err(ModuleError::from)?;
    Ok(QcValueAtAlgebra {
        algebra: s.clone(),
        lemma,
        group,
        inclusion,
        pi,
    })
}

/// Generator `a` of `N ⊗_R S` times `y` on the right.
fn t0_right_mult_gen(t: &TensorGroup, s: &Algebra, a: usize, y: &[BigInt]) -> Vec<BigInt> {
    let ring = &s.ring;
    let mut out = t.group.zero();
    for (b, c, coef) in t.expansion(a) {
        let nb = crate::linalg::unit_vec(t.left_simple.rank(), b);
        let sc = t.right_simp.from.row(c).to_vec();
        let prod = ring.mul(&sc, y);
        let ys = vec_mul(&prod, &t.right_simp.to);
        let v = t.pure_simple(&nb, &ys);
        for (o, x) in out.iter_mut().zip(v) {
            *o += &coef * x;
        }
    }
    t.group.reduce(&out)
}

/// Right multiplication by `y` on `N ⊗_R S`.
pub fn t0_right_mult(t: &TensorGroup, s: &Algebra, y: &[BigInt]) -> GroupMap {
    let rows: Vec<Vec<BigInt>> = (0..t.group.rank()).map(|a| t0_right_mult_gen(t, s, a, y)).collect();
    GroupMap::new(t.group.clone(), t.group.clone(), IntMatrix::from_row_vecs(t.group.rank(), rows))
        .expect("right multiplication is well defined")
}

#[derive(Clone, Debug)]
pub struct RightAction {
    /// The action of `s` on `F̄(S)`.
    pub map: GroupMap,
    /// The lift preserves `F̄(S)`.
    pub preserves: bool,
    /// Agrees with `·s` on `F(S)` through `π`.
    pub agrees: bool,
}

pub fn extension_right_action(
    n: &ModuleStructure,
    s: &Algebra,
    elem: &[BigInt],
    d: usize,
) -> Result<RightAction, TensorAlgError> {
    let v = qc_value_at_algebra(n, s, d)?;
    Ok(right_action_on(&v, elem))
}

pub fn right_action_on(v: &QcValueAtAlgebra, elem: &[BigInt]) -> RightAction {
    let t = &v.lemma.fork.tensor;
    let on_t0 = t0_right_mult(t, &v.algebra, elem);
    let t1 = v.lemma.fork.t1();
    let lift = tensor_with_ring(&on_t0, t1, t1, v.lemma.fork.maps.ring_rank);
    let mut preserves = true;
    let mut agrees = true;
    let mut rows = Vec::with_capacity(v.group.rank());
    for k in 0..v.group.rank() {
        let x = v.inclusion.apply(&v.group.generator(k));
        let y = lift.apply(&x);
        if !v.pi.target().elements_equal(&v.pi.apply(&y), &on_t0.apply(&v.pi.apply(&x))) {
            agrees = false;
        }
        match v.inclusion.preimage(&y) {
            Some(pre) => rows.push(pre),
            None => {
                preserves = false;
                rows.push(v.group.zero());
            }
        }
    }
    let map = GroupMap::new(v.group.clone(), v.group.clone(), IntMatrix::from_row_vecs(v.group.rank(), rows))
        .unwrap_or_else(|_| GroupMap::zero(&v.group, &v.group));
    RightAction { map, preserves, agrees }
}

/// `F̄(S) → F(S)` through `π_S`, with its isomorphism verdict.
#[derive(Clone, Debug)]
pub struct ValueMap {
    pub map: GroupMap,
    pub isomorphism: bool,
}

pub fn extension_to_value_iso(n: &ModuleStructure, s: &Algebra, d: usize) -> Result<ValueMap, TensorAlgError> {
    let v = qc_value_at_algebra(n, s, d)?;
    let map = v.inclusion.then(&v.pi).map_err(ModuleError::from)?;
    Ok(ValueMap {
        isomorphism: map.is_isomorphism(),
        map,
    })
}

/// The dual shape: `F̄(S) → Hom_R(M, S)` by applying `π_S` to each
/// generator image. Returns whether it is injective and onto the tuples of
/// `Hom_R(M, S)` (the composite with the canonical identification is then
/// the identity).
pub fn dual_value_iso(m: &FpModule, s: &Algebra, d: usize) -> Result<ValueMap, TensorAlgError> {
    let left = ModuleStructure::algebra_over_base(s, Side::Left);
    let (qs, simp) = left.simplified();
    let sol = dual_definitional(m, &left, d)?;
    let (fgroup, incl) = sol.degree_one.as_group();
    let pi = pi_s(s, 1);
    let g = m.gens();
    let k = qs.rank();
    let c1 = pi.words.layout(&Pattern::m_power(1)).size();
    let tuples = FgAbGroup::direct_sum(&vec![qs.group.clone(); g]);
    let rows: Vec<Vec<BigInt>> = (0..fgroup.rank())
        .map(|h| {
            let x = incl.apply(&fgroup.generator(h));
            let mut out = Vec::with_capacity(g * k);
            for a in 0..g {
                let mut val = s.ring.zero();
                for (i, c) in terms(&x[a * c1..(a + 1) * c1]) {
                    val = s.ring.add(&val, &s.ring.scale(&c, &pi.apply(1, i)));
                }
                out.extend(vec_mul(&val, &simp.to));
            }
            tuples.reduce(&out)
        })
        .collect();
    let map = GroupMap::new(fgroup, tuples, IntMatrix::from_row_vecs(g * k, rows)).map_err(ModuleError::from)?;
    let (_, hom_incl) = hom_by_generators(m, &qs)?;
    let onto = map.image().equals(&hom_incl.image()).unwrap_or(false);
    Ok(ValueMap {
        isomorphism: map.is_injective() && onto,
        map,
    })
}

/// Counts additive maps `g : M → S` whose multiplicative extension
/// `m_1⋯m_n·r ↦ g(m_1)⋯g(m_n)·ρ(r)` is an `R`-algebra map on the
/// truncation, and returns it with `|Hom_R(M, S)|`.
pub fn count_algebra_maps(m: &FpModule, s: &Algebra, d: usize, limit: usize) -> Result<(usize, usize), TensorAlgError> {
    let ring = m.ring().clone();
    let words = WordAlgebra::new(&ring, m.structure(), d);
    let ms = words.module.clone();
    let homs = crate::linalg::hom_group(&ms.group, s.ring.additive());
    let left = ModuleStructure::algebra_over_base(s, Side::Left);
    let linear = crate::module::hom_r(m.structure(), &left)?;
    let target = linear.group.order().expect("finite").try_into().unwrap_or(usize::MAX);
    let sr = &s.ring;
    let mut count = 0;
    for f in homs.group.elements(limit) {
        let gm = homs.matrix_of(&f);
        let phi = |p: usize, i: usize| -> Vec<BigInt> {
            let dd = words.layout(&Pattern::m_power(p)).decode(i);
            let mut acc = sr.one();
            for b in &dd[..p] {
                acc = sr.mul(&acc, gm.row(*b));
            }
            sr.reduce(&sr.mul(&acc, &s.image(&ring.basis(dd[p]))))
        };
        let phi_elem = |e: &WordElem| -> Vec<BigInt> {
            let mut out = sr.zero();
            for (p, sp) in e {
                for (i, c) in sp {
                    out = sr.add(&out, &sr.scale(c, &phi(p.degree(), *i)));
                }
            }
            sr.reduce(&out)
        };
        let mut ok = sr.eq_elem(&phi_elem(&words.one()), &sr.one());
        'outer: for p in 0..=d {
            for q in 0..=d - p {
                let (pp, pq) = (Pattern::m_power(p), Pattern::m_power(q));
                for i in 0..words.layout(&pp).size() {
                    for j in 0..words.layout(&pq).size() {
                        let prod = words.basis_product(&pp, i, &pq, j).unwrap();
                        if !sr.eq_elem(&phi_elem(&prod), &sr.mul(&phi(p, i), &phi(q, j))) {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok((count, target))
}
