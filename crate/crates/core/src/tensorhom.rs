//! Balanced tensor products `N ⊗_R M` and the fork
//! `N⊗M → N⊗M⊗R ⇉ N⊗M⊗R⊗R` with its exactness test.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{kron_vec, unit_vec, vec_mul, FgAbGroup, GroupMap, IntMatrix, Simplification, Subgroup};
use crate::module::{FpModule, ModuleError, ModuleStructure, Side};

/// `N ⊗_R M` for a right module `N` and a left module `M`, presented on
/// pairs of simplified generators modulo the balancing relations.
#[derive(Clone, Debug)]
pub struct TensorGroup {
    pub left: ModuleStructure,
    pub right: ModuleStructure,
    /// Simplified factors (diagonal, no trivial generators).
    pub left_simple: ModuleStructure,
    pub right_simple: ModuleStructure,
    pub left_simp: Simplification,
    pub right_simp: Simplification,
    /// `N' ⊗_Z M'` before balancing.
    pub raw: FgAbGroup,
    /// Simplified quotient.
    pub group: FgAbGroup,
    quot: Simplification,
}

impl TensorGroup {
    /// `n ⊗ m` from ambient coordinates of the two factors.
    pub fn pure(&self, n: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
        self.pure_simple(&vec_mul(n, &self.left_simp.to), &vec_mul(m, &self.right_simp.to))
    }

    /// `n ⊗ m` from simplified coordinates.
    pub fn pure_simple(&self, n: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
        self.from_raw(&kron_vec(n, m))
    }

    /// Image of a raw pair-coordinate vector in `group` coordinates.
    pub fn from_raw(&self, raw: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&vec_mul(raw, &self.quot.to))
    }

    /// Generator `a` of `group` as `Σ c · n'_b ⊗ m'_c` with entries
    /// `(b, c, coefficient)`.
    pub fn expansion(&self, a: usize) -> Vec<(usize, usize, BigInt)> {
        let k = self.right_simple.rank();
        self.quot
            .from
            .row(a)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| (idx / k, idx % k, v.clone()))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }
}

pub fn tensor_over_r(n: &ModuleStructure, m: &ModuleStructure) -> Result<TensorGroup, ModuleError> {
    if n.side != Side::Right || m.side != Side::Left || !n.ring.same_structure(&m.ring) {
        return Err(ModuleError::RingMismatch);
    }
    let (ns, nsimp) = n.simplified();
    let (ms, msimp) = m.simplified();
    let raw = ns.group.tensor_diagonal(&ms.group);
    let (kn, km) = (ns.rank(), ms.rank());
    let width = kn * km;
    let mut rows = raw.relation_rows().row_vecs();
    for b in 0..kn {
        let nb = ns.group.generator(b);
        for c in 0..km {
            let mc = ms.group.generator(c);
            for i in 0..n.ring.rank() {
                let e = n.ring.basis(i);
                let lhs = kron_vec(&ns.act(&e, &nb), &mc);
                let rhs = kron_vec(&nb, &ms.act(&e, &mc));
                let row: Vec<BigInt> = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let pres = FgAbGroup::from_presentation(width, &IntMatrix::from_row_vecs(width, rows))?;
    let quot = pres.simplify();
    Ok(TensorGroup {
        left: n.clone(),
        right: m.clone(),
        left_simple: ns,
        right_simple: ms,
        left_simp: nsimp,
        right_simp: msimp,
        raw,
        group: quot.group.clone(),
        quot,
    })
}

/// `N ⊗_R M` computed from a presentation of `M`: the cokernel of
/// `N^{relations} → N^{generators}`. Independent of [`tensor_over_r`].
pub fn tensor_by_presentation(n: &ModuleStructure, m: &FpModule) -> Result<FgAbGroup, ModuleError> {
    if n.side != Side::Right || m.side() != Side::Left || !n.ring.same_structure(m.ring()) {
        return Err(ModuleError::RingMismatch);
    }
    let (ns, _) = n.simplified();
    let k = ns.rank();
    let g = m.gens();
    let ambient = FgAbGroup::direct_sum(&vec![ns.group.clone(); g]);
    let mut rows = ambient.relation_rows().row_vecs();
    for rel in m.relations() {
        for t in 0..k {
            let nt = ns.group.generator(t);
            let row: Vec<BigInt> = rel.iter().flat_map(|r| ns.act(r, &nt)).collect();
            rows.push(row);
        }
    }
    Ok(FgAbGroup::from_presentation(g * k, &IntMatrix::from_row_vecs(g * k, rows))?)
}

/// The groups `t1 = t0 ⊗ R`, `t2 = t0 ⊗ R ⊗ R` and the maps `i, p1, p2`
/// for a diagonal `t0` and a ring given by its additive orders and unit.
#[derive(Clone, Debug)]
pub struct ForkMaps {
    pub t0: FgAbGroup,
    pub t1: FgAbGroup,
    pub t2: FgAbGroup,
    pub i: GroupMap,
    pub p1: GroupMap,
    pub p2: GroupMap,
    pub ring_rank: usize,
}

pub fn fork_over_unit(t0: &FgAbGroup, ring_orders: &[BigInt], unit: &[BigInt]) -> ForkMaps {
    let radd = FgAbGroup::diagonal(ring_orders.to_vec());
    let t1 = t0.tensor_diagonal(&radd);
    let t2 = t1.tensor_diagonal(&radd);
    let k = t0.rank();
    let n = ring_orders.len();
    let mut i = IntMatrix::zeros(k, k * n);
    for a in 0..k {
        for (l, u) in unit.iter().enumerate() {
            i[(a, a * n + l)] = u.clone();
        }
    }
    let mut p1 = IntMatrix::zeros(k * n, k * n * n);
    let mut p2 = IntMatrix::zeros(k * n, k * n * n);
    for a in 0..k {
        for j in 0..n {
            for (l, u) in unit.iter().enumerate() {
                p1[(a * n + j, (a * n + j) * n + l)] = u.clone();
                p2[(a * n + j, (a * n + l) * n + j)] = u.clone();
            }
        }
    }
    ForkMaps {
        i: GroupMap::new(t0.clone(), t1.clone(), i).expect("x ↦ x⊗1 is well defined"),
        p1: GroupMap::new(t1.clone(), t2.clone(), p1).expect("p1 is well defined"),
        p2: GroupMap::new(t1.clone(), t2.clone(), p2).expect("p2 is well defined"),
        t0: t0.clone(),
        t1,
        t2,
        ring_rank: n,
    }
}

impl ForkMaps {
    pub fn difference(&self) -> GroupMap {
        self.p1.sub(&self.p2).expect("parallel maps")
    }

    pub fn kernel(&self) -> Subgroup {
        self.difference().kernel()
    }

    pub fn check(&self) -> ExactnessReport {
        let ker_i = self.i.kernel();
        let kernel = self.kernel();
        let image = self.i.image();
        let mut witnesses = Vec::new();
        for g in ker_i.generators().row_vecs() {
            if !self.t0.is_zero(&g) {
                witnesses.push(Witness::KernelOfI {
                    element: to_strings(&self.t0.reduce(&g)),
                });
            }
        }
        for w in kernel.generators_outside(&image) {
            witnesses.push(Witness::NotInImage {
                element: to_strings(&w),
            });
        }
        ExactnessReport {
            i_injective: !witnesses.iter().any(|w| matches!(w, Witness::KernelOfI { .. })),
            middle_exact: !witnesses.iter().any(|w| matches!(w, Witness::NotInImage { .. })),
            kernel,
            image,
            witnesses,
        }
    }

    /// Re-checks a witness against the stored maps.
    pub fn replay(&self, w: &Witness) -> bool {
        match w {
            Witness::KernelOfI { element } => {
                let x = from_strings(element);
                x.len() == self.t0.rank() && !self.t0.is_zero(&x) && self.t1.is_zero(&self.i.apply(&x))
            }
            Witness::NotInImage { element } => {
                let x = from_strings(element);
                x.len() == self.t1.rank()
                    && self.t2.is_zero(&self.difference().apply(&x))
                    && !self.i.image().contains(&x)
            }
        }
    }

    /// `x ⊗ e_l` in `t1` for `x` in `t0`.
    pub fn tensor_basis(&self, x: &[BigInt], l: usize) -> Vec<BigInt> {
        self.t1.reduce(&kron_vec(x, &unit_vec(self.ring_rank, l)))
    }
}

pub fn to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn from_strings(v: &[String]) -> Vec<BigInt> {
    v.iter().map(|s| s.parse().unwrap_or_else(|_| BigInt::zero())).collect()
}

/// Evidence that one half of exactness fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A nonzero element of `t0` killed by `i`.
    KernelOfI { element: Vec<String> },
    /// An element of `Ker(p1 - p2)` outside the image of `i`.
    NotInImage { element: Vec<String> },
}

#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub i_injective: bool,
    pub middle_exact: bool,
    pub kernel: Subgroup,
    pub image: Subgroup,
    pub witnesses: Vec<Witness>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.i_injective && self.middle_exact
    }
}

/// The fork attached to a pair `(N, M)`.
#[derive(Clone, Debug)]
pub struct HypothesisFork {
    pub tensor: TensorGroup,
    pub maps: ForkMaps,
}

impl HypothesisFork {
    pub fn t0(&self) -> &FgAbGroup {
        &self.tensor.group
    }

    pub fn t1(&self) -> &FgAbGroup {
        &self.maps.t1
    }
}

pub fn build_fork(n: &ModuleStructure, m: &ModuleStructure) -> Result<HypothesisFork, ModuleError> {
    let tensor = tensor_over_r(n, m)?;
    let ring = &n.ring;
    let maps = fork_over_unit(&tensor.group, ring.orders(), &ring.one());
    debug_assert!(maps.i.then(&maps.difference()).unwrap().is_zero_map());
    Ok(HypothesisFork { tensor, maps })
}

pub fn check_hypothesis(n: &ModuleStructure, m: &ModuleStructure) -> Result<(HypothesisFork, ExactnessReport), ModuleError> {
    let fork = build_fork(n, m)?;
    let report = fork.maps.check();
    Ok((fork, report))
}

/// `Ker(p1 - p2)` as an abstract group with its inclusion into `t1`.
pub fn kernel_extension(n: &ModuleStructure, m: &ModuleStructure) -> Result<(FgAbGroup, GroupMap, HypothesisFork), ModuleError> {
    let fork = build_fork(n, m)?;
    let (g, incl) = fork.maps.kernel().as_group();
    Ok((g, incl, fork))
}

/// A left module together with a commuting right action of the same ring.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: ModuleStructure,
    /// `x ↦ x·e_i` on the group of `left`.
    pub right_action: Vec<IntMatrix>,
}

impl Bimodule {
    pub fn new(left: ModuleStructure, right_action: Vec<IntMatrix>) -> Result<Self, ModuleError> {
        if left.side != Side::Left {
            return Err(ModuleError::RingMismatch);
        }
        let right = ModuleStructure::new(left.ring.clone(), Side::Right, left.group.clone(), right_action.clone())?;
        for (i, a) in left.action.iter().enumerate() {
            for (j, b) in right.action.iter().enumerate() {
                let d = a.mul(b).sub(&b.mul(a));
                if !d.row_vecs().iter().all(|r| left.group.is_zero(r)) {
                    return Err(ModuleError::ActionAxiom(i, j));
                }
            }
        }
        Ok(Bimodule { left, right_action })
    }

    /// Over a commutative ring every module is a bimodule with equal actions.
    pub fn from_commutative(m: &ModuleStructure) -> Result<Self, ModuleError> {
        if !m.ring.is_commutative() {
            return Err(ModuleError::RingMismatch);
        }
        Bimodule::new(m.clone(), m.action.clone())
    }

    pub fn regular(ring: &crate::ring::StructureRing) -> Self {
        let left = ModuleStructure::regular(ring, Side::Left);
        let right = ModuleStructure::regular(ring, Side::Right);
        Bimodule {
            left,
            right_action: right.action,
        }
    }
}

/// The sections `s: t1 → t0`, `s': t2 → t1` built from a bimodule
/// structure on `M`.
#[derive(Clone, Debug)]
pub struct Sections {
    pub s: GroupMap,
    pub s_prime: GroupMap,
}

impl Sections {
    /// `s∘i = id`, `s'∘p2 = id`, `s'∘p1 = i∘s`.
    pub fn identities(&self, maps: &ForkMaps) -> [bool; 3] {
        let comp = |a: &GroupMap, b: &GroupMap| a.then(b).expect("composable");
        [
            comp(&maps.i, &self.s).equals(&GroupMap::identity(&maps.t0)),
            comp(&maps.p2, &self.s_prime).equals(&GroupMap::identity(&maps.t1)),
            comp(&maps.p1, &self.s_prime).equals(&comp(&self.s, &maps.i)),
        ]
    }
}

pub fn bimodule_sections(fork: &HypothesisFork, m: &Bimodule) -> Result<Sections, ModuleError> {
    let t = &fork.tensor;
    if !t.right.group.same_presentation(&m.left.group) {
        return Err(ModuleError::RingMismatch);
    }
    let simp = &t.right_simp;
    let right: Vec<IntMatrix> = m.right_action.iter().map(|b| simp.from.mul(b).mul(&simp.to)).collect();
    let n = fork.maps.ring_rank;
    let k = t.rank();
    let kn = t.left_simple.rank();
    let mut rows = Vec::with_capacity(k * n);
    for a in 0..k {
        let terms = t.expansion(a);
        for l in 0..n {
            let mut acc = vec![BigInt::zero(); k];
            for (b, c, coef) in &terms {
                let nb = unit_vec(kn, *b);
                let mc = vec_mul(&t.right_simple.group.generator(*c), &right[l]);
                for (o, v) in acc.iter_mut().zip(t.pure_simple(&nb, &mc)) {
                    *o += coef * v;
                }
            }
            rows.push(t.group.reduce(&acc));
        }
    }
    let s_mat = IntMatrix::from_row_vecs(k, rows);
    let mut sp = IntMatrix::zeros(k * n * n, k * n);
    for a in 0..k {
        for j in 0..n {
            let sv = s_mat.row(a * n + j);
            for l in 0..n {
                for (a2, v) in sv.iter().enumerate() {
                    sp[((a * n + j) * n + l, a2 * n + l)] = v.clone();
                }
            }
        }
    }
    Ok(Sections {
        s: GroupMap::new(fork.maps.t1.clone(), fork.maps.t0.clone(), s_mat)?,
        s_prime: GroupMap::new(fork.maps.t2.clone(), fork.maps.t1.clone(), sp)?,
    })
}

/// The isomorphism `N ⊗_R M → M ⊗_{R^op} N` on simplified generators.
pub fn swap_map(t: &TensorGroup, mirrored: &TensorGroup) -> GroupMap {
    let kn = t.left_simple.rank();
    let km = t.right_simple.rank();
    let rows = (0..t.rank())
        .map(|a| {
            let mut acc = vec![BigInt::zero(); mirrored.rank()];
            for (b, c, coef) in t.expansion(a) {
                let n_amb = vec_mul(&unit_vec(kn, b), &t.left_simp.from);
                let m_amb = vec_mul(&unit_vec(km, c), &t.right_simp.from);
                for (o, v) in acc.iter_mut().zip(mirrored.pure(&m_amb, &n_amb)) {
                    *o += &coef * v;
                }
            }
            mirrored.group.reduce(&acc)
        })
        .collect();
    GroupMap::new(
        t.group.clone(),
        mirrored.group.clone(),
        IntMatrix::from_row_vecs(mirrored.rank(), rows),
    )
    .expect("swap is well defined")
}

/// `f ⊗ id_R` from `t0 → t0'` to `t1 → t1'`.
pub fn tensor_with_ring(f: &GroupMap, t1: &FgAbGroup, t1_target: &FgAbGroup, ring_rank: usize) -> GroupMap {
    let m = f.matrix().kronecker(&IntMatrix::identity(ring_rank));
    GroupMap::new(t1.clone(), t1_target.clone(), m).expect("f ⊗ id is well defined")
}
