//! Finitely generated abelian groups `Z^k / L`, their morphisms and
//! subgroups.
//!
//! Elements are row vectors in ambient coordinates. Two presentations are
//! supported: *diagonal* (each ambient generator has its own order, which is
//! what tensor products of simplified groups produce) and *general* (an
//! arbitrary relation matrix, reduced through its Smith basis).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{vec_mul, IntMatrix};
use super::normal_form::{hnf_only, snf, solve_left};
use super::sparse::{dense_to_sparse, sparse_kernel, sparse_to_dense};
use crate::error::LinalgError;

#[derive(Clone, PartialEq, Eq)]
enum Presentation {
    /// Order of each ambient generator (0 = infinite, 1 = trivial).
    Diagonal(Vec<BigInt>),
    General {
        relations: IntMatrix,
        /// `V` of the Smith form; Smith coordinates are `x * V`.
        to_smith: IntMatrix,
        from_smith: IntMatrix,
        /// Smith factor per Smith coordinate (length = rank).
        factors: Vec<BigInt>,
    },
}

struct GroupInner {
    rank: usize,
    presentation: Presentation,
    invariants: Vec<BigInt>,
}

/// A finitely generated abelian group with a fixed ambient presentation.
#[derive(Clone)]
pub struct FgAbGroup(Arc<GroupInner>);

/// Output of [`FgAbGroup::simplify`]: a diagonal group with no trivial
/// generators, isomorphic to the original through `to` / `from`.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub group: FgAbGroup,
    /// `rank(original) x rank(group)`
    pub to: IntMatrix,
    /// `rank(group) x rank(original)`
    pub from: IntMatrix,
}

impl FgAbGroup {
    /// `Z^k / <rows of rels>`.
    pub fn from_presentation(k: usize, rels: &IntMatrix) -> Result<Self, LinalgError> {
        if rels.cols() != k {
            return Err(LinalgError::ColumnMismatch {
                expected: k,
                found: rels.cols(),
            });
        }
        if let Some(orders) = diagonal_orders(k, rels) {
            return Ok(Self::diagonal(orders));
        }
        let s = snf(rels);
        let diag = s.diagonal();
        let factors: Vec<BigInt> = (0..k)
            .map(|t| diag.get(t).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let invariants = prune(&factors);
        Ok(FgAbGroup(Arc::new(GroupInner {
            rank: k,
            presentation: Presentation::General {
                relations: rels.clone(),
                to_smith: s.v,
                from_smith: s.v_inv,
                factors,
            },
            invariants,
        })))
    }

    pub fn diagonal(orders: Vec<BigInt>) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().map(|o| o.abs()).collect();
        let invariants = invariants_of_diagonal(&orders);
        FgAbGroup(Arc::new(GroupInner {
            rank: orders.len(),
            presentation: Presentation::Diagonal(orders),
            invariants,
        }))
    }

    pub fn cyclic(n: i64) -> Self {
        Self::diagonal(vec![BigInt::from(n)])
    }

    pub fn free(k: usize) -> Self {
        Self::diagonal(vec![BigInt::zero(); k])
    }

    pub fn trivial() -> Self {
        Self::diagonal(Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.0.rank
    }

    pub fn orders(&self) -> Option<&[BigInt]> {
        match &self.0.presentation {
            Presentation::Diagonal(o) => Some(o),
            Presentation::General { .. } => None,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.orders().is_some()
    }

    /// Relation rows generating `L`.
    pub fn relation_rows(&self) -> IntMatrix {
        match &self.0.presentation {
            Presentation::Diagonal(o) => {
                let rows: Vec<Vec<BigInt>> = o
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| !d.is_zero())
                    .map(|(i, d)| {
                        let mut v = vec![BigInt::zero(); o.len()];
                        v[i] = d.clone();
                        v
                    })
                    .collect();
                IntMatrix::from_row_vecs(o.len(), rows)
            }
            Presentation::General { relations, .. } => relations.clone(),
        }
    }

    /// Pruned invariant factors `d_1 | d_2 | ...`, free factors (0) last.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.0.invariants
    }

    pub fn free_rank(&self) -> usize {
        self.0.invariants.iter().filter(|d| d.is_zero()).count()
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.0.invariants.iter().fold(BigInt::one(), |a, d| a * d))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.invariants.is_empty()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.0.invariants == other.0.invariants
    }

    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.rank == other.0.rank && self.0.presentation == other.0.presentation)
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        super::matrix::unit_vec(self.rank(), i)
    }

    /// Canonical representative of the class of `x`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rank(), "element has wrong length");
        match &self.0.presentation {
            Presentation::Diagonal(o) => x
                .iter()
                .zip(o)
                .map(|(v, d)| if d.is_zero() { v.clone() } else { v.mod_floor(d) })
                .collect(),
            Presentation::General {
                to_smith,
                from_smith,
                factors,
                ..
            } => {
                let y: Vec<BigInt> = vec_mul(x, to_smith)
                    .into_iter()
                    .zip(factors)
                    .map(|(v, d)| if d.is_zero() { v } else { v.mod_floor(d) })
                    .collect();
                vec_mul(&y, from_smith)
            }
        }
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.normal_coords(x).iter().all(Zero::is_zero)
    }

    pub fn elements_equal(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// Reduced coordinates over the nontrivial cyclic factors (Smith factors
    /// for general presentations, generator orders for diagonal ones).
    pub fn normal_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rank(), "element has wrong length");
        match &self.0.presentation {
            Presentation::Diagonal(o) => x
                .iter()
                .zip(o)
                .filter(|(_, d)| !d.is_one())
                .map(|(v, d)| if d.is_zero() { v.clone() } else { v.mod_floor(d) })
                .collect(),
            Presentation::General {
                to_smith, factors, ..
            } => vec_mul(x, to_smith)
                .into_iter()
                .zip(factors)
                .filter(|(_, d)| !d.is_one())
                .map(|(v, d)| if d.is_zero() { v } else { v.mod_floor(d) })
                .collect(),
        }
    }

    pub fn simplify(&self) -> Simplification {
        match &self.0.presentation {
            Presentation::Diagonal(o) => {
                let keep: Vec<usize> = (0..o.len()).filter(|&i| !o[i].is_one()).collect();
                if keep.len() == o.len() {
                    return Simplification {
                        group: self.clone(),
                        to: IntMatrix::identity(o.len()),
                        from: IntMatrix::identity(o.len()),
                    };
                }
                let id = IntMatrix::identity(o.len());
                Simplification {
                    group: FgAbGroup::diagonal(keep.iter().map(|&i| o[i].clone()).collect()),
                    to: id.select_cols(&keep),
                    from: id.select_rows(&keep),
                }
            }
            Presentation::General {
                to_smith,
                from_smith,
                factors,
                ..
            } => {
                let keep: Vec<usize> = (0..factors.len()).filter(|&i| !factors[i].is_one()).collect();
                Simplification {
                    group: FgAbGroup::diagonal(keep.iter().map(|&i| factors[i].clone()).collect()),
                    to: to_smith.select_cols(&keep),
                    from: from_smith.select_rows(&keep),
                }
            }
        }
    }

    pub fn direct_sum(groups: &[FgAbGroup]) -> FgAbGroup {
        if groups.iter().all(FgAbGroup::is_diagonal) {
            return FgAbGroup::diagonal(
                groups
                    .iter()
                    .flat_map(|g| g.orders().unwrap().iter().cloned())
                    .collect(),
            );
        }
        let k: usize = groups.iter().map(FgAbGroup::rank).sum();
        let mut rows = Vec::new();
        let mut offset = 0;
        for g in groups {
            let r = g.relation_rows();
            for i in 0..r.rows() {
                let mut v = vec![BigInt::zero(); k];
                v[offset..offset + g.rank()].clone_from_slice(r.row(i));
                rows.push(v);
            }
            offset += g.rank();
        }
        FgAbGroup::from_presentation(k, &IntMatrix::from_row_vecs(k, rows))
            .expect("block relations have matching width")
    }

    /// Tensor product of two diagonal groups, indexed row-major by pairs.
    pub fn tensor_diagonal(&self, other: &FgAbGroup) -> FgAbGroup {
        let a = self.orders().expect("tensor_diagonal needs a diagonal group");
        let b = other.orders().expect("tensor_diagonal needs a diagonal group");
        let mut orders = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                orders.push(x.gcd(y));
            }
        }
        FgAbGroup::diagonal(orders)
    }

    /// All elements of a finite group as canonical ambient vectors.
    ///
    /// Panics if the group is infinite or larger than `limit`.
    pub fn elements(&self, limit: usize) -> Vec<Vec<BigInt>> {
        let order = self.order().expect("cannot enumerate an infinite group");
        assert!(
            order <= BigInt::from(limit),
            "group of order {order} exceeds enumeration limit {limit}"
        );
        let s = self.simplify();
        let orders: Vec<usize> = s
            .group
            .orders()
            .unwrap()
            .iter()
            .map(|d| d.to_usize().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; orders.len()];
        loop {
            let y: Vec<BigInt> = idx.iter().map(|&i| BigInt::from(i)).collect();
            out.push(self.reduce(&vec_mul(&y, &s.from)));
            let mut pos = 0;
            loop {
                if pos == orders.len() {
                    return out;
                }
                idx[pos] += 1;
                if idx[pos] < orders[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Multiplicative order of an element (0 when infinite).
    pub fn element_order(&self, x: &[BigInt]) -> BigInt {
        let s = self.simplify();
        let y = vec_mul(x, &s.to);
        let mut acc = BigInt::one();
        for (v, d) in y.iter().zip(s.group.orders().unwrap()) {
            let v = if d.is_zero() { v.clone() } else { v.mod_floor(d) };
            if v.is_zero() {
                continue;
            }
            if d.is_zero() {
                return BigInt::zero();
            }
            acc = acc.lcm(&(d / v.gcd(d)));
        }
        acc
    }
}

fn diagonal_orders(k: usize, rels: &IntMatrix) -> Option<Vec<BigInt>> {
    let mut orders = vec![BigInt::zero(); k];
    for r in 0..rels.rows() {
        let nz: Vec<usize> = (0..k).filter(|&c| !rels[(r, c)].is_zero()).collect();
        match nz.as_slice() {
            [] => {}
            [c] => orders[*c] = orders[*c].gcd(&rels[(r, *c)]),
            _ => return None,
        }
    }
    Some(orders)
}

fn prune(factors: &[BigInt]) -> Vec<BigInt> {
    let mut finite: Vec<BigInt> = factors
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    finite.sort();
    let zeros = factors.iter().filter(|d| d.is_zero()).count();
    finite.extend(std::iter::repeat_n(BigInt::zero(), zeros));
    finite
}

/// Invariant factors of `⊕ Z/o_i` through primary decomposition.
fn invariants_of_diagonal(orders: &[BigInt]) -> Vec<BigInt> {
    let mut counts: BTreeMap<BigInt, usize> = BTreeMap::new();
    let mut zeros = 0;
    for o in orders {
        if o.is_zero() {
            zeros += 1;
        } else if !o.is_one() {
            *counts.entry(o.clone()).or_insert(0) += 1;
        }
    }
    // prime -> exponents (with multiplicity)
    let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for (o, c) in &counts {
        for (p, e) in factorize(o) {
            primary.entry(p).or_default().extend(std::iter::repeat_n(e, *c));
        }
    }
    let len = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut inv = vec![BigInt::one(); len];
    for (p, exps) in &mut primary {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in exps.iter().enumerate() {
            // k-th largest exponent contributes to the k-th largest factor
            inv[len - 1 - k] *= num_traits::pow(p.clone(), *e as usize);
        }
    }
    inv.extend(std::iter::repeat_n(BigInt::zero(), zeros));
    inv
}

fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut out = Vec::new();
    let mut n = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other)
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup(rank {}, {})", self.rank(), describe(self.invariant_factors()))
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&describe(self.invariant_factors()))
    }
}

/// Human-readable `Z/2 + Z/6 + Z` style description.
pub fn describe(inv: &[BigInt]) -> String {
    if inv.is_empty() {
        return "0".to_string();
    }
    inv.iter()
        .map(|d| if d.is_zero() { "Z".to_string() } else { format!("Z/{d}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A homomorphism acting on row vectors of ambient coordinates.
#[derive(Clone, Debug)]
pub struct GroupMap {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupMap {
    /// Checks shape and that every source relation maps to zero.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, LinalgError> {
        if matrix.rows() != source.rank() || matrix.cols() != target.rank() {
            return Err(LinalgError::ShapeMismatch {
                expected: (source.rank(), target.rank()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        let map = GroupMap { source, target, matrix };
        if let Some(row) = map.first_ill_defined_relation() {
            return Err(LinalgError::NotWellDefined { row });
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (source.rank(), target.rank()));
        GroupMap { source, target, matrix }
    }

    fn first_ill_defined_relation(&self) -> Option<usize> {
        match self.source.orders() {
            Some(o) => o.iter().enumerate().find_map(|(i, d)| {
                if d.is_zero() {
                    return None;
                }
                let img: Vec<BigInt> = self.matrix.row(i).iter().map(|x| x * d).collect();
                (!self.target.is_zero(&img)).then_some(i)
            }),
            None => {
                let rel = self.source.relation_rows();
                (0..rel.rows()).find(|&r| !self.target.is_zero(&vec_mul(rel.row(r), &self.matrix)))
            }
        }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupMap::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.rank()))
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupMap::new_unchecked(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(source.rank(), target.rank()),
        )
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&vec_mul(x, &self.matrix))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupMap) -> Result<GroupMap, LinalgError> {
        if !self.target.same_presentation(&next.source) {
            return Err(LinalgError::AmbientMismatch);
        }
        Ok(GroupMap::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            self.matrix.mul(&next.matrix),
        ))
    }

    pub fn add(&self, other: &GroupMap) -> Result<GroupMap, LinalgError> {
        self.check_parallel(other)?;
        Ok(GroupMap::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn sub(&self, other: &GroupMap) -> Result<GroupMap, LinalgError> {
        self.check_parallel(other)?;
        Ok(GroupMap::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.sub(&other.matrix),
        ))
    }

    fn check_parallel(&self, other: &GroupMap) -> Result<(), LinalgError> {
        if self.source.same_presentation(&other.source) && self.target.same_presentation(&other.target) {
            Ok(())
        } else {
            Err(LinalgError::AmbientMismatch)
        }
    }

    /// Equality as homomorphisms (not as matrices).
    pub fn equals(&self, other: &GroupMap) -> bool {
        self.check_parallel(other).is_ok()
            && self.matrix.sub(&other.matrix).row_vecs().iter().all(|r| self.target.is_zero(r))
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.row_vecs().iter().all(|r| self.target.is_zero(r))
    }

    pub fn kernel(&self) -> Subgroup {
        let s = self.target.simplify();
        let a = self.matrix.mul(&s.to);
        let orders = s.group.orders().unwrap().to_vec();
        let rows: Vec<_> = (0..a.rows()).map(|r| dense_to_sparse(a.row(r))).collect();
        let gens = sparse_kernel(&rows, &|c| orders[c].clone());
        let k = self.source.rank();
        let dense: Vec<Vec<BigInt>> = gens.iter().map(|v| sparse_to_dense(v, k)).collect();
        Subgroup::new_unchecked(self.source.clone(), IntMatrix::from_row_vecs(k, dense))
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new_unchecked(self.target.clone(), self.matrix.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_everything()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `self(x) = y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let s = self.target.simplify();
        let a = self.matrix.mul(&s.to);
        let orders = s.group.orders().unwrap();
        let mut stacked = a;
        let extra: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(j, d)| {
                let mut v = vec![BigInt::zero(); orders.len()];
                v[j] = d.clone();
                v
            })
            .collect();
        stacked = stacked.vstack(&IntMatrix::from_row_vecs(orders.len(), extra));
        let rhs = vec_mul(y, &s.to);
        let sol = solve_left(&stacked, &rhs)?;
        Some(self.source.reduce(&sol[..self.source.rank()]))
    }
}

/// A subgroup given by generators in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: FgAbGroup,
    generators: IntMatrix,
}

impl Subgroup {
    pub fn new(ambient: FgAbGroup, generators: IntMatrix) -> Result<Self, LinalgError> {
        if generators.cols() != ambient.rank() {
            return Err(LinalgError::ColumnMismatch {
                expected: ambient.rank(),
                found: generators.cols(),
            });
        }
        Ok(Subgroup { ambient, generators })
    }

    pub(crate) fn new_unchecked(ambient: FgAbGroup, generators: IntMatrix) -> Self {
        Subgroup { ambient, generators }
    }

    pub fn zero(ambient: &FgAbGroup) -> Self {
        Subgroup::new_unchecked(ambient.clone(), IntMatrix::zeros(0, ambient.rank()))
    }

    pub fn whole(ambient: &FgAbGroup) -> Self {
        Subgroup::new_unchecked(ambient.clone(), IntMatrix::identity(ambient.rank()))
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    /// Row HNF of the generators stacked over the ambient relations.
    pub fn canonical(&self) -> IntMatrix {
        let stacked = self.generators.vstack(&self.ambient.relation_rows());
        hnf_only(&stacked).nonzero_rows()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let stacked = self.generators.vstack(&self.ambient.relation_rows());
        solve_left(&stacked, x).is_some()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> Result<bool, LinalgError> {
        if !self.ambient.same_presentation(&other.ambient) {
            return Err(LinalgError::AmbientMismatch);
        }
        Ok((0..self.generators.rows()).all(|r| other.contains(self.generators.row(r))))
    }

    pub fn equals(&self, other: &Subgroup) -> Result<bool, LinalgError> {
        if !self.ambient.same_presentation(&other.ambient) {
            return Err(LinalgError::AmbientMismatch);
        }
        Ok(self.canonical() == other.canonical())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.row_vecs().iter().all(|r| self.ambient.is_zero(r))
    }

    pub fn is_everything(&self) -> bool {
        let rel_span = hnf_only(&self.ambient.relation_rows()).nonzero_rows();
        let _ = rel_span;
        (0..self.ambient.rank()).all(|i| self.contains(&self.ambient.generator(i)))
    }

    /// The subgroup as an abstract (simplified) group together with its
    /// inclusion into the ambient group.
    pub fn as_group(&self) -> (FgAbGroup, GroupMap) {
        let s = self.generators.rows();
        let free = FgAbGroup::free(s);
        let to_ambient = GroupMap::new_unchecked(free, self.ambient.clone(), self.generators.clone());
        let rels = to_ambient.kernel().generators;
        let pres = FgAbGroup::from_presentation(s, &rels).expect("kernel rows have width s");
        let simp = pres.simplify();
        let incl = simp.from.mul(&self.generators);
        (simp.group.clone(), GroupMap::new_unchecked(simp.group, self.ambient.clone(), incl))
    }

    /// Generators that are not contained in `other`.
    pub fn generators_outside(&self, other: &Subgroup) -> Vec<Vec<BigInt>> {
        (0..self.generators.rows())
            .filter(|&r| !other.contains(self.generators.row(r)))
            .map(|r| self.ambient.reduce(self.generators.row(r)))
            .collect()
    }
}

pub fn kernel_of(f: &GroupMap) -> Subgroup {
    f.kernel()
}

pub fn image_of(f: &GroupMap) -> Subgroup {
    f.image()
}

/// `G / H` with its canonical projection (same ambient coordinates).
pub fn quotient(g: &FgAbGroup, h: &Subgroup) -> Result<(FgAbGroup, GroupMap), LinalgError> {
    if !g.same_presentation(h.ambient()) {
        return Err(LinalgError::AmbientMismatch);
    }
    let rels = g.relation_rows().vstack(h.generators());
    let q = FgAbGroup::from_presentation(g.rank(), &rels)?;
    let proj = GroupMap::new_unchecked(g.clone(), q.clone(), IntMatrix::identity(g.rank()));
    Ok((q, proj))
}

pub fn subgroups_equal(a: &Subgroup, b: &Subgroup) -> Result<bool, LinalgError> {
    a.equals(b)
}

/// `Hom(G, H)` realised inside `H'^m` (one block per Smith generator of
/// `G`), i.e. matrices of images subject to the order congruences.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: FgAbGroup,
    source: FgAbGroup,
    target: FgAbGroup,
    src: Simplification,
    tgt: Simplification,
    /// `group -> H'^m`
    inclusion: GroupMap,
}

impl HomGroup {
    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    /// Matrix (`rank G x rank H`) of the homomorphism with coordinates `f`.
    pub fn matrix_of(&self, f: &[BigInt]) -> IntMatrix {
        let flat = vec_mul(f, self.inclusion.matrix());
        let m = self.src.group.rank();
        let l = self.tgt.group.rank();
        let rows: Vec<Vec<BigInt>> = (0..m).map(|i| flat[i * l..(i + 1) * l].to_vec()).collect();
        let x = IntMatrix::from_row_vecs(l, rows);
        self.src.to.mul(&x).mul(&self.tgt.from)
    }

    pub fn to_map(&self, f: &[BigInt]) -> GroupMap {
        GroupMap::new_unchecked(self.source.clone(), self.target.clone(), self.matrix_of(f))
    }

    pub fn evaluate(&self, f: &[BigInt], x: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&vec_mul(x, &self.matrix_of(f)))
    }

    /// Coordinates of the homomorphism given by a matrix `G -> H`.
    pub fn from_matrix(&self, x: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
        GroupMap::new(self.source.clone(), self.target.clone(), x.clone())?;
        let reduced = self.src.from.mul(x).mul(&self.tgt.to);
        let flat: Vec<BigInt> = reduced.row_vecs().concat();
        self.inclusion
            .preimage(&flat)
            .ok_or(LinalgError::NotWellDefined { row: 0 })
    }
}

pub fn hom_group(g: &FgAbGroup, h: &FgAbGroup) -> HomGroup {
    let src = g.simplify();
    let tgt = h.simplify();
    let m = src.group.rank();
    let l = tgt.group.rank();
    let a = src.group.orders().unwrap();
    let block = FgAbGroup::direct_sum(&vec![tgt.group.clone(); m]);
    // X -> (a_i * X_i)_i ; its kernel is the set of well-defined matrices
    let mut mat = IntMatrix::zeros(m * l, m * l);
    for i in 0..m {
        for j in 0..l {
            mat[(i * l + j, i * l + j)] = a[i].clone();
        }
    }
    let constraint = GroupMap::new_unchecked(block.clone(), block, mat);
    let (group, inclusion) = constraint.kernel().as_group();
    HomGroup {
        group,
        source: g.clone(),
        target: h.clone(),
        src,
        tgt,
        inclusion,
    }
}

/// `G ⊗_Z H` on pairs of simplified generators.
#[derive(Clone, Debug)]
pub struct TensorZ {
    pub group: FgAbGroup,
    pub left_to: IntMatrix,
    pub right_to: IntMatrix,
}

impl TensorZ {
    pub fn pure(&self, g: &[BigInt], h: &[BigInt]) -> Vec<BigInt> {
        let a = vec_mul(g, &self.left_to);
        let b = vec_mul(h, &self.right_to);
        self.group.reduce(&super::matrix::kron_vec(&a, &b))
    }
}

pub fn tensor_z(g: &FgAbGroup, h: &FgAbGroup) -> TensorZ {
    let a = g.simplify();
    let b = h.simplify();
    TensorZ {
        group: a.group.tensor_diagonal(&b.group),
        left_to: a.to,
        right_to: b.to,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::ints;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn presentations() {
        let g = FgAbGroup::from_presentation(1, &IntMatrix::from_i64(&[&[2]])).unwrap();
        assert_eq!(g.invariant_factors(), &[z(2)]);
        let g = FgAbGroup::from_presentation(2, &IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(g.invariant_factors(), &[z(0), z(0)]);
        let g = FgAbGroup::from_presentation(2, &IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(g.invariant_factors(), &[z(6)]);
        assert_eq!(g.elements(100).len(), 6);
        assert!(FgAbGroup::from_presentation(3, &IntMatrix::from_i64(&[&[2, 0]])).is_err());
    }

    #[test]
    fn general_presentation_reduces_canonically() {
        let g = FgAbGroup::from_presentation(2, &IntMatrix::from_i64(&[&[2, 4], &[1, 3]])).unwrap();
        assert_eq!(g.invariant_factors(), &[z(2)]);
        let a = g.reduce(&ints(&[1, 0]));
        let b = g.reduce(&ints(&[0, 1]));
        // (1,3) = 0, so e1 = -3 e2 = e2 (order 2)
        assert_eq!(a, b);
        assert!(g.is_zero(&ints(&[1, 3])));
    }

    #[test]
    fn kernels_images_quotients() {
        let zz = FgAbGroup::free(1);
        let times2 = GroupMap::new(zz.clone(), zz.clone(), IntMatrix::from_i64(&[&[2]])).unwrap();
        assert!(times2.kernel().is_trivial());
        let z2 = FgAbGroup::cyclic(2);
        let proj = GroupMap::new(zz.clone(), z2, IntMatrix::from_i64(&[&[1]])).unwrap();
        let two_z = Subgroup::new(zz.clone(), IntMatrix::from_i64(&[&[2]])).unwrap();
        assert!(proj.kernel().equals(&two_z).unwrap());

        let z2sq = FgAbGroup::free(2);
        let h = Subgroup::new(z2sq.clone(), IntMatrix::from_i64(&[&[2, 0], &[0, 2]])).unwrap();
        let (q, _) = quotient(&z2sq, &h).unwrap();
        assert_eq!(q.invariant_factors(), &[z(2), z(2)]);
    }

    #[test]
    fn subgroup_equality_examples() {
        let g = FgAbGroup::free(2);
        let s = |rows: &[&[i64]]| Subgroup::new(g.clone(), IntMatrix::from_i64(rows)).unwrap();
        assert!(subgroups_equal(&s(&[&[2, 0]]), &s(&[&[-2, 0]])).unwrap());
        assert!(subgroups_equal(&s(&[&[1, 1], &[0, 2]]), &s(&[&[1, -1], &[0, 2]])).unwrap());
        assert!(!subgroups_equal(&s(&[&[2, 0]]), &s(&[&[0, 2]])).unwrap());
        let other = Subgroup::zero(&FgAbGroup::free(3));
        assert!(s(&[&[1, 0]]).equals(&other).is_err());
    }

    #[test]
    fn hom_and_tensor_examples() {
        let z2 = FgAbGroup::cyclic(2);
        let zz = FgAbGroup::free(1);
        assert!(hom_group(&z2, &zz).group.is_trivial());
        let g = FgAbGroup::diagonal(ints(&[4, 0]));
        assert!(hom_group(&zz, &g).group.is_isomorphic(&g));
        let h = hom_group(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6));
        assert_eq!(h.group.invariant_factors(), &[z(2)]);
        let f = h.group.generator(0);
        assert_eq!(h.evaluate(&f, &ints(&[1])), ints(&[3]));

        assert_eq!(tensor_z(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6)).group.invariant_factors(), &[z(2)]);
        assert!(tensor_z(&zz, &g).group.is_isomorphic(&g));
        assert!(tensor_z(&z2, &FgAbGroup::cyclic(3)).group.is_trivial());
    }

    #[test]
    fn hom_from_matrix_round_trip() {
        let g = FgAbGroup::from_presentation(2, &IntMatrix::from_i64(&[&[2, 2]])).unwrap();
        let h = FgAbGroup::cyclic(4);
        let hom = hom_group(&g, &h);
        let x = IntMatrix::from_i64(&[&[1], &[1]]);
        let f = hom.from_matrix(&x).unwrap();
        assert!(hom.to_map(&f).equals(&GroupMap::new(g, h, x).unwrap()));
    }

    #[test]
    fn element_orders() {
        let g = FgAbGroup::diagonal(ints(&[4, 6, 0]));
        assert_eq!(g.element_order(&ints(&[2, 3, 0])), z(2));
        assert_eq!(g.element_order(&ints(&[1, 1, 0])), z(12));
        assert_eq!(g.element_order(&ints(&[0, 0, 1])), z(0));
    }
}
