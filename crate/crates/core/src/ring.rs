//! Rings that are finitely generated as abelian groups, described by
//! structure constants over a diagonal additive group.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{hom_group, unit_vec, FgAbGroup, GroupMap, IntMatrix, Subgroup};

/// A violated ring axiom, naming the offending basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("(e{0}*e{1})*e{2} != e{0}*(e{1}*e{2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit does not act as identity on e{0}")]
    BadUnit(usize),
    #[error("product e{0}*e{1} is not killed by the orders of its factors")]
    OrderIncompatible(usize, usize),
    #[error("malformed ring data: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring axioms violated: {}", list(.0))]
    Invalid(Vec<AxiomViolation>),
    #[error("ring map is not {0}")]
    BadRingMap(&'static str),
    #[error("elements do not generate a unital subring")]
    NotUnital,
    #[error("rings do not match")]
    RingMismatch,
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("invalid parameters for `{0}`")]
    InvalidParams(String),
}

fn list(v: &[AxiomViolation]) -> String {
    v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

/// Raw structure-constant data prior to validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingData {
    pub name: String,
    pub orders: Vec<BigInt>,
    /// `constants[i][j]` = coordinates of `e_i * e_j`.
    pub constants: Vec<Vec<Vec<BigInt>>>,
    pub unit: Vec<BigInt>,
}

impl RingData {
    /// Empty table of the given rank (all products zero).
    pub fn new(name: impl Into<String>, orders: Vec<BigInt>, unit: Vec<BigInt>) -> Self {
        let n = orders.len();
        RingData {
            name: name.into(),
            orders,
            constants: vec![vec![vec![BigInt::zero(); n]; n]; n],
            unit,
        }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: impl Into<BigInt>) {
        self.constants[i][j][k] = c.into();
    }
}

struct RingInner {
    data: RingData,
    additive: FgAbGroup,
}

/// A validated ring. Cloning is cheap.
#[derive(Clone)]
pub struct StructureRing(Arc<RingInner>);

pub fn ring_validate(data: RingData) -> Result<StructureRing, RingError> {
    let n = data.rank();
    let shape_ok = data.unit.len() == n
        && data.constants.len() == n
        && data
            .constants
            .iter()
            .all(|row| row.len() == n && row.iter().all(|c| c.len() == n));
    if !shape_ok {
        return Err(RingError::Invalid(vec![AxiomViolation::Malformed(format!(
            "expected rank-{n} unit and {n}x{n}x{n} constants"
        ))]));
    }
    let additive = FgAbGroup::diagonal(data.orders.clone());
    let ring = StructureRing(Arc::new(RingInner { data, additive }));
    let mut bad = Vec::new();
    let orders = ring.orders().to_vec();
    for i in 0..n {
        for j in 0..n {
            let p = ring.basis_product(i, j);
            let killed = |d: &BigInt| {
                let scaled: Vec<BigInt> = p.iter().map(|x| x * d).collect();
                ring.is_zero(&scaled)
            };
            if !killed(&orders[i]) || !killed(&orders[j]) {
                bad.push(AxiomViolation::OrderIncompatible(i, j));
            }
        }
    }
    for i in 0..n {
        let e = unit_vec(n, i);
        let one = ring.one();
        if !ring.eq_elem(&ring.mul(&one, &e), &e) || !ring.eq_elem(&ring.mul(&e, &one), &e) {
            bad.push(AxiomViolation::BadUnit(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = ring.basis_product(i, j);
            for l in 0..n {
                let el = unit_vec(n, l);
                let left = ring.mul(&ij, &el);
                let jl = ring.basis_product(j, l);
                let right = ring.mul(&unit_vec(n, i), &jl);
                if !ring.eq_elem(&left, &right) {
                    bad.push(AxiomViolation::NonAssociative(i, j, l));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(ring)
    } else {
        Err(RingError::Invalid(bad))
    }
}

/// Opposite ring: `c'[i][j] = c[j][i]`.
pub fn ring_opposite(r: &StructureRing) -> StructureRing {
    let d = &r.0.data;
    let mut constants = d.constants.clone();
    for (i, row) in constants.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = d.constants[j][i].clone();
        }
    }
    let name = match d.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None if r.is_commutative() => d.name.clone(),
        None => format!("{}^op", d.name),
    };
    StructureRing(Arc::new(RingInner {
        data: RingData {
            name,
            orders: d.orders.clone(),
            constants,
            unit: d.unit.clone(),
        },
        additive: r.0.additive.clone(),
    }))
}

impl StructureRing {
    pub fn name(&self) -> &str {
        &self.0.data.name
    }

    pub fn data(&self) -> &RingData {
        &self.0.data
    }

    pub fn rank(&self) -> usize {
        self.0.data.rank()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.0.data.orders
    }

    pub fn additive(&self) -> &FgAbGroup {
        &self.0.additive
    }

    pub fn one(&self) -> Vec<BigInt> {
        self.reduce(&self.0.data.unit)
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn basis(&self, i: usize) -> Vec<BigInt> {
        unit_vec(self.rank(), i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<BigInt> {
        self.reduce(&self.0.data.constants[i][j])
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.0.data.constants[i][j][k]
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.0.additive.reduce(x)
    }

    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        self.reduce(x).iter().all(Zero::is_zero)
    }

    pub fn eq_elem(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &BigInt, a: &[BigInt]) -> Vec<BigInt> {
        let s: Vec<BigInt> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.rank();
        let mut out = vec![BigInt::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let k = ai * bj;
                for (o, c) in out.iter_mut().zip(&self.0.data.constants[i][j]) {
                    if !c.is_zero() {
                        *o += &k * c;
                    }
                }
            }
        }
        self.reduce(&out)
    }

    /// Matrix of `x ↦ a·x` acting on row vectors (row `i` is `a·e_i`).
    pub fn left_mult_matrix(&self, a: &[BigInt]) -> IntMatrix {
        let rows = (0..self.rank()).map(|i| self.mul(a, &self.basis(i))).collect();
        IntMatrix::from_row_vecs(self.rank(), rows)
    }

    /// Matrix of `x ↦ x·a` acting on row vectors (row `i` is `e_i·a`).
    pub fn right_mult_matrix(&self, a: &[BigInt]) -> IntMatrix {
        let rows = (0..self.rank()).map(|i| self.mul(&self.basis(i), a)).collect();
        IntMatrix::from_row_vecs(self.rank(), rows)
    }

    pub fn is_central(&self, a: &[BigInt]) -> bool {
        (0..self.rank()).all(|i| {
            let e = self.basis(i);
            self.eq_elem(&self.mul(a, &e), &self.mul(&e, a))
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.rank()).all(|i| {
            (i + 1..self.rank()).all(|j| self.eq_elem(&self.basis_product(i, j), &self.basis_product(j, i)))
        })
    }

    /// Additive order of `1` (0 for characteristic zero).
    pub fn characteristic(&self) -> BigInt {
        self.0.additive.element_order(&self.one())
    }

    /// All elements, for finite rings of order at most `limit`.
    pub fn elements(&self, limit: usize) -> Vec<Vec<BigInt>> {
        self.0.additive.elements(limit)
    }

    pub fn same_ring(&self, other: &StructureRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.data == other.0.data
    }

    /// Same multiplication table and orders, ignoring the name.
    pub fn same_structure(&self, other: &StructureRing) -> bool {
        let (a, b) = (&self.0.data, &other.0.data);
        a.orders == b.orders && a.constants == b.constants && a.unit == b.unit
    }

    pub fn renamed(&self, name: impl Into<String>) -> StructureRing {
        let mut data = self.0.data.clone();
        data.name = name.into();
        StructureRing(Arc::new(RingInner {
            data,
            additive: self.0.additive.clone(),
        }))
    }

    /// Multiplication table rendered one product per line.
    pub fn table_string(&self) -> String {
        let n = self.rank();
        let mut out = String::new();
        let orders: Vec<String> = self.orders().iter().map(|o| o.to_string()).collect();
        out.push_str(&format!("rank {n}\norders {}\nunit {}\n", orders.join(" "), join(&self.0.data.unit)));
        for i in 0..n {
            for j in 0..n {
                out.push_str(&format!("e{i}*e{j} = {}\n", join(&self.0.data.constants[i][j])));
            }
        }
        out
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl PartialEq for StructureRing {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl fmt::Debug for StructureRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureRing({}, rank {})", self.name(), self.rank())
    }
}

/// A unital ring homomorphism, as a matrix on additive generators.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: StructureRing,
    target: StructureRing,
    map: GroupMap,
}

impl RingMap {
    pub fn new(source: StructureRing, target: StructureRing, matrix: IntMatrix) -> Result<Self, RingError> {
        let map = GroupMap::new(source.additive().clone(), target.additive().clone(), matrix)
            .map_err(|_| RingError::BadRingMap("additively well defined"))?;
        let f = RingMap { source, target, map };
        let n = f.source.rank();
        for i in 0..n {
            for j in 0..n {
                let lhs = f.apply(&f.source.basis_product(i, j));
                let rhs = f.target.mul(&f.apply(&f.source.basis(i)), &f.apply(&f.source.basis(j)));
                if !f.target.eq_elem(&lhs, &rhs) {
                    return Err(RingError::BadRingMap("multiplicative"));
                }
            }
        }
        if !f.target.eq_elem(&f.apply(&f.source.one()), &f.target.one()) {
            return Err(RingError::BadRingMap("unital"));
        }
        Ok(f)
    }

    pub fn identity(r: &StructureRing) -> Self {
        RingMap {
            source: r.clone(),
            target: r.clone(),
            map: GroupMap::identity(r.additive()),
        }
    }

    /// The unique map from `Z` (rank 1, infinite order) sending 1 to 1.
    pub fn from_integers(target: &StructureRing) -> Self {
        let z = crate::catalog::integers();
        RingMap::new(z, target.clone(), IntMatrix::from_row_vecs(target.rank(), vec![target.one()]))
            .expect("Z maps uniquely into every ring")
    }

    pub fn source(&self) -> &StructureRing {
        &self.source
    }

    pub fn target(&self) -> &StructureRing {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.map.matrix()
    }

    pub fn group_map(&self) -> &GroupMap {
        &self.map
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.map.apply(x)
    }

    pub fn then(&self, next: &RingMap) -> Result<RingMap, RingError> {
        if !self.target.same_ring(&next.source) {
            return Err(RingError::RingMismatch);
        }
        Ok(RingMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: GroupMap::new(
                self.source.additive().clone(),
                next.target.additive().clone(),
                self.matrix().mul(next.matrix()),
            )
            .expect("composite of well-defined maps"),
        })
    }
}

/// An algebra over a base ring: a ring together with its structure map.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: String,
    pub ring: StructureRing,
    pub structure_map: RingMap,
}

impl Algebra {
    pub fn new(name: impl Into<String>, structure_map: RingMap) -> Self {
        Algebra {
            name: name.into(),
            ring: structure_map.target().clone(),
            structure_map,
        }
    }

    /// The base ring as an algebra over itself.
    pub fn base(r: &StructureRing) -> Self {
        Algebra::new(r.name().to_string(), RingMap::identity(r))
    }

    pub fn base_ring(&self) -> &StructureRing {
        self.structure_map.source()
    }

    /// `ρ(r)`
    pub fn image(&self, r: &[BigInt]) -> Vec<BigInt> {
        self.structure_map.apply(r)
    }
}

/// Additive span of `gens` closed under products.
pub fn generated_subring(r: &StructureRing, gens: &[Vec<BigInt>]) -> Subgroup {
    let n = r.rank();
    let mut current: Vec<Vec<BigInt>> = gens.iter().map(|g| r.reduce(g)).collect();
    loop {
        let span = Subgroup::new(r.additive().clone(), IntMatrix::from_row_vecs(n, current.clone()))
            .expect("width matches ring rank");
        let basis = span.canonical().row_vecs();
        let mut grown = false;
        let mut next = basis.clone();
        for a in &basis {
            for b in &basis {
                let p = r.mul(a, b);
                if !span.contains(&p) {
                    next.push(p);
                    grown = true;
                }
            }
        }
        if !grown {
            return span;
        }
        current = next;
    }
}

/// Sufficient test for the central-subalgebra criterion: the subring `R'`
/// generated by `gens` is central and `R' → R` has an `R'`-linear
/// retraction.
pub fn is_central_subring_split(r: &StructureRing, gens: &[Vec<BigInt>]) -> Result<bool, RingError> {
    let sub = generated_subring(r, gens);
    if !sub.contains(&r.one()) {
        return Err(RingError::NotUnital);
    }
    let sub_gens = sub.canonical().row_vecs();
    if !sub_gens.iter().all(|g| r.is_central(g)) {
        return Ok(false);
    }
    let (g_abs, incl) = sub.as_group();
    let hom = hom_group(r.additive(), &g_abs);
    let m = g_abs.rank();
    let n = r.rank();
    // constraints: rho(g e_i) - g rho(e_i) for each g, i; then rho(incl t) for each t
    let blocks = sub_gens.len() * n + m;
    let target = FgAbGroup::direct_sum(&vec![g_abs.clone(); blocks]);
    let pull = |x: &[BigInt]| -> Vec<BigInt> {
        incl.preimage(x).expect("product stays inside a central subring")
    };
    let phi = |f: &[BigInt]| -> Vec<BigInt> {
        let mut out = Vec::with_capacity(blocks * m);
        for g in &sub_gens {
            for i in 0..n {
                let ge = r.mul(g, &r.basis(i));
                let lhs = hom.evaluate(f, &ge);
                let rho_e = hom.evaluate(f, &r.basis(i));
                let rhs = pull(&r.mul(g, &incl.apply(&rho_e)));
                out.extend(lhs.iter().zip(&rhs).map(|(a, b)| a - b));
            }
        }
        for t in 0..m {
            let img = incl.apply(&g_abs.generator(t));
            out.extend(hom.evaluate(f, &img));
        }
        out
    };
    let rows: Vec<Vec<BigInt>> = (0..hom.group.rank()).map(|k| phi(&hom.group.generator(k))).collect();
    let phi_map = GroupMap::new(
        hom.group.clone(),
        target.clone(),
        IntMatrix::from_row_vecs(blocks * m, rows),
    )
    .expect("constraint map is additive");
    let mut want = vec![BigInt::zero(); sub_gens.len() * n * m];
    for t in 0..m {
        want.extend(g_abs.generator(t));
    }
    Ok(phi_map.preimage(&want).is_some())
}

/// Reduce an integer modulo an order (0 = no reduction).
pub fn reduce_mod(x: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() {
        x.clone()
    } else {
        x.mod_floor(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, integers, matrix, triangular};
    use crate::linalg::ints;

    #[test]
    fn bad_unit_is_reported() {
        let mut d = RingData::new("bad", ints(&[0]), ints(&[1]));
        d.set(0, 0, 0, 2);
        match ring_validate(d) {
            Err(RingError::Invalid(v)) => assert!(v.contains(&AxiomViolation::BadUnit(0))),
            other => panic!("expected BadUnit, got {other:?}"),
        }
    }

    #[test]
    fn non_associative_triple_is_named() {
        // rank 2 over Z/2 with unit e0 and e1*e1 = e0 + e1 is associative;
        // breaking e1*e1 on one side only breaks associativity
        let mut d = RingData::new("nonassoc", ints(&[2, 2]), ints(&[1, 0]));
        d.set(0, 0, 0, 1);
        d.set(0, 1, 1, 1);
        d.set(1, 0, 1, 1);
        d.set(1, 1, 0, 1);
        assert!(ring_validate(d.clone()).is_ok());
        let mut d3 = RingData::new("nonassoc3", ints(&[2, 2, 2]), ints(&[1, 0, 0]));
        for i in 0..3 {
            d3.set(0, i, i, 1);
            d3.set(i, 0, i, 1);
        }
        d3.set(1, 1, 2, 1);
        d3.set(1, 2, 1, 1);
        let err = ring_validate(d3).unwrap_err();
        assert!(matches!(err, RingError::Invalid(v) if v.iter().any(|x| matches!(x, AxiomViolation::NonAssociative(..)))));
    }

    #[test]
    fn opposite_is_an_involution() {
        let t = triangular(2, 2);
        let op = ring_opposite(&t);
        assert!(ring_validate(op.data().clone()).is_ok());
        // e00*e01 = e01 in T, so e01*e00 = e01 in T^op
        assert_eq!(op.basis_product(1, 0), t.basis(1));
        assert!(op.is_zero(&op.basis_product(0, 1)));
        let m = matrix(2, 2);
        assert!(ring_opposite(&ring_opposite(&m)).same_structure(&m));
        assert!(ring_opposite(&cyclic(4)).same_structure(&cyclic(4)));
    }

    #[test]
    fn central_split_examples() {
        let m = matrix(2, 2);
        assert_eq!(is_central_subring_split(&m, &[m.one()]), Ok(true));
        let z = integers();
        assert_eq!(is_central_subring_split(&z, &[z.one()]), Ok(true));
        let z4 = cyclic(4);
        assert_eq!(is_central_subring_split(&z4, &[ints(&[2])]), Err(RingError::NotUnital));
        // the diagonal e00 + e11 of T2 is the unit; e00 alone is not central
        let t = triangular(2, 2);
        assert_eq!(is_central_subring_split(&t, &[t.one(), t.basis(0)]), Ok(false));
    }

    #[test]
    fn ring_maps_are_checked() {
        let z = integers();
        let z4 = cyclic(4);
        assert!(RingMap::new(z.clone(), z4.clone(), IntMatrix::from_i64(&[&[1]])).is_ok());
        assert!(RingMap::new(z.clone(), z4.clone(), IntMatrix::from_i64(&[&[2]])).is_err());
        assert!(RingMap::new(z4, z, IntMatrix::from_i64(&[&[1]])).is_err());
    }
}
