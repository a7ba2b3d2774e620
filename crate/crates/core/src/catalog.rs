//! Built-in rings, algebras, modules and diagrams used by the test suites,
//! the acceptance harness and the command-line tool.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::IntMatrix;
use crate::module::{module_from_presentation, FpModule, Side};
use crate::ring::{ring_validate, Algebra, RingData, RingError, RingMap, StructureRing};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn build(data: RingData) -> StructureRing {
    ring_validate(data).expect("catalog rings satisfy the axioms")
}

pub fn integers() -> StructureRing {
    let mut d = RingData::new("Z", vec![big(0)], vec![big(1)]);
    d.set(0, 0, 0, 1);
    build(d)
}

/// `Z/n` (`n = 0` gives `Z`).
pub fn cyclic(n: i64) -> StructureRing {
    if n == 0 {
        return integers();
    }
    let mut d = RingData::new(format!("Z/{n}"), vec![big(n)], vec![big(1)]);
    d.set(0, 0, 0, 1);
    build(d)
}

fn coeff_name(m: i64) -> String {
    if m == 0 {
        "Z".into()
    } else {
        format!("Z/{m}")
    }
}

/// `M_n(Z/m)` with basis `e_ab` at index `a*n + b`.
pub fn matrix(n: usize, m: i64) -> StructureRing {
    let r = n * n;
    let mut unit = vec![big(0); r];
    for a in 0..n {
        unit[a * n + a] = big(1);
    }
    let mut d = RingData::new(format!("M{n}({})", coeff_name(m)), vec![big(m); r], unit);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                d.set(a * n + b, b * n + c, a * n + c, 1);
            }
        }
    }
    build(d)
}

/// Upper-triangular `n x n` matrices over `Z/m`, basis `e_ab` (`a <= b`) in
/// lexicographic order.
pub fn triangular(n: usize, m: i64) -> StructureRing {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let idx = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
    let mut unit = vec![big(0); pairs.len()];
    for a in 0..n {
        unit[idx(a, a)] = big(1);
    }
    let mut d = RingData::new(format!("T{n}({})", coeff_name(m)), vec![big(m); pairs.len()], unit);
    for &(a, b) in &pairs {
        for &(c, e) in &pairs {
            if b == c {
                d.set(idx(a, b), idx(c, e), idx(a, e), 1);
            }
        }
    }
    build(d)
}

/// Group ring `Z/m[G]` for `G = Z/t_1 x ... x Z/t_k`, basis = group
/// elements in mixed radix (first factor fastest).
pub fn group_ring(group_type: &[usize], m: i64) -> StructureRing {
    let size: usize = group_type.iter().product();
    let digits = |mut x: usize| -> Vec<usize> {
        group_type
            .iter()
            .map(|&t| {
                let d = x % t;
                x /= t;
                d
            })
            .collect()
    };
    let index = |ds: &[usize]| -> usize {
        let mut x = 0;
        for (k, &t) in group_type.iter().enumerate().rev() {
            x = x * t + ds[k];
        }
        x
    };
    let mut unit = vec![big(0); size];
    unit[0] = big(1);
    let type_name = group_type.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("x");
    let mut d = RingData::new(format!("{}[C{type_name}]", coeff_name(m)), vec![big(m); size], unit);
    for i in 0..size {
        for j in 0..size {
            let (a, b) = (digits(i), digits(j));
            let s: Vec<usize> = a.iter().zip(&b).zip(group_type).map(|((x, y), t)| (x + y) % t).collect();
            d.set(i, j, index(&s), 1);
        }
    }
    build(d)
}

/// `R1 x R2` with the basis of `R1` followed by that of `R2`.
pub fn product(r1: &StructureRing, r2: &StructureRing) -> StructureRing {
    let (n1, n2) = (r1.rank(), r2.rank());
    let mut orders = r1.orders().to_vec();
    orders.extend(r2.orders().iter().cloned());
    let mut unit = r1.one();
    unit.extend(r2.one());
    let mut d = RingData::new(format!("{}x{}", r1.name(), r2.name()), orders, unit);
    for i in 0..n1 {
        for j in 0..n1 {
            for k in 0..n1 {
                d.constants[i][j][k] = r1.constant(i, j, k).clone();
            }
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            for k in 0..n2 {
                d.constants[n1 + i][n1 + j][n1 + k] = r2.constant(i, j, k).clone();
            }
        }
    }
    build(d)
}

/// `Z/m[e]` with `e^2 = 0`.
pub fn dual_numbers(m: i64) -> StructureRing {
    let mut d = RingData::new(format!("{}[e]", coeff_name(m)), vec![big(m), big(m)], vec![big(1), big(0)]);
    d.set(0, 0, 0, 1);
    d.set(0, 1, 1, 1);
    d.set(1, 0, 1, 1);
    build(d)
}

/// Names accepted by [`ring_by_name`].
pub const RING_NAMES: &[&str] = &[
    "integers",
    "cyclic(n)",
    "matrix(n,m)",
    "triangular(n,m)",
    "group_ring(t1xt2x...,m)",
    "product(R1,R2)",
    "dual_numbers(m)",
];

/// Parses catalog syntax such as `matrix(2,2)` or `product(cyclic(2),cyclic(3))`.
pub fn ring_by_name(name: &str) -> Result<StructureRing, RingError> {
    let name = name.trim();
    let bad = || RingError::InvalidParams(name.to_string());
    if name == "integers" || name == "Z" {
        return Ok(integers());
    }
    let (head, args) = match name.find('(') {
        Some(p) if name.ends_with(')') => (&name[..p], split_args(&name[p + 1..name.len() - 1])),
        _ => return Err(RingError::UnknownName(name.to_string())),
    };
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    let small = |s: &str| match s.trim().parse::<usize>() {
        Ok(v) if (1..=4).contains(&v) => Ok(v),
        _ => Err(bad()),
    };
    let modulus = |s: &str| match int(s) {
        Ok(v) if v >= 0 && v != 1 => Ok(v),
        _ => Err(bad()),
    };
    match (head, args.as_slice()) {
        ("cyclic", [n]) => Ok(cyclic(modulus(n)?)),
        ("matrix", [n, m]) => Ok(matrix(small(n)?, modulus(m)?)),
        ("triangular", [n, m]) => Ok(triangular(small(n)?, modulus(m)?)),
        ("dual_numbers", [m]) => Ok(dual_numbers(modulus(m)?)),
        ("group_ring", [t, m]) => {
            let ty: Vec<usize> = t
                .split('x')
                .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if ty.is_empty() || ty.iter().any(|&x| x < 1) || ty.iter().product::<usize>() > 16 {
                return Err(bad());
            }
            Ok(group_ring(&ty, modulus(m)?))
        }
        ("product", [a, b]) => Ok(product(&ring_by_name(a)?, &ring_by_name(b)?)),
        ("cyclic" | "matrix" | "triangular" | "dual_numbers" | "group_ring" | "product", _) => Err(bad()),
        _ => Err(RingError::UnknownName(name.to_string())),
    }
}

fn split_args(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s.trim().is_empty() {
        out.push(s[start..].trim());
    }
    out
}

/// The ring `R/nR` as an algebra over `R` (quotient map on coordinates).
pub fn reduction_mod(r: &StructureRing, n: i64) -> Option<Algebra> {
    let orders: Vec<BigInt> = r
        .orders()
        .iter()
        .map(|o| num_integer::Integer::gcd(o, &big(n)))
        .collect();
    if orders.as_slice() == r.orders() {
        return None;
    }
    let mut d = r.data().clone();
    d.name = format!("{}/{n}", r.name());
    d.orders = orders;
    let q = ring_validate(d).ok()?;
    if q.additive().is_trivial() {
        return None;
    }
    let map = RingMap::new(r.clone(), q, IntMatrix::identity(r.rank())).ok()?;
    Some(Algebra::new(map.target().name().to_string(), map))
}

/// `R x R` with the diagonal structure map.
pub fn square(r: &StructureRing) -> Algebra {
    let rr = product(r, r);
    let m = IntMatrix::identity(r.rank()).hstack(&IntMatrix::identity(r.rank()));
    Algebra::new(rr.name().to_string(), RingMap::new(r.clone(), rr, m).expect("diagonal is a ring map"))
}

/// `R[e]`, `e^2 = 0`, with basis `(basis of R, basis of R)·e`.
pub fn dual_extension(r: &StructureRing) -> Algebra {
    let n = r.rank();
    let mut orders = r.orders().to_vec();
    orders.extend(r.orders().iter().cloned());
    let mut unit = r.one();
    unit.extend(r.zero());
    let mut d = RingData::new(format!("{}[e]", r.name()), orders, unit);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = r.constant(i, j, k).clone();
                d.constants[i][j][k] = c.clone();
                d.constants[i][n + j][n + k] = c.clone();
                d.constants[n + i][j][n + k] = c;
            }
        }
    }
    let ring = build(d);
    let m = IntMatrix::identity(n).hstack(&IntMatrix::zeros(n, n));
    Algebra::new(ring.name().to_string(), RingMap::new(r.clone(), ring, m).expect("inclusion is a ring map"))
}

/// `M_2(R)` for a ring of additive rank one, with scalar structure map.
pub fn matrix_over(r: &StructureRing) -> Option<Algebra> {
    if r.rank() != 1 {
        return None;
    }
    let m = r.orders()[0].clone();
    let ring = matrix(2, i64::try_from(&m).ok()?);
    let ring = ring.renamed(format!("M2({})", r.name()));
    let row = vec![r.one()[0].clone(), big(0), big(0), r.one()[0].clone()];
    let map = RingMap::new(r.clone(), ring, IntMatrix::from_row_vecs(4, vec![row])).ok()?;
    Some(Algebra::new(map.target().name().to_string(), map))
}

/// A finite diagram of algebras over a base ring, with ring maps between
/// them (indices into `algebras`). Maps are compatible with structure maps.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub base: StructureRing,
    pub algebras: Vec<Algebra>,
    pub maps: Vec<(usize, usize, RingMap)>,
}

impl Diagram {
    pub fn new(base: &StructureRing) -> Self {
        Diagram {
            base: base.clone(),
            algebras: vec![Algebra::base(base)],
            maps: Vec::new(),
        }
    }

    pub fn push(&mut self, a: Algebra) -> usize {
        self.algebras.push(a);
        self.algebras.len() - 1
    }

    /// Adds a map after checking it is an algebra map between the given
    /// members.
    pub fn connect(&mut self, from: usize, to: usize, f: RingMap) -> Result<(), RingError> {
        let (a, b) = (&self.algebras[from], &self.algebras[to]);
        if !f.source().same_ring(&a.ring) || !f.target().same_ring(&b.ring) {
            return Err(RingError::RingMismatch);
        }
        let composite = a.structure_map.then(&f)?;
        let ok = (0..self.base.rank()).all(|i| {
            let e = self.base.basis(i);
            b.ring.eq_elem(&composite.apply(&e), &b.image(&e))
        });
        if !ok {
            return Err(RingError::BadRingMap("compatible with the structure maps"));
        }
        self.maps.push((from, to, f));
        Ok(())
    }

    pub fn contains_base(&self) -> bool {
        self.algebras.iter().any(|a| a.ring.same_structure(&self.base))
    }
}

/// Default diagram: `R`, `R x R`, `R[e]`, `R/2R` or `R/3R` when proper, and
/// `M_2(R)` for rank-one `R`, connected by the evident maps.
pub fn default_diagram(r: &StructureRing) -> Diagram {
    let mut dg = Diagram::new(r);
    let n = r.rank();
    let id = IntMatrix::identity(n);
    let zero = IntMatrix::zeros(n, n);

    let sq = dg.push(square(r));
    let rr = dg.algebras[sq].ring.clone();
    dg.connect(0, sq, RingMap::new(r.clone(), rr.clone(), id.hstack(&id)).unwrap()).unwrap();
    let pr1 = id.vstack(&zero);
    let pr2 = zero.vstack(&id);
    dg.connect(sq, 0, RingMap::new(rr.clone(), r.clone(), pr1).unwrap()).unwrap();
    dg.connect(sq, 0, RingMap::new(rr.clone(), r.clone(), pr2).unwrap()).unwrap();
    let swap = zero.hstack(&id).vstack(&id.hstack(&zero));
    dg.connect(sq, sq, RingMap::new(rr.clone(), rr, swap).unwrap()).unwrap();

    let de = dg.push(dual_extension(r));
    let dr = dg.algebras[de].ring.clone();
    dg.connect(0, de, RingMap::new(r.clone(), dr.clone(), id.hstack(&zero)).unwrap()).unwrap();
    dg.connect(de, 0, RingMap::new(dr, r.clone(), id.vstack(&zero)).unwrap()).unwrap();

    for p in [2, 3] {
        if let Some(q) = reduction_mod(r, p) {
            let qi = dg.push(q);
            let f = dg.algebras[qi].structure_map.clone();
            dg.connect(0, qi, f).unwrap();
            break;
        }
    }
    if let Some(mat) = matrix_over(r) {
        let mi = dg.push(mat);
        let f = dg.algebras[mi].structure_map.clone();
        dg.connect(0, mi, f).unwrap();
    }
    dg
}

/// A named catalog module together with a flag telling whether it is
/// projective (hence flat), as declared in the catalog.
#[derive(Clone, Debug)]
pub struct CatalogModule {
    pub name: String,
    pub module: FpModule,
    pub flat: bool,
}

/// A catalog ring with its left and right modules.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub ring: StructureRing,
    pub left: Vec<CatalogModule>,
    pub right: Vec<CatalogModule>,
}

fn scalar(r: &StructureRing, k: i64) -> Vec<BigInt> {
    r.scale(&big(k), &r.one())
}

fn md(r: &StructureRing, side: Side, name: &str, gens: usize, rels: Vec<Vec<Vec<BigInt>>>, flat: bool) -> CatalogModule {
    CatalogModule {
        name: name.to_string(),
        module: module_from_presentation(r, side, gens, rels).expect("catalog presentations are valid"),
        flat,
    }
}

fn free_both(r: &StructureRing) -> (CatalogModule, CatalogModule) {
    (
        md(r, Side::Left, "R", 1, vec![], true),
        md(r, Side::Right, "R", 1, vec![], true),
    )
}

/// The built-in sweep: rings with modules on both sides.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();

    let z = integers();
    let (l, r) = free_both(&z);
    let mut left = vec![l];
    let mut right = vec![r];
    for side in [Side::Left, Side::Right] {
        let list = if side == Side::Left { &mut left } else { &mut right };
        list.push(md(&z, side, "Z/2", 1, vec![vec![scalar(&z, 2)]], false));
        list.push(md(&z, side, "Z/3", 1, vec![vec![scalar(&z, 3)]], false));
    }
    left.push(md(&z, Side::Left, "Z+Z/3", 2, vec![vec![z.zero(), scalar(&z, 3)]], false));
    left.push(md(&z, Side::Left, "Z/6", 1, vec![vec![scalar(&z, 6)]], false));
    out.push(CatalogEntry { ring: z, left, right });

    let z4 = cyclic(4);
    let (l, r) = free_both(&z4);
    out.push(CatalogEntry {
        left: vec![l, md(&z4, Side::Left, "Z/2", 1, vec![vec![scalar(&z4, 2)]], false)],
        right: vec![r, md(&z4, Side::Right, "Z/2", 1, vec![vec![scalar(&z4, 2)]], false)],
        ring: z4,
    });

    let m2 = matrix(2, 2);
    let e = |i: usize| m2.basis(i);
    let (l, r) = free_both(&m2);
    out.push(CatalogEntry {
        left: vec![
            l,
            md(&m2, Side::Left, "columns", 1, vec![vec![e(1)], vec![e(3)]], true),
        ],
        right: vec![
            r,
            md(&m2, Side::Right, "rows", 1, vec![vec![e(2)], vec![e(3)]], true),
        ],
        ring: m2,
    });

    let t2 = triangular(2, 2);
    // basis e00, e01, e11
    let e = |i: usize| t2.basis(i);
    let (l, r) = free_both(&t2);
    out.push(CatalogEntry {
        left: vec![
            l,
            md(&t2, Side::Left, "P0", 1, vec![vec![e(1)], vec![e(2)]], true),
            md(&t2, Side::Left, "P1", 1, vec![vec![e(0)]], true),
            md(&t2, Side::Left, "S1", 1, vec![vec![e(0)], vec![e(1)]], false),
        ],
        right: vec![
            r,
            md(&t2, Side::Right, "Q0", 1, vec![vec![e(2)]], true),
            md(&t2, Side::Right, "S0", 1, vec![vec![e(1)], vec![e(2)]], false),
        ],
        ring: t2,
    });

    let g3 = group_ring(&[2], 3);
    let (l, r) = free_both(&g3);
    let g = g3.basis(1);
    let one = g3.one();
    let plus = g3.add(&one, &g);
    let minus = g3.sub(&one, &g);
    out.push(CatalogEntry {
        left: vec![
            l,
            md(&g3, Side::Left, "trivial", 1, vec![vec![minus.clone()]], false),
            md(&g3, Side::Left, "sign", 1, vec![vec![plus.clone()]], false),
        ],
        right: vec![r, md(&g3, Side::Right, "sign", 1, vec![vec![plus]], false)],
        ring: g3,
    });

    let d2 = dual_numbers(2);
    let (l, r) = free_both(&d2);
    let eps = d2.basis(1);
    out.push(CatalogEntry {
        left: vec![l, md(&d2, Side::Left, "residue", 1, vec![vec![eps.clone()]], false)],
        right: vec![r, md(&d2, Side::Right, "residue", 1, vec![vec![eps]], false)],
        ring: d2,
    });

    let p = product(&cyclic(2), &cyclic(3));
    let (l, r) = free_both(&p);
    let (a, b) = (p.basis(0), p.basis(1));
    out.push(CatalogEntry {
        left: vec![
            l,
            md(&p, Side::Left, "first", 1, vec![vec![b.clone()]], true),
            md(&p, Side::Left, "second", 1, vec![vec![a.clone()]], true),
        ],
        right: vec![r, md(&p, Side::Right, "second", 1, vec![vec![a]], true)],
        ring: p,
    });

    out
}

/// Zero vector helper for module relations over `r`.
pub fn zero_elem(r: &StructureRing) -> Vec<BigInt> {
    vec![BigInt::zero(); r.rank()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_rings() {
        let m = ring_by_name("matrix(2,2)").unwrap();
        assert_eq!(m.rank(), 4);
        assert!(!m.is_commutative());
        // e01*e10 = e00 but e10*e01 = e11
        assert_ne!(m.basis_product(1, 2), m.basis_product(2, 1));
        assert_eq!(ring_by_name("cyclic(4)").unwrap().rank(), 1);
        assert!(ring_by_name("product(cyclic(2),cyclic(3))").unwrap().is_commutative());
        assert!(matches!(ring_by_name("nosuch"), Err(RingError::UnknownName(_))));
        assert!(matches!(ring_by_name("matrix(2)"), Err(RingError::InvalidParams(_))));
        assert_eq!(ring_by_name("group_ring(2x2,3)").unwrap().rank(), 4);
    }

    #[test]
    fn default_diagrams_are_large_enough() {
        for entry in catalog_entries() {
            let d = default_diagram(&entry.ring);
            assert!(d.algebras.len() >= 3, "{}", entry.ring.name());
            assert!(d.maps.len() >= 4);
            assert!(d.contains_base());
        }
    }

    #[test]
    fn catalog_size() {
        let entries = catalog_entries();
        assert!(entries.len() >= 6);
        let modules: usize = entries.iter().map(|e| e.left.len() + e.right.len()).sum();
        assert!(modules >= 12);
        let pairs: usize = entries.iter().map(|e| e.left.len() * e.right.len()).sum();
        assert!(pairs >= 40, "only {pairs} pairs");
    }
}
