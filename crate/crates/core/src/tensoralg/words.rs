//! Graded pieces of the tensor algebras `R⟨M⟩` and `R⟨M ⊕ Rx⟩`.
//!
//! A word of degree `n` is `v_1 ⊗ ... ⊗ v_n ⊗ r`; ring coefficients between
//! letters are pushed into the next letter, so the degree-`n` piece is
//! `V_1 ⊗_Z ... ⊗_Z V_n ⊗_Z R` where `V_i` is the underlying group of `M`
//! (an `M`-letter) or of `R` (an `x`-letter, the value `r` standing for
//! `r·x`). Every piece is a diagonal group indexed in mixed radix with the
//! last factor fastest, matching [`crate::linalg::kron_vec`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::linalg::FgAbGroup;
use crate::module::{ModuleStructure, Side};
use crate::ring::StructureRing;

/// Tensor product of cyclic factors, one order list per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagTensor {
    pub factors: Vec<Vec<BigInt>>,
}

impl DiagTensor {
    pub fn new(factors: Vec<Vec<BigInt>>) -> Self {
        DiagTensor { factors }
    }

    pub fn size(&self) -> usize {
        self.factors.iter().map(Vec::len).product()
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.factors.len());
        digits
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (d, f)| acc * f.len() + d)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            out[k] = idx % f.len();
            idx /= f.len();
        }
        out
    }

    /// Order of a basis element: gcd of the factor orders (0 = infinite).
    pub fn order(&self, idx: usize) -> BigInt {
        self.decode(idx)
            .iter()
            .zip(&self.factors)
            .fold(BigInt::zero(), |acc, (d, f)| acc.gcd(&f[*d]))
    }

    pub fn group(&self) -> FgAbGroup {
        FgAbGroup::diagonal((0..self.size()).map(|i| self.order(i)).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    M,
    X,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pattern(pub Vec<Letter>);

impl Pattern {
    pub fn m_power(n: usize) -> Self {
        Pattern(vec![Letter::M; n])
    }

    /// `(MX)^n`
    pub fn mx_power(n: usize) -> Self {
        Pattern((0..n).flat_map(|_| [Letter::M, Letter::X]).collect())
    }

    /// `M^n X`
    pub fn m_power_x(n: usize) -> Self {
        let mut v = vec![Letter::M; n];
        v.push(Letter::X);
        Pattern(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn m_letters(&self) -> usize {
        self.0.iter().filter(|l| **l == Letter::M).count()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::M => "M",
                Letter::X => "X",
            })?;
        }
        Ok(())
    }
}

/// Sparse element of one graded piece.
pub type Sparse = BTreeMap<usize, BigInt>;

pub(crate) fn add_term(acc: &mut Sparse, idx: usize, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(idx).or_insert_with(BigInt::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&idx);
    }
}

/// Nonzero coordinates of a vector.
pub(crate) fn terms(v: &[BigInt]) -> Vec<(usize, BigInt)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Sparse element of the algebra, keyed by pattern.
pub type WordElem = BTreeMap<Pattern, Sparse>;

/// `R⟨M ⊕ Rx⟩` truncated at a degree cap, for a left module `M` given on
/// diagonal coordinates. Words using only `M`-letters form `R⟨M⟩`.
#[derive(Clone, Debug)]
pub struct WordAlgebra {
    pub ring: StructureRing,
    pub module: ModuleStructure,
    pub cap: usize,
}

impl WordAlgebra {
    pub fn new(ring: &StructureRing, module: &ModuleStructure, cap: usize) -> Self {
        assert_eq!(module.side, Side::Left, "tensor algebras take left modules");
        let (simple, _) = module.simplified();
        WordAlgebra {
            ring: ring.clone(),
            module: simple,
            cap,
        }
    }

    fn u_orders(&self) -> Vec<BigInt> {
        self.module.group.orders().expect("simplified module").to_vec()
    }

    pub fn layout(&self, p: &Pattern) -> DiagTensor {
        let r = self.ring.orders().to_vec();
        let u = self.u_orders();
        let mut f: Vec<Vec<BigInt>> = p
            .0
            .iter()
            .map(|l| match l {
                Letter::M => u.clone(),
                Letter::X => r.clone(),
            })
            .collect();
        f.push(r);
        DiagTensor::new(f)
    }

    pub fn one(&self) -> WordElem {
        let mut s = Sparse::new();
        for (l, c) in terms(&self.ring.one()) {
            s.insert(l, c);
        }
        BTreeMap::from([(Pattern::default(), s)])
    }

    /// Degree-one word `v ⊗ 1` for a letter with basis value `v`.
    pub fn letter(&self, l: Letter, v: usize) -> WordElem {
        let p = Pattern(vec![l]);
        let lay = self.layout(&p);
        let mut s = Sparse::new();
        for (k, c) in terms(&self.ring.one()) {
            s.insert(lay.encode(&[v, k]), c);
        }
        BTreeMap::from([(p, s)])
    }

    /// The variable `x` itself.
    pub fn x(&self) -> WordElem {
        let mut out = WordElem::new();
        for (j, c) in terms(&self.ring.one()) {
            for (p, s) in self.letter(Letter::X, j) {
                let e: &mut Sparse = out.entry(p).or_default();
                for (i, v) in s {
                    add_term(e, i, &c * v);
                }
            }
        }
        out
    }

    /// `e_l` acting on a letter with basis value `v`.
    fn act_on_letter(&self, l: usize, letter: Letter, v: usize) -> Vec<(usize, BigInt)> {
        match letter {
            Letter::M => terms(self.module.action[l].row(v)),
            Letter::X => terms(&self.ring.basis_product(l, v)),
        }
    }

    /// Product of two basis words; `None` when the degree exceeds the cap.
    pub fn basis_product(&self, p: &Pattern, i: usize, q: &Pattern, j: usize) -> Option<WordElem> {
        if p.degree() + q.degree() > self.cap {
            return None;
        }
        let (lp, lq) = (self.layout(p), self.layout(q));
        let (dp, dq) = (lp.decode(i), lq.decode(j));
        let tail = *dp.last().unwrap();
        let mut pattern = p.0.clone();
        pattern.extend(q.0.iter().copied());
        let pattern = Pattern(pattern);
        let lay = self.layout(&pattern);
        let mut s = Sparse::new();
        if q.degree() == 0 {
            for (k, c) in terms(&self.ring.basis_product(tail, dq[0])) {
                let mut d = dp.clone();
                *d.last_mut().unwrap() = k;
                add_term(&mut s, lay.encode(&d), c);
            }
        } else {
            for (v, c) in self.act_on_letter(tail, q.0[0], dq[0]) {
                let mut d = dp[..dp.len() - 1].to_vec();
                d.push(v);
                d.extend_from_slice(&dq[1..]);
                add_term(&mut s, lay.encode(&d), c);
            }
        }
        Some(self.reduce(BTreeMap::from([(pattern, s)])))
    }

    pub fn mul(&self, a: &WordElem, b: &WordElem) -> Option<WordElem> {
        let mut out = WordElem::new();
        for (p, sa) in a {
            for (q, sb) in b {
                for (i, ca) in sa {
                    for (j, cb) in sb {
                        let prod = self.basis_product(p, *i, q, *j)?;
                        for (pat, s) in prod {
                            let e: &mut Sparse = out.entry(pat).or_default();
                            for (k, c) in s {
                                add_term(e, k, ca * cb * c);
                            }
                        }
                    }
                }
            }
        }
        Some(self.reduce(out))
    }

    /// Reduces coordinates modulo their orders and drops zeros.
    pub fn reduce(&self, mut e: WordElem) -> WordElem {
        for (p, s) in e.iter_mut() {
            let lay = self.layout(p);
            let keys: Vec<usize> = s.keys().copied().collect();
            for k in keys {
                let d = lay.order(k);
                if !d.is_zero() {
                    let v = s[&k].mod_floor(&d);
                    if v.is_zero() {
                        s.remove(&k);
                    } else {
                        s.insert(k, v);
                    }
                }
            }
        }
        e.retain(|_, s| !s.is_empty());
        e
    }

    /// `h_x` letter by letter: each `M`-letter is followed by `x`.
    pub fn hx_letterwise(&self, p: &Pattern, i: usize) -> Option<WordElem> {
        let target = Pattern(
            p.0.iter()
                .flat_map(|l| match l {
                    Letter::M => vec![Letter::M, Letter::X],
                    Letter::X => vec![Letter::X],
                })
                .collect(),
        );
        if target.degree() > self.cap {
            return None;
        }
        let d = self.layout(p).decode(i);
        let lay = self.layout(&target);
        let unit = terms(&self.ring.one());
        let mut partial: Vec<(Vec<usize>, BigInt)> = vec![(Vec::new(), BigInt::from(1))];
        for (k, l) in p.0.iter().enumerate() {
            let mut next = Vec::new();
            for (digits, c) in partial {
                let mut base = digits.clone();
                base.push(d[k]);
                match l {
                    Letter::X => next.push((base, c)),
                    Letter::M => {
                        for (u, cu) in &unit {
                            let mut dd = base.clone();
                            dd.push(*u);
                            next.push((dd, &c * cu));
                        }
                    }
                }
            }
            partial = next;
        }
        let mut s = Sparse::new();
        for (mut digits, c) in partial {
            digits.push(*d.last().unwrap());
            add_term(&mut s, lay.encode(&digits), c);
        }
        Some(self.reduce(BTreeMap::from([(target, s)])))
    }

    /// `h_x` as the algebra map determined by `m ↦ m·x`, `x ↦ x`, computed
    /// through products (used to validate [`Self::hx_letterwise`]).
    pub fn hx_multiplicative(&self, p: &Pattern, i: usize) -> Option<WordElem> {
        let d = self.layout(p).decode(i);
        let mut acc = self.one();
        for (k, l) in p.0.iter().enumerate() {
            let img = match l {
                Letter::M => self.mul(&self.letter(Letter::M, d[k]), &self.x())?,
                Letter::X => self.letter(Letter::X, d[k]),
            };
            acc = self.mul(&acc, &img)?;
        }
        let mut tail = Sparse::new();
        tail.insert(*d.last().unwrap(), BigInt::from(1));
        self.mul(&acc, &BTreeMap::from([(Pattern::default(), tail)]))
    }

    /// Appending an `x`-letter carrying the tail coefficient.
    pub fn times_x_append(&self, p: &Pattern, i: usize) -> Option<WordElem> {
        let mut letters = p.0.clone();
        letters.push(Letter::X);
        let target = Pattern(letters);
        if target.degree() > self.cap {
            return None;
        }
        let mut d = self.layout(p).decode(i);
        let lay = self.layout(&target);
        let mut s = Sparse::new();
        for (k, c) in terms(&self.ring.one()) {
            d.push(k);
            add_term(&mut s, lay.encode(&d), c);
            d.pop();
        }
        Some(self.reduce(BTreeMap::from([(target, s)])))
    }

    pub fn basis_word(&self, p: &Pattern, i: usize) -> WordElem {
        BTreeMap::from([(p.clone(), Sparse::from([(i, BigInt::from(1))]))])
    }

    /// Patterns of every degree up to `deg` using only `M` letters.
    pub fn m_patterns(deg: usize) -> Vec<Pattern> {
        (0..=deg).map(Pattern::m_power).collect()
    }

    /// All patterns over `{M, X}` up to the given degree.
    pub fn all_patterns(deg: usize) -> Vec<Pattern> {
        let mut out = vec![Pattern::default()];
        let mut layer = vec![Pattern::default()];
        for _ in 0..deg {
            let mut next = Vec::new();
            for p in &layer {
                for l in [Letter::M, Letter::X] {
                    let mut v = p.0.clone();
                    v.push(l);
                    next.push(Pattern(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

/// Elements compare equal after reduction.
pub fn elems_equal(alg: &WordAlgebra, a: &WordElem, b: &WordElem) -> bool {
    alg.reduce(a.clone()) == alg.reduce(b.clone())
}
