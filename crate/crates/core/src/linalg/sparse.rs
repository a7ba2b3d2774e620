//! Kernels of maps into diagonal groups, computed block by block.
//!
//! If the target is `⊕ Z/d_j` (diagonal presentation), the condition
//! `x * A ≡ 0` couples two source coordinates only when they share a target
//! column. Splitting along connected components keeps every HNF tiny even
//! when the ambient groups have thousands of coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::normal_form::left_kernel;

pub type SparseVec = Vec<(usize, BigInt)>;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Generators of `{x in Z^n : sum_i x_i * rows[i] ≡ 0}` where column `c` is
/// read modulo `col_order(c)` (0 = no reduction, 1 = always zero).
///
/// `rows[i]` is the sparse image of the i-th source coordinate. The result
/// generates the full kernel lattice in `Z^n`.
pub fn sparse_kernel(
    rows: &[SparseVec],
    col_order: &dyn Fn(usize) -> BigInt,
) -> Vec<SparseVec> {
    let n = rows.len();
    // reduce entries, drop trivial columns, and merge duplicates
    let mut orders: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut reduced: Vec<BTreeMap<usize, BigInt>> = Vec::with_capacity(n);
    for row in rows {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, v) in row {
            let ord = orders.entry(*c).or_insert_with(|| col_order(*c)).clone();
            if ord.is_one() {
                continue;
            }
            *acc.entry(*c).or_insert_with(BigInt::zero) += v;
            if !ord.is_zero() {
                let e = acc.get_mut(c).unwrap();
                *e = e.mod_floor(&ord);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        reduced.push(acc);
    }

    let mut uf = UnionFind((0..n).collect());
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, row) in reduced.iter().enumerate() {
        for c in row.keys() {
            match owner.get(c) {
                Some(&j) => uf.union(i, j),
                None => {
                    owner.insert(*c, i);
                }
            }
        }
    }

    let mut components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = uf.find(i);
        components.entry(r).or_default().push(i);
    }

    let mut out = Vec::new();
    for members in components.values() {
        if members.len() == 1 && reduced[members[0]].is_empty() {
            out.push(vec![(members[0], BigInt::one())]);
            continue;
        }
        let mut cols: Vec<usize> = members
            .iter()
            .flat_map(|&i| reduced[i].keys().copied())
            .collect();
        cols.sort_unstable();
        cols.dedup();
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let finite: Vec<(usize, BigInt)> = cols
            .iter()
            .enumerate()
            .filter(|(_, c)| !orders[*c].is_zero())
            .map(|(p, c)| (p, orders[c].clone()))
            .collect();
        let mut m = IntMatrix::zeros(members.len() + finite.len(), cols.len());
        for (r, &i) in members.iter().enumerate() {
            for (c, v) in &reduced[i] {
                m[(r, col_pos[c])] = v.clone();
            }
        }
        for (k, (p, d)) in finite.iter().enumerate() {
            m[(members.len() + k, *p)] = d.clone();
        }
        let ker = left_kernel(&m);
        for r in 0..ker.rows() {
            let v: SparseVec = members
                .iter()
                .enumerate()
                .filter(|(j, _)| !ker[(r, *j)].is_zero())
                .map(|(j, &i)| (i, ker[(r, j)].clone()))
                .collect();
            if !v.is_empty() {
                out.push(v);
            }
        }
    }
    out
}

pub fn dense_to_sparse(v: &[BigInt]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in v {
        out[*i] += x;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_are_solved_independently() {
        // x0 -> 2*c0 (mod 4), x1 -> c1 (free), x2 unused
        let rows = vec![
            vec![(0, BigInt::from(2))],
            vec![(1, BigInt::from(1))],
            vec![],
        ];
        let ord = |c: usize| if c == 0 { BigInt::from(4) } else { BigInt::zero() };
        let k = sparse_kernel(&rows, &ord);
        assert!(k.contains(&vec![(2, BigInt::one())]));
        assert!(k
            .iter()
            .any(|v| v.len() == 1 && v[0].0 == 0 && v[0].1.magnitude() == &2u32.into()));
        assert!(k.iter().all(|v| v.iter().all(|(i, _)| *i != 1)));
    }
}
