//! Hermite and Smith normal forms over the integers, with the unimodular
//! transforms that produce them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{vec_mul, IntMatrix};

/// Returns `(g, s, t)` with `g = gcd(a, b) >= 0` and `g = s*a + t*b`.
pub fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Row Hermite normal form: returns `(H, U)` with `H = U * A`, `U`
/// unimodular, `H` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = hnf_impl(a, true);
    (h, u.expect("transform requested"))
}

/// Hermite normal form without the transform.
pub fn hnf_only(a: &IntMatrix) -> IntMatrix {
    hnf_impl(a, false).0
}

fn hnf_impl(a: &IntMatrix, track: bool) -> (IntMatrix, Option<IntMatrix>) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = track.then(|| IntMatrix::identity(m));
    let mut p = 0;
    for col in 0..n {
        if p == m {
            break;
        }
        let Some(first) = (p..m).find(|&r| !h[(r, col)].is_zero()) else {
            continue;
        };
        h.swap_rows(p, first);
        if let Some(u) = u.as_mut() {
            u.swap_rows(p, first);
        }
        for r in p + 1..m {
            if h[(r, col)].is_zero() {
                continue;
            }
            let piv = h[(p, col)].clone();
            let b = h[(r, col)].clone();
            if (&b % &piv).is_zero() {
                let q = -(&b / &piv);
                h.add_row_multiple(r, p, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(r, p, &q);
                }
            } else {
                let (g, s, t) = egcd(&piv, &b);
                let r1 = -(&b / &g);
                let s1 = &piv / &g;
                h.combine_rows(p, r, [&s, &t, &r1, &s1]);
                if let Some(u) = u.as_mut() {
                    u.combine_rows(p, r, [&s, &t, &r1, &s1]);
                }
            }
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            if let Some(u) = u.as_mut() {
                u.negate_row(p);
            }
        }
        let piv = h[(p, col)].clone();
        for r in 0..p {
            let q = h[(r, col)].div_floor(&piv);
            if !q.is_zero() {
                let q = -q;
                h.add_row_multiple(r, p, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(r, p, &q);
                }
            }
        }
        p += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a matrix already in echelon form.
pub fn echelon_rank(h: &IntMatrix) -> usize {
    (0..h.rows())
        .take_while(|&r| h.row(r).iter().any(|x| !x.is_zero()))
        .count()
}

/// Smith normal form data: `D = U * A * V`, with `v_inv = V^{-1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Diagonal entries `d_1 | d_2 | ...`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

/// Smith normal form with smallest-magnitude pivoting; ties go to the
/// lowest (row, column) index.
pub fn snf(a: &IntMatrix) -> Snf {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pr, pc)) = smallest_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);
        v_inv.swap_rows(t, pc);

        loop {
            for r in t + 1..m {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let piv = d[(t, t)].clone();
                let b = d[(r, t)].clone();
                if (&b % &piv).is_zero() {
                    let q = -(&b / &piv);
                    d.add_row_multiple(r, t, &q);
                    u.add_row_multiple(r, t, &q);
                } else {
                    let (g, s, tt) = egcd(&piv, &b);
                    let r1 = -(&b / &g);
                    let s1 = &piv / &g;
                    d.combine_rows(t, r, [&s, &tt, &r1, &s1]);
                    u.combine_rows(t, r, [&s, &tt, &r1, &s1]);
                }
            }
            for c in t + 1..n {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let piv = d[(t, t)].clone();
                let b = d[(t, c)].clone();
                if (&b % &piv).is_zero() {
                    let q = -(&b / &piv);
                    d.add_col_multiple(c, t, &q);
                    v.add_col_multiple(c, t, &q);
                    // inverse column operation acts on rows of V^{-1}
                    let nq = -q;
                    v_inv.add_row_multiple(t, c, &nq);
                } else {
                    let (g, s, tt) = egcd(&piv, &b);
                    let r1 = -(&b / &g);
                    let s1 = &piv / &g;
                    d.combine_cols(t, c, [&s, &tt, &r1, &s1]);
                    v.combine_cols(t, c, [&s, &tt, &r1, &s1]);
                    let nr1 = -&r1;
                    let ntt = -&tt;
                    v_inv.combine_rows(t, c, [&s1, &nr1, &ntt, &s]);
                }
            }
            if (t + 1..m).any(|r| !d[(r, t)].is_zero()) {
                continue;
            }
            let piv = d[(t, t)].clone();
            let bad = (t + 1..m).find(|&r| (t + 1..n).any(|c| !(&d[(r, c)] % &piv).is_zero()));
            match bad {
                Some(r) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { d, u, v, v_inv }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = &d[(r, c)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((r, c, ax));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// A basis (as rows) of the integer left kernel `{x : x * A = 0}`.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(a);
    let rank = echelon_rank(&h);
    let idx: Vec<usize> = (rank..a.rows()).collect();
    u.select_rows(&idx)
}

/// Finds an integer `x` with `x * A = y`, if one exists.
pub fn solve_left(a: &IntMatrix, y: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.cols(), y.len(), "right-hand side length mismatch");
    let (h, u) = hnf(a);
    let rank = echelon_rank(&h);
    let mut res: Vec<BigInt> = y.to_vec();
    let mut c = vec![BigInt::zero(); a.rows()];
    for (i, ci) in c.iter_mut().enumerate().take(rank) {
        let p = (0..h.cols()).find(|&j| !h[(i, j)].is_zero())?;
        let (q, rem) = res[p].div_rem(&h[(i, p)]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (j, r) in res.iter_mut().enumerate().skip(p) {
                let hv = &h[(i, j)];
                if !hv.is_zero() {
                    *r -= &q * hv;
                }
            }
        }
        *ci = q;
    }
    if res.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(vec_mul(&c, &u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_hnf(a: &IntMatrix) {
        let (h, u) = hnf(a);
        assert_eq!(u.mul(a), h);
        assert!(u.is_unimodular());
        let rank = echelon_rank(&h);
        let mut last = None;
        for r in 0..rank {
            let p = (0..h.cols()).find(|&c| !h[(r, c)].is_zero()).unwrap();
            assert!(last.is_none_or(|l| p > l));
            assert!(h[(r, p)].is_positive());
            for above in 0..r {
                assert!(!h[(above, p)].is_negative() && h[(above, p)] < h[(r, p)]);
            }
            last = Some(p);
        }
        assert!((rank..h.rows()).all(|r| h.row(r).iter().all(Zero::is_zero)));
    }

    #[test]
    fn hnf_identity_and_zero() {
        let i3 = IntMatrix::identity(3);
        assert_eq!(hnf(&i3), (i3.clone(), i3));
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(hnf(&z), (z.clone(), IntMatrix::identity(2)));
    }

    #[test]
    fn hnf_small_example() {
        // Row operations on [[2,4],[1,3]] reach pivots (1, 2): the lattice
        // has determinant 2, so H = [[1,1],[0,2]] is the unique reduced form.
        let a = IntMatrix::from_i64(&[&[2, 4], &[1, 3]]);
        let (h, _) = hnf(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
        check_hnf(&a);
    }

    #[test]
    fn snf_examples() {
        let s = snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let s = snf(&IntMatrix::identity(4));
        assert_eq!(s.d, IntMatrix::identity(4));
        let s = snf(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(s.d, IntMatrix::from_i64(&[&[0]]));
    }

    #[test]
    fn snf_transforms_are_consistent() {
        let a = IntMatrix::from_i64(&[&[4, 6, 2], &[2, 8, 10], &[6, 0, 4], &[1, 1, 1]]);
        let s = snf(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
        assert!(s.u.is_unimodular());
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[2, 4], &[0, 3]]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
        let x = solve_left(&a, &[BigInt::from(1), BigInt::from(5)]).unwrap();
        assert_eq!(vec_mul(&x, &a), vec![BigInt::from(1), BigInt::from(5)]);
        assert!(solve_left(&IntMatrix::from_i64(&[&[2]]), &[BigInt::from(3)]).is_none());
    }
}
