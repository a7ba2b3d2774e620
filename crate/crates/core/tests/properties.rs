use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use reflexive_core::catalog::{catalog_entries, cyclic, integers};
use reflexive_core::linalg::{hnf, hom_group, snf, tensor_z, FgAbGroup, IntMatrix};
use reflexive_core::module::{module_from_presentation, ModuleStructure, Side};
use reflexive_core::ring::ring_opposite;
use reflexive_core::tensorhom::{check_hypothesis, tensor_over_r};

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-12i64..=12, c), r).prop_map(move |rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            IntMatrix::from_i64(&refs)
        })
    })
}

fn orders_strategy() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![Just(0i64), 1i64..=12], 0..=3)
}

fn group(orders: &[i64]) -> FgAbGroup {
    FgAbGroup::diagonal(orders.iter().map(|&d| BigInt::from(d)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_factorizes(a in matrix_strategy()) {
        let s = snf(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(s.v.rows()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.row(i)[j].is_zero());
                }
            }
        }
    }

    #[test]
    fn hnf_is_row_equivalent_and_echelon(a in matrix_strategy()) {
        let (h, u) = hnf(&a);
        prop_assert!(u.is_unimodular());
        prop_assert_eq!(u.mul(&a), h.clone());
        let mut last = None;
        for r in 0..h.rows() {
            match h.row(r).iter().position(|x| !x.is_zero()) {
                Some(p) => {
                    prop_assert!(last.is_none_or(|l| p > l));
                    prop_assert!(h.row(r)[p].is_positive());
                    for above in 0..r {
                        let x = &h.row(above)[p];
                        prop_assert!(!x.is_negative() && x < &h.row(r)[p]);
                    }
                    last = Some(p);
                }
                None => last = Some(usize::MAX - 1),
            }
        }
    }

    #[test]
    fn hom_and_tensor_orders(g in orders_strategy(), h in orders_strategy()) {
        let (gg, hh) = (group(&g), group(&h));
        let gcd_product = |a: &[i64], b: &[i64]| -> FgAbGroup {
            let mut out = Vec::new();
            for x in a {
                for y in b {
                    out.push(BigInt::from(x.gcd(y)));
                }
            }
            FgAbGroup::diagonal(out)
        };
        // Z/a ⊗ Z/b = Z/gcd(a, b) with Z/0 = Z; Hom(Z/a, Z) = 0 for a ≠ 0
        prop_assert!(tensor_z(&gg, &hh).group.is_isomorphic(&gcd_product(&g, &h)));
        let hom_expected: Vec<BigInt> = g
            .iter()
            .flat_map(|&x| h.iter().map(move |&y| match (x, y) {
                (0, y) => BigInt::from(y),
                (_, 0) => BigInt::from(1),
                (x, y) => BigInt::from(x.gcd(&y)),
            }))
            .collect();
        prop_assert!(hom_group(&gg, &hh).group.is_isomorphic(&FgAbGroup::diagonal(hom_expected)));
    }

    #[test]
    fn elements_of_finite_groups(g in prop::collection::vec(1i64..=6, 0..=3)) {
        let gg = group(&g);
        let elems = gg.elements(1000);
        prop_assert_eq!(BigInt::from(elems.len()), gg.order().unwrap());
        for x in &elems {
            let k = gg.element_order(x);
            prop_assert!(gg.is_zero(&x.iter().map(|v| v * &k).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn integer_modules_satisfy_the_fork(
        n in prop::collection::vec(prop::collection::vec(-6i64..=6, 2), 0..=2),
        m in prop::collection::vec(prop::collection::vec(-6i64..=6, 2), 0..=2),
    ) {
        let z = integers();
        let pres = |rels: &Vec<Vec<i64>>, side| {
            let rels = rels.iter().map(|r| r.iter().map(|&c| vec![BigInt::from(c)]).collect()).collect();
            module_from_presentation(&z, side, 2, rels).unwrap()
        };
        let (nn, mm) = (pres(&n, Side::Right), pres(&m, Side::Left));
        let (fork, ex) = check_hypothesis(nn.structure(), mm.structure()).unwrap();
        prop_assert!(ex.exact());
        // over Z the tensor product is the tensor product of groups
        prop_assert!(fork.t0().is_isomorphic(&tensor_z(nn.underlying(), mm.underlying()).group));
    }

    #[test]
    fn regular_module_is_a_tensor_unit(k in 0usize..7, which in 0usize..4) {
        let entries = catalog_entries();
        let e = &entries[k % entries.len()];
        let m = &e.left[which % e.left.len()].module;
        let r = ModuleStructure::regular(&e.ring, Side::Right);
        let t = tensor_over_r(&r, m.structure()).unwrap();
        prop_assert!(t.group.is_isomorphic(m.underlying()));
    }

    #[test]
    fn ring_multiplication_is_associative(k in 0usize..7, a in prop::collection::vec(-3i64..=3, 4), b in prop::collection::vec(-3i64..=3, 4), c in prop::collection::vec(-3i64..=3, 4)) {
        let entries = catalog_entries();
        let r = &entries[k % entries.len()].ring;
        let n = r.rank();
        let el = |v: &[i64]| r.reduce(&(0..n).map(|i| BigInt::from(v[i % v.len()])).collect::<Vec<_>>());
        let (x, y, z) = (el(&a), el(&b), el(&c));
        prop_assert!(r.eq_elem(&r.mul(&r.mul(&x, &y), &z), &r.mul(&x, &r.mul(&y, &z))));
        prop_assert!(r.eq_elem(&r.mul(&r.one(), &x), &x) && r.eq_elem(&r.mul(&x, &r.one()), &x));
        let op = ring_opposite(r);
        prop_assert!(op.eq_elem(&op.mul(&x, &y), &r.mul(&y, &x)));
        prop_assert!(ring_opposite(&op).same_structure(r));
    }
}

#[test]
fn cyclic_rings_have_expected_orders() {
    for n in [2i64, 3, 4, 6] {
        assert_eq!(cyclic(n).additive().order(), Some(BigInt::from(n)));
    }
}
