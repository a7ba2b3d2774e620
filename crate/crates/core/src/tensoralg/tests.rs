use num_bigint::BigInt;

use super::*;
use crate::catalog::{catalog_entries, integers, matrix, reduction_mod, triangular};
use crate::linalg::{ints, tensor_z, FgAbGroup};
use crate::module::{free_module, module_from_presentation, FpModule, Side};
use crate::ring::Algebra;
use crate::tensorhom::kernel_extension;

fn z_mod(n: i64, side: Side) -> FpModule {
    module_from_presentation(&integers(), side, 1, vec![vec![ints(&[n])]]).unwrap()
}

fn columns() -> FpModule {
    let m = matrix(2, 2);
    module_from_presentation(&m, Side::Left, 1, vec![vec![m.basis(1)], vec![m.basis(3)]]).unwrap()
}

fn p0() -> FpModule {
    let t = triangular(2, 2);
    module_from_presentation(&t, Side::Left, 1, vec![vec![t.basis(1)], vec![t.basis(2)]]).unwrap()
}

#[test]
fn components_of_small_algebras() {
    let z = integers();
    let a = trunc_algebra(&z, &z_mod(2, Side::Left), 2).unwrap();
    let want = [FgAbGroup::free(1), FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)];
    for (c, w) in a.components.iter().zip(&want) {
        assert!(c.is_isomorphic(w));
    }
    let one = tensor_z(z_mod(2, Side::Left).underlying(), z.additive());
    assert!(a.components[1].is_isomorphic(&one.group));

    let a = trunc_algebra(&z, &free_module(&z, Side::Left, 1), 2).unwrap();
    assert!(a.components.iter().all(|c| c.is_isomorphic(&FgAbGroup::free(1))));

    let a = trunc_algebra(&z, &z_mod(1, Side::Left), 3).unwrap();
    assert!(a.components[0].is_isomorphic(&FgAbGroup::free(1)));
    assert!(a.components[1..].iter().all(FgAbGroup::is_trivial));

    assert!(trunc_algebra(&z, &z_mod(2, Side::Right), 2).is_err());
    assert!(trunc_algebra(&z, &z_mod(2, Side::Left), 0).is_err());
}

#[test]
fn products_are_associative() {
    for (ring, m) in [(matrix(2, 2), columns()), (triangular(2, 2), p0())] {
        let a = trunc_algebra(&ring, &m, 3).unwrap();
        assert!(a.check_associativity(1 + a.triple_count() / 4000));
    }
    let z4 = crate::catalog::cyclic(4);
    let m = module_from_presentation(&z4, Side::Left, 1, vec![vec![ints(&[2])]]).unwrap();
    let a = trunc_algebra(&z4, &m, 3).unwrap();
    assert!(a.check_associativity(1));
}

#[test]
fn product_rule_on_generators() {
    // (e ⊗ 1)·(e ⊗ 1) = e ⊗ e ⊗ 1 for M = R = Z
    let z = integers();
    let a = trunc_algebra(&z, &free_module(&z, Side::Left, 1), 3).unwrap();
    assert_eq!(a.product(1, 0, 1, 0).unwrap(), ints(&[1]));
    assert_eq!(a.product(0, 0, 2, 0).unwrap(), ints(&[1]));
    assert!(a.product(2, 0, 2, 0).is_none());
}

#[test]
fn adjoined_variable() {
    let ax = adjoin_x(&z_mod(2, Side::Left)).unwrap();
    assert!(ax.module.underlying().is_isomorphic(&FgAbGroup::from_presentation(2, &crate::linalg::IntMatrix::from_i64(&[&[2, 0]])).unwrap()));
    assert!(ax.inclusion.is_injective());
    assert!(ax.inclusion.then(&ax.projection).unwrap().equals(&crate::linalg::GroupMap::identity(&ax.inclusion.source().clone())));
    assert_eq!(ax.x_coordinate.apply(&ax.x), ints(&[1]));

    let ax = adjoin_x(&z_mod(1, Side::Left)).unwrap();
    assert!(ax.module.underlying().is_isomorphic(&FgAbGroup::free(1)));

    let ax = adjoin_x(&columns()).unwrap();
    assert_eq!(ax.module.underlying().order(), Some(BigInt::from(64)));
}

fn word_algebras() -> Vec<WordAlgebra> {
    let z4 = crate::catalog::cyclic(4);
    let half = module_from_presentation(&z4, Side::Left, 1, vec![vec![ints(&[2])]]).unwrap();
    vec![
        WordAlgebra::new(&integers(), z_mod(2, Side::Left).structure(), 4),
        WordAlgebra::new(&z4, half.structure(), 4),
        WordAlgebra::new(&matrix(2, 2), columns().structure(), 4),
        WordAlgebra::new(&triangular(2, 2), p0().structure(), 4),
    ]
}

#[test]
fn hx_letterwise_is_the_algebra_map() {
    for alg in word_algebras() {
        let hx = map_hx(&alg, 2).unwrap();
        assert!(hx.degrees_consistent());
        for p in WordAlgebra::all_patterns(2) {
            for i in 0..alg.layout(&p).size() {
                let a = hx.image(&p, i).unwrap();
                let b = alg.hx_multiplicative(&p, i).unwrap();
                assert!(elems_equal(&alg, a, &b), "h_x mismatch on {p} / {i}");
            }
        }
        assert!(map_hx(&alg, 3).is_err());
    }
}

#[test]
fn hx_fixes_degree_zero_and_x() {
    let alg = &word_algebras()[2];
    let hx = map_hx(alg, 2).unwrap();
    for i in 0..alg.layout(&Pattern::default()).size() {
        assert_eq!(hx.image(&Pattern::default(), i).unwrap(), &alg.basis_word(&Pattern::default(), i));
    }
    let px = Pattern(vec![Letter::X]);
    for i in 0..alg.layout(&px).size() {
        assert_eq!(hx.image(&px, i).unwrap(), &alg.basis_word(&px, i));
    }
}

#[test]
fn appending_x_is_right_multiplication() {
    for alg in word_algebras() {
        for p in WordAlgebra::all_patterns(2) {
            for i in 0..alg.layout(&p).size() {
                let w = alg.basis_word(&p, i);
                let a = alg.mul(&w, &alg.x()).unwrap();
                let b = alg.times_x_append(&p, i).unwrap();
                assert!(elems_equal(&alg, &a, &b));
            }
        }
    }
}

#[test]
fn q_maps_degrees_and_formulas() {
    let z = integers();
    let n = free_module(&z, Side::Right, 1);
    let (q1, q2) = maps_q1_q2(n.structure(), z_mod(2, Side::Left).structure(), 3).unwrap();
    assert!(q1.degrees_consistent());
    assert!(q2.degrees_consistent());
    let e0 = Pattern::default();
    assert!(q1.image(&e0, 0).unwrap().contains_key(&Pattern::default()));
    assert!(q2.image(&e0, 0).unwrap().contains_key(&Pattern(vec![Letter::X])));
    let m1 = Pattern::m_power(1);
    assert!(q1.image(&m1, 0).unwrap().contains_key(&Pattern::mx_power(1)));
    assert!(q2.image(&m1, 0).unwrap().contains_key(&Pattern::m_power_x(1)));
}

#[test]
fn lemma_examples() {
    let z = integers();
    let n = free_module(&z, Side::Right, 1);
    let rep = compare_kernels_lemma(n.structure(), z_mod(2, Side::Left).structure(), 3).unwrap();
    assert!(rep.holds());
    assert!(rep.kernel.as_group().0.is_isomorphic(&FgAbGroup::cyclic(2)));

    let rep = compare_kernels_lemma(n.structure(), free_module(&z, Side::Left, 1).structure(), 3).unwrap();
    assert!(rep.holds());
    assert!(rep.kernel.as_group().0.is_isomorphic(&FgAbGroup::free(1)));

    let rep = compare_kernels_lemma(n.structure(), z_mod(1, Side::Left).structure(), 2).unwrap();
    assert!(rep.holds());
    assert!(rep.kernel.is_trivial());

    assert!(compare_kernels_lemma(n.structure(), z_mod(2, Side::Left).structure(), 1).is_err());
}

#[test]
fn lemma_on_catalog() {
    for entry in catalog_entries() {
        for nm in &entry.right {
            for mm in &entry.left {
                let rep = compare_kernels_lemma(nm.module.structure(), mm.module.structure(), 2).unwrap();
                assert!(rep.holds(), "{} / {} over {}", nm.name, mm.name, entry.ring.name());
                let (k, _, _) = kernel_extension(nm.module.structure(), mm.module.structure()).unwrap();
                assert!(rep.kernel.as_group().0.is_isomorphic(&k));
            }
        }
    }
}

#[test]
fn module_recovered_from_regular_instance() {
    for entry in catalog_entries() {
        let r = free_module(&entry.ring, Side::Right, 1);
        for mm in &entry.left {
            let rep = compare_kernels_lemma(r.structure(), mm.module.structure(), 2).unwrap();
            assert!(rep.holds());
            assert!(rep.kernel.as_group().0.is_isomorphic(mm.module.underlying()));
        }
    }
}

#[test]
fn extension_by_definition() {
    let z = integers();
    let n = free_module(&z, Side::Right, 1);
    let shape = FunctorShape::Quasicoherent(n.structure().clone());
    let v = extension_via_definition(&shape, z_mod(2, Side::Left).structure(), 3).unwrap();
    assert!(v.is_reportable() && v.matches_formula);
    assert!(v.group.is_isomorphic(&FgAbGroup::cyclic(2)));

    let n6 = z_mod(6, Side::Right);
    let shape = FunctorShape::Quasicoherent(n6.structure().clone());
    let v = extension_via_definition(&shape, free_module(&z, Side::Left, 1).structure(), 2).unwrap();
    assert!(v.is_reportable() && v.group.is_isomorphic(n6.underlying()));

    let shape = FunctorShape::ExtendedDual(z_mod(2, Side::Left));
    let v = extension_via_definition(&shape, z_mod(4, Side::Left).structure(), 3).unwrap();
    assert!(v.is_reportable() && v.matches_formula);
    assert!(v.group.is_isomorphic(&FgAbGroup::cyclic(2)));
}

#[test]
fn dual_extension_on_catalog() {
    for entry in catalog_entries() {
        for m in &entry.left {
            for q in &entry.left {
                let shape = FunctorShape::ExtendedDual(m.module.clone());
                let v = extension_via_definition(&shape, q.module.structure(), 2).unwrap();
                assert!(v.is_reportable() && v.matches_formula, "{} -> {}", m.name, q.name);
            }
        }
    }
}

fn z4_over_z() -> Algebra {
    reduction_mod(&integers(), 4).unwrap()
}

#[test]
fn pi_s_examples() {
    let pi = pi_s(&z4_over_z(), 3);
    let w = std::collections::BTreeMap::from([(Pattern::m_power(2), Sparse::from([(0, BigInt::from(6))]))]);
    assert_eq!(pi.apply_elem(&w), ints(&[2]));
    assert_eq!(pi.apply(0, 0), ints(&[1]));
    assert!(pi.check_multiplicative(1));
    assert!(pi.unit_law());

    let m2 = Algebra::base(&matrix(2, 2));
    let pi = pi_s(&m2, 2);
    assert!(pi.check_multiplicative(1));
    assert!(pi.unit_law());
}

#[test]
fn right_action_examples() {
    let z = integers();
    let n = free_module(&z, Side::Right, 1);
    let s = z4_over_z();
    let two = extension_right_action(n.structure(), &s, &ints(&[2]), 2).unwrap();
    assert!(two.preserves && two.agrees);
    assert!(two.map.source().is_isomorphic(&FgAbGroup::cyclic(4)));
    let g = two.map.source().generator(0);
    assert!(two.map.source().elements_equal(&two.map.apply(&g), &s.ring.scale(&BigInt::from(2), &g)));

    let one = extension_right_action(n.structure(), &s, &ints(&[1]), 2).unwrap();
    assert!(one.map.equals(&crate::linalg::GroupMap::identity(one.map.source())));
    let zero = extension_right_action(n.structure(), &s, &ints(&[0]), 2).unwrap();
    assert!(zero.map.is_zero_map());
}

#[test]
fn right_action_noncommutative() {
    let t = triangular(2, 2);
    let s = Algebra::base(&t);
    let n = module_from_presentation(&t, Side::Right, 1, vec![vec![t.basis(2)]]).unwrap();
    for b in 0..t.rank() {
        let act = extension_right_action(n.structure(), &s, &t.basis(b), 2).unwrap();
        assert!(act.preserves && act.agrees);
    }
}

#[test]
fn value_isomorphisms() {
    let z = integers();
    let v = extension_to_value_iso(free_module(&z, Side::Right, 1).structure(), &Algebra::base(&z), 2).unwrap();
    assert!(v.isomorphism && v.map.source().is_isomorphic(&FgAbGroup::free(1)));
    let v = extension_to_value_iso(z_mod(2, Side::Right).structure(), &z4_over_z(), 2).unwrap();
    assert!(v.isomorphism && v.map.source().is_isomorphic(&FgAbGroup::cyclic(2)));

    let d = dual_value_iso(&z_mod(2, Side::Left), &z4_over_z(), 2).unwrap();
    assert!(d.isomorphism);
    let m2 = matrix(2, 2);
    let d = dual_value_iso(&columns(), &Algebra::base(&m2), 2).unwrap();
    assert!(d.isomorphism);
}

fn check_universal(m: &FpModule, s: &Algebra) {
    let (maps, homs) = count_algebra_maps(m, s, 2, 1 << 16).unwrap();
    assert_eq!(maps, homs);
}

#[test]
fn universal_property_counts() {
    let z = integers();
    check_universal(&z_mod(2, Side::Left), &z4_over_z());
    check_universal(&free_module(&z, Side::Left, 1), &z4_over_z());
    check_universal(&z_mod(3, Side::Left), &z4_over_z());
    check_universal(&columns(), &Algebra::base(&matrix(2, 2)));
    check_universal(&p0(), &Algebra::base(&triangular(2, 2)));
}

