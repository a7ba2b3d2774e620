use super::*;
use crate::catalog::{catalog_entries, default_diagram, integers, matrix, reduction_mod, Diagram};
use crate::linalg::{ints, FgAbGroup};
use crate::module::{free_module, module_from_presentation, FpModule, Side};
use crate::ring::Algebra;

fn z_mod(n: i64, side: Side) -> FpModule {
    module_from_presentation(&integers(), side, 1, vec![vec![ints(&[n])]]).unwrap()
}

fn z_instance(n: FpModule, m: FpModule) -> Instance {
    let z = integers();
    Instance::new("test", m, n, default_diagram(&z)).unwrap()
}

fn cyclic_group(n: i64) -> FgAbGroup {
    FgAbGroup::cyclic(n)
}

#[test]
fn reflexivity_of_torsion_over_integers() {
    let z = integers();
    let r = reflexivity_at(&z_mod(2, Side::Left), &Algebra::base(&z)).unwrap();
    assert!(r.functorial.is_isomorphic(&cyclic_group(2)));
    assert!(r.functorial_iso);
    assert!(r.matches_tensor);
    assert!(r.classical.is_trivial());
    assert!(!r.classical_injective);
}

#[test]
fn reflexivity_after_reduction() {
    let z = integers();
    let m = module_from_presentation(&z, Side::Left, 2, vec![vec![ints(&[0]), ints(&[3])]]).unwrap();
    let s = reduction_mod(&z, 9).unwrap();
    let r = reflexivity_at(&m, &s).unwrap();
    let want = FgAbGroup::direct_sum(&[cyclic_group(9), cyclic_group(3)]);
    assert!(r.functorial.is_isomorphic(&want));
    assert!(r.base_changed.is_isomorphic(&want));
    assert!(r.functorial_iso);
    assert!(r.classical.is_isomorphic(&want));
    assert!(r.classical_iso);
}

#[test]
fn vee_reflexivity_of_cyclic() {
    let z = integers();
    let s = reduction_mod(&z, 4).unwrap();
    let r = vee_reflexivity_at(&z_mod(6, Side::Left), &s, 2).unwrap();
    assert!(r.value.is_isomorphic(&cyclic_group(2)));
    assert!(r.canonical_iso);
    assert!(r.stable);
    assert!(r.dual_matches);
    assert!(r.dual_value_iso);
}

#[test]
fn symmetry_examples() {
    let inst = z_instance(z_mod(2, Side::Right), z_mod(3, Side::Left));
    let rep = verify_symmetry(&inst).unwrap();
    assert!(rep.holds(), "{rep:?}");
    assert_eq!(rep.groups["kernel"], Vec::<String>::new());

    let m2 = matrix(2, 2);
    let rows = module_from_presentation(&m2, Side::Right, 1, vec![vec![m2.basis(2)], vec![m2.basis(3)]]).unwrap();
    let cols = module_from_presentation(&m2, Side::Left, 1, vec![vec![m2.basis(1)], vec![m2.basis(3)]]).unwrap();
    let inst = Instance::new("rows-cols", cols, rows, default_diagram(&m2)).unwrap();
    let rep = verify_symmetry(&inst).unwrap();
    assert!(rep.holds(), "{rep:?}");
    assert_eq!(rep.groups["kernel"], vec!["2".to_string()]);
}

#[test]
fn kernel_element_gives_transformation() {
    // w = i(1 ⊗ m̄) for N = Z, M = Z/2
    let inst = z_instance(free_module(&integers(), Side::Right, 1), z_mod(2, Side::Left));
    let ctx = NatContext::new(&inst.right, &inst.left, &inst.diagram).unwrap();
    let t0 = ctx.fork.t0();
    let w = ctx.fork.maps.i.apply(&t0.generator(0));
    let nat = kernel_element_to_nat(&w, &inst).unwrap();
    assert!(nat.natural);
    assert!(nat.linear);
    for c in &nat.components {
        assert!(!c.image().as_group().0.is_trivial() || c.source().is_trivial());
    }
    let rep = verify_nat_harness(&inst).unwrap();
    assert!(rep.holds(), "{rep:?}");
}

#[test]
fn hypothesis_and_formula_on_catalog() {
    for entry in catalog_entries() {
        for n in &entry.right {
            for m in &entry.left {
                let inst = Instance::from_catalog(n, m).unwrap();
                for st in [Statement::Hypothesis, Statement::ExtensionFormula, Statement::BimoduleFlat] {
                    let rep = run_statement(st, &inst).unwrap();
                    assert_ne!(rep.verdict, Verdict::Fails, "{st} on {}: {rep:?}", inst.name);
                }
            }
        }
    }
}

#[test]
fn bimodule_case_inconclusive_without_declaration() {
    let m2 = matrix(2, 2);
    let rows = module_from_presentation(&m2, Side::Right, 1, vec![vec![m2.basis(2)], vec![m2.basis(3)]]).unwrap();
    let cols = module_from_presentation(&m2, Side::Left, 1, vec![vec![m2.basis(1)], vec![m2.basis(3)]]).unwrap();
    let inst = Instance::new("rows-cols", cols, rows, Diagram::new(&m2)).unwrap();
    let rep = verify_bimodule_flat_case(&inst).unwrap();
    assert_eq!(rep.verdict, Verdict::Inconclusive);
}

#[test]
fn central_split_on_integers() {
    let z = integers();
    let pairs = vec![(z_mod(2, Side::Right), z_mod(4, Side::Left))];
    let rep = verify_central_split_case(&z, &[z.one()], &pairs, "z").unwrap();
    assert!(rep.holds());
    let not_central = matrix(2, 2);
    let rep = verify_central_split_case(&not_central, &[not_central.basis(1)], &[], "m2").unwrap();
    assert_eq!(rep.verdict, Verdict::Inconclusive);
}

#[test]
fn statement_names_round_trip() {
    for st in Statement::ALL {
        assert_eq!(st.as_str().parse::<Statement>().unwrap(), st);
    }
    assert!("nonsense".parse::<Statement>().is_err());
}

#[test]
fn report_checks_accumulate() {
    let mut rep = VerificationReport::new(Statement::Hypothesis, "x");
    rep.check("a", true);
    rep.check("a", false);
    rep.check("a", true);
    assert!(!rep.conclude().holds());
}

#[test]
fn bounds_parse_and_limits() {
    let b = SearchBounds::parse("rank=2,orders=0/2,gens=1,relations=2").unwrap();
    assert_eq!(b.max_rank, 2);
    assert_eq!(b.orders, vec![0, 2]);
    assert!(SearchBounds::parse("rank=4").is_err());
    assert!(SearchBounds::parse("orders=5").is_err());
    assert!(SearchBounds::parse("gens=3").is_err());
    assert!(SearchBounds::parse("relations=3").is_err());
    assert!(SearchBounds::parse("colour=red").is_err());
    assert!(SearchBounds::parse("commutative-only").unwrap().commutative_only);
}

#[test]
fn ring_enumeration_is_unital() {
    let rings = enumerate_rings(&SearchBounds::default());
    assert!(rings.iter().all(|r| r.basis(0) == r.one()));
    let rank3 = rings.iter().filter(|r| r.rank() == 3).count();
    // unital 3-dimensional algebras over F2 up to isomorphism
    assert!(rank3 > 0 && rank3 < 20, "{rank3}");
}

#[test]
fn small_search_classifies_everything() {
    let b = SearchBounds::parse("rank=2,orders=0/2").unwrap();
    let mut records = Vec::new();
    let s = search_counterexample(&b, &mut |r| records.push(r)).unwrap();
    assert_eq!(s.instances, records.len());
    assert_eq!(s.instances, s.covered + s.exact + s.failed);
    assert_eq!(s.failed, 0);
    for r in records.iter().step_by(7) {
        assert!(replay_record(r).unwrap());
    }
}
