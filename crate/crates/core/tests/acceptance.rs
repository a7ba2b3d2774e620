//! One PASS/FAIL line per acceptance criterion. All comparisons are exact.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reflexive_core::catalog::{catalog_entries, default_diagram, integers, CatalogEntry};
use reflexive_core::linalg::{hom_group, snf, tensor_z, FgAbGroup, IntMatrix};
use reflexive_core::module::{base_change, module_from_presentation, Side};
use reflexive_core::ring::{is_central_subring_split, Algebra};
use reflexive_core::tensoralg::compare_kernels_lemma;
use reflexive_core::tensorhom::{bimodule_sections, check_hypothesis};
use reflexive_core::verifiers::{
    declared_bimodule, is_regular, reflexivity_at, replay_record, search_counterexample, vee_reflexivity_at,
    verify_extension_formula, verify_nat_harness, verify_symmetry, Classification, Instance, SearchBounds,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let t = start.elapsed();
    if let Some(l) = limit {
        if t >= l {
            o.ok = false;
        }
        o.detail = format!("{}; {:.2}s (limit {}s)", o.detail, t.as_secs_f64(), l.as_secs());
    } else {
        o.detail = format!("{}; {:.2}s", o.detail, t.as_secs_f64());
    }
    o
}

fn pairs(entries: &[CatalogEntry]) -> Vec<Instance> {
    let mut out = Vec::new();
    for e in entries {
        for n in &e.right {
            for m in &e.left {
                out.push(Instance::from_catalog(n, m).unwrap());
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let z = integers();
    let m = module_from_presentation(&z, Side::Left, 1, vec![vec![vec![BigInt::from(2)]]]).unwrap();
    let r = reflexivity_at(&m, &Algebra::base(&z)).unwrap();
    let ok = r.classical.invariant_factors().is_empty()
        && !r.classical_injective
        && r.functorial.invariant_factors() == [BigInt::from(2)]
        && r.functorial_iso;
    outcome(
        ok,
        format!(
            "classical {:?} injective={}, functorial {:?} iso={}",
            r.classical.invariant_factors(),
            r.classical_injective,
            r.functorial.invariant_factors(),
            r.functorial_iso
        ),
    )
}

fn covered(inst: &Instance) -> bool {
    inst.ring.is_commutative()
        || declared_bimodule(&inst.left).is_some()
        || is_regular(&inst.right)
        || inst.left_flat
        || inst.right_flat
        || matches!(is_central_subring_split(&inst.ring, &[inst.ring.one()]), Ok(true))
}

fn criterion_2(entries: &[CatalogEntry], insts: &[Instance]) -> Outcome {
    let modules: usize = entries.iter().map(|e| e.left.len() + e.right.len()).sum();
    let mut n_covered = 0;
    let mut bad = Vec::new();
    let mut sections = 0;
    for inst in insts.iter().filter(|i| covered(i)) {
        n_covered += 1;
        let (fork, ex) = check_hypothesis(inst.right.structure(), inst.left.structure()).unwrap();
        if !(ex.i_injective && ex.middle_exact) {
            bad.push(inst.name.clone());
        }
        if let Some(b) = declared_bimodule(&inst.left) {
            sections += 1;
            let sec = bimodule_sections(&fork, &b).unwrap();
            if sec.identities(&fork.maps) != [true; 3] {
                bad.push(format!("{} (sections)", inst.name));
            }
        }
    }
    let ok = entries.len() >= 6 && modules >= 12 && n_covered >= 40 && bad.is_empty();
    outcome(
        ok,
        format!(
            "{} rings, {modules} modules, {n_covered} covered pairs, {sections} with sections, failures {bad:?}",
            entries.len()
        ),
    )
}

fn criterion_3(insts: &[Instance]) -> Outcome {
    let mut bad = Vec::new();
    for inst in insts {
        for d in [2, 3] {
            let l = compare_kernels_lemma(inst.right.structure(), inst.left.structure(), d).unwrap();
            if !(l.concentrated && l.equals_fork && l.stable) {
                bad.push(format!("{} d={d}", inst.name));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} pairs x caps {{2,3}}, failures {bad:?}", insts.len()))
}

fn criterion_4(insts: &[Instance]) -> Outcome {
    let mut bad = Vec::new();
    for inst in insts {
        if !verify_extension_formula(inst).unwrap().holds() {
            bad.push(format!("{} formula", inst.name));
        }
        if !verify_symmetry(inst).unwrap().holds() {
            bad.push(format!("{} symmetry", inst.name));
        }
    }
    outcome(bad.is_empty(), format!("{} pairs, failures {bad:?}", insts.len()))
}

fn criterion_5(entries: &[CatalogEntry]) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    let mut min_diagram = usize::MAX;
    for e in entries {
        let d = default_diagram(&e.ring);
        min_diagram = min_diagram.min(d.algebras.len());
        for m in &e.left {
            for alg in &d.algebras {
                count += 1;
                let r = reflexivity_at(&m.module, alg).unwrap();
                let ms = base_change(&m.module, alg).unwrap();
                if !(r.functorial_iso && r.matches_tensor && r.functorial.is_isomorphic(ms.underlying())) {
                    bad.push(format!("{} M={} S={}", e.ring.name(), m.name, alg.name));
                }
            }
        }
    }
    outcome(
        bad.is_empty() && min_diagram >= 3,
        format!("{count} (M, S) instances, smallest diagram {min_diagram}, failures {bad:?}"),
    )
}

fn criterion_6(entries: &[CatalogEntry]) -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for e in entries {
        for m in &e.left {
            for alg in &default_diagram(&e.ring).algebras {
                count += 1;
                let r = vee_reflexivity_at(&m.module, alg, 2).unwrap();
                let ms = base_change(&m.module, alg).unwrap();
                if !(r.canonical_iso
                    && r.stable
                    && r.dual_matches
                    && r.dual_value_iso
                    && r.value.is_isomorphic(ms.underlying()))
                {
                    bad.push(format!("{} M={} S={}", e.ring.name(), m.name, alg.name));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{count} (M, S) instances at caps 2 and 3, failures {bad:?}"))
}

fn criterion_7(insts: &[Instance]) -> Outcome {
    let mut bad = Vec::new();
    let mut min_algebras = usize::MAX;
    let mut min_maps = usize::MAX;
    for inst in insts {
        min_algebras = min_algebras.min(inst.diagram.algebras.len());
        min_maps = min_maps.min(inst.diagram.maps.len());
        let rep = verify_nat_harness(inst).unwrap();
        if !rep.holds() {
            bad.push(format!("{} {:?}", inst.name, rep.checks.iter().filter(|(_, v)| !**v).collect::<Vec<_>>()));
        }
    }
    let ok = bad.is_empty() && min_algebras >= 3 && min_maps >= 4 && insts.iter().all(|i| i.diagram.contains_base());
    outcome(
        ok,
        format!("{} pairs, diagrams >= {min_algebras} algebras / {min_maps} maps, failures {bad:?}", insts.len()),
    )
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|b| b.count_ones() as usize == k)
        .map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors as quotients of successive gcds of k×k minors.
fn minors_oracle(a: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (a.len(), a[0].len());
    let mut prev = 1i64;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0i64;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            out.push(0);
            prev = 0;
        } else {
            out.push(g / prev);
            prev = g;
        }
    }
    out
}

fn finite_groups(max_order: i64) -> Vec<Vec<i64>> {
    fn go(cur: &mut Vec<i64>, prod: i64, max: i64, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        let start = cur.last().copied().unwrap_or(2);
        let mut d = start;
        while prod * d <= max {
            if d % start == 0 {
                cur.push(d);
                go(cur, prod * d, max, out);
                cur.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_order, &mut out);
    out
}

fn group_of(inv: &[i64]) -> FgAbGroup {
    FgAbGroup::diagonal(inv.iter().map(|&d| BigInt::from(d)).collect())
}

/// `|{x : k·x = 0}|` for every `k` dividing `exponent`, read off the
/// invariant factors; this determines a finite group up to isomorphism.
fn torsion_profile(g: &FgAbGroup, exponent: i64) -> Vec<usize> {
    (1..=exponent)
        .filter(|k| exponent % k == 0)
        .map(|k| {
            g.invariant_factors()
                .iter()
                .map(|d| usize::try_from(d.gcd(&BigInt::from(k))).unwrap())
                .product()
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut mismatches = 0;
    let cases = 10_000;
    for _ in 0..cases {
        let r = rng.gen_range(1..=4);
        let c = rng.gen_range(1..=4);
        let a: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let want = minors_oracle(&a);
        let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
        let got: Vec<i64> = snf(&IntMatrix::from_i64(&rows))
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d.abs()).unwrap())
            .collect();
        if got != want {
            mismatches += 1;
        }
    }

    let groups = finite_groups(36);
    let mut hom_bad = 0;
    let mut tensor_bad = 0;
    for g in &groups {
        for h in &groups {
            let (gg, hh) = (group_of(g), group_of(h));
            let e = g.iter().chain(h).fold(1i64, |a, b| a.lcm(b));
            let h_elems = hh.elements(100);
            // Hom: every assignment of generator images killed by the orders
            let hom_profile: Vec<usize> = (1..=e)
                .filter(|k| e % k == 0)
                .map(|k| {
                    g.iter()
                        .map(|&n| {
                            h_elems
                                .iter()
                                .filter(|y| {
                                    hh.is_zero(&y.iter().map(|v| v * n).collect::<Vec<_>>())
                                        && hh.is_zero(&y.iter().map(|v| v * k).collect::<Vec<_>>())
                                })
                                .count()
                        })
                        .product()
                })
                .collect();
            if torsion_profile(&hom_group(&gg, &hh).group, e) != hom_profile {
                hom_bad += 1;
            }
            // tensor: its character group is the group of bilinear pairings
            // into Z/e, enumerated on generator pairs
            let tensor_profile: Vec<usize> = (1..=e)
                .filter(|k| e % k == 0)
                .map(|k| {
                    let mut count = 1usize;
                    for &n in g {
                        for &m in h {
                            count *= (0..e).filter(|t| (t * n) % e == 0 && (t * m) % e == 0 && (t * k) % e == 0).count();
                        }
                    }
                    count
                })
                .collect();
            if torsion_profile(&tensor_z(&gg, &hh).group, e) != tensor_profile {
                tensor_bad += 1;
            }
        }
    }
    let ok = mismatches == 0 && hom_bad == 0 && tensor_bad == 0;
    outcome(
        ok,
        format!(
            "{cases} seeded matrices, {mismatches} SNF mismatches; {} group pairs, hom mismatches {hom_bad}, tensor mismatches {tensor_bad}",
            groups.len() * groups.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut records = Vec::new();
    let s = search_counterexample(&SearchBounds::default(), &mut |r| records.push(r)).unwrap();
    let classified = records.len() == s.instances && s.covered + s.exact + s.failed == s.instances;
    let mut replay_ok = true;
    for r in records.iter().enumerate().filter(|(k, r)| r.class == Classification::Failed || k % 50 == 0).map(|(_, r)| r) {
        replay_ok &= replay_record(&round_trip(r)).unwrap();
    }
    outcome(
        classified && replay_ok,
        format!(
            "{} rings, {} instances: {} covered ({} also checked), {} exact, {} failed; failures and every 50th record replay ok={replay_ok}",
            s.rings, s.instances, s.covered, s.covered_checked, s.exact, s.failed
        ),
    )
}

/// Records are replayed from a serialized copy, as they would be from a report.
fn round_trip(r: &reflexive_core::verifiers::SearchRecord) -> reflexive_core::verifiers::SearchRecord {
    let text = serde_json::to_string(r).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn main() {
    let entries = catalog_entries();
    let insts = pairs(&entries);
    let results: Vec<(usize, Outcome)> = std::thread::scope(|sc| {
        let e = &entries;
        let i = &insts;
        let handles = vec![
            (1, sc.spawn(move || timed(Some(Duration::from_secs(1)), criterion_1))),
            (2, sc.spawn(move || timed(Some(Duration::from_secs(60)), || criterion_2(e, i)))),
            (3, sc.spawn(move || timed(Some(Duration::from_secs(120)), || criterion_3(i)))),
            (4, sc.spawn(move || timed(None, || criterion_4(i)))),
            (5, sc.spawn(move || timed(Some(Duration::from_secs(120)), || criterion_5(e)))),
            (6, sc.spawn(move || timed(None, || criterion_6(e)))),
            (7, sc.spawn(move || timed(None, || criterion_7(i)))),
            (8, sc.spawn(move || timed(None, criterion_8))),
            (9, sc.spawn(move || timed(None, criterion_9))),
        ];
        handles.into_iter().map(|(k, h)| (k, h.join().unwrap())).collect()
    });
    let mut all = true;
    for (k, o) in &results {
        println!("criterion {k}: {} ({})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        all &= o.ok;
    }
    if !all {
        eprintln!("some acceptance criteria failed");
        std::process::exit(1);
    }
}
