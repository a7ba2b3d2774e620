use crate::linalg::GroupMap;
use crate::module::FpModule;
use crate::ring::{is_central_subring_split, StructureRing};
use crate::tensoralg::compare_kernels_lemma;
use crate::tensorhom::{
    bimodule_sections, build_fork, check_hypothesis, kernel_extension, swap_map, tensor_by_presentation, tensor_with_ring,
};

use super::{Instance, Statement, Verdict, VerificationReport, VerifyError};

/// Exactness of the fork for `(N, M)`.
pub fn verify_hypothesis(inst: &Instance) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::Hypothesis, &inst.name);
    let (fork, ex) = check_hypothesis(inst.right.structure(), inst.left.structure())?;
    rep.group("tensor", fork.t0());
    rep.group("kernel", &ex.kernel.as_group().0);
    rep.check("i_injective", ex.i_injective);
    rep.check("middle_exact", ex.middle_exact);
    rep.witnesses = ex.witnesses;
    Ok(rep.conclude())
}

/// The fork is exact whenever `M` or `N` is a bimodule or flat; with a
/// bimodule structure on `M` the splitting identities are checked too.
pub fn verify_bimodule_flat_case(inst: &Instance) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::BimoduleFlat, &inst.name);
    let bimodule = inst.declared_bimodule();
    let covered = bimodule.is_some() || inst.right_is_bimodule() || inst.left_flat || inst.right_flat;
    let (fork, ex) = check_hypothesis(inst.right.structure(), inst.left.structure())?;
    rep.group("tensor", fork.t0());
    rep.check("i_injective", ex.i_injective);
    rep.check("middle_exact", ex.middle_exact);
    rep.witnesses = ex.witnesses.clone();
    if let Some(b) = &bimodule {
        let sec = bimodule_sections(&fork, b)?;
        let [a, b2, c] = sec.identities(&fork.maps);
        rep.check("s_after_i", a);
        rep.check("s_prime_after_p2", b2);
        rep.check("s_prime_after_p1", c);
    }
    if !covered {
        rep.notes.push("no bimodule structure or flatness flag declared".into());
        rep.verdict = Verdict::Inconclusive;
        return Ok(rep);
    }
    Ok(rep.conclude())
}

/// If `gens` generate a central subring `R'` with an `R'`-linear
/// retraction, every pair must give an exact fork. Failure of the
/// criterion itself is inconclusive, since it is only sufficient.
pub fn verify_central_split_case(
    ring: &StructureRing,
    gens: &[Vec<num_bigint::BigInt>],
    pairs: &[(FpModule, FpModule)],
    name: &str,
) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::CentralSplit, name);
    match is_central_subring_split(ring, gens) {
        Ok(true) => {}
        Ok(false) => {
            rep.notes.push("generated subring is not central or does not split".into());
            return Ok(rep);
        }
        Err(e) => {
            rep.notes.push(format!("criterion not applicable: {e}"));
            return Ok(rep);
        }
    }
    rep.check("criterion", true);
    for (k, (n, m)) in pairs.iter().enumerate() {
        let (_, ex) = check_hypothesis(n.structure(), m.structure())?;
        rep.check(format!("pair_{k}_exact"), ex.exact());
        rep.witnesses.extend(ex.witnesses);
    }
    Ok(rep.conclude())
}

/// Exactness holds iff the canonical map `N ⊗_R M → Ker(p1 − p2)` is an
/// isomorphism; both sides are computed and compared.
pub fn verify_extension_formula(inst: &Instance) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::ExtensionFormula, &inst.name);
    let (kgroup, incl, fork) = kernel_extension(inst.right.structure(), inst.left.structure())?;
    let ex = fork.maps.check();
    let t0 = fork.t0();
    let mut rows = Vec::with_capacity(t0.rank());
    let mut lands = true;
    for a in 0..t0.rank() {
        match incl.preimage(&fork.maps.i.apply(&t0.generator(a))) {
            Some(p) => rows.push(p),
            None => {
                lands = false;
                rows.push(kgroup.zero());
            }
        }
    }
    let canonical = GroupMap::new(t0.clone(), kgroup.clone(), crate::linalg::IntMatrix::from_row_vecs(kgroup.rank(), rows))?;
    let iso = lands && canonical.is_isomorphism();
    rep.group("tensor", t0);
    rep.group("extension", &kgroup);
    let presented = tensor_by_presentation(inst.right.structure(), &inst.left)?;
    rep.check("presentation_route_agrees", presented.is_isomorphic(t0));
    rep.check("i_lands_in_kernel", lands);
    rep.check("biconditional", ex.exact() == iso);
    rep.notes.push(format!("exact={}, canonical_iso={}", ex.exact(), iso));
    rep.witnesses = ex.witnesses;
    Ok(rep.conclude())
}

/// The kernel for `(N, M)` over `R` and for `(M, N)` over `R^op` agree
/// under the swap `n ⊗ m ↦ m ⊗ n`.
pub fn verify_symmetry(inst: &Instance) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::Symmetry, &inst.name);
    let fork = build_fork(inst.right.structure(), inst.left.structure())?;
    let mirrored = build_fork(&inst.left.structure().mirror(), &inst.right.structure().mirror())?;
    let swap = swap_map(&fork.tensor, &mirrored.tensor);
    let swap1 = tensor_with_ring(&swap, fork.t1(), mirrored.t1(), fork.maps.ring_rank);
    let k = fork.maps.kernel();
    let k_op = mirrored.maps.kernel();
    rep.group("kernel", &k.as_group().0);
    rep.group("kernel_mirrored", &k_op.as_group().0);
    rep.check("swap_iso", swap.is_isomorphism());
    let (kg, kincl) = k.as_group();
    let transported = kincl.then(&swap1)?.image();
    rep.check("kernels_correspond", transported.equals(&k_op)?);
    rep.check("isomorphic", kg.is_isomorphic(&k_op.as_group().0));
    Ok(rep.conclude())
}

/// Truncated `Ker(q1 − q2)` against `Ker(p1 − p2)`.
pub fn verify_kernel_lemma(inst: &Instance) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::KernelLemma, &inst.name);
    let cap = inst.cap.max(2);
    let lemma = compare_kernels_lemma(inst.right.structure(), inst.left.structure(), cap)?;
    rep.caps = vec![cap, cap + 1];
    rep.group("kernel", &lemma.kernel.as_group().0);
    rep.check("concentrated", lemma.concentrated);
    rep.check("equals_fork", lemma.equals_fork);
    rep.check("stable", lemma.stable);
    Ok(rep.conclude())
}
