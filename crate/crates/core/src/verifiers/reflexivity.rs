use num_bigint::BigInt;

use crate::catalog::Diagram;
use crate::linalg::{unit_vec, FgAbGroup, GroupMap, IntMatrix};
use crate::module::{base_change, dual_at, hom_r, FpModule, ModuleStructure, Side};
use crate::ring::Algebra;
use crate::tensoralg::{compare_kernels_lemma, dual_value_iso, extension_via_definition, FunctorShape};
use crate::tensorhom::{kernel_extension, tensor_over_r};

use super::{Statement, VerificationReport, VerifyError};

/// Functorial and classical double duals of `M` at one algebra `S`.
#[derive(Clone, Debug)]
pub struct ReflexivityAt {
    pub algebra: String,
    /// `S ⊗_R M`, computed by base change.
    pub base_changed: FgAbGroup,
    /// Kernel of the fork over `S` for `(S, S ⊗_R M)`.
    pub functorial: FgAbGroup,
    /// The canonical map `S ⊗_R M → functorial` is an isomorphism.
    pub functorial_iso: bool,
    /// The functorial value also matches `S ⊗_R M` computed as a balanced
    /// tensor product over `R`.
    pub matches_tensor: bool,
    /// `Hom_S(Hom_S(S ⊗_R M, S), S)`.
    pub classical: FgAbGroup,
    pub classical_injective: bool,
    pub classical_iso: bool,
}

pub fn reflexivity_at(m: &FpModule, alg: &Algebra) -> Result<ReflexivityAt, VerifyError> {
    let s = &alg.ring;
    let ms = base_change(m, alg)?;
    let ns = ModuleStructure::regular(s, Side::Right);
    let (kg, _, fork) = kernel_extension(&ns, ms.structure())?;
    let amb = ms.underlying();
    let one = s.one();
    let rows: Vec<Vec<BigInt>> = (0..amb.rank())
        .map(|k| fork.maps.i.apply(&fork.tensor.pure(&one, &unit_vec(amb.rank(), k))))
        .collect();
    let canonical = GroupMap::new(amb.clone(), fork.t1().clone(), IntMatrix::from_row_vecs(fork.t1().rank(), rows))?;
    let functorial_iso = canonical.is_injective() && canonical.image().equals(&fork.maps.kernel())?;
    let over_r = tensor_over_r(&ModuleStructure::algebra_over_base(alg, Side::Right), m.structure())?;

    let d = dual_at(&ms, &Algebra::base(s))?;
    let dd = hom_r(&d.structure, &ModuleStructure::regular(s, Side::Right))?;
    let hg = &d.hom.group;
    let ev_rows = (0..amb.rank())
        .map(|k| {
            let x = unit_vec(amb.rank(), k);
            let mat = IntMatrix::from_row_vecs(s.rank(), (0..hg.rank()).map(|h| d.evaluate(&hg.generator(h), &x)).collect());
            dd.from_matrix(&mat)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ev = GroupMap::new(amb.clone(), dd.group.clone(), IntMatrix::from_row_vecs(dd.group.rank(), ev_rows))?;
    Ok(ReflexivityAt {
        algebra: alg.name.clone(),
        base_changed: amb.clone(),
        matches_tensor: over_r.group.is_isomorphic(&kg),
        functorial: kg,
        functorial_iso,
        classical: dd.group.clone(),
        classical_injective: ev.is_injective(),
        classical_iso: ev.is_isomorphism(),
    })
}

/// The canonical map into the functorial double dual is an isomorphism at
/// every diagram algebra; the classical double dual is recorded alongside.
pub fn verify_reflexivity(m: &FpModule, diagram: &Diagram, name: &str) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::Reflexivity, name);
    for alg in &diagram.algebras {
        let r = reflexivity_at(m, alg)?;
        let key = &r.algebra;
        rep.group(format!("base_changed[{key}]"), &r.base_changed);
        rep.group(format!("functorial[{key}]"), &r.functorial);
        rep.group(format!("classical[{key}]"), &r.classical);
        rep.check("functorial_iso", r.functorial_iso);
        rep.check("matches_tensor", r.matches_tensor);
        rep.notes.push(format!(
            "{key}: classical evaluation injective={}, iso={}",
            r.classical_injective, r.classical_iso
        ));
    }
    Ok(rep.conclude())
}

/// Double dual through the extended dual at one algebra.
#[derive(Clone, Debug)]
pub struct VeeReflexivityAt {
    pub algebra: String,
    /// Definitional kernel for `Q ↦ S ⊗_R Q` at `M`.
    pub value: FgAbGroup,
    pub canonical_iso: bool,
    pub stable: bool,
    /// The extended dual evaluated at `S` equals `Hom_R(M, S)`.
    pub dual_matches: bool,
    /// `F̄(S) → F(S)` for the extended dual is an isomorphism.
    pub dual_value_iso: bool,
}

pub fn vee_reflexivity_at(m: &FpModule, alg: &Algebra, cap: usize) -> Result<VeeReflexivityAt, VerifyError> {
    let ns = ModuleStructure::algebra_over_base(alg, Side::Right);
    let lemma = compare_kernels_lemma(&ns, m.structure(), cap)?;
    let i = &lemma.fork.maps.i;
    let canonical_iso = i.is_injective() && i.image().equals(&lemma.kernel)?;
    let left = ModuleStructure::algebra_over_base(alg, Side::Left);
    let dual = extension_via_definition(&FunctorShape::ExtendedDual(m.clone()), &left, cap)?;
    let iso = dual_value_iso(m, alg, cap)?;
    Ok(VeeReflexivityAt {
        algebra: alg.name.clone(),
        value: lemma.kernel.as_group().0.simplify().group,
        canonical_iso: canonical_iso && lemma.equals_fork,
        stable: lemma.stable && lemma.concentrated && dual.is_reportable(),
        dual_matches: dual.matches_formula,
        dual_value_iso: iso.isomorphism,
    })
}

pub fn verify_vee_reflexivity(m: &FpModule, diagram: &Diagram, cap: usize, name: &str) -> Result<VerificationReport, VerifyError> {
    let mut rep = VerificationReport::new(Statement::VeeReflexivity, name);
    let cap = cap.max(2);
    rep.caps = vec![cap, cap + 1];
    for alg in &diagram.algebras {
        let r = vee_reflexivity_at(m, alg, cap)?;
        rep.group(format!("value[{}]", r.algebra), &r.value);
        rep.check("canonical_iso", r.canonical_iso);
        rep.check("stable", r.stable);
        rep.check("dual_matches", r.dual_matches);
        rep.check("dual_value_iso", r.dual_value_iso);
    }
    Ok(rep.conclude())
}
