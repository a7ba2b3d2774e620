//! Exact computations with finitely presented modules over rings that are
//! finitely generated as abelian groups: tensor products, Hom groups,
//! truncated tensor algebras and the functorial double dual.

pub mod catalog;
pub mod error;
pub mod linalg;
pub mod module;
pub mod ring;
pub mod tensoralg;
pub mod tensorhom;
pub mod verifiers;

pub use error::LinalgError;
