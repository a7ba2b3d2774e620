//! Exact integer linear algebra and finitely generated abelian groups.

pub mod group;
pub mod matrix;
pub mod normal_form;
pub mod sparse;

pub use group::{
    describe, hom_group, image_of, kernel_of, quotient, subgroups_equal, tensor_z, FgAbGroup,
    GroupMap, HomGroup, Simplification, Subgroup, TensorZ,
};
pub use matrix::{ints, kron_vec, unit_vec, vec_mul, IntMatrix};
pub use normal_form::{egcd, hnf, hnf_only, left_kernel, snf, solve_left, Snf};
pub use crate::error::LinalgError;
