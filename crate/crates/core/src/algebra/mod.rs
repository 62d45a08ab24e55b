//! Finite groups and quasigroups as explicit operation tables.

pub mod build;
pub mod subgroup;
pub mod table;

pub use build::build_structure;
pub use subgroup::{
    cosets, find_abelian_subgroup, left_coset_representatives, right_coset_representatives,
    AbelianMode, CosetWindow, Subgroup,
};
pub use table::{Kind, OpTable};
