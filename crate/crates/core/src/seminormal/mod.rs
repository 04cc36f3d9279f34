//! Seminormal forms: coefficient systems, gamma tables and elements in the
//! `f_st` basis.

mod element;
mod system;
mod verify;

pub use element::Element;
pub use system::{congruent, Flavor, GammaSeed, SeminormalSystem, SystemKind};
pub use verify::{
    all_content_values, crosscheck_idempotent_formula, cyclotomic_parameters, specht_action, validate_sncs,
    verify_gamma_paths, verify_hecke_relations, verify_idempotents, verify_intertwiners, SpechtModule,
};
