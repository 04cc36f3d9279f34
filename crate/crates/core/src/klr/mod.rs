//! Deformed KLR generators over the local rings, their relations, and the
//! specializations at `x = 0` and modulo `p`.

mod generators;
mod matrix;
mod relations;
mod specialize;

pub use generators::{build_deformed_generators, build_klr_system, crosscheck_klr_lift, DeformedGenerators};
pub use matrix::Mat;
pub use relations::{rho, verify_deformation_relations, verify_linear_quiver_products, verify_nilpotent_products};
pub use specialize::{
    check_quiver_relations, integral_generator_matrices, nilpotency_exponent, p_integrality, specialize_and_verify_klr,
    specialize_cyclo, specialize_fp, specialized_nilpotency, ExactAlg, LiftedAlg, QuiverData, ShapeMatrices, SpecAlg,
};
