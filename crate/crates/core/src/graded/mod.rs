//! The psi-basis, graded consistency and the distinguished B-basis.
mod bbasis;
mod consistency;
mod psi;
pub use bbasis::{b_basis, compare_b_bases, specialize_b, verify_b_basis, verify_b_prime, BBasis, Refinement, Specialized};
pub use consistency::{cellularity_check, gamma_units, graded_consistency_check, integrality_check, phi_e};
pub use psi::{reduce, verify_psi_basis, y_lambda_element, Pair, PsiBasis, Residue};
