//! Murphy vectors, Gram determinants and their factorizations.

mod det;
mod forms;
mod murphy;

pub use det::{bareiss_det, ratfunc_det};
pub use forms::{
    cyclotomic_scalar, degenerate_t1_system, gram_csv, gram_det_report, gram_generic, gram_psi, gram_t1,
    laurent_in, murphy_generic_system, positivity_sweep, strict_charge, BlockData, GramReport, GramVariant,
};
pub use murphy::{gram_matrix, murphy_coords, MurphyVector};
