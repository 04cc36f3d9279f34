//! Exact scalars: rationals, cyclotomic numbers, polynomials, rational
//! functions and Laurent polynomials, plus the mode that fixes `t`.

mod cyclo;
mod field;
mod laurent;
mod mode;
mod parse;
mod poly;
mod ratfunc;
mod rational;

pub use cyclo::{cyclotomic_coeffs, totient, Cyclo};
pub use field::{FieldElem, Fp};
pub use laurent::{
    cyclotomic_poly, factor_laurent_cyclotomic, power_series, principal_part_at_zero,
    regular_part_at_zero, CycloFactorization, LaurentPoly,
};
pub use mode::{is_prime, LocalClass, Mode, ScalarMode};
pub use parse::parse_scalar;
pub use poly::Poly;
pub use ratfunc::{RatFunc, Scalar};

pub use rational::Q;

pub(crate) use crate::Error as ScalarError;
