//! Gröbner bases and ideal arithmetic.

mod buchberger;
mod ideal;

pub use buchberger::{divide, groebner_basis, is_groebner, normal_form, s_polynomial};
pub use ideal::Ideal;
