//! Enumeration of the prime ideals compatible with a `p^{-e}`-linear map on a
//! polynomial ring over `F_p`.

pub mod algorithm;
pub mod decompose;
pub mod emit;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod parse;
pub mod poly;
pub mod problem;
pub mod ring;

pub use error::{Error, Result};
pub use groebner::Ideal;
pub use poly::Polynomial;
pub use ring::{MonomialOrder, Ring, RingDescriptor};
