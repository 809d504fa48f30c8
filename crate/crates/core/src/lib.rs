//! Orthogonal determinants of the even-degree indicator-`+` irreducible
//! characters of `SL_3(q)` and `SU_3(q)`.

pub mod arith;
pub mod chartab;
pub mod cyclo;
pub mod detengine;
pub mod error;
pub mod gf;
pub mod groups;
pub mod oracle;

pub use error::{Error, Result};
