//! Real cyclotomic fields `ℚ(ϑ_c)`, their square classes, and the full
//! cyclotomic fields `ℚ(μ_n)` lying above them.

mod cm;
mod embed;
mod modp;
mod poly;
mod real;
mod square;

pub use cm::{
    class_eq_cyclo, class_eq_cyclo_with, is_square_in_cyclo, is_square_in_cyclo_with, CmSquareTest,
    CycloElem,
};
pub use embed::{embed, pi_fixed, two_cos_fixed, FixedReal};
pub use poly::{cyclotomic, real_minpoly};
pub use real::{canonical_conductor, delta, theta, RealElem, RealField, DEFAULT_MAX_CONDUCTOR};
pub use square::{
    class_eq, class_eq_with, class_mul, is_square_in, is_square_in_with, prime_power_class,
    square_class, squarefree_part, NonSquareReason, SquareClass, SquareConfig, SquareTest,
};
