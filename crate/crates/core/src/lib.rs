pub mod classify;
pub mod codes;
pub mod encoding;
pub mod error;
pub mod field;
pub mod homs;
pub mod linalg;
pub mod petit;
pub mod skew_poly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Elem, FieldCtx, FrobPower};
pub use skew_poly::{SkewPoly, SkewRing};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/fields.md")]
    struct Fields;
    #[doc = include_str!("../../../book/src/skew-polynomials.md")]
    struct SkewPolynomials;
    #[doc = include_str!("../../../book/src/petit-algebras.md")]
    struct PetitAlgebras;
    #[doc = include_str!("../../../book/src/homomorphisms.md")]
    struct Homomorphisms;
    #[doc = include_str!("../../../book/src/classification.md")]
    struct Classification;
    #[doc = include_str!("../../../book/src/codes.md")]
    struct Codes;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
}
