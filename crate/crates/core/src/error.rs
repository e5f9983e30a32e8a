use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field of order {p}^{r} exceeds the cap of 2^20 elements")]
    FieldTooLarge { p: u32, r: u32 },

    #[error("malformed field spec `{0}` (expected `p^r`, e.g. `3^2`)")]
    BadFieldSpec(String),

    #[error("malformed element encoding `{0}`")]
    BadElement(String),

    #[error("operands live in different rings or algebras")]
    ContextMismatch,

    #[error("divisor must be a monic polynomial of degree >= 0")]
    NotMonic,

    #[error("modulus must be monic of degree at least 1")]
    BadModulus,

    #[error("element of degree {degree} does not fit an algebra of dimension {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },

    #[error("constacyclic constant must be nonzero")]
    ZeroConstant,

    #[error("monomial coefficient must be nonzero")]
    ZeroCoefficient,

    #[error("operation requires a modulus of the form t^m - a")]
    NotConstacyclic,

    #[error("monomial degree {k} outside the admissible range {lo}..{hi}")]
    DegreeOutOfRange { k: usize, lo: usize, hi: usize },

    #[error("nested power needs at least one factor")]
    EmptyPower,

    #[error("alpha*b = sigma^m(alpha)*sigma^k(b) fails; z^{nesting}*z differs from z*z^{nesting}")]
    NotPowerAssociative { nesting: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("budget exceeded: {needed} candidates, budget {budget}")]
    Budget { needed: u128, budget: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("Frobenius exponent s = {s} must satisfy 0 <= s <= r = {r}")]
    BadFrobeniusExponent { s: u32, r: u32 },

    #[error("generator polynomial does not right-divide the modulus")]
    NotADivisor,

    #[error("statements disagree: (i) {i}, (ii) {ii}, (iii) {iii}")]
    StatementsDisagree { i: bool, ii: bool, iii: bool },

    #[error("{0}")]
    Precondition(String),
}
