use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field order {p}^{e} is outside the supported range 2..=256")]
    OrderOutOfRange { p: u32, e: u32 },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: u32 },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("malformed field spec {0:?}")]
    FieldSyntax(String),
    #[error("value {value} is not an element of GF({q})")]
    ElementOutOfRange { value: usize, q: usize },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("monomials have {0} and {1} variables")]
    VariableCount(usize, usize),
    #[error("footprint is infinite: no leading monomial is a power of X{0}")]
    InfiniteFootprint(usize),
    #[error("cannot parse polynomial: {0}")]
    PolySyntax(String),
    #[error("cannot parse point: {0}")]
    PointSyntax(String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("chart {chart} out of range 0..={m}")]
    ChartOutOfRange { chart: usize, m: usize },
    #[error("order {nu} out of range {lo}..={hi}")]
    OrderOutOfRangeNu { nu: usize, lo: usize, hi: usize },
    #[error("expected length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("syndrome value missing for footprint monomial {0}")]
    MissingSyndrome(String),
    #[error("search space of {0} points is too large")]
    SearchTooLarge(u128),
    #[error("minimum distance decoding is infeasible for n={n}, k={k}, q={q}")]
    MddInfeasible { n: usize, k: usize, q: usize },
    #[error("cannot parse word: {0}")]
    WordSyntax(String),
}

pub type Result<T> = std::result::Result<T, Error>;
