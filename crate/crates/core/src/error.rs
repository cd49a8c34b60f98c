use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is not monic of degree {0}")]
    BadModulus(u32),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("field of size {0} exceeds the 2^31 cap")]
    FieldTooLarge(u128),
    #[error("zero has no multiplicative order or inverse")]
    ZeroElement,
    #[error("GF({small}) is not a subfield of GF({big})")]
    NotSubfield { small: u64, big: u64 },
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{what} exceeded cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("odd part of the group is not cyclic")]
    OddPartNotCyclic,
    #[error("Sylow 2-subgroup has no cyclic subgroup of index at most 2 of the classified kinds")]
    NotInFamily,
    #[error("D8 is monomial, hence imprimitive in degree 2")]
    Monomial,
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("blow-up is reducible over the base field: {0}")]
    ReducibleBlowup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::FieldTooLarge(_))
    }
}
