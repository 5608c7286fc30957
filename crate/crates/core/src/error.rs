use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field size {p}^{n} exceeds the cap of 2^20 elements")]
    FieldTooLarge { p: u64, n: u32 },

    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),

    #[error("element belongs to a different field")]
    ForeignElement,

    #[error("element encoding out of range for F_{q}")]
    ElementOutOfRange { q: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operation requires odd characteristic")]
    EvenCharacteristic,

    #[error("operation requires even characteristic")]
    OddCharacteristic,

    #[error("incompatible fields for embedding: {0}")]
    IncompatibleEmbedding(String),

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("constant polynomial not allowed here")]
    ConstantPolynomial,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degree condition violated: {0}")]
    DegreeCondition(String),

    #[error("enumeration space of {size} candidates exceeds cap {cap}")]
    SpaceTooLarge { size: u128, cap: u128 },

    #[error(
        "no pointless genus {g} curve found over F_{q} (Hasse-Weil floor {hasse_weil_floor}, guaranteed from genus {genus_bound})"
    )]
    NotFound {
        q: u32,
        g: u32,
        hasse_weil_floor: u64,
        genus_bound: u32,
    },

    #[error("malformed document: {0}")]
    Malformed(String),
}
