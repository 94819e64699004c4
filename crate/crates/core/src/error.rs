use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is outside the supported range (p < 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field GF({p}^{m}) is too large for the element encoding")]
    FieldTooLarge { p: u32, m: usize },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over GF(p)")]
    ReducibleModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("cannot embed GF({src_p}^{src_m}) into GF({dst_p}^{dst_m})")]
    IncompatibleFields {
        src_p: u32,
        src_m: usize,
        dst_p: u32,
        dst_m: usize,
    },
    #[error("embedding failed: {0}")]
    EmbeddingFailure(String),
    #[error("coefficient {0} out of range for the field")]
    BadCoefficient(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial not allowed here")]
    ZeroInput,
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("permutation degree {0} exceeds the supported maximum of 8")]
    DegreeTooLarge(usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("exhaustive sweep of {needed} elements exceeds budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("empty polynomial pool")]
    EmptyPool,
    #[error("invalid pool entry: {0}")]
    InvalidPool(String),
    #[error("polynomial is inseparable (derivative is zero)")]
    InseparableInput,
    #[error("no prime in [floor(n/2)+1, n-3] for n = {0}")]
    NoPrimeInRange(usize),
    #[error("statistics do not come from an exhaustive sweep")]
    NonExhaustiveStats,
    #[error("degree {0} is too small")]
    DegreeTooSmall(usize),
    #[error("invalid j = {0}: must satisfy j >= 2 and p does not divide j")]
    InvalidJ(u64),
    #[error("construction requires odd characteristic")]
    EvenCharacteristic,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no unramified samples to evaluate")]
    EmptyStats,
    #[error("worker pool: {0}")]
    Workers(String),
    #[error("parse error: {0}")]
    Parse(String),
}
