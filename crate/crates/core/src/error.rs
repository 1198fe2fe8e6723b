use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("{what} = {value} exceeds capacity limit {limit}")]
    CapacityExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("0 has no multiplicative inverse")]
    ZeroInverse,

    #[error("character index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: u64, bound: u64 },

    #[error("mixed root orders {left} and {right}")]
    MixedOrder { left: usize, right: usize },

    #[error("the principal character is not allowed here")]
    PrincipalCharacter,

    #[error("shift {0} is not coprime to p")]
    ShiftNotCoprime(u64),

    #[error("shifts a = {a}, b = {b} are degenerate (ab(a-b) = 0 mod p)")]
    DegenerateShifts { a: u64, b: u64 },

    #[error("0 must not belong to the set D")]
    ZeroInD,

    #[error("{0} is not the order of a subgroup of F_p*")]
    NotASubgroupOrder(u64),

    #[error("residue {value} is out of range for modulus {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },

    #[error("exact mode requires exact weights")]
    ModeMismatch,

    #[error("weights have length {got}, expected {expected}")]
    WeightLength { got: usize, expected: usize },

    #[error("the set must be nonempty")]
    EmptySet,

    #[error("parameter {0} must be nonzero mod p")]
    ZeroParameter(&'static str),

    #[error("modulus {0} must be at least 2")]
    BadModulus(u64),
}
