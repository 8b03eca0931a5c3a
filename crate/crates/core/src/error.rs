use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("generator is not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("closure exceeded the limit of {0} elements")]
    SizeLimitExceeded(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("set is not a subgroup")]
    NotASubgroup,
    #[error("set is not an abelian subgroup")]
    NotAbelian,
    #[error("the trivial group has no prime divisor")]
    TrivialGroupHasNoPrime,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("coset enumeration exceeded the limit of {0} cosets")]
    LimitExceeded(usize),
    #[error("coset table is not a completed enumeration over the trivial subgroup")]
    IncompleteTable,
    #[error("group of order {order} exceeds the cap of {cap} for this construction")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("operation requires a pair structure in {expected} mode")]
    WrongMode { expected: &'static str },
    #[error("wedge-trivial relations need an exterior square over the same group")]
    MissingExteriorStructure,
    #[error("brute-force space of {space} tuples exceeds the cap of {cap}")]
    TooLarge { space: u128, cap: u128 },
    #[error("group orders {0} and {1} are not coprime")]
    NotCoprime(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
