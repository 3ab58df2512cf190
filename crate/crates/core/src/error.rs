use thiserror::Error;

/// Errors raised across the library. Every variant carries enough context to
/// point at the offending input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("cap exceeded: {what} (size {size}, cap {cap})")]
    CapExceeded { what: String, size: usize, cap: usize },
    #[error("group mismatch between operands")]
    GroupMismatch,
    #[error("lower subgroup is not contained in the upper subgroup")]
    NotNested,
    #[error("parts do not partition the group: {0}")]
    NotAPartition(String),
    #[error("the class of the identity is not a singleton")]
    IdentityNotSingleton,
    #[error("class {0} is not closed under inversion")]
    NotInverseClosed(usize),
    #[error("product of classes {i} and {j} is not constant on a class (elements {g} and {h})")]
    NotClosedUnderProduct { i: usize, j: usize, g: usize, h: usize },
    #[error("{0} is not coprime to the group order")]
    NotCoprime(u64),
    #[error("set is not a basic set")]
    NotABasicSet,
    #[error("set is not a union of basic sets")]
    NotAnASet,
    #[error("not a section of the S-ring: {0}")]
    NotASection(String),
    #[error("permutation group does not contain the right regular representation")]
    NotOvergroup,
    #[error("first group is not a subgroup of the second")]
    NotSubgroup,
    #[error("subgroup is not an A-subgroup")]
    NotASubgroup,
    #[error("permutations are not group automorphisms")]
    NotAutomorphisms,
    #[error("S-ring is not a generalized wreath product for the given section")]
    NotGeneralizedWreath,
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error("group order {0} is not a perfect square")]
    NotSquareOrder(usize),
    #[error("net axiom violated: {0}")]
    AxiomViolation(String),
    #[error("graph is not strongly regular (vertices {0} and {1})")]
    NotStronglyRegular(usize, usize),
    #[error("precondition not met: {0}")]
    NotApplicable(String),
    #[error("permutation is not a weak automorphism of the net")]
    NotWeakAutomorphism,
    #[error("no A-set of partial congruence partition shape exists")]
    NoPcpSetFound,
    #[error("profile is empty")]
    EmptyProfile,
    #[error("letter matrix violates the dominance law at {0}")]
    DominanceViolation(String),
    #[error("unknown statement id: {0}")]
    UnknownStatement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn cap_check(what: &str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what: what.to_string(), size, cap })
    } else {
        Ok(())
    }
}
