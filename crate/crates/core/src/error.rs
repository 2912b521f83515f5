use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not prime, `m` is zero, or `p^m` does not fit the residue width.
    InvalidRing { p: u64, m: u32 },
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    RingMismatch,
    SizeMismatch,
    NotSquare,
    NotField,
    NotInvertible,
    /// An enumeration or power loop would exceed its cap.
    CapExceeded { cap: usize },
    ZeroPolynomial,
    EmptyInput,
    NotSimilar,
    NotInvariant,
    NotIndependent,
    NotUnipotent,
    NotAutomorphism,
    NotNormal,
    NotAbelian,
    NotComplement,
    NotFreeBasis,
    NotFaithful,
    DerivedNotContained,
    BudgetExceeded { budget: u64 },
    /// A result failed its own post-condition check.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidRing { p, m } => write!(f, "invalid ring Z/{}^{}Z", p, m),
            Error::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::RingMismatch => f.write_str("operands live over different rings"),
            Error::SizeMismatch => f.write_str("operands have different sizes"),
            Error::NotSquare => f.write_str("matrix is not square"),
            Error::NotField => f.write_str("operation requires a prime field (m = 1)"),
            Error::NotInvertible => f.write_str("matrix is not invertible"),
            Error::CapExceeded { cap } => write!(f, "enumeration cap {} exceeded", cap),
            Error::ZeroPolynomial => f.write_str("zero polynomial"),
            Error::EmptyInput => f.write_str("empty input"),
            Error::NotSimilar => f.write_str("matrices are not similar"),
            Error::NotInvariant => f.write_str("subspace is not invariant"),
            Error::NotIndependent => f.write_str("vectors are not linearly independent"),
            Error::NotUnipotent => f.write_str("matrix is not unipotent"),
            Error::NotAutomorphism => f.write_str("map is not an automorphism"),
            Error::NotNormal => f.write_str("subgroup is not normal"),
            Error::NotAbelian => f.write_str("group is not abelian"),
            Error::NotComplement => f.write_str("subgroups are not complements"),
            Error::NotFreeBasis => f.write_str("elements do not form a free basis"),
            Error::NotFaithful => f.write_str("action is not faithful"),
            Error::DerivedNotContained => f.write_str("subgroup does not contain the derived subgroup"),
            Error::BudgetExceeded { budget } => write!(f, "search budget {} exhausted", budget),
            Error::Internal(msg) => write!(f, "internal check failed: {}", msg),
        }
    }
}

impl core::error::Error for Error {}
