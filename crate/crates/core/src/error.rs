use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in the core computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A block list that is not a partition of `{0, …, m−1}`.
    InvalidPartition { element: usize, reason: &'static str },
    /// A set map with a value outside its target.
    InvalidMap { index: usize, value: usize, target_size: usize },
    /// Two partitions that should live on the same support do not.
    SupportMismatch { left: usize, right: usize },
    /// Source or target sizes that do not line up.
    SizeMismatch { expected: usize, found: usize },
    /// A configured resource cap was exceeded.
    CapExceeded { what: &'static str, size: usize, cap: usize },
    /// An operation that requires a fusion was handed something else.
    NotAFusion,
    /// A morphism whose map does not send the source partition below the target.
    NotAMorphism,
    /// A parameter outside its admissible range.
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },
    /// A cell family that is not closed under faces.
    NotClosed { dim: usize, cell: usize },
    /// A permutation action that does not commute with faces.
    NonSimplicialAction { dim: usize, cell: usize },
    /// A pointed operation applied to an unpointed object.
    MissingBasepoint,
    /// A cube whose maps are not inclusions.
    NonInclusion { from: usize, to: usize },
    /// A prime-field coefficient with a composite or tiny modulus.
    NotPrime(u64),
    /// Anything else; carries a short description.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPartition { element, reason } => {
                write!(f, "invalid partition at element {element}: {reason}")
            }
            Error::InvalidMap { index, value, target_size } => write!(
                f,
                "map value {value} at index {index} is outside target of size {target_size}"
            ),
            Error::SupportMismatch { left, right } => {
                write!(f, "support mismatch: {left} vs {right}")
            }
            Error::SizeMismatch { expected, found } => {
                write!(f, "size mismatch: expected {expected}, found {found}")
            }
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what} of size {size} exceeds cap {cap}")
            }
            Error::NotAFusion => write!(f, "morphism is not a fusion"),
            Error::NotAMorphism => write!(f, "map does not define a morphism of partitions"),
            Error::OutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside {min}..={max}")
            }
            Error::NotClosed { dim, cell } => {
                write!(f, "cell {cell} in dimension {dim} has a face outside the family")
            }
            Error::NonSimplicialAction { dim, cell } => {
                write!(f, "action does not commute with faces at cell {cell} in dimension {dim}")
            }
            Error::MissingBasepoint => write!(f, "operation needs a pointed simplicial set"),
            Error::NonInclusion { from, to } => {
                write!(f, "cube corner {from} is not contained in corner {to}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not a prime"),
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}
