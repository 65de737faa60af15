use thiserror::Error;

/// Errors reported by the library.
///
/// Predicates that can honestly answer "no" return verdict types instead of
/// errors; `Error` is reserved for violated preconditions, ill-formed input
/// and degenerate geometry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A square matrix was required.
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Two objects that must live in the same dimension do not.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A linear system with a unique solution was required but the
    /// coefficient matrix is singular.
    #[error("coefficient matrix is singular")]
    SingularMatrix,

    /// Vectors that must be linearly independent are not.
    #[error("vectors are linearly dependent")]
    DependentVectors,

    /// A hyperplane normal (or requested direction) is the zero vector.
    #[error("zero vector is not a valid direction")]
    ZeroVector,

    /// A subset of hyperplane subscripts is ill-formed (wrong size, out of
    /// range, or contains duplicates). Subscripts are 1-based.
    #[error("invalid subscript subset {subset:?}: {reason}")]
    InvalidSubset { subset: Vec<usize>, reason: String },

    /// The arrangement is not in general position.
    #[error("arrangement is not in general position (witness subset {witness:?})")]
    NotGeneralPosition { witness: Vec<usize> },

    /// Vectors fail maximal linear independence (1-based witness subset).
    #[error("vectors are not maximally independent (witness subset {witness:?})")]
    NotMaximallyIndependent { witness: Vec<usize> },

    /// Three points that must be collinear are not.
    #[error("points are not collinear")]
    NotCollinear,

    /// Points that must be pairwise distinct coincide.
    #[error("points are not pairwise distinct")]
    CoincidentPoints,

    /// A sign vector selected an empty region.
    #[error("region {sign} is empty")]
    EmptyRegion { sign: String },

    /// An enumeration guard was exceeded.
    #[error("{what} supports at most {limit}, got {requested}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    /// The offset vector lies on a concurrency hyperplane, so its cone
    /// signature is undefined.
    #[error("offset vector lies on the concurrency hyperplane of subset {subset:?}")]
    DegenerateOffsets { subset: Vec<usize> },

    /// A facet crossing was requested across a subset that does not support a
    /// facet of the current cone.
    #[error("subset {subset:?} does not support a facet of the offset cone")]
    NotAFacet { subset: Vec<usize> },

    /// Adding or inducing along a hyperplane failed because it is not generic
    /// with respect to the arrangement.
    #[error("hyperplane is not generic with respect to the arrangement: {reason}")]
    NotGeneric { reason: String },

    /// A chart of a hyperplane is ill-formed (base point off the hyperplane
    /// or directions not a basis of its direction space).
    #[error("invalid chart: {0}")]
    InvalidChart(String),

    /// An operation specific to one dimension was called in another.
    #[error("{what} requires dimension {expected}, got {found}")]
    WrongDimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    /// A mapping that must be a permutation of 1..=n is not.
    #[error("not a permutation of 1..={n}: {perm:?}")]
    NotAPermutation { perm: Vec<usize>, n: usize },

    /// Textual rational input could not be parsed.
    #[error("invalid rational literal {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    /// A JSON input file is structurally or semantically invalid.
    #[error("invalid input file: {0}")]
    InvalidFile(String),
}
