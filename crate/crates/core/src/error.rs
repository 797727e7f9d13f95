use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("gram form is not symmetric")]
    GramNotSymmetric,

    #[error("gram form is not positive definite (leading minor {index} is {minor})")]
    GramNotPositiveDefinite { index: usize, minor: String },

    #[error("constraint {index} is the zero vector")]
    ZeroConstraint { index: usize },

    #[error("constraint set is infeasible: the origin lies in the hull of the constraints")]
    Infeasible,

    #[error("empty support")]
    EmptySupport,

    #[error("unsupported root datum type `{0}`")]
    UnsupportedType(String),

    #[error("malformed root datum: {0}")]
    MalformedDatum(String),

    #[error("malformed relative datum description at line {line}: {message}")]
    MalformedRelativeSpec { line: usize, message: String },

    #[error("size limit exceeded: {what} ({count} > {limit})")]
    SizeLimit {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    #[error("recursion budget of {limit} semistability calls exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("cocharacter {0} is not integral")]
    NotIntegral(String),

    #[error("cocharacter must be nonzero")]
    ZeroCocharacter,

    #[error("level of {0} is not an integer in the declared lattice")]
    NonIntegralLevel(String),

    #[error("relative datum recursion reached a Levi with roots; only torus Levis are supported")]
    RelativeRecursion,

    #[error("unknown simple root name `{0}`")]
    UnknownRootName(String),

    #[error("parabolic index {0} out of range")]
    BadParabolic(usize),

    #[error("Levi subgroups are not Weyl-conjugate")]
    NotConjugate,

    #[error("no matrix realization for type `{0}`")]
    NoRealization(String),

    #[error("the two routes for {what} disagree: {left} vs {right}")]
    RouteMismatch {
        what: &'static str,
        left: String,
        right: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
