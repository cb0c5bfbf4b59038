use thiserror::Error;

/// Errors raised by the toolkit.
///
/// `Parse` is a malformed textual input; every other variant is a domain
/// error about well-formed data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LamError {
    #[error("cannot parse {what} from `{token}`")]
    Parse { what: &'static str, token: String },

    #[error("degenerate chord {0}: criticality is undefined for a point")]
    DegenerateChord(String),

    #[error("chord {0} is not critical")]
    NotCritical(String),

    #[error("no pairwise-unlinked sibling collection for {0}")]
    NoSiblings(String),

    #[error("sibling collection for {0} is not unique")]
    AmbiguousSiblings(String),

    #[error("vertex set is not invariant under the map")]
    NotInvariant,

    #[error("vertex set is not periodic as a set")]
    NotPeriodic,

    #[error("set is not rotational: {0}")]
    NotRotational(String),

    #[error("critical chord {0} is a caterpillar leaf; use build_caterpillar")]
    CaterpillarInput(String),

    #[error("critical chord {0} has no periodic endpoint")]
    NoPeriodicEndpoint(String),

    #[error("gap is not of periodic type")]
    NotPeriodicType,

    #[error("gap is not quadratic (return degree {0})")]
    NotQuadratic(usize),

    #[error("angle {0} is not in the basis of the gap")]
    NotInBasis(String),

    #[error("leaf {0} crosses the major of the gap")]
    CrossesMajor(String),

    #[error("pullback is ambiguous: {0}")]
    AmbiguousPullback(String),

    #[error("lamination has no gap registry; isolation is undecidable")]
    NoRegistry,

    #[error("point sets overlap the class: {0}")]
    Overlap(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, LamError>;
