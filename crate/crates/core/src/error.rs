use thiserror::Error;

/// Errors raised by poset, complex and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("order relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("poset is not bounded: {0}")]
    NotBounded(String),
    #[error("`{0}` is a bound of the poset")]
    BoundElement(String),
    #[error("`{x}` and `{z}` have no {operation}")]
    MissingMeetOrJoin {
        x: String,
        z: String,
        operation: &'static str,
    },
    #[error("label set is not an antichain: `{0}` and `{1}` are comparable")]
    NotAntichain(String, String),
    #[error("complex is not a subcomplex: face {{{0}}} is missing")]
    NotSubcomplex(String),
    #[error("wedge summand {0} is the empty complex")]
    EmptyWedgeSummand(usize),
    #[error("smash product with the empty space")]
    SmashWithEmpty,
    #[error("recurrence gives {recurrence} but the closed form gives {closed_form}")]
    FormulaMismatch {
        recurrence: String,
        closed_form: String,
    },
    #[error("matrix is not symmetric: |a[{0}][{1}] - a[{1}][{0}]| exceeds tolerance")]
    NotSymmetric(usize, usize),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is a multiple of the identity")]
    ScalarMatrix,
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("boundary maps do not compose to zero in degree {0}")]
    BoundarySquare(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
