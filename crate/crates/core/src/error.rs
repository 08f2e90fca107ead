use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at `{token}`: {reason}")]
    Syntax { token: String, reason: String },

    #[error("arc {arc} is used {count} times (expected exactly 2)")]
    Pairing { arc: u32, count: usize },

    #[error("not a diagram on the sphere: a connected piece with {crossings} crossings has {faces} faces (expected {})", crossings + 2)]
    Genus { crossings: usize, faces: usize },

    #[error("inconsistent orientation: {0}")]
    Orientation(String),

    #[error("diagram has no components")]
    Empty,

    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("expected a knot diagram, found {0} components")]
    NotKnot(usize),

    #[error("expected a link diagram with at least 2 components")]
    NotLink,

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("template error: {0}")]
    Template(String),

    #[error("crossing set is not a minimal unknotting set: {0}")]
    NotMinimal(String),

    #[error("enumeration cap exceeded: {requested} > {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

impl Error {
    pub(crate) fn syntax(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Syntax {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
