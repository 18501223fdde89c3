use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),

    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),

    #[error("switch precondition failed: {0}")]
    SwitchPrecondition(String),

    #[error("degree {degree} forces a monochromatic star (f = 0)")]
    DegenerateDegree { degree: u32 },

    #[error("maximum degree {max_degree} exceeds the admissible bound {bound}")]
    DegreeTooHigh { max_degree: u32, bound: u32 },

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("candidates a={0} and a={1} are indistinguishable at the configured precision")]
    Indistinguishable(u32, u32),

    #[error("precision limit reached: {0}")]
    Precision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) | Error::Indistinguishable(..) | Error::Precision(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
