use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A model parameter or argument violates its domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid locations: {0}")]
    InvalidLocations(String),

    /// The indifferent consumer lies outside the segment between the firms.
    #[error("split is not interior: x = {x}, y = {y}")]
    OutOfInterior { x: f64, y: f64 },

    #[error("{solver} did not converge within {iterations} iterations (last step {last_step:e})")]
    NonConvergence {
        solver: &'static str,
        iterations: usize,
        last_step: f64,
    },

    #[error("finite-difference step {0} leaves the valid location region")]
    StepTooLarge(f64),

    #[error("search failed: {0}")]
    SearchFailure(String),

    #[error("game is not 2x2 ({rows}x{cols})")]
    NotTwoByTwo { rows: usize, cols: usize },

    #[error("R&D game has {0} pure Nash equilibria; the cycle needs exactly one")]
    AmbiguousEquilibrium(usize),

    #[error("trajectory has {0} cycles; at least 2 are needed")]
    TrajectoryTooShort(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
