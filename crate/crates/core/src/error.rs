use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("symbol {symbol:?} is not in the alphabet {alphabet:?}")]
    SymbolOutsideAlphabet { symbol: char, alphabet: String },

    #[error("alphabet is empty; the expression has no literals, pass an explicit alphabet")]
    EmptyAlphabet,

    #[error("alphabet mismatch: {left:?} vs {right:?} (harmonize first)")]
    AlphabetMismatch { left: String, right: String },

    #[error("automaton exceeds the state limit of {limit} states")]
    StateLimit { limit: usize },

    #[error("oracle budget exceeded: {0}")]
    Budget(String),

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:e})")]
    SpectralConvergence { iterations: usize, residual: f64 },

    #[error("limit estimate did not converge (partial value {partial}, last delta {delta:e})")]
    LimitConvergence { partial: f64, delta: f64 },

    #[error("component has no cycle; its period is undefined")]
    TrivialComponent,

    #[error("languages at positions {0} and {1} are equal")]
    DuplicateLanguages(usize, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed automaton: {0}")]
    MalformedDfa(String),
}

impl Error {
    /// Convergence diagnostics are reported separately from input errors.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::SpectralConvergence { .. } | Error::LimitConvergence { .. }
        )
    }
}
