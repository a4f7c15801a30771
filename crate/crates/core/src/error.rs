use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature or series did not reach its tolerance within budget.
    #[error("numerical error: {what} did not converge (estimate {estimate:e}, error bound {error_bound:e})")]
    Numerical {
        what: String,
        estimate: f64,
        error_bound: f64,
    },

    /// The operation is not defined for this material or configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Invalid configuration or material database input.
    #[error("{}", format_config(.line, .message))]
    Config { line: Option<usize>, message: String },
}

fn format_config(line: &Option<usize>, message: &str) -> String {
    match line {
        Some(l) => format!("config error at line {l}: {message}"),
        None => format!("config error: {message}"),
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: msg.into(),
        }
    }

    /// True for failures of the numerical engines (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
