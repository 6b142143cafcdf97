use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series division by a non-unit: |v0| = {0:e}")]
    DivisionByNonUnit(f64),

    #[error("logarithm requires a unit constant term, got {0}")]
    NotUnit(Complex64),

    #[error("point {0} lies outside the open unit disk")]
    OutsideDisk(Complex64),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("derivative vanishes at {0} (critical point)")]
    CriticalPoint(Complex64),

    #[error("g vanishes at {0}")]
    ZeroOfG(Complex64),

    #[error("quadrature did not converge: estimated error {achieved:e} after depth {depth}")]
    QuadratureNoConverge { achieved: f64, depth: usize },

    #[error("quadratic {a}r^2 + {b}r + {c} has no positive real root")]
    NoPositiveRoot { a: f64, b: f64, c: f64 },

    #[error("evaluation failed at theta = {theta}: {source}")]
    EvaluationFailure {
        theta: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("class {0} has no computable membership test")]
    UncheckableClass(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}
